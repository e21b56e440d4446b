//! The Habiro–Le sum `J_N = Σ_{k<N} f(k)`, `f(k) = Π_{j≤k} g(j)`, for the
//! figure-eight knot at `t = exp(2πr√-1/N)` or `t = exp(2πs/N)`.
//!
//! Two evaluation paths are provided. The double-precision log path
//! ([`partial_products`], [`f_max`]) tracks signs and `ln|f(k)|` and scales
//! to `N` in the millions. The multiprecision path ([`jones_value`]) forms the
//! actual sum, where cancellation between terms of opposite sign matters.

mod exact;
mod indices;
mod parameter;
mod terms;

pub use exact::{for_each_term_mp, jones_log_growth, jones_value, partial_products_mp, JonesEvaluation};
pub use indices::{
    critical_indices, sign_table_check, Band, CriticalIndices, IndexName, SignTableReport, Threshold,
    Violation, BAND_SLACK,
};
pub use parameter::{parse_parameter, Parameter};
pub use terms::{
    f_max, g_factor, g_factor_product_form, log_sum_positive, partial_products, FMax, TermSequence,
    NEAR_ZERO, TIE_LOG_TOL,
};

pub(crate) use terms::is_exact_zero;
