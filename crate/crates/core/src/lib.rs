//! Colored Jones polynomials of the figure-eight knot at deformed roots of
//! unity.
//!
//! * [`special`]: Lobachevsky function, hyperbolic `Γ`, angle functions.
//! * [`evaluator`]: factors, partial products, the sum `J_N`.
//! * [`asymptotics`]: parameter regimes and closed-form growth rates.
//! * [`harness`]: scans and verification suites.

pub mod asymptotics;
pub mod error;
pub mod evaluator;
pub mod harness;
pub mod mp;
pub mod special;

pub use error::{Error, Result};
pub use evaluator::{parse_parameter, Parameter};
pub use special::{PrecisionConfig, Radians};
