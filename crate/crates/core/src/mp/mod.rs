//! Binary floating point with a caller-chosen significand width.
//!
//! Values are `±mag · 2^exp` with `mag` rounded (half to even) to at most
//! `bits` significant bits after every operation. The exponent is an `i64`,
//! so magnitudes like `4^N` for any practical `N` are representable without
//! overflow. Only the handful of operations the evaluator needs are provided.

mod fixed;

pub(crate) use fixed::{f64_to_dyadic, FixedTrig};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Clone, PartialEq, Eq)]
pub struct MpFloat {
    neg: bool,
    mag: BigUint,
    exp: i64,
}

impl fmt::Debug for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "MpFloat(0)");
        }
        write!(
            f,
            "MpFloat({}{} * 2^{}, ~{:e})",
            if self.neg { "-" } else { "" },
            self.mag,
            self.exp,
            self.to_f64()
        )
    }
}

impl MpFloat {
    pub fn zero() -> Self {
        MpFloat {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        MpFloat {
            neg: false,
            mag: BigUint::from(1u32),
            exp: 0,
        }
    }

    /// Exact conversion; every finite `f64` is a dyadic rational.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "MpFloat::from_f64 on non-finite value");
        if x == 0.0 {
            return Self::zero();
        }
        let (m, e) = f64_to_dyadic(x);
        let (sign, mag) = m.into_parts();
        Self::normalized(sign == Sign::Minus, mag, e)
    }

    /// The value `fixed · 2^(-frac_bits)`, rounded to `bits` bits.
    pub fn from_fixed(fixed: &BigInt, frac_bits: u32, bits: u32) -> Self {
        let neg = fixed.sign() == Sign::Minus;
        let mag = fixed.magnitude().clone();
        Self::rounded(neg, mag, -(frac_bits as i64), bits)
    }

    pub fn from_u64(n: u64) -> Self {
        Self::normalized(false, BigUint::from(n), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    /// `-1`, `0` or `+1`.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        MpFloat {
            neg: false,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        MpFloat {
            neg: !self.neg,
            ..self.clone()
        }
    }

    /// Number of significant bits currently held.
    pub fn significant_bits(&self) -> u64 {
        self.mag.bits()
    }

    /// Position just above the leading bit: `|x| ∈ [2^(top-1), 2^top)`.
    fn top(&self) -> i64 {
        self.exp + self.mag.bits() as i64
    }

    pub fn mul(&self, other: &Self, bits: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::rounded(
            self.neg != other.neg,
            &self.mag * &other.mag,
            self.exp + other.exp,
            bits,
        )
    }

    pub fn add(&self, other: &Self, bits: u32) -> Self {
        if other.is_zero() {
            return Self::rounded(self.neg, self.mag.clone(), self.exp, bits);
        }
        if self.is_zero() {
            return Self::rounded(other.neg, other.mag.clone(), other.exp, bits);
        }
        // A summand entirely below the rounding position of the other cannot
        // change the rounded result (up to exact half-way ties, which a
        // difference this large cannot produce).
        let gap = bits as i64 + 2;
        if self.top() - other.top() > gap {
            return Self::rounded(self.neg, self.mag.clone(), self.exp, bits);
        }
        if other.top() - self.top() > gap {
            return Self::rounded(other.neg, other.mag.clone(), other.exp, bits);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mag << ((self.exp - e) as u64);
        let b = &other.mag << ((other.exp - e) as u64);
        let (neg, mag) = if self.neg == other.neg {
            (self.neg, a + b)
        } else {
            match a.cmp(&b) {
                Ordering::Greater => (self.neg, a - b),
                Ordering::Less => (other.neg, b - a),
                Ordering::Equal => return Self::zero(),
            }
        };
        Self::rounded(neg, mag, e, bits)
    }

    pub fn sub(&self, other: &Self, bits: u32) -> Self {
        self.add(&other.neg(), bits)
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.top().cmp(&other.top()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let e = self.exp.min(other.exp);
        let a = &self.mag << ((self.exp - e) as u64);
        let b = &other.mag << ((other.exp - e) as u64);
        a.cmp(&b)
    }

    /// Signed comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            (1, _) => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }

    /// Natural log of `|x|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.leading_f64();
        m.ln() + (e as f64) * LN_2
    }

    /// Nearest `f64` (saturating to `±inf` / `0` outside the `f64` range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (m, e) = self.leading_f64();
        let v = ldexp(m, e);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// `|x| = m · 2^e` with `m` an `f64` in `[2^63, 2^64)` or exact when short.
    fn leading_f64(&self) -> (f64, i64) {
        let len = self.mag.bits();
        if len <= 64 {
            (self.mag.to_u64().unwrap_or(u64::MAX) as f64, self.exp)
        } else {
            let shift = len - 64;
            let top = (&self.mag >> shift).to_u64().unwrap_or(u64::MAX);
            (top as f64, self.exp + shift as i64)
        }
    }

    fn normalized(neg: bool, mag: BigUint, exp: i64) -> Self {
        if mag.is_zero() {
            return Self::zero();
        }
        let tz = mag.trailing_zeros().unwrap_or(0);
        MpFloat {
            neg,
            mag: mag >> tz,
            exp: exp + tz as i64,
        }
    }

    fn rounded(neg: bool, mag: BigUint, exp: i64, bits: u32) -> Self {
        let len = mag.bits();
        if len <= bits as u64 {
            return Self::normalized(neg, mag, exp);
        }
        let shift = len - bits as u64;
        let mut q = &mag >> shift;
        let half_bit = mag.bit(shift - 1);
        let below_half = mag.trailing_zeros().is_none_or(|tz| tz >= shift - 1);
        if half_bit && (!below_half || q.bit(0)) {
            q += 1u32;
        }
        Self::normalized(neg, q, exp + shift as i64)
    }
}

/// `x · 2^e` without intermediate overflow for moderate `x`.
pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}
