//! Fixed-point transcendental kernels: values are `BigInt`s scaled by
//! `2^frac_bits`. Arguments of the circular functions are given in turns as
//! exact rationals so that argument reduction is exact.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extra bits carried internally by every kernel.
const GUARD: u32 = 24;

/// Split a finite `f64` into `m · 2^e` with integer `m`.
pub(crate) fn f64_to_dyadic(x: f64) -> (BigInt, i64) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp_field - 1075)
    };
    (BigInt::from(sign) * BigInt::from(m), e)
}

/// π and the circular/hyperbolic kernels at a fixed scale.
#[derive(Debug, Clone)]
pub(crate) struct FixedTrig {
    frac_bits: u32,
    /// π · 2^(frac_bits + GUARD)
    pi: BigInt,
}

impl FixedTrig {
    pub(crate) fn new(frac_bits: u32) -> Self {
        FixedTrig {
            frac_bits,
            pi: pi_fixed(frac_bits + GUARD),
        }
    }

    /// `cos(2π · num/den) · 2^frac_bits`, correctly reduced for any integer
    /// `num` and positive `den`.
    pub(crate) fn cos_turns(&self, num: &BigInt, den: &BigUint) -> BigInt {
        let w = self.frac_bits + GUARD;
        let den_i = BigInt::from_biguint(Sign::Plus, den.clone());
        // Work in units of den/8 so that 1/2, 1/4, 1/8 turn are exact.
        let d = &den_i * 8;
        let mut t = num.mod_floor(&den_i) * 8;
        if &t * 2 > d {
            t = &d - t;
        }
        let mut negate = false;
        if &t * 4 > d {
            t = &d / 2 - t;
            negate = true;
        }
        let use_sin = &t * 8 > d;
        if use_sin {
            t = &d / 4 - t;
        }
        // x = 2π t/d ∈ [0, π/4]
        let x: BigInt = (&self.pi * 2 * &t) / &d;
        let one = BigInt::one() << w;
        let x2 = (&x * &x) >> w;
        let mut sum;
        let mut term;
        let mut k: u64;
        if use_sin {
            sum = x.clone();
            term = x;
            k = 1;
        } else {
            sum = one.clone();
            term = one;
            k = 0;
        }
        let mut sign_neg = true;
        loop {
            term = ((&term * &x2) >> w) / BigInt::from((k + 1) * (k + 2));
            k += 2;
            if term.is_zero() {
                break;
            }
            if sign_neg {
                sum -= &term;
            } else {
                sum += &term;
            }
            sign_neg = !sign_neg;
        }
        let out = sum >> GUARD;
        if negate {
            -out
        } else {
            out
        }
    }

    /// `cosh(2π · num/den) · 2^frac_bits` for `num/den ≥ 0`.
    pub(crate) fn cosh_turns(&self, num: &BigInt, den: &BigUint) -> BigInt {
        let w = self.frac_bits + GUARD;
        let den_i = BigInt::from_biguint(Sign::Plus, den.clone());
        let x: BigInt = (&self.pi * 2 * num) / den_i;
        debug_assert!(!x.is_negative());
        let ex = exp_fixed(&x, w);
        let inv = (BigInt::one() << (2 * w)) / &ex;
        (ex + inv) >> (GUARD + 1)
    }
}

/// `atan(1/x) · 2^w` by the alternating Gregory series.
fn atan_inv(x: u64, w: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << w) / BigInt::from(x);
    let mut sum = power.clone();
    let mut n: u64 = 1;
    let mut neg = true;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * n + 1);
        if neg {
            sum -= term;
        } else {
            sum += term;
        }
        neg = !neg;
        n += 1;
    }
    sum
}

/// π · 2^w via Machin's formula.
fn pi_fixed(w: u32) -> BigInt {
    let g = w + 16;
    let pi = atan_inv(5, g) * 16 - atan_inv(239, g) * 4;
    pi >> 16
}

/// `exp(x)` for fixed-point `x ≥ 0` at scale `w`.
fn exp_fixed(x: &BigInt, w: u32) -> BigInt {
    // Halve the argument until it is below 1/2, then square back up.
    let xb = x.bits() as i64;
    let halvings = (xb - (w as i64 - 1)).max(0) as u32;
    let wi = w + halvings + 16;
    let y = (x << (wi - w)) >> halvings;
    let one = BigInt::one() << wi;
    let mut sum = one.clone();
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = ((&term * &y) >> wi) / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> wi;
    }
    sum >> (wi - w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_f64(x: &BigInt, w: u32) -> f64 {
        let scale = 2f64.powi(-(w as i32));
        // split to keep the f64 conversion exact enough
        let hi = x >> (w.saturating_sub(60));
        hi.to_f64().unwrap() * scale * 2f64.powi(w.saturating_sub(60) as i32)
    }

    #[test]
    fn pi_digits() {
        let w = 200;
        let pi = pi_fixed(w);
        // compare the leading 50 bits against the f64 constant
        assert!((to_f64(&pi, w) - std::f64::consts::PI).abs() < 1e-15);
        // cross-check two precisions agree on the common bits
        let pi2 = pi_fixed(w + 100) >> 100;
        let diff: BigInt = &pi - &pi2;
        assert!(diff.abs() <= BigInt::from(1));
    }

    #[test]
    fn cos_turns_matches_f64_everywhere() {
        let trig = FixedTrig::new(128);
        let den = BigUint::from(997u32);
        for num in -2000i64..2000 {
            if num % 37 != 0 {
                continue;
            }
            let c = to_f64(&trig.cos_turns(&BigInt::from(num), &den), 128);
            let expect = (2.0 * std::f64::consts::PI * num as f64 / 997.0).cos();
            assert!((c - expect).abs() < 1e-14, "num={num}: {c} vs {expect}");
        }
    }

    #[test]
    fn cos_exact_points() {
        let trig = FixedTrig::new(100);
        let one = BigInt::one() << 100;
        let den = BigUint::from(12u32);
        assert_eq!(trig.cos_turns(&BigInt::from(0), &den), one);
        assert_eq!(trig.cos_turns(&BigInt::from(6), &den), -one.clone());
        assert!(trig.cos_turns(&BigInt::from(3), &den).abs() <= BigInt::from(1));
        let half = trig.cos_turns(&BigInt::from(2), &den);
        let diff: BigInt = half - (&one >> 1);
        assert!(diff.abs() <= BigInt::from(1));
    }

    #[test]
    fn cosh_and_exp() {
        let trig = FixedTrig::new(120);
        let den = BigUint::from(4u32);
        for n in 0..12 {
            let c = to_f64(&trig.cosh_turns(&BigInt::from(n), &den), 120);
            let expect = (2.0 * std::f64::consts::PI * n as f64 / 4.0).cosh();
            assert!(((c - expect) / expect).abs() < 1e-14);
        }
    }

    #[test]
    fn dyadic_split() {
        let (m, e) = f64_to_dyadic(0.75);
        assert_eq!(m.to_f64().unwrap() * 2f64.powi(e as i32), 0.75);
        let (m, e) = f64_to_dyadic(-1e-310);
        // 2^e alone underflows; scale in two steps
        assert_eq!(m.to_f64().unwrap() * 2f64.powi(e as i32 + 600) * 2f64.powi(-600), -1e-310);
    }
}
