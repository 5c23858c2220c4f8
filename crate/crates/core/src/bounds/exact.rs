//! Exact comparisons against bounds of the form `v + w * sqrt(r)`.
//!
//! Every estimate used by the crate has a right-hand side that is an integer
//! plus an integer multiple of `sqrt(q)` once half-integer powers of `q` are
//! split off. Comparing a nonnegative integer `u` against such a bound needs
//! at most one squaring, so verdicts never touch floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// The nonnegative real `rational + radical_coeff * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtBound {
    #[serde(with = "crate::bounds::big_str")]
    pub rational: BigUint,
    #[serde(with = "crate::bounds::big_str")]
    pub radical_coeff: BigUint,
    #[serde(with = "crate::bounds::big_str")]
    pub radicand: BigUint,
}

/// Outcome of `u <= v + w sqrt(r)` reduced to `lhs_sq <= rhs_sq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub pass: bool,
    pub lhs_sq: BigUint,
    pub rhs_sq: BigUint,
}

impl SqrtBound {
    pub fn integer(v: BigUint) -> Self {
        Self {
            rational: v,
            radical_coeff: BigUint::zero(),
            radicand: BigUint::zero(),
        }
    }

    pub fn radical(w: BigUint, r: BigUint) -> Self {
        Self {
            rational: BigUint::zero(),
            radical_coeff: w,
            radicand: r,
        }
    }

    pub fn new(v: BigUint, w: BigUint, r: BigUint) -> Self {
        Self {
            rational: v,
            radical_coeff: w,
            radicand: r,
        }
    }

    /// Decides `u <= self`.
    ///
    /// With `v = 0` this is `u^2 <= w^2 r`. Otherwise it passes outright when
    /// `u <= v`, and else compares `(u - v)^2 <= w^2 r`.
    pub fn compare(&self, u: &BigUint) -> Comparison {
        let rhs_sq = &self.radical_coeff * &self.radical_coeff * &self.radicand;
        if u <= &self.rational {
            let lhs_sq = if self.rational.is_zero() {
                u * u
            } else {
                BigUint::zero()
            };
            return Comparison {
                pass: true,
                lhs_sq,
                rhs_sq,
            };
        }
        let excess = u - &self.rational;
        let lhs_sq = &excess * &excess;
        Comparison {
            pass: lhs_sq <= rhs_sq,
            lhs_sq,
            rhs_sq,
        }
    }

    /// Largest integer `t` with `t * self <= m`, or `None` when the bound is zero.
    fn floor_quotient(&self, m: &BigUint) -> Option<BigUint> {
        let v = &self.rational;
        let w2r = &self.radical_coeff * &self.radical_coeff * &self.radicand;
        if v.is_zero() && w2r.is_zero() {
            return None;
        }
        let fits = |t: &BigUint| -> bool {
            let tv = t * v;
            if &tv > m {
                return false;
            }
            let rest = m - tv;
            &rest * &rest >= t * t * &w2r
        };
        let upper = if !v.is_zero() {
            m / v + 1u32
        } else {
            // w sqrt(r) >= w * isqrt(r) >= 1 when nonzero
            let lower_bound = &self.radical_coeff * self.radicand.sqrt();
            if lower_bound.is_zero() {
                m * 2u32 + 1u32
            } else {
                m / lower_bound + 1u32
            }
        };
        let (mut lo, mut hi) = (BigUint::zero(), upper);
        // invariant: fits(lo), !fits(hi)
        while &hi - &lo > BigUint::one() {
            let mid: BigUint = (&lo + &hi) >> 1;
            if fits(&mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    /// `u / self` truncated to six significant digits, e.g. `1.23456e-7`.
    ///
    /// Computed from exact floors of `u * 10^P / self`, so the rendering is
    /// reproducible. Returns `0` for `u = 0` and `inf` for a zero bound.
    pub fn ratio_string(&self, u: &BigUint) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let Some(whole) = self.floor_quotient(u) else {
            return "inf".into();
        };
        let six = BigUint::from(100_000u32);
        if whole >= six {
            let digits = whole.to_string();
            return format!("{}.{}e{}", &digits[..1], &digits[1..6], digits.len() - 1);
        }
        let ten = BigUint::from(10u32);
        let mut scaled = u.clone();
        for shift in 1..=4000i64 {
            scaled *= &ten;
            let t = self.floor_quotient(&scaled).expect("nonzero bound");
            if t >= six {
                let digits = t.to_string();
                return format!("{}.{}e{}", &digits[..1], &digits[1..6], 5 - shift);
            }
        }
        "0".into()
    }
}
