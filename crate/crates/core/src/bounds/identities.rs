//! Main terms, closed-form identities, Betti-number coefficients and the
//! existence threshold, all in exact integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::count::zero_pattern::binomial;
use crate::error::{Error, Result};

fn pow_int(base: u64, exp: u64) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

fn sign(exp: u64) -> BigInt {
    if exp % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `q^{n-1}`, the main term of `N`.
pub fn main_term_total(q: u64, n: usize) -> BigInt {
    pow_int(q, n as u64 - 1)
}

/// `((q-1)^n - (-1)^n) / q`, the main term of `N*`. Errors if the division
/// is not exact, which the binomial theorem rules out.
pub fn main_term_nonzero(q: u64, n: usize) -> Result<BigInt> {
    let num = pow_int(q - 1, n as u64) - sign(n as u64);
    let (quot, rem) = num.div_rem(&BigInt::from(q));
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "q = {q} does not divide (q-1)^{n} - (-1)^{n}"
        )));
    }
    Ok(quot)
}

/// `p_r = q^r + ... + q + 1 = |P^r(F_q)|`.
pub fn projective_points(q: u64, r: usize) -> BigUint {
    (0..=r as u32).map(|e| BigUint::from(q).pow(e)).sum()
}

/// Both sides of the truncated alternating binomial identity, scaled by `q`
/// so that every term is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityP1 {
    /// `q * sum_{i=0}^{n-2} (-1)^i binom(n,i) q^{n-i-1}`.
    pub truncated_lhs: BigInt,
    /// `(q-1)^n - (-1)^n + (-1)^n n q`.
    pub truncated_rhs: BigInt,
    /// `q * sum_{i=0}^{n} (-1)^i binom(n,i) q^{n-i-1}`.
    pub full_lhs: BigInt,
    /// `(q-1)^n`.
    pub full_rhs: BigInt,
}

impl IdentityP1 {
    pub fn compute(q: u64, n: usize) -> Self {
        let n64 = n as u64;
        let term = |i: u64| sign(i) * binomial(n64, i) * pow_int(q, n64 - i);
        let truncated_lhs: BigInt = (0..n64.saturating_sub(1)).map(term).sum();
        let full_lhs: BigInt = (0..=n64).map(term).sum();
        let full_rhs = pow_int(q - 1, n64);
        let truncated_rhs =
            &full_rhs - sign(n64) + sign(n64) * BigInt::from(n64) * BigInt::from(q);
        Self {
            truncated_lhs,
            truncated_rhs,
            full_lhs,
            full_rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.truncated_lhs == self.truncated_rhs && self.full_lhs == self.full_rhs
    }
}

/// Checks `sum_{i=0}^{n-2} (-1)^i binom(n,i) q^{n-i-1} = ((q-1)^n - (-1)^n)/q + (-1)^n n`
/// and `sum_{i=0}^{n} (-1)^i binom(n,i) q^{n-i-1} = (q-1)^n / q`.
///
/// For `n = 1` the truncated sum is empty and both sides are zero.
pub fn identity_p1(q: u64, n: usize) -> bool {
    let id = IdentityP1::compute(q, n);
    // The truncated right side must itself be an integer after dividing by q.
    let divisible = (&id.full_rhs - sign(n as u64)).is_multiple_of(&BigInt::from(q));
    divisible && id.holds()
}

/// Upper bounds for the primitive middle Betti number of a smooth
/// hypersurface of degree `d` in `P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiUpper {
    /// `(d-1)((d-1)^n - (-1)^n) / d` (the division is exact).
    #[serde(with = "crate::bounds::big_str")]
    pub intermediate: BigUint,
    /// `(d-1)^n`.
    #[serde(with = "crate::bounds::big_str")]
    pub coarse: BigUint,
}

pub fn betti_upper(n: usize, d: u64) -> BettiUpper {
    let dm1 = d.saturating_sub(1);
    let inner = pow_int(dm1, n as u64) - sign(n as u64);
    let num = BigInt::from(dm1) * inner;
    let den = BigInt::from(d.max(1));
    // ceil division; exact because (d-1)^n = (-1)^n mod d
    let (quot, rem) = num.div_rem(&den);
    let quot = if rem > BigInt::zero() { quot + 1 } else { quot };
    BettiUpper {
        intermediate: quot.to_biguint().unwrap_or_default(),
        coarse: BigUint::from(dm1).pow(n as u32),
    }
}

/// Field size above which `N* > 0` is guaranteed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceThreshold {
    pub n: usize,
    pub m: u32,
    pub k: u32,
    #[serde(with = "crate::bounds::big_str")]
    pub threshold: BigUint,
}

/// `22^2 (2mk)^{2n-2}` for `n >= 5`, `10^2 (mk)^8` for `n = 3, 4`.
pub fn existence_threshold(n: usize, m: u32, k: u32) -> ExistenceThreshold {
    let mk = BigUint::from(m as u64 * k as u64);
    let threshold = if n >= 5 {
        BigUint::from(484u32) * (mk * 2u32).pow(2 * n as u32 - 2)
    } else {
        BigUint::from(100u32) * mk.pow(8u32)
    };
    ExistenceThreshold { n, m, k, threshold }
}

/// The implication `q > threshold => N* > 0` on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceCheck {
    pub threshold: ExistenceThreshold,
    pub q_exceeds: bool,
    pub nstar_positive: bool,
    pub holds: bool,
}

pub fn existence_check(q: u64, n: usize, m: u32, k: u32, n_star: u64) -> ExistenceCheck {
    let threshold = existence_threshold(n, m, k);
    let q_exceeds = BigUint::from(q) > threshold.threshold;
    let nstar_positive = n_star > 0;
    ExistenceCheck {
        threshold,
        q_exceeds,
        nstar_positive,
        holds: !q_exceeds || nstar_positive,
    }
}
