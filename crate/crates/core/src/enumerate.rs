//! Odometer-style enumeration of coordinate tuples and budget arithmetic.

use crate::error::{Error, Result};
use crate::field::Fe;

/// Advances `coords` to the next tuple of `F_q^len` in base-`q` order
/// (last coordinate fastest). Returns `false` after wrapping to all zeros.
#[inline]
pub(crate) fn advance(coords: &mut [Fe], q: u32) -> bool {
    for c in coords.iter_mut().rev() {
        if c.0 + 1 < q {
            c.0 += 1;
            return true;
        }
        c.0 = 0;
    }
    false
}

/// Same as [`advance`] over `(F_q^*)^len`; coordinates must start at 1.
#[inline]
pub(crate) fn advance_units(coords: &mut [Fe], q: u32) -> bool {
    for c in coords.iter_mut().rev() {
        if c.0 + 1 < q {
            c.0 += 1;
            return true;
        }
        c.0 = 1;
    }
    false
}

/// `base^exp` without overflow, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded {
            what,
            needed,
            budget,
        })
    } else {
        Ok(())
    }
}
