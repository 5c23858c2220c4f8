//! Exhaustive enumeration: the ground-truth oracle.

use rayon::prelude::*;

use crate::enumerate::{advance, advance_units, check_budget, saturating_pow};
use crate::error::Result;
use crate::field::Fe;
use crate::model::MHInstance;

/// `N`, by evaluating `f` at all `q^n` points.
pub fn count_naive(inst: &MHInstance, budget: u64) -> Result<u64> {
    let (q, n) = (inst.ctx().q(), inst.n());
    check_budget("naive count", saturating_pow(q as u64, n), budget)?;
    Ok((0..q)
        .into_par_iter()
        .map(|x1| {
            let mut x = vec![Fe::ZERO; n];
            x[0] = Fe(x1);
            let mut hits = 0u64;
            loop {
                if inst.eval_f(&x).is_zero() {
                    hits += 1;
                }
                if !advance(&mut x[1..], q) {
                    break;
                }
            }
            hits
        })
        .sum())
}

/// `N*`, by evaluating `f` at all `(q-1)^n` points with nonzero coordinates.
pub fn count_nonzero_naive(inst: &MHInstance, budget: u64) -> Result<u64> {
    let (q, n) = (inst.ctx().q(), inst.n());
    check_budget("naive nonzero count", saturating_pow(q as u64 - 1, n), budget)?;
    Ok((1..q)
        .into_par_iter()
        .map(|x1| {
            let mut x = vec![Fe::ONE; n];
            x[0] = Fe(x1);
            let mut hits = 0u64;
            loop {
                if inst.eval_f(&x).is_zero() {
                    hits += 1;
                }
                if !advance_units(&mut x[1..], q) {
                    break;
                }
            }
            hits
        })
        .sum())
}
