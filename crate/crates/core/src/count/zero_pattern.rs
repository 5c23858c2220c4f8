//! Counts with prescribed zero coordinates and inclusion–exclusion for `N*`.
//!
//! With the coordinates in a nonempty set `S` forced to zero the product
//! term vanishes and the equation becomes `g = 0`, i.e. the diagonal
//! equation `sum_{j not in S} a_j x_j^m = -a`. Its count `N_S` depends on the
//! surviving coefficients, so a single value per level `|S| = i` is only
//! available when the level is symmetric. Inclusion–exclusion is therefore
//! carried out over all subsets; [`InclusionExclusion::binomial_n_eq`] gives
//! the one-value-per-level form for comparison.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::count::diagonal::count_diagonal;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::model::MHInstance;

/// Largest `n` for which all `2^n` zero patterns are enumerated.
pub const MAX_PATTERN_VARIABLES: usize = 24;

/// `N_S` for the given zero set (0-based indices).
pub fn count_zero_pattern(inst: &MHInstance, zero_set: &[usize]) -> Result<u64> {
    let n = inst.n();
    if let Some(&bad) = zero_set.iter().find(|&&j| j >= n) {
        return Err(Error::IndexOutOfRange {
            index: bad + 1,
            max: n,
        });
    }
    let survivors: Vec<Fe> = (0..n)
        .filter(|j| !zero_set.contains(j))
        .map(|j| inst.a_coeffs()[j])
        .collect();
    let ctx = inst.ctx();
    Ok(count_diagonal(ctx, &survivors, inst.m() as u64, ctx.neg(inst.a())))
}

/// `N_i`: solutions with `x_1 = ... = x_i = 0` (the tail `a_{i+1}..a_n` survives).
pub fn count_ni(inst: &MHInstance, i: usize) -> Result<u64> {
    if i == 0 || i > inst.n() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: inst.n(),
        });
    }
    count_zero_pattern(inst, &(0..i).collect::<Vec<_>>())
}

/// One level `|S| = i` of the inclusion–exclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroLevel {
    pub i: usize,
    /// `N_i` for the tail pattern.
    pub tail_count: u64,
    /// Sum of `N_S` over all `binom(n, i)` patterns of this size.
    pub level_sum: u64,
    /// Whether every pattern of this size has the tail count.
    pub symmetric: bool,
    /// Distinct values `N_S` seen at this level, ascending.
    pub distinct_counts: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionExclusion {
    pub levels: Vec<ZeroLevel>,
    /// `N^=`: solutions with at least one zero coordinate.
    pub n_eq: u64,
}

impl InclusionExclusion {
    pub fn symmetric(&self) -> bool {
        self.levels.iter().all(|l| l.symmetric)
    }

    /// `sum_i (-1)^{i+1} binom(n, i) N_i` using the tail count per level.
    /// Equals [`n_eq`](Self::n_eq) whenever every level is symmetric.
    pub fn binomial_n_eq(&self) -> BigInt {
        let n = self.levels.len();
        self.levels
            .iter()
            .map(|l| {
                let term = binomial(n as u64, l.i as u64) * BigInt::from(l.tail_count);
                if l.i % 2 == 1 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    /// `N* = N - N^=`.
    pub fn nonzero_from_total(&self, n_total: u64) -> Result<u64> {
        n_total
            .checked_sub(self.n_eq)
            .ok_or_else(|| Error::Internal(format!("N^= = {} exceeds N = {n_total}", self.n_eq)))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Inclusion–exclusion over every nonempty zero pattern. Patterns with the
/// same surviving coefficient multiset share one diagonal count.
pub fn inclusion_exclusion(inst: &MHInstance) -> Result<InclusionExclusion> {
    let n = inst.n();
    if n > MAX_PATTERN_VARIABLES {
        return Err(Error::BudgetExceeded {
            what: "zero-pattern enumeration",
            needed: 1u128 << n,
            budget: 1u64 << MAX_PATTERN_VARIABLES,
        });
    }
    let mut cache: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut per_level: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 1u32..(1u32 << n) {
        let zero_set: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let mut key: Vec<u32> = (0..n)
            .filter(|j| mask >> j & 1 == 0)
            .map(|j| inst.a_coeffs()[j].0)
            .collect();
        key.sort_unstable();
        let count = match cache.get(&key) {
            Some(&c) => c,
            None => {
                let c = count_zero_pattern(inst, &zero_set)?;
                cache.insert(key, c);
                c
            }
        };
        per_level[zero_set.len()].push(count);
    }

    let mut total = BigInt::from(0);
    let mut levels = Vec::with_capacity(n);
    for (i, counts) in per_level.into_iter().enumerate().skip(1) {
        let tail_count = count_ni(inst, i)?;
        let level_sum: u64 = counts.iter().sum();
        let mut distinct_counts = counts.clone();
        distinct_counts.sort_unstable();
        distinct_counts.dedup();
        let symmetric = distinct_counts == [tail_count];
        if i % 2 == 1 {
            total += level_sum;
        } else {
            total -= level_sum;
        }
        levels.push(ZeroLevel {
            i,
            tail_count,
            level_sum,
            symmetric,
            distinct_counts,
        });
    }
    if total.is_negative() {
        return Err(Error::Internal(format!("negative N^= = {total}")));
    }
    let n_eq = total
        .to_u64()
        .ok_or_else(|| Error::Internal("N^= does not fit in u64".into()))?;
    Ok(InclusionExclusion { levels, n_eq })
}
