//! Exact counts: `N`, `N*`, the zero-pattern counts `N_i`, `N^=`, and the
//! projective counts of the closure and of the hyperplane at infinity.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::model::MHInstance;

pub mod diagonal;
pub mod fast;
pub mod naive;
pub mod zero_pattern;

pub use diagonal::{count_diagonal, diagonal_distribution, ValueDistribution};
pub use fast::{count_fast, count_nonzero_direct};
pub use naive::{count_naive, count_nonzero_naive};
pub use zero_pattern::{
    count_ni, count_zero_pattern, inclusion_exclusion, InclusionExclusion, ZeroLevel,
};

/// Evaluation budgets. Environment variables `MHCOUNT_BUDGET_NAIVE_EVALS`,
/// `MHCOUNT_BUDGET_FAST_PREFIXES` and `MHCOUNT_BUDGET_PROBE_POINTS`
/// override the defaults through [`Budgets::from_env`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Points evaluated by the naive oracle (`q^n`).
    pub naive_evals: u64,
    /// Prefixes enumerated by the fast counter (`q^{n-1}`).
    pub fast_prefixes: u64,
    /// Points scanned by the geometry probes (`q^{rn}`).
    pub probe_points: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            naive_evals: 100_000_000,
            fast_prefixes: 100_000_000,
            probe_points: 10_000_000,
        }
    }
}

pub const ENV_NAIVE_EVALS: &str = "MHCOUNT_BUDGET_NAIVE_EVALS";
pub const ENV_FAST_PREFIXES: &str = "MHCOUNT_BUDGET_FAST_PREFIXES";
pub const ENV_PROBE_POINTS: &str = "MHCOUNT_BUDGET_PROBE_POINTS";

impl Budgets {
    /// Defaults overridden by any `MHCOUNT_BUDGET_*` variables that are set.
    pub fn from_env() -> Result<Self> {
        let mut b = Self::default();
        for (var, slot) in [
            (ENV_NAIVE_EVALS, &mut b.naive_evals),
            (ENV_FAST_PREFIXES, &mut b.fast_prefixes),
            (ENV_PROBE_POINTS, &mut b.probe_points),
        ] {
            if let Ok(v) = std::env::var(var) {
                *slot = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{var}={v:?} is not an integer")))?;
            }
        }
        Ok(b)
    }
}

/// Wall-clock seconds per counter.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub naive: Option<f64>,
    pub fast: f64,
    pub nonzero_direct: f64,
    pub inclusion_exclusion: f64,
    pub infinity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    /// `N` from the fast counter.
    pub n_total: u64,
    /// `N` from the naive oracle, when within budget.
    pub n_naive: Option<u64>,
    pub n_star_direct: u64,
    /// `N* = N - N^=` by inclusion–exclusion.
    pub n_star_ie: u64,
    /// `N_i` for `i = 1..=n` (tail patterns).
    pub n_i: Vec<u64>,
    pub n_eq: u64,
    pub zero_levels: Vec<ZeroLevel>,
    pub zero_pattern_symmetric: bool,
    /// `|V_f^inf(F_q)|`.
    pub count_infinity: u64,
    /// `|pcl(V_f)(F_q)| = N + |V_f^inf(F_q)|`.
    pub count_pcl: u64,
    pub timing: Timing,
}

impl CountReport {
    /// Both routes to `N*` agree and, when run, the naive oracle agrees with `N`.
    pub fn consistent(&self) -> bool {
        self.n_star_direct == self.n_star_ie && self.n_naive.is_none_or(|n| n == self.n_total)
    }

    /// `N*`, taken from the direct count.
    pub fn n_star(&self) -> u64 {
        self.n_star_direct
    }
}

/// Projective points of `V(a_1 X_1^m + ... + a_n X_n^m)` in `P^{n-1}(F_q)`:
/// `(affine solutions - 1) / (q - 1)`.
pub fn count_infinity(inst: &MHInstance) -> Result<u64> {
    let affine = count_diagonal(inst.ctx(), inst.a_coeffs(), inst.m() as u64, Fe::ZERO);
    let q1 = inst.q() - 1;
    let cone = affine
        .checked_sub(1)
        .ok_or_else(|| Error::Internal("the origin must be an affine solution".into()))?;
    if cone % q1 != 0 {
        return Err(Error::Internal(format!(
            "{cone} nonzero affine points is not a multiple of q - 1 = {q1}"
        )));
    }
    Ok(cone / q1)
}

/// `|pcl(V_f)(F_q)| = N + |V_f^inf(F_q)|`.
pub fn count_pcl(n_total: u64, count_infinity: u64) -> u64 {
    n_total + count_infinity
}

/// Every count for one instance. The naive oracle runs only when `q^n` is
/// within `budgets.naive_evals`; the fast counters must fit their budget.
pub fn count_all(inst: &MHInstance, budgets: &Budgets) -> Result<CountReport> {
    let mut timing = Timing::default();
    let t = Instant::now();
    let n_total = count_fast(inst, budgets.fast_prefixes)?;
    timing.fast = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let n_naive = match count_naive(inst, budgets.naive_evals) {
        Ok(v) => {
            timing.naive = Some(t.elapsed().as_secs_f64());
            Some(v)
        }
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    let t = Instant::now();
    let n_star_direct = count_nonzero_direct(inst, budgets.fast_prefixes)?;
    timing.nonzero_direct = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let ie = inclusion_exclusion(inst)?;
    let n_star_ie = ie.nonzero_from_total(n_total)?;
    timing.inclusion_exclusion = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let count_inf = count_infinity(inst)?;
    timing.infinity = t.elapsed().as_secs_f64();

    Ok(CountReport {
        n_total,
        n_naive,
        n_star_direct,
        n_star_ie,
        n_i: ie.levels.iter().map(|l| l.tail_count).collect(),
        n_eq: ie.n_eq,
        zero_pattern_symmetric: ie.symmetric(),
        zero_levels: ie.levels,
        count_infinity: count_inf,
        count_pcl: count_pcl(n_total, count_inf),
        timing,
    })
}
