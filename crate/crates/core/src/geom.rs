//! Pointwise probes of the singular locus of `V_f`, of `V_f^inf` and of the
//! projective closure at infinity, over `F_q` or an extension `F_{q^r}`.
//!
//! A singular point of `V_f` with some `x_j = 0` forces `g(x) = 0` and then a
//! second zero coordinate; one with all coordinates nonzero lies on
//! `W = V(a_1(n - km) X_1^m + a, a_1 X_1^m - a_2 X_2^m, a_1 X_1^m - a_3 X_3^m)`.
//! The probe enumerates singular points and checks each against these two
//! memberships.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{advance, check_budget, saturating_pow};
use crate::error::Result;
use crate::field::{Fe, FieldCtx};
use crate::model::MHInstance;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// `x_j = x_l = 0` and `sum_{i != j, l} a_i x_i^m + a = 0` (0-based `j < l`).
    TwoZerosVj { j: usize, l: usize },
    /// All coordinates nonzero and the point lies on `W`.
    AllNonzeroW,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularPointRecord {
    pub point_codes: Vec<u32>,
    /// The point lives in `F_{p^{s r}}`.
    pub ext_degree: u32,
    pub zero_coords: Vec<usize>,
    pub classification: Classification,
}

/// The instance over `F_{q^r}`. For `r > 1` the coefficients must be
/// integers mod `p` so that the lift is canonical.
pub fn over_extension(inst: &MHInstance, r: u32) -> Result<MHInstance> {
    if r == 1 {
        return Ok(inst.clone());
    }
    let ctx = inst.ctx();
    let ext = Arc::new(FieldCtx::new(ctx.p() as u64, ctx.s() * r)?);
    inst.lift_to(ext)
}

fn classify(inst: &MHInstance, x: &[Fe]) -> Classification {
    let ctx = inst.ctx();
    let zeros: Vec<usize> = (0..x.len()).filter(|&i| x[i].is_zero()).collect();
    if zeros.len() >= 2 {
        // zero coordinates contribute nothing, so the residual sum is g(x)
        if inst.eval_g(x).is_zero() {
            return Classification::TwoZerosVj {
                j: zeros[0],
                l: zeros[1],
            };
        }
        return Classification::Unclassified;
    }
    if zeros.is_empty() && x.len() >= 3 {
        let m = inst.m() as u64;
        let a = inst.a_coeffs();
        let term = |j: usize| ctx.mul(a[j], ctx.pow(x[j], m));
        let n_minus_km = ctx.from_int(inst.n() as i64 - inst.mk() as i64);
        let first = ctx.add(ctx.mul(n_minus_km, term(0)), inst.a());
        if first.is_zero() && term(0) == term(1) && term(0) == term(2) {
            return Classification::AllNonzeroW;
        }
    }
    Classification::Unclassified
}

/// Every point of `F_{q^r}^n` with `f = 0` and `grad f = 0`, classified and
/// sorted by point code. `budget` caps `q^{rn}`.
pub fn enumerate_singular_points(
    inst: &MHInstance,
    r: u32,
    budget: u64,
) -> Result<Vec<SingularPointRecord>> {
    let ext = over_extension(inst, r)?;
    let big_q = ext.ctx().q();
    let n = ext.n();
    check_budget("singular point scan", saturating_pow(big_q as u64, n), budget)?;
    let mut records: Vec<SingularPointRecord> = (0..big_q)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut x = vec![Fe::ZERO; n];
            x[0] = Fe(first);
            loop {
                if ext.eval_f(&x).is_zero() && ext.eval_gradient(&x).iter().all(|g| g.is_zero()) {
                    found.push(SingularPointRecord {
                        point_codes: x.iter().map(|c| c.0).collect(),
                        ext_degree: r,
                        zero_coords: (0..n).filter(|&i| x[i].is_zero()).collect(),
                        classification: classify(&ext, &x),
                    });
                }
                if !advance(&mut x[1..], big_q) {
                    break;
                }
            }
            found
        })
        .collect();
    records.sort();
    Ok(records)
}

/// Normalized representatives of `P^{len-1}(F_Q)`: first nonzero coordinate 1.
fn projective_points(q: u32, len: usize) -> impl Iterator<Item = Vec<Fe>> {
    (0..len).flat_map(move |lead| {
        let tail = len - lead - 1;
        let mut rest = vec![Fe::ZERO; tail];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mut p = vec![Fe::ZERO; len];
            p[lead] = Fe::ONE;
            p[lead + 1..].copy_from_slice(&rest);
            done = !advance(&mut rest, q);
            Some(p)
        })
    })
}

fn projective_count(q: u32, len: usize) -> u128 {
    (saturating_pow(q as u64, len) - 1) / (q as u128 - 1)
}

/// Result of checking one family of projective points for singularity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityCheck {
    /// Points of `V_f^inf` over `F_{q^r}`.
    pub points: u64,
    /// Normalized codes of the points where the check failed.
    pub violations: Vec<Vec<u32>>,
}

impl InfinityCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn scan_infinity(
    inst: &MHInstance,
    r: u32,
    budget: u64,
    singular: impl Fn(&MHInstance, &[Fe]) -> bool,
) -> Result<InfinityCheck> {
    let ext = over_extension(inst, r)?;
    let n = ext.n();
    check_budget("projective scan", projective_count(ext.ctx().q(), n), budget)?;
    let ctx = ext.ctx();
    let a = ext.a_coeffs();
    let m = ext.m() as u64;
    let mut out = InfinityCheck::default();
    for x in projective_points(ext.ctx().q(), n) {
        let diag = a
            .iter()
            .zip(&x)
            .fold(Fe::ZERO, |acc, (&ai, &xi)| ctx.add(acc, ctx.mul(ai, ctx.pow(xi, m))));
        if !diag.is_zero() {
            continue;
        }
        out.points += 1;
        if singular(&ext, &x) {
            out.violations.push(x.iter().map(|c| c.0).collect());
        }
    }
    Ok(out)
}

/// Checks that the gradient `(m a_j x_j^{m-1})_j` of the diagonal form is
/// nonzero at every projective point of `V_f^inf`.
pub fn check_infinity_nonsingular(inst: &MHInstance, r: u32, budget: u64) -> Result<InfinityCheck> {
    scan_infinity(inst, r, budget, |ext, x| {
        let ctx = ext.ctx();
        let m = ext.m() as u64;
        ext.a_coeffs().iter().zip(x).all(|(&ai, &xi)| {
            ctx.mul(ctx.scalar(m), ctx.mul(ai, ctx.pow(xi, m - 1))).is_zero()
        })
    })
}

/// Checks that the full gradient of `f^h` is nonzero at every point
/// `(0 : x)` of the projective closure.
///
/// For `k >= 2` every term of `f^h` vanishes to order two or more along
/// `X_0 = G = 0` unless `mk - n = 1` and all `x_j != 0`, so this check
/// fails on most instances.
pub fn check_pcl_no_singular_at_infinity(
    inst: &MHInstance,
    r: u32,
    budget: u64,
) -> Result<InfinityCheck> {
    scan_infinity(inst, r, budget, |ext, x| {
        ext.eval_fh_gradient(Fe::ZERO, x).iter().all(|g| g.is_zero())
    })
}

/// Everything the probes report for one instance at one extension degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub ext_degree: u32,
    pub singular_points: Vec<SingularPointRecord>,
    pub unclassified: usize,
    /// Records with exactly one zero coordinate.
    pub single_zero: usize,
    pub infinity: InfinityCheck,
    pub pcl_at_infinity: InfinityCheck,
    /// `mk (mk-1)^n`, logged for `n = 3` only.
    pub bezout_product: Option<u64>,
}

impl ProbeSummary {
    /// The affine case analysis and the nonsingularity of `V_f^inf`.
    pub fn affine_ok(&self) -> bool {
        self.unclassified == 0 && self.single_zero == 0 && self.infinity.ok()
    }
}

pub fn probe(inst: &MHInstance, r: u32, budget: u64) -> Result<ProbeSummary> {
    let singular_points = enumerate_singular_points(inst, r, budget)?;
    let unclassified = singular_points
        .iter()
        .filter(|s| s.classification == Classification::Unclassified)
        .count();
    let single_zero = singular_points
        .iter()
        .filter(|s| s.zero_coords.len() == 1)
        .count();
    let mk = inst.mk();
    Ok(ProbeSummary {
        ext_degree: r,
        unclassified,
        single_zero,
        infinity: check_infinity_nonsingular(inst, r, budget)?,
        pcl_at_infinity: check_pcl_no_singular_at_infinity(inst, r, budget)?,
        bezout_product: (inst.n() == 3).then(|| mk * (mk - 1).pow(3)),
        singular_points,
    })
}
