//! Deterministic sweeps: instance generation, counting, verdicts and probes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    self, existence_check, main_term_nonzero, main_term_total, BoundKind, BoundVerdict,
    ExistenceCheck,
};
use crate::count::{count_all, Budgets, CountReport};
use crate::enumerate::saturating_pow;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::geom::{self, ProbeSummary};
use crate::harness::lcg::Lcg;
use crate::harness::spec::{CoeffMode, SweepSpec};
use crate::model::{HypothesisFlags, InstanceRecord, MHInstance, Violation};

/// Everything computed for one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub record: InstanceRecord,
    pub q: u64,
    pub gcd_m_q1: u64,
    pub flags: HypothesisFlags,
    pub violations: Vec<Violation>,
    /// Absent when the counters ran out of budget.
    pub counts: Option<CountReport>,
    pub verdicts: Vec<BoundVerdict>,
    pub existence: Option<ExistenceCheck>,
    /// With `gcd(m, q-1) = 1`: whether every zero-pattern count equals its
    /// exact value (`q^{n-i-1}` for `i <= n-2`, `1` for `i = n-1`, `0` for `i = n`).
    pub diagonal_exact: Option<bool>,
    pub probes: Vec<ProbeSummary>,
    pub notes: Vec<String>,
}

impl InstanceResult {
    pub fn verdict(&self, kind: BoundKind) -> Option<&BoundVerdict> {
        self.verdicts.iter().find(|v| v.kind == kind)
    }

    pub fn verdicts_of(&self, kind: BoundKind) -> impl Iterator<Item = &BoundVerdict> {
        self.verdicts.iter().filter(move |v| v.kind == kind)
    }

    /// Verdicts that count toward the exit code and failed.
    pub fn failures(&self) -> Vec<&BoundVerdict> {
        self.verdicts
            .iter()
            .filter(|v| !v.pass && !v.hypothesis_violation && !v.info_only)
            .collect()
    }

    /// Counters agree with each other (and with the naive oracle when run).
    pub fn oracle_match(&self) -> Option<bool> {
        self.counts.as_ref().map(CountReport::consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedInstance {
    pub record: InstanceRecord,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub results: Vec<InstanceResult>,
    pub skipped: Vec<SkippedInstance>,
}

impl SweepOutcome {
    /// 0 iff no hypothesis-satisfying verdict failed and every existence
    /// implication held.
    pub fn exit_code(&self) -> i32 {
        let bad = self.results.iter().any(|r| {
            !r.failures().is_empty() || r.existence.as_ref().is_some_and(|e| !e.holds)
        });
        i32::from(bad)
    }
}

/// The instance stream of a spec, lexicographic in `(p, s, n, m, k)` and
/// then in coefficient draw order. Random draws come from one generator
/// consumed in stream order, `a_1, ..., a_n, a, b` per instance.
pub fn generate_instances(spec: &SweepSpec) -> Result<Vec<InstanceRecord>> {
    let mode = spec.validate()?;
    let mut primes = spec.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let mut exts = spec.extensions.clone();
    exts.sort_unstable();
    exts.dedup();
    let mut rng = match &mode {
        CoeffMode::Random { seed, .. } => Some(Lcg::new(*seed)),
        _ => None,
    };
    let mut out = Vec::new();
    for &p in &primes {
        for &s in &exts {
            let q = saturating_pow(p, s as usize);
            if q > u32::MAX as u128 {
                return Err(Error::Spec(format!("field size {p}^{s} is too large")));
            }
            let q = q as u32;
            for n in spec.n_range.iter() {
                for m in spec.m_range.iter() {
                    for k in spec.k_range.iter() {
                        let shape = |coeffs: Vec<u32>, a: u32, b: u32| InstanceRecord {
                            p,
                            s,
                            n: n as usize,
                            m: m as u32,
                            k: k as u32,
                            coeffs,
                            a,
                            b,
                        };
                        match &mode {
                            CoeffMode::AllOnes => out.push(shape(vec![1; n as usize], 1, 1)),
                            CoeffMode::Random { count, .. } => {
                                let g = rng.as_mut().expect("seeded");
                                for _ in 0..*count {
                                    let coeffs = (0..n).map(|_| g.draw_nonzero(q)).collect();
                                    let a = g.draw_nonzero(q);
                                    let b = g.draw_nonzero(q);
                                    out.push(shape(coeffs, a, b));
                                }
                            }
                            CoeffMode::Explicit(lists) => {
                                for l in lists.iter().filter(|l| l.len() == n as usize + 2) {
                                    let nn = n as usize;
                                    out.push(shape(l[..nn].to_vec(), l[nn], l[nn + 1]));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Counts, verdicts and probes for one instance. Budget exhaustion is
/// recorded in `notes`; other errors propagate.
pub fn process_instance(
    inst: &MHInstance,
    budgets: &Budgets,
    probe_degrees: &[u32],
) -> Result<InstanceResult> {
    let record = inst.record();
    let flags = inst.flags();
    let mut notes = Vec::new();
    let counts = match count_all(inst, budgets) {
        Ok(c) => Some(c),
        Err(e @ Error::BudgetExceeded { .. }) => {
            notes.push(format!("counting skipped: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(c) = &counts {
        if c.n_naive.is_none() {
            notes.push("naive oracle skipped: over budget".into());
        }
        if !c.zero_pattern_symmetric {
            notes.push("zero-pattern counts differ within a level".into());
        }
    }

    let mut verdicts = Vec::new();
    let mut existence = None;
    let mut diagonal_exact = None;
    if let Some(c) = &counts {
        verdicts.push(bounds::verdict_main(inst, c.n_total));
        if inst.n() >= 3 {
            verdicts.push(bounds::verdict_nstar(inst, c.n_star())?);
        }
        for level in &c.zero_levels {
            let t = inst.n() - level.i;
            if t == 0 {
                continue;
            }
            for &count in &level.distinct_counts {
                let subject = format!("N_{}", level.i);
                verdicts.extend(bounds::verdict_diagonal(inst.q(), inst.m(), t, &subject, count)?);
            }
        }
        if inst.n() >= 2 {
            verdicts.push(bounds::verdict_pcl(inst, c.count_pcl));
            verdicts.extend(bounds::verdict_infinity(inst, c.count_infinity));
        }
        if inst.n() >= 5 {
            verdicts.push(bounds::verdict_existence_chain(inst, c.n_star()));
        }
        if inst.n() >= 3 {
            existence = Some(existence_check(
                inst.q(),
                inst.n(),
                inst.m(),
                inst.k(),
                c.n_star(),
            ));
        }
        if flags.gcd_one && !inst.a().is_zero() {
            let n = inst.n();
            let q = inst.q();
            diagonal_exact = Some(c.zero_levels.iter().all(|l| {
                let expected = match n - l.i {
                    0 => 0,
                    1 => 1,
                    t => Pow::pow(q, (t - 1) as u32),
                };
                l.distinct_counts.iter().all(|&v| v == expected)
            }));
        }
    }

    let mut probes = Vec::new();
    for &r in probe_degrees {
        if r > 1 && inst.coeff_int_spec().is_none() {
            notes.push(format!("probe r={r} skipped: coefficients outside the prime field"));
            continue;
        }
        match geom::probe(inst, r, budgets.probe_points) {
            Ok(p) => probes.push(p),
            Err(e @ Error::BudgetExceeded { .. }) => {
                notes.push(format!("probe r={r} skipped: {e}"));
            }
            Err(e) => return Err(e),
        }
    }

    Ok(InstanceResult {
        q: inst.q(),
        gcd_m_q1: inst.gcd_m_q1(),
        flags,
        violations: inst.violations().to_vec(),
        record,
        counts,
        verdicts,
        existence,
        diagonal_exact,
        probes,
        notes,
    })
}

/// `q^{n-1}` and `((q-1)^n - (-1)^n)/q` for a result.
pub fn main_terms(r: &InstanceResult) -> Result<(BigInt, BigInt)> {
    Ok((
        main_term_total(r.q, r.record.n),
        main_term_nonzero(r.q, r.record.n)?,
    ))
}

/// Runs every instance of the spec. Results come back in stream order
/// whatever the number of workers.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    let records = generate_instances(spec)?;
    let mut fields: BTreeMap<(u64, u32), Arc<FieldCtx>> = BTreeMap::new();
    let mut work = Vec::new();
    let mut skipped = Vec::new();
    for rec in records {
        let ctx = match fields.get(&(rec.p, rec.s)) {
            Some(c) => c.clone(),
            None => {
                let c = Arc::new(FieldCtx::new(rec.p, rec.s)?);
                fields.insert((rec.p, rec.s), c.clone());
                c
            }
        };
        if let Some(cap) = spec.max_points {
            if saturating_pow(ctx.q() as u64, rec.n) > cap as u128 {
                skipped.push(SkippedInstance {
                    reason: format!("q^n exceeds max_points = {cap}"),
                    record: rec,
                });
                continue;
            }
        }
        match rec.build_in(ctx, spec.strict) {
            Ok(inst) => work.push(inst),
            Err(Error::Hypothesis(v)) => skipped.push(SkippedInstance {
                reason: format!("hypotheses fail: {v:?}"),
                record: rec,
            }),
            Err(e) => return Err(e),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results = pool.install(|| {
        work.par_iter()
            .map(|inst| process_instance(inst, &spec.budgets, &spec.probe_degrees))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepOutcome { results, skipped })
}
