//! Prefix enumeration with univariate root counting in the last variable.
//!
//! For a prefix `(x_1, ..., x_{n-1})` the solutions in `x_n` are the roots of
//!
//! ```text
//! P(X) = (C + a_n X^m)^k - D X,   C = a + sum a_i x_i^m,  D = b x_1 ... x_{n-1}
//! ```
//!
//! `P` depends on the prefix only through `(C, D)`, so the prefixes are
//! first tallied into a histogram over `(C, D)` and each distinct pair has
//! its roots counted once.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::enumerate::{check_budget, saturating_pow};
use crate::error::Result;
use crate::field::{Fe, FieldCtx};
use crate::model::MHInstance;
use crate::poly::{distinct_root_count, UniPoly};

/// Histograms up to this many `(C, D)` cells are kept dense.
const DENSE_CELLS: u64 = 1 << 20;

/// `N`, summing distinct root counts of `P` over all prefixes in `F_q^{n-1}`.
pub fn count_fast(inst: &MHInstance, budget: u64) -> Result<u64> {
    count_prefixes(inst, budget, false)
}

/// `N*`, over prefixes in `(F_q^*)^{n-1}`, discarding the root `X = 0`
/// (a root exactly when `C = 0`, since `P(0) = C^k`).
pub fn count_nonzero_direct(inst: &MHInstance, budget: u64) -> Result<u64> {
    count_prefixes(inst, budget, true)
}

/// The univariate specialization `(c + a_n X^m)^k - d X`.
pub fn specialization(inst: &MHInstance, c: Fe, d: Fe) -> UniPoly {
    Specializer::new(inst).poly(c, d)
}

struct Specializer<'a> {
    ctx: &'a FieldCtx,
    m: usize,
    /// `binom(k, j) a_n^j` for `j = 0..=k`.
    weights: Vec<Fe>,
}

impl<'a> Specializer<'a> {
    fn new(inst: &'a MHInstance) -> Self {
        let ctx = inst.ctx();
        let k = inst.k() as usize;
        let p = ctx.p() as u64;
        // Pascal row mod p
        let mut row = vec![1u64; 1];
        for _ in 0..k {
            let mut next = vec![1u64; row.len() + 1];
            for j in 1..row.len() {
                next[j] = (row[j - 1] + row[j]) % p;
            }
            row = next;
        }
        let an = *inst.a_coeffs().last().expect("n >= 1");
        let weights = row
            .iter()
            .enumerate()
            .map(|(j, &bin)| ctx.mul(ctx.scalar(bin), ctx.pow(an, j as u64)))
            .collect();
        Self {
            ctx,
            m: inst.m() as usize,
            weights,
        }
    }

    fn poly(&self, c: Fe, d: Fe) -> UniPoly {
        let ctx = self.ctx;
        let k = self.weights.len() - 1;
        let mut coeffs = vec![Fe::ZERO; self.m * k + 2];
        for (j, &w) in self.weights.iter().enumerate() {
            let term = ctx.mul(w, ctx.pow(c, (k - j) as u64));
            coeffs[self.m * j] = ctx.add(coeffs[self.m * j], term);
        }
        coeffs[1] = ctx.sub(coeffs[1], d);
        UniPoly::from_coeffs(coeffs)
    }

    fn roots(&self, c: Fe, d: Fe) -> u64 {
        let p = self.poly(c, d);
        if p.is_zero() {
            self.ctx.q() as u64
        } else {
            distinct_root_count(&p, self.ctx).expect("nonzero polynomial")
        }
    }
}

enum Histogram {
    Dense { q: usize, cells: Vec<u64> },
    Sparse(HashMap<(u32, u32), u64>),
}

impl Histogram {
    fn new(q: u32) -> Self {
        if (q as u64) * (q as u64) <= DENSE_CELLS {
            let q = q as usize;
            Histogram::Dense {
                q,
                cells: vec![0; q * q],
            }
        } else {
            Histogram::Sparse(HashMap::new())
        }
    }

    #[inline]
    fn bump(&mut self, c: Fe, d: Fe) {
        match self {
            Histogram::Dense { q, cells } => cells[c.0 as usize * *q + d.0 as usize] += 1,
            Histogram::Sparse(map) => *map.entry((c.0, d.0)).or_insert(0) += 1,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        match (&mut self, other) {
            (Histogram::Dense { cells, .. }, Histogram::Dense { cells: o, .. }) => {
                cells.iter_mut().zip(o).for_each(|(a, b)| *a += b);
            }
            (Histogram::Sparse(map), Histogram::Sparse(o)) => {
                for (key, v) in o {
                    *map.entry(key).or_insert(0) += v;
                }
            }
            _ => unreachable!("histograms of one count share a layout"),
        }
        self
    }

    fn entries(self) -> Vec<(Fe, Fe, u64)> {
        match self {
            Histogram::Dense { q, cells } => cells
                .into_iter()
                .enumerate()
                .filter(|&(_, v)| v > 0)
                .map(|(i, v)| (Fe((i / q) as u32), Fe((i % q) as u32), v))
                .collect(),
            Histogram::Sparse(map) => {
                let mut v: Vec<_> = map.into_iter().map(|((c, d), v)| (Fe(c), Fe(d), v)).collect();
                v.sort_unstable();
                v
            }
        }
    }
}

struct PrefixWalker<'a> {
    ctx: &'a FieldCtx,
    /// `terms[i][x] = a_i x^m` for the prefix coordinates.
    terms: Vec<Vec<Fe>>,
    lo: u32,
}

impl PrefixWalker<'_> {
    fn walk(&self, depth: usize, c: Fe, d: Fe, hist: &mut Histogram) {
        if depth == self.terms.len() {
            hist.bump(c, d);
            return;
        }
        let table = &self.terms[depth];
        for x in self.lo..self.ctx.q() {
            let x = Fe(x);
            self.walk(
                depth + 1,
                self.ctx.add(c, table[x.0 as usize]),
                self.ctx.mul(d, x),
                hist,
            );
        }
    }
}

fn prefix_histogram(inst: &MHInstance, nonzero_only: bool) -> Histogram {
    let ctx = inst.ctx();
    let q = ctx.q();
    let n = inst.n();
    let m = inst.m() as u64;
    let terms: Vec<Vec<Fe>> = inst.a_coeffs()[..n - 1]
        .iter()
        .map(|&ai| ctx.elements().map(|x| ctx.mul(ai, ctx.pow(x, m))).collect())
        .collect();
    let walker = PrefixWalker {
        ctx,
        terms,
        lo: u32::from(nonzero_only),
    };
    if n == 1 {
        let mut h = Histogram::new(q);
        h.bump(inst.a(), inst.b());
        return h;
    }
    (walker.lo..q)
        .into_par_iter()
        .fold(
            || Histogram::new(q),
            |mut h, x1| {
                let x1 = Fe(x1);
                walker.walk(
                    1,
                    ctx.add(inst.a(), walker.terms[0][x1.0 as usize]),
                    ctx.mul(inst.b(), x1),
                    &mut h,
                );
                h
            },
        )
        .reduce(|| Histogram::new(q), Histogram::merge)
}

fn count_prefixes(inst: &MHInstance, budget: u64, nonzero_only: bool) -> Result<u64> {
    let q = inst.q();
    let base = if nonzero_only { q - 1 } else { q };
    check_budget(
        if nonzero_only {
            "fast nonzero count"
        } else {
            "fast count"
        },
        saturating_pow(base, inst.n() - 1),
        budget,
    )?;
    let spec = Specializer::new(inst);
    let entries = prefix_histogram(inst, nonzero_only).entries();
    Ok(entries
        .par_iter()
        .map(|&(c, d, mult)| {
            let mut r = spec.roots(c, d);
            if nonzero_only && c.is_zero() {
                r -= 1;
            }
            mult * r
        })
        .sum())
}
