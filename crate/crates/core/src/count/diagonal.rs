//! Value distributions of `c x^m` and their additive convolutions.

use serde::{Deserialize, Serialize};

use crate::field::{Fe, FieldCtx};

/// Counting measure on `F_q`: `table[v]` points map to the element with code `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDistribution {
    pub table: Vec<u64>,
    pub total: u64,
}

impl ValueDistribution {
    /// Distribution of the empty sum: all mass on zero.
    pub fn point_mass(ctx: &FieldCtx, at: Fe) -> Self {
        let mut table = vec![0; ctx.q() as usize];
        table[at.0 as usize] = 1;
        Self { table, total: 1 }
    }

    pub fn get(&self, v: Fe) -> u64 {
        self.table[v.0 as usize]
    }

    /// Additive convolution, `O(q^2)` over the supports.
    pub fn convolve(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let mut table = vec![0u64; self.table.len()];
        let support: Vec<(Fe, u64)> = other
            .table
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(v, &c)| (Fe(v as u32), c))
            .collect();
        for (u, &cu) in self.table.iter().enumerate() {
            if cu == 0 {
                continue;
            }
            let u = Fe(u as u32);
            for &(v, cv) in &support {
                table[ctx.add(u, v).0 as usize] += cu * cv;
            }
        }
        Self {
            table,
            total: self.total * other.total,
        }
    }

    /// Mass of `{(u, v) : u + v = target}` without building the full convolution.
    pub fn convolve_at(&self, other: &Self, target: Fe, ctx: &FieldCtx) -> u64 {
        self.table
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(u, &c)| c * other.get(ctx.sub(target, Fe(u as u32))))
            .sum()
    }
}

/// `table[v] = #{x : coeff * x^m = v}`.
pub fn diagonal_distribution(ctx: &FieldCtx, coeff: Fe, m: u64) -> ValueDistribution {
    let q = ctx.q() as u64;
    let table = if coeff.is_zero() {
        let mut t = vec![0; q as usize];
        t[0] = q;
        t
    } else {
        let inv = ctx.inv(coeff).expect("nonzero");
        ctx.elements()
            .map(|v| ctx.mth_power_root_count(m, ctx.mul(v, inv)))
            .collect()
    };
    ValueDistribution { table, total: q }
}

/// `#{x in F_q^t : c_1 x_1^m + ... + c_t x_t^m = rhs}`.
pub fn count_diagonal(ctx: &FieldCtx, coeffs: &[Fe], m: u64, rhs: Fe) -> u64 {
    match coeffs.split_last() {
        None => u64::from(rhs.is_zero()),
        Some((&last, rest)) => {
            let acc = rest.iter().fold(ValueDistribution::point_mass(ctx, Fe::ZERO), |acc, &c| {
                acc.convolve(&diagonal_distribution(ctx, c, m), ctx)
            });
            acc.convolve_at(&diagonal_distribution(ctx, last, m), rhs, ctx)
        }
    }
}
