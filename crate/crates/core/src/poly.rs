//! Dense univariate polynomials over `F_q` and distinct-root counting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// Coefficients in ascending degree, without trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniPoly {
    coeffs: Vec<Fe>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self {
            coeffs: vec![Fe::ZERO, Fe::ONE],
        }
    }

    /// `c * X^deg`.
    pub fn monomial(c: Fe, deg: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_codes(codes: &[u32]) -> Self {
        Self::from_coeffs(codes.iter().map(|&c| Fe(c)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn eval(&self, x: Fe, ctx: &FieldCtx) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..len)
                .map(|i| ctx.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs(
            (0..len)
                .map(|i| ctx.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self, ctx: &FieldCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: Fe, ctx: &FieldCtx) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// Remainder of division by `g`.
    pub fn rem(&self, g: &Self, ctx: &FieldCtx) -> Result<Self> {
        let lead = g.leading().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = ctx.inv(lead)?;
        let dg = g.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dg {
            let top = r.pop().unwrap_or(Fe::ZERO);
            if top.is_zero() {
                continue;
            }
            let factor = ctx.mul(top, lead_inv);
            let base = r.len() - dg;
            for (i, &gi) in g.coeffs[..dg].iter().enumerate() {
                r[base + i] = ctx.sub(r[base + i], ctx.mul(factor, gi));
            }
        }
        Ok(Self::from_coeffs(r))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self, ctx: &FieldCtx) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l == Fe::ONE => self.clone(),
            Some(l) => self.scale(ctx.inv(l).expect("leading coefficient is nonzero"), ctx),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self, ctx: &FieldCtx) -> Self {
        let mut a = self.monic(ctx);
        let mut b = other.monic(ctx);
        while !b.is_zero() {
            let r = a.rem(&b, ctx).expect("divisor is nonzero");
            a = b;
            b = r.monic(ctx);
        }
        a
    }

    fn mul_mod(&self, other: &Self, f: &Self, ctx: &FieldCtx) -> Self {
        self.mul(other, ctx).rem(f, ctx).expect("modulus is nonzero")
    }
}

/// `X^q mod f`, by square-and-multiply on the bits of `q` with every
/// intermediate reduced modulo `f`.
pub fn frobenius_power(f: &UniPoly, ctx: &FieldCtx) -> Result<UniPoly> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        _ => {}
    }
    let x = UniPoly::x().rem(f, ctx)?;
    let q = ctx.q();
    let mut acc = UniPoly::constant(Fe::ONE);
    for bit in (0..u32::BITS - q.leading_zeros()).rev() {
        acc = acc.mul_mod(&acc, f, ctx);
        if (q >> bit) & 1 == 1 {
            acc = acc.mul_mod(&x, f, ctx);
        }
    }
    Ok(acc)
}

/// Number of distinct roots of `f` in `F_q`, as `deg gcd(f, X^q - X)`.
///
/// Nonzero constants have no roots; the zero polynomial is an error.
pub fn distinct_root_count(f: &UniPoly, ctx: &FieldCtx) -> Result<u64> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok(0),
        Some(_) => {
            let h = frobenius_power(f, ctx)?.sub(&UniPoly::x(), ctx);
            let g = f.gcd(&h, ctx);
            Ok(g.degree().unwrap_or(0) as u64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, s: u32) -> FieldCtx {
        FieldCtx::new(p, s).unwrap()
    }

    #[test]
    fn ring_operations() {
        let f2 = field(2, 1);
        let x1 = UniPoly::from_codes(&[1, 1]);
        assert_eq!(x1.mul(&x1, &f2), UniPoly::from_codes(&[1, 0, 1]));

        let f5 = field(5, 1);
        let x2 = UniPoly::monomial(Fe::ONE, 2);
        assert!(x2.rem(&UniPoly::x(), &f5).unwrap().is_zero());
        assert_eq!(
            UniPoly::from_codes(&[4, 2]).monic(&f5),
            UniPoly::from_codes(&[2, 1])
        );
        assert!(matches!(
            x2.rem(&UniPoly::zero(), &f5),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f7 = field(7, 1);
        let f = UniPoly::from_codes(&[1, 0, 1]);
        assert_eq!(frobenius_power(&f, &f7).unwrap(), UniPoly::from_codes(&[0, 6]));
        assert!(frobenius_power(&UniPoly::x(), &f7).unwrap().is_zero());
        assert!(matches!(
            frobenius_power(&UniPoly::constant(Fe(3)), &f7),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn root_count_examples() {
        let f7 = field(7, 1);
        assert_eq!(
            distinct_root_count(&UniPoly::from_codes(&[6, 0, 1]), &f7).unwrap(),
            2
        );
        assert_eq!(
            distinct_root_count(&UniPoly::from_codes(&[1, 0, 1]), &f7).unwrap(),
            0
        );
        for (p, s) in [(7, 1), (3, 2), (2, 3)] {
            let ctx = field(p, s);
            let q = ctx.q() as usize;
            let xq_minus_x = UniPoly::monomial(Fe::ONE, q).sub(&UniPoly::x(), &ctx);
            assert_eq!(distinct_root_count(&xq_minus_x, &ctx).unwrap(), q as u64);
        }
        assert_eq!(
            distinct_root_count(&UniPoly::constant(Fe(2)), &f7).unwrap(),
            0
        );
        assert!(distinct_root_count(&UniPoly::zero(), &f7).is_err());
    }

    #[test]
    fn repeated_roots_count_once() {
        let f5 = field(5, 1);
        // (X - 1)^3 (X - 2)
        let a = UniPoly::from_codes(&[4, 1]);
        let b = UniPoly::from_codes(&[3, 1]);
        let f = a.mul(&a, &f5).mul(&a, &f5).mul(&b, &f5);
        assert_eq!(distinct_root_count(&f, &f5).unwrap(), 2);
    }
}
