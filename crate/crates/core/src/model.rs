//! One Markoff–Hurwitz instance `(a_1 X_1^m + ... + a_n X_n^m + a)^k = b X_1 ... X_n`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// A hypothesis of the estimates that an instance fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    FewVariables { n: usize },
    SmallM { m: u32 },
    SmallK { k: u32 },
    ZeroCoefficient { index: usize },
    ZeroA,
    ZeroB,
    CharDividesMk { p: u32, mk: u64 },
    DegreeNotAboveN { mk: u64, n: usize },
}

/// Which hypotheses hold for an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    /// `n >= 3`, `m >= 2`, `k >= 2`.
    pub shape_ok: bool,
    /// `a`, `b` and every `a_i` nonzero.
    pub coeffs_nonzero: bool,
    /// `p` does not divide `mk`.
    pub char_ok: bool,
    /// `mk > n`.
    pub degree_ok: bool,
    /// `gcd(m, q - 1) = 1`.
    pub gcd_one: bool,
}

impl HypothesisFlags {
    /// Hypotheses of the estimate for `N` and the projective estimates.
    pub fn main(&self) -> bool {
        self.shape_ok && self.coeffs_nonzero && self.char_ok && self.degree_ok
    }

    /// Hypotheses of the estimate for `N*` and the existence threshold.
    pub fn nonzero(&self) -> bool {
        self.main() && self.gcd_one
    }
}

/// Plain-text form `p s n m k a1,...,an a b` with elements as integer codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub p: u64,
    pub s: u32,
    pub n: usize,
    pub m: u32,
    pub k: u32,
    pub coeffs: Vec<u32>,
    pub a: u32,
    pub b: u32,
}

impl InstanceRecord {
    pub fn build(&self, strict: bool) -> Result<MHInstance> {
        let ctx = Arc::new(FieldCtx::new(self.p, self.s)?);
        self.build_in(ctx, strict)
    }

    /// Builds the instance over an existing field context with matching `p`, `s`.
    pub fn build_in(&self, ctx: Arc<FieldCtx>, strict: bool) -> Result<MHInstance> {
        if ctx.p() as u64 != self.p || ctx.s() != self.s {
            return Err(Error::Malformed(format!(
                "record is over F_{}^{} but the field is F_{}^{}",
                self.p,
                self.s,
                ctx.p(),
                ctx.s()
            )));
        }
        if self.coeffs.len() != self.n {
            return Err(Error::Malformed(format!(
                "n = {} but {} coefficients given",
                self.n,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| ctx.element(c as u64))
            .collect::<Result<Vec<_>>>()?;
        let a = ctx.element(self.a as u64)?;
        let b = ctx.element(self.b as u64)?;
        MHInstance::new(ctx, self.m, self.k, coeffs, a, b, strict)
    }
}

impl fmt::Display for InstanceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(
            f,
            "{} {} {} {} {} {} {} {}",
            self.p,
            self.s,
            self.n,
            self.m,
            self.k,
            coeffs.join(","),
            self.a,
            self.b
        )
    }
}

impl FromStr for InstanceRecord {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 8 {
            return Err(Error::Parse(format!(
                "expected 8 fields `p s n m k a1,...,an a b`, got {}",
                fields.len()
            )));
        }
        fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
        }
        let coeffs = fields[5]
            .split(',')
            .map(|c| num::<u32>(c, "coefficient"))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p: num(fields[0], "p")?,
            s: num(fields[1], "s")?,
            n: num(fields[2], "n")?,
            m: num(fields[3], "m")?,
            k: num(fields[4], "k")?,
            coeffs,
            a: num(fields[6], "a")?,
            b: num(fields[7], "b")?,
        })
    }
}

/// A validated equation instance.
///
/// In strict mode construction fails on any hypothesis violation. In
/// lenient mode the violations are recorded and the instance is usable for
/// counting and probing, but estimates are not claimed for it.
#[derive(Clone, Debug)]
pub struct MHInstance {
    ctx: Arc<FieldCtx>,
    m: u32,
    k: u32,
    a_coeffs: Vec<Fe>,
    a: Fe,
    b: Fe,
    strict: bool,
    violations: Vec<Violation>,
    coeff_int_spec: Option<Vec<u32>>,
    km: Fe,
}

impl MHInstance {
    pub fn new(
        ctx: Arc<FieldCtx>,
        m: u32,
        k: u32,
        a_coeffs: Vec<Fe>,
        a: Fe,
        b: Fe,
        strict: bool,
    ) -> Result<Self> {
        let n = a_coeffs.len();
        if n == 0 || m == 0 || k == 0 {
            return Err(Error::Malformed(format!(
                "need n, m, k >= 1 (got n={n}, m={m}, k={k})"
            )));
        }
        let q = ctx.q();
        if let Some(bad) = a_coeffs.iter().chain([&a, &b]).find(|c| c.0 >= q) {
            return Err(Error::BadElement {
                code: bad.0 as u64,
                q: q as u64,
            });
        }

        let mk = m as u64 * k as u64;
        let mut violations = Vec::new();
        if n < 3 {
            violations.push(Violation::FewVariables { n });
        }
        if m < 2 {
            violations.push(Violation::SmallM { m });
        }
        if k < 2 {
            violations.push(Violation::SmallK { k });
        }
        for (index, c) in a_coeffs.iter().enumerate() {
            if c.is_zero() {
                violations.push(Violation::ZeroCoefficient { index });
            }
        }
        if a.is_zero() {
            violations.push(Violation::ZeroA);
        }
        if b.is_zero() {
            violations.push(Violation::ZeroB);
        }
        if mk % ctx.p() as u64 == 0 {
            violations.push(Violation::CharDividesMk { p: ctx.p(), mk });
        }
        if mk <= n as u64 {
            violations.push(Violation::DegreeNotAboveN { mk, n });
        }
        if strict && !violations.is_empty() {
            return Err(Error::Hypothesis(violations));
        }

        let p = ctx.p();
        let coeff_int_spec = a_coeffs
            .iter()
            .chain([&a, &b])
            .all(|c| c.0 < p)
            .then(|| a_coeffs.iter().chain([&a, &b]).map(|c| c.0).collect());
        let km = ctx.scalar(mk);

        Ok(Self {
            ctx,
            m,
            k,
            a_coeffs,
            a,
            b,
            strict,
            violations,
            coeff_int_spec,
            km,
        })
    }

    /// Strict instance with every coefficient equal to one.
    pub fn all_ones(ctx: Arc<FieldCtx>, n: usize, m: u32, k: u32) -> Result<Self> {
        Self::new(ctx, m, k, vec![Fe::ONE; n], Fe::ONE, Fe::ONE, true)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q() as u64
    }

    pub fn n(&self) -> usize {
        self.a_coeffs.len()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Total degree `mk`.
    pub fn mk(&self) -> u64 {
        self.m as u64 * self.k as u64
    }

    pub fn a_coeffs(&self) -> &[Fe] {
        &self.a_coeffs
    }

    pub fn a(&self) -> Fe {
        self.a
    }

    pub fn b(&self) -> Fe {
        self.b
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Integer codes of `a_1..a_n, a, b` when all lie in the prime subfield.
    pub fn coeff_int_spec(&self) -> Option<&[u32]> {
        self.coeff_int_spec.as_deref()
    }

    pub fn gcd_m_q1(&self) -> u64 {
        (self.m as u64).gcd(&(self.q() - 1))
    }

    pub fn flags(&self) -> HypothesisFlags {
        let has = |pred: fn(&Violation) -> bool| self.violations.iter().any(pred);
        HypothesisFlags {
            shape_ok: !has(|v| {
                matches!(
                    v,
                    Violation::FewVariables { .. } | Violation::SmallM { .. } | Violation::SmallK { .. }
                )
            }),
            coeffs_nonzero: !has(|v| {
                matches!(
                    v,
                    Violation::ZeroCoefficient { .. } | Violation::ZeroA | Violation::ZeroB
                )
            }),
            char_ok: !has(|v| matches!(v, Violation::CharDividesMk { .. })),
            degree_ok: !has(|v| matches!(v, Violation::DegreeNotAboveN { .. })),
            gcd_one: self.gcd_m_q1() == 1,
        }
    }

    pub fn record(&self) -> InstanceRecord {
        InstanceRecord {
            p: self.ctx.p() as u64,
            s: self.ctx.s(),
            n: self.n(),
            m: self.m,
            k: self.k,
            coeffs: self.a_coeffs.iter().map(|c| c.0).collect(),
            a: self.a.0,
            b: self.b.0,
        }
    }

    /// Same equation over another field of the same characteristic.
    /// Requires integer (prime subfield) coefficients.
    pub fn lift_to(&self, ext: Arc<FieldCtx>) -> Result<Self> {
        let spec = self
            .coeff_int_spec
            .as_ref()
            .ok_or(Error::MissingIntegerCoefficients)?;
        if ext.p() != self.ctx.p() {
            return Err(Error::Malformed(format!(
                "cannot lift from characteristic {} to {}",
                self.ctx.p(),
                ext.p()
            )));
        }
        let n = self.n();
        let coeffs = spec[..n].iter().map(|&c| Fe(c)).collect();
        Self::new(
            ext,
            self.m,
            self.k,
            coeffs,
            Fe(spec[n]),
            Fe(spec[n + 1]),
            self.strict,
        )
    }

    /// `g(x) = a_1 x_1^m + ... + a_n x_n^m + a`.
    #[inline]
    pub fn eval_g(&self, x: &[Fe]) -> Fe {
        debug_assert_eq!(x.len(), self.n());
        let ctx = &*self.ctx;
        self.a_coeffs
            .iter()
            .zip(x)
            .fold(self.a, |acc, (&ai, &xi)| {
                ctx.add(acc, ctx.mul(ai, ctx.pow(xi, self.m as u64)))
            })
    }

    /// `f(x) = g(x)^k - b x_1 ... x_n`.
    #[inline]
    pub fn eval_f(&self, x: &[Fe]) -> Fe {
        let ctx = &*self.ctx;
        let g = self.eval_g(x);
        let prod = x.iter().fold(self.b, |acc, &xi| ctx.mul(acc, xi));
        ctx.sub(ctx.pow(g, self.k as u64), prod)
    }

    /// Partial derivatives `k m a_j x_j^{m-1} g(x)^{k-1} - b prod_{i != j} x_i`.
    pub fn eval_gradient(&self, x: &[Fe]) -> Vec<Fe> {
        let ctx = &*self.ctx;
        let g_pow = ctx.pow(self.eval_g(x), self.k as u64 - 1);
        let common = ctx.mul(self.km, g_pow);
        (0..self.n())
            .map(|j| {
                let first = ctx.mul(
                    common,
                    ctx.mul(self.a_coeffs[j], ctx.pow(x[j], self.m as u64 - 1)),
                );
                let others = x
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .fold(self.b, |acc, (_, &xi)| ctx.mul(acc, xi));
                ctx.sub(first, others)
            })
            .collect()
    }

    /// Exponents `(e_g, e_prod)` of `X_0` on the two terms of the
    /// homogenization: `f^h = G^k X_0^{e_g} - b X_0^{e_prod} X_1...X_n`.
    fn homogenization_exponents(&self) -> (u64, u64) {
        let deg = self.mk().max(self.n() as u64);
        (deg - self.mk(), deg - self.n() as u64)
    }

    /// `G(x_0, x) = a_1 x_1^m + ... + a_n x_n^m + a x_0^m`.
    fn eval_big_g(&self, x0: Fe, x: &[Fe]) -> Fe {
        let ctx = &*self.ctx;
        let g_minus_a = ctx.sub(self.eval_g(x), self.a);
        ctx.add(g_minus_a, ctx.mul(self.a, ctx.pow(x0, self.m as u64)))
    }

    /// Homogenization `f^h(x_0, x)`; when `mk > n` this is
    /// `G^k - b x_0^{mk-n} x_1...x_n`.
    pub fn eval_fh(&self, x0: Fe, x: &[Fe]) -> Fe {
        let ctx = &*self.ctx;
        let (e_g, e_prod) = self.homogenization_exponents();
        let big_g = self.eval_big_g(x0, x);
        let lhs = ctx.mul(ctx.pow(big_g, self.k as u64), ctx.pow(x0, e_g));
        let prod = x
            .iter()
            .fold(ctx.mul(self.b, ctx.pow(x0, e_prod)), |acc, &xi| {
                ctx.mul(acc, xi)
            });
        ctx.sub(lhs, prod)
    }

    /// Gradient of `f^h` with respect to `(X_0, X_1, ..., X_n)`.
    pub fn eval_fh_gradient(&self, x0: Fe, x: &[Fe]) -> Vec<Fe> {
        let ctx = &*self.ctx;
        let (m, k) = (self.m as u64, self.k as u64);
        let (e_g, e_prod) = self.homogenization_exponents();
        let big_g = self.eval_big_g(x0, x);
        let g_k1 = ctx.pow(big_g, k - 1);
        let g_k = ctx.mul(g_k1, big_g);
        let x0_eg = ctx.pow(x0, e_g);
        let x0_ep = ctx.pow(x0, e_prod);
        // derivative of x0^e, zero when e = 0
        let d_pow = |e: u64| {
            if e == 0 {
                Fe::ZERO
            } else {
                ctx.mul(ctx.scalar(e), ctx.pow(x0, e - 1))
            }
        };
        let prod_all = x.iter().fold(Fe::ONE, |acc, &xi| ctx.mul(acc, xi));

        let mut grad = Vec::with_capacity(self.n() + 1);
        // d/dX_0
        let dg0 = ctx.mul(ctx.scalar(m), ctx.mul(self.a, ctx.pow(x0, m - 1)));
        let t1 = ctx.mul(ctx.mul(ctx.scalar(k), g_k1), ctx.mul(dg0, x0_eg));
        let t2 = ctx.mul(g_k, d_pow(e_g));
        let t3 = ctx.mul(self.b, ctx.mul(d_pow(e_prod), prod_all));
        grad.push(ctx.sub(ctx.add(t1, t2), t3));
        // d/dX_j
        let common = ctx.mul(ctx.mul(ctx.scalar(k), g_k1), x0_eg);
        for j in 0..self.n() {
            let dgj = ctx.mul(
                ctx.scalar(m),
                ctx.mul(self.a_coeffs[j], ctx.pow(x[j], m - 1)),
            );
            let others = x
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(ctx.mul(self.b, x0_ep), |acc, (_, &xi)| ctx.mul(acc, xi));
            grad.push(ctx.sub(ctx.mul(common, dgj), others));
        }
        grad
    }
}
