//! Finite fields `F_{p^s}` at desk scale.
//!
//! Elements are stored as their integer code: the coefficient vector
//! `(c_0, ..., c_{s-1})` of the residue polynomial read as a base-`p`
//! number, `code = c_0 + c_1 p + ... + c_{s-1} p^{s-1}`. Codes below `p`
//! are exactly the prime subfield, so an integer constant has the same code
//! in every extension of the same characteristic.
//!
//! Multiplication, inversion and powering go through discrete-log tables
//! built eagerly at construction. Addition in proper extensions uses Zech
//! logarithms, so every field operation is O(1).

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its canonical integer code.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field of order `q = p^s`.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus, ascending degree, length `s + 1`.
    modulus: Vec<u32>,
    generator: Fe,
    /// `exp[e] = generator^e`, stored twice over so sums of two logs index directly.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`, only for `s > 1`.
    zech: Vec<u32>,
    neg_one_log: u32,
    order_factors: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("s", &self.s)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl FieldCtx {
    /// Builds `F_{p^s}` with the default order budget.
    pub fn new(p: u64, s: u32) -> Result<Self> {
        Self::with_max_order(p, s, DEFAULT_MAX_ORDER)
    }

    /// Builds `F_{p^s}`, refusing orders above `max_order`.
    ///
    /// The modulus is the lexicographically smallest monic irreducible of
    /// degree `s` (coefficients compared from the constant term up); for
    /// `s = 1` it is `X`. The generator is the smallest code of order `q - 1`.
    pub fn with_max_order(p: u64, s: u32, max_order: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let too_large = Error::OrderTooLarge {
            p,
            s,
            max: max_order,
        };
        let q = p.checked_pow(s).ok_or(too_large)?;
        if q > max_order || q > u32::MAX as u64 / 2 {
            return Err(Error::OrderTooLarge {
                p,
                s,
                max: max_order,
            });
        }
        let (p32, q32) = (p as u32, q as u32);

        let modulus = if s == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p32, s as usize)
                .ok_or_else(|| Error::Internal(format!("no irreducible of degree {s} over F_{p}")))?
        };

        let slow = SlowField {
            p: p32,
            s: s as usize,
            modulus: &modulus,
        };
        let order_factors = prime_factors(q - 1);
        let group_order = q - 1;
        let generator = (1..q32)
            .find(|&c| {
                order_factors
                    .iter()
                    .all(|&l| slow.pow(c, group_order / l) != 1)
            })
            .ok_or_else(|| Error::Internal("no multiplicative generator found".into()))?;

        let n = (q32 - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![NO_LOG; q32 as usize];
        let mut cur = 1u32;
        for e in 0..n {
            if log[cur as usize] != NO_LOG {
                return Err(Error::Internal(format!(
                    "generator {generator} has order {e} < {n}"
                )));
            }
            exp[e] = cur;
            exp[e + n] = cur;
            log[cur as usize] = e as u32;
            cur = slow.mul(cur, generator);
        }
        if cur != 1 {
            return Err(Error::Internal("generator power cycle did not close".into()));
        }

        let zech = if s > 1 {
            (0..n)
                .map(|d| {
                    let sum = slow.add(exp[d], 1);
                    if sum == 0 {
                        NO_LOG
                    } else {
                        log[sum as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };

        let neg_one_log = if p == 2 { 0 } else { (n / 2) as u32 };

        Ok(Self {
            p: p32,
            s,
            q: q32,
            modulus,
            generator: Fe(generator),
            exp,
            log,
            zech,
            neg_one_log,
            order_factors,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn s(&self) -> u32 {
        self.s
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, ascending degree.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// Distinct prime factors of `q - 1`, ascending.
    pub fn order_factors(&self) -> &[u64] {
        &self.order_factors
    }

    /// All `q` elements in ascending code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    /// Nonzero elements in ascending code order.
    pub fn units(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    pub fn element(&self, code: u64) -> Result<Fe> {
        if code < self.q as u64 {
            Ok(Fe(code as u32))
        } else {
            Err(Error::BadElement {
                code,
                q: self.q as u64,
            })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, value: i64) -> Fe {
        Fe(value.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficients of the residue polynomial, ascending degree, length `s`.
    pub fn coeffs(&self, x: Fe) -> Vec<u32> {
        let mut c = x.0;
        (0..self.s)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.s as usize {
            return Err(Error::Malformed(format!(
                "{} coefficients for an extension of degree {}",
                coeffs.len(),
                self.s
            )));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::BadElement {
                    code: c as u64,
                    q: self.p as u64,
                });
            }
            code = code * self.p as u64 + c as u64;
        }
        Ok(Fe(code as u32))
    }

    /// Discrete log to the base of [`generator`](Self::generator), `None` for zero.
    #[inline]
    pub fn dlog(&self, x: Fe) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// `generator^e`.
    #[inline]
    pub fn exp(&self, e: u64) -> Fe {
        Fe(self.exp[(e % (self.q as u64 - 1)) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.s == 1 {
            let sum = a.0 + b.0;
            return Fe(if sum >= self.p { sum - self.p } else { sum });
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.q - 1;
        let i = self.log[a.0 as usize];
        let j = self.log[b.0 as usize];
        let d = if j >= i { j - i } else { j + n - i };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Fe::ZERO
        } else {
            Fe(self.exp[(i + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.is_zero() {
            return a;
        }
        if self.s == 1 {
            return Fe(self.p - a.0);
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.neg_one_log) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        if self.s == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Fe(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.is_zero() {
            return Fe::ZERO;
        }
        let n = self.q as u64 - 1;
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (e % n)) % n) as usize])
    }

    /// `a^e` for an arbitrary-precision exponent, by square-and-multiply.
    pub fn pow_big(&self, a: Fe, e: &BigUint) -> Fe {
        let mut acc = Fe::ONE;
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// Image of the integer `n` (e.g. a degree or a multiplicity) in the field.
    pub fn scalar(&self, n: u64) -> Fe {
        Fe((n % self.p as u64) as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Result<u64> {
        let l = self.dlog(a).ok_or(Error::ZeroInverse)? as u64;
        let n = self.q as u64 - 1;
        Ok(n / l.gcd(&n))
    }

    /// `#{x in F_q : x^m = v}`.
    pub fn mth_power_root_count(&self, m: u64, v: Fe) -> u64 {
        if m == 0 {
            return if v == Fe::ONE { self.q as u64 } else { 0 };
        }
        match self.dlog(v) {
            None => 1,
            Some(l) => {
                let d = m.gcd(&(self.q as u64 - 1));
                if l as u64 % d == 0 {
                    d
                } else {
                    0
                }
            }
        }
    }
}

/// Schoolbook arithmetic on coefficient vectors, used only while the
/// tables are being built.
struct SlowField<'a> {
    p: u32,
    s: usize,
    modulus: &'a [u32],
}

impl SlowField<'_> {
    fn digits(&self, code: u32) -> Vec<u64> {
        let mut c = code;
        (0..self.s)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d as u64
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.p as u64 + d) as u32
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let sum: Vec<u64> = self
            .digits(a)
            .iter()
            .zip(self.digits(b))
            .map(|(x, y)| (x + y) % p)
            .collect();
        self.encode(&sum)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.s - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for deg in (self.s..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mi) in self.modulus[..self.s].iter().enumerate() {
                let idx = deg - self.s + i;
                prod[idx] = (prod[idx] + (p - c) * mi as u64) % p;
            }
        }
        self.encode(&prod[..self.s])
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `f` modulo a monic `g` over `Z_p`, ascending coefficients.
fn rem_monic_zp(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let dg = g.len() - 1;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    while r.len() > dg {
        let lead = r.pop().unwrap_or(0);
        if lead != 0 {
            let base = r.len() - dg;
            for (i, &gi) in g[..dg].iter().enumerate() {
                r[base + i] = (r[base + i] + (p64 - lead) * gi as u64) % p64;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most `deg / 2`.
fn is_irreducible_zp(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if rem_monic_zp(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `s`, comparing
/// the constant term first.
fn smallest_irreducible(p: u32, s: usize) -> Option<Vec<u32>> {
    let count = (p as u64).checked_pow(s as u32)?;
    (0..count).find_map(|idx| {
        // The constant term is the most significant digit of `idx`.
        let mut f = vec![0u32; s + 1];
        let mut t = idx;
        for i in (0..s).rev() {
            f[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        f[s] = 1;
        (f[0] != 0 && is_irreducible_zp(&f, p)).then_some(f)
    })
}
