//! Table-driven field arithmetic against schoolbook polynomial arithmetic
//! modulo the chosen modulus, exhaustively for every q <= 64.

use mhcount::{Fe, FieldCtx};

const FIELDS: &[(u64, u32)] = &[
    (2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1),
    (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5),
    (37, 1), (41, 1), (43, 1), (47, 1), (7, 2), (53, 1), (59, 1), (61, 1), (2, 6),
];

fn digits(code: u32, p: u32, s: u32) -> Vec<u32> {
    let mut c = code;
    (0..s)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two residues modulo the monic `modulus` (length s + 1).
fn slow_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * s];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (s..2 * s).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (k, &mk) in modulus[..s].iter().enumerate() {
            let idx = top - s + k;
            prod[idx] = (prod[idx] + (p - c) * mk % p) % p;
        }
    }
    prod.truncate(s);
    prod
}

/// Whether the monic polynomial has a nontrivial monic factor, by trial
/// multiplication of all pairs of lower-degree monic polynomials.
fn reducible(poly: &[u32], p: u32) -> bool {
    let s = poly.len() - 1;
    for d in 1..=s / 2 {
        let count = (p as usize).pow(d as u32);
        for a in 0..count {
            let mut fa: Vec<u32> = digits(a as u32, p, d as u32);
            fa.push(1);
            let e = s - d;
            for b in 0..(p as usize).pow(e as u32) {
                let mut fb: Vec<u32> = digits(b as u32, p, e as u32);
                fb.push(1);
                let mut prod = vec![0u32; s + 1];
                for (i, &x) in fa.iter().enumerate() {
                    for (j, &y) in fb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if prod == poly {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn arithmetic_matches_polynomial_model() {
    for &(p, s) in FIELDS {
        let ctx = FieldCtx::new(p, s).unwrap();
        let (p32, q) = (p as u32, ctx.q());
        let modulus = ctx.modulus().to_vec();
        assert_eq!(modulus.len(), s as usize + 1);
        for a in 0..q {
            let da = digits(a, p32, s);
            for b in 0..q {
                let db = digits(b, p32, s);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p32).collect();
                assert_eq!(ctx.add(Fe(a), Fe(b)).0, undigits(&sum, p32), "F_{q}: {a}+{b}");
                let prod = slow_mul(&da, &db, &modulus, p32);
                assert_eq!(ctx.mul(Fe(a), Fe(b)).0, undigits(&prod, p32), "F_{q}: {a}*{b}");
            }
            if a != 0 {
                let inv = ctx.inv(Fe(a)).unwrap();
                assert_eq!(ctx.mul(Fe(a), inv), Fe::ONE);
            }
            assert_eq!(ctx.add(Fe(a), ctx.neg(Fe(a))), Fe::ZERO);
        }
        assert!(ctx.inv(Fe::ZERO).is_err());
    }
}

#[test]
fn modulus_is_smallest_irreducible() {
    for &(p, s) in FIELDS {
        let ctx = FieldCtx::new(p, s).unwrap();
        let p32 = p as u32;
        let modulus = ctx.modulus().to_vec();
        if s == 1 {
            assert_eq!(modulus, vec![0, 1]);
            continue;
        }
        assert!(!reducible(&modulus, p32), "F_{}: modulus {modulus:?}", ctx.q());
        // every monic polynomial earlier in low-degree-first order is reducible
        for c in 0..ctx.q() {
            let mut f = digits(c, p32, s);
            f.push(1);
            if f < modulus {
                assert!(reducible(&f, p32), "F_{}: {f:?} is irreducible and smaller", ctx.q());
            }
        }
    }
}

#[test]
fn generator_is_smallest_primitive_element() {
    for &(p, s) in FIELDS {
        let ctx = FieldCtx::new(p, s).unwrap();
        let q = ctx.q();
        let order = |x: u32| {
            let mut acc = Fe(x);
            let mut k = 1;
            while acc != Fe::ONE {
                acc = ctx.mul(acc, Fe(x));
                k += 1;
            }
            k
        };
        let g = ctx.generator().0;
        assert_eq!(order(g), q - 1);
        for x in 1..g {
            assert!(order(x) < q - 1);
        }
        for e in 0..q as u64 - 1 {
            assert_eq!(ctx.dlog(ctx.exp(e)), Some(e as u32));
        }
    }
}
