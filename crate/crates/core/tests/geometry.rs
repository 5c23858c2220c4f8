//! Singular-point probes and the checks at infinity.

use mhcount::geom::{
    check_infinity_nonsingular, check_pcl_no_singular_at_infinity, enumerate_singular_points,
    probe, Classification,
};
use mhcount::{Fe, InstanceRecord, MHInstance};

fn inst(spec: &str) -> MHInstance {
    spec.parse::<InstanceRecord>().unwrap().build(false).unwrap()
}

#[test]
fn canonical_singular_points_are_classified() {
    let i = inst("5 1 3 3 2 1,1,1 1 1");
    let points = enumerate_singular_points(&i, 1, 1 << 20).unwrap();
    for rec in &points {
        let x: Vec<Fe> = rec.point_codes.iter().map(|&c| Fe(c)).collect();
        assert!(i.eval_f(&x).is_zero());
        assert!(i.eval_gradient(&x).iter().all(|g| g.is_zero()));
        assert_ne!(rec.classification, Classification::Unclassified);
        assert_ne!(rec.zero_coords.len(), 1);
        assert!(rec.point_codes.iter().any(|&c| c != 0));
        match rec.classification {
            Classification::TwoZerosVj { j, l } => {
                assert!(j < l && x[j].is_zero() && x[l].is_zero());
                assert!(i.eval_g(&x).is_zero());
            }
            Classification::AllNonzeroW => assert!(rec.zero_coords.is_empty()),
            Classification::Unclassified => unreachable!(),
        }
    }
}

#[test]
fn classification_over_many_instances() {
    for spec in [
        "5 1 3 2 2 1,1,1 1 1",
        "7 1 3 2 2 1,2,3 1 2",
        "7 1 4 2 2 1,1,1,1 1 1",
        "11 1 3 3 2 1,2,4 3 5",
        "13 1 3 2 3 1,1,1 1 1",
        "2 2 3 3 2 1,2,3 1 1",
        "3 2 3 2 2 1,1,1 1 1",
    ] {
        let s = probe(&inst(spec), 1, 1 << 22).unwrap();
        assert!(s.affine_ok(), "{spec}: {s:?}");
    }
}

#[test]
fn extension_probe_contains_base_points() {
    let i = inst("5 1 3 3 2 1,1,1 1 1");
    let base = probe(&i, 1, 1 << 24).unwrap();
    let ext = probe(&i, 2, 1 << 24).unwrap();
    assert!(ext.affine_ok());
    for rec in &base.singular_points {
        assert!(ext.singular_points.iter().any(|e| e.point_codes == rec.point_codes));
    }
    assert!(ext.infinity.points >= base.infinity.points);
    assert_eq!(base.bezout_product, Some(6 * 125));
}

#[test]
fn infinity_is_nonsingular_when_p_does_not_divide_m() {
    let c = check_infinity_nonsingular(&inst("5 1 3 3 2 1,1,1 1 1"), 1, 1 << 20).unwrap();
    assert_eq!(c.points, 6);
    assert!(c.ok());
    let c = check_infinity_nonsingular(&inst("5 1 3 3 2 1,1,1 1 1"), 2, 1 << 20).unwrap();
    assert!(c.ok());
    let c = check_infinity_nonsingular(&inst("7 1 4 3 2 1,2,3,4 1 1"), 1, 1 << 20).unwrap();
    assert!(c.ok());
}

#[test]
fn closure_is_singular_at_infinity_for_k_at_least_two() {
    // f^h = (G + a X_0^m)^k - b X_0^{mk-n} X_1...X_n with G = sum a_i X_i^m.
    // On X_0 = G = 0 the first term vanishes to order k >= 2, and the second
    // to order mk - n >= 2 here, so the whole gradient is zero.
    for (spec, r) in [("5 1 3 3 2 1,1,1 1 1", 1), ("5 1 3 3 2 1,1,1 1 1", 2), ("7 1 3 2 3 1,2,3 1 1", 1)] {
        let c = check_pcl_no_singular_at_infinity(&inst(spec), r, 1 << 20).unwrap();
        assert!(c.points > 0);
        assert_eq!(c.violations.len() as u64, c.points, "{spec} r={r}");
    }
}

#[test]
fn closure_at_infinity_when_mk_is_n_plus_one() {
    // mk - n = 1: d/dX_0 of the second term is -b X_1...X_n, nonzero exactly
    // when no coordinate vanishes
    for spec in ["5 1 3 2 2 1,1,1 1 1", "7 1 3 2 2 1,2,3 1 1", "11 1 5 3 2 1,1,1,1,1 1 1"] {
        let i = inst(spec);
        let all = check_infinity_nonsingular(&i, 1, 1 << 22).unwrap();
        let c = check_pcl_no_singular_at_infinity(&i, 1, 1 << 22).unwrap();
        assert_eq!(c.points, all.points);
        for v in &c.violations {
            assert!(v.contains(&0), "{spec}: {v:?}");
        }
        let with_zero = count_with_zero(&i);
        assert_eq!(c.violations.len() as u64, with_zero, "{spec}");
    }
}

/// Projective points of `G = 0` over `F_q` having a zero coordinate.
fn count_with_zero(i: &MHInstance) -> u64 {
    let ctx = i.ctx();
    let q = ctx.q();
    let n = i.n();
    let mut total = 0;
    let mut x = vec![0u32; n];
    loop {
        // normalized: first nonzero coordinate is 1
        let lead = x.iter().position(|&c| c != 0);
        if lead.is_some_and(|l| x[l] == 1) && x.contains(&0) {
            let g = i.a_coeffs().iter().zip(&x).fold(Fe::ZERO, |acc, (&a, &c)| {
                ctx.add(acc, ctx.mul(a, ctx.pow(Fe(c), i.m() as u64)))
            });
            total += u64::from(g.is_zero());
        }
        let mut pos = 0;
        while pos < n {
            x[pos] += 1;
            if x[pos] < q {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
        if pos == n {
            return total;
        }
    }
}

/// The literal claim that the closure has no singular points at infinity.
/// It fails for every `k >= 2` (see the test above), so it stays ignored.
#[test]
#[ignore = "the closure is singular at infinity whenever k >= 2"]
fn closure_has_no_singular_points_at_infinity() {
    let i = inst("5 1 3 3 2 1,1,1 1 1");
    assert!(check_pcl_no_singular_at_infinity(&i, 1, 1 << 20).unwrap().ok());
    assert!(check_pcl_no_singular_at_infinity(&i, 2, 1 << 20).unwrap().ok());
}

/// Pointwise: a nonsingular point of `V_f^inf` is nonsingular on the closure.
/// False for `k >= 2` for the same reason.
#[test]
#[ignore = "the closure is singular at infinity whenever k >= 2"]
fn nonsingular_at_infinity_implies_nonsingular_on_closure() {
    let i = inst("7 1 3 3 2 1,2,3 1 1");
    let inf = check_infinity_nonsingular(&i, 1, 1 << 20).unwrap();
    let pcl = check_pcl_no_singular_at_infinity(&i, 1, 1 << 20).unwrap();
    assert!(inf.ok());
    assert!(pcl.ok());
}

#[test]
fn probe_budget_and_lift_errors() {
    let i = inst("5 1 3 3 2 1,1,1 1 1");
    assert!(probe(&i, 2, 1000).is_err());
    assert!(check_infinity_nonsingular(&i, 3, 10).is_err());
}
