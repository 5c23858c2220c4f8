//! Singular points of V_f over F_q and F_{q^2}, and the checks at infinity.

use std::sync::Arc;

use mhcount::geom::probe;
use mhcount::{Fe, FieldCtx, MHInstance};

fn main() -> mhcount::Result<()> {
    let ctx = Arc::new(FieldCtx::new(7, 1)?);
    let inst = MHInstance::new(ctx, 2, 2, vec![Fe(1), Fe(2), Fe(3)], Fe(1), Fe(2), false)?;
    for r in [1, 2] {
        let s = probe(&inst, r, 10_000_000)?;
        println!("r = {r}: {} singular points", s.singular_points.len());
        for rec in s.singular_points.iter().take(8) {
            println!("  {:?} zeros {:?} {:?}", rec.point_codes, rec.zero_coords, rec.classification);
        }
        println!(
            "  V_inf: {} points, {} singular; closure singular at {} of them",
            s.infinity.points,
            s.infinity.violations.len(),
            s.pcl_at_infinity.violations.len()
        );
    }
    Ok(())
}
