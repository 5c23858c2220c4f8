//! Every estimate for one instance, decided in exact integers.

use std::sync::Arc;

use mhcount::bounds::{betti_upper, existence_threshold, identity_p1};
use mhcount::count::Budgets;
use mhcount::harness::process_instance;
use mhcount::{FieldCtx, MHInstance};

fn main() -> mhcount::Result<()> {
    let ctx = Arc::new(FieldCtx::new(11, 1)?);
    let inst = MHInstance::all_ones(ctx, 4, 3, 2)?;
    let r = process_instance(&inst, &Budgets::default(), &[])?;
    println!("{}", r.record);
    for v in &r.verdicts {
        println!(
            "{:<20} {:<4} {} lhs_sq={} rhs_sq={} ratio={}",
            v.kind.name(),
            v.subject,
            v.label(),
            v.lhs_sq,
            v.rhs_sq,
            v.tightness
        );
    }

    println!("identity holds for q=11, n=1..8: {}", (1..=8).all(|n| identity_p1(11, n)));
    let b = betti_upper(3, 6);
    println!("Betti bounds n=3 d=6: {} <= {}", b.intermediate, b.coarse);
    println!("existence threshold n=5 m=2 k=3: {}", existence_threshold(5, 2, 3).threshold);
    Ok(())
}
