//! Counts solutions of one equation with every counter and compares them.
//!
//! cargo run --release --example count_solutions -- "7 1 3 2 2 1,2,3 1 1"

use mhcount::count::{count_all, Budgets};
use mhcount::InstanceRecord;

fn main() -> mhcount::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5 1 3 3 2 1,1,1 1 1".to_string());
    let rec: InstanceRecord = text.parse()?;
    let inst = rec.build(false)?;
    for v in inst.violations() {
        println!("hypothesis fails: {v:?}");
    }
    let r = count_all(&inst, &Budgets::from_env()?)?;
    println!("instance          {rec}");
    println!("N (fast)          {}", r.n_total);
    match r.n_naive {
        Some(n) => println!("N (naive)         {n}"),
        None => println!("N (naive)         over budget"),
    }
    println!("N* direct / i-e   {} / {}", r.n_star_direct, r.n_star_ie);
    println!("N_i (tail)        {:?}", r.n_i);
    println!("N^=               {}", r.n_eq);
    println!("|V_inf|, |pcl|    {}, {}", r.count_infinity, r.count_pcl);
    println!("consistent        {}", r.consistent());
    println!(
        "seconds           fast {:.4}, naive {}",
        r.timing.fast,
        r.timing.naive.map_or("-".into(), |t| format!("{t:.4}"))
    );
    Ok(())
}
