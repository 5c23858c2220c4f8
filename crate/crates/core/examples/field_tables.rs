//! Builds a few small fields and prints their modulus, generator and
//! exp/log tables.
//!
//! cargo run --example field_tables -- 3 2

use mhcount::{Fe, FieldCtx};

fn main() -> mhcount::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, s) = match args.as_slice() {
        [p, s, ..] => (*p, *s as u32),
        [p] => (*p, 1),
        [] => (3, 2),
    };
    let ctx = FieldCtx::new(p, s)?;
    println!("F_{} = F_{p}[X] / ({:?}), coefficients low degree first", ctx.q(), ctx.modulus());
    println!("generator {} of order {}", ctx.generator().code(), ctx.q() - 1);
    println!("{:>6} {:>6} {:>12}", "e", "g^e", "coeffs");
    for e in 0..ctx.q() as u64 - 1 {
        let x = ctx.exp(e);
        println!("{e:>6} {:>6} {:>12}", x.code(), format!("{:?}", ctx.coeffs(x)));
    }
    let x = ctx.exp(1);
    let y = ctx.add(x, Fe::ONE);
    println!(
        "g + 1 = {}, (g + 1)^-1 = {}, (g + 1)^q = {}",
        y.code(),
        ctx.inv(y)?.code(),
        ctx.pow(y, ctx.q() as u64).code()
    );
    Ok(())
}
