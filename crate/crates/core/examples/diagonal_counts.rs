//! Solution counts of diagonal equations a_1 x_1^m + ... + a_t x_t^m = c
//! from value distributions, against the closed form when x -> x^m is a
//! bijection.

use mhcount::count::{count_diagonal, diagonal_distribution};
use mhcount::{Fe, FieldCtx};

fn main() -> mhcount::Result<()> {
    let ctx = FieldCtx::new(7, 1)?;
    let d = diagonal_distribution(&ctx, Fe(1), 2);
    println!("values of x^2 over F_7: {:?}", d.table);

    for m in [2u64, 3, 5] {
        for t in 1..=4usize {
            let coeffs = vec![Fe(1); t];
            let counts: Vec<u64> = ctx
                .elements()
                .map(|c| count_diagonal(&ctx, &coeffs, m, c))
                .collect();
            println!("m={m} t={t}: counts by right side {counts:?}");
        }
    }
    // gcd(5, 6) = 1, so x -> x^5 is a bijection and every count is 7^{t-1}
    assert!(ctx
        .elements()
        .all(|c| count_diagonal(&ctx, &[Fe(1), Fe(2), Fe(3)], 5, c) == 49));
    Ok(())
}
