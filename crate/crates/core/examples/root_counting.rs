//! Distinct roots in F_q via gcd(f, X^q - X).

use mhcount::poly::{distinct_root_count, frobenius_power};
use mhcount::{FieldCtx, UniPoly};

fn main() -> mhcount::Result<()> {
    let f7 = FieldCtx::new(7, 1)?;
    for codes in [&[6u32, 0, 1][..], &[1, 0, 1], &[0, 6, 0, 1], &[1, 1, 1, 1, 1, 1, 1]] {
        let f = UniPoly::from_codes(codes);
        let xq = frobenius_power(&f, &f7)?;
        println!(
            "f = {:?}: X^7 mod f = {:?}, distinct roots = {}",
            codes,
            xq.coeffs().iter().map(|c| c.code()).collect::<Vec<_>>(),
            distinct_root_count(&f, &f7)?
        );
    }

    // X^4 + X + 1 is irreducible over F_2; its roots generate F_16, so none lie in F_4
    let f4 = FieldCtx::new(2, 2)?;
    let f = UniPoly::from_codes(&[1, 1, 0, 0, 1]);
    println!("X^4 + X + 1 over F_4: {} roots", distinct_root_count(&f, &f4)?);
    Ok(())
}
