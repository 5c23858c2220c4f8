//! A small seeded sweep written as CSV to stdout, then parsed back.

use mhcount::harness::{csv_string, parse_csv, run_sweep, SweepSpec};

fn main() -> mhcount::Result<()> {
    let spec = SweepSpec::from_config(
        "primes = 5, 7\n\
         n_range = 3..4\n\
         m_range = 2..3\n\
         k_range = 2\n\
         coeff_mode = random\n\
         count = 2\n\
         seed = 2024\n\
         probe_degrees = 1\n",
    )?;
    let out = run_sweep(&spec)?;
    let text = csv_string(&out.results)?;
    print!("{text}");
    let rows = parse_csv(text.as_bytes())?;
    eprintln!(
        "{} rows, {} skipped, exit code {}",
        rows.len(),
        out.skipped.len(),
        out.exit_code()
    );
    Ok(())
}
