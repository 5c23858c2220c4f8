//! Batch experiments: seeded instance streams, sweeps and reports.

pub mod lcg;
pub mod report;
pub mod spec;
pub mod sweep;

pub use lcg::Lcg;
pub use report::{csv_string, emit_reports, parse_csv, write_csv, write_jsonl, CsvRow, CSV_HEADER};
pub use spec::{CoeffMode, Range, SweepSpec};
pub use sweep::{generate_instances, process_instance, run_sweep, InstanceResult, SweepOutcome};
