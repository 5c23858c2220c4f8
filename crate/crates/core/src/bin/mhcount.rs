use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use mhcount::bounds::BoundVerdict;
use mhcount::count::{count_all, Budgets};
use mhcount::geom;
use mhcount::harness::{emit_reports, process_instance, run_sweep, write_csv, SweepSpec};
use mhcount::{FieldCtx, InstanceRecord, Result};

#[derive(Parser)]
#[command(name = "mhcount", version, about = "Exact point counts and bound checks for (a_1 X_1^m + ... + a_n X_n^m + a)^k = b X_1...X_n over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Modulus, generator and group order of F_{p^s}.
    FieldInfo {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        /// Also print the exp/log tables.
        #[arg(long)]
        tables: bool,
    },
    /// Exact counts for one instance.
    Count(InstanceArgs),
    /// Counts plus every bound verdict for one instance.
    Verify(InstanceArgs),
    /// Singular points and checks at infinity over F_{q^r}.
    Probe {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Run a sweep and write CSV / JSON-lines reports.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    naive_evals: Option<u64>,
    #[arg(long)]
    fast_prefixes: Option<u64>,
    #[arg(long)]
    probe_points: Option<u64>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budgets> {
        let mut b = Budgets::from_env()?;
        if let Some(v) = self.naive_evals {
            b.naive_evals = v;
        }
        if let Some(v) = self.fast_prefixes {
            b.fast_prefixes = v;
        }
        if let Some(v) = self.probe_points {
            b.probe_points = v;
        }
        Ok(b)
    }
}

#[derive(Args)]
struct InstanceArgs {
    /// `p s n m k a1,...,an a b`, e.g. "5 1 3 3 2 1,1,1 1 1".
    instance: String,
    /// Reject instances that violate a hypothesis of the estimates.
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    budgets: BudgetArgs,
}

impl InstanceArgs {
    fn build(&self) -> Result<mhcount::MHInstance> {
        let rec: InstanceRecord = self.instance.parse()?;
        rec.build(self.strict)
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Plain-text `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    primes: Option<String>,
    #[arg(long)]
    extensions: Option<String>,
    #[arg(long)]
    n_range: Option<String>,
    #[arg(long)]
    m_range: Option<String>,
    #[arg(long)]
    k_range: Option<String>,
    /// all_ones, random or explicit.
    #[arg(long)]
    coeff_mode: Option<String>,
    #[arg(long)]
    count: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// `;`-separated lists `a1,...,an,a,b` for explicit mode.
    #[arg(long)]
    coeffs: Option<String>,
    #[arg(long)]
    strict: Option<String>,
    #[arg(long)]
    naive_evals: Option<String>,
    #[arg(long)]
    fast_prefixes: Option<String>,
    #[arg(long)]
    probe_points: Option<String>,
    #[arg(long)]
    max_points: Option<String>,
    #[arg(long)]
    probe_degrees: Option<String>,
    #[arg(long)]
    csv_path: Option<String>,
    #[arg(long)]
    jsonl_path: Option<String>,
    #[arg(long)]
    workers: Option<String>,
}

impl SweepArgs {
    fn spec(&self) -> Result<SweepSpec> {
        let mut spec = SweepSpec::default();
        if let Some(path) = &self.config {
            spec.apply_config(&std::fs::read_to_string(path)?)?;
        }
        spec.apply_env()?;
        let flags = [
            ("primes", &self.primes),
            ("extensions", &self.extensions),
            ("n_range", &self.n_range),
            ("m_range", &self.m_range),
            ("k_range", &self.k_range),
            ("coeff_mode", &self.coeff_mode),
            ("count", &self.count),
            ("seed", &self.seed),
            ("coeffs", &self.coeffs),
            ("strict", &self.strict),
            ("naive_evals", &self.naive_evals),
            ("fast_prefixes", &self.fast_prefixes),
            ("probe_points", &self.probe_points),
            ("max_points", &self.max_points),
            ("probe_degrees", &self.probe_degrees),
            ("csv_path", &self.csv_path),
            ("jsonl_path", &self.jsonl_path),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                spec.set(key, v)?;
            }
        }
        Ok(spec)
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn verdict_line(v: &BoundVerdict) -> String {
    let mut line = format!(
        "{:<20} {:<6} {} error={} tightness={}",
        v.kind.name(),
        v.subject,
        v.label(),
        v.error,
        v.tightness
    );
    if v.hypothesis_violation {
        line.push_str(" (hypotheses fail)");
    }
    if v.info_only {
        line.push_str(" (info)");
    }
    line
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::FieldInfo { p, s, tables } => {
            let ctx = FieldCtx::new(p, s)?;
            let mut info = json!({
                "p": ctx.p(),
                "s": ctx.s(),
                "q": ctx.q(),
                "modulus": ctx.modulus(),
                "generator": ctx.generator(),
                "order_factors": ctx.order_factors(),
            });
            if tables {
                let exp: Vec<u32> = (0..ctx.q() as u64 - 1).map(|e| ctx.exp(e).0).collect();
                let log: Vec<Option<u32>> = ctx.elements().map(|x| ctx.dlog(x)).collect();
                info["exp"] = json!(exp);
                info["log"] = json!(log);
            }
            print_json(&info)?;
            Ok(0)
        }
        Command::Count(args) => {
            let inst = args.build()?;
            let report = count_all(&inst, &args.budgets.resolve()?)?;
            print_json(&json!({ "instance": inst.record().to_string(), "counts": report }))?;
            Ok(if report.consistent() { 0 } else { 1 })
        }
        Command::Verify(args) => {
            let inst = args.build()?;
            let result = process_instance(&inst, &args.budgets.resolve()?, &[])?;
            let mut out = io::stdout().lock();
            writeln!(out, "instance {}", result.record)?;
            if let Some(c) = &result.counts {
                writeln!(
                    out,
                    "N = {}  N* = {}  |V_inf| = {}  |pcl| = {}",
                    c.n_total, c.n_star(), c.count_infinity, c.count_pcl
                )?;
            }
            for v in &result.verdicts {
                writeln!(out, "{}", verdict_line(v))?;
            }
            if let Some(e) = &result.existence {
                writeln!(
                    out,
                    "existence threshold {}: q above = {}, N* > 0 = {}",
                    e.threshold.threshold, e.q_exceeds, e.nstar_positive
                )?;
            }
            for note in &result.notes {
                writeln!(out, "note: {note}")?;
            }
            let failed = !result.failures().is_empty()
                || result.existence.as_ref().is_some_and(|e| !e.holds);
            Ok(u8::from(failed))
        }
        Command::Probe { inst, r } => {
            let budgets = inst.budgets.resolve()?;
            let built = inst.build()?;
            let summary = geom::probe(&built, r, budgets.probe_points)?;
            print_json(&summary)?;
            Ok(u8::from(!summary.affine_ok()))
        }
        Command::Sweep(args) => {
            let spec = args.spec()?;
            let outcome = run_sweep(&spec)?;
            if spec.csv_path.is_none() && spec.jsonl_path.is_none() {
                write_csv(&outcome.results, io::stdout().lock())?;
            } else {
                emit_reports(&outcome, &spec)?;
            }
            for s in &outcome.skipped {
                eprintln!("skipped {}: {}", s.record, s.reason);
            }
            eprintln!(
                "{} instances, {} skipped",
                outcome.results.len(),
                outcome.skipped.len()
            );
            Ok(outcome.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
