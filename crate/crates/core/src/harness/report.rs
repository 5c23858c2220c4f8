//! CSV and JSON-lines reports.
//!
//! The CSV has one row per instance under the fixed [`CSV_HEADER`]. Integers
//! are decimal, `coeffs` joins the codes of `a_1..a_n` with `;`, and verdict
//! columns hold `PASS`, `FAIL` or `NA` (the estimate's hypotheses fail).
//! Cells are empty when the value was not computed, e.g. over budget.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{existence_threshold, BoundKind};
use crate::error::{Error, Result};
use crate::harness::spec::SweepSpec;
use crate::harness::sweep::{main_terms, InstanceResult, SweepOutcome};

pub const CSV_HEADER: &str = "p,s,q,n,m,k,coeffs,a,b,gcd_m_q1,N,Nstar,main_N,main_Nstar,err_N,err_Nstar,verdict_main,verdict_nstar,verdict_pcl,verdict_inf,tightness_main,tightness_nstar,existence_threshold,nstar_positive";

/// A big integer stored as its decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Big(pub BigInt);

impl Serialize for Big {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(s.trim())
            .map(Big)
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Big {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    pub n: usize,
    pub m: u32,
    pub k: u32,
    pub coeffs: String,
    pub a: u32,
    pub b: u32,
    pub gcd_m_q1: u64,
    #[serde(rename = "N")]
    pub n_total: Option<u64>,
    #[serde(rename = "Nstar")]
    pub n_star: Option<u64>,
    #[serde(rename = "main_N")]
    pub main_n: Big,
    #[serde(rename = "main_Nstar")]
    pub main_nstar: Big,
    #[serde(rename = "err_N")]
    pub err_n: Option<Big>,
    #[serde(rename = "err_Nstar")]
    pub err_nstar: Option<Big>,
    pub verdict_main: String,
    pub verdict_nstar: String,
    pub verdict_pcl: String,
    pub verdict_inf: String,
    pub tightness_main: String,
    pub tightness_nstar: String,
    pub existence_threshold: Big,
    pub nstar_positive: Option<bool>,
}

impl CsvRow {
    /// The `a_i` codes from the `coeffs` cell.
    pub fn coeff_codes(&self) -> Result<Vec<u32>> {
        self.coeffs
            .split(';')
            .map(|c| {
                c.parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient code {c:?}")))
            })
            .collect()
    }
}

fn verdict_cell(r: &InstanceResult, kind: BoundKind, hypothesis: bool) -> (String, String) {
    if !hypothesis {
        return ("NA".into(), String::new());
    }
    match r.verdict(kind) {
        Some(v) => (v.label().into(), v.tightness.clone()),
        None => (String::new(), String::new()),
    }
}

pub fn csv_row(r: &InstanceResult) -> Result<CsvRow> {
    let (main_n, main_nstar) = main_terms(r)?;
    let rec = &r.record;
    let counts = r.counts.as_ref();
    let n_total = counts.map(|c| c.n_total);
    let n_star = counts.map(|c| c.n_star());
    let (verdict_main, tightness_main) = verdict_cell(r, BoundKind::MainEstimate, r.flags.main());
    let (verdict_nstar, tightness_nstar) =
        verdict_cell(r, BoundKind::NonzeroEstimate, r.flags.nonzero());
    let (verdict_pcl, _) = verdict_cell(r, BoundKind::Pcl, r.flags.main());
    let (verdict_inf, _) = verdict_cell(r, BoundKind::Infinity, r.flags.main());
    Ok(CsvRow {
        p: rec.p,
        s: rec.s,
        q: r.q,
        n: rec.n,
        m: rec.m,
        k: rec.k,
        coeffs: rec
            .coeffs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(";"),
        a: rec.a,
        b: rec.b,
        gcd_m_q1: r.gcd_m_q1,
        n_total,
        n_star,
        err_n: n_total.map(|v| Big(BigInt::from(v) - &main_n)),
        err_nstar: n_star.map(|v| Big(BigInt::from(v) - &main_nstar)),
        main_n: Big(main_n),
        main_nstar: Big(main_nstar),
        verdict_main,
        verdict_nstar,
        verdict_pcl,
        verdict_inf,
        tightness_main,
        tightness_nstar,
        existence_threshold: Big(existence_threshold(rec.n, rec.m, rec.k).threshold.into()),
        nstar_positive: n_star.map(|v| v > 0),
    })
}

/// Writes the CSV report to any writer.
pub fn write_csv<W: Write>(results: &[InstanceResult], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in results {
        w.serialize(csv_row(r)?)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(results: &[InstanceResult]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(results, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
}

/// Parses a CSV report, checking the header.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<CsvRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    rdr.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

/// One JSON object per result.
pub fn write_jsonl<W: Write>(results: &[InstanceResult], mut out: W) -> Result<()> {
    for r in results {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the files named in the spec. Requires at least one result.
pub fn emit_reports(outcome: &SweepOutcome, spec: &SweepSpec) -> Result<()> {
    if outcome.results.is_empty() {
        return Err(Error::Spec("the sweep produced no instances to report".into()));
    }
    let create = |p: &Path| File::create(p).map(BufWriter::new);
    if let Some(path) = &spec.csv_path {
        write_csv(&outcome.results, create(path)?)?;
    }
    if let Some(path) = &spec.jsonl_path {
        write_jsonl(&outcome.results, create(path)?)?;
    }
    Ok(())
}
