//! Sweep specifications and the `key = value` config format.
//!
//! ```text
//! # comments start with '#'
//! primes = 5,7
//! extensions = 1
//! n_range = 3..4
//! m_range = 2..3
//! k_range = 2..3
//! coeff_mode = random
//! count = 3
//! seed = 42
//! ```
//!
//! Ranges are inclusive. Every key is also accepted as a command-line flag
//! of the same name; later settings override earlier ones.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::count::Budgets;
use crate::error::{Error, Result};

/// Inclusive integer range `lo..hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: u64,
    pub hi: u64,
}

impl Range {
    pub fn new(lo: u64, hi: u64) -> Self {
        Self { lo, hi }
    }

    pub fn single(v: u64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl FromStr for Range {
    type Err = Error;

    /// Accepts `lo..hi`, `lo..=hi` or a single value.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad range bound {t:?} in {s:?}")))
        };
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Self::new(parse(lo)?, parse(hi.trim_start_matches('='))?)),
            None => Ok(Self::single(parse(s)?)),
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffModeKind {
    #[default]
    AllOnes,
    Random,
    Explicit,
}

impl FromStr for CoeffModeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all_ones" | "all-ones" | "ones" => Ok(Self::AllOnes),
            "random" => Ok(Self::Random),
            "explicit" => Ok(Self::Explicit),
            other => Err(Error::Parse(format!(
                "coeff_mode must be all_ones, random or explicit, not {other:?}"
            ))),
        }
    }
}

/// How coefficients `(a_1, ..., a_n, a, b)` are chosen for each shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum CoeffMode {
    AllOnes,
    /// `count` draws per shape from the generator seeded with `seed`.
    Random { count: usize, seed: u64 },
    /// Lists of codes `a_1, ..., a_n, a, b`; each is used for the shapes
    /// whose `n` matches its length.
    Explicit(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub primes: Vec<u64>,
    pub extensions: Vec<u32>,
    pub n_range: Range,
    pub m_range: Range,
    pub k_range: Range,
    pub coeff_mode: CoeffModeKind,
    pub count: usize,
    pub seed: Option<u64>,
    pub coeffs: Vec<Vec<u32>>,
    /// Skip instances that violate a hypothesis instead of flagging them.
    pub strict: bool,
    pub budgets: Budgets,
    /// Shapes with `q^n` above this are skipped.
    pub max_points: Option<u64>,
    /// Extension degrees for the geometry probes; empty disables them.
    pub probe_degrees: Vec<u32>,
    pub csv_path: Option<PathBuf>,
    pub jsonl_path: Option<PathBuf>,
    /// Instances processed concurrently; 0 means one per core.
    pub workers: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            primes: vec![5],
            extensions: vec![1],
            n_range: Range::single(3),
            m_range: Range::single(3),
            k_range: Range::single(2),
            coeff_mode: CoeffModeKind::AllOnes,
            count: 1,
            seed: None,
            coeffs: Vec::new(),
            strict: true,
            budgets: Budgets::default(),
            max_points: None,
            probe_degrees: vec![1],
            csv_path: None,
            jsonl_path: None,
            workers: 0,
        }
    }
}

/// Keys understood by [`SweepSpec::set`].
pub const KEYS: &[&str] = &[
    "primes",
    "extensions",
    "n_range",
    "m_range",
    "k_range",
    "coeff_mode",
    "count",
    "seed",
    "coeffs",
    "strict",
    "naive_evals",
    "fast_prefixes",
    "probe_points",
    "max_points",
    "probe_degrees",
    "csv_path",
    "jsonl_path",
    "workers",
];

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: {v:?} is not a valid number")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_num(key, t))
        .collect()
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        _ => Err(Error::Parse(format!("{key}: {v:?} is not a boolean"))),
    }
}

fn optional_path(v: &str) -> Option<PathBuf> {
    let v = v.trim();
    (!v.is_empty()).then(|| PathBuf::from(v))
}

impl SweepSpec {
    /// Sets one key from its text form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "primes" => self.primes = parse_list(key, value)?,
            "extensions" => self.extensions = parse_list(key, value)?,
            "n_range" => self.n_range = value.parse()?,
            "m_range" => self.m_range = value.parse()?,
            "k_range" => self.k_range = value.parse()?,
            "coeff_mode" => self.coeff_mode = value.parse()?,
            "count" => self.count = parse_num(key, value)?,
            "seed" => self.seed = Some(parse_num(key, value)?),
            "coeffs" => {
                self.coeffs = value
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_list(key, t))
                    .collect::<Result<_>>()?
            }
            "strict" => self.strict = parse_bool(key, value)?,
            "naive_evals" => self.budgets.naive_evals = parse_num(key, value)?,
            "fast_prefixes" => self.budgets.fast_prefixes = parse_num(key, value)?,
            "probe_points" => self.budgets.probe_points = parse_num(key, value)?,
            "max_points" => self.max_points = Some(parse_num(key, value)?),
            "probe_degrees" => self.probe_degrees = parse_list(key, value)?,
            "csv_path" => self.csv_path = optional_path(value),
            "jsonl_path" => self.jsonl_path = optional_path(value),
            "workers" => self.workers = parse_num(key, value)?,
            other => {
                return Err(Error::Parse(format!(
                    "unknown key {other:?}; expected one of {}",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies every `key = value` line of a config text.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value, got {line:?}", no + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_config(text: &str) -> Result<Self> {
        let mut spec = Self::default();
        spec.apply_config(text)?;
        Ok(spec)
    }

    /// Overrides budgets from `MHCOUNT_BUDGET_*` variables.
    pub fn apply_env(&mut self) -> Result<()> {
        use crate::count::{ENV_FAST_PREFIXES, ENV_NAIVE_EVALS, ENV_PROBE_POINTS};
        for (var, key) in [
            (ENV_NAIVE_EVALS, "naive_evals"),
            (ENV_FAST_PREFIXES, "fast_prefixes"),
            (ENV_PROBE_POINTS, "probe_points"),
        ] {
            if let Ok(v) = std::env::var(var) {
                self.set(key, &v)?;
            }
        }
        Ok(())
    }

    /// Checks the spec and resolves the coefficient mode.
    pub fn validate(&self) -> Result<CoeffMode> {
        let bad = |msg: String| Err(Error::Spec(msg));
        if self.primes.is_empty() {
            return bad("primes is empty".into());
        }
        if self.extensions.is_empty() || self.extensions.contains(&0) {
            return bad("extensions must be a nonempty list of positive degrees".into());
        }
        for (name, r) in [
            ("n_range", self.n_range),
            ("m_range", self.m_range),
            ("k_range", self.k_range),
        ] {
            if r.is_empty() {
                return bad(format!("{name} {r} is empty"));
            }
        }
        if self.n_range.lo == 0 || self.m_range.lo == 0 || self.k_range.lo == 0 {
            return bad("n, m and k must be positive".into());
        }
        let b = &self.budgets;
        if b.naive_evals == 0 || b.fast_prefixes == 0 || b.probe_points == 0 {
            return bad("budgets must be positive".into());
        }
        if self.probe_degrees.contains(&0) {
            return bad("probe degrees must be positive".into());
        }
        match self.coeff_mode {
            CoeffModeKind::AllOnes => Ok(CoeffMode::AllOnes),
            CoeffModeKind::Random => match self.seed {
                Some(seed) if self.count > 0 => Ok(CoeffMode::Random {
                    count: self.count,
                    seed,
                }),
                Some(_) => bad("count must be positive for random coefficients".into()),
                None => bad("seed is required when coeff_mode = random".into()),
            },
            CoeffModeKind::Explicit if self.coeffs.is_empty() => {
                bad("coeff_mode = explicit needs coeffs".into())
            }
            CoeffModeKind::Explicit => Ok(CoeffMode::Explicit(self.coeffs.clone())),
        }
    }
}
