//! Run configuration: command-line flags over a `key = value` file over defaults.
//!
//! The file format is one `key = value` per line; `#` starts a comment.
//! Keys mirror the long flags with `-` replaced by `_` (`preset`, `expr_x`,
//! `expr_y`, `expr_f`, `t_min`, `t_max`, `a`, `b`, `n`, `r`, `R`, `branch`,
//! `samples`, `out`, `out_dir`) and `tol.KEY` for each tolerance.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use torofocal::families::Preset;
use torofocal::verify::CheckTolerances;
use torofocal::{Error, HeightBranch, Result, Tolerances64};

#[derive(Debug, Clone, Default, Args)]
pub struct CurveArgs {
    /// Named catalog curve (see `presets`).
    #[arg(long)]
    pub preset: Option<String>,
    /// x(t) of an expression curve.
    #[arg(long = "expr-x", allow_hyphen_values = true)]
    pub expr_x: Option<String>,
    /// y(t) of an expression curve.
    #[arg(long = "expr-y", allow_hyphen_values = true)]
    pub expr_y: Option<String>,
    /// Height f(t) of an expression lift; without it the torus height is used.
    #[arg(long = "expr-f", allow_hyphen_values = true)]
    pub expr_f: Option<String>,
    #[arg(long = "t-min", allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long = "t-max", allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// Torus centre-circle radius.
    #[arg(long)]
    pub a: Option<f64>,
    /// Torus tube radius.
    #[arg(long)]
    pub b: Option<f64>,
    /// Helix winding count.
    #[arg(long)]
    pub n: Option<u32>,
    /// Rolling-circle radius.
    #[arg(long)]
    pub r: Option<f64>,
    /// Fixed-circle radius (with --r, overrides the preset's ratio).
    #[arg(long = "R")]
    pub big_r: Option<f64>,
    /// upper or lower sheet of the torus.
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Comma-separated formats: csv, json, svg, obj.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// Tolerance override, KEY=VAL; repeatable.
    #[arg(long = "tol", value_name = "KEY=VAL")]
    pub tol: Vec<String>,
    /// key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Obj,
}

impl Format {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            "svg" => Format::Svg,
            "obj" => Format::Obj,
            other => return Err(Error::InvalidParameters(format!("unknown output format {other:?}"))),
        })
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
            Format::Obj => "obj",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Preset(Preset),
    Expressions { x: String, y: String, f: Option<String> },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: CurveSource,
    pub torus: Option<(f64, f64)>,
    pub helix_n: u32,
    pub r: f64,
    pub big_r: Option<f64>,
    pub branch: HeightBranch,
    pub samples: usize,
    pub t_range: Option<(f64, f64)>,
    pub tol: Tolerances64,
    pub checks: CheckTolerances,
    pub outputs: Vec<Format>,
    pub out_dir: PathBuf,
}

impl RunConfig {
    /// Output file stem.
    pub fn stem(&self) -> String {
        match &self.curve {
            CurveSource::Preset(p) => p.name().to_string(),
            CurveSource::Expressions { .. } => "curve".to_string(),
        }
    }
}

fn parse_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameters(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameters(format!("{}:{}: expected key = value", path.display(), no + 1)))?;
        map.insert(k.trim().to_string(), v.trim().trim_matches('"').to_string());
    }
    Ok(map)
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::InvalidParameters(format!("{key}: cannot parse {v:?}")))
}

fn split_tol(item: &str) -> Result<(String, f64)> {
    let (k, v) = item
        .split_once('=')
        .ok_or_else(|| Error::InvalidParameters(format!("--tol expects KEY=VAL, got {item:?}")))?;
    Ok((k.trim().to_string(), num(k, v.trim())?))
}

impl CurveArgs {
    /// Merges flags, the optional config file and defaults; `default_samples`
    /// and `default_out` depend on the subcommand.
    pub fn resolve(&self, default_samples: usize, default_out: &str) -> Result<RunConfig> {
        let file = match &self.config {
            Some(p) => parse_file(p)?,
            None => BTreeMap::new(),
        };
        let known = [
            "preset", "expr_x", "expr_y", "expr_f", "t_min", "t_max", "a", "b", "n", "r", "R", "branch", "samples", "out",
            "out_dir",
        ];
        for k in file.keys() {
            if !known.contains(&k.as_str()) && !k.starts_with("tol.") {
                return Err(Error::InvalidParameters(format!("unknown config key {k:?}")));
            }
        }
        let s = |flag: &Option<String>, key: &str| flag.clone().or_else(|| file.get(key).cloned());
        let f = |flag: Option<f64>, key: &str| -> Result<Option<f64>> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key).map(|v| num(key, v)).transpose(),
            }
        };

        let preset = s(&self.preset, "preset");
        let (ex, ey, ef) = (s(&self.expr_x, "expr_x"), s(&self.expr_y, "expr_y"), s(&self.expr_f, "expr_f"));
        let curve = match (preset, ex, ey) {
            (Some(p), None, None) => CurveSource::Preset(p.parse()?),
            (None, Some(x), Some(y)) => CurveSource::Expressions { x, y, f: ef },
            (None, None, None) => {
                return Err(Error::InvalidParameters("give --preset or both --expr-x and --expr-y".into()))
            }
            (Some(_), _, _) => return Err(Error::InvalidParameters("--preset and --expr-* are exclusive".into())),
            _ => return Err(Error::InvalidParameters("expression curves need both --expr-x and --expr-y".into())),
        };

        let a = f(self.a, "a")?;
        let b = f(self.b, "b")?;
        let torus = match (a, b) {
            (Some(a), Some(b)) if a > b && b > 0.0 => Some((a, b)),
            (Some(a), Some(b)) => return Err(Error::InvalidParameters(format!("torus needs a > b > 0, got a = {a}, b = {b}"))),
            (None, None) => None,
            _ => return Err(Error::InvalidParameters("give both --a and --b".into())),
        };
        let helix_n = match self.n {
            Some(n) => n,
            None => file.get("n").map(|v| num("n", v)).transpose()?.unwrap_or(12),
        };
        let r = f(self.r, "r")?.unwrap_or(1.0);
        if r.is_nan() || r <= 0.0 {
            return Err(Error::InvalidParameters(format!("r must be positive, got {r}")));
        }
        let big_r = f(self.big_r, "R")?;
        let branch = match s(&self.branch, "branch").as_deref() {
            None | Some("upper") => HeightBranch::Upper,
            Some("lower") => HeightBranch::Lower,
            Some(other) => return Err(Error::InvalidParameters(format!("branch must be upper or lower, got {other:?}"))),
        };
        let samples = match self.samples {
            Some(n) => n,
            None => file.get("samples").map(|v| num("samples", v)).transpose()?.unwrap_or(default_samples),
        };
        if samples < 2 {
            return Err(Error::InvalidParameters(format!("samples must be ≥ 2, got {samples}")));
        }
        let t_range = match (f(self.t_min, "t_min")?, f(self.t_max, "t_max")?) {
            (Some(lo), Some(hi)) if lo < hi => Some((lo, hi)),
            (None, None) => None,
            (Some(lo), Some(hi)) => return Err(Error::InvalidParameters(format!("t_min {lo} must be below t_max {hi}"))),
            _ => return Err(Error::InvalidParameters("give both --t-min and --t-max".into())),
        };

        let mut tol = Tolerances64::default();
        let mut checks = CheckTolerances::default();
        let mut overrides: Vec<(String, f64)> = Vec::new();
        for (k, v) in file.iter().filter_map(|(k, v)| k.strip_prefix("tol.").map(|k| (k, v))) {
            overrides.push((k.to_string(), num(k, v)?));
        }
        for item in &self.tol {
            overrides.push(split_tol(item)?);
        }
        for (k, v) in overrides {
            if Tolerances64::KEYS.contains(&k.as_str()) {
                tol.set(&k, v)?;
            } else if !checks.set(&k, v) {
                return Err(Error::InvalidParameters(format!("unknown tolerance key {k:?}")));
            }
        }

        let out = s(&self.out, "out").unwrap_or_else(|| default_out.to_string());
        let mut outputs = out.split(',').filter(|x| !x.trim().is_empty()).map(Format::parse).collect::<Result<Vec<_>>>()?;
        outputs.sort();
        outputs.dedup();
        let out_dir = self
            .out_dir
            .clone()
            .or_else(|| file.get("out_dir").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        Ok(RunConfig { curve, torus, helix_n, r, big_r, branch, samples, t_range, tol, checks, outputs, out_dir })
    }
}
