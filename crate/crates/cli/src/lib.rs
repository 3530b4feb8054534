//! Front end for sampling, verifying and exporting toroidal lifts.

pub mod build;
pub mod config;
pub mod export;
pub mod record;

use std::io::Write;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use torofocal::families::Preset;
use torofocal::verify::{CheckOutcome, Report, VerifyConfig, VerifyTarget};
use torofocal::{Error, Result};

use config::{CurveArgs, Format, RunConfig};
use record::SampleRecord;

#[derive(Debug, Parser)]
#[command(name = "torofocal", version, about = "Closed toroidal curves, their focal curves and generalized focal curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the full pipeline on a uniform grid and write CSV/JSON (default csv).
    Sample(CurveArgs),
    /// Run the cross-path and oracle checks; exit 0 iff all pass.
    Verify(CurveArgs),
    /// Sample and write drawings (default svg,obj).
    Export(CurveArgs),
    /// List the named presets.
    Presets,
}

/// Records for every grid point, in grid order.
pub fn sample_records(cfg: &RunConfig, target: &VerifyTarget<f64>) -> Result<Vec<SampleRecord>> {
    let ts = build::grid(cfg, target);
    let start = target.range.0;
    let evals: Vec<_> = ts.par_iter().map(|&t| target.sampler.eval_at(t, start)).collect::<Result<_>>()?;
    Ok(evals.iter().map(SampleRecord::from).collect())
}

fn write_outputs(cfg: &RunConfig, records: &[SampleRecord]) -> Result<Vec<String>> {
    // Render everything first so that a failing format leaves no partial set.
    let mut rendered = Vec::new();
    for &fmt in &cfg.outputs {
        let body = match fmt {
            Format::Csv => record::to_csv(records),
            Format::Json => record::to_json(records),
            Format::Svg => export::svg(records)?,
            Format::Obj => export::obj(records)?,
        };
        rendered.push((cfg.out_dir.join(format!("{}.{}", cfg.stem(), fmt.extension())), body));
    }
    let mut written = Vec::new();
    for (path, body) in rendered {
        export::write_atomic(&path, &body)?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

fn cmd_sample(args: &CurveArgs, default_out: &str, out: &mut dyn Write) -> Result<i32> {
    let cfg = args.resolve(1000, default_out)?;
    let target = build::target(&cfg)?;
    let records = sample_records(&cfg, &target)?;
    let files = write_outputs(&cfg, &records)?;
    let mut counts = std::collections::BTreeMap::new();
    for r in &records {
        *counts.entry(r.status).or_insert(0usize) += 1;
    }
    let summary = json!({
        "curve": target.sampler.lift().label(),
        "records": records.len(),
        "status": counts,
        "files": files,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary).unwrap()).ok();
    Ok(0)
}

fn check_json(c: &CheckOutcome) -> serde_json::Value {
    json!({
        "name": c.name,
        "max_dev": c.max_dev,
        "tol": c.tol,
        "worst_t": c.worst_t,
        "samples": c.samples,
        "pass": c.pass,
    })
}

pub fn report_json(r: &Report) -> serde_json::Value {
    json!({
        "target": r.target,
        "pass": r.all_pass(),
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
        "worst": r.worst().map(check_json),
    })
}

fn cmd_verify(args: &CurveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = args.resolve(512, "")?;
    let target = build::target(&cfg)?;
    // The finite-difference kernel comparison is a property of the jets, not of
    // the curve, and is left to the test suite.
    let vcfg = VerifyConfig { samples: cfg.samples, tol: cfg.checks, fd_kernel: false, ..VerifyConfig::default() };
    let report = target.run(&vcfg)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report_json(&report)).unwrap()).ok();
    if report.all_pass() {
        return Ok(0);
    }
    if let Some(w) = report.worst() {
        writeln!(err, "{}", json!({ "failed": check_json(w) })).ok();
    }
    Ok(1)
}

fn cmd_presets(out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "families: epicycloid, hypocycloid, helix projection").ok();
    for p in Preset::ALL {
        writeln!(out, "{:<16} {}", p.name(), p.describe()).ok();
    }
    Ok(0)
}

/// Machine-readable error object.
pub fn error_json(e: &Error) -> serde_json::Value {
    let kind = match e {
        Error::OrderOutOfRange { .. } | Error::OrderMismatch { .. } => "order",
        Error::DivisionByZero | Error::Domain { .. } => "domain",
        Error::NonRegular { .. } => "non_regular",
        Error::Flat { .. } => "flat",
        Error::TorsionZero { .. } => "torsion_zero",
        Error::TorusDomain { .. } => "torus_domain",
        Error::NearCusp { .. } => "near_cusp",
        Error::Singular { .. } => "singular",
        Error::OutsideDomain { .. } => "outside_domain",
        Error::InvalidParameters(_) => "invalid_parameters",
        Error::Parse { .. } => "parse",
    };
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Sample(a) => cmd_sample(a, "csv", out),
        Command::Export(a) => cmd_sample(a, "svg,obj", out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Presets => cmd_presets(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "{}", error_json(&e)).ok();
            2
        }
    }
}
