//! SVG and OBJ renderings of a sampled series, and atomic file output.

use std::fs;
use std::io::Write;
use std::path::Path;

use torofocal::{Error, Result};

use crate::record::{num, SampleRecord};

const ALPHA_COLOR: &str = "red";
const BETA_COLOR: &str = "purple";

/// Runs of consecutive `ok` records sharing an arc index.
pub fn arcs(records: &[SampleRecord]) -> Vec<&[SampleRecord]> {
    let mut out = Vec::new();
    let mut start = None;
    for i in 0..=records.len() {
        let ok = records.get(i).is_some_and(|r| r.values.is_some());
        let same = ok && start.is_some_and(|s: usize| records[s].arc == records[i].arc);
        match (start, ok) {
            (Some(s), true) if !same => {
                out.push(&records[s..i]);
                start = Some(i);
            }
            (Some(s), false) => {
                out.push(&records[s..i]);
                start = None;
            }
            (None, true) => start = Some(i),
            _ => {}
        }
    }
    out
}

// Columns in `SampleRecord::values`.
const ALPHA: (usize, usize) = (0, 1);
const GAMMA: [usize; 3] = [3, 4, 5];
const C_GAMMA: [usize; 3] = [21, 22, 23];
const BETA: (usize, usize) = (24, 25);

fn polyline(arc: &[SampleRecord], cols: (usize, usize), flip: f64) -> String {
    let mut d = String::new();
    for (i, r) in arc.iter().enumerate() {
        let v = r.values.as_ref().unwrap();
        d.push_str(if i == 0 { "M" } else { " L" });
        d.push_str(&format!("{} {}", num(v[cols.0]), num(flip - v[cols.1])));
    }
    d
}

/// α (red) and β (purple), one path per arc, y pointing up, 5% margin.
pub fn svg(records: &[SampleRecord]) -> Result<String> {
    let arcs = arcs(records);
    if arcs.is_empty() {
        return Err(Error::InvalidParameters("no regular samples to draw".into()));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for r in arcs.iter().flat_map(|a| a.iter()) {
        let v = r.values.as_ref().unwrap();
        for (x, y) in [(v[ALPHA.0], v[ALPHA.1]), (v[BETA.0], v[BETA.1])] {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    // Mirror about y0 + y1 so that the drawing keeps its orientation.
    let flip = y0 + y1;
    let stroke = 0.003 * span;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        num(x0 - margin),
        num(y0 - margin),
        num(w),
        num(h)
    ));
    for (name, cols, color) in [("alpha", ALPHA, ALPHA_COLOR), ("beta", BETA, BETA_COLOR)] {
        out.push_str(&format!("  <g id=\"{name}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\">\n", num(stroke)));
        for arc in &arcs {
            out.push_str(&format!("    <path d=\"{}\"/>\n", polyline(arc, cols, flip)));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// γ (blue) and C_γ (green) as OBJ polylines, one `l` element per arc.
pub fn obj(records: &[SampleRecord]) -> Result<String> {
    let arcs = arcs(records);
    if arcs.is_empty() {
        return Err(Error::InvalidParameters("no regular samples to export".into()));
    }
    let mut out = String::from("# torofocal space curves: gamma blue, C_gamma green\n");
    let mut next = 1usize;
    for (name, cols, color) in [("gamma", GAMMA, "blue"), ("C_gamma", C_GAMMA, "green")] {
        out.push_str(&format!("o {name}\nusemtl {color}\n"));
        for arc in &arcs {
            let first = next;
            for r in arc.iter() {
                let v = r.values.as_ref().unwrap();
                out.push_str(&format!("v {} {} {}\n", num(v[cols[0]]), num(v[cols[1]]), num(v[cols[2]])));
                next += 1;
            }
            if arc.len() >= 2 {
                let idx: Vec<String> = (first..next).map(|i| i.to_string()).collect();
                out.push_str(&format!("l {}\n", idx.join(" ")));
            }
        }
    }
    Ok(out)
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidParameters(format!("writing {}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(fs::Permissions::from_mode(0o644)).map_err(io)?;
    }
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
