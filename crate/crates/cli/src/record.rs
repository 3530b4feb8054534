//! Sample records and their CSV/JSON encodings.
//!
//! Numbers are written in the shortest form that round-trips (never more
//! than 17 significant digits); field order is fixed by [`FIELDS`].

use torofocal::pipeline::PointEval;

/// First line of every CSV file.
pub const CSV_VERSION: &str = "# torofocal samples v1";

/// Column names, in output order.
pub const FIELDS: [&str; 33] = [
    "t", "arc", "status", "alpha_x", "alpha_y", "f", "gamma_x", "gamma_y", "gamma_z", "s_dot", "K", "T_x", "T_y",
    "T_z", "N_x", "N_y", "N_z", "B_x", "B_y", "B_z", "kappa", "tau", "c1", "c2", "C_gamma_x", "C_gamma_y",
    "C_gamma_z", "beta_x", "beta_y", "f_tilde", "c1_cyl", "c2_cyl", "speed",
];

const NUMERIC: usize = FIELDS.len() - 3;

/// One sampled parameter. `values` is empty unless the status is `ok`;
/// frame, κ, τ, c₁, c₂ and `C_gamma` come from the general definitions,
/// `beta`/`f_tilde` and the `_cyl` curvatures from the base-curve closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub t: f64,
    pub arc: usize,
    pub status: &'static str,
    pub values: Option<[f64; NUMERIC]>,
}

impl From<&PointEval<f64>> for SampleRecord {
    fn from(p: &PointEval<f64>) -> Self {
        let values = p.data.as_ref().map(|d| {
            let fr = &d.frame;
            let fg = &d.focal_general;
            let c = d.c_gamma_general;
            [
                d.alpha.x, d.alpha.y, d.f, d.gamma.x, d.gamma.y, d.gamma.z, d.s_dot, d.curvature, fr.tangent.x,
                fr.tangent.y, fr.tangent.z, fr.normal.x, fr.normal.y, fr.normal.z, fr.binormal.x, fr.binormal.y,
                fr.binormal.z, fr.kappa, fr.tau, fg.c1, fg.c2, c.x, c.y, c.z, d.focal.beta.x, d.focal.beta.y,
                d.focal.f_tilde, d.focal.c1, d.focal.c2, fr.speed,
            ]
        });
        SampleRecord { t: p.t, arc: p.arc, status: p.status.as_str(), values }
    }
}

/// Shortest round-trip decimal.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_string()
    } else {
        // never produced for ok records; kept printable for diagnostics
        format!("{x}")
    }
}

pub fn to_csv(records: &[SampleRecord]) -> String {
    let mut out = String::with_capacity(64 + records.len() * 400);
    out.push_str(CSV_VERSION);
    out.push('\n');
    out.push_str(&FIELDS.join(","));
    out.push('\n');
    for r in records {
        out.push_str(&num(r.t));
        out.push(',');
        out.push_str(&r.arc.to_string());
        out.push(',');
        out.push_str(r.status);
        match &r.values {
            Some(v) => v.iter().for_each(|x| {
                out.push(',');
                out.push_str(&num(*x));
            }),
            None => (0..NUMERIC).for_each(|_| out.push(',')),
        }
        out.push('\n');
    }
    out
}

pub fn to_json(records: &[SampleRecord]) -> String {
    let mut out = String::with_capacity(16 + records.len() * 800);
    out.push('[');
    for (i, r) in records.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n  {");
        out.push_str(&format!("\"t\":{},\"arc\":{},\"status\":\"{}\"", num(r.t), r.arc, r.status));
        for (k, name) in FIELDS[3..].iter().enumerate() {
            let v = r.values.as_ref().map_or_else(|| "null".to_string(), |v| num(v[k]));
            out.push_str(&format!(",\"{name}\":{v}"));
        }
        out.push('}');
    }
    out.push_str("\n]\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_roundtrip_numbers() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, std::f64::consts::TAU, 1e21] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let digits = s.chars().take_while(|c| *c != 'e').filter(|c| c.is_ascii_digit()).count();
            assert!(digits <= 18, "{s}");
        }
    }

    #[test]
    fn csv_and_json_carry_the_same_strings() {
        let rec = SampleRecord { t: 0.25, arc: 1, status: "ok", values: Some(std::array::from_fn(|i| i as f64 / 7.0)) };
        let gap = SampleRecord { t: 0.5, arc: 1, status: "near_cusp", values: None };
        let csv = to_csv(&[rec.clone(), gap]);
        let json: serde_json::Value = serde_json::from_str(&to_json(&[rec])).unwrap();
        let row: Vec<&str> = csv.lines().nth(2).unwrap().split(',').collect();
        for (i, name) in FIELDS.iter().enumerate().skip(3) {
            assert_eq!(json[0][name].to_string(), row[i]);
        }
        assert!(csv.lines().nth(3).unwrap().ends_with(&",".repeat(NUMERIC)));
    }
}
