//! Turning a [`RunConfig`] into a sampled lift.

use std::f64::consts::PI;

use torofocal::families::FamilySpec;
use torofocal::pipeline::Sampler;
use torofocal::plane::parse_expr;
use torofocal::verify::VerifyTarget;
use torofocal::{CylindricalLift, Error, FamilyKind, Jet, PlaneCurve, Result, TorusSpec};

use crate::config::{CurveSource, RunConfig};

/// The full sampling setup for one run.
pub fn target(cfg: &RunConfig) -> Result<VerifyTarget<f64>> {
    match &cfg.curve {
        CurveSource::Preset(p) => {
            let helix = (cfg.torus.map_or(4.0, |t| t.0), cfg.torus.map_or(1.0, |t| t.1), cfg.helix_n);
            let inst = p.instance(cfg.r, helix)?;
            let torus = match cfg.torus {
                Some((a, b)) => TorusSpec::new(a, b)?,
                None => inst.torus,
            };
            let spec = match (inst.spec.kind(), cfg.big_r) {
                (FamilyKind::Epicycloid, Some(big_r)) => FamilySpec::epicycloid(big_r, cfg.r)?,
                (FamilyKind::Hypocycloid, Some(big_r)) => FamilySpec::hypocycloid(big_r, cfg.r)?,
                (FamilyKind::HelixProjection, Some(_)) => {
                    return Err(Error::InvalidParameters("--R does not apply to the helix".into()))
                }
                _ => inst.spec,
            };
            let lift = spec.lift(&torus, cfg.branch)?.labeled(p.name());
            let compat = spec.torus_compat(&torus)?;
            let mut t = VerifyTarget::for_family_with(spec, torus, cfg.branch, lift, with_scales(&cfg.tol, &spec, &torus)?, compat)?;
            if let Some(range) = cfg.t_range {
                t.range = range;
            }
            Ok(t)
        }
        CurveSource::Expressions { x, y, f } => {
            let range = cfg.t_range.unwrap_or((0.0, 2.0 * PI));
            let base = PlaneCurve::from_expressions(x, y, range, None)?;
            let lift = match (f, cfg.torus) {
                (Some(f), _) => {
                    let ef = parse_expr(f)?;
                    CylindricalLift::with_height(base, move |t: Jet<f64>| ef.eval(&t))
                }
                (None, Some((a, b))) => CylindricalLift::on_torus(base, TorusSpec::new(a, b)?, cfg.branch),
                (None, None) => {
                    return Err(Error::InvalidParameters(
                        "expression curves need --expr-f or a torus (--a, --b)".into(),
                    ))
                }
            };
            let scales = lift.tolerances();
            let tol = cfg.tol.with_scales(scales.length_scale, scales.speed_scale);
            Ok(VerifyTarget { sampler: Sampler::new(lift, tol), range, family: None })
        }
    }
}

// User guards with the curve's own length and speed scales.
fn with_scales(tol: &torofocal::Tolerances64, spec: &FamilySpec<f64>, torus: &TorusSpec<f64>) -> Result<torofocal::Tolerances64> {
    let scales = spec.lift(torus, Default::default())?.tolerances();
    Ok(tol.with_scales(scales.length_scale, scales.speed_scale))
}

/// Fixed-order grid over the target's range.
pub fn grid(cfg: &RunConfig, target: &VerifyTarget<f64>) -> Vec<f64> {
    Sampler::grid(target.range.0, target.range.1, cfg.samples)
}
