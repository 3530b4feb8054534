//! Regular plane curves `α(t) = (x(t), y(t), 0)` evaluated through jets.

mod expr;

use std::fmt;
use std::sync::Arc;

pub use expr::{parse_expr, Expr};

use crate::diffkit::{Jet, Jet2, MAX_ORDER};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::vector::Vec2;
use crate::Scalar;

type Evaluator<S> = dyn Fn(Jet<S>) -> Result<Jet2<S>> + Send + Sync;

const PROBE_POINTS: usize = 64;

/// A parametric plane curve. The evaluator receives the jet of the parameter
/// and returns the jets of `x` and `y`, so any composition of jet operations
/// defines a curve with exact derivatives.
#[derive(Clone)]
pub struct PlaneCurve<S> {
    label: String,
    eval: Arc<Evaluator<S>>,
    domain: (S, S),
    period: Option<S>,
    length_scale: S,
    speed_scale: S,
}

impl<S: Scalar> fmt::Debug for PlaneCurve<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneCurve")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("period", &self.period)
            .finish_non_exhaustive()
    }
}

/// Signed curvature and arc-length prime of a plane curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneInvariants<S> {
    pub s_dot: S,
    pub curvature: S,
    /// `1/K`, absent where `K = 0`.
    pub radius: Option<S>,
    pub regular: bool,
}

impl<S: Scalar> PlaneCurve<S> {
    pub fn new<F>(label: impl Into<String>, domain: (S, S), period: Option<S>, eval: F) -> Result<Self>
    where
        F: Fn(Jet<S>) -> Result<Jet2<S>> + Send + Sync + 'static,
    {
        if !(domain.0 < domain.1) {
            return Err(Error::InvalidParameters("empty parameter domain".into()));
        }
        if let Some(p) = period {
            if !(p > S::zero()) {
                return Err(Error::InvalidParameters("period must be positive".into()));
            }
        }
        let mut curve = PlaneCurve {
            label: label.into(),
            eval: Arc::new(eval),
            domain,
            period,
            length_scale: S::one(),
            speed_scale: S::one(),
        };
        curve.probe_scales();
        Ok(curve)
    }

    // Max ‖α‖ and max ‖α̇‖ over a coarse grid; points that fail to evaluate are skipped.
    fn probe_scales(&mut self) {
        let (lo, hi) = self.domain;
        let mut len = S::zero();
        let mut speed = S::zero();
        for i in 0..PROBE_POINTS {
            let t = lo + (hi - lo) * S::lit((i as f64 + 0.5) / PROBE_POINTS as f64);
            if let Ok(j) = self.eval_jet2(t, 1) {
                len = len.max(j.value().norm());
                speed = speed.max(j.nth(1).norm());
            }
        }
        if len > S::zero() && len.is_finite() {
            self.length_scale = len;
        }
        if speed > S::zero() && speed.is_finite() {
            self.speed_scale = speed;
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> (S, S) {
        self.domain
    }

    pub fn period(&self) -> Option<S> {
        self.period
    }

    /// Largest `‖α(t)‖` seen on the probe grid (1 if the curve sits at the origin).
    pub fn length_scale(&self) -> S {
        self.length_scale
    }

    /// Largest `‖α̇(t)‖` seen on the probe grid.
    pub fn speed_scale(&self) -> S {
        self.speed_scale
    }

    /// Default tolerances carrying this curve's scales.
    pub fn tolerances(&self) -> Tolerances<S> {
        Tolerances::default().with_scales(self.length_scale, self.speed_scale)
    }

    /// Closed curves accept any `t`; open ones only their domain.
    pub fn eval_jet2(&self, t: S, order: usize) -> Result<Jet2<S>> {
        if order > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
        }
        let (lo, hi) = self.domain;
        if self.period.is_none() && !(t >= lo && t <= hi) {
            return Err(Error::OutsideDomain { t: t.as_f64(), min: lo.as_f64(), max: hi.as_f64() });
        }
        (self.eval)(Jet::variable(t, order)?)
    }

    pub fn point(&self, t: S) -> Result<Vec2<S>> {
        Ok(self.eval_jet2(t, 0)?.value())
    }

    pub fn signed_curvature(&self, t: S, tol: &Tolerances<S>) -> Result<PlaneInvariants<S>> {
        let j = self.eval_jet2(t, 2)?;
        let inv = plane_invariants(j.nth(1), j.nth(2));
        if !(inv.s_dot > tol.reg * tol.speed_scale) {
            return Err(Error::NonRegular { t: t.as_f64(), speed: inv.s_dot.as_f64() });
        }
        Ok(inv)
    }

    /// The same curve after `p ↦ R·p + shift` with `R` the rotation by `angle`.
    pub fn rigid_motion(&self, angle: S, shift: Vec2<S>) -> Result<Self> {
        let inner = self.eval.clone();
        let (s, c) = angle.sin_cos();
        let mut moved = PlaneCurve::new(
            format!("{} (moved)", self.label),
            self.domain,
            self.period,
            move |t: Jet<S>| {
                let p = inner(t)?;
                Ok(Vec2::new(
                    p.x.scale(c) - p.y.scale(s) + p.x.lift_const(shift.x),
                    p.x.scale(s) + p.y.scale(c) + p.y.lift_const(shift.y),
                ))
            },
        )?;
        moved.speed_scale = self.speed_scale;
        Ok(moved)
    }

    /// The same trace run backwards, `t ↦ −t`.
    pub fn reversed(&self) -> Result<Self> {
        let inner = self.eval.clone();
        let (lo, hi) = self.domain;
        PlaneCurve::new(format!("{} (reversed)", self.label), (-hi, -lo), self.period, move |t: Jet<S>| {
            inner(-t)
        })
    }
}

/// `ṡ = ‖α̇‖` and `K = ⟨α̈, Jα̇⟩ / ‖α̇‖³` from the first two derivatives.
/// Assumes `α̇ ≠ 0`; the caller decides regularity.
pub fn plane_invariants<S: Scalar>(d1: Vec2<S>, d2: Vec2<S>) -> PlaneInvariants<S> {
    let s_dot = d1.norm();
    let cross = d2.dot(d1.j());
    let curvature = if s_dot > S::zero() { cross / (s_dot * s_dot * s_dot) } else { S::zero() };
    PlaneInvariants {
        s_dot,
        curvature,
        radius: (curvature != S::zero()).then(|| S::one() / curvature),
        regular: s_dot > S::zero(),
    }
}

/// Jets of `ṡ` and `K` built from a base jet of order `n ≥ 2`; they come out
/// with orders `n − 1` and `n − 2`.
pub fn invariant_jets<S: Scalar>(base: &Jet2<S>) -> Result<(Jet<S>, Jet<S>)> {
    let d1 = base.derivative()?;
    let d2 = d1.derivative()?;
    let s_dot = d1.dot(d1).sqrt().map_err(|_| Error::NonRegular {
        t: base.x.value().as_f64(),
        speed: d1.value().norm().as_f64(),
    })?;
    let n2 = d2.order();
    let d1_low = d1.truncate(n2)?;
    let cross = d2.dot(d1_low.j());
    let s_low = s_dot.truncate(n2)?;
    let curvature = cross.checked_div(&(s_low * s_low * s_low))?;
    Ok((s_dot, curvature))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(rho: f64) -> PlaneCurve<f64> {
        PlaneCurve::new("circle", (0.0, 2.0 * PI), Some(2.0 * PI), move |t: Jet<f64>| {
            let (s, c) = t.sin_cos();
            Ok(Vec2::new(c.scale(rho), s.scale(rho)))
        })
        .unwrap()
    }

    fn line() -> PlaneCurve<f64> {
        PlaneCurve::new("line", (-1.0, 1.0), None, |t: Jet<f64>| Ok(Vec2::new(t, t.lift_const(0.0)))).unwrap()
    }

    #[test]
    fn circle_jet_at_zero() {
        let j = circle(1.0).eval_jet2(0.0, 2).unwrap();
        assert_eq!(j.x.derivatives(), &[1.0, 0.0, -1.0]);
        assert_eq!(j.y.derivatives(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn circle_curvature_is_reciprocal_radius() {
        let c = circle(2.5);
        let tol = c.tolerances();
        for i in 0..16 {
            let inv = c.signed_curvature(i as f64 * 0.4, &tol).unwrap();
            assert!((inv.curvature - 0.4).abs() < 1e-14);
            assert!((inv.radius.unwrap() * inv.curvature - 1.0).abs() < 1e-15);
            assert!(inv.regular);
        }
    }

    #[test]
    fn line_has_zero_curvature_and_no_radius() {
        let l = line();
        let inv = l.signed_curvature(0.3, &l.tolerances()).unwrap();
        assert_eq!(inv.curvature, 0.0);
        assert!(inv.radius.is_none());
        assert!(matches!(l.eval_jet2(1.5, 1), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn constant_curve_has_zero_derivatives_and_is_singular() {
        let c = PlaneCurve::new("pt", (0.0, 1.0), None, |t: Jet<f64>| {
            Ok(Vec2::new(t.lift_const(2.0), t.lift_const(-1.0)))
        })
        .unwrap();
        let j = c.eval_jet2(0.5, 4).unwrap();
        assert!(j.x.derivatives()[1..].iter().chain(&j.y.derivatives()[1..]).all(|&v| v == 0.0));
        assert!(matches!(c.signed_curvature(0.5, &c.tolerances()), Err(Error::NonRegular { .. })));
    }

    #[test]
    fn reversal_flips_sign() {
        let c = circle(1.0);
        let r = c.reversed().unwrap();
        let k = c.signed_curvature(0.7, &c.tolerances()).unwrap().curvature;
        let kr = r.signed_curvature(-0.7, &r.tolerances()).unwrap().curvature;
        assert!((k + kr).abs() < 1e-14);
    }

    #[test]
    fn invariant_jets_match_pointwise() {
        let c = circle(3.0);
        let (s, k) = invariant_jets(&c.eval_jet2(1.1, 4).unwrap()).unwrap();
        assert_eq!((s.order(), k.order()), (3, 2));
        assert!((s.value() - 3.0).abs() < 1e-14 && s.d(1).abs() < 1e-14);
        assert!((k.value() - 1.0 / 3.0).abs() < 1e-14 && k.d(1).abs() < 1e-14 && k.d(2).abs() < 1e-14);
    }
}

impl PlaneCurve<f64> {
    /// Curve from two expressions in `t` (see [`parse_expr`] for the grammar).
    pub fn from_expressions(x: &str, y: &str, domain: (f64, f64), period: Option<f64>) -> Result<Self> {
        let ex = parse_expr(x)?;
        let ey = parse_expr(y)?;
        PlaneCurve::new(format!("({x}, {y})"), domain, period, move |t: Jet<f64>| {
            Ok(Vec2::new(ex.eval(&t)?, ey.eval(&t)?))
        })
    }
}
