//! Per-parameter evaluation of a lift: both Frenet paths, both focal paths,
//! the focal curve and the generalized focal curve, with singular
//! parameters classified rather than propagated.

use crate::error::{Error, Result};
use crate::focal::{
    c2_from_radius_rate, focal_curvatures_general, focal_point, generalized_focal, FocalCurvatures, FocalData,
};
use crate::frenet::{curvature_jet, frame_cylindrical, frenet_general, FrenetData};
use crate::lift::{CylindricalLift, Height};
use crate::plane::invariant_jets;
use crate::tolerances::Tolerances;
use crate::vector::{Vec2, Vec3};
use crate::Scalar;

/// Classification of a sample. When several apply the first listed wins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointStatus {
    Ok,
    Domain,
    NearCusp,
    Flat,
    TorsionZero,
}

impl PointStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PointStatus::Ok => "ok",
            PointStatus::Domain => "domain",
            PointStatus::NearCusp => "near_cusp",
            PointStatus::Flat => "flat",
            PointStatus::TorsionZero => "torsion_zero",
        }
    }

    /// Status for a singularity error, `None` for errors that are real failures.
    pub fn from_error(e: &Error) -> Option<Self> {
        Some(match e {
            Error::TorusDomain { .. } | Error::Domain { .. } => PointStatus::Domain,
            Error::NearCusp { .. } | Error::NonRegular { .. } => PointStatus::NearCusp,
            Error::Flat { .. } => PointStatus::Flat,
            Error::TorsionZero { .. } => PointStatus::TorsionZero,
            _ => return None,
        })
    }
}

/// Everything computed at one regular parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointData<S> {
    pub alpha: Vec2<S>,
    pub f: S,
    pub gamma: Vec3<S>,
    pub s_dot: S,
    /// Signed curvature of the base.
    pub curvature: S,
    /// Frame from the definitions on `γ`.
    pub frame: FrenetData<S>,
    /// Frame from the base-curve closed forms.
    pub frame_cyl: FrenetData<S>,
    pub focal_general: FocalCurvatures<S>,
    /// `c₂` through `ċ₁/(‖γ̇‖τ)`.
    pub c2_rate: S,
    /// `γ + c₁N + c₂B` from the general path.
    pub c_gamma_general: Vec3<S>,
    /// `c₁, c₂` from the closed forms; `c_gamma` assembled from the closed-form
    /// frame, `beta`/`f_tilde` from the generalized focal formulas.
    pub focal: FocalData<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointEval<S> {
    pub t: S,
    /// Index of the open arc between cusp guard bands.
    pub arc: usize,
    pub status: PointStatus,
    pub data: Option<PointData<S>>,
}

/// Full evaluation at `t`. Singular parameters come back as errors.
pub fn evaluate<S: Scalar>(lift: &CylindricalLift<S>, t: S, tol: &Tolerances<S>) -> Result<PointData<S>> {
    let at = |e: Error| e.at(t.as_f64());
    let (base, f) = lift.jets(t, 3, tol)?;
    let gamma_jet = base.lift(f);
    let frame = frenet_general(&gamma_jet, tol).map_err(at)?;
    let kappa = curvature_jet(&gamma_jet).map_err(at)?;
    let focal_general = focal_curvatures_general(&kappa, frame.speed, frame.tau, tol).map_err(at)?;
    let c2_rate = c2_from_radius_rate(&kappa, frame.speed, frame.tau, tol).map_err(at)?;
    let gamma = gamma_jet.value();

    let (s_dot, k) = invariant_jets(&base).map_err(at)?;
    let frame_cyl = frame_cylindrical(&base, &f, k.value(), s_dot.value(), tol).map_err(at)?;
    let (beta, f_tilde, fc) = generalized_focal(&base, &f, &k, &s_dot, tol).map_err(at)?;
    Ok(PointData {
        alpha: base.value(),
        f: f.value(),
        gamma,
        s_dot: s_dot.value(),
        curvature: k.value(),
        frame,
        frame_cyl,
        focal_general,
        c2_rate,
        c_gamma_general: focal_point(gamma, &frame, focal_general.c1, focal_general.c2),
        focal: FocalData {
            c1: fc.c1,
            c2: fc.c2,
            c_gamma: focal_point(gamma, &frame_cyl, fc.c1, fc.c2),
            beta,
            f_tilde,
        },
    })
}

/// Samples a lift over a parameter range, with optional cusp guard bands.
#[derive(Debug, Clone)]
pub struct Sampler<S: Scalar> {
    lift: CylindricalLift<S>,
    tol: Tolerances<S>,
    cusps: Vec<S>,
    guard: S,
}

impl<S: Scalar> Sampler<S> {
    pub fn new(lift: CylindricalLift<S>, tol: Tolerances<S>) -> Self {
        Sampler { lift, tol, cusps: Vec::new(), guard: S::zero() }
    }

    /// Excludes `|t − c| < cusp_guard · period` around each listed cusp.
    pub fn with_cusps(mut self, cusps: Vec<S>, period: S) -> Self {
        self.cusps = cusps;
        self.guard = self.tol.cusp_guard * period;
        self
    }

    pub fn lift(&self) -> &CylindricalLift<S> {
        &self.lift
    }

    pub fn tolerances(&self) -> &Tolerances<S> {
        &self.tol
    }

    pub fn cusps(&self) -> &[S] {
        &self.cusps
    }

    pub fn in_guard(&self, t: S) -> bool {
        self.cusps.iter().any(|&c| (t - c).abs() < self.guard)
    }

    fn arc_of(&self, t: S, start: S) -> usize {
        self.cusps.iter().filter(|&&c| c > start + self.guard && c < t).count()
    }

    /// `n` uniform parameters on `[t0, t1]`, endpoints included.
    pub fn grid(t0: S, t1: S, n: usize) -> Vec<S> {
        if n == 1 {
            return vec![t0];
        }
        let step = (t1 - t0) / S::from_usize(n - 1).unwrap();
        (0..n).map(|i| if i + 1 == n { t1 } else { t0 + step * S::from_usize(i).unwrap() }).collect()
    }

    /// Evaluates one parameter, `start` being the beginning of the sampled range.
    pub fn eval_at(&self, t: S, start: S) -> Result<PointEval<S>> {
        let arc = self.arc_of(t, start);
        let classify = |e: Error| match PointStatus::from_error(&e) {
            Some(status) => Ok(PointEval { t, arc, status, data: None }),
            None => Err(e),
        };
        // The torus height is checked first so that domain outranks the guard band.
        if let Err(e) = self.lift.jets(t, 0, &self.tol) {
            return classify(e);
        }
        if self.in_guard(t) {
            return Ok(PointEval { t, arc, status: PointStatus::NearCusp, data: None });
        }
        match evaluate(&self.lift, t, &self.tol) {
            Ok(d) => Ok(PointEval { t, arc, status: PointStatus::Ok, data: Some(d) }),
            Err(e) => classify(e),
        }
    }

    /// Sequential evaluation of a grid, in order.
    pub fn run(&self, ts: &[S]) -> Result<Vec<PointEval<S>>> {
        let start = ts.first().copied().unwrap_or_else(S::zero);
        ts.iter().map(|&t| self.eval_at(t, start)).collect()
    }
}

/// Singularity indicator of a lift at `t`: the smaller of `ṡ/V` and, for
/// heights taken from a torus, `|b² − (a − ρ)²|/b²`. Zero at cusps.
pub fn singularity_indicator<S: Scalar>(lift: &CylindricalLift<S>, t: S) -> Result<S> {
    let base = lift.base().eval_jet2(t, 1)?;
    let speed = base.nth(1).norm() / lift.base().speed_scale();
    Ok(match lift.height() {
        Height::Torus { torus, .. } => {
            let rho = base.value().norm();
            let b2 = torus.b() * torus.b();
            let off = torus.a() - rho;
            speed.min(((b2 - off * off) / b2).abs())
        }
        Height::Explicit(_) => speed,
    })
}

/// Parameters in `[t0, t1]` where [`singularity_indicator`] vanishes: a grid
/// scan for local minima, refined by golden-section search, kept when the
/// refined indicator is below `accept`.
pub fn detect_cusps<S: Scalar>(lift: &CylindricalLift<S>, t0: S, t1: S, samples: usize, accept: S) -> Result<Vec<S>> {
    let span = t1 - t0;
    let step = span / S::from_usize(samples).unwrap();
    // Reach one step past each end so endpoint minima are bracketed.
    let ts: Vec<S> = (0..=samples + 2).map(|i| t0 - step + step * S::from_usize(i).unwrap()).collect();
    let vals = ts.iter().map(|&t| singularity_indicator(lift, t)).collect::<Result<Vec<_>>>()?;
    let eps = step / S::lit(2.0);
    let mut found: Vec<S> = Vec::new();
    for i in 1..ts.len() - 1 {
        if !(vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1]) {
            continue;
        }
        let (t, v) = golden_min(|t| singularity_indicator(lift, t), ts[i - 1], ts[i + 1])?;
        if v < accept && t >= t0 - eps && t <= t1 + eps && !found.iter().any(|&c| (c - t).abs() < step) {
            found.push(t.max(t0).min(t1));
        }
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(found)
}

fn golden_min<S: Scalar, F: Fn(S) -> Result<S>>(f: F, mut lo: S, mut hi: S) -> Result<(S, S)> {
    let g = S::lit(0.618_033_988_749_894_8);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if hi - lo <= S::epsilon() * S::lit(4.0) * (S::one() + lo.abs()) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
