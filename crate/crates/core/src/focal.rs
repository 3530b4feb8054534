//! Focal curvatures and the focal curve `C_γ = γ + c₁N + c₂B`, the locus of
//! centres of the osculating spheres, together with its planar projection.

use crate::diffkit::{Jet, Jet2};
use crate::error::{Error, Result};
use crate::frenet::{CylinderTerms, FrenetData};
use crate::tolerances::Tolerances;
use crate::vector::{Vec2, Vec3};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalCurvatures<S> {
    pub c1: S,
    pub c2: S,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalData<S> {
    pub c1: S,
    pub c2: S,
    pub c_gamma: Vec3<S>,
    pub beta: Vec2<S>,
    pub f_tilde: S,
}

fn check_torsion<S: Scalar>(tau: S, tol: &Tolerances<S>) -> Result<()> {
    if !(tau.abs() * tol.length_scale > tol.tau) {
        return Err(Error::TorsionZero { t: f64::NAN, tau: tau.as_f64() });
    }
    Ok(())
}

fn check_curvature<S: Scalar>(kappa: S, tol: &Tolerances<S>) -> Result<()> {
    if !(kappa * tol.length_scale > tol.flat) {
        return Err(Error::Flat { t: f64::NAN, cross: kappa.as_f64() });
    }
    Ok(())
}

/// `c₁ = 1/κ`, `c₂ = −κ̇ / (‖γ̇‖ κ² τ)` from the jet of `κ(t)`.
pub fn focal_curvatures_general<S: Scalar>(
    kappa: &Jet<S>,
    speed: S,
    tau: S,
    tol: &Tolerances<S>,
) -> Result<FocalCurvatures<S>> {
    if kappa.order() < 1 {
        return Err(Error::OrderOutOfRange { order: kappa.order(), max: 1 });
    }
    let k = kappa.value();
    check_curvature(k, tol)?;
    check_torsion(tau, tol)?;
    Ok(FocalCurvatures { c1: k.recip(), c2: -kappa.d(1) / (speed * k * k * tau) })
}

/// The second form of `c₂`: `ċ₁ / (‖γ̇‖ τ)`, with `c₁ = 1/κ` differentiated as a jet.
pub fn c2_from_radius_rate<S: Scalar>(kappa: &Jet<S>, speed: S, tau: S, tol: &Tolerances<S>) -> Result<S> {
    check_curvature(kappa.value(), tol)?;
    check_torsion(tau, tol)?;
    let radius = kappa.recip()?;
    Ok(radius.d(1) / (speed * tau))
}

/// Jets of `P = ṡ² + ḟ²` and `Q = ṡ⁶K² + ‖f̈α̇ − ḟα̈‖²` at the common order
/// `n − 2`, plus the plain terms; `n` is the base jet's order.
struct LiftSums<S> {
    terms: CylinderTerms<S>,
    p: Jet<S>,
    q: Jet<S>,
    s_dot: Jet<S>,
    bend: S,
}

impl<S: Scalar> LiftSums<S> {
    fn new(base: &Jet2<S>, f: &Jet<S>, curvature: &Jet<S>, s_dot: &Jet<S>) -> Result<Self> {
        let terms = CylinderTerms::new(base, f)?;
        let d1 = base.derivative()?;
        let d2 = d1.derivative()?;
        let f1 = f.derivative()?;
        let f2 = f1.derivative()?;
        let m = d2.order();
        if curvature.order() < m || s_dot.order() < m {
            return Err(Error::OrderOutOfRange { order: curvature.order().min(s_dot.order()), max: m });
        }
        let (d1, f1) = (d1.truncate(m)?, f1.truncate(m)?);
        let (k, s) = (curvature.truncate(m)?, s_dot.truncate(m)?);
        let w = d1.scale(f2) - d2.scale(f1);
        let s3k = s * s * s * k;
        let p = s * s + f1 * f1;
        let q = s3k * s3k + w.dot(w);
        Ok(LiftSums { terms, p, q, s_dot: s, bend: s3k.value() })
    }

    fn kappa(&self) -> S {
        let p = self.p.value();
        self.q.value().sqrt() / (p * p.sqrt())
    }

    // (γ̇ γ̈ γ⃛) = f⃛ṡ³K − ⟨J(f̈α̇ − ḟα̈), α⃛⟩
    fn triple(&self) -> S {
        self.terms.f3 * self.bend - self.terms.w.j().dot(self.terms.d3)
    }
}

/// `c₁ = (√(ṡ²+ḟ²))³ / √Q` and
/// `c₂ = (3Q·(ṡ²+ḟ²)˙ − (ṡ²+ḟ²)·Q̇) / (2√Q·(f⃛ṡ³K − ⟨J(f̈α̇−ḟα̈), α⃛⟩))`
/// with `Q = ṡ⁶K² + ‖f̈α̇−ḟα̈‖²`. Needs a base jet of order ≥ 3 and jets of
/// `K`, `ṡ` of order ≥ 1.
pub fn focal_curvatures_cylindrical<S: Scalar>(
    base: &Jet2<S>,
    f: &Jet<S>,
    curvature: &Jet<S>,
    s_dot: &Jet<S>,
    tol: &Tolerances<S>,
) -> Result<FocalCurvatures<S>> {
    let sums = LiftSums::new(base, f, curvature, s_dot)?;
    focal_from_sums(&sums, tol)
}

fn focal_from_sums<S: Scalar>(sums: &LiftSums<S>, tol: &Tolerances<S>) -> Result<FocalCurvatures<S>> {
    let kappa = sums.kappa();
    check_curvature(kappa, tol)?;
    let (p, q) = (sums.p.value(), sums.q.value());
    let triple = sums.triple();
    check_torsion(triple / q, tol)?;
    let sq = q.sqrt();
    let c1 = p * p.sqrt() / sq;
    let c2 = (S::lit(3.0) * q * sums.p.d(1) - p * sums.q.d(1)) / (S::lit(2.0) * sq * triple);
    Ok(FocalCurvatures { c1, c2 })
}

/// Centre of the osculating sphere, `γ + c₁N + c₂B`.
pub fn focal_point<S: Scalar>(gamma: Vec3<S>, frame: &FrenetData<S>, c1: S, c2: S) -> Vec3<S> {
    gamma + frame.normal.scale(c1) + frame.binormal.scale(c2)
}

/// The generalized focal curve `β` and the height `f̃` with `C_γ = β + f̃·e₃`,
/// both written through `α`, `f`, `K` and `ṡ`:
///
/// `β = α + [c₁((ṡ²+ḟ²)α̈ − ½(ṡ²+ḟ²)˙α̇) − c₂√(ṡ²+ḟ²)·J(f̈α̇−ḟα̈)] / (√(ṡ²+ḟ²)√Q)`,
/// `f̃ = f + [c₁(f̈ṡ² − ḟ(ṡ²/2)˙) + c₂√(ṡ²+ḟ²)·ṡ³K] / (√(ṡ²+ḟ²)√Q)`.
pub fn generalized_focal<S: Scalar>(
    base: &Jet2<S>,
    f: &Jet<S>,
    curvature: &Jet<S>,
    s_dot: &Jet<S>,
    tol: &Tolerances<S>,
) -> Result<(Vec2<S>, S, FocalCurvatures<S>)> {
    let sums = LiftSums::new(base, f, curvature, s_dot)?;
    let fc = focal_from_sums(&sums, tol)?;
    let c = &sums.terms;
    let half = S::lit(0.5);
    let p = sums.p.value();
    let sp = p.sqrt();
    let denom = sp * sums.q.value().sqrt();
    let s = sums.s_dot.value();
    let half_s_sq_rate = s * sums.s_dot.d(1);

    let plane = (c.d2.scale(p) - c.d1.scale(half * sums.p.d(1))).scale(fc.c1) - c.w.j().scale(fc.c2 * sp);
    let beta = base.value() + plane.scale(denom.recip());
    let lift = fc.c1 * (c.f2 * s * s - c.f1 * half_s_sq_rate) + fc.c2 * sp * sums.bend;
    let f_tilde = f.value() + lift / denom;
    Ok((beta, f_tilde, fc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frenet::{curvature_jet, frenet_general};
    use crate::plane::invariant_jets;
    use approx::assert_relative_eq;

    fn helix(t: f64) -> (Jet2<f64>, Jet<f64>) {
        let tj = Jet::variable(t, 3).unwrap();
        let (s, c) = tj.sin_cos();
        (Vec2::new(c, s), tj)
    }

    #[test]
    fn constant_curvature_has_zero_c2() {
        let tol = Tolerances::default();
        let (base, f) = helix(0.4);
        let jet = base.lift(f);
        let frame = frenet_general(&jet, &tol).unwrap();
        let fc = focal_curvatures_general(&curvature_jet(&jet).unwrap(), frame.speed, frame.tau, &tol).unwrap();
        assert_relative_eq!(fc.c1, 2.0, max_relative = 1e-14);
        assert!(fc.c2.abs() < 1e-13);

        let (s, k) = invariant_jets(&base).unwrap();
        let cyl = focal_curvatures_cylindrical(&base, &f, &k, &s, &tol).unwrap();
        assert_relative_eq!(cyl.c1, 2.0, max_relative = 1e-14);
        assert!(cyl.c2.abs() < 1e-13);
    }

    #[test]
    fn planar_curve_has_no_focal_c2() {
        let tol = Tolerances::default();
        let (base, f) = helix(1.0);
        let flat = f.lift_const(3.0);
        let jet = base.lift(flat);
        let frame = frenet_general(&jet, &tol).unwrap();
        let kj = curvature_jet(&jet).unwrap();
        assert!(matches!(
            focal_curvatures_general(&kj, frame.speed, frame.tau, &tol),
            Err(Error::TorsionZero { .. })
        ));
        assert!(c2_from_radius_rate(&kj, frame.speed, frame.tau, &tol).is_err());
        let (s, k) = invariant_jets(&base).unwrap();
        assert!(matches!(
            focal_curvatures_cylindrical(&base, &flat, &k, &s, &tol),
            Err(Error::TorsionZero { .. })
        ));
    }

    #[test]
    fn focal_point_identity_and_helix_focal_curve() {
        let tol = Tolerances::default();
        let (base, f) = helix(0.0);
        let jet = base.lift(f);
        let frame = frenet_general(&jet, &tol).unwrap();
        let g = jet.value();
        assert_eq!(focal_point(g, &frame, 0.0, 0.0), g);
        // Focal curve of the unit-pitch helix is the helix of radius 1 on the same axis, mirrored.
        let c = focal_point(g, &frame, 2.0, 0.0);
        assert!((c - Vec3::new(-1.0, 0.0, 0.0)).max_abs() < 1e-14);

        let (s, k) = invariant_jets(&base).unwrap();
        let (beta, f_tilde, _) = generalized_focal(&base, &f, &k, &s, &tol).unwrap();
        assert!((beta - c.xy()).to_array().iter().all(|d| d.abs() < 1e-14));
        assert!((f_tilde - c.z).abs() < 1e-14);
    }

    #[test]
    fn order_requirements() {
        let tol = Tolerances::default();
        assert!(focal_curvatures_general(&Jet::constant(1.0, 0).unwrap(), 1.0, 1.0, &tol).is_err());
        let (base, f) = helix(0.2);
        let (s, k) = invariant_jets(&base).unwrap();
        assert!(focal_curvatures_cylindrical(&base, &f, &k.truncate(0).unwrap(), &s, &tol).is_err());
    }
}
