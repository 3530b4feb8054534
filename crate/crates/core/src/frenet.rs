//! Frenet-Serret data of a space curve.
//!
//! [`frenet_general`] works from the definitions on `γ̇, γ̈, γ⃛`. The
//! `*_cylindrical` functions express the same quantities for a lift
//! `γ = α + f·e₃` through the base curve alone: its derivatives, signed
//! curvature `K` and arc-length prime `ṡ`, plus the height `f`.

use crate::diffkit::{Jet, Jet2, Jet3};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;
use crate::vector::{Vec2, Vec3};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetData<S> {
    pub tangent: Vec3<S>,
    pub normal: Vec3<S>,
    pub binormal: Vec3<S>,
    pub kappa: S,
    pub tau: S,
    /// `‖γ̇‖`
    pub speed: S,
}

fn need_order<S: Scalar>(j: &Jet<S>, min: usize) -> Result<()> {
    if j.order() < min {
        return Err(Error::OrderOutOfRange { order: j.order(), max: min });
    }
    Ok(())
}

fn check_regular<S: Scalar>(speed: S, tol: &Tolerances<S>) -> Result<()> {
    if !(speed > tol.reg * tol.speed_scale) {
        return Err(Error::NonRegular { t: f64::NAN, speed: speed.as_f64() });
    }
    Ok(())
}

fn check_flat<S: Scalar>(kappa: S, cross: S, tol: &Tolerances<S>) -> Result<()> {
    if !(kappa * tol.length_scale > tol.flat) {
        return Err(Error::Flat { t: f64::NAN, cross: cross.as_f64() });
    }
    Ok(())
}

/// Frame, curvature and torsion from a spatial jet of order ≥ 3.
pub fn frenet_general<S: Scalar>(jet: &Jet3<S>, tol: &Tolerances<S>) -> Result<FrenetData<S>> {
    need_order(&jet.x, 3)?;
    let (d1, d2, d3) = (jet.nth(1), jet.nth(2), jet.nth(3));
    let speed = d1.norm();
    check_regular(speed, tol)?;
    let cross = d1.cross(d2);
    let cross_norm = cross.norm();
    let kappa = cross_norm / (speed * speed * speed);
    check_flat(kappa, cross_norm, tol)?;
    let principal = cross.cross(d1);
    Ok(FrenetData {
        tangent: d1.scale(speed.recip()),
        normal: principal.scale(principal.norm().recip()),
        binormal: cross.scale(cross_norm.recip()),
        kappa,
        tau: d1.triple(d2, d3) / (cross_norm * cross_norm),
        speed,
    })
}

/// Jet of `κ = ‖γ̇ × γ̈‖ / ‖γ̇‖³` from a spatial jet of order `n ≥ 2`; order `n − 2`.
pub fn curvature_jet<S: Scalar>(jet: &Jet3<S>) -> Result<Jet<S>> {
    let v = jet.derivative()?;
    let acc = v.derivative()?;
    let v = v.truncate(acc.order())?;
    let cross = v.cross(acc);
    let num = cross.dot(cross).sqrt().map_err(|_| Error::Flat { t: f64::NAN, cross: 0.0 })?;
    let speed = v.dot(v).sqrt().map_err(|_| Error::NonRegular { t: f64::NAN, speed: 0.0 })?;
    num.checked_div(&(speed * speed * speed))
}

/// The recurring pieces of the cylindrical-lift formulas at one parameter.
#[derive(Debug, Clone, Copy)]
pub struct CylinderTerms<S> {
    pub d1: Vec2<S>,
    pub d2: Vec2<S>,
    pub d3: Vec2<S>,
    pub f1: S,
    pub f2: S,
    pub f3: S,
    /// `⟨α̈, Jα̇⟩ = ṡ³K`
    pub bend: S,
    /// `f̈α̇ − ḟα̈`
    pub w: Vec2<S>,
}

impl<S: Scalar> CylinderTerms<S> {
    pub fn new(base: &Jet2<S>, f: &Jet<S>) -> Result<Self> {
        need_order(&base.x, 3)?;
        need_order(f, 3)?;
        let (d1, d2, d3) = (base.nth(1), base.nth(2), base.nth(3));
        let (f1, f2, f3) = (f.d(1), f.d(2), f.d(3));
        Ok(CylinderTerms { d1, d2, d3, f1, f2, f3, bend: d2.dot(d1.j()), w: d1.scale(f2) - d2.scale(f1) })
    }

    /// `⟨α̇, α̇⟩ + ḟ² = ‖γ̇‖²`
    pub fn speed_sq(&self) -> S {
        self.d1.dot(self.d1) + self.f1 * self.f1
    }

    /// `⟨α̈, Jα̇⟩² + ‖f̈α̇ − ḟα̈‖² = ‖γ̇ × γ̈‖²`
    pub fn cross_sq(&self) -> S {
        self.bend * self.bend + self.w.dot(self.w)
    }

    /// `f⃛⟨α̈,Jα̇⟩ + f̈⟨−Jα̇,α⃛⟩ + ḟ⟨Jα̈,α⃛⟩`, the triple product `(γ̇ γ̈ γ⃛)`.
    pub fn triple(&self) -> S {
        self.f3 * self.bend + self.f2 * (-self.d1.j()).dot(self.d3) + self.f1 * self.d2.j().dot(self.d3)
    }
}

/// Curvature of the lift from the base curve and height.
pub fn kappa_cylindrical<S: Scalar>(base: &Jet2<S>, f: &Jet<S>, tol: &Tolerances<S>) -> Result<S> {
    let c = CylinderTerms::new(base, f)?;
    let speed = c.speed_sq().sqrt();
    check_regular(speed, tol)?;
    Ok(c.cross_sq().sqrt() / (speed * speed * speed))
}

/// Torsion of the lift from the base curve and height.
pub fn tau_cylindrical<S: Scalar>(base: &Jet2<S>, f: &Jet<S>, tol: &Tolerances<S>) -> Result<S> {
    let c = CylinderTerms::new(base, f)?;
    let speed = c.speed_sq().sqrt();
    check_regular(speed, tol)?;
    let q = c.cross_sq();
    check_flat(q.sqrt() / (speed * speed * speed), q.sqrt(), tol)?;
    Ok(c.triple() / q)
}

/// Frame of the lift in terms of `α`, `f`, `e₃`, the signed curvature `K`
/// and the arc-length prime `ṡ` of the base.
///
/// `T = (α̇ + ḟe₃)/√(ṡ²+ḟ²)`,
/// `N = ((ṡ²+ḟ²)α̈ − ½(ṡ²+ḟ²)˙α̇ + (f̈ṡ² − ḟ(ṡ²/2)˙)e₃) / (√(ṡ²+ḟ²)·√(ṡ⁶K² + ‖f̈α̇−ḟα̈‖²))`,
/// `B = (−J(f̈α̇−ḟα̈) + ṡ³K·e₃) / √(ṡ⁶K² + ‖f̈α̇−ḟα̈‖²)`.
/// The dotted sums are differentiated by jet propagation.
pub fn frame_cylindrical<S: Scalar>(
    base: &Jet2<S>,
    f: &Jet<S>,
    curvature: S,
    s_dot: S,
    tol: &Tolerances<S>,
) -> Result<FrenetData<S>> {
    let c = CylinderTerms::new(base, f)?;
    check_regular(s_dot, tol)?;
    let half = S::lit(0.5);
    // (ṡ²)˙ and (ḟ²)˙ from the jets of ⟨α̇,α̇⟩ and ḟ².
    let vel = base.derivative()?;
    let fdot = f.derivative()?;
    let s_sq_rate = vel.dot(vel).d(1);
    let p_rate = s_sq_rate + (fdot * fdot).d(1);

    let s2 = s_dot * s_dot;
    let p = s2 + c.f1 * c.f1;
    let bend = s2 * s_dot * curvature;
    let q = bend * bend + c.w.dot(c.w);
    let (sp, sq) = (p.sqrt(), q.sqrt());
    let kappa = sq / (p * sp);
    check_flat(kappa, sq, tol)?;

    let tangent = c.d1.lift(c.f1).scale(sp.recip());
    let n_plane = c.d2.scale(p) - c.d1.scale(half * p_rate);
    let n_z = c.f2 * s2 - c.f1 * (half * s_sq_rate);
    let normal = n_plane.lift(n_z).scale((sp * sq).recip());
    let binormal = (-c.w.j()).lift(bend).scale(sq.recip());
    Ok(FrenetData { tangent, normal, binormal, kappa, tau: c.triple() / q, speed: sp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn helix_jet(t: f64) -> (Jet2<f64>, Jet<f64>) {
        let tj = Jet::variable(t, 4).unwrap();
        let (s, c) = tj.sin_cos();
        (Vec2::new(c, s), tj)
    }

    #[test]
    fn circular_helix_constants() {
        let tol = Tolerances::default();
        for &t in &[0.0, 0.9, 2.0, -4.0] {
            let (base, f) = helix_jet(t);
            let g = frenet_general(&base.lift(f), &tol).unwrap();
            assert_relative_eq!(g.kappa, 0.5, max_relative = 1e-14);
            assert_relative_eq!(g.tau, 0.5, max_relative = 1e-14);
            assert_relative_eq!(kappa_cylindrical(&base, &f, &tol).unwrap(), 0.5, max_relative = 1e-14);
            assert_relative_eq!(tau_cylindrical(&base, &f, &tol).unwrap(), 0.5, max_relative = 1e-14);
        }
    }

    #[test]
    fn circular_helix_frame_at_zero() {
        let tol = Tolerances::default();
        let (base, f) = helix_jet(0.0);
        let r = 2f64.sqrt().recip();
        let frame = frame_cylindrical(&base, &f, 1.0, 1.0, &tol).unwrap();
        let want_t = Vec3::new(0.0, r, r);
        let want_n = Vec3::new(-1.0, 0.0, 0.0);
        let want_b = Vec3::new(0.0, -r, r);
        for (got, want) in [(frame.tangent, want_t), (frame.normal, want_n), (frame.binormal, want_b)] {
            assert!((got - want).max_abs() < 1e-15, "{got:?} vs {want:?}");
        }
        let general = frenet_general(&base.lift(f), &tol).unwrap();
        assert!((general.binormal - want_b).max_abs() < 1e-15);
    }

    #[test]
    fn flat_lift_is_planar() {
        let tol = Tolerances::default();
        let (base, f) = helix_jet(0.7);
        let zero = f.lift_const(0.25);
        let g = frenet_general(&base.lift(zero), &tol).unwrap();
        assert_eq!(g.tau, 0.0);
        assert_eq!(tau_cylindrical(&base, &zero, &tol).unwrap(), 0.0);
        let frame = frame_cylindrical(&base, &zero, 1.0, 1.0, &tol).unwrap();
        assert!((frame.binormal - Vec3::new(0.0, 0.0, 1.0)).max_abs() < 1e-15);
        // the cylindrical curvature collapses to |K| on a flat lift
        assert_relative_eq!(kappa_cylindrical(&base, &zero, &tol).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn straight_line_is_flat() {
        let tol = Tolerances::default();
        let t = Jet::variable(0.3, 3).unwrap();
        let line = Vec3::new(t, t.scale(2.0), t.lift_const(1.0));
        assert!(matches!(frenet_general(&line, &tol), Err(Error::Flat { .. })));
        let still = Vec3::new(t.lift_const(1.0), t.lift_const(0.0), t.lift_const(0.0));
        assert!(matches!(frenet_general(&still, &tol), Err(Error::NonRegular { .. })));
        assert!(frenet_general(&line.truncate(2).unwrap(), &tol).is_err());
    }

    #[test]
    fn curvature_jet_of_helix_is_constant() {
        let (base, f) = helix_jet(1.3);
        let k = curvature_jet(&base.lift(f)).unwrap();
        assert_eq!(k.order(), 2);
        assert_relative_eq!(k.value(), 0.5, max_relative = 1e-14);
        assert!(k.d(1).abs() < 1e-14 && k.d(2).abs() < 1e-13);
    }
}
