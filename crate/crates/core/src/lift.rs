//! Cylindrical lifts `γ(t) = α(t) + f(t)·e₃` and the torus height function.

use std::fmt;
use std::sync::Arc;

use crate::diffkit::{Jet, Jet2, Jet3};
use crate::error::{Error, Result};
use crate::plane::PlaneCurve;
use crate::tolerances::Tolerances;
use crate::vector::Vec3;
use crate::Scalar;

/// Torus `(a − √(x²+y²))² + z² = b²` with `a > b > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusSpec<S> {
    a: S,
    b: S,
}

impl<S: Scalar> TorusSpec<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        if !(b > S::zero() && a > b && a.is_finite()) {
            return Err(Error::InvalidParameters(format!("torus needs a > b > 0, got a = {a}, b = {b}")));
        }
        Ok(TorusSpec { a, b })
    }

    pub fn a(&self) -> S {
        self.a
    }

    pub fn b(&self) -> S {
        self.b
    }

    /// `(a − √(x²+y²))² + z² − b²`; zero exactly on the surface.
    pub fn residual(&self, p: Vec3<S>) -> S {
        let d = self.a - p.x.hypot(p.y);
        d * d + p.z * p.z - self.b * self.b
    }

    /// Width of the guard band kept clear of the annulus boundary, in units of `x² + y²`.
    pub fn guard(&self, tol: &Tolerances<S>) -> S {
        let outer = self.a + self.b;
        tol.dom * outer * outer
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeightBranch {
    #[default]
    Upper,
    Lower,
}

impl HeightBranch {
    pub fn sign<S: Scalar>(self) -> S {
        match self {
            HeightBranch::Upper => S::one(),
            HeightBranch::Lower => -S::one(),
        }
    }
}

/// Jet of `f = ±√(b² − (a − √(x²+y²))²)` along the base jet.
///
/// Fails with [`Error::TorusDomain`] unless `x² + y²` lies inside the open
/// annulus `((a−b)², (a+b)²)` shrunk by the `dom` guard.
pub fn torus_height_jet<S: Scalar>(
    torus: &TorusSpec<S>,
    base: &Jet2<S>,
    branch: HeightBranch,
    tol: &Tolerances<S>,
) -> Result<Jet<S>> {
    let (a, b) = (torus.a, torus.b);
    let rho2 = base.dot(*base);
    let r2 = rho2.value();
    let guard = torus.guard(tol);
    let inner = (a - b) * (a - b);
    let outer = (a + b) * (a + b);
    let domain_err = || {
        let d = a - r2.max(S::zero()).sqrt();
        Error::TorusDomain { t: f64::NAN, residual: (b * b - d * d).as_f64() }
    };
    if !(r2 > inner + guard && r2 < outer - guard) {
        return Err(domain_err());
    }
    let rho = rho2.sqrt()?;
    let gap = rho.lift_const(a) - rho;
    let margin = gap.lift_const(b * b) - gap * gap;
    let f = margin.sqrt().map_err(|_| domain_err())?;
    Ok(f.scale(branch.sign()))
}

type HeightFn<S> = dyn Fn(Jet<S>) -> Result<Jet<S>> + Send + Sync;

#[derive(Clone)]
pub enum Height<S> {
    Torus { torus: TorusSpec<S>, branch: HeightBranch },
    Explicit(Arc<HeightFn<S>>),
}

/// A plane curve lifted onto its right generalized cylinder.
#[derive(Clone)]
pub struct CylindricalLift<S> {
    base: PlaneCurve<S>,
    height: Height<S>,
    surface: Option<TorusSpec<S>>,
    label: String,
}

impl<S: Scalar> fmt::Debug for CylindricalLift<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CylindricalLift")
            .field("label", &self.label)
            .field("base", &self.base)
            .field("surface", &self.surface)
            .finish_non_exhaustive()
    }
}

impl<S: Scalar> CylindricalLift<S> {
    /// Intersection of the cylinder over `base` with a torus, on a fixed sheet.
    pub fn on_torus(base: PlaneCurve<S>, torus: TorusSpec<S>, branch: HeightBranch) -> Self {
        let label = format!("{} on torus", base.label());
        CylindricalLift { base, height: Height::Torus { torus, branch }, surface: Some(torus), label }
    }

    /// Lift with a user-supplied height; `f` receives the parameter jet.
    pub fn with_height<F>(base: PlaneCurve<S>, f: F) -> Self
    where
        F: Fn(Jet<S>) -> Result<Jet<S>> + Send + Sync + 'static,
    {
        let label = format!("{} lifted", base.label());
        CylindricalLift { base, height: Height::Explicit(Arc::new(f)), surface: None, label }
    }

    /// Declares that the lift lies on `torus` (for explicit heights that do).
    pub fn lying_on(mut self, torus: TorusSpec<S>) -> Self {
        self.surface = Some(torus);
        self
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn base(&self) -> &PlaneCurve<S> {
        &self.base
    }

    pub fn height(&self) -> &Height<S> {
        &self.height
    }

    /// Torus the lift lies on, if any.
    pub fn surface(&self) -> Option<&TorusSpec<S>> {
        self.surface.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Tolerances scaled to the lift: the length scale includes the height range.
    pub fn tolerances(&self) -> Tolerances<S> {
        let mut tol = self.base.tolerances();
        if let Some(t) = self.surface {
            tol.length_scale = tol.length_scale.max(t.a + t.b);
        }
        tol
    }

    /// Base jet and height jet at `t`, both of the requested order.
    pub fn jets(&self, t: S, order: usize, tol: &Tolerances<S>) -> Result<(Jet2<S>, Jet<S>)> {
        let base = self.base.eval_jet2(t, order)?;
        let f = match &self.height {
            Height::Torus { torus, branch } => torus_height_jet(torus, &base, *branch, tol),
            Height::Explicit(h) => h(Jet::variable(t, order)?),
        }
        .map_err(|e| e.at(t.as_f64()))?;
        Ok((base, f))
    }

    pub fn lift_jet3(&self, t: S, order: usize, tol: &Tolerances<S>) -> Result<Jet3<S>> {
        let (base, f) = self.jets(t, order, tol)?;
        Ok(base.lift(f))
    }

    pub fn point(&self, t: S, tol: &Tolerances<S>) -> Result<Vec3<S>> {
        Ok(self.lift_jet3(t, 0, tol)?.value())
    }
}
