//! The curve catalog: epicycloids, hypocycloids and the planar projection of
//! the toroidal helix, with their torus-compatibility rules, cusp parameters
//! and closed-form heights.

use std::fmt;
use std::str::FromStr;

use crate::diffkit::Jet;
use crate::error::{Error, Result};
use crate::lift::{CylindricalLift, HeightBranch, TorusSpec};
use crate::plane::PlaneCurve;
use crate::vector::Vec2;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Epicycloid,
    Hypocycloid,
    HelixProjection,
}

/// A member of the catalog. `big_r` is the fixed circle, `r` the rolling one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilySpec<S> {
    Epicycloid { big_r: S, r: S },
    Hypocycloid { big_r: S, r: S },
    /// Projection of the helix winding `n` times around the tube of the torus `(a, b)`.
    HelixProjection { a: S, b: S, n: u32 },
}

/// Verdict of pairing a family with a torus.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusCompatibility<S> {
    pub constraint_ok: bool,
    /// Epicycloid reaches the outer equator: `R + 2r = a + b`.
    pub touches_outer: bool,
    /// Hypocycloid reaches the inner equator: `|2r − R| = a − b`.
    pub touches_inner: bool,
    /// Sorted cusp parameters over `[0, period]`, both endpoints included when cusped.
    pub cusp_params: Vec<S>,
    pub period: S,
}

impl<S: Scalar> TorusCompatibility<S> {
    /// Cusps over one period with the two endpoints counted once.
    pub fn distinct_cusps(&self) -> usize {
        let eps = S::lit(1e-9) * self.period;
        self.cusp_params.iter().filter(|&&c| c < self.period - eps).count()
    }
}

// Smallest q ≤ 10⁴ with m·q within 1e-9 of an integer.
fn closure_denominator<S: Scalar>(m: S) -> Result<u32> {
    for q in 1..=10_000u32 {
        let mq = m * S::from_u32(q).unwrap();
        if (mq - mq.round()).abs() <= S::lit(1e-9) * S::one().max(mq) {
            return Ok(q);
        }
    }
    Err(Error::InvalidParameters(format!("radius ratio {m} does not close within 10⁴ turns")))
}

impl<S: Scalar> FamilySpec<S> {
    pub fn epicycloid(big_r: S, r: S) -> Result<Self> {
        let spec = FamilySpec::Epicycloid { big_r, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn hypocycloid(big_r: S, r: S) -> Result<Self> {
        let spec = FamilySpec::Hypocycloid { big_r, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn helix_projection(torus: &TorusSpec<S>, n: u32) -> Result<Self> {
        let spec = FamilySpec::HelixProjection { a: torus.a(), b: torus.b(), n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Epicycloid { .. } => FamilyKind::Epicycloid,
            FamilySpec::Hypocycloid { .. } => FamilyKind::Hypocycloid,
            FamilySpec::HelixProjection { .. } => FamilyKind::HelixProjection,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameters(m));
        match *self {
            FamilySpec::Epicycloid { big_r, r } if !(big_r > S::zero() && r > S::zero()) => {
                bad(format!("epicycloid needs R, r > 0, got R = {big_r}, r = {r}"))
            }
            FamilySpec::Hypocycloid { big_r, r } if !(big_r > r && r > S::zero()) => {
                bad(format!("hypocycloid needs R > r > 0, got R = {big_r}, r = {r}"))
            }
            FamilySpec::HelixProjection { a, b, n } if !(a > S::zero() && b > S::zero() && n > 0) => {
                bad(format!("helix needs a, b, n > 0, got a = {a}, b = {b}, n = {n}"))
            }
            _ => Ok(()),
        }
    }

    /// Smallest `k` with the curve closing over `[0, 2kπ]`.
    pub fn period_multiplier(&self) -> Result<u32> {
        match *self {
            FamilySpec::Epicycloid { big_r, r } | FamilySpec::Hypocycloid { big_r, r } => {
                closure_denominator(r / big_r)
            }
            FamilySpec::HelixProjection { .. } => Ok(1),
        }
    }

    pub fn period(&self) -> Result<S> {
        Ok(S::lit(2.0) * S::PI() * S::from_u32(self.period_multiplier()?).unwrap())
    }

    /// Closed-form base curve on `[0, period]`.
    pub fn curve(&self) -> Result<PlaneCurve<S>> {
        self.validate()?;
        let period = self.period()?;
        let domain = (S::zero(), period);
        match *self {
            FamilySpec::Epicycloid { big_r, r } => {
                let m = r / big_r;
                PlaneCurve::new(format!("epicycloid R={big_r} r={r}"), domain, Some(period), move |t: Jet<S>| {
                    let (s1, c1) = t.scale(m).sin_cos();
                    let (s2, c2) = t.scale(S::one() + m).sin_cos();
                    let big = r + big_r;
                    Ok(Vec2::new(c1.scale(big) - c2.scale(r), s1.scale(big) - s2.scale(r)))
                })
            }
            FamilySpec::Hypocycloid { big_r, r } => {
                let m = r / big_r;
                PlaneCurve::new(format!("hypocycloid R={big_r} r={r}"), domain, Some(period), move |t: Jet<S>| {
                    let (s1, c1) = t.scale(S::one() - m).sin_cos();
                    let (s2, c2) = t.scale(m).sin_cos();
                    let arm = big_r - r;
                    Ok(Vec2::new(c1.scale(r) + c2.scale(arm), s2.scale(arm) - s1.scale(r)))
                })
            }
            FamilySpec::HelixProjection { a, b, n } => {
                let nf = S::from_u32(n).unwrap();
                PlaneCurve::new(format!("toroidal helix projection a={a} b={b} n={n}"), domain, Some(period), move |t: Jet<S>| {
                    let (s, c) = t.sin_cos();
                    let radius = t.scale(nf).cos().scale(b).offset(a);
                    Ok(Vec2::new(c * radius, s * radius))
                })
            }
        }
    }

    /// Compatibility with `torus` and the cusp inventory of the lifted curve.
    pub fn torus_compat(&self, torus: &TorusSpec<S>) -> Result<TorusCompatibility<S>> {
        let (a, b) = (torus.a(), torus.b());
        let eps = S::lit(1e-9) * (a + b);
        let close = |x: S, y: S| (x - y).abs() <= eps;
        let period = self.period()?;
        let q = self.period_multiplier()?;
        let two_pi = S::lit(2.0) * S::PI();
        let (ok, outer, inner) = match *self {
            FamilySpec::Epicycloid { big_r, r } => {
                let reach = big_r + S::lit(2.0) * r;
                (close(big_r, a - b) && reach <= a + b + eps, close(reach, a + b), false)
            }
            FamilySpec::Hypocycloid { big_r, r } => {
                let gap = (S::lit(2.0) * r - big_r).abs();
                (gap >= a - b - eps && big_r <= a + b + eps, false, close(gap, a - b))
            }
            FamilySpec::HelixProjection { a: ha, b: hb, .. } => {
                let ok = close(ha, a) && close(hb, b);
                return Ok(TorusCompatibility {
                    constraint_ok: ok,
                    touches_outer: false,
                    touches_inner: false,
                    cusp_params: Vec::new(),
                    period,
                });
            }
        };
        // Rolling-circle cusps sit at t = 2πj; touching the far equator adds t = π + 2πj.
        let mut cusps: Vec<S> = (0..=q).map(|j| two_pi * S::from_u32(j).unwrap()).collect();
        if outer || inner {
            cusps.extend((0..q).map(|j| S::PI() + two_pi * S::from_u32(j).unwrap()));
        }
        cusps.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(TorusCompatibility { constraint_ok: ok, touches_outer: outer, touches_inner: inner, cusp_params: cusps, period })
    }

    /// The lift of this family onto `torus`. Epicycloids and hypocycloids use
    /// the torus height on `branch`; the helix projection uses its own height
    /// `b·sin(nt)`, which stays on the torus through both sheets.
    pub fn lift(&self, torus: &TorusSpec<S>, branch: HeightBranch) -> Result<CylindricalLift<S>> {
        let base = self.curve()?;
        Ok(match *self {
            FamilySpec::HelixProjection { b, n, .. } => {
                let nf = S::from_u32(n).unwrap();
                let sign = branch.sign::<S>();
                CylindricalLift::with_height(base, move |t: Jet<S>| Ok(t.scale(nf).sin().scale(b * sign)))
                    .lying_on(*torus)
                    .labeled(format!("toroidal helix n={n}"))
            }
            _ => CylindricalLift::on_torus(base, *torus, branch),
        })
    }
}

/// Height of the lifted catalog curve in closed form, upper sheet. Named
/// ratios use their simplified radicands; other ratios use the general
/// `√(b² − (a − ‖α‖)²)` with `‖α‖²` written out in `cos t`.
pub fn toroidal_z_closed_form<S: Scalar>(spec: &FamilySpec<S>, torus: &TorusSpec<S>, t: S) -> Result<S> {
    let (a, b) = (torus.a(), torus.b());
    let c = t.cos();
    let l = S::lit;
    let rel = |x: S, y: S| (x - y).abs() <= l(1e-12) * y.abs();
    let sq = |x: S| x * x;
    let radicand = match *spec {
        FamilySpec::Epicycloid { big_r, r } if rel(big_r, r) => sq(a - r) - sq(a - r * (l(5.0) - l(4.0) * c).sqrt()),
        FamilySpec::Epicycloid { big_r, r } if rel(big_r, l(2.0) * r) => {
            sq(a - l(2.0) * r) - sq(a - r * (l(10.0) - l(6.0) * c).sqrt())
        }
        FamilySpec::Epicycloid { big_r, r } => {
            let rho2 = sq(r + big_r) + r * r - l(2.0) * r * (r + big_r) * c;
            sq(b) - sq(a - rho2.sqrt())
        }
        FamilySpec::Hypocycloid { big_r, r } if rel(big_r, l(3.0) * r) => {
            // written with the deltoid scale r' = 2r, so R = 3r'/2
            let rp = l(2.0) * r;
            sq(l(1.5) * rp - a) - sq(a - l(0.5) * rp * (l(5.0) + l(4.0) * c).sqrt())
        }
        FamilySpec::Hypocycloid { big_r, r } if rel(big_r, l(4.0) * r) => {
            sq(l(4.0) * r - a) - sq(a - r * (l(10.0) + l(6.0) * c).sqrt())
        }
        FamilySpec::Hypocycloid { big_r, r } => {
            let rho2 = sq(big_r - r) + l(2.0) * r * (big_r - r) * c + r * r;
            sq(b) - sq(a - rho2.sqrt())
        }
        FamilySpec::HelixProjection { b, n, .. } => return Ok(b * (t * S::from_u32(n).unwrap()).sin()),
    };
    if !(radicand > S::zero()) {
        return Err(Error::TorusDomain { t: t.as_f64(), residual: radicand.as_f64() });
    }
    Ok(radicand.sqrt())
}

/// The focal curve of the toroidal helix `(x_β, y_β, f̃)` in closed form.
pub fn helix_focal_closed_form<S: Scalar>(a: S, b: S, n: u32, t: S) -> Result<(S, S, S)> {
    let l = S::lit;
    let nf = S::from_u32(n).unwrap();
    let n2 = nf * nf;
    let n4 = n2 * n2;
    let (st, ct) = t.sin_cos();
    let (snt, cnt) = (nf * t).sin_cos();
    let c2nt = (l(2.0) * nf * t).cos();
    let c3nt = (l(3.0) * nf * t).cos();

    let lead = l(4.0) * a * a * (n2 - S::one()) - b * b * (l(8.0) * n4 + l(13.0) * n2 + l(3.0));
    let tail_a = l(4.0) * a * (n4 - S::one());
    let tail_b = l(4.0) * a * (l(2.0) * n2 + S::one());
    let tail_c = b * (n2 - S::one());
    let den = lead * cnt + b * (tail_a - tail_b * c2nt + tail_c * c3nt);
    let den_scale = lead.abs() + b * (tail_a.abs() + tail_b.abs() + tail_c.abs());
    if !(den.abs() > l(1e-12) * den_scale) {
        return Err(Error::Singular { t: t.as_f64(), what: "helix focal denominator vanishes" });
    }

    let k = l(4.0) * a * b * n2;
    let common = a * (n2 - S::one()) - b * (l(2.0) * n2 + S::one()) * cnt;
    let twist = l(3.0) * b * nf * snt;
    let x = k * (ct * common + twist * st) / den;
    let y = k * (st * common - twist * ct) / den;
    let z = l(2.0)
        * a
        * snt
        * (-l(2.0) * a * a * (n2 - S::one()) + l(4.0) * a * b * (l(2.0) * n2 + S::one()) * cnt
            - b * b * (n2 - S::one()) * c2nt
            + b * b * (l(11.0) * n2 + S::one()))
        / den;
    Ok((x, y, z))
}

/// Named parameter sets reproducing the catalog's worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    CardioidStrict,
    CardioidTouch,
    NephroidStrict,
    NephroidTouch,
    DeltoidStrict,
    DeltoidTouch,
    AstroidStrict,
    AstroidTouch,
    Helix,
}

/// A preset resolved to concrete numbers.
#[derive(Debug, Clone)]
pub struct PresetInstance<S> {
    pub preset: Preset,
    pub spec: FamilySpec<S>,
    pub torus: TorusSpec<S>,
}

impl Preset {
    pub const ALL: [Preset; 9] = [
        Preset::CardioidStrict,
        Preset::CardioidTouch,
        Preset::NephroidStrict,
        Preset::NephroidTouch,
        Preset::DeltoidStrict,
        Preset::DeltoidTouch,
        Preset::AstroidStrict,
        Preset::AstroidTouch,
        Preset::Helix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::CardioidStrict => "cardioid-strict",
            Preset::CardioidTouch => "cardioid-touch",
            Preset::NephroidStrict => "nephroid-strict",
            Preset::NephroidTouch => "nephroid-touch",
            Preset::DeltoidStrict => "deltoid-strict",
            Preset::DeltoidTouch => "deltoid-touch",
            Preset::AstroidStrict => "astroid-strict",
            Preset::AstroidTouch => "astroid-touch",
            Preset::Helix => "helix",
        }
    }

    /// One-line description of the ratios, in terms of the rolling radius `r`.
    pub fn describe(self) -> &'static str {
        match self {
            Preset::CardioidStrict => "epicycloid R = r, torus a = 4r, b = 3r (b = 3a/4)",
            Preset::CardioidTouch => "epicycloid R = r, torus a = 2r, b = r (a = 2b)",
            Preset::NephroidStrict => "epicycloid R = 2r, torus a = 6r, b = 4r (b = 2a/3)",
            Preset::NephroidTouch => "epicycloid R = 2r, torus a = 3r, b = r (a = 3b)",
            Preset::DeltoidStrict => "hypocycloid R = 3r, torus a = 9r/5, b = 6r/5 (b = 2a/3)",
            Preset::DeltoidTouch => "hypocycloid R = 3r, torus a = 2r, b = r (b = a/2)",
            Preset::AstroidStrict => "hypocycloid R = 4r, torus a = 8r/3, b = 4r/3 (b = a/2)",
            Preset::AstroidTouch => "hypocycloid R = 4r, torus a = 3r, b = r (b = a/3)",
            Preset::Helix => "toroidal helix projection, default a = 4, b = 1, n = 12",
        }
    }

    pub fn is_touching(self) -> bool {
        matches!(
            self,
            Preset::CardioidTouch | Preset::NephroidTouch | Preset::DeltoidTouch | Preset::AstroidTouch
        )
    }

    /// The strict counterpart of a touching preset.
    pub fn strict_partner(self) -> Option<Preset> {
        Some(match self {
            Preset::CardioidTouch => Preset::CardioidStrict,
            Preset::NephroidTouch => Preset::NephroidStrict,
            Preset::DeltoidTouch => Preset::DeltoidStrict,
            Preset::AstroidTouch => Preset::AstroidStrict,
            _ => return None,
        })
    }

    /// Resolves the preset with rolling radius `r` (ignored by the helix) and
    /// helix parameters `(a, b, n)` (ignored by the rolling-circle presets).
    pub fn instance<S: Scalar>(self, r: S, helix: (S, S, u32)) -> Result<PresetInstance<S>> {
        let l = S::lit;
        let (spec, torus) = match self {
            Preset::CardioidStrict => (FamilySpec::epicycloid(r, r)?, TorusSpec::new(l(4.0) * r, l(3.0) * r)?),
            Preset::CardioidTouch => (FamilySpec::epicycloid(r, r)?, TorusSpec::new(l(2.0) * r, r)?),
            Preset::NephroidStrict => {
                (FamilySpec::epicycloid(l(2.0) * r, r)?, TorusSpec::new(l(6.0) * r, l(4.0) * r)?)
            }
            Preset::NephroidTouch => (FamilySpec::epicycloid(l(2.0) * r, r)?, TorusSpec::new(l(3.0) * r, r)?),
            Preset::DeltoidStrict => (
                FamilySpec::hypocycloid(l(3.0) * r, r)?,
                TorusSpec::new(l(9.0) * r / l(5.0), l(6.0) * r / l(5.0))?,
            ),
            Preset::DeltoidTouch => (FamilySpec::hypocycloid(l(3.0) * r, r)?, TorusSpec::new(l(2.0) * r, r)?),
            Preset::AstroidStrict => (
                FamilySpec::hypocycloid(l(4.0) * r, r)?,
                TorusSpec::new(l(8.0) * r / l(3.0), l(4.0) * r / l(3.0))?,
            ),
            Preset::AstroidTouch => (FamilySpec::hypocycloid(l(4.0) * r, r)?, TorusSpec::new(l(3.0) * r, r)?),
            Preset::Helix => {
                let torus = TorusSpec::new(helix.0, helix.1)?;
                (FamilySpec::helix_projection(&torus, helix.2)?, torus)
            }
        };
        Ok(PresetInstance { preset: self, spec, torus })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown preset {s:?}")))
    }
}

impl<S: Scalar> PresetInstance<S> {
    pub fn compat(&self) -> Result<TorusCompatibility<S>> {
        self.spec.torus_compat(&self.torus)
    }

    pub fn lift(&self, branch: HeightBranch) -> Result<CylindricalLift<S>> {
        Ok(self.spec.lift(&self.torus, branch)?.labeled(self.preset.name()))
    }
}
