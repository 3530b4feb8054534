//! Cross-path and oracle checks over a sampled lift. Each check reports its
//! largest deviation, the tolerance it was held to, and where it peaked.

use crate::diffkit::fd_jet;
use crate::error::Result;
use crate::families::{helix_focal_closed_form, toroidal_z_closed_form, FamilySpec, TorusCompatibility};
use crate::lift::{CylindricalLift, HeightBranch, TorusSpec};
use crate::tolerances::Tolerances;
use crate::pipeline::{detect_cusps, PointData, PointEval, PointStatus, Sampler};
use crate::vector::Vec3;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub max_dev: f64,
    pub tol: f64,
    /// Parameter of the largest deviation.
    pub worst_t: Option<f64>,
    pub samples: usize,
    /// `samples > 0` and `max_dev ≤ tol`.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub target: String,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Failing check with the largest deviation-to-tolerance ratio.
    pub fn worst(&self) -> Option<&CheckOutcome> {
        let ratio = |c: &CheckOutcome| if c.tol > 0.0 { c.max_dev / c.tol } else { f64::INFINITY };
        self.checks.iter().filter(|c| !c.pass).max_by(|a, b| ratio(a).total_cmp(&ratio(b)))
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tolerances of the individual checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckTolerances {
    pub frenet_kappa: f64,
    pub frenet_tau: f64,
    pub frenet_frame: f64,
    pub focal_c1: f64,
    pub focal_c2: f64,
    pub c2_forms: f64,
    pub focal_assembly: f64,
    pub projection: f64,
    pub sphere_tangent: f64,
    pub sphere_radius: f64,
    pub sphere_contact: f64,
    pub torus_membership: f64,
    pub closed_form_z: f64,
    pub helix_closed_form: f64,
    pub fd_order1: f64,
    pub fd_order2: f64,
    pub fd_order3: f64,
    pub cusp_inventory: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        CheckTolerances {
            frenet_kappa: 1e-9,
            frenet_tau: 1e-9,
            frenet_frame: 1e-9,
            focal_c1: 1e-9,
            focal_c2: 1e-9,
            c2_forms: 1e-9,
            focal_assembly: 1e-9,
            projection: 1e-10,
            sphere_tangent: 1e-10,
            sphere_radius: 1e-10,
            sphere_contact: 1e-6,
            torus_membership: 1e-10,
            closed_form_z: 1e-10,
            helix_closed_form: 1e-8,
            fd_order1: 1e-6,
            fd_order2: 1e-6,
            fd_order3: 1e-3,
            cusp_inventory: 1e-6,
        }
    }
}

impl CheckTolerances {
    pub const KEYS: [&'static str; 18] = [
        "frenet_kappa",
        "frenet_tau",
        "frenet_frame",
        "focal_c1",
        "focal_c2",
        "c2_forms",
        "focal_assembly",
        "projection",
        "sphere_tangent",
        "sphere_radius",
        "sphere_contact",
        "torus_membership",
        "closed_form_z",
        "helix_closed_form",
        "fd_order1",
        "fd_order2",
        "fd_order3",
        "cusp_inventory",
    ];

    fn slot(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "frenet_kappa" => &mut self.frenet_kappa,
            "frenet_tau" => &mut self.frenet_tau,
            "frenet_frame" => &mut self.frenet_frame,
            "focal_c1" => &mut self.focal_c1,
            "focal_c2" => &mut self.focal_c2,
            "c2_forms" => &mut self.c2_forms,
            "focal_assembly" => &mut self.focal_assembly,
            "projection" => &mut self.projection,
            "sphere_tangent" => &mut self.sphere_tangent,
            "sphere_radius" => &mut self.sphere_radius,
            "sphere_contact" => &mut self.sphere_contact,
            "torus_membership" => &mut self.torus_membership,
            "closed_form_z" => &mut self.closed_form_z,
            "helix_closed_form" => &mut self.helix_closed_form,
            "fd_order1" => &mut self.fd_order1,
            "fd_order2" => &mut self.fd_order2,
            "fd_order3" => &mut self.fd_order3,
            "cusp_inventory" => &mut self.cusp_inventory,
            _ => return None,
        })
    }

    /// Sets a check tolerance; `false` if the key is not a check name.
    pub fn set(&mut self, key: &str, value: f64) -> bool {
        match self.slot(key) {
            Some(s) => {
                *s = value;
                true
            }
            None => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Interior samples for the cross-path and identity checks.
    pub samples: usize,
    /// Interior samples for the finite-difference kernel check.
    pub fd_samples: usize,
    /// Uniform samples for the helix closed form.
    pub helix_samples: usize,
    /// Scan points per `2π` for cusp detection.
    pub cusp_scan: usize,
    /// Include the analytic-jet vs finite-difference comparison.
    pub fd_kernel: bool,
    pub tol: CheckTolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { samples: 512, fd_samples: 64, helix_samples: 1000, cusp_scan: 4096, fd_kernel: true, tol: CheckTolerances::default() }
    }
}

/// Catalog context enabling the family-specific checks.
#[derive(Debug, Clone)]
pub struct FamilyContext<S> {
    pub spec: FamilySpec<S>,
    pub torus: TorusSpec<S>,
    pub compat: TorusCompatibility<S>,
    /// Sheet of the lift; closed forms are mirrored in `z` on the lower one.
    pub branch: HeightBranch,
}

#[derive(Debug, Clone)]
pub struct VerifyTarget<S: Scalar> {
    pub sampler: Sampler<S>,
    pub range: (S, S),
    pub family: Option<FamilyContext<S>>,
}

struct Acc {
    name: &'static str,
    tol: f64,
    max: f64,
    worst_t: Option<f64>,
    n: usize,
}

impl Acc {
    fn new(name: &'static str, tol: f64) -> Self {
        Acc { name, tol, max: 0.0, worst_t: None, n: 0 }
    }

    fn push(&mut self, t: f64, dev: f64) {
        let dev = if dev.is_nan() { f64::INFINITY } else { dev };
        self.n += 1;
        if self.worst_t.is_none() || dev > self.max {
            self.max = dev;
            self.worst_t = Some(t);
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            max_dev: self.max,
            tol: self.tol,
            worst_t: self.worst_t,
            samples: self.n,
            pass: self.n > 0 && self.max <= self.tol,
        }
    }
}

fn rel<S: Scalar>(x: S, y: S) -> f64 {
    ((x - y).abs() / y.abs()).as_f64()
}

fn vec_dev<S: Scalar>(x: Vec3<S>, y: Vec3<S>) -> f64 {
    (x - y).max_abs().as_f64()
}

/// `n` midpoints of a uniform partition of `(t0, t1)`.
pub fn interior_grid<S: Scalar>(t0: S, t1: S, n: usize) -> Vec<S> {
    let step = (t1 - t0) / S::from_usize(n).unwrap();
    (0..n).map(|i| t0 + step * (S::from_usize(i).unwrap() + S::lit(0.5))).collect()
}

impl<S: Scalar> VerifyTarget<S> {
    /// Target for a catalog curve on `torus`, sampled over one period with
    /// the family's cusps guarded.
    pub fn for_family(spec: FamilySpec<S>, torus: TorusSpec<S>, branch: HeightBranch) -> Result<Self> {
        let lift = spec.lift(&torus, branch)?;
        let compat = spec.torus_compat(&torus)?;
        let tol = lift.tolerances();
        Self::for_family_with(spec, torus, branch, lift, tol, compat)
    }

    /// As [`for_family`](Self::for_family) with an explicit lift and guards.
    pub fn for_family_with(
        spec: FamilySpec<S>,
        torus: TorusSpec<S>,
        branch: HeightBranch,
        lift: CylindricalLift<S>,
        tol: Tolerances<S>,
        compat: TorusCompatibility<S>,
    ) -> Result<Self> {
        let period = compat.period;
        let sampler = Sampler::new(lift, tol).with_cusps(compat.cusp_params.clone(), period);
        Ok(VerifyTarget { sampler, range: (S::zero(), period), family: Some(FamilyContext { spec, torus, compat, branch }) })
    }

    fn evals(&self, ts: &[S]) -> Result<Vec<PointEval<S>>> {
        let start = self.range.0;
        ts.iter().map(|&t| self.sampler.eval_at(t, start)).collect()
    }

    /// Runs every check that applies to the target.
    pub fn run(&self, cfg: &VerifyConfig) -> Result<Report> {
        let tol = &cfg.tol;
        let grid = interior_grid(self.range.0, self.range.1, cfg.samples);
        let evals = self.evals(&grid)?;
        let ok: Vec<(f64, &PointData<S>)> =
            evals.iter().filter_map(|p| p.data.as_ref().map(|d| (p.t.as_f64(), d))).collect();

        let mut checks = Vec::new();
        let mut skipped = Acc::new("interior_regular", 0.0);
        for p in &evals {
            let guarded = self.sampler.in_guard(p.t);
            skipped.push(p.t.as_f64(), if p.status == PointStatus::Ok || guarded { 0.0 } else { 1.0 });
        }
        checks.push(skipped.finish());
        checks.extend(self.cross_path(&ok, tol));
        checks.extend(self.sphere_checks(&ok, tol)?);
        if let Some(torus) = self.sampler.lift().surface() {
            let mut acc = Acc::new("torus_membership", tol.torus_membership);
            let b2 = torus.b() * torus.b();
            for &(t, d) in &ok {
                acc.push(t, (torus.residual(d.gamma).abs() / b2).as_f64());
            }
            checks.push(acc.finish());
        }
        if cfg.fd_kernel {
            checks.extend(self.fd_checks(cfg)?);
        }
        if let Some(fam) = &self.family {
            checks.extend(self.family_checks(fam, &ok, cfg)?);
        }
        Ok(Report { target: self.sampler.lift().label().to_string(), checks })
    }

    fn cross_path(&self, ok: &[(f64, &PointData<S>)], tol: &CheckTolerances) -> Vec<CheckOutcome> {
        let mut kappa = Acc::new("frenet_kappa", tol.frenet_kappa);
        let mut tau = Acc::new("frenet_tau", tol.frenet_tau);
        let mut frame = Acc::new("frenet_frame", tol.frenet_frame);
        let mut c1 = Acc::new("focal_c1", tol.focal_c1);
        let mut c2 = Acc::new("focal_c2", tol.focal_c2);
        let mut forms = Acc::new("c2_forms", tol.c2_forms);
        let mut assembly = Acc::new("focal_assembly", tol.focal_assembly);
        let mut projection = Acc::new("projection", tol.projection);
        for &(t, d) in ok {
            let (g, c) = (&d.frame, &d.frame_cyl);
            kappa.push(t, rel(c.kappa, g.kappa));
            tau.push(t, ((c.tau - g.tau).abs() / (S::one() + g.tau.abs())).as_f64());
            // N and B may differ by a simultaneous sign.
            let s = if c.normal.dot(g.normal) < S::zero() { -S::one() } else { S::one() };
            let dev = vec_dev(c.tangent, g.tangent)
                .max(vec_dev(c.normal.scale(s), g.normal))
                .max(vec_dev(c.binormal.scale(s), g.binormal));
            frame.push(t, dev);

            let (fg, fc) = (&d.focal_general, &d.focal);
            let radius = (fg.c1 * fg.c1 + fg.c2 * fg.c2).sqrt();
            c1.push(t, rel(fc.c1, fg.c1));
            c2.push(t, ((fc.c2 - fg.c2).abs() / radius).as_f64());
            forms.push(t, ((d.c2_rate - fg.c2).abs() / radius).as_f64());

            let thm = fc.beta.lift(fc.f_tilde);
            let scale = d.c_gamma_general.norm().max(self.sampler.tolerances().length_scale);
            assembly.push(t, ((d.c_gamma_general - thm).norm() / scale).as_f64());
            projection.push(t, ((fc.c_gamma - thm).norm() / fc.c_gamma.norm().max(self.sampler.tolerances().length_scale)).as_f64());
        }
        vec![kappa, tau, frame, c1, c2, forms, assembly, projection].into_iter().map(Acc::finish).collect()
    }

    fn sphere_checks(&self, ok: &[(f64, &PointData<S>)], tol: &CheckTolerances) -> Result<Vec<CheckOutcome>> {
        let mut tangent = Acc::new("sphere_tangent", tol.sphere_tangent);
        let mut radius = Acc::new("sphere_radius", tol.sphere_radius);
        let mut contact = Acc::new("sphere_contact", tol.sphere_contact);
        let lift = self.sampler.lift();
        let gtol = self.sampler.tolerances();
        let l = gtol.length_scale;
        let h = S::lit(1e-3) * l / gtol.speed_scale;
        let (c8, c12, c16, c30) = (S::lit(8.0), S::lit(12.0), S::lit(16.0), S::lit(30.0));
        for &(t, d) in ok {
            let ts = S::from_f64(t).unwrap();
            let centre = d.c_gamma_general;
            let arm = centre - d.gamma;
            let r2 = d.focal_general.c1 * d.focal_general.c1 + d.focal_general.c2 * d.focal_general.c2;
            tangent.push(t, (arm.dot(d.frame.tangent).abs() / arm.norm()).as_f64());
            radius.push(t, rel(arm.dot(arm), r2));

            // ‖γ(u) − C‖² − r² less its constant value at u = t, written through
            // Δ = γ(u) − γ(t) so that a large sphere does not swamp the differences.
            let g = |u: S| -> Result<S> {
                let delta = lift.point(u, gtol)? - d.gamma;
                Ok(delta.dot(delta) - S::lit(2.0) * delta.dot(arm))
            };
            let (gm2, gm1, g0, gp1, gp2) = (g(ts - h - h)?, g(ts - h)?, S::zero(), g(ts + h)?, g(ts + h + h)?);
            let d1 = (gm2 - c8 * gm1 + c8 * gp1 - gp2) / (c12 * h);
            let d2 = (-gm2 + c16 * gm1 - c30 * g0 + c16 * gp1 - gp2) / (c12 * h * h);
            contact.push(t, (d1.abs().max(d2.abs()) / (l * l)).as_f64());
        }
        Ok(vec![tangent.finish(), radius.finish(), contact.finish()])
    }

    /// Analytic jets of `γ` against central differences, one outcome per
    /// order, each at the step [`Tolerances::fd_step`] assigns to it.
    /// Deviations are normalized per order by the largest analytic derivative
    /// of that order over the samples.
    fn fd_checks(&self, cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
        let lift = self.sampler.lift();
        let gtol = self.sampler.tolerances();
        let ts: Vec<S> = interior_grid(self.range.0, self.range.1, cfg.fd_samples)
            .into_iter()
            .filter(|&t| !self.sampler.in_guard(t))
            .collect();
        let mut rows: Vec<(f64, usize, S, S)> = Vec::new();
        let mut peak = [S::zero(); 4];
        for &t in &ts {
            let Ok(exact) = lift.lift_jet3(t, 3, gtol) else { continue };
            for comp in 0..3 {
                let f = |u: S| -> Result<S> {
                    let p = lift.point(u, gtol)?;
                    Ok([p.x, p.y, p.z][comp])
                };
                let ex = [&exact.x, &exact.y, &exact.z][comp];
                for (k, pk) in peak.iter_mut().enumerate().skip(1) {
                    let approx = fd_jet(f, t, k, gtol.fd_step(k))?;
                    *pk = pk.max(ex.d(k).abs());
                    rows.push((t.as_f64(), k, approx.d(k), ex.d(k)));
                }
            }
        }
        let tols = [cfg.tol.fd_order1, cfg.tol.fd_order2, cfg.tol.fd_order3];
        let names = ["fd_order1", "fd_order2", "fd_order3"];
        let mut accs: Vec<Acc> = (0..3).map(|i| Acc::new(names[i], tols[i])).collect();
        for (t, k, approx, exact) in rows {
            accs[k - 1].push(t, ((approx - exact).abs() / peak[k]).as_f64());
        }
        Ok(accs.into_iter().map(Acc::finish).collect())
    }

    fn family_checks(
        &self,
        fam: &FamilyContext<S>,
        ok: &[(f64, &PointData<S>)],
        cfg: &VerifyConfig,
    ) -> Result<Vec<CheckOutcome>> {
        let mut out = Vec::new();
        let tol = &cfg.tol;
        let mut constraint = Acc::new("torus_constraint", 0.0);
        constraint.push(0.0, if fam.compat.constraint_ok { 0.0 } else { 1.0 });
        out.push(constraint.finish());
        let sign = fam.branch.sign::<S>();
        match fam.spec {
            FamilySpec::HelixProjection { a, b, n } => {
                let mut acc = Acc::new("helix_closed_form", tol.helix_closed_form);
                let two_pi = S::lit(2.0) * S::PI();
                let ts: Vec<S> = (0..cfg.helix_samples)
                    .map(|i| two_pi * S::from_usize(i).unwrap() / S::from_usize(cfg.helix_samples).unwrap())
                    .collect();
                for p in self.evals(&ts)? {
                    let (Some(d), Ok((x, y, z))) = (p.data, helix_focal_closed_form(a, b, n, p.t)) else {
                        continue;
                    };
                    let want = Vec3::new(x, y, sign * z);
                    let got = d.focal.beta.lift(d.focal.f_tilde);
                    acc.push(p.t.as_f64(), ((got - want).norm() / want.norm()).as_f64());
                }
                out.push(acc.finish());
            }
            _ => {
                let mut acc = Acc::new("closed_form_z", tol.closed_form_z);
                for &(t, d) in ok {
                    let z = sign * toroidal_z_closed_form(&fam.spec, &fam.torus, S::from_f64(t).unwrap())?;
                    acc.push(t, rel(d.f, z));
                }
                out.push(acc.finish());
            }
        }

        let mut acc = Acc::new("cusp_inventory", tol.cusp_inventory);
        let q = fam.spec.period_multiplier()? as usize;
        let found = detect_cusps(self.sampler.lift(), S::zero(), fam.compat.period, cfg.cusp_scan * q, S::lit(1e-6))?;
        let want = &fam.compat.cusp_params;
        if found.len() != want.len() {
            acc.push(f64::NAN, f64::INFINITY);
        }
        for (f, w) in found.iter().zip(want) {
            acc.push(w.as_f64(), (*f - *w).abs().as_f64());
        }
        if want.is_empty() && found.is_empty() {
            acc.push(0.0, 0.0);
        }
        out.push(acc.finish());
        Ok(out)
    }
}
