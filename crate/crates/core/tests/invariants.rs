use proptest::prelude::*;
use torofocal::pipeline::evaluate;
use torofocal::{FamilySpec, HeightBranch, Preset, TorusSpec, Vec3};

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-8 * scale.max(1.0)
}

fn near(a: Vec3<f64>, b: Vec3<f64>, scale: f64) -> bool {
    (a - b).max_abs() <= 1e-8 * scale.max(1.0)
}

// Rolling-circle family with k cusps on a torus strictly containing it.
fn family(epi: bool, big_r: f64, k: u32, slack: f64) -> (FamilySpec<f64>, TorusSpec<f64>) {
    let r = big_r / k as f64;
    if epi {
        (FamilySpec::epicycloid(big_r, r).unwrap(), TorusSpec::new(big_r + r, r * (1.0 + slack)).unwrap())
    } else {
        (FamilySpec::hypocycloid(big_r, r).unwrap(), TorusSpec::new(big_r - r, r * (1.0 + slack)).unwrap())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn frame_and_focal_identities(
        epi in any::<bool>(),
        big_r in 0.5f64..5.0,
        k in 1u32..6,
        slack in 0.05f64..0.6,
        upper in any::<bool>(),
        u in 0.02f64..0.98,
    ) {
        let k = if epi { k } else { k + 2 };
        let (spec, torus) = family(epi, big_r, k, slack.min(0.3 * (k as f64 - 2.0).max(0.2)));
        prop_assume!(torus.a() > torus.b());
        let branch = if upper { HeightBranch::Upper } else { HeightBranch::Lower };
        let lift = spec.lift(&torus, branch).unwrap();
        let tol = lift.tolerances();
        let cusp = 2.0 * std::f64::consts::PI / k as f64;
        let t = cusp * u;
        let Ok(d) = evaluate(&lift, t, &tol) else { return Ok(()) };
        let fr = d.frame;
        let l = torus.a() + torus.b();

        // orthonormal, right-handed
        for (p, q, want) in [
            (fr.tangent, fr.tangent, 1.0), (fr.normal, fr.normal, 1.0), (fr.binormal, fr.binormal, 1.0),
            (fr.tangent, fr.normal, 0.0), (fr.tangent, fr.binormal, 0.0), (fr.normal, fr.binormal, 0.0),
        ] {
            prop_assert!((p.dot(q) - want).abs() < 1e-12);
        }
        prop_assert!(near(fr.tangent.cross(fr.normal), fr.binormal, 1e-4));

        // the two paths agree
        prop_assert!(close(fr.kappa, d.frame_cyl.kappa, fr.kappa));
        prop_assert!(close(fr.tau, d.frame_cyl.tau, 1.0 + fr.tau.abs()));
        prop_assert!(close(d.focal.c1, 1.0 / fr.kappa, d.focal.c1));
        let radius = d.focal.c1.hypot(d.focal.c2);
        prop_assert!(close(d.focal.c2, d.focal_general.c2, radius));

        // sphere centre projects onto β with height f̃, and sits at distance √(c₁² + c₂²)
        let c = d.focal.c_gamma;
        prop_assert!(close(c.x, d.focal.beta.x, radius + l));
        prop_assert!(close(c.y, d.focal.beta.y, radius + l));
        prop_assert!(close(c.z, d.focal.f_tilde, radius + l));
        prop_assert!(close((c - d.gamma).norm(), radius, radius));

        // the lift stays on its torus sheet
        prop_assert!(torus.residual(d.gamma).abs() <= 1e-10 * l * l);
        prop_assert!(d.gamma.z * branch.sign::<f64>() >= 0.0);
    }

    #[test]
    fn mirrored_sheet_flips_torsion(big_r in 0.5f64..4.0, k in 1u32..5, u in 0.05f64..0.95) {
        let (spec, torus) = family(true, big_r, k, 0.2);
        let t = 2.0 * std::f64::consts::PI / k as f64 * u;
        let eval = |b| {
            let lift = spec.lift(&torus, b).unwrap();
            evaluate(&lift, t, &lift.tolerances())
        };
        let (Ok(up), Ok(lo)) = (eval(HeightBranch::Upper), eval(HeightBranch::Lower)) else { return Ok(()) };
        prop_assert!(close(up.frame.kappa, lo.frame.kappa, up.frame.kappa));
        prop_assert!(close(up.frame.tau, -lo.frame.tau, 1.0 + up.frame.tau.abs()));
        prop_assert!(close(up.focal.f_tilde, -lo.focal.f_tilde, up.focal.c1.hypot(up.focal.c2)));
    }

    #[test]
    fn radius_scaling(scale in 0.1f64..10.0, u in 0.05f64..0.95) {
        // every length scales with r, curvature and torsion inversely
        let at = |r: f64| {
            let inst = Preset::NephroidStrict.instance(r, (4.0, 1.0, 12)).unwrap();
            let lift = inst.lift(HeightBranch::Upper).unwrap();
            evaluate(&lift, std::f64::consts::PI * u, &lift.tolerances())
        };
        let (Ok(one), Ok(s)) = (at(1.0), at(scale)) else { return Ok(()) };
        prop_assert!(close(s.frame.kappa * scale, one.frame.kappa, one.frame.kappa));
        prop_assert!(close(s.frame.tau * scale, one.frame.tau, 1.0 + one.frame.tau.abs()));
        prop_assert!(near(s.focal.c_gamma.scale(1.0 / scale), one.focal.c_gamma, one.focal.c1.hypot(one.focal.c2)));
    }
}

#[test]
fn single_precision_tracks_double() {
    let t = 0.7;
    let d64 = {
        let lift = Preset::CardioidStrict.instance(1.0f64, (4.0, 1.0, 12)).unwrap().lift(HeightBranch::Upper).unwrap();
        evaluate(&lift, t, &lift.tolerances()).unwrap()
    };
    let d32 = {
        let lift = Preset::CardioidStrict.instance(1.0f32, (4.0, 1.0, 12)).unwrap().lift(HeightBranch::Upper).unwrap();
        evaluate(&lift, t as f32, &lift.tolerances()).unwrap()
    };
    let rel = |a: f32, b: f64| (a as f64 - b).abs() / b.abs().max(1.0);
    assert!(rel(d32.frame.kappa, d64.frame.kappa) < 1e-4);
    assert!(rel(d32.frame.tau, d64.frame.tau) < 1e-3);
    assert!(rel(d32.focal.c2, d64.focal.c2) < 1e-3);
}
