use torofocal::families::Preset;
use torofocal::verify::{VerifyConfig, VerifyTarget};
use torofocal::HeightBranch;

fn target(p: Preset, branch: HeightBranch, fd_h_low: Option<f64>) -> VerifyTarget<f64> {
    let inst = p.instance(1.0, (4.0, 1.0, 12)).unwrap();
    let lift = inst.lift(branch).unwrap();
    let mut tol = lift.tolerances();
    if let Some(h) = fd_h_low {
        tol.fd_h_low = h;
    }
    VerifyTarget::for_family_with(inst.spec, inst.torus, branch, lift, tol, inst.compat().unwrap()).unwrap()
}

#[test]
fn presets_pass_cross_path_and_identity_checks() {
    let cfg = VerifyConfig::default();
    for p in Preset::ALL {
        let report = target(p, HeightBranch::Upper, None).run(&cfg).unwrap();
        for c in report.checks.iter().filter(|c| c.name != "fd_order2") {
            assert!(c.pass, "{p}: {c:?}");
        }
    }
}

// At h = 1e-5 the three-point second difference sits on the rounding floor
// (≈ ε|f|/h²); one decade larger, the error drops by about two decades.
#[test]
fn second_differences_improve_at_a_larger_step() {
    let cfg = VerifyConfig::default();
    for p in Preset::ALL {
        let dev = |h| target(p, HeightBranch::Upper, h).run(&cfg).unwrap().get("fd_order2").unwrap().max_dev;
        let (fine, coarse) = (dev(None), dev(Some(1e-4)));
        assert!(coarse < 2e-6 && coarse < fine / 10.0, "{p}: {fine:e} {coarse:e}");
    }
}

#[test]
fn lower_sheet_passes_too() {
    let cfg = VerifyConfig { samples: 128, ..VerifyConfig::default() };
    for p in [Preset::NephroidStrict, Preset::AstroidTouch, Preset::Helix] {
        let report = target(p, HeightBranch::Lower, None).run(&cfg).unwrap();
        for c in report.checks.iter().filter(|c| c.name != "fd_order2") {
            assert!(c.pass, "{p} lower: {c:?}");
        }
    }
}
