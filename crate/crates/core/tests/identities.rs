//! Every kernel identity over every admissible parameter tuple on small groups.

use vilenkin::kernels::{admissible_params, run_identity_suite, IdentityCheck, IdentityId};
use vilenkin::GroupConfig;

const GROUPS: &[&[usize]] = &[&[2, 3, 4], &[2, 3, 2, 2], &[2, 2, 2, 2, 2, 2], &[3, 3, 3], &[4, 2, 3], &[5, 3]];

fn weights() -> Vec<String> {
    ["fejer", "valpha:0.5", "beta:1", "log", "ualpha:1", "cesaro:0.5"].iter().map(|s| s.to_string()).collect()
}

#[test]
fn full_suite_passes() {
    for radix in GROUPS {
        let cfg = GroupConfig::from_radix(radix).unwrap();
        assert!(cfg.order() <= 64);
        let reports = run_identity_suite::<f64>(&cfg, &IdentityId::ALL, &weights()).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.pass, "{cfg}: {} [{}] residual {:e} tolerance {:e}", r.id, r.params, r.residual, r.tolerance);
            match r.check {
                IdentityCheck::Equality => assert!(r.residual <= 1e-9),
                IdentityCheck::Constant => assert!(r.residual.is_finite()),
            }
        }
    }
}

#[test]
fn every_id_has_cases() {
    let cfg = GroupConfig::from_radix(&[2, 3, 4]).unwrap();
    for id in IdentityId::ALL {
        let w = if id.uses_weights() { weights() } else { Vec::new() };
        assert!(!admissible_params(id, &cfg, &w).is_empty(), "{id}");
    }
}

#[test]
fn suite_is_deterministic_in_order() {
    let cfg = GroupConfig::from_radix(&[2, 3, 2]).unwrap();
    let a = run_identity_suite::<f64>(&cfg, &IdentityId::ALL, &weights()).unwrap();
    let b = run_identity_suite::<f64>(&cfg, &IdentityId::ALL, &weights()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_precision_suite() {
    let cfg = GroupConfig::from_radix(&[2, 3, 2]).unwrap();
    let reports = run_identity_suite::<f32>(&cfg, &IdentityId::ALL, &weights()).unwrap();
    for r in &reports {
        assert!(r.pass, "{} [{}] residual {:e} tolerance {:e}", r.id, r.params, r.residual, r.tolerance);
    }
}
