mod common;

use common::fixture;
use rees_lab::jacdual::{colon_candidate, stabilized_ideal};
use rees_lab::reescore::rees_ideal;
use rees_lab::verify::{
    classify_cm, depth_probe, verify_thm55, Classification, DEFAULT_PROBE_SEED, DEFAULT_TRIALS,
};

#[test]
fn almost_linear_fixtures_satisfy_the_three_way_equality() {
    for name in ["FIX-B", "FIX-C", "FIX-D"] {
        let rep = verify_thm55(&fixture(name)).unwrap();
        assert!(rep.verdict(), "{name}: {:?}", rep.assertions);
    }
}

#[test]
fn setting_failure_is_reported_not_hidden() {
    // FIX-A has n = 2 < d + e = 3.
    let rep = verify_thm55(&fixture("FIX-A")).unwrap();
    assert!(!rep.verdict());
    assert!(!rep.assertion("setting").unwrap().pass);
    let skipped = rep.assertion("three_way_equality").unwrap();
    assert!(skipped.witness.starts_with("skipped"));
}

#[test]
fn fix_b_is_cm() {
    let rd = rees_ideal(&fixture("FIX-B")).unwrap();
    let rep = depth_probe(&rd.rees, DEFAULT_TRIALS, DEFAULT_PROBE_SEED).unwrap();
    assert_eq!((rep.dim, rep.depth_lower_bound), (3, 3));
    assert_eq!(rep.classification, Classification::Cm);
    assert!(!rep.exhausted);
    assert_eq!(classify_cm(&rd.fiber).unwrap(), Classification::Cm);
}

#[test]
fn fix_c_is_almost_cm_for_every_probe_seed() {
    let rd = rees_ideal(&fixture("FIX-C")).unwrap();
    for seed in [1, 2, 3, DEFAULT_PROBE_SEED] {
        let rep = depth_probe(&rd.rees, DEFAULT_TRIALS, seed).unwrap();
        assert_eq!((rep.dim, rep.depth_lower_bound), (3, 2), "seed {seed}");
        assert!(rep.exhausted);
        assert!(rep.trials >= 5);
        assert_eq!(rep.sequence.len(), 2);
        assert_eq!(rep.classification, Classification::AlmostCm);
    }
    assert_eq!(classify_cm(&rd.fiber).unwrap(), Classification::Cm);
}

#[test]
fn fix_c_needs_the_second_colon() {
    let phi = fixture("FIX-C");
    let rd = rees_ideal(&phi).unwrap();
    assert!(!colon_candidate(&phi, 1).unwrap().equals(&rd.rees).unwrap());
    assert!(colon_candidate(&phi, 2).unwrap().equals(&rd.rees).unwrap());
    assert!(colon_candidate(&phi, 3).unwrap().equals(&rd.rees).unwrap());
    let (stab, tower) = stabilized_ideal(&phi, 5).unwrap();
    assert_eq!(tower.stabilized_at, Some(2));
    assert!(stab.equals(&rd.rees).unwrap());
}

#[test]
fn report_serializes_with_expected_keys() {
    let rep = verify_thm55(&fixture("FIX-B")).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    for key in ["theorem", "assertions", "ideals", "fingerprints", "numerics"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["numerics"]["dim"], 3);
    assert_eq!(v["numerics"]["ell"], 2);
}

#[test]
fn rank_one_transfer_is_reflexive() {
    for name in ["FIX-B", "FIX-C"] {
        let rep = rees_lab::verify::verify_bourbaki_transfer(&fixture(name), 1).unwrap();
        assert!(rep.verdict(), "{name}: {:?}", rep.assertions);
        assert_eq!(rep.ideals["J_E"], rep.ideals["J_I"], "{name}");
    }
}
