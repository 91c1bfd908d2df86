//! Every fixture against the values recorded in `fixtures/manifest.json`.

mod common;

use std::sync::Arc;

use common::{entry, fixture, strings};
use rees_lab::fixtures;
use rees_lab::jacdual::{jacobian_dual, stabilized_ideal};
use rees_lab::matrix::PolyMatrix;
use rees_lab::modpres::{
    check_gs, check_last_rows_minors_criterion, rank_of_module, PresentationMatrix, RowTransform,
};
use rees_lab::polycore::{parse_poly, Ideal, PolyRing};
use rees_lab::reescore::{
    is_fiber_type, is_linear_type, reduction_number, rees_ideal, ReductionSpec,
};
use rees_lab::verify::{check_relation_bound, depth_probe, DEFAULT_PROBE_SEED, DEFAULT_TRIALS};
use rees_lab::Error;

const NAMES: [&str; 4] = ["FIX-A", "FIX-B", "FIX-C", "FIX-D"];

fn parsed(ring: &Arc<PolyRing>, v: &serde_json::Value) -> Ideal {
    let gens = strings(v)
        .iter()
        .map(|s| parse_poly(ring, s).unwrap())
        .collect();
    Ideal::new(ring.clone(), gens)
}

fn matrix_strings(v: &serde_json::Value) -> Vec<Vec<String>> {
    v.as_array().unwrap().iter().map(strings).collect()
}

#[test]
fn module_shape() {
    for name in NAMES {
        let m = entry(name);
        let info = rank_of_module(&fixture(name));
        assert_eq!(info.rank_e as u64, m["rank"].as_u64().unwrap(), "{name}");
        assert_eq!(info.mu as u64, m["mu"].as_u64().unwrap(), "{name}");
        assert_eq!(info.is_pd1, m["pd1"].as_bool().unwrap(), "{name}");
        assert_eq!(
            info.almost_linear_m.map(u64::from),
            m["m"].as_u64(),
            "{name}"
        );
    }
}

#[test]
fn rees_and_fiber_ideals() {
    for name in NAMES {
        let m = entry(name);
        let rd = rees_ideal(&fixture(name)).unwrap();
        assert!(rd.rees.equals(&parsed(&rd.ring, &m["J"])).unwrap(), "{name}: {}", rd.rees);
        if m.get("L").is_some() {
            assert!(rd.sym.equals(&parsed(&rd.ring, &m["L"])).unwrap(), "{name}");
        }
        let fring = rd.fiber.ring().clone();
        assert!(rd.fiber.equals(&parsed(&fring, &m["fiber"])).unwrap(), "{name}");
        assert_eq!(rd.ell, m["ell"].as_i64().unwrap(), "{name}");
        assert_eq!(is_linear_type(&rd).unwrap(), m["linear_type"].as_bool().unwrap(), "{name}");
        assert_eq!(is_fiber_type(&rd).unwrap(), m["fiber_type"].as_bool().unwrap(), "{name}");
    }
}

#[test]
fn fiber_minimal_relations() {
    for name in ["FIX-B", "FIX-C", "FIX-D"] {
        let m = entry(name);
        let rd = rees_ideal(&fixture(name)).unwrap();
        let counts = rd.fiber.reduced().minimal_generators_by_degree().unwrap();
        let by_total: std::collections::BTreeMap<String, u64> = counts
            .iter()
            .map(|((a, b), c)| ((a + b).to_string(), *c as u64))
            .collect();
        let want: std::collections::BTreeMap<String, u64> = m["fiber_minimal_relations"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.as_u64().unwrap()))
            .collect();
        assert_eq!(by_total, want, "{name}");
    }
}

#[test]
fn depth_and_classification() {
    for name in NAMES {
        let m = entry(name);
        let rd = rees_ideal(&fixture(name)).unwrap();
        let rep = depth_probe(&rd.rees, DEFAULT_TRIALS, DEFAULT_PROBE_SEED).unwrap();
        assert_eq!(rep.dim, m["dim"].as_i64().unwrap(), "{name}");
        assert_eq!(rep.depth_lower_bound, m["depth"].as_i64().unwrap(), "{name}");
        let class = serde_json::to_value(rep.classification).unwrap();
        assert_eq!(class, m["classification"], "{name}");
    }
}

#[test]
fn recorded_reductions() {
    for name in ["FIX-A", "FIX-B", "FIX-C"] {
        let m = entry(name);
        let rd = rees_ideal(&fixture(name)).unwrap();
        let forms = strings(&m["reduction"]["forms"])
            .iter()
            .map(|s| parse_poly(&rd.ring, s).unwrap())
            .collect();
        let spec = ReductionSpec::new(&rd.ring, forms).unwrap();
        let r = reduction_number(&rd, &spec, 10).unwrap();
        assert_eq!(r as u64, m["reduction"]["r"].as_u64().unwrap(), "{name}");
    }
}

#[test]
fn jacobian_duals_and_stabilization() {
    for name in ["FIX-B", "FIX-C", "FIX-D"] {
        let m = entry(name);
        let phi = fixture(name);
        let tower = jacobian_dual(&phi).unwrap();
        let ring = tower.ring.clone();
        let want = matrix_strings(&m["jacobian_dual"]);
        let want = PolyMatrix::from_rows(
            want.iter()
                .map(|r| r.iter().map(|s| parse_poly(&ring, s).unwrap()).collect())
                .collect(),
        );
        assert_eq!(tower.b, want, "{name}");
        let (_, tower) = stabilized_ideal(&phi, 5).unwrap();
        assert_eq!(
            tower.stabilized_at.map(|n| n as u64),
            m["stabilized_at"].as_u64(),
            "{name}"
        );
    }
}

#[test]
fn fix_c_first_augmentation_block() {
    let phi = fixture("FIX-C");
    let mut tower = jacobian_dual(&phi).unwrap();
    tower.iterate().unwrap();
    let want = matrix_strings(&entry("FIX-C")["C_1"]);
    assert_eq!(tower.c_blocks[0].format(&tower.ring), want);
}

#[test]
fn gs_condition() {
    for name in ["FIX-B", "FIX-C", "FIX-D"] {
        let rep = check_gs(&fixture(name), 2);
        assert_eq!(rep.holds, entry(name)["gs_2"].as_bool().unwrap(), "{name}");
    }
}

#[test]
fn last_rows_criterion_on_fix_b() {
    let m = entry("FIX-B");
    let phi = fixture("FIX-B");
    let id = check_last_rows_minors_criterion(&phi, 2, &RowTransform::Identity).unwrap();
    assert_eq!(id, m["last_rows_identity_ell_2"].as_bool().unwrap());
    let search = RowTransform::RandomSearch { seed: 1, trials: 5 };
    let rs = check_last_rows_minors_criterion(&phi, 2, &search).unwrap();
    assert_eq!(rs, m["last_rows_random_search_ell_2"].as_bool().unwrap());
}

#[test]
fn relation_bound_on_fix_c() {
    let m = &entry("FIX-C")["relation_bound"];
    let rd = rees_ideal(&fixture("FIX-C")).unwrap();
    let holds = check_relation_bound(
        &rd.fiber,
        m["count"].as_u64().unwrap() as usize,
        m["degree"].as_u64().unwrap() as u32,
    )
    .unwrap();
    assert_eq!(holds, m["holds"].as_bool().unwrap());
}

#[test]
fn non_reduction_on_fix_b() {
    let rd = rees_ideal(&fixture("FIX-B")).unwrap();
    let forms = strings(&entry("FIX-B")["non_reduction"])
        .iter()
        .map(|s| parse_poly(&rd.ring, s).unwrap())
        .collect();
    let spec = ReductionSpec::new(&rd.ring, forms).unwrap();
    assert!(matches!(reduction_number(&rd, &spec, 4), Err(Error::Precondition(_))));
}

#[test]
fn literal_mixed_degree_matrix_is_rejected() {
    let doc = fixtures::load("FIX-C").unwrap();
    let ring = doc.ring().unwrap();
    let rows = [["y", "0"], ["-x", "y^2"], ["0", "-x"]]
        .iter()
        .map(|r| r.iter().map(|s| parse_poly(&ring, s).unwrap()).collect())
        .collect();
    let res = PresentationMatrix::new(ring, PolyMatrix::from_rows(rows));
    assert!(matches!(res, Err(Error::Precondition(_))));
}

#[test]
fn every_fixture_loads_with_its_declared_rank() {
    let names: Vec<&str> = fixtures::names().collect();
    assert_eq!(names, NAMES);
    for name in names {
        let doc = fixtures::load(name).unwrap();
        assert_eq!(doc.seed, Some(1));
        assert_eq!(doc.field.characteristic, 32003);
        assert!(doc.presentation().is_ok(), "{name}");
    }
}
