#![allow(dead_code)]

use std::sync::Arc;

use rees_lab::fixtures;
use rees_lab::modpres::PresentationMatrix;
use rees_lab::polycore::{parse_poly, Ideal, Poly, PolyRing};

pub fn fixture(name: &str) -> PresentationMatrix {
    fixtures::load(name).unwrap().presentation().unwrap()
}

pub fn manifest() -> serde_json::Value {
    let src = include_str!("../../../../fixtures/manifest.json");
    serde_json::from_str(src).unwrap()
}

pub fn entry(name: &str) -> serde_json::Value {
    manifest()["fixtures"][name].clone()
}

pub fn strings(v: &serde_json::Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

pub fn polys(ring: &PolyRing, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| parse_poly(ring, s).unwrap()).collect()
}

pub fn ideal(ring: &Arc<PolyRing>, src: &[&str]) -> Ideal {
    Ideal::new(ring.clone(), polys(ring, src))
}
