//! Depth probes, Cohen–Macaulay classification and theorem reports.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bourbaki::{generic_bourbaki, verify_bourbaki_invariants, BourbakiContext, BourbakiMode};
use crate::error::Result;
use crate::jacdual::{colon_candidate, default_max_levels, jacobian_dual, stabilized_ideal};
use crate::modpres::{check_gs, rank_of_module, PresentationMatrix};
use crate::polycore::{Block, Ideal, Poly};
use crate::reescore::{is_fiber_type, rees_ideal};

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_PROBE_SEED: u64 = 0xdeb7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Assertion {
    pub fn new(name: &str, pass: bool, witness: impl Into<String>) -> Self {
        Assertion {
            name: name.to_string(),
            pass,
            witness: witness.into(),
        }
    }

    /// Not evaluated; counts as a failure.
    pub fn skipped(name: &str, reason: &str) -> Self {
        Assertion::new(name, false, format!("skipped: {reason}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    #[serde(rename = "CM")]
    Cm,
    #[serde(rename = "almostCM")]
    AlmostCm,
    #[serde(rename = "other")]
    Other(i64),
}

impl Classification {
    pub fn from_gap(gap: i64) -> Self {
        match gap {
            0 => Classification::Cm,
            1 => Classification::AlmostCm,
            g => Classification::Other(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub dim: i64,
    pub depth_lower_bound: i64,
    pub trials: usize,
    pub classification: Classification,
    /// The certified regular sequence.
    pub sequence: Vec<String>,
    /// Every trial failed at the next step (rather than reaching `dim`).
    pub exhausted: bool,
}

fn random_linear_form(ideal: &Ideal, rng: &mut ChaCha8Rng) -> Poly {
    let ring = ideal.ring();
    let p = ring.field().characteristic();
    let mut acc = Poly::zero();
    for i in 0..ring.nvars() {
        let c = rng.gen_range(1..p);
        acc = acc.add(ring, &Poly::var(ring, i).scale(ring, c));
    }
    acc
}

/// `ℓ` is a nonzerodivisor on `ring/cur`.
fn is_regular(cur: &Ideal, l: &Poly) -> Result<bool> {
    cur.quotient_by(l)?.equals(cur)
}

/// Lower bound for `depth ring/I` by a greedy regular sequence of random
/// linear forms. The bound is exact; tightness is probabilistic.
pub fn depth_probe(ideal: &Ideal, trials: usize, seed: u64) -> Result<DepthReport> {
    let dim = ideal.krull_dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = ideal.reduced();
    let mut seq: Vec<Poly> = Vec::new();
    let mut exhausted = false;
    while (seq.len() as i64) < dim {
        let mut found = None;
        for _ in 0..trials.max(1) {
            let l = random_linear_form(ideal, &mut rng);
            if is_regular(&cur, &l)? {
                found = Some(l);
                break;
            }
        }
        match found {
            Some(l) => {
                cur = cur.add_generators(std::slice::from_ref(&l)).reduced();
                seq.push(l);
            }
            None => {
                exhausted = true;
                break;
            }
        }
    }
    // Re-check the certificate from scratch.
    let mut check = ideal.reduced();
    for l in &seq {
        if !is_regular(&check, l)? {
            return Err(crate::Error::Internal(
                "certified regular sequence failed re-verification".into(),
            ));
        }
        check = check.add_generators(std::slice::from_ref(l));
    }
    let depth = seq.len() as i64;
    let ring = ideal.ring();
    Ok(DepthReport {
        dim,
        depth_lower_bound: depth,
        trials,
        classification: Classification::from_gap(dim.max(0) - depth),
        sequence: seq.iter().map(|l| l.format(ring)).collect(),
        exhausted,
    })
}

pub fn classify_cm(ideal: &Ideal) -> Result<Classification> {
    Ok(depth_probe(ideal, DEFAULT_TRIALS, DEFAULT_PROBE_SEED)?.classification)
}

/// At most `count_bound` minimal generators of degree `≤ degree_bound`.
pub fn check_relation_bound(fib: &Ideal, count_bound: usize, degree_bound: u32) -> Result<bool> {
    let counts = fib.reduced().minimal_generators_by_degree()?;
    let low: usize = counts
        .iter()
        .filter(|((a, b), _)| a + b <= degree_bound)
        .map(|(_, c)| c)
        .sum();
    Ok(low <= count_bound)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Numerics {
    pub dim: Option<i64>,
    pub depth_lb: Option<i64>,
    pub ell: Option<i64>,
    pub r: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub assertions: Vec<Assertion>,
    pub ideals: BTreeMap<String, Vec<String>>,
    pub fingerprints: BTreeMap<String, String>,
    pub numerics: Numerics,
}

impl TheoremReport {
    fn new(theorem: &str) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            assertions: Vec::new(),
            ideals: BTreeMap::new(),
            fingerprints: BTreeMap::new(),
            numerics: Numerics::default(),
        }
    }

    fn record(&mut self, name: &str, ideal: &Ideal) {
        let r = ideal.reduced();
        self.ideals.insert(name.to_string(), r.to_strings());
        self.fingerprints.insert(name.to_string(), r.fingerprint());
    }

    pub fn verdict(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    /// `(name, pass)` pairs, for comparing runs.
    pub fn verdict_vector(&self) -> Vec<(String, bool)> {
        self.assertions
            .iter()
            .map(|a| (a.name.clone(), a.pass))
            .collect()
    }

    pub fn assertion(&self, name: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.name == name)
    }
}

fn fmt_class(c: Classification) -> String {
    match c {
        Classification::Cm => "CM".into(),
        Classification::AlmostCm => "almostCM".into(),
        Classification::Other(g) => format!("other({g})"),
    }
}

/// Rees ideal of an almost linear presentation with `n = d + e` and `G_d`:
/// `J = (Y·B):(Y)^m = (Y·B) + I_d(B_m)`, CM iff `m = 1`, fiber cone CM.
pub fn verify_thm55(phi: &PresentationMatrix) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("thm55");
    let info = rank_of_module(phi);
    let d = phi.ring().block_indices(Block::Y).len();
    let gs = check_gs(phi, d);
    let setting = info.is_pd1 && phi.n() == d + info.rank_e && gs.holds;
    let Some(m) = info.almost_linear_m.filter(|_| setting) else {
        rep.assertions.push(Assertion::new(
            "setting",
            false,
            format!(
                "pd1 = {}, n = {}, d + e = {}, G_d = {}, almost linear = {:?}",
                info.is_pd1,
                phi.n(),
                d + info.rank_e,
                gs.holds,
                info.almost_linear_m
            ),
        ));
        for name in ["three_way_equality", "cm_iff_m_is_1", "fiber_cone_cm"] {
            rep.assertions.push(Assertion::skipped(name, "hypotheses not met"));
        }
        return Ok(rep);
    };
    rep.assertions.push(Assertion::new(
        "setting",
        true,
        format!("m = {m}, d = {d}, e = {}", info.rank_e),
    ));

    let rd = rees_ideal(phi)?;
    let colon = colon_candidate(phi, m as usize)?;
    let (stab, tower) = stabilized_ideal(phi, default_max_levels(phi))?;
    let eq1 = rd.rees.equals(&colon)?;
    let eq2 = rd.rees.equals(&stab)?;
    rep.assertions.push(Assertion::new(
        "three_way_equality",
        eq1 && eq2,
        format!(
            "J = colon: {eq1}; J = stabilized: {eq2}; stabilized at level {}",
            tower.stabilized_at.map_or("-".to_string(), |n| n.to_string())
        ),
    ));

    let kpu = 1 + phi
        .column_degrees()
        .iter()
        .map(|d| d.unwrap_or(1).saturating_sub(1) as usize)
        .sum::<usize>();
    let kpu_ideal = colon_candidate(phi, kpu)?;
    rep.assertions.push(Assertion::new(
        "colon_exponent_formula",
        kpu_ideal.equals(&colon)?,
        format!("N = {kpu}"),
    ));

    let depth = depth_probe(&rd.rees, DEFAULT_TRIALS, DEFAULT_PROBE_SEED)?;
    let want = if m == 1 {
        Classification::Cm
    } else {
        Classification::AlmostCm
    };
    rep.assertions.push(Assertion::new(
        "cm_iff_m_is_1",
        depth.classification == want,
        format!(
            "dim {}, depth ≥ {}, {} (m = {m})",
            depth.dim,
            depth.depth_lower_bound,
            fmt_class(depth.classification)
        ),
    ));
    let fib_class = classify_cm(&rd.fiber)?;
    rep.assertions.push(Assertion::new(
        "fiber_cone_cm",
        fib_class == Classification::Cm,
        fmt_class(fib_class),
    ));

    rep.record("L", &rd.sym);
    rep.record("J", &rd.rees);
    rep.record("fiber", &rd.fiber);
    rep.numerics = Numerics {
        dim: Some(depth.dim),
        depth_lb: Some(depth.depth_lower_bound),
        ell: Some(rd.ell),
        r: None,
    };
    Ok(rep)
}

/// `(Y·B(φ)) + I_d(B_i(φ)) + (X)` against `(Y·B(ψ)) + I_d(B_i(ψ))` for
/// `i = 1..=levels`, compared in the `T'` coordinates modulo `X`.
pub fn check_jacobian_dual_transfer(ctx: &BourbakiContext, levels: usize) -> Result<Vec<Assertion>> {
    let mut tower_phi = jacobian_dual(&ctx.phi)?;
    let mut tower_psi = jacobian_dual(&ctx.psi)?;
    let mut out = Vec::new();
    for i in 1..=levels {
        while tower_phi.level_count() < i {
            tower_phi.iterate()?;
        }
        while tower_psi.level_count() < i {
            tower_psi.iterate()?;
        }
        let lhs = ctx.to_primed(&tower_phi.ideal_chain[i - 1].add_generators(&ctx.x_forms))?;
        let rhs = ctx.embed_from_psi(&tower_psi.ideal_chain[i - 1])?;
        let eq = lhs.equals(&rhs)?;
        out.push(Assertion::new(
            &format!("jacobian_dual_transfer_{i}"),
            eq,
            format!("level {i}: {} vs {}", lhs.fingerprint(), rhs.fingerprint()),
        ));
    }
    Ok(out)
}

/// Transfer of CM, fiber-CM and fiber type between `E` and its generic
/// Bourbaki ideal, plus the invariant checks of the construction.
pub fn verify_bourbaki_transfer(phi: &PresentationMatrix, seed: u64) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("bourbaki");
    let e = rank_of_module(phi).rank_e;
    let ctx = generic_bourbaki(phi, e, seed, BourbakiMode::Randomized)?;
    let rd_e = rees_ideal(phi)?;
    let rd_i = rees_ideal(&ctx.psi)?;
    let (inv, num) = verify_bourbaki_invariants(&ctx, &rd_e, &rd_i)?;
    rep.assertions.extend(inv);
    rep.assertions.extend(check_jacobian_dual_transfer(&ctx, 2)?);

    let probe_seed = seed ^ DEFAULT_PROBE_SEED;
    let depth_e = depth_probe(&rd_e.rees, DEFAULT_TRIALS, probe_seed)?;
    let depth_i = depth_probe(&rd_i.rees, DEFAULT_TRIALS, probe_seed)?;
    let (ce, ci) = (depth_e.classification, depth_i.classification);
    rep.assertions.push(Assertion::new(
        "rees_cm_equivalence",
        (ce == Classification::Cm) == (ci == Classification::Cm),
        format!("R(E): {}, R(I): {}", fmt_class(ce), fmt_class(ci)),
    ));
    let fe = depth_probe(&rd_e.fiber, DEFAULT_TRIALS, probe_seed)?.classification;
    let fi = depth_probe(&rd_i.fiber, DEFAULT_TRIALS, probe_seed)?.classification;
    rep.assertions.push(Assertion::new(
        "fiber_cm_equivalence",
        (fe == Classification::Cm) == (fi == Classification::Cm),
        format!("F(E): {}, F(I): {}", fmt_class(fe), fmt_class(fi)),
    ));
    let te = is_fiber_type(&rd_e)?;
    let ti = is_fiber_type(&rd_i)?;
    rep.assertions.push(Assertion::new(
        "fiber_type_equivalence",
        te == ti,
        format!("E: {te}, I: {ti}"),
    ));

    rep.record("J_E", &rd_e.rees);
    rep.record("J_I", &rd_i.rees);
    rep.record("I", &ctx.ideal);
    rep.record("fiber_E", &rd_e.fiber);
    rep.record("fiber_I", &rd_i.fiber);
    rep.numerics = Numerics {
        dim: Some(depth_e.dim),
        depth_lb: Some(depth_e.depth_lower_bound),
        ell: Some(rd_e.ell),
        r: num.r_u_e,
    };
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::polycore::{parse_poly, PolyRing};
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        Arc::new(PolyRing::with_y_vars(FieldSpec::default(), &["x", "y"]).unwrap())
    }

    #[test]
    fn polynomial_ring_is_cm() {
        let r = depth_probe(&Ideal::zero(ring()), 5, 1).unwrap();
        assert_eq!((r.dim, r.depth_lower_bound), (2, 2));
        assert_eq!(r.classification, Classification::Cm);
    }

    #[test]
    fn embedded_point_drops_depth() {
        // (x^2, xy): a line with an embedded point, dim 1, depth 0.
        let r = ring();
        let i = Ideal::new(
            r.clone(),
            vec![parse_poly(&r, "x^2").unwrap(), parse_poly(&r, "x*y").unwrap()],
        );
        let rep = depth_probe(&i, 5, 1).unwrap();
        assert_eq!((rep.dim, rep.depth_lower_bound), (1, 0));
        assert!(rep.exhausted);
        assert_eq!(rep.classification, Classification::AlmostCm);
    }

    #[test]
    fn classification_gaps() {
        assert_eq!(Classification::from_gap(0), Classification::Cm);
        assert_eq!(Classification::from_gap(1), Classification::AlmostCm);
        assert_eq!(Classification::from_gap(3), Classification::Other(3));
    }

    #[test]
    fn relation_bound_trivial() {
        assert!(check_relation_bound(&Ideal::zero(ring()), 0, 0).unwrap());
    }
}
