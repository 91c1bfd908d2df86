//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rees_lab::bourbaki::{generic_bourbaki, verify_bourbaki_invariants, BourbakiMode};
use rees_lab::fixtures;
use rees_lab::jacdual::{colon_candidate, jacobian_dual, stabilized_ideal};
use rees_lab::modpres::{rank_of_module, PresentationMatrix};
use rees_lab::polycore::{is_groebner_basis, parse_poly, Block, Ideal};
use rees_lab::reescore::{
    is_fiber_type, meets_base_trivially, reduction_number, rees_ideal, rees_ideal_with,
    ReductionSpec,
};
use rees_lab::verify::{
    check_jacobian_dual_transfer, classify_cm, depth_probe, verify_bourbaki_transfer,
    Classification, DEFAULT_PROBE_SEED, DEFAULT_TRIALS,
};
use rees_lab::Result;

/// Named sub-checks of one criterion.
#[derive(Default)]
struct Checks(Vec<(String, bool)>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, pass: bool) {
        self.0.push((name.into(), pass));
    }

    fn failed(&self) -> Vec<&str> {
        self.0.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }
}

fn fixture(name: &str) -> PresentationMatrix {
    fixtures::load(name).unwrap().presentation().unwrap()
}

fn forms(ring: &rees_lab::polycore::PolyRing, src: &[&str]) -> Result<ReductionSpec> {
    let polys = src.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>()?;
    ReductionSpec::new(ring, polys)
}

fn linear_type() -> Result<Checks> {
    let mut c = Checks::default();
    let rd = rees_ideal(&fixture("FIX-A"))?;
    c.add("J = L", rd.rees.equals(&rd.sym)?);
    c.add("fiber ideal = 0", rd.fiber.is_zero());
    c.add("ell = 2", rd.ell == 2);
    let u = forms(&rd.ring, &["T_1", "T_2"])?;
    c.add("r = 0", reduction_number(&rd, &u, 10)? == 0);
    Ok(c)
}

fn square_of_maximal_ideal() -> Result<Checks> {
    let mut c = Checks::default();
    let phi = fixture("FIX-B");
    let rd = rees_ideal(&phi)?;
    let (stab, _) = stabilized_ideal(&phi, 4)?;
    c.add("J = (Y·B) + I_2(B_1)", rd.rees.equals(&stab)?);
    c.add("J = (Y·B):(Y)", rd.rees.equals(&colon_candidate(&phi, 1)?)?);
    let q = parse_poly(&rd.ring, "T_1*T_3 - T_2^2")?;
    c.add("J = L + (T_1T_3 - T_2^2)", rd.rees.equals(&rd.sym.add_generators(&[q]))?);
    let depth = depth_probe(&rd.rees, DEFAULT_TRIALS, DEFAULT_PROBE_SEED)?;
    c.add("dim = depth = 3", depth.dim == 3 && depth.depth_lower_bound == 3);
    c.add("J is CM", depth.classification == Classification::Cm);
    c.add("fiber cone CM", classify_cm(&rd.fiber)? == Classification::Cm);
    Ok(c)
}

fn almost_cm_case() -> Result<Checks> {
    let mut c = Checks::default();
    let phi = fixture("FIX-C");
    let rd = rees_ideal(&phi)?;
    let (stab, tower) = stabilized_ideal(&phi, 5)?;
    c.add("J = (Y·B):(Y)^2", rd.rees.equals(&colon_candidate(&phi, 2)?)?);
    c.add("J = stabilized chain", rd.rees.equals(&stab)?);
    c.add(
        "stabilized at level <= 2",
        tower.stabilized_at.is_some_and(|n| n <= 2),
    );
    let depth = depth_probe(&rd.rees, DEFAULT_TRIALS, DEFAULT_PROBE_SEED)?;
    c.add("dim 3, certified depth 2", depth.dim == 3 && depth.depth_lower_bound == 2);
    c.add(
        "third form fails across >= 5 trials",
        depth.exhausted && depth.trials >= 5,
    );
    c.add(
        "almostCM and not CM",
        depth.classification == Classification::AlmostCm,
    );
    c.add("fiber cone CM", classify_cm(&rd.fiber)? == Classification::Cm);
    // N = 1 + Σ (deg column − 1) = 2.
    let n = 1 + phi
        .column_degrees()
        .iter()
        .map(|d| d.unwrap_or(1) as usize - 1)
        .sum::<usize>();
    c.add("N = 2 gives the same colon", n == 2 && colon_candidate(&phi, n)?.equals(&rd.rees)?);
    Ok(c)
}

fn bourbaki_pipeline() -> Result<Checks> {
    let mut c = Checks::default();
    let phi = fixture("FIX-D");
    let e = rank_of_module(&phi).rank_e;
    let rd_e = rees_ideal(&phi)?;
    let mut vectors = Vec::new();
    for seed in [1, 2] {
        let ctx = generic_bourbaki(&phi, e, seed, BourbakiMode::Randomized)?;
        let rd_i = rees_ideal(&ctx.psi)?;
        let (_, num) = verify_bourbaki_invariants(&ctx, &rd_e, &rd_i)?;
        c.add(format!("seed {seed}: mu(I) = 3"), num.mu_i == Some(3));
        c.add(format!("seed {seed}: ht I = 2"), num.height_i == 2);
        c.add(format!("seed {seed}: ell(I) = ell(E) - 1"), num.ell_i == num.ell_e - 1);
        let extra = (rd_e.ell - (e as i64 - 1)) as usize;
        let (_, k) = ctx.reduction_pair(&rd_e, extra)?;
        c.add(format!("seed {seed}: K is 2-generated"), k.forms.len() == 2);
        c.add(
            format!("seed {seed}: r_K(I) = r_U(E)"),
            num.r_u_e.is_some() && num.r_u_e == num.r_k_i,
        );
        let rep = verify_bourbaki_transfer(&phi, seed)?;
        for name in [
            "deformation",
            "j_map",
            "fiber_type_equivalence",
            "rees_cm_equivalence",
            "fiber_cm_equivalence",
        ] {
            c.add(
                format!("seed {seed}: {name}"),
                rep.assertion(name).is_some_and(|a| a.pass),
            );
        }
        c.add(format!("seed {seed}: all assertions"), rep.verdict());
        c.add(
            format!("seed {seed}: fiber types agree"),
            is_fiber_type(&rd_e)? == is_fiber_type(&rd_i)?,
        );
        vectors.push(rep.verdict_vector());
    }
    c.add("verdict vectors identical", vectors[0] == vectors[1]);
    Ok(c)
}

fn jacobian_dual_transfer() -> Result<Checks> {
    let mut c = Checks::default();
    let phi = fixture("FIX-D");
    for seed in [1, 2] {
        let ctx = generic_bourbaki(&phi, 2, seed, BourbakiMode::Randomized)?;
        for a in check_jacobian_dual_transfer(&ctx, 2)? {
            c.add(format!("seed {seed}: {}", a.name), a.pass);
        }
    }
    Ok(c)
}

fn invariant_suite() -> Result<Checks> {
    let mut c = Checks::default();
    for name in fixtures::names() {
        let phi = fixture(name);
        let rd = rees_ideal(&phi)?;
        let ring = &rd.ring;
        c.add(
            format!("{name}: S-pairs reduce to zero"),
            is_groebner_basis(ring, rd.rees.groebner().elements()),
        );
        let cl = Ideal::new(ring.clone(), vec![rd.lift(&rd.c)?]);
        c.add(
            format!("{name}: saturation idempotent"),
            rd.rees.saturate(&cl)?.equals(&rd.rees)?,
        );
        c.add(
            format!("{name}: J bihomogeneous"),
            rd.rees.reduced().is_bihomogeneous(),
        );
        c.add(format!("{name}: J ∩ R = 0"), meets_base_trivially(&rd)?);
        let (d, e) = (rd.d() as i64, rd.rank_e as i64);
        c.add(
            format!("{name}: e <= ell <= d + e - 1"),
            e <= rd.ell && rd.ell <= d + e - 1,
        );
        let tower = jacobian_dual(&phi)?;
        let first = tower.ideal_chain[0].map_into(ring.clone())?;
        c.add(format!("{name}: L + I_d(B) ⊆ J"), first.is_subset_of(&rd.rees)?);

        let (_, tower) = stabilized_ideal(&phi, 5)?;
        let y = Ideal::block_ideal(tower.ring.clone(), Block::Y);
        let mut colon = tower.yb().clone();
        let mut ascending = true;
        let mut inside = true;
        for (i, level) in tower.ideal_chain.iter().enumerate() {
            if i > 0 {
                ascending &= tower.ideal_chain[i - 1].is_subset_of(level)?;
            }
            colon = colon.quotient(&y)?;
            inside &= level.is_subset_of(&colon)?;
        }
        c.add(format!("{name}: chain ascending"), ascending);
        c.add(format!("{name}: chain inside colons"), inside);
    }
    let phi = fixture("FIX-B");
    let mut saturations = Vec::new();
    for s in ["x^2", "x*y", "y^2"] {
        saturations.push(rees_ideal_with(&phi, 1, parse_poly(phi.ring(), s)?)?.rees);
    }
    c.add(
        "FIX-B: saturating element independence",
        saturations[0].equals(&saturations[1])? && saturations[0].equals(&saturations[2])?,
    );
    Ok(c)
}

fn determinism() -> Result<Checks> {
    let mut c = Checks::default();
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_rees-lab"))
            .current_dir(&root)
            .env_remove("REES_LAB_SEED")
            .args(["verify", "bourbaki", "fixtures/FIX-D.json", "--seed", "1", "--json"])
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    c.add("exit 0", a.status.success() && b.status.success());
    c.add("non-empty output", !a.stdout.is_empty());
    c.add("byte-identical stdout", a.stdout == b.stdout);
    Ok(c)
}

type Criterion = (&'static str, fn() -> Result<Checks>, Duration);

fn main() {
    let criteria: [Criterion; 7] = [
        ("linear type (FIX-A)", linear_type, Duration::from_secs(1)),
        ("m = 1 three-way equality (FIX-B)", square_of_maximal_ideal, Duration::from_secs(10)),
        ("m = 2 almost CM (FIX-C)", almost_cm_case, Duration::from_secs(60)),
        ("Bourbaki pipeline (FIX-D, seeds 1, 2)", bourbaki_pipeline, Duration::from_secs(120)),
        ("Jacobian dual transfer i = 1, 2 (FIX-D)", jacobian_dual_transfer, Duration::from_secs(60)),
        ("invariant suite (all fixtures)", invariant_suite, Duration::from_secs(120)),
        ("determinism of verify bourbaki --json", determinism, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(checks) => {
                let failed = checks.failed();
                let in_time = elapsed <= *limit;
                let detail = if !failed.is_empty() {
                    format!("failed: {}", failed.join("; "))
                } else if !in_time {
                    format!("over the {} s limit", limit.as_secs())
                } else {
                    format!("{} checks", checks.0.len())
                };
                (failed.is_empty() && in_time, detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {} {}: {name} ({detail}; {:.3} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
