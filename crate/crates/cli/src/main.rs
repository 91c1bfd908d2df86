use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use rees_lab::bourbaki::{
    generic_bourbaki, verify_bourbaki_invariants, BourbakiMode, DEFAULT_SYMBOLIC_BUDGET,
};
use rees_lab::input::InputDocument;
use rees_lab::jacdual::{colon_candidate, default_max_levels, jacobian_dual};
use rees_lab::modpres::{rank_of_module, PresentationMatrix};
use rees_lab::polycore::Ideal;
use rees_lab::reescore::{
    is_fiber_type, is_linear_type, is_reduction, meets_base_trivially, reduction_number,
    rees_ideal, ReesData, DEFAULT_R_MAX,
};
use rees_lab::verify::{self, Assertion, Numerics, TheoremReport};
use rees_lab::{fixtures, Error};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "rees-lab", version, about = "Rees algebras, fiber cones and Bourbaki ideals of graded modules")]
struct Cli {
    /// Write a JSON report to OUT ("-" or no value: stdout).
    #[arg(long, global = true, value_name = "OUT", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,

    /// Seed for randomized steps.
    #[arg(long, global = true, env = "REES_LAB_SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric and Rees ideals with their invariants.
    Rees(FileArg),
    /// Fiber ideal and analytic spread.
    Fiber(FileArg),
    /// Generic Bourbaki ideal and its invariant checks.
    Bourbaki {
        #[command(flatten)]
        file: FileArg,
        /// Adjoin the generic coefficients as variables.
        #[arg(long)]
        symbolic: bool,
        /// Variable budget for symbolic mode.
        #[arg(long, default_value_t = DEFAULT_SYMBOLIC_BUDGET)]
        budget: usize,
    },
    /// Jacobian dual, its iterated chain and colon candidates.
    Jacdual {
        #[command(flatten)]
        file: FileArg,
        /// Build exactly K levels.
        #[arg(long, value_name = "K", conflicts_with = "colon")]
        levels: Option<usize>,
        /// Report (Y·B) : (Y)^M.
        #[arg(long, value_name = "M")]
        colon: Option<usize>,
    },
    /// Theorem reports.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// List the built-in fixtures.
    Fixtures,
}

#[derive(Subcommand)]
enum VerifyCommand {
    Thm55(FileArg),
    Bourbaki(FileArg),
}

#[derive(Args)]
struct FileArg {
    /// Input JSON file, or the name of a built-in fixture.
    file: PathBuf,
}

#[derive(Serialize)]
struct Report {
    command: String,
    input_fingerprint: String,
    assertions: Vec<Assertion>,
    ideals: BTreeMap<String, Vec<String>>,
    numerics: Numerics,
}

impl Report {
    fn new(command: &str, doc: Option<&InputDocument>) -> Self {
        Report {
            command: command.to_string(),
            input_fingerprint: doc.map(InputDocument::fingerprint).unwrap_or_default(),
            assertions: Vec::new(),
            ideals: BTreeMap::new(),
            numerics: Numerics::default(),
        }
    }

    fn ideal(&mut self, name: &str, ideal: &Ideal) {
        self.ideals
            .insert(name.to_string(), ideal.reduced().to_strings());
    }

    fn check(&mut self, name: &str, pass: bool, witness: impl Into<String>) {
        self.assertions.push(Assertion::new(name, pass, witness));
    }

    fn absorb(&mut self, rep: TheoremReport) {
        self.assertions.extend(rep.assertions);
        self.ideals.extend(rep.ideals);
        self.numerics = rep.numerics;
    }
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Io(_) => 2,
        Failure::Lib(Error::Parse(_)) => 2,
        Failure::Lib(Error::Internal(_)) => 1,
        Failure::Lib(_) => 3,
    }
}

fn load(path: &Path) -> Result<InputDocument, Failure> {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => match path.to_str().and_then(fixtures::source) {
            Some(s) => s.to_string(),
            None => return Err(Failure::Io(format!("{}: {e}", path.display()))),
        },
    };
    Ok(InputDocument::from_json(&src)?)
}

fn seed_for(cli_seed: Option<u64>, doc: &InputDocument) -> u64 {
    cli_seed.or(doc.seed).unwrap_or(DEFAULT_SEED)
}

struct Out {
    text: bool,
}

impl Out {
    fn line(&self, s: impl AsRef<str>) {
        if self.text {
            println!("{}", s.as_ref());
        }
    }

    fn ideal(&self, name: &str, ideal: &Ideal) {
        self.line(format!("{name} = {}", ideal.reduced()));
    }

    fn matrix(&self, name: &str, rows: &[Vec<String>]) {
        self.line(format!("{name} ="));
        for r in rows {
            self.line(format!("  [{}]", r.join(", ")));
        }
    }
}

fn rees_invariants(rep: &mut Report, rd: &ReesData) -> Result<(), Failure> {
    let l_in_j = rd.sym.is_subset_of(&rd.rees)?;
    rep.check("L_subset_J", l_in_j, "L ⊆ J");
    rep.check(
        "bihomogeneous",
        rd.rees.reduced().is_bihomogeneous(),
        "reduced GB of J is bihomogeneous",
    );
    rep.check("torsion_free", meets_base_trivially(rd)?, "J ∩ R = 0");
    let d = rd.d() as i64;
    let e = rd.rank_e as i64;
    rep.check(
        "spread_bounds",
        e <= rd.ell && rd.ell <= d + e - 1,
        format!("{e} ≤ ℓ = {} ≤ {}", rd.ell, d + e - 1),
    );
    let lt = is_linear_type(rd)?;
    rep.check(
        "linear_type_implies_fiber_type",
        !lt || rd.fiber.is_zero(),
        format!("linear type: {lt}, fiber ideal zero: {}", rd.fiber.is_zero()),
    );
    Ok(())
}

fn reduction(rep: &mut Report, out: &Out, doc: &InputDocument, rd: &ReesData) -> Result<(), Failure> {
    if let Some(u) = doc.reduction_spec(rd)? {
        let red = is_reduction(rd, &u)?;
        out.line(format!("reduction: {red}"));
        if red {
            let r = reduction_number(rd, &u, DEFAULT_R_MAX)?;
            out.line(format!("reduction number: {r}"));
            rep.numerics.r = Some(r);
        }
    }
    Ok(())
}

fn cmd_rees(rep: &mut Report, out: &Out, doc: &InputDocument) -> Result<(), Failure> {
    let phi = doc.presentation()?;
    let info = rank_of_module(&phi);
    let rd = rees_ideal(&phi)?;
    out.line(format!("rank: {}, generators: {}, pd1: {}", info.rank_e, info.mu, info.is_pd1));
    out.ideal("L", &rd.sym);
    out.ideal("J", &rd.rees);
    out.line(format!("linear type: {}", is_linear_type(&rd)?));
    out.line(format!("fiber type: {}", is_fiber_type(&rd)?));
    out.line(format!("analytic spread: {}", rd.ell));
    out.line(format!("dim: {}", rd.dim_rees));
    rep.ideal("L", &rd.sym);
    rep.ideal("J", &rd.rees);
    rep.numerics.dim = Some(rd.dim_rees);
    rep.numerics.ell = Some(rd.ell);
    reduction(rep, out, doc, &rd)?;
    rees_invariants(rep, &rd)
}

fn cmd_fiber(rep: &mut Report, out: &Out, doc: &InputDocument) -> Result<(), Failure> {
    let phi = doc.presentation()?;
    let rd = rees_ideal(&phi)?;
    out.ideal("fiber", &rd.fiber);
    out.line(format!("analytic spread: {}", rd.ell));
    let counts = rd.fiber.reduced().minimal_generators_by_degree()?;
    let counts: Vec<String> = counts
        .iter()
        .map(|((_, t), c)| format!("{c} in degree {t}"))
        .collect();
    out.line(format!("minimal relations: {}", if counts.is_empty() { "none".into() } else { counts.join(", ") }));
    rep.ideal("fiber", &rd.fiber);
    rep.numerics.ell = Some(rd.ell);
    let d = rd.d() as i64;
    let e = rd.rank_e as i64;
    rep.check(
        "spread_bounds",
        e <= rd.ell && rd.ell <= d + e - 1,
        format!("{e} ≤ ℓ = {} ≤ {}", rd.ell, d + e - 1),
    );
    reduction(rep, out, doc, &rd)
}

fn cmd_bourbaki(
    rep: &mut Report,
    out: &Out,
    doc: &InputDocument,
    seed: u64,
    mode: BourbakiMode,
) -> Result<(), Failure> {
    let phi = doc.presentation()?;
    let e = rank_of_module(&phi).rank_e;
    let ctx = generic_bourbaki(&phi, e, seed, mode)?;
    out.line(format!("seed: {seed}, rank: {e}, mode: {mode:?}"));
    if let Some(z) = &ctx.z_values {
        out.line(format!("Z = {z:?}, pivots = {:?}", ctx.pivots));
    }
    let xs: Vec<String> = ctx.x_forms.iter().map(|x| x.format(&ctx.rees_ring)).collect();
    out.line(format!("X = ({})", xs.join(", ")));
    out.matrix("psi", &ctx.psi.format());
    out.ideal("I", &ctx.ideal);
    let rd_e = rees_ideal(&ctx.phi)?;
    let rd_i = rees_ideal(&ctx.psi)?;
    let (assertions, num) = verify_bourbaki_invariants(&ctx, &rd_e, &rd_i)?;
    rep.assertions.extend(assertions);
    rep.ideal("I", &ctx.ideal);
    rep.ideal("J_E", &rd_e.rees);
    rep.ideal("J_I", &rd_i.rees);
    rep.numerics.ell = Some(num.ell_e);
    rep.numerics.dim = Some(rd_e.dim_rees);
    rep.numerics.r = num.r_u_e;
    Ok(())
}

fn cmd_jacdual(
    rep: &mut Report,
    out: &Out,
    doc: &InputDocument,
    levels: Option<usize>,
    colon: Option<usize>,
) -> Result<(), Failure> {
    let phi: PresentationMatrix = doc.presentation()?;
    let mut tower = jacobian_dual(&phi)?;
    out.matrix("B", &tower.b.format(&tower.ring));
    if let Some(m) = colon {
        let c = colon_candidate(&phi, m)?;
        out.ideal(&format!("(Y·B):(Y)^{m}"), &c);
        rep.ideal("colon", &c);
        return Ok(());
    }
    match levels {
        Some(k) => {
            while tower.level_count() < k.max(1) {
                tower.iterate()?;
            }
        }
        None => {
            tower.iterate_until_stable(default_max_levels(&phi))?;
        }
    }
    for (i, c) in tower.c_blocks.iter().enumerate() {
        if c.ncols() == 0 {
            out.line(format!("C_{} has no columns", i + 1));
        } else {
            out.matrix(&format!("C_{}", i + 1), &c.format(&tower.ring));
        }
    }
    for (i, ideal) in tower.ideal_chain.iter().enumerate() {
        out.ideal(&format!("chain_{}", i + 1), ideal);
        rep.ideal(&format!("chain_{}", i + 1), ideal);
    }
    if let Some(n) = tower.stabilized_at {
        out.line(format!("stabilized at level {n}"));
    }
    let y = Ideal::block_ideal(tower.ring.clone(), rees_lab::polycore::Block::Y);
    let mut ascending = true;
    let mut colon_ok = true;
    let mut colon = tower.yb().clone();
    for (i, ideal) in tower.ideal_chain.iter().enumerate() {
        if i > 0 {
            ascending &= tower.ideal_chain[i - 1].is_subset_of(ideal)?;
        }
        colon = colon.quotient(&y)?.reduced();
        colon_ok &= ideal.is_subset_of(&colon)?;
    }
    rep.check("chain_ascending", ascending, "(Y·B) + I_d(B_i) ⊆ (Y·B) + I_d(B_{i+1})");
    rep.check("colon_containment", colon_ok, "(Y·B) + I_d(B_i) ⊆ (Y·B) : (Y)^i");
    Ok(())
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let text = cli.json.as_deref() != Some("-");
    let out = Out { text };
    let report = match &cli.command {
        Command::Fixtures => {
            let mut rep = Report::new("fixtures", None);
            for name in fixtures::names() {
                let doc = fixtures::load(name)?;
                let rows: Vec<String> = doc.matrix.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                out.line(format!("{name}: variables {:?}, matrix [{}]", doc.variables, rows.join(", ")));
                rep.ideals.insert(name.to_string(), rows);
            }
            rep
        }
        Command::Rees(f) => {
            let doc = load(&f.file)?;
            let mut rep = Report::new("rees", Some(&doc));
            cmd_rees(&mut rep, &out, &doc)?;
            rep
        }
        Command::Fiber(f) => {
            let doc = load(&f.file)?;
            let mut rep = Report::new("fiber", Some(&doc));
            cmd_fiber(&mut rep, &out, &doc)?;
            rep
        }
        Command::Bourbaki { file, symbolic, budget } => {
            let doc = load(&file.file)?;
            let mut rep = Report::new("bourbaki", Some(&doc));
            let mode = if *symbolic {
                BourbakiMode::Symbolic { budget: *budget }
            } else {
                BourbakiMode::Randomized
            };
            cmd_bourbaki(&mut rep, &out, &doc, seed_for(cli.seed, &doc), mode)?;
            rep
        }
        Command::Jacdual { file, levels, colon } => {
            let doc = load(&file.file)?;
            let mut rep = Report::new("jacdual", Some(&doc));
            cmd_jacdual(&mut rep, &out, &doc, *levels, *colon)?;
            rep
        }
        Command::Verify { which } => {
            let (name, f) = match which {
                VerifyCommand::Thm55(f) => ("verify thm55", f),
                VerifyCommand::Bourbaki(f) => ("verify bourbaki", f),
            };
            let doc = load(&f.file)?;
            let phi = doc.presentation()?;
            let theorem = match which {
                VerifyCommand::Thm55(_) => verify::verify_thm55(&phi)?,
                VerifyCommand::Bourbaki(_) => {
                    verify::verify_bourbaki_transfer(&phi, seed_for(cli.seed, &doc))?
                }
            };
            let mut rep = Report::new(name, Some(&doc));
            rep.absorb(theorem);
            rep
        }
    };
    for a in &report.assertions {
        out.line(format!("[{}] {}: {}", if a.pass { "pass" } else { "FAIL" }, a.name, a.witness));
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            let msg = match &f {
                Failure::Io(s) => s.clone(),
                Failure::Lib(e) => e.to_string(),
            };
            eprintln!("rees-lab: {msg}");
            return ExitCode::from(exit_code(&f));
        }
    };
    if let Some(dest) = &cli.json {
        let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if dest == "-" {
            print!("{body}");
        } else if let Err(e) = std::fs::write(dest, body) {
            eprintln!("rees-lab: {dest}: {e}");
            return ExitCode::from(2);
        }
    }
    if report.assertions.iter().all(|a| a.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
