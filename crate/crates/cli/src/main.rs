use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use leibniz_core::algebra::{OperatorIdentity, DEFAULT_LIE_SET_CAP};
use leibniz_core::corollaries::{corollary3_check, corollary4_check, corollary5_check, corollary6_check};
use leibniz_core::engel::{lemma_word_bound_check, theorem2_verify};
use leibniz_core::families::{build, fuzz_corpus, Family};
use leibniz_core::io;
use leibniz_core::report::{coords_json, Report, Verdict};
use leibniz_core::{Bimodule, Element, Error, Field, LeibnizAlgebra, Result};

#[derive(Parser)]
#[command(name = "leibniz", version, about = "Exact checks for finite-dimensional Leibniz algebras")]
struct Cli {
    /// Write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Suppress human-readable output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Leibniz identity and the multiplication-operator identities.
    Validate { algebra: PathBuf },
    /// Nilpotency, class, lower central series and annihilator.
    Analyze { algebra: PathBuf },
    /// Engel premises and conclusions for a bimodule and Lie set.
    Engel {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        lieset: Option<PathBuf>,
    },
    /// Word-length bound for the operators of one element.
    LemmaBound {
        algebra: PathBuf,
        /// Comma-separated coordinates, e.g. `1,0,0`.
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Nilpotency criteria: 3 (Lie set), 4 (automorphism), 5 (derivation), 6 (ideal sums).
    Corollary {
        #[arg(value_parser = clap::value_parser!(u8).range(3..=6))]
        which: u8,
        algebra: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        ideals: Option<PathBuf>,
        #[arg(long)]
        lieset: Option<PathBuf>,
    },
    /// Build a family algebra and write it as JSON.
    Generate {
        /// e.g. `basis_change(cyclic(3),42)`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
        /// `Q`, `F5`, `F7`, ...
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Run the theorem and corollary checks over a seeded corpus.
    Fuzz {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_dim: usize,
    },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Validate { .. } => "validate".into(),
            Command::Analyze { .. } => "analyze".into(),
            Command::Engel { .. } => "engel".into(),
            Command::LemmaBound { .. } => "lemma-bound".into(),
            Command::Corollary { which, .. } => format!("corollary {which}"),
            Command::Generate { .. } => "generate".into(),
            Command::Fuzz { .. } => "fuzz".into(),
        }
    }

    fn input(&self) -> String {
        match self {
            Command::Validate { algebra }
            | Command::Analyze { algebra }
            | Command::Engel { algebra, .. }
            | Command::LemmaBound { algebra, .. }
            | Command::Corollary { algebra, .. } => algebra.display().to_string(),
            Command::Generate { family, field, .. } => format!("{family} over {field}"),
            Command::Fuzz { seed, count, max_dim } => format!("seed={seed} count={count} max_dim={max_dim}"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<LeibnizAlgebra> {
    io::parse_algebra(&read(path)?)
}

fn load_module(algebra: &LeibnizAlgebra, path: Option<&Path>) -> Result<Bimodule> {
    match path {
        Some(p) => io::parse_bimodule(algebra, &read(p)?),
        None => Ok(Bimodule::regular(algebra)),
    }
}

fn load_lie_set(algebra: &LeibnizAlgebra, path: Option<&Path>) -> Result<Vec<Element>> {
    match path {
        Some(p) => io::parse_elements(algebra, &read(p)?),
        None => Ok(algebra
            .lie_set_closure(&algebra.basis(), DEFAULT_LIE_SET_CAP)?
            .members()
            .to_vec()),
    }
}

fn identity_slug(id: OperatorIdentity) -> &'static str {
    match id {
        OperatorIdentity::RightOfProduct => "right_of_product",
        OperatorIdentity::LeftRightCommutator => "left_right_commutator",
        OperatorIdentity::LeftOfProduct => "left_of_product",
        OperatorIdentity::RightRight => "right_right",
        OperatorIdentity::LeftOfPowerVanishes => "left_of_power_vanishes",
        OperatorIdentity::RightPower => "right_power",
    }
}

const IDENTITIES: [OperatorIdentity; 6] = [
    OperatorIdentity::RightOfProduct,
    OperatorIdentity::LeftRightCommutator,
    OperatorIdentity::LeftOfProduct,
    OperatorIdentity::RightRight,
    OperatorIdentity::LeftOfPowerVanishes,
    OperatorIdentity::RightPower,
];

fn validate(path: &Path, r: &mut Report) -> Result<()> {
    let a = io::parse_algebra_unvalidated(&read(path)?)?;
    let leibniz = a.validate();
    let witness = leibniz.violations.first().map(|v| {
        json!({
            "i": v.i + 1,
            "j": v.j + 1,
            "k": v.k + 1,
            "lhs": coords_json(&v.lhs),
            "rhs": coords_json(&v.rhs),
        })
    });
    r.premise("leibniz_identity", leibniz.passed(), witness);
    if !leibniz.passed() {
        r.note(format!("{} failing basis triples", leibniz.violations.len()));
        return Ok(());
    }
    let ops = a.verify_operator_identities();
    for id in IDENTITIES {
        let failures: Vec<_> = ops.failures.iter().filter(|f| f.identity == id).collect();
        let data = json!({
            "identity": id.describe(),
            "failures": failures.iter().take(5).map(|f| json!({
                "b": f.b + 1,
                "c": f.c.map(|c| c + 1),
                "exponent": f.exponent,
            })).collect::<Vec<_>>(),
        });
        r.conclusion(identity_slug(id), failures.is_empty(), Some(data));
    }
    Ok(())
}

fn analyze(path: &Path, r: &mut Report) -> Result<()> {
    let a = load_algebra(path)?;
    let nil = a.is_nilpotent_algebra();
    let dims: Vec<usize> = a.lower_central_series().iter().map(|s| s.dim()).collect();
    r.conclusion(
        "nilpotency",
        true,
        Some(json!({ "nilpotent": nil.nilpotent, "class": nil.class, "series_dims": dims })),
    );
    let ann = Bimodule::regular(&a).annihilator(&a)?;
    let basis: Vec<Value> = ann.carrier().basis().iter().map(|v| coords_json(v)).collect();
    r.conclusion(
        "regular_annihilator",
        true,
        Some(json!({ "dim": ann.carrier().dim(), "basis": basis })),
    );
    Ok(())
}

fn engel(path: &Path, module: Option<&Path>, lieset: Option<&Path>, r: &mut Report) -> Result<()> {
    let a = load_algebra(path)?;
    let m = load_module(&a, module)?;
    let c = load_lie_set(&a, lieset)?;
    let outcome = theorem2_verify(&a, &m, &c)?;
    r.absorb("", outcome.to_report(&a, "", ""));
    r.note(format!("Lie set has {} members", c.len()));
    Ok(())
}

fn lemma_bound(path: &Path, element: &str, module: Option<&Path>, r: &mut Report) -> Result<()> {
    let a = load_algebra(path)?;
    let m = load_module(&a, module)?;
    let x = io::parse_coords(&a, element)?;
    let axioms = m.validate(&a)?;
    r.premise(
        "bimodule_axioms",
        axioms.axioms_hold(),
        axioms.axiom_failures.first().map(|f| json!({ "axiom": f.axiom.describe(), "b": f.b + 1, "c": f.c + 1 })),
    );
    match lemma_word_bound_check(&a, &m, &x) {
        Ok(w) => {
            r.premise("left_action_nilpotent", true, Some(json!({ "exponent": w.left_exponent })));
            if r.premises_pass() {
                r.conclusion("right_power_vanishes", w.right_power_vanishes, Some(json!({ "n": w.n })));
                r.conclusion(
                    "words_vanish",
                    w.words_vanish,
                    Some(json!({ "word_length": w.word_length, "algebra_index": w.algebra_index })),
                );
            }
        }
        Err(Error::NotNilpotent(e)) => {
            r.premise("left_action_nilpotent", false, Some(json!({ "element": e })));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn corollary(
    which: u8,
    path: &Path,
    map: Option<&Path>,
    order: Option<u32>,
    ideals: Option<&Path>,
    lieset: Option<&Path>,
    r: &mut Report,
) -> Result<()> {
    let a = load_algebra(path)?;
    let need = |p: Option<&Path>, flag: &str| p.map(Path::to_path_buf).ok_or_else(|| Error::Parse(format!("corollary {which} needs --{flag}")));
    let sub = match which {
        3 => corollary3_check(&a, &load_lie_set(&a, lieset)?)?,
        4 | 5 => {
            let m = io::parse_map(&a, &read(&need(map, "map")?)?)?;
            if which == 4 {
                let p = order.ok_or_else(|| Error::Parse("corollary 4 needs --order".into()))?;
                corollary4_check(&a, &m.matrix, p)?
            } else {
                corollary5_check(&a, &m.matrix)?
            }
        }
        6 => {
            let family = io::parse_ideals(&a, &read(&need(ideals, "ideals")?)?)?;
            if family.len() < 2 {
                return Err(Error::Parse("corollary 6 needs at least two ideals".into()));
            }
            let mut report = corollary6_check(&a, &family[0], &family[1])?;
            let mut acc = family[0].sum(&family[1])?;
            for (k, next) in family.iter().enumerate().skip(2) {
                if !report.premises_pass() || !report.conclusions_pass() {
                    break;
                }
                let step = corollary6_check(&a, &acc, next)?;
                report.absorb(&format!("step{k}."), step);
                acc = acc.sum(next)?;
            }
            report
        }
        _ => unreachable!("clap restricts the range"),
    };
    r.absorb("", sub);
    Ok(())
}

fn generate(family: &str, field: &str, out: &Path, r: &mut Report) -> Result<()> {
    let field: Field = field.parse()?;
    let spec = family.parse::<Family>()?.over(field);
    let a = build(&spec)?;
    fs::write(out, io::algebra_to_json(&a)).map_err(|e| Error::Parse(format!("cannot write {}: {e}", out.display())))?;
    r.conclusion("validated", a.is_validated(), Some(json!({ "dim": a.dim(), "out": out.display().to_string() })));
    Ok(())
}

fn fuzz(seed: u64, count: usize, max_dim: usize, r: &mut Report) -> Result<()> {
    let corpus = fuzz_corpus(seed, count, max_dim)?;
    let mut tally = [0usize; 4];
    for (idx, item) in corpus.iter().enumerate() {
        let a = &item.algebra;
        let c = a.lie_set_closure(&a.basis(), DEFAULT_LIE_SET_CAP)?;
        let t2 = theorem2_verify(a, &item.module, c.members())?;
        let v2 = t2.verdict();
        let c3 = corollary3_check(a, c.members())?;
        for v in [v2, c3.verdict] {
            tally[v.exit_code() as usize] += 1;
        }
        let ok = v2 != Verdict::TheoremViolation && c3.verdict != Verdict::TheoremViolation;
        if !ok {
            r.conclusion(
                format!("item[{idx}]"),
                false,
                Some(json!({
                    "label": item.label(),
                    "theorem": v2.as_str(),
                    "failures": t2.conclusion_failures(),
                    "corollary3": c3.verdict.as_str(),
                })),
            );
        }
    }
    r.conclusion(
        "no_theorem_violations",
        tally[3] == 0,
        Some(json!({
            "items": corpus.len(),
            "checks": 2 * corpus.len(),
            "pass": tally[0],
            "premises_failed": tally[1],
            "violations": tally[3],
        })),
    );
    Ok(())
}

fn run(cmd: &Command, r: &mut Report) -> Result<()> {
    match cmd {
        Command::Validate { algebra } => validate(algebra, r),
        Command::Analyze { algebra } => analyze(algebra, r),
        Command::Engel { algebra, module, lieset } => engel(algebra, module.as_deref(), lieset.as_deref(), r),
        Command::LemmaBound { algebra, element, module } => lemma_bound(algebra, element, module.as_deref(), r),
        Command::Corollary {
            which,
            algebra,
            map,
            order,
            ideals,
            lieset,
        } => corollary(*which, algebra, map.as_deref(), *order, ideals.as_deref(), lieset.as_deref(), r),
        Command::Generate { family, out, field } => generate(family, field, out, r),
        Command::Fuzz { seed, count, max_dim } => fuzz(*seed, *count, *max_dim, r),
    }
}

fn print_human(r: &Report) {
    println!("{} {}: {}", r.command, r.input, r.verdict.as_str());
    for p in &r.premises {
        let mark = if p.pass { "ok" } else { "FAIL" };
        match &p.witness {
            Some(w) if !p.pass => println!("  premise    [{mark}] {}  {w}", p.name),
            _ => println!("  premise    [{mark}] {}", p.name),
        }
    }
    for c in &r.conclusions {
        let mark = if c.pass { "ok" } else { "FAIL" };
        match &c.data {
            Some(d) => println!("  conclusion [{mark}] {}  {d}", c.name),
            None => println!("  conclusion [{mark}] {}", c.name),
        }
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
    if let Some(e) = &r.error {
        println!("  error: {e}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.command.name(), cli.command.input());
    if let Err(e) = run(&cli.command, &mut report) {
        report.fail_with_error(e.to_string());
    }
    if let Some(path) = &cli.json {
        if let Err(e) = fs::write(path, report.to_json_pretty() + "\n") {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if !cli.quiet {
        print_human(&report);
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
