use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homlab_core::carrier::{AlgebraFile, StructureFile};
use homlab_core::eval::{identity_value, is_lie, magma_violation, multilinear_violation};
use homlab_core::hierarchy::{paper_fixtures, verify_hierarchy_with};
use homlab_core::lie_suite::{
    expansion_residuals, lie_fixtures, self_adjointness_probe, verify_prop13_14, verify_property9, PropStatus,
    DEFAULT_SEED,
};
use homlab_core::search::default_workers;
use homlab_core::{
    builtin, find_model_with, from_relations, parse_identity, type_profile, Error, FieldHomAlgebra, FiniteHomMagma,
    Identity, Prime, SearchSpec, TypeTag,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "homlab", version, about = "Twisted associative and Lie identities on finite models")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Search threads (defaults to the available cores). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities on a structure or algebra file (all built-ins by default).
    Check {
        file: PathBuf,
        #[arg(long = "identity")]
        identities: Vec<String>,
    },
    /// Print the set of built-in types a structure satisfies.
    Profile { file: PathBuf },
    /// Search for a model described by a spec file.
    Search {
        spec: PathBuf,
        /// Override the spec's bound on non-zero elements.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Re-run the hierarchy and the Lie-side fixtures.
    Reproduce {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Run the Lie-side checks on an algebra file.
    LieVerify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Evaluate one identity at basis vectors, e.g. `--at 1,2,3`.
    Jacobiator {
        file: PathBuf,
        #[arg(long = "type")]
        tag: String,
        #[arg(long)]
        at: String,
    },
    /// Dump the built-in identities and all fixtures.
    Export {
        /// Also write each fixture to its own file in this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Process outcome: the report to print and the exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

enum Carrier {
    Magma(FiniteHomMagma),
    Algebra(FieldHomAlgebra),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// JSON structure file, JSON algebra file, or relations shorthand.
fn load_carrier(path: &Path) -> Result<Carrier, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if value.get("c").is_some() {
            let file: AlgebraFile = serde_json::from_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
            return Ok(Carrier::Algebra(file.to_algebra()?));
        }
        let file: StructureFile = serde_json::from_value(value).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(Carrier::Magma(file.to_magma()?));
    }
    Ok(Carrier::Magma(from_relations(&text)?))
}

fn load_algebra(path: &Path) -> Result<FieldHomAlgebra, Failure> {
    match load_carrier(path)? {
        Carrier::Algebra(a) => Ok(a),
        Carrier::Magma(_) => Err(Failure::Usage(format!("{}: expected an algebra file", path.display()))),
    }
}

fn check(path: &Path, sources: &[String]) -> Result<Report, Failure> {
    let carrier = load_carrier(path)?;
    let identities: Vec<(String, Identity)> = if sources.is_empty() {
        let tags: Vec<TypeTag> = match carrier {
            Carrier::Magma(_) => TypeTag::all_assoc().collect(),
            Carrier::Algebra(_) => TypeTag::all().collect(),
        };
        tags.into_iter().map(|t| (t.to_string(), builtin(t))).collect()
    } else {
        sources.iter().map(|s| Ok((s.clone(), parse_identity(s)?))).collect::<Result<_, Error>>()?
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_hold = true;
    for (label, id) in &identities {
        let witness = match &carrier {
            Carrier::Magma(m) => magma_violation(m, id)?.map(|w| w.map(|e| m.name(e))),
            Carrier::Algebra(a) => multilinear_violation(a, id)?.map(|w| w.map(|i| format!("e{}", i + 1))),
        };
        all_hold &= witness.is_none();
        match &witness {
            None => writeln!(text, "hold  {label}").unwrap(),
            Some([x, y, z]) => writeln!(text, "fail  {label}  at x={x}, y={y}, z={z}").unwrap(),
        }
        rows.push(json!({ "identity": label, "holds": witness.is_none(), "witness": witness }));
    }
    Ok(Report { text, json: Value::Array(rows), code: if all_hold { 0 } else { 1 } })
}

fn profile(path: &Path) -> Result<Report, Failure> {
    let p = match load_carrier(path)? {
        Carrier::Magma(m) => type_profile(&m),
        Carrier::Algebra(a) => type_profile(&a),
    };
    let sat: Vec<String> = p.satisfied.iter().map(|t| t.to_string()).collect();
    let vio: Vec<String> = p.violated().iter().map(|t| t.to_string()).collect();
    let text = format!("satisfied: {}\nviolated:  {}\n", sat.join(" "), vio.join(" "));
    Ok(Report { text, json: serde_json::to_value(&p).map_err(|e| Failure::Internal(e.to_string()))?, code: 0 })
}

fn search(path: &Path, max_n: Option<usize>, workers: usize) -> Result<Report, Failure> {
    let mut spec: SearchSpec =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if let Some(n) = max_n {
        spec.max_n = n;
    }
    let verdict = find_model_with(&spec, workers)?;
    let text = match verdict.countermodel() {
        Some(m) => format!("countermodel with {} non-zero elements\n  {}\n{m}", m.nonzero_count(), m.relations()),
        None => format!("no model with at most {} non-zero elements\n", spec.max_n),
    };
    let json = serde_json::to_value(verdict.to_json()).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Report { text, json, code: if verdict.is_exhausted() { 0 } else { 1 } })
}

fn reproduce(max_n: usize, workers: usize) -> Result<Report, Failure> {
    let report = verify_hierarchy_with(max_n, workers)?;
    let fixtures = lie_fixtures(Prime::DEFAULT)?;
    let mut text = report.to_string();
    writeln!(text, "lie fixtures (p = {})", Prime::DEFAULT.get()).unwrap();
    let mut lie_json = Vec::new();
    for f in &fixtures {
        for c in &f.claims {
            let claim = format!("{}: {}", c.text, if c.expected { "yes" } else { "no" });
            writeln!(text, "  {:<22} {:<34} {}", f.name, claim, if c.ok() { "pass" } else { "FAIL" }).unwrap();
        }
        lie_json.push(json!({ "name": f.name, "pass": f.all_ok(), "claims": f.claims }));
    }
    let passing = report.fixtures.iter().filter(|f| f.pass).count();
    writeln!(text, "{passing}/{} fixtures pass", report.fixtures.len()).unwrap();
    let ok = report.all_pass() && fixtures.iter().all(|f| f.all_ok());
    let json = json!({
        "max_n": max_n,
        "matrix": report.matrix(),
        "hierarchy": report,
        "lie": lie_json,
    });
    Ok(Report { text, json, code: if ok { 0 } else { 1 } })
}

fn status_word(s: PropStatus) -> &'static str {
    match s {
        PropStatus::HypothesisNotMet => "hypothesis not met",
        PropStatus::Confirmed => "confirmed",
        PropStatus::Refuted => "REFUTED",
    }
}

fn lie_verify(path: &Path, seed: u64) -> Result<Report, Failure> {
    let a = load_algebra(path)?;
    let expansion = expansion_residuals(&a)?;
    if !expansion.direct_equals_nine_term {
        return Err(Failure::Internal("induced Jacobiator differs from its bilinear expansion".into()));
    }
    let mut text = String::new();
    let mut refuted = false;
    let mut out = serde_json::Map::new();

    let lie = is_lie(&a)?;
    writeln!(text, "Jacobi identity: {}", if lie { "holds" } else { "fails" }).unwrap();
    out.insert("is_lie".into(), json!(lie));
    if lie {
        let p9 = verify_property9(&a)?;
        refuted |= !p9;
        writeln!(text, "J^I1+J^I2+J^I3 = 0 and J^II1+J^II2+J^II3 = 0: {}", if p9 { "holds" } else { "FAILS" }).unwrap();
        let induced = verify_prop13_14(&a)?;
        refuted |= induced.via_morphism == PropStatus::Refuted || induced.via_types == PropStatus::Refuted;
        writeln!(text, "induced bracket Lie (alpha a morphism): {}", status_word(induced.via_morphism)).unwrap();
        writeln!(text, "induced bracket Lie (types II and II1): {}", status_word(induced.via_types)).unwrap();
        out.insert("property9".into(), json!(p9));
        out.insert("induced".into(), serde_json::to_value(&induced).map_err(|e| Failure::Internal(e.to_string()))?);
    }
    writeln!(text, "induced Jacobiator = nine-term expansion: yes").unwrap();
    writeln!(
        text,
        "induced Jacobiator = J + six type Jacobiators: {}{}",
        if expansion.six_term_residual_zero { "yes" } else { "no" },
        if !expansion.six_term_residual_zero && expansion.residual_equals_omitted {
            " (residual is the two alpha-inside-alpha cyclic sums)"
        } else {
            ""
        }
    )
    .unwrap();
    out.insert("expansion".into(), serde_json::to_value(&expansion).map_err(|e| Failure::Internal(e.to_string()))?);
    if a.prime().get() != 2 {
        let sa = self_adjointness_probe(&a, seed)?;
        writeln!(text, "alpha self-adjoint: {}", if sa.self_adjoint { "yes" } else { "no" }).unwrap();
        refuted |= sa.implication_holds == Some(false) || sa.diagonal_vanishes == Some(false);
        out.insert("self_adjointness".into(), serde_json::to_value(&sa).map_err(|e| Failure::Internal(e.to_string()))?);
    }
    Ok(Report { text, json: Value::Object(out), code: if refuted { 1 } else { 0 } })
}

/// `1`, `e1` or a full coordinate vector `1:0:2`.
fn parse_vector(s: &str, p: Prime, dim: usize) -> Result<Vec<u32>, Failure> {
    let s = s.trim();
    let bad = || Failure::Usage(format!("bad vector `{s}`: use a basis index like e2 or coordinates like 1:0:2"));
    if s.contains(':') {
        let v: Vec<u32> = s
            .split(':')
            .map(|c| c.trim().parse::<i64>().map(|c| p.reduce(c)).map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if v.len() != dim {
            return Err(bad());
        }
        return Ok(v);
    }
    let i: usize = s.trim_start_matches('e').parse().map_err(|_| bad())?;
    if i == 0 || i > dim {
        return Err(bad());
    }
    let mut v = vec![0; dim];
    v[i - 1] = 1;
    Ok(v)
}

fn jacobiator(path: &Path, tag: &str, at: &str) -> Result<Report, Failure> {
    let a = load_algebra(path)?;
    let tag: TypeTag = tag.parse()?;
    let args: Vec<Vec<u32>> = at.split(',').map(|s| parse_vector(s, a.prime(), a.dim())).collect::<Result<_, _>>()?;
    let [x, y, z] = args.as_slice() else {
        return Err(Failure::Usage("--at needs three comma-separated vectors".into()));
    };
    let v = identity_value(&a, &builtin(tag), x, y, z)?;
    let text = format!("{tag} at ({at}) = {v:?}\n");
    Ok(Report { text, json: json!({ "type": tag.to_string(), "at": at, "value": v }), code: 0 })
}

fn export(out: Option<&Path>) -> Result<Report, Failure> {
    let identities: serde_json::Map<String, Value> =
        TypeTag::all().map(|t| (t.to_string(), json!(t.source()))).collect();
    let fixtures: Vec<Value> = paper_fixtures()
        .iter()
        .map(|f| {
            let model = f.load().map(|m| StructureFile::from_magma(&m)).ok();
            json!({ "fixture": f, "structure": model })
        })
        .collect();
    let lie: Vec<Value> = lie_fixtures(Prime::DEFAULT)?
        .iter()
        .map(|f| json!({ "name": f.name, "algebra": AlgebraFile::from_algebra(&f.algebra), "claims": f.claims }))
        .collect();
    if let Some(dir) = out {
        let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        for f in paper_fixtures() {
            let m = f.load()?;
            let body = serde_json::to_string_pretty(&StructureFile::from_magma(&m)).expect("serializable");
            fs::write(dir.join(format!("fixture-{}.json", f.id)), body + "\n").map_err(io)?;
        }
        for f in lie_fixtures(Prime::DEFAULT)? {
            let body = serde_json::to_string_pretty(&AlgebraFile::from_algebra(&f.algebra)).expect("serializable");
            fs::write(dir.join(format!("{}.json", f.name)), body + "\n").map_err(io)?;
        }
    }
    let json = json!({ "identities": identities, "fixtures": fixtures, "lie_fixtures": lie });
    let mut text = String::new();
    for t in TypeTag::all() {
        writeln!(text, "{:<10} {}", t.to_string(), t.source()).unwrap();
    }
    for f in paper_fixtures() {
        writeln!(text, "fixture {:<10} {:<34} {}", f.id, f.claim(), f.relations).unwrap();
    }
    Ok(Report { text, json, code: 0 })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let workers = cli.workers.unwrap_or_else(default_workers).max(1);
    match &cli.command {
        Command::Check { file, identities } => check(file, identities),
        Command::Profile { file } => profile(file),
        Command::Search { spec, max_n } => search(spec, *max_n, workers),
        Command::Reproduce { max_n } => reproduce(*max_n, workers),
        Command::LieVerify { file, seed } => lie_verify(file, *seed),
        Command::Jacobiator { file, tag, at } => jacobiator(file, tag, at),
        Command::Export { out } => export(out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(r.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
