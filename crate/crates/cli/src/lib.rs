//! Command-line driver: subcommand dispatch, report rendering and exit codes.
//!
//! Exit codes: 0 success or pass, 1 negative result or suite failure,
//! 2 usage or input error, 3 budget exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mlat_core::corpus::{write_shipped_corpus, Corpus};
use mlat_core::format::{
    parse_id_list, parse_map_or_image, read_extension, read_text, store_algebra, write_text,
    AlgebraFile,
};
use mlat_core::isoclinism::{
    find_extension_isoclinism, find_isoclinism, make_extension, pullback_extension, stem_reduce,
    verify_isoclinism, verify_witness_properties, CentralExtension,
};
use mlat_core::morph::fingerprint;
use mlat_core::structure::{quotient, CenterKind, SubSet, DEFAULT_IDEAL_BOUND};
use mlat_core::suite::{run_suite, Suite, SuiteOptions, SuiteReport};
use mlat_core::tensor::{tensor_square, MethodChoice, TensorOptions, DEFAULT_BUDGET};
use mlat_core::{FiniteMla, MlaError};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Environment variable naming the default corpus directory.
pub const CORPUS_ENV: &str = "MLAT_CORPUS";
pub const DEFAULT_CORPUS: &str = "corpus";

#[derive(Parser, Debug)]
#[command(
    name = "mlat",
    version,
    about = "Workbench for finite multiplicative Lie algebras"
)]
struct Cli {
    /// Write the structured (JSON) report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Snf,
    Enumeration,
}

impl From<Method> for MethodChoice {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => MethodChoice::Auto,
            Method::Snf => MethodChoice::Snf,
            Method::Enumeration => MethodChoice::Enumeration,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the five axioms for an algebra file.
    Validate { file: PathBuf },
    /// Centres, derived ideals and the isomorphism fingerprint.
    Invariants { file: PathBuf },
    /// Quotient by an ideal given as a list of ids.
    Quotient {
        file: PathBuf,
        /// Element ids, e.g. `0,2`.
        #[arg(long)]
        ideal: String,
    },
    /// Non-abelian tensor square.
    Tensor {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Maximum live coset rows during enumeration.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Search for an isoclinism between two algebras.
    Isoclinic { a: PathBuf, b: PathBuf },
    /// Search for an isoclinism between two central extensions.
    ExtIsoclinic { a: PathBuf, b: PathBuf },
    /// Reduce a central extension to an isoclinic stem extension.
    StemReduce { file: PathBuf },
    /// Pull back two extensions along a map of their quotients.
    Pullback {
        a: PathBuf,
        b: PathBuf,
        /// A map file or an inline id array such as `[0,1,2,3]`.
        #[arg(long)]
        nu: String,
    },
    /// Run a property suite (or `all`) over a corpus.
    Check {
        suite: String,
        /// Corpus directory; defaults to $MLAT_CORPUS, then `corpus`.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Write the shipped corpus into a directory.
    Corpus { dir: PathBuf },
}

/// Result of one command: exit code, human-readable text and the structured
/// report.
struct Outcome {
    code: i32,
    text: String,
    report: Value,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>, report: Value) -> Self {
        Outcome {
            code,
            text: text.into(),
            report,
        }
    }
}

fn error_code(e: &MlaError) -> i32 {
    match e {
        MlaError::BudgetExceeded { .. }
        | MlaError::BoundExceeded { .. }
        | MlaError::OrderTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn error_outcome(e: MlaError) -> Outcome {
    let code = error_code(&e);
    let kind = if code == EXIT_BUDGET {
        "budget"
    } else {
        "input"
    };
    Outcome::new(
        code,
        format!("error: {e}\n"),
        json!({ "error": kind, "message": e.to_string() }),
    )
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Deterministic JSON rendering of a structured report.
pub fn render_report(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Parses the command line and runs it. Returns the exit code and the text
/// that would be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Outcome::new(EXIT_USAGE, format!("error: {e}\n"), Value::Null),
        },
        None => dispatch(&cli.command),
    };
    let mut text = outcome.text;
    if let Some(path) = &cli.out {
        if let Err(e) = write_text(path, &render_report(&outcome.report)) {
            let _ = writeln!(text, "error: {e}");
            return (EXIT_USAGE, text);
        }
    }
    (outcome.code, text)
}

fn dispatch(command: &Command) -> Outcome {
    let result = match command {
        Command::Validate { file } => validate(file),
        Command::Invariants { file } => invariants(file),
        Command::Quotient { file, ideal } => quotient_cmd(file, ideal),
        Command::Tensor {
            file,
            method,
            budget,
        } => tensor_cmd(file, (*method).into(), *budget),
        Command::Isoclinic { a, b } => isoclinic(a, b),
        Command::ExtIsoclinic { a, b } => ext_isoclinic(a, b),
        Command::StemReduce { file } => stem_reduce_cmd(file),
        Command::Pullback { a, b, nu } => pullback_cmd(a, b, nu),
        Command::Check { suite, corpus } => check(suite, corpus.as_deref()),
        Command::Corpus { dir } => corpus_cmd(dir),
    };
    result.unwrap_or_else(error_outcome)
}

fn load(path: &Path) -> Result<FiniteMla, MlaError> {
    mlat_core::format::read_algebra(path)
}

fn load_extension(path: &Path) -> Result<CentralExtension, MlaError> {
    let loaded = read_extension(path)?;
    make_extension(&loaded.algebra, loaded.kernel)
}

fn validate(file: &Path) -> Result<Outcome, MlaError> {
    let unchecked = mlat_core::format::load_algebra(&read_text(file)?)?;
    let report = unchecked.validate();
    let text = if report.valid {
        "valid\n".to_string()
    } else {
        format!("invalid: {report}\n")
    };
    let code = if report.valid { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Outcome::new(code, text, to_value(&report)))
}

fn invariants(file: &Path) -> Result<Outcome, MlaError> {
    let g = load(file)?;
    let mut text = format!("{}: order {}", g.name(), g.order());
    let _ = writeln!(
        text,
        ", {}, {} star",
        if g.is_abelian() {
            "abelian"
        } else {
            "non-abelian"
        },
        if g.star_is_trivial() {
            "trivial"
        } else {
            "non-trivial"
        }
    );
    let mut centers = serde_json::Map::new();
    let mut derived = serde_json::Map::new();
    for kind in CenterKind::ALL {
        let key = to_value(&kind)
            .as_str()
            .expect("kind is a string")
            .to_string();
        let c = kind.center(&g);
        let d = kind.derived(&g);
        let _ = writeln!(text, "  {key} centre {c}, derived {d}");
        centers.insert(key.clone(), to_value(&c));
        derived.insert(key, to_value(&d));
    }
    let report = json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "star_trivial": g.star_is_trivial(),
        "centers": centers,
        "derived": derived,
        "fingerprint": fingerprint(&g),
    });
    Ok(Outcome::new(EXIT_OK, text, report))
}

fn quotient_cmd(file: &Path, ideal: &str) -> Result<Outcome, MlaError> {
    let g = load(file)?;
    let ids = parse_id_list(ideal)?;
    if let Some(bad) = ids.iter().find(|x| x.index() >= g.order()) {
        return Err(MlaError::Parse(format!(
            "id {bad} outside an algebra of order {}",
            g.order()
        )));
    }
    let ideal = SubSet::new(g.order(), ids);
    let (q, proj) = quotient(&g, &ideal)?;
    let q = q.with_name(format!("{}/{}", g.name(), ideal));
    let text = format!(
        "ideal {ideal}, quotient of order {}\n{}",
        q.order(),
        store_algebra(&q)
    );
    let report = json!({
        "ideal": ideal,
        "quotient": AlgebraFile::from_algebra(&q),
        "projection": proj,
    });
    Ok(Outcome::new(EXIT_OK, text, report))
}

fn tensor_cmd(file: &Path, method: MethodChoice, budget: usize) -> Result<Outcome, MlaError> {
    let g = load(file)?;
    let opts = TensorOptions {
        budget,
        ..TensorOptions::default().with_method(method)
    };
    let t = tensor_square(&g, &opts)?;
    let algebra = t
        .algebra
        .clone()
        .with_name(format!("{}⊗{}", g.name(), g.name()));
    let mut report = to_value(&AlgebraFile::from_algebra(&algebra));
    let obj = report.as_object_mut().expect("algebra file is an object");
    obj.insert("gen_map".into(), to_value(&t.gen_map));
    obj.insert("method".into(), to_value(&t.method));
    let text = format!(
        "tensor square of {}: order {} via {}\n",
        g.name(),
        t.algebra.order(),
        to_value(&t.method).as_str().unwrap_or_default()
    );
    Ok(Outcome::new(EXIT_OK, text, report))
}

fn isoclinic(a: &Path, b: &Path) -> Result<Outcome, MlaError> {
    let (g1, g2) = (load(a)?, load(b)?);
    match find_isoclinism(&g1, &g2) {
        Some(w) => {
            let verified = verify_isoclinism(&g1, &g2, &w).is_ok();
            let text = format!(
                "isoclinic: {} ~ {}\nlambda {}\nmu {}\n",
                g1.name(),
                g2.name(),
                to_value(&w.lambda),
                to_value(&w.mu)
            );
            let report = json!({
                "isoclinic": true,
                "lambda": w.lambda,
                "mu": w.mu,
                "checks": { "verified": verified },
            });
            Ok(Outcome::new(
                if verified { EXIT_OK } else { EXIT_NEGATIVE },
                text,
                report,
            ))
        }
        None => Ok(Outcome::new(
            EXIT_NEGATIVE,
            format!("not isoclinic: {} and {}\n", g1.name(), g2.name()),
            json!({ "isoclinic": false }),
        )),
    }
}

fn ext_isoclinic(a: &Path, b: &Path) -> Result<Outcome, MlaError> {
    let (e1, e2) = (load_extension(a)?, load_extension(b)?);
    match find_extension_isoclinism(&e1, &e2)? {
        Some(w) => {
            let props = verify_witness_properties(&e1, &e2, &w)?;
            let mut text = format!(
                "isoclinic extensions: {} ~ {}\nlambda {}\nmu {}\n",
                e1.name(),
                e2.name(),
                to_value(&w.lambda),
                to_value(&w.mu)
            );
            for f in &props.findings {
                let _ = writeln!(text, "finding: {f}");
            }
            let report = json!({
                "isoclinic": true,
                "lambda": w.lambda,
                "mu": w.mu,
                "checks": props,
            });
            Ok(Outcome::new(EXIT_OK, text, report))
        }
        None => Ok(Outcome::new(
            EXIT_NEGATIVE,
            format!("not isoclinic: {} and {}\n", e1.name(), e2.name()),
            json!({ "isoclinic": false }),
        )),
    }
}

fn stem_reduce_cmd(file: &Path) -> Result<Outcome, MlaError> {
    let e = load_extension(file)?;
    let r = stem_reduce(&e, DEFAULT_IDEAL_BOUND)?;
    let mut text = format!(
        "J = {}; reduced extension of order {} with kernel {}; {}\n",
        r.j,
        r.reduced.total.order(),
        r.reduced.kernel,
        if r.is_stem { "stem" } else { "not stem" }
    );
    for f in &r.findings {
        let _ = writeln!(text, "finding: {f}");
    }
    let code = if r.findings.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome::new(code, text, r.summary()))
}

fn pullback_cmd(a: &Path, b: &Path, nu: &str) -> Result<Outcome, MlaError> {
    let (e1, e2) = (load_extension(a)?, load_extension(b)?);
    let nu_text = if Path::new(nu).is_file() {
        read_text(Path::new(nu))?
    } else {
        nu.to_string()
    };
    let nu = parse_map_or_image(&nu_text)?;
    if nu.image().iter().any(|x| x.index() >= e2.quotient.order()) {
        return Err(MlaError::NotAMorphism(
            "nu has values outside the target quotient".into(),
        ));
    }
    let pb = pullback_extension(&e1, &e2, &nu)?;
    let order = pb.extension.total.order();
    let order_ok = pb.expected_order.is_none_or(|n| n == order);
    let ok = pb.kernel_matches && order_ok;
    let text = format!(
        "pullback of order {order} with kernel {}; kernel {} H1×H2\n",
        pb.extension.kernel,
        if pb.kernel_matches {
            "equals"
        } else {
            "differs from"
        }
    );
    let report = json!({
        "order": order,
        "expected_order": pb.expected_order,
        "kernel": pb.extension.kernel,
        "kernel_matches": pb.kernel_matches,
        "pairs": pb.pairs.iter().map(|(x, y)| [x.0, y.0]).collect::<Vec<_>>(),
        "algebra": AlgebraFile::from_algebra(&pb.extension.total),
    });
    Ok(Outcome::new(
        if ok { EXIT_OK } else { EXIT_NEGATIVE },
        text,
        report,
    ))
}

/// The corpus directory: the flag, then `$MLAT_CORPUS`, then `corpus`.
pub fn corpus_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CORPUS_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CORPUS))
}

fn check(suite: &str, corpus: Option<&Path>) -> Result<Outcome, MlaError> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::from_name(suite) {
            Some(s) => vec![s],
            None => {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Ok(Outcome::new(
                    EXIT_USAGE,
                    format!(
                        "error: unknown suite `{suite}`; expected all or one of {}\n",
                        names.join(", ")
                    ),
                    json!({ "error": "input", "message": format!("unknown suite {suite}") }),
                ));
            }
        }
    };
    let corpus = Corpus::load(&corpus_dir(corpus))?;
    let opts = SuiteOptions::default();
    let reports: Vec<SuiteReport> = suites
        .iter()
        .map(|&s| run_suite(s, &corpus, &opts))
        .collect::<Result<_, _>>()?;
    let text: String = reports.iter().map(SuiteReport::to_text).collect();
    let passed = reports.iter().all(|r| r.passed);
    let report = if reports.len() == 1 {
        to_value(&reports[0])
    } else {
        to_value(&reports)
    };
    Ok(Outcome::new(
        if passed { EXIT_OK } else { EXIT_NEGATIVE },
        text,
        report,
    ))
}

fn corpus_cmd(dir: &Path) -> Result<Outcome, MlaError> {
    let written = write_shipped_corpus(dir)?;
    let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    let text = format!("wrote {} files to {}\n", names.len(), dir.display());
    Ok(Outcome::new(EXIT_OK, text, json!({ "written": names })))
}
