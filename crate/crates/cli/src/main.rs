//! bicrossx: bicovariant differential calculi on finite bicrossproduct
//! quantum groups k(M)▶◁kG from a factorization X = GM.

mod document;
mod specfile;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bicrossx_core::cartan::{classify_calculi, FirstOrderCalculus};
use bicrossx_core::exterior::{cohomology, DeRham, Exterior, DEFAULT_TENSOR_BOUND};
use bicrossx_core::hopf::verify_all;
use bicrossx_core::tangent::{ClassificationReport, CrossedModule};
use bicrossx_core::{CoreError, Factorization};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::specfile::SpecFile;

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit code 2.
    Validation(String),
    /// A violated internal invariant: exit code 3.
    Internal(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(name = "bicrossx", version, about = "Bicovariant calculi, exterior algebras and cohomology on bicrossproduct quantum groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the irreducible bicovariant calculi
    Classify(Common),
    /// Commutation rules, d on generators, θ and the braiding of one calculus
    Cartan(Common),
    /// Dimensions and quadratic relations of the braided exterior algebra
    Exterior(Common),
    /// Betti numbers of the de Rham complex
    Cohomology(Common),
    /// Run the property suites
    Verify(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Catalog factorization, e.g. double_s3 or tensor:(1 2 3);(1 2)
    #[arg(long, conflicts_with = "spec")]
    builtin: Option<String>,
    /// Spec file with `key = value` lines
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Calculus ID such as C2R1 (all calculi when omitted)
    #[arg(long)]
    calculus: Option<String>,
    /// Highest form degree
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest tensor-power dimension dⁿ to reduce
    #[arg(long)]
    tensor_bound: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Π-equivariance samples for verify
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Session {
    f: Arc<Factorization>,
    cm: CrossedModule,
    input: Value,
    max_degree: usize,
    tensor_bound: usize,
    format: Format,
}

impl Session {
    fn open(c: &Common) -> Result<Self, CliError> {
        let spec = match (&c.builtin, &c.spec) {
            (Some(name), _) => SpecFile { builtin: Some(name.clone()), ..Default::default() },
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
                SpecFile::parse(&text)?
            },
            (None, None) => return Err(CliError::Validation("give --builtin <name> or --spec <file>".into())),
        };
        let format = match (c.format, spec.format.as_deref()) {
            (Some(f), _) => f,
            (None, None | Some("text")) => Format::Text,
            (None, Some("json")) => Format::Json,
            (None, Some(other)) => return Err(CliError::Validation(format!("spec format `{other}` is not text or json"))),
        };
        let f = Arc::new(spec.factorization()?);
        let cm = CrossedModule::new(f.clone())?;
        let input = match &spec.builtin {
            Some(b) => json!({"builtin": b}),
            None => json!({"x_generators": spec.x_generators, "g_generators": spec.g_generators, "m_generators": spec.m_generators}),
        };
        Ok(Session {
            f,
            cm,
            input,
            max_degree: c.max_degree.or(spec.max_degree).unwrap_or(4),
            tensor_bound: c.tensor_bound.or(spec.tensor_bound).unwrap_or(DEFAULT_TENSOR_BOUND),
            format,
        })
    }

    fn calculi(&self, report: &ClassificationReport, id: Option<&str>) -> Result<Vec<FirstOrderCalculus>, CliError> {
        let items: Vec<_> = match id {
            Some(id) => vec![report.item(id).ok_or_else(|| CliError::Validation(format!("unknown calculus `{id}`; known: {}", report.items.iter().map(|d| d.id.as_str()).collect::<Vec<_>>().join(", "))))?.clone()],
            None => report.items.clone(),
        };
        items.into_iter().map(|d| FirstOrderCalculus::new(&self.cm, d).map_err(CliError::from)).collect()
    }
}

fn classify(s: &Session) -> Result<Map<String, Value>, CliError> {
    let report = classify_calculi(&s.cm)?;
    let mut doc = document::header("classify", s.input.clone(), &s.f);
    doc.insert("z".into(), document::z_block(&s.f, &report));
    let mut records = Vec::new();
    for calc in s.calculi(&report, None)? {
        let mut r = document::calculus_record(&s.f, &calc.datum, &calc);
        r.insert("h0_is_scalars".into(), json!(calc.h0_dim() == 1));
        records.push(Value::Object(r));
    }
    doc.insert("dims".into(), json!(report.dims()));
    doc.insert("calculi".into(), Value::Array(records));
    Ok(doc)
}

fn cartan(s: &Session, id: Option<&str>) -> Result<Map<String, Value>, CliError> {
    let id = id.ok_or_else(|| CliError::Validation("cartan needs --calculus <ID>".into()))?;
    let report = classify_calculi(&s.cm)?;
    let calc = s.calculi(&report, Some(id))?.remove(0);
    let mut doc = document::header("cartan", s.input.clone(), &s.f);
    let mut r = document::calculus_record(&s.f, &calc.datum, &calc);
    r.insert("commutation".into(), document::commutation(&s.f, &calc));
    r.insert("braiding".into(), document::braiding(&calc.braiding()));
    doc.insert("calculus".into(), Value::Object(r));
    Ok(doc)
}

fn exterior(s: &Session, id: Option<&str>) -> Result<Map<String, Value>, CliError> {
    let report = classify_calculi(&s.cm)?;
    let mut doc = document::header("exterior", s.input.clone(), &s.f);
    let mut records = Vec::new();
    for calc in s.calculi(&report, id)? {
        let ext = Exterior::new(&calc.braiding(), s.max_degree, s.tensor_bound);
        records.push(json!({"id": calc.datum.id, "dim": calc.dim, "exterior": document::exterior(calc.dim, &ext)}));
    }
    doc.insert("options".into(), json!({"max_degree": s.max_degree, "tensor_bound": s.tensor_bound}));
    doc.insert("calculi".into(), Value::Array(records));
    Ok(doc)
}

fn cohomology_cmd(s: &Session, id: Option<&str>) -> Result<Map<String, Value>, CliError> {
    let report = classify_calculi(&s.cm)?;
    let mut doc = document::header("cohomology", s.input.clone(), &s.f);
    let mut records = Vec::new();
    for calc in s.calculi(&report, id)? {
        let h = cohomology(&calc, s.max_degree, s.tensor_bound);
        records.push(json!({"id": calc.datum.id, "dim": calc.dim, "cohomology": document::cohomology(&h)}));
    }
    doc.insert("options".into(), json!({"max_degree": s.max_degree, "tensor_bound": s.tensor_bound}));
    doc.insert("calculi".into(), Value::Array(records));
    Ok(doc)
}

fn suite(passed: bool, detail: Value) -> Value { json!({"passed": passed, "detail": detail}) }

fn verify(s: &Session, id: Option<&str>, samples: usize) -> Result<(Map<String, Value>, bool), CliError> {
    let mut suites = Map::new();
    let mp = s.f.verify_matched_pair();
    suites.insert("matched_pair".into(), suite(mp.is_ok(), json!(mp.err().map(|e| e.to_string()))));
    let cmv = s.cm.verify();
    suites.insert("crossed_module".into(), suite(cmv.is_ok(), json!(cmv.err().map(|e| e.to_string()))));
    match verify_all(&s.f, &s.cm, samples) {
        Ok(v) => suites.insert("hopf".into(), suite(v.theta.passed(), document::hopf(&v))),
        Err(e) => suites.insert("hopf".into(), suite(false, json!(e.to_string()))),
    };
    let report = classify_calculi(&s.cm)?;
    let mut per = Vec::new();
    let mut all_calc = true;
    for d in report.items.iter().filter(|d| id.is_none_or(|i| i == d.id)) {
        let mut failures = Vec::new();
        match FirstOrderCalculus::new(&s.cm, d.clone()) {
            Err(e) => failures.push(e.to_string()),
            Ok(calc) => {
                if let Err(e) = calc.verify_bimodule() {
                    failures.push(e.to_string());
                }
                let psi = calc.braiding();
                if psi != calc.braiding_oracle() {
                    failures.push("braiding differs from the dual-basis oracle".into());
                }
                let ext = Exterior::new(&psi, 3, s.tensor_bound);
                let dr = DeRham::new(&calc, &ext);
                for n in 0..=1 {
                    if dr.d_squared_vanishes(n) == Some(false) {
                        failures.push(format!("d² ≠ 0 on Ω^{n}"));
                    }
                }
                let h = cohomology(&calc, 1, s.tensor_bound);
                if !h.theta_in_h1() {
                    failures.push("θ is not a nonzero class in H¹".into());
                }
            },
        }
        all_calc &= failures.is_empty();
        per.push(json!({"id": d.id, "passed": failures.is_empty(), "failures": failures}));
    }
    suites.insert("calculi".into(), suite(all_calc, Value::Array(per)));
    let passed = suites.values().all(|v| v["passed"] == json!(true));
    let mut doc = document::header("verify", s.input.clone(), &s.f);
    doc.insert("suites".into(), Value::Object(suites));
    doc.insert("passed".into(), json!(passed));
    Ok((doc, passed))
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let (name, common) = match &cli.command {
        Command::Classify(c) => ("classify", c),
        Command::Cartan(c) => ("cartan", c),
        Command::Exterior(c) => ("exterior", c),
        Command::Cohomology(c) => ("cohomology", c),
        Command::Verify(c) => ("verify", c),
    };
    let s = Session::open(common)?;
    let id = common.calculus.as_deref();
    let (doc, ok) = match name {
        "classify" => (classify(&s)?, true),
        "cartan" => (cartan(&s, id)?, true),
        "exterior" => (exterior(&s, id)?, true),
        "cohomology" => (cohomology_cmd(&s, id)?, true),
        _ => verify(&s, id, common.samples)?,
    };
    let doc = Value::Object(doc);
    let out = match s.format {
        Format::Json => serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?,
        Format::Text => text::render(&doc),
    };
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        },
        Err(CliError::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        },
        Err(CliError::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        },
    }
}
