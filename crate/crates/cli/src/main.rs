use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use rk2hn_core::algebra::rational::to_wire;
use rk2hn_core::algebra::{parse_poly, parse_rational, Rational, RationalPoly};
use rk2hn_core::coverings::{covering_stability, fiber_point_stability};
use rk2hn_core::kempf::envelope_maximize;
use rk2hn_core::kempf_eval::kempf_eval;
use rk2hn_core::selftest::run_selftest;
use rk2hn_core::tensor::{hn_from_report, stability_with_jobs, validate_tensor, Rank2Tensor, TensorError};
use rk2hn_core::wire::{self, TensorInput};

mod table;

const EXIT_INPUT: u8 = 2;
const EXIT_STRICT: u8 = 3;

const TENSOR_SCHEMA: &str = r#"tensor input:
  {"bundle": {"a": 0, "b": 0}, "s": 2, "M_degree": 0,
   "coeffs": [{"i": 2, "poly": "1"}],        keyed by exponent of X0, or
   "coeffs": ["1", "0", "0"],                listed from i = s down to 0
   "tau": "1",                               optional
   "fibers": ["0", "1/2"]}                   optional, covering only"#;

const GRAPH_SCHEMA: &str = r#"graph input:
  {"b": ["1", "2", "1"], "v": ["-3", "0", "3"]}   positive weights, balanced v"#;

#[derive(Parser)]
#[command(name = "rk2hn", version, about = "Exact stability and Harder-Narasimhan data for rank-2 tensors over P^1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file, or - for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Stability parameter as an exact rational, e.g. 7/2.
    #[arg(long, global = true)]
    tau: Option<String>,
    /// Polynomial parameter in m for `kempf`, e.g. "m + 1".
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Twist m for `kempf`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    m: Option<i64>,
    /// Exit with status 3 on an incomplete candidate search or a tie.
    #[arg(long, global = true)]
    strict: bool,
    /// Threads for candidate evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Command {
    /// Concave envelope of a weighted graph and the maximizing direction.
    Envelope,
    /// Candidate table and verdict.
    Stability,
    /// Harder-Narasimhan subbundle of an unstable tensor.
    Hn,
    /// Stability through sections of the ruled surface.
    Covering,
    /// Point configuration on the fiber over x.
    Fiber {
        #[arg(long, allow_negative_numbers = true)]
        x: Vec<String>,
    },
    /// Kempf function on one-step filtrations against K(m).
    Kempf {
        /// Weight n_1 of the filtration step.
        #[arg(long, default_value = "1")]
        weight: String,
    },
    /// Embedded oracle suites.
    Selftest {
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Envelope => "envelope",
            Command::Stability => "stability",
            Command::Hn => "hn",
            Command::Covering => "covering",
            Command::Fiber { .. } => "fiber",
            Command::Kempf { .. } => "kempf",
            Command::Selftest { .. } => "selftest",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

/// Failure with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
    schema: Option<&'static str>,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
            schema: None,
        }
    }

    fn with_schema(mut self, schema: &'static str) -> Self {
        self.schema = Some(schema);
        self
    }
}

pub struct Report {
    pub command: &'static str,
    pub options: Value,
    pub input: Option<(String, Value)>,
    pub result: Value,
    pub warnings: Vec<String>,
    /// Set when `--strict` should turn the warnings into a failure.
    pub strict_violation: bool,
}

impl Report {
    fn to_json(&self) -> Value {
        let mut out = json!({
            "command": self.command,
            "options": self.options,
            "result": self.result,
            "warnings": self.warnings,
        });
        if let Some((digest, canonical)) = &self.input {
            out["input_digest"] = json!(digest);
            out["input"] = canonical.clone();
        }
        out
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
    }
}

/// SHA-256 of the canonical input document.
fn digest(canonical: &Value) -> String {
    let bytes = serde_json::to_vec(canonical).expect("values always serialize");
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn rational_flag(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::input(format!("--{name}: {e}")))
}

struct TensorDoc {
    tensor: Rank2Tensor,
    input: TensorInput,
    canonical: Value,
}

fn load_tensor(cli: &Cli) -> Result<TensorDoc, Failure> {
    let text = read_input(&cli.input)?;
    let bad = |e: &dyn ToString| Failure::input(e.to_string()).with_schema(TENSOR_SCHEMA);
    let value = wire::parse_json(&text).map_err(|e| bad(&e))?;
    let input = wire::tensor_from_json(&value).map_err(|e| bad(&e))?;
    let tensor = validate_tensor(&input.raw).map_err(|e| bad(&e))?;
    let mut canonical = wire::raw_tensor_to_json(&input.raw);
    if let Some(t) = &input.tau {
        canonical["tau"] = json!(to_wire(t));
    }
    if !input.fibers.is_empty() {
        canonical["fibers"] = json!(input.fibers.iter().map(to_wire).collect::<Vec<_>>());
    }
    Ok(TensorDoc {
        tensor,
        input,
        canonical,
    })
}

fn resolve_tau(cli: &Cli, doc: &TensorDoc) -> Result<Rational, Failure> {
    match (&cli.tau, &doc.input.tau) {
        (Some(t), _) => rational_flag("tau", t),
        (None, Some(t)) => Ok(t.clone()),
        (None, None) => Err(Failure::input("no tau: pass --tau or set \"tau\" in the input")),
    }
}

fn tensor_report(cli: &Cli, doc: TensorDoc) -> Result<Report, Failure> {
    let mut options = serde_json::Map::new();
    let mut warnings = Vec::new();
    let mut strict_violation = false;
    let t = &doc.tensor;
    let result = match cli.command {
        Command::Stability | Command::Hn => {
            let tau = resolve_tau(cli, &doc)?;
            options.insert("tau".into(), json!(to_wire(&tau)));
            let report = stability_with_jobs(t, &tau, cli.jobs.max(1)).map_err(Failure::input)?;
            if !report.complete {
                warnings.push("candidate search incomplete: some factors have no root over Q(x)".into());
                strict_violation |= report.incomplete();
            }
            if report.tie() {
                warnings.push(format!("tie anomaly: {} candidates attain the maximum", report.maximizers));
                strict_violation = true;
            }
            if cli.command == Command::Stability {
                wire::stability_to_json(&report)
            } else {
                match hn_from_report(t, &report) {
                    Ok(hn) => wire::hn_to_json(&hn),
                    Err(TensorError::NotUnstable) => {
                        warnings.push(format!("the tensor is {} at this tau", report.verdict));
                        Value::Null
                    }
                    Err(TensorError::TieAnomaly { .. }) => Value::Null,
                    Err(e) => return Err(Failure::input(e)),
                }
            }
        }
        Command::Covering => {
            let tau = resolve_tau(cli, &doc)?;
            options.insert("tau".into(), json!(to_wire(&tau)));
            let report = covering_stability(t, &tau, &doc.input.fibers).map_err(Failure::input)?;
            if !report.complete {
                warnings.push("candidate search incomplete: some factors have no root over Q(x)".into());
                strict_violation |= report.verdict != rk2hn_core::tensor::Verdict::Unstable;
            }
            wire::covering_to_json(&report)
        }
        Command::Fiber { ref x } => {
            let points = if x.is_empty() {
                doc.input.fibers.clone()
            } else {
                x.iter().map(|v| rational_flag("x", v)).collect::<Result<_, _>>()?
            };
            if points.is_empty() {
                return Err(Failure::input("no fiber: pass --x or set \"fibers\" in the input"));
            }
            options.insert("x".into(), json!(points.iter().map(to_wire).collect::<Vec<_>>()));
            let samples = points
                .iter()
                .map(|x0| fiber_point_stability(t, x0))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::input)?;
            json!({"fibers": samples.iter().map(wire::fiber_to_json).collect::<Vec<_>>()})
        }
        Command::Kempf { ref weight } => {
            let m = cli.m.ok_or_else(|| Failure::input("kempf needs --m"))?;
            let delta = match (&cli.delta, &cli.tau, &doc.input.tau) {
                (Some(d), _, _) => parse_poly(d).map_err(|e| Failure::input(format!("--delta: {e}")))?,
                (None, Some(t), _) => RationalPoly::constant(rational_flag("tau", t)?),
                (None, None, Some(t)) => RationalPoly::constant(t.clone()),
                (None, None, None) => return Err(Failure::input("kempf needs --delta")),
            };
            let n1 = rational_flag("weight", weight)?;
            options.insert("m".into(), json!(m));
            options.insert("delta".into(), json!(delta.to_string()));
            options.insert("weight".into(), json!(to_wire(&n1)));
            let ev = kempf_eval(t, &delta, m, &n1).map_err(Failure::input)?;
            if ev.rows.iter().any(|r| !r.proportional || !r.envelope_agrees) {
                warnings.push("Kempf value and closed form disagree".into());
                strict_violation = true;
            }
            wire::kempf_to_json(&ev)
        }
        Command::Envelope | Command::Selftest { .. } => unreachable!("not a tensor command"),
    };
    Ok(Report {
        command: cli.command.name(),
        options: Value::Object(options),
        input: Some((digest(&doc.canonical), doc.canonical)),
        result,
        warnings,
        strict_violation,
    })
}

fn envelope_report(cli: &Cli) -> Result<Report, Failure> {
    let text = read_input(&cli.input)?;
    let bad = |e: &dyn ToString| Failure::input(e.to_string()).with_schema(GRAPH_SCHEMA);
    let value = wire::parse_json(&text).map_err(|e| bad(&e))?;
    let wv = wire::graph_from_json(&value).map_err(|e| bad(&e))?;
    let canonical = json!({
        "b": wv.b().iter().map(to_wire).collect::<Vec<_>>(),
        "v": wv.v().iter().map(to_wire).collect::<Vec<_>>(),
    });
    Ok(Report {
        command: "envelope",
        options: json!({}),
        input: Some((digest(&canonical), canonical)),
        result: wire::envelope_to_json(&envelope_maximize(&wv)),
        warnings: Vec::new(),
        strict_violation: false,
    })
}

fn selftest_report(seed: u64) -> Report {
    let suites = run_selftest(seed);
    let failed: Vec<String> = suites
        .iter()
        .filter(|s| !s.passed())
        .map(|s| format!("suite {} failed", s.name))
        .collect();
    let result = json!({
        "passed": failed.is_empty(),
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "cases": s.cases,
            "passed": s.passed(),
            "failures": s.failures,
        })).collect::<Vec<_>>(),
    });
    Report {
        command: "selftest",
        options: json!({"seed": seed}),
        input: None,
        result,
        strict_violation: !failed.is_empty(),
        warnings: failed,
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Envelope => envelope_report(cli),
        Command::Selftest { seed } => Ok(selftest_report(seed)),
        _ => tensor_report(cli, load_tensor(cli)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => print!("{}", wire::render(&report.to_json())),
                Format::Table => print!("{}", table::render(&report)),
            }
            let selftest_failed = matches!(cli.command, Command::Selftest { .. }) && report.strict_violation;
            if selftest_failed {
                ExitCode::FAILURE
            } else if cli.strict && report.strict_violation {
                ExitCode::from(EXIT_STRICT)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(schema) = f.schema {
                eprintln!("\n{schema}");
            }
            ExitCode::from(f.code)
        }
    }
}
