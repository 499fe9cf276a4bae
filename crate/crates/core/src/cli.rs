//! The `dgcoh` command line: argument parsing, command dispatch and report
//! emission. Exit status 0 means every check passed, 1 that a mathematical
//! check failed and 2 that the input was malformed.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::comodule::Bicomodule;
use crate::cyclic::{check_operator_identities, h_cohomology, hc, hoch, hoch_bicomodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixture::{pick, Fixture};
use crate::invariance::{
    check_morita_context, check_quasi_iso_invariance, conclude_cohomology_transfer, verify_cotilting, PipelineReport,
    TransferSource,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Hoch,
    H,
    Hc,
}

#[derive(Debug, Parser)]
#[command(name = "dgcoh", version, about = "Cohomology of differential graded coalgebras, computed exactly")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Override the fixture's field: `Q`, or a prime such as `F5` or `5`.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate every coalgebra, comodule, bicomodule and morphism in a fixture.
    Validate { file: PathBuf },
    /// Dimensions of Hoch, H or HC through a degree.
    Cohomology {
        #[arg(long, value_enum)]
        theory: Theory,
        #[arg(long)]
        max_degree: i32,
        /// Resolution levels (Hoch, H) or bicomplex columns (HC).
        #[arg(long)]
        levels: Option<usize>,
        /// A bicomodule of the fixture used as coefficients.
        #[arg(long)]
        coefficients: Option<String>,
        #[arg(long)]
        coalgebra: Option<String>,
        file: PathBuf,
    },
    /// Check the cyclic operator relations on `C^{⊗n+1}`.
    Operators {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        check: bool,
        #[arg(long)]
        coalgebra: Option<String>,
        file: PathBuf,
    },
    /// Run the quasi-isomorphism invariance pipeline on a named morphism.
    CheckQiso {
        #[arg(long)]
        map: String,
        #[arg(long)]
        max_degree: i32,
        file: PathBuf,
    },
    /// Verify every cotilting certificate of a fixture.
    CheckCotilting {
        /// Degree bound of the transfer table drawn from a passing certificate.
        #[arg(long, default_value_t = 3)]
        max_degree: i32,
        file: PathBuf,
    },
    /// Verify every Morita context of a fixture.
    CheckMorita { file: PathBuf },
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let digits = s.trim_start_matches("Fp").trim_start_matches('F').trim_start_matches(['_', ':']);
    let p: u32 = digits.parse().map_err(|_| format!("`{s}` is neither Q nor a prime field"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

/// What a command hands back to the emitter.
struct Outcome {
    passed: bool,
    result: Value,
    text: String,
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    status: &'a str,
    exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Standard output, standard error and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run a command line (including the program name).
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
            let rendered = e.render().to_string();
            return if code == EXIT_PASS {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let echo = &args[1.min(args.len())..];
    let (field, outcome) = match load(&cli) {
        Ok(fx) => (Some(fx.field), dispatch(&cli.command, &fx)),
        Err(e) => (None, Err(e)),
    };
    let (code, status) = match &outcome {
        Ok(o) if o.passed => (EXIT_PASS, "pass"),
        Ok(_) => (EXIT_FAIL, "fail"),
        Err(Error::Falsified(_)) => (EXIT_FAIL, "fail"),
        Err(_) => (EXIT_INVALID, "invalid input"),
    };
    match cli.format {
        Format::Json => {
            let (result, error) = match outcome {
                Ok(o) => (Some(o.result), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let report = Report { command: echo, field: field.map(field_name), status, exit: code, result, error };
            let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialize");
            stdout.push('\n');
            Output { code, stdout, stderr: String::new() }
        }
        Format::Text => match outcome {
            Ok(o) => Output { code, stdout: format!("{}status: {status}\n", o.text), stderr: String::new() },
            Err(e) => Output { code, stdout: String::new(), stderr: format!("error: {e}\n") },
        },
    }
}

fn file_of(c: &Command) -> &PathBuf {
    match c {
        Command::Validate { file }
        | Command::Cohomology { file, .. }
        | Command::Operators { file, .. }
        | Command::CheckQiso { file, .. }
        | Command::CheckCotilting { file, .. }
        | Command::CheckMorita { file } => file,
    }
}

fn load(cli: &Cli) -> Result<Fixture> {
    Fixture::load(file_of(&cli.command), cli.field)
}

fn dims_text(dims: &BTreeMap<i32, usize>) -> String {
    let mut s = String::from("  degree  dim\n");
    for (n, d) in dims {
        s.push_str(&format!("  {n:>6}  {d}\n"));
    }
    s
}

fn pipeline_text(title: &str, r: &PipelineReport) -> String {
    let mut s = format!("{title}\n");
    for st in &r.stages {
        s.push_str(&format!("  [{}] {}\n", if st.passed { "pass" } else { "FAIL" }, st.name));
        for c in st.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("      {} at {}\n", c.name, c.locus.as_deref().unwrap_or("?")));
        }
    }
    for t in &r.tables {
        let v = |m: &BTreeMap<i32, usize>| m.values().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        s.push_str(&format!("  {:<5} {} | {}\n", t.theory, v(&t.left), v(&t.right)));
    }
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dispatch(cmd: &Command, fx: &Fixture) -> Result<Outcome> {
    match cmd {
        Command::Validate { .. } => validate(fx),
        Command::Cohomology { theory, max_degree, levels, coefficients, coalgebra, .. } => {
            let n = *max_degree;
            let (name, dims) = match coefficients {
                Some(m) => {
                    let b = pick(&fx.bicomodules, "bicomodule", Some(m))?;
                    let dims = match theory {
                        Theory::Hoch => hoch_bicomodule(b, n, *levels)?,
                        Theory::H => h_cohomology(b, n, *levels)?,
                        Theory::Hc => {
                            return Err(Error::InvalidArgument("HC is defined without coefficients".into()));
                        }
                    };
                    (m.clone(), dims)
                }
                None => {
                    let c = fx.coalgebra(coalgebra.as_deref())?;
                    let name = coalgebra.clone().unwrap_or_else(|| fx.coalgebras.keys().next().cloned().unwrap_or_default());
                    let dims = match theory {
                        Theory::Hoch if levels.is_none() => hoch(c, n)?,
                        Theory::Hoch => hoch_bicomodule(&Bicomodule::regular(c), n, *levels)?,
                        Theory::H => h_cohomology(&Bicomodule::regular(c), n, *levels)?,
                        Theory::Hc => hc(c, n, *levels)?,
                    };
                    (name, dims)
                }
            };
            let label = match theory {
                Theory::Hoch => "Hoch",
                Theory::H => "H",
                Theory::Hc => "HC",
            };
            Ok(Outcome {
                passed: true,
                text: format!("{label} of `{name}` over {}\n{}", field_name(fx.field), dims_text(&dims)),
                result: json!({ "theory": theory, "object": name, "max_degree": n, "levels": levels, "dims": dims }),
            })
        }
        Command::Operators { arity, check, coalgebra, .. } => {
            let c = fx.coalgebra(coalgebra.as_deref())?;
            if !check {
                return Err(Error::InvalidArgument("nothing to do without --check".into()));
            }
            let checks = check_operator_identities(c, *arity)?;
            let passed = checks.iter().all(|x| x.holds);
            let mut text = format!("operator relations on C^⊗{} over {}\n", arity + 1, field_name(fx.field));
            for x in &checks {
                text.push_str(&format!("  [{}] {}\n", if x.holds { "pass" } else { "FAIL" }, x.identity));
            }
            Ok(Outcome { passed, text, result: json!({ "arity": arity, "checks": checks }) })
        }
        Command::CheckQiso { map, max_degree, .. } => {
            let f = pick(&fx.morphisms, "morphism", Some(map))?;
            let report = check_quasi_iso_invariance(f, *max_degree)?;
            let mut result = json!({ "map": map, "report": to_value(&report) });
            let mut text = pipeline_text(&format!("quasi-isomorphism invariance of `{map}`"), &report);
            if report.passed {
                let t = conclude_cohomology_transfer(TransferSource::QuasiIso(f), *max_degree)?;
                result["transfer"] = to_value(&t);
                text.push_str("  transfer: Hoch, H and HC agree\n");
            }
            Ok(Outcome { passed: report.passed, text, result })
        }
        Command::CheckCotilting { max_degree, .. } => {
            if fx.certificates.is_empty() {
                return Err(Error::Unresolved("the document has no certificate".into()));
            }
            let mut passed = true;
            let mut out = serde_json::Map::new();
            let mut text = String::new();
            for (name, cert) in &fx.certificates {
                let report = verify_cotilting(cert)?;
                passed &= report.passed;
                text.push_str(&pipeline_text(&format!("cotilting certificate `{name}`"), &report));
                let mut entry = json!({ "report": to_value(&report), "ext_verified_up_to": cert.ext_bound });
                if report.passed {
                    let t = conclude_cohomology_transfer(TransferSource::Cotilting(cert), *max_degree)?;
                    text.push_str(&format!("  transfer: Hoch and H agree through degree {max_degree}\n"));
                    entry["transfer"] = to_value(&t);
                }
                out.insert(name.clone(), entry);
            }
            Ok(Outcome { passed, text, result: json!({ "certificates": out }) })
        }
        Command::CheckMorita { .. } => {
            if fx.contexts.is_empty() {
                return Err(Error::Unresolved("the document has no context".into()));
            }
            let mut passed = true;
            let mut out = serde_json::Map::new();
            let mut text = String::new();
            for (name, ctx) in &fx.contexts {
                let report = check_morita_context(ctx)?;
                passed &= report.passed;
                text.push_str(&pipeline_text(&format!("Morita context `{name}`"), &report));
                out.insert(name.clone(), to_value(&report));
            }
            Ok(Outcome { passed, text, result: json!({ "contexts": out }) })
        }
    }
}

fn validate(fx: &Fixture) -> Result<Outcome> {
    let mut items = Vec::new();
    let mut text = String::new();
    let mut passed = true;
    let mut record = |kind: &str, name: &str, v: crate::coalgebra::Validation| {
        passed &= v.is_valid();
        text.push_str(&format!("  [{}] {kind} `{name}`\n", if v.is_valid() { "pass" } else { "FAIL" }));
        for f in &v.failures {
            text.push_str(&format!("      {} at `{}`\n", f.identity, f.locus));
        }
        items.push(json!({ "kind": kind, "name": name, "valid": v.is_valid(), "failures": v.failures }));
    };
    for (n, c) in &fx.coalgebras {
        record("coalgebra", n, c.validate());
    }
    for (n, m) in &fx.comodules {
        record("comodule", n, m.validate());
    }
    for (n, m) in &fx.bicomodules {
        record("bicomodule", n, m.validate());
    }
    for (n, f) in &fx.morphisms {
        record("morphism", n, f.validate());
    }
    Ok(Outcome { passed, text: format!("validation over {}\n{text}", field_name(fx.field)), result: json!({ "objects": items }) })
}
