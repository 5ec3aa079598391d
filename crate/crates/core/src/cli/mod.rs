//! The `qlucas` command-line front end.
//!
//! Every command prints a text report, or with `--json` a JSON envelope
//! `{"command", "status", "result"}` that validates against
//! `docs/report.schema.json`. JSON output contains no timestamps, so
//! identical invocations produce identical bytes.
//!
//! Exit status: 0 when the command succeeded and every check passed, 1 when
//! a verification found failures, 2 on configuration errors.
//!
//! A `--config` file holds a JSON object whose keys are the long flag names
//! of the command (with `_` for `-`); flags given on the command line win.

pub mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::congruence::{self, AperyFamily, CongruenceReport};
use crate::grid::GridRegion;
use crate::intpoly::cyclotomic;
use crate::landau::{self, parse_rational};
use crate::qcombinatorics::{self, RatioError, RatioSpec};
use crate::relations::{self, RationalSeries};
use crate::series::{self, TruncatedSeries};

/// Exact q-factorial ratios, cyclotomic congruences and relation probes.
#[derive(Debug, Parser)]
#[command(name = "qlucas", version)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Worker threads for parallel sweeps [default: all cores].
    #[arg(long, global = true, env = "QLUCAS_THREADS")]
    pub threads: Option<usize>,

    /// JSON file with default values for the command's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the cyclotomic polynomial phi_b.
    Cyclotomic(CyclotomicArgs),
    /// Print the Gaussian binomial [n choose k]_q.
    Qbinom(QbinomArgs),
    /// Compute Q_{e,f}(q; n).
    Qratio(QratioArgs),
    /// Decide Delta >= 0 everywhere and Delta >= 1 on D.
    CheckLandau(CheckLandauArgs),
    /// Sweep Q(q; a + n b) = Q(q; a) Q(1; n) mod phi_b.
    VerifyCongruence(SweepArgs),
    /// Sweep Q(1; a + n p) = Q(1; a) Q(1; n) mod p over primes p.
    VerifyPlucas(PlucasArgs),
    /// Check Q(q; n b) = Q(1; n) mod phi_b.
    VerifyInter2(Inter2Args),
    /// Dump the truncated series F_{e,f}(q; x).
    BuildSeries(BuildSeriesArgs),
    /// Dump F_{e,f}(q; q^t1 x^m1, ..., q^td x^md).
    Specialize(SpecializeArgs),
    /// Extract B(q; x) with F(q; q^t x^m) = B(q; x) F(1; x^(b m)) mod phi_b.
    ExtractCofactor(CofactorArgs),
    /// Sweep the q-Apery congruences.
    VerifyApery(AperyArgs),
    /// Check g(x) = A(x) g(x^(p^k)) mod p on a truncation.
    VerifyLd(LdArgs),
    /// Search for polynomial relations among truncated series.
    FindRelations(RelationArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SpecSource {
    /// RatioSpec JSON file: {"dim": d, "e": [[..], ..], "f": [[..], ..]}.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Built-in spec: central-binomial[:r], apery, apery-second,
    /// binomial-power:r.
    #[arg(long, conflicts_with = "spec")]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct CyclotomicArgs {
    pub b: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct QbinomArgs {
    pub n: Option<u64>,
    pub k: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct QratioArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Point n, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// division, cyclotomic or both [default: both].
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct CheckLandauArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Cap on explored signatures [default: 1000000].
    #[arg(long)]
    pub budget: Option<u64>,
    /// Also decide whether m.x >= 1 implies Delta >= 1.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Largest modulus b [default: 10].
    #[arg(long)]
    pub b_max: Option<u64>,
    /// Componentwise bound on n [default: 4 in every coordinate].
    #[arg(long, value_delimiter = ',')]
    pub n_box: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct PlucasArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Largest prime p [default: 7].
    #[arg(long)]
    pub p_max: Option<u64>,
    /// Componentwise bound on n [default: 4 in every coordinate].
    #[arg(long, value_delimiter = ',')]
    pub n_box: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct Inter2Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Modulus b [default: 2].
    #[arg(long)]
    pub b: Option<u64>,
    /// Componentwise bound on n [default: 4 in every coordinate].
    #[arg(long, value_delimiter = ',')]
    pub n_box: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct BuildSeriesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Componentwise exponent cap [default: 6].
    #[arg(long)]
    pub order: Option<u64>,
    /// Bound the total degree instead of each exponent.
    #[arg(long)]
    pub total: bool,
    /// Evaluate every coefficient at q = 1.
    #[arg(long)]
    pub at_one: bool,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SpecializeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Powers of q, comma separated [default: all zero].
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<u64>>,
    /// Powers of x, comma separated [default: all one].
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u64>>,
    /// Last power of x [default: 20].
    #[arg(long)]
    pub order: Option<u64>,
    /// Evaluate every coefficient at q = 1.
    #[arg(long)]
    pub at_one: bool,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct CofactorArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Powers of q, comma separated [default: all zero].
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<u64>>,
    /// Powers of x, comma separated [default: all one].
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u64>>,
    /// Modulus b [default: 2].
    #[arg(long)]
    pub b: Option<u64>,
    /// Last power of x checked [default: 20].
    #[arg(long)]
    pub order: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct AperyArgs {
    /// a or b [default: a].
    #[arg(long)]
    pub family: Option<String>,
    /// Powers q^(t k), comma separated [default: 0].
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<u64>>,
    /// Largest modulus b [default: 10].
    #[arg(long)]
    pub b_max: Option<u64>,
    /// Largest index m + n b [default: 40].
    #[arg(long)]
    pub n_max: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct LdArgs {
    /// central-binomial:r, factorial, or spec (F_{e,f}(1; x) of --spec or
    /// --preset) [default: central-binomial:1].
    #[arg(long)]
    pub series: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub source: SpecSource,
    /// Primes p, comma separated [default: 2,3,5].
    #[arg(long, value_delimiter = ',')]
    pub p: Option<Vec<u64>>,
    /// Exponent k in p^k [default: 1].
    #[arg(long)]
    pub k: Option<u32>,
    /// Componentwise exponent cap [default: 40].
    #[arg(long)]
    pub order: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct RelationArgs {
    /// Series, comma separated: central:r, apery-a, apery-b, geometric.
    #[arg(long, value_delimiter = ',')]
    pub series: Option<Vec<String>>,
    /// Value of q for the q-analogs, as p/q [default: 1].
    #[arg(long)]
    pub q: Option<String>,
    /// Degree bound in x [default: 1].
    #[arg(long)]
    pub dx: Option<u64>,
    /// Total degree bound in the series [default: 2].
    #[arg(long)]
    pub dy: Option<u64>,
    /// Truncation order [default: smallest admissible].
    #[arg(long)]
    pub order: Option<u64>,
}

/// A failed command: `Config` maps to exit status 2.
#[derive(Debug)]
pub enum CliError {
    Config(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Outcome of a command: its JSON result, its text rendering and whether
/// every check passed.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new(result: impl Serialize, text: String, passed: bool) -> Result<Self, CliError> {
        Ok(Self {
            result: serde_json::to_value(result)?,
            text,
            passed,
        })
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` unless `--output` is given. Returns the exit status.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok((name, outcome)) => {
            let body = if cli.json {
                let status = if outcome.passed { "ok" } else { "failed" };
                let envelope = json!({ "command": name, "status": status, "result": outcome.result });
                let mut s = serde_json::to_string_pretty(&envelope).expect("JSON values serialize");
                s.push('\n');
                s
            } else {
                outcome.text
            };
            let written = match &cli.output {
                Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Config(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn load_config(path: Option<&Path>) -> Result<Option<serde_json::Map<String, Value>>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match serde_json::from_str::<Value>(&text)? {
        Value::Object(map) => Ok(Some(map)),
        _ => Err(CliError::Config(format!(
            "{} must contain a JSON object",
            path.display()
        ))),
    }
}

/// Fills flags left unset on the command line from the config object.
fn merge<T: Serialize + DeserializeOwned>(
    args: &T,
    config: Option<&serde_json::Map<String, Value>>,
) -> Result<T, CliError> {
    let mut value = serde_json::to_value(args)?;
    if let (Some(config), Value::Object(slots)) = (config, &mut value) {
        for (key, v) in config {
            if let Some(slot) = slots.get_mut(key) {
                if slot.is_null() || *slot == Value::Bool(false) {
                    *slot = v.clone();
                }
            }
        }
    }
    serde_json::from_value(value).map_err(|e| CliError::Config(format!("invalid config value: {e}")))
}

/// Resolves `central-binomial[:r]`, `apery`, `apery-second` and
/// `binomial-power:r`.
pub fn preset(name: &str) -> Result<RatioSpec, CliError> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (
            b,
            Some(
                p.parse::<usize>()
                    .map_err(|_| format!("bad preset parameter in {name:?}"))?,
            ),
        ),
        None => (name, None),
    };
    match (base, param) {
        ("central-binomial", r) => Ok(RatioSpec::central_binomial_power(r.unwrap_or(1).max(1))),
        ("apery", None) => Ok(RatioSpec::apery()),
        ("apery-second", None) => Ok(RatioSpec::apery_second()),
        ("binomial-power", Some(r)) if r >= 1 => Ok(RatioSpec::binomial_power(r)),
        _ => Err(CliError::Config(format!("unknown preset {name:?}"))),
    }
}

fn load_spec(source: &SpecSource) -> Result<RatioSpec, CliError> {
    match (&source.spec, &source.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid spec {}: {e}", path.display())))
        }
        (None, Some(name)) => preset(name),
        (None, None) => Err(CliError::Config(
            "a spec is required: pass --spec FILE or --preset NAME".into(),
        )),
    }
}

fn dimensioned(v: Option<Vec<u64>>, dim: usize, default: u64, flag: &str) -> Result<Vec<u64>, CliError> {
    let v = v.unwrap_or_else(|| vec![default; dim]);
    if v.len() != dim {
        return Err(CliError::Config(format!(
            "--{flag} needs {dim} values, got {}",
            v.len()
        )));
    }
    Ok(v)
}

fn positive(v: u64, flag: &str) -> Result<u64, CliError> {
    if v == 0 {
        return Err(CliError::Config(format!("--{flag} must be positive")));
    }
    Ok(v)
}

fn run(cli: &Cli) -> Result<(&'static str, Outcome), CliError> {
    if let Some(n) = cli.threads {
        // a second initialization (several runs in one process) keeps the
        // first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let config = load_config(cli.config.as_deref())?;
    let cfg = config.as_ref();
    Ok(match &cli.command {
        Command::Cyclotomic(a) => ("cyclotomic", cmd_cyclotomic(merge(a, cfg)?)?),
        Command::Qbinom(a) => ("qbinom", cmd_qbinom(merge(a, cfg)?)?),
        Command::Qratio(a) => ("qratio", cmd_qratio(merge(a, cfg)?)?),
        Command::CheckLandau(a) => ("check-landau", cmd_check_landau(merge(a, cfg)?)?),
        Command::VerifyCongruence(a) => ("verify-congruence", cmd_verify_congruence(merge(a, cfg)?)?),
        Command::VerifyPlucas(a) => ("verify-plucas", cmd_verify_plucas(merge(a, cfg)?)?),
        Command::VerifyInter2(a) => ("verify-inter2", cmd_verify_inter2(merge(a, cfg)?)?),
        Command::BuildSeries(a) => ("build-series", cmd_build_series(merge(a, cfg)?)?),
        Command::Specialize(a) => ("specialize", cmd_specialize(merge(a, cfg)?)?),
        Command::ExtractCofactor(a) => ("extract-cofactor", cmd_extract_cofactor(merge(a, cfg)?)?),
        Command::VerifyApery(a) => ("verify-apery", cmd_verify_apery(merge(a, cfg)?)?),
        Command::VerifyLd(a) => ("verify-ld", cmd_verify_ld(merge(a, cfg)?)?),
        Command::FindRelations(a) => ("find-relations", cmd_find_relations(merge(a, cfg)?)?),
    })
}

fn cmd_cyclotomic(a: CyclotomicArgs) -> Result<Outcome, CliError> {
    let b = positive(a.b.ok_or("missing argument <B>")?, "b")?;
    let phi = cyclotomic(b);
    let result = json!({
        "b": b,
        "degree": phi.len() - 1,
        "polynomial": &*phi,
        "value_at_one": phi.eval_at_one().to_string(),
    });
    Outcome::new(result, format!("{}\n", render::poly(&phi)), true)
}

fn cmd_qbinom(a: QbinomArgs) -> Result<Outcome, CliError> {
    let n = a.n.ok_or("missing argument <N>")?;
    let k = a.k.ok_or("missing argument <K>")?;
    let p = qcombinatorics::q_binomial(n, k);
    let at_one = p.eval_at_one();
    let result = json!({ "n": n, "k": k, "polynomial": &p, "value_at_one": at_one.to_string() });
    let text = format!("{}\nat q = 1: {}\n", render::poly(&p), render::int(&at_one));
    Outcome::new(result, text, true)
}

fn cmd_qratio(a: QratioArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let n = dimensioned(a.n, spec.dim(), 1, "n")?;
    let method = a.method.unwrap_or_else(|| "both".into());
    let (division, cyclo) = match method.as_str() {
        "division" => (true, false),
        "cyclotomic" => (false, true),
        "both" => (true, true),
        other => return Err(CliError::Config(format!("unknown method {other:?}"))),
    };
    let by_division = division.then(|| qcombinatorics::q_ratio(&spec, &n));
    let by_cyclotomic = cyclo.then(|| qcombinatorics::q_ratio_cyclotomic(&spec, &n));
    let value = match (&by_division, &by_cyclotomic) {
        (Some(r), _) | (None, Some(r)) => r.clone(),
        (None, None) => unreachable!("at least one method runs"),
    };
    let agree = match (&by_division, &by_cyclotomic) {
        (Some(x), Some(y)) => Some(x.is_ok() == y.is_ok() && x.as_ref().ok() == y.as_ref().ok()),
        _ => None,
    };
    let exponents = qcombinatorics::cyclotomic_exponents(&spec, &n);
    let mut text = format!("spec: {}\nn = {}\n", render::spec(&spec), render::vector(&n));
    let (result, passed) = match value {
        Ok(p) => {
            let at_one = p.eval_at_one();
            text.push_str(&format!(
                "Q(q; n) = {}\nQ(1; n) = {}\n",
                render::poly(&p),
                render::int(&at_one)
            ));
            let result = json!({
                "spec": spec, "n": n, "method": method, "polynomial": p,
                "value_at_one": at_one.to_string(), "degree": p.len() - 1,
                "cyclotomic_bound": qcombinatorics::cyclotomic_bound(&spec, &n),
                "cyclotomic_exponents": exponents, "methods_agree": agree,
            });
            (result, agree != Some(false))
        }
        Err(e) => {
            text.push_str(&format!("not a polynomial: {e}\n"));
            let witness = match &e {
                RatioError::NegativeExponent { b, exponent, .. } => json!({ "b": b, "exponent": exponent }),
                _ => Value::Null,
            };
            let result = json!({
                "spec": spec, "n": n, "method": method, "polynomial": null,
                "error": e.to_string(), "negative_exponent": witness,
                "cyclotomic_bound": qcombinatorics::cyclotomic_bound(&spec, &n),
                "cyclotomic_exponents": exponents, "methods_agree": agree,
            });
            (result, false)
        }
    };
    if agree == Some(false) {
        text.push_str("the two methods disagree\n");
    }
    Outcome::new(result, text, passed)
}

fn cmd_check_landau(a: CheckLandauArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let budget = a.budget.unwrap_or(landau::DEFAULT_SIGNATURE_BUDGET);
    let report = landau::check_landau_with_budget(&spec, budget)?;
    let mut text = render::landau(&report);
    let mut passed = report.passes();
    let specialization = match a.m {
        Some(m) => {
            let m = dimensioned(Some(m), spec.dim(), 1, "m")?;
            let s = landau::check_specialization(&spec, &m)?;
            text.push_str(&render::specialization(&s));
            passed &= s.holds;
            Some(s)
        }
        None => None,
    };
    let mut result = serde_json::to_value(&report)?;
    result["specialization"] = serde_json::to_value(specialization)?;
    Outcome::new(result, text, passed)
}

fn congruence_outcome(report: CongruenceReport) -> Result<Outcome, CliError> {
    let text = render::congruence(&report);
    let passed = report.passed();
    Outcome::new(report, text, passed)
}

fn cmd_verify_congruence(a: SweepArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let n_box = dimensioned(a.n_box, spec.dim(), 4, "n-box")?;
    let b_max = positive(a.b_max.unwrap_or(10), "b-max")?;
    congruence_outcome(congruence::verify_ratio_congruence(&spec, b_max, &n_box)?)
}

fn cmd_verify_plucas(a: PlucasArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let n_box = dimensioned(a.n_box, spec.dim(), 4, "n-box")?;
    congruence_outcome(congruence::verify_plucas_at_one(&spec, a.p_max.unwrap_or(7), &n_box)?)
}

fn cmd_verify_inter2(a: Inter2Args) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let n_box = dimensioned(a.n_box, spec.dim(), 4, "n-box")?;
    let b = positive(a.b.unwrap_or(2), "b")?;
    congruence_outcome(congruence::verify_inter2_identity(&spec, b, &n_box)?)
}

fn region_for(dim: usize, order: u64, total: bool) -> GridRegion {
    if total {
        GridRegion::Simplex { dim, total: order }
    } else {
        GridRegion::cube(dim, order)
    }
}

fn cmd_build_series(a: BuildSeriesArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let region = region_for(spec.dim(), a.order.unwrap_or(6), a.total);
    let mut f = series::build_f(&spec, &region)?;
    if a.at_one {
        f = f.at_one();
    }
    let entries = f.to_entries();
    let text = format!("spec: {}\n{}", render::spec(&spec), render::series(&entries));
    let result = json!({ "spec": spec, "region": region, "at_one": a.at_one, "series": entries });
    Outcome::new(result, text, true)
}

/// `F_{e,f}(q; q^t x^m)` through `x^order`, built on the smallest region
/// that determines it.
fn specialized(spec: &RatioSpec, t: &[u64], m: &[u64], order: u64) -> Result<TruncatedSeries, CliError> {
    if m.contains(&0) {
        return Err(CliError::Config("every component of --m must be positive".into()));
    }
    let caps: Vec<u64> = m.iter().map(|&mj| order / mj).collect();
    let f = series::build_f(spec, &GridRegion::Box(caps))?;
    Ok(series::specialize(&f, t, m, order)?)
}

fn cmd_specialize(a: SpecializeArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let t = dimensioned(a.t, spec.dim(), 0, "t")?;
    let m = dimensioned(a.m, spec.dim(), 1, "m")?;
    let order = a.order.unwrap_or(20);
    let mut s = specialized(&spec, &t, &m, order)?;
    if a.at_one {
        s = s.at_one();
    }
    let entries = s.to_entries();
    let text = format!(
        "spec: {}\nt = {}, m = {}\n{}",
        render::spec(&spec),
        render::vector(&t),
        render::vector(&m),
        render::series(&entries)
    );
    let result = json!({ "spec": spec, "t": t, "m": m, "order": order, "at_one": a.at_one, "series": entries });
    Outcome::new(result, text, true)
}

fn cmd_extract_cofactor(a: CofactorArgs) -> Result<Outcome, CliError> {
    let spec = load_spec(&a.source)?;
    let t = dimensioned(a.t, spec.dim(), 0, "t")?;
    let m = dimensioned(a.m, spec.dim(), 1, "m")?;
    let b = positive(a.b.unwrap_or(2), "b")?;
    let order = a.order.unwrap_or(20);
    let fq = specialized(&spec, &t, &m, order)?;
    let zero = vec![0; spec.dim()];
    let g: Vec<BigInt> = specialized(&spec, &zero, &m, order / b)?
        .univariate_coeffs(order / b)?
        .iter()
        .map(|c| c.eval_at_one())
        .collect();
    let cofactor = series::extract_cofactor(&fq, &g, b, order)?;
    let text = format!(
        "spec: {}\nt = {}, m = {}\n{}",
        render::spec(&spec),
        render::vector(&t),
        render::vector(&m),
        render::cofactor(&cofactor)
    );
    let passed = cofactor.report.passed();
    let mut result = serde_json::to_value(&cofactor)?;
    result["spec"] = serde_json::to_value(&spec)?;
    result["t"] = json!(t);
    result["m"] = json!(m);
    Outcome::new(result, text, passed)
}

fn family(name: Option<&str>) -> Result<AperyFamily, CliError> {
    match name.unwrap_or("a") {
        "a" => Ok(AperyFamily::A),
        "b" => Ok(AperyFamily::B),
        other => Err(CliError::Config(format!("unknown Apery family {other:?}"))),
    }
}

fn cmd_verify_apery(a: AperyArgs) -> Result<Outcome, CliError> {
    let fam = family(a.family.as_deref())?;
    let ts = a.t.unwrap_or_else(|| vec![0]);
    let b_max = positive(a.b_max.unwrap_or(10), "b-max")?;
    let reports = congruence::verify_apery_multi(fam, &ts, b_max, a.n_max.unwrap_or(40));
    let text: String = reports.iter().map(render::congruence).collect::<Vec<_>>().join("\n");
    let passed = reports.iter().all(CongruenceReport::passed);
    let result = json!({ "family": fam, "reports": reports });
    Outcome::new(result, text, passed)
}

fn cmd_verify_ld(a: LdArgs) -> Result<Outcome, CliError> {
    let order = a.order.unwrap_or(40);
    let kind = a.series.clone().unwrap_or_else(|| "central-binomial:1".into());
    let (name, param) = match kind.split_once(':') {
        Some((n, p)) => (
            n,
            Some(
                p.parse::<u32>()
                    .map_err(|_| format!("bad series parameter in {kind:?}"))?,
            ),
        ),
        None => (kind.as_str(), None),
    };
    let g = match (name, param) {
        ("central-binomial", r) => series::central_binomial_series(r.unwrap_or(1), order),
        ("factorial", None) => series::factorial_series(order),
        ("spec", None) => {
            let spec = load_spec(&a.source)?;
            series::build_f(&spec, &GridRegion::cube(spec.dim(), order))?.at_one()
        }
        _ => return Err(CliError::Config(format!("unknown series {kind:?}"))),
    };
    let k = a.k.unwrap_or(1);
    let verdicts =
        a.p.unwrap_or_else(|| vec![2, 3, 5])
            .into_iter()
            .map(|p| series::verify_definition_ld(&g, p, k))
            .collect::<Result<Vec<_>, _>>()?;
    let text = format!(
        "series: {kind}\n{}",
        verdicts.iter().map(render::lucas).collect::<String>()
    );
    let passed = verdicts.iter().all(|v| v.holds);
    Outcome::new(json!({ "series": kind, "verdicts": verdicts }), text, passed)
}

/// Coefficients `0..=len-1` of a named one-variable series at `q`.
fn named_series(name: &str, q: &BigRational, len: u64) -> Result<RationalSeries, CliError> {
    let order = len - 1;
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (
            b,
            Some(
                p.parse::<u32>()
                    .map_err(|_| format!("bad series parameter in {name:?}"))?,
            ),
        ),
        None => (name, None),
    };
    let spec = match (base, param) {
        ("geometric", None) => return Ok(vec![BigRational::from_integer(1.into()); len as usize]),
        ("central", Some(r)) if r >= 1 => RatioSpec::central_binomial_power(r as usize),
        ("apery-a", None) => RatioSpec::apery(),
        ("apery-b", None) => RatioSpec::apery_second(),
        _ => return Err(CliError::Config(format!("unknown series {name:?}"))),
    };
    let m = vec![1; spec.dim()];
    let t = vec![0; spec.dim()];
    let fq = specialized(&spec, &t, &m, order)?;
    Ok(relations::evaluate_at(&fq, q, order)?)
}

fn cmd_find_relations(a: RelationArgs) -> Result<Outcome, CliError> {
    let names = a.series.ok_or("--series is required")?;
    let q = parse_rational(a.q.as_deref().unwrap_or("1"))?;
    let dx = a.dx.unwrap_or(1);
    let dy = a.dy.unwrap_or(2);
    let needed = relations::unknown_count(names.len(), dx, dy) as u64 + relations::SAFETY_MARGIN;
    let order = a.order.unwrap_or(needed);
    // twice the order, for the stability recheck
    let len = 2 * order + 1;
    let series = names
        .iter()
        .map(|n| named_series(n, &q, len))
        .collect::<Result<Vec<_>, _>>()?;
    let search = relations::find_relations(&series, dx, dy, order)?;
    let text = format!(
        "series: {} at q = {}\n{}",
        names.join(", "),
        landau::format_rational(&q),
        render::relations(&search)
    );
    let passed = !search.candidates.iter().any(|c| c.is_truncation_artifact());
    let mut result = serde_json::to_value(&search)?;
    result["series"] = json!(names);
    result["q"] = json!(landau::format_rational(&q));
    Outcome::new(result, text, passed)
}
