//! The `qf` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::acceptance::{run_all, AcceptanceConfig};
use crate::analysis::{analyze, embed, find_isomorphism};
use crate::catalog::catalog;
use crate::gl2::probes::{
    count_trivial_components_pgl, jordan_type_probe, max_trivial_pair_check, noncommuting_return_pair, r3_probe, root_transport_probe,
    subquandle_order_test,
};
use crate::gl2::{
    conj_op, parse_complex, random_member, residual, sample_rng, two_step_path, witness_in_class, ClassLabel, GlError, Mat2, WitnessReport,
    WitnessStatus, ALL_SOLUTIONS_SINGULAR, DEFAULT_TOL, ONE, TRACE_MUST_BE_ZERO,
};
use crate::quandle::{build, iterate, validate, QuandleError, QuandleSpec, QuandleTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qf", version, about = "Finite quandles and conjugation quandles of GL(2, C)")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Base seed; sample `i` uses `seed + i`. Accepts `0x` hex.
    #[arg(long, global = true, env = "QF_SEED", default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    /// Relative tolerance in the max norm.
    #[arg(long, global = true, env = "QF_TOL", default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    pub tol: f64,
    /// Sample count for sampled checks.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got `{s}`")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, check and compare finite quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Checks on conjugation quandles of 2×2 matrices.
    #[command(subcommand)]
    Gl2(Gl2Cmd),
    /// The acceptance suite over the quandle catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Debug, Subcommand)]
enum QuandleCmd {
    /// Print the operation table.
    Build {
        #[arg(long)]
        spec: String,
    },
    /// Check the quandle axioms; `file:` specs are read without validation first.
    Validate {
        #[arg(long)]
        spec: String,
    },
    /// Latin, orbits, connectivity degree, type and abelianization rank.
    Analyze {
        #[arg(long)]
        spec: String,
    },
    /// The table of `x *_n y`.
    Iterate {
        #[arg(long)]
        spec: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Search for an isomorphism `a → b` within a node budget.
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Injective homomorphism from `pattern` into `target`.
    Embed {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Gl2Cmd {
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    id: LemmaId,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    l1: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    l2: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    lam: Option<Complex64>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    m: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LemmaId {
    /// D(λ2, λ1) reaches D(λ1, λ2) in one step iff λ1 = −λ2.
    #[value(name = "lemma-4.1")]
    Lemma4_1,
    /// Every non-diagonal member conjugates onto both diagonals.
    #[value(name = "lemma-4.2")]
    Lemma4_2,
    /// Singular obstruction in M_{λ,−λ}.
    #[value(name = "lemma-4.4")]
    Lemma4_4,
    /// M_{λ1,λ2} is 2-connected.
    #[value(name = "thm-4.6")]
    Thm4_6,
    /// M_λ is 2-connected but not 1-connected.
    #[value(name = "thm-4.14")]
    Thm4_14,
    /// Iterated ∗ₙ on the Jordan base point never returns.
    #[value(name = "lemma-5.3")]
    Lemma5_3,
    /// M_{λ1,λ2} is an n-quandle iff (λ1/λ2)ⁿ = 1.
    #[value(name = "lemma-5.6")]
    Lemma5_6,
    /// Conjugation by P equals n-fold conjugation by an n-th root of P.
    #[value(name = "prop-6.1")]
    Prop6_1,
    /// n trivial components of the n-th PGL quandle.
    #[value(name = "lemma-6.15")]
    Lemma6_15,
    /// Largest trivial subquandle of M_{λ1,λ2} has two elements.
    #[value(name = "max-trivial")]
    MaxTrivial,
    /// Non-commuting A, B with D ∗ A ∗ B = D.
    #[value(name = "lemma-7.5")]
    Lemma7_5,
    /// No R_3 in M_{λ1,λ2} (λ1 ≠ ±λ2) or in M_λ (with --lam).
    #[value(name = "thm-7.7")]
    Thm7_7,
    /// R_3 inside M_{λ,−λ}.
    #[value(name = "thm-7.8")]
    Thm7_8,
}

impl LemmaId {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Subcommand)]
enum CatalogCmd {
    /// Run every acceptance criterion and report pass/fail per item.
    Run,
    /// List the catalog quandles with their sizes.
    List,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<QuandleError> for CliError {
    fn from(e: QuandleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GlError> for CliError {
    fn from(e: GlError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// One command's result in every output format.
struct Report {
    json: String,
    text: String,
    csv: Vec<Vec<String>>,
    /// Names of failed checks; empty when everything passed.
    failures: Vec<String>,
}

fn scalar_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Header and one row from the top-level fields of a JSON object.
fn object_rows(value: &Value) -> Vec<Vec<String>> {
    match value {
        Value::Object(map) => vec![map.keys().cloned().collect(), map.values().map(scalar_cell).collect()],
        other => vec![vec!["value".into()], vec![scalar_cell(other)]],
    }
}

fn report<T: Serialize>(value: &T, text: String, failures: Vec<String>) -> Result<Report, CliError> {
    let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    let csv = object_rows(&serde_json::to_value(value).map_err(|e| CliError::Usage(e.to_string()))?);
    Ok(Report { json, text, csv, failures })
}

fn load(spec: &str) -> Result<QuandleTable, CliError> {
    Ok(build(&spec.parse::<QuandleSpec>()?)?)
}

#[derive(Serialize)]
struct TableOut<'a> {
    name: &'a str,
    size: usize,
    table: Vec<Vec<usize>>,
}

fn table_report(t: &QuandleTable) -> Result<Report, CliError> {
    let mut r = report(&TableOut { name: t.name(), size: t.size(), table: t.rows() }, t.to_text(), Vec::new())?;
    r.csv = t.rows().iter().map(|row| row.iter().map(usize::to_string).collect()).collect();
    Ok(r)
}

fn key_values(value: &Value) -> String {
    match value {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", scalar_cell(v))).collect(),
        other => format!("{}\n", scalar_cell(other)),
    }
}

fn quandle_command(cmd: &QuandleCmd) -> Result<Report, CliError> {
    match cmd {
        QuandleCmd::Build { spec } => table_report(&load(spec)?),
        QuandleCmd::Validate { spec } => {
            let table = match spec.parse::<QuandleSpec>()? {
                QuandleSpec::FromTable(path) => QuandleTable::from_file(&path)?,
                other => build(&other)?,
            };
            let axioms = validate(&table);
            let failures = if axioms.is_quandle() { Vec::new() } else { vec![format!("{}: {axioms}", table.name())] };
            report(&axioms, format!("{}: {axioms}\n", table.name()), failures)
        }
        QuandleCmd::Analyze { spec } => {
            let a = analyze(&load(spec)?)?;
            let value = serde_json::to_value(&a).map_err(|e| CliError::Usage(e.to_string()))?;
            report(&a, key_values(&value), Vec::new())
        }
        QuandleCmd::Iterate { spec, n } => {
            let n = usize::try_from(*n).map_err(|e| CliError::Usage(e.to_string()))?;
            table_report(&iterate(&load(spec)?, n)?)
        }
        QuandleCmd::Iso { a, b, budget } => {
            let r = find_isomorphism(&load(a)?, &load(b)?, *budget)?;
            let value = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
            report(&r, key_values(&value), Vec::new())
        }
        QuandleCmd::Embed { pattern, target, budget } => {
            let r = embed(&load(pattern)?, &load(target)?, *budget)?;
            let value = serde_json::to_value(&r).map_err(|e| CliError::Usage(e.to_string()))?;
            report(&r, key_values(&value), Vec::new())
        }
    }
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Debug, Serialize)]
struct Verification {
    id: String,
    passed: bool,
    checks: Vec<Check>,
    report: Value,
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }
}

fn summary(r: &WitnessReport) -> String {
    let mut s = format!("{:?}", r.status);
    if !r.matrices.is_empty() {
        let ms: Vec<String> = r.matrices.iter().map(Mat2::to_string).collect();
        s.push_str(&format!(" {} residual {:.1e}", ms.join(", "), r.residual));
    }
    if let Some(tag) = &r.refutation {
        s.push_str(&format!(" ({tag})"));
    }
    s
}

fn to_json<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Usage(e.to_string()))
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn opposite(l1: Complex64, l2: Complex64) -> bool {
    (l1 + l2).norm() <= crate::gl2::CLASS_TOL * l1.norm().max(1.0)
}

fn verify(args: &VerifyArgs, cfg: &RunConfig) -> Result<(Checks, Value), CliError> {
    let tol = cfg.tol;
    let samples = cfg.samples;
    let mut checks = Checks(Vec::new());
    let pair = |d1: f64, d2: f64| (args.l1.unwrap_or(c(d1)), args.l2.unwrap_or(c(d2)));
    let value = match args.id {
        LemmaId::Lemma4_1 => {
            let (l1, l2) = pair(1.0, -1.0);
            let cls = ClassLabel::diag_pair(l1, l2)?;
            let r = witness_in_class(&Mat2::diag(l2, l1), &Mat2::diag(l1, l2), &cls, tol)?;
            if opposite(l1, l2) {
                checks.add("one step exists when λ1 = −λ2", r.is_witness(), summary(&r));
            } else {
                let refuted = r.status == WitnessStatus::NoWitness && r.refutation.as_deref() == Some(TRACE_MUST_BE_ZERO);
                checks.add("no single step when λ1 ≠ −λ2", refuted, summary(&r));
            }
            to_json(&r)?
        }
        LemmaId::Lemma4_2 => {
            let (l1, l2) = pair(2.0, 3.0);
            if opposite(l1, l2) {
                return Err(CliError::Usage("lemma-4.2 needs λ1 ≠ ±λ2".into()));
            }
            let cls = ClassLabel::diag_pair(l1, l2)?;
            let targets = [Mat2::diag(l1, l2), Mat2::diag(l2, l1)];
            let (mut forward, mut backward, mut first) = (0, 0, Vec::new());
            for i in 0..samples {
                let a = random_member(&cls, &mut sample_rng(cfg.seed, i));
                for d in &targets {
                    let x = witness_in_class(&a, d, &cls, tol)?;
                    forward += usize::from(x.is_witness());
                    // A = D ∗ W⁻¹ with W⁻¹ ∈ M_{1/λ1, 1/λ2} for W the step from D to A
                    let w = witness_in_class(d, &a, &cls, tol)?;
                    let inverse_ok = w.is_witness() && residual(&conj_op(d, &w.matrices[0].inv()?, -1)?, &a) <= tol;
                    backward += usize::from(inverse_ok);
                    if i == 0 {
                        first.push(x);
                    }
                }
            }
            let total = 2 * samples as usize;
            checks.add("A ∗ X = D(λ1, λ2) and A ∗ Y = D(λ2, λ1)", forward == total, format!("{forward}/{total}"));
            checks.add("D ∗ X⁻¹ = A with X in the inverse class", backward == total, format!("{backward}/{total}"));
            to_json(&first)?
        }
        LemmaId::Lemma4_4 => {
            let lam = args.l1.or(args.lam).unwrap_or(ONE);
            let cls = ClassLabel::diag_pair(lam, -lam)?;
            let target = Mat2::real(-1.0, 0.0, 1.0, 1.0).scale(lam);
            let r = witness_in_class(&Mat2::diag(lam, -lam), &target, &cls, tol)?;
            let ok = r.status == WitnessStatus::NoWitness && r.refutation.as_deref() == Some(ALL_SOLUTIONS_SINGULAR);
            checks.add("every solution is singular", ok, summary(&r));
            to_json(&r)?
        }
        LemmaId::Thm4_6 | LemmaId::Thm4_14 => {
            let cls = if args.id == LemmaId::Thm4_6 {
                let (l1, l2) = pair(2.0, 3.0);
                ClassLabel::diag_pair(l1, l2)?
            } else {
                ClassLabel::jordan(args.lam.unwrap_or(ONE))?
            };
            let mut lengths = [0usize; 3];
            let mut failures = 0;
            for i in 0..samples {
                let a = random_member(&cls, &mut sample_rng(cfg.seed, i));
                let r = two_step_path(&cls, &a, tol)?;
                if r.is_witness() {
                    lengths[r.matrices.len()] += 1;
                } else {
                    failures += 1;
                }
            }
            checks.add("every sample is reached in at most two steps", failures == 0, format!("1 step: {}, 2 steps: {}, failed: {failures}", lengths[1], lengths[2]));
            let (from, to, expect) = match cls {
                ClassLabel::DiagPair { lambda1, lambda2 } if opposite(lambda1, lambda2) => {
                    (cls.base_point(), Mat2::real(-1.0, 0.0, 1.0, 1.0).scale(lambda1), ALL_SOLUTIONS_SINGULAR)
                }
                ClassLabel::DiagPair { lambda1, lambda2 } => (cls.base_point(), Mat2::diag(lambda2, lambda1), TRACE_MUST_BE_ZERO),
                ClassLabel::Jordan { lambda } => {
                    (cls.base_point(), Mat2::new(lambda, c(2.0), c(0.0), lambda), crate::gl2::DETERMINANT_INCONSISTENT)
                }
                ClassLabel::Scalar { .. } => unreachable!("constructed non-scalar"),
            };
            let r = witness_in_class(&from, &to, &cls, tol)?;
            checks.add("not 1-connected", r.refutation.as_deref() == Some(expect) && !r.is_witness(), summary(&r));
            let path = two_step_path(&cls, &to, tol)?;
            checks.add("the obstructed pair is joined in two steps", path.is_witness() && path.matrices.len() == 2, summary(&path));
            to_json(&path)?
        }
        LemmaId::Lemma5_3 => {
            let p = jordan_type_probe(args.lam.unwrap_or(ONE), args.n.unwrap_or(1), args.m.unwrap_or(3), tol)?;
            checks.add("matches the closed form", p.residual <= tol, format!("residual {:.1e}", p.residual));
            checks.add("differs from the base point", p.differs_from_base, p.result.to_string());
            to_json(&p)?
        }
        LemmaId::Lemma5_6 => {
            let (l1, l2) = pair(0.0, 1.0);
            let l1 = if args.l1.is_none() { Complex64::new(0.0, 1.0) } else { l1 };
            let n = args.n.unwrap_or(4);
            let cls = if (l1 - l2).norm() <= tol * l1.norm().max(1.0) { ClassLabel::scalar(l1)? } else { ClassLabel::diag_pair(l1, l2)? };
            let r = subquandle_order_test(&cls, n, samples as usize, cfg.seed, tol)?;
            checks.add("samples agree with the root-of-unity criterion", r.agreements == r.samples, format!("{}/{}", r.agreements, r.samples));
            if let Some(ce) = &r.counterexample {
                checks.add("counterexample deviates", ce.deviation > tol, format!("deviation {:.3e}", ce.deviation));
            }
            to_json(&r)?
        }
        LemmaId::Prop6_1 => {
            let n = args.n.unwrap_or(2);
            let r = root_transport_probe(n, samples as usize, cfg.seed)?;
            checks.add("P'ⁿ = P", r.max_root_residual <= tol, format!("{:.1e}", r.max_root_residual));
            checks.add("P⁻¹AP = P'⁻ⁿAP'ⁿ", r.max_residual <= tol, format!("{:.1e}", r.max_residual));
            to_json(&r)?
        }
        LemmaId::Lemma6_15 => {
            let n = args.n.unwrap_or(4);
            let r = count_trivial_components_pgl(n, samples as usize, cfg.seed, tol)?;
            checks.add("count equals n", r.count == n as usize, format!("{} of {n}", r.count));
            checks.add("non-root control fails", r.control_failed, format!("deviation {:.3e}", r.control_deviation));
            to_json(&r)?
        }
        LemmaId::MaxTrivial => {
            let (l1, l2) = pair(1.0, 2.0);
            let r = max_trivial_pair_check(l1, l2, samples as usize, cfg.seed, tol)?;
            checks.add("the two diagonals form a trivial subquandle", r.pair_trivial, "");
            checks.add("no other member commutes with D", r.passed, format!("{} stray of {}", r.stray_commuting, r.samples));
            to_json(&r)?
        }
        LemmaId::Lemma7_5 => {
            let (l1, l2) = pair(2.0, 3.0);
            let r = noncommuting_return_pair(l1, l2, tol)?;
            let (a, b) = (r.matrices[0], r.matrices[1]);
            let commutator = (a * b - b * a).max_norm();
            checks.add("D ∗ A ∗ B = D", r.residual <= tol, format!("residual {:.1e}", r.residual));
            checks.add("AB ≠ BA", commutator > tol, format!("‖AB − BA‖ = {commutator:.3e}"));
            to_json(&r)?
        }
        LemmaId::Thm7_7 => {
            let cls = match args.lam {
                Some(lam) => ClassLabel::jordan(lam)?,
                None => {
                    let (l1, l2) = pair(1.0, 2.0);
                    ClassLabel::diag_pair(l1, l2)?
                }
            };
            let r = r3_probe(&cls, tol)?;
            checks.add("R_3 is refuted", r.status == WitnessStatus::Refuted, summary(&r));
            to_json(&r)?
        }
        LemmaId::Thm7_8 => {
            let lam = args.lam.or(args.l1).unwrap_or(ONE);
            let r = r3_probe(&ClassLabel::diag_pair(lam, -lam)?, tol)?;
            checks.add("triple closes as R_3", r.is_witness() && r.residual <= tol, summary(&r));
            to_json(&r)?
        }
    };
    Ok((checks, value))
}

fn gl2_command(cmd: &Gl2Cmd, cfg: &RunConfig) -> Result<Report, CliError> {
    let Gl2Cmd::Verify(args) = cmd;
    let (checks, value) = verify(args, cfg)?;
    let id = args.id.name();
    let failures: Vec<String> = checks.0.iter().filter(|c| !c.passed).map(|c| format!("{id}: {}", c.name)).collect();
    let mut text = format!("{id}: {}\n", if failures.is_empty() { "PASS" } else { "FAIL" });
    for check in &checks.0 {
        text.push_str(&format!("  [{}] {}: {}\n", if check.passed { "ok" } else { "FAIL" }, check.name, check.detail));
    }
    let mut csv = vec![vec!["id".into(), "check".into(), "passed".into(), "detail".into()]];
    csv.extend(checks.0.iter().map(|c| vec![id.clone(), c.name.clone(), c.passed.to_string(), c.detail.clone()]));
    let v = Verification { id, passed: failures.is_empty(), checks: checks.0, report: value };
    let mut r = report(&v, text, failures)?;
    r.csv = csv;
    Ok(r)
}

#[derive(Serialize)]
struct CatalogRun {
    seed: u64,
    passed: bool,
    criteria: Vec<crate::acceptance::CriterionResult>,
}

fn catalog_command(cmd: &CatalogCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        CatalogCmd::Run => {
            let criteria = run_all(&AcceptanceConfig { seed: cfg.seed });
            let failures: Vec<String> = criteria.iter().filter(|c| !c.passed).map(|c| format!("criterion {} ({}): {}", c.id, c.title, c.detail)).collect();
            let text = criteria
                .iter()
                .map(|c| format!("[{}] {:>2}. {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.detail))
                .collect();
            let mut csv = vec![vec!["id".into(), "title".into(), "passed".into(), "detail".into()]];
            csv.extend(criteria.iter().map(|c| vec![c.id.to_string(), c.title.to_string(), c.passed.to_string(), c.detail.clone()]));
            let run = CatalogRun { seed: cfg.seed, passed: failures.is_empty(), criteria };
            let mut r = report(&run, text, failures)?;
            r.csv = csv;
            Ok(r)
        }
        CatalogCmd::List => {
            let all = catalog()?;
            #[derive(Serialize)]
            struct Entry<'a> {
                name: &'a str,
                size: usize,
            }
            let entries: Vec<Entry> = all.iter().map(|t| Entry { name: t.name(), size: t.size() }).collect();
            let text = entries.iter().map(|e| format!("{} {}\n", e.name, e.size)).collect();
            let mut r = report(&entries, text, Vec::new())?;
            r.csv = std::iter::once(vec!["name".into(), "size".into()]).chain(entries.iter().map(|e| vec![e.name.to_string(), e.size.to_string()])).collect();
            Ok(r)
        }
    }
}

fn render(r: &Report, format: Format) -> Result<Vec<u8>, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", r.json).into_bytes(),
        Format::Text => r.text.clone().into_bytes(),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for row in &r.csv {
                w.write_record(row).map_err(|e| CliError::Usage(e.to_string()))?;
            }
            w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?
        }
    })
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Quandle(cmd) => quandle_command(cmd),
        Command::Gl2(cmd) => gl2_command(cmd, &cli.config),
        Command::Catalog(cmd) => catalog_command(cmd, &cli.config),
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli).and_then(|r| {
        let bytes = render(&r, cli.config.format)?;
        match &cli.config.out {
            Some(path) => std::fs::write(path, &bytes)?,
            None => std::io::stdout().write_all(&bytes)?,
        }
        Ok(r.failures)
    });
    match outcome {
        Ok(failures) if failures.is_empty() => EXIT_OK,
        Ok(failures) => {
            for f in failures {
                eprintln!("qf: check failed: {f}");
            }
            EXIT_CHECK_FAILED
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("qf: error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            eprintln!("qf: error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::DEFAULT_SEED;

    #[test]
    fn seeds_accept_hex() {
        assert_eq!(parse_seed("0xC0FFEE"), Ok(DEFAULT_SEED));
        assert_eq!(parse_seed("12"), Ok(12));
        assert!(parse_seed("nope").is_err());
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("-1e-9").is_err());
    }

    #[test]
    fn negative_eigenvalues_parse() {
        let cli = Cli::try_parse_from(["qf", "gl2", "verify", "lemma-4.1", "--l1", "1", "--l2", "-1"]).unwrap();
        let Command::Gl2(Gl2Cmd::Verify(args)) = cli.command else { panic!() };
        assert_eq!(args.l2, Some(c(-1.0)));
        assert_eq!(args.id, LemmaId::Lemma4_1);
    }

    #[test]
    fn csv_rows_from_objects() {
        let v = serde_json::json!({"a": 1, "b": "x", "c": null});
        assert_eq!(object_rows(&v), vec![vec!["a", "b", "c"], vec!["1", "x", ""]]);
    }
}
