//! Command-line front end for `hra-core`: flag parsing, spec-file
//! ingestion, dispatch, and text/JSON/CSV emission.
//!
//! Every command reads an optional JSON spec file and then applies inline
//! flags on top of it; inline values win and each overridden file value is
//! logged as a warning.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value as Json};

use hra_core::cases::{self, HydrogenConvention};
use hra_core::classify::{self, MeasuredGrowth, ScalabilityVerdict};
use hra_core::oracle::{self, EnumerationLimits, VerificationReport};
use hra_core::report::Report;
use hra_core::solver::{self, IntFunction, ResourceRequirement, SweepTable};
use hra_core::spec::RawSpec;
use hra_core::{Error, PhysicalConstants, SystemSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_UNREACHABLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable naming a constants-override file.
pub const CONSTANTS_ENV: &str = "HRA_CONSTANTS";

/// Largest achieved dimension, in bits, printed in full by `solve`.
const PRINT_DIMENSION_BITS: f64 = 4096.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Study {
    Hydrogen,
    Nmr,
    ClassicalWave,
    Decoherence,
    UnaryControl,
}

impl Study {
    fn name(&self) -> &'static str {
        match self {
            Study::Hydrogen => "hydrogen",
            Study::Nmr => "nmr",
            Study::ClassicalWave => "classical-wave",
            Study::Decoherence => "decoherence",
            Study::UnaryControl => "unary-control",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Dim,
    Classify,
    Solve,
    Sweep,
    CaseStudy(Study),
    Verify,
}

/// A fully parsed invocation. `inline` holds `key=value` overrides in the
/// order given; values are converted to JSON numbers where they parse as
/// such and kept as strings otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub spec_file: Option<PathBuf>,
    pub inline: Vec<(String, String)>,
    pub format: Format,
    pub constants_override: Option<PathBuf>,
    /// Enumeration budget per stream for `verify`.
    pub enum_cap: Option<u64>,
    /// Upper bound on solved values for `solve`.
    pub search_cap: Option<u128>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            spec_file: None,
            inline: Vec::new(),
            format: Format::Text,
            constants_override: None,
            enum_cap: None,
            search_cap: None,
        }
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.inline.push((key.to_owned(), value.to_string()));
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

#[derive(Parser, Debug)]
#[command(name = "hra", version, about = "Hilbert-space resource accounting")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Exact dimension of a system.
    Dim(Flags),
    /// Scalability verdict for a growth policy, optionally checked empirically.
    Classify(Flags),
    /// Minimal modes, particles or levels reaching a target qubit count.
    Solve(Flags),
    /// Solve the complementary resource across a list of N.
    Sweep(Flags),
    /// Worked physical examples.
    CaseStudy {
        #[arg(value_enum)]
        study: Study,
        #[command(flatten)]
        flags: Flags,
    },
    /// Compare enumeration counts with the counting formulas.
    Verify(Flags),
}

#[derive(Args, Debug)]
struct Flags {
    /// System kind (dim, solve) or model (classify, sweep).
    #[arg(long)]
    kind: Option<String>,
    #[arg(long = "M")]
    m: Option<String>,
    #[arg(long = "L")]
    l: Option<String>,
    #[arg(long = "Lmax")]
    lmax: Option<String>,
    #[arg(long = "K")]
    k: Option<String>,
    #[arg(long = "D")]
    d: Option<String>,
    #[arg(long = "T")]
    t: Option<String>,
    /// Action per degree of freedom, in units of h.
    #[arg(long = "A", visible_alias = "action")]
    a: Option<String>,
    /// Target or equivalent qubit count.
    #[arg(long = "N", visible_alias = "target-qubits")]
    n: Option<String>,
    /// Comma-separated N values (sweep, classify).
    #[arg(long)]
    n_values: Option<String>,
    #[arg(long)]
    model: Option<String>,
    /// Prescribed parameter: particles or modes.
    #[arg(long)]
    parameter: Option<String>,
    /// Growth class, e.g. quasilinear:1, linear:2, exp:2.
    #[arg(long)]
    growth: Option<String>,
    /// Integer policy, e.g. const:2, linear:1/2, poly:3/2.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    budget: Option<String>,
    /// Hydrogen radius convention: asymptotic or exact.
    #[arg(long)]
    convention: Option<String>,
    /// Largest value a solve may return.
    #[arg(long)]
    cap: Option<String>,
    /// Extra KEY=VALUE overrides.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    constants: Option<PathBuf>,
    /// Enumeration budget per stream (verify).
    #[arg(long)]
    enum_cap: Option<u64>,
}

/// Parses command-line arguments (including the program name) into a
/// [`RunConfig`]. Falls back to `HRA_CONSTANTS` when `--constants` is absent.
pub fn config_from_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, flags) = match cli.command {
        CliCommand::Dim(f) => (Command::Dim, f),
        CliCommand::Classify(f) => (Command::Classify, f),
        CliCommand::Solve(f) => (Command::Solve, f),
        CliCommand::Sweep(f) => (Command::Sweep, f),
        CliCommand::CaseStudy { study, flags } => (Command::CaseStudy(study), flags),
        CliCommand::Verify(f) => (Command::Verify, f),
    };
    let uses_model = matches!(command, Command::Classify | Command::Sweep);
    let named = [
        (if uses_model { "model" } else { "kind" }, flags.kind),
        ("M", flags.m),
        ("L", flags.l),
        ("Lmax", flags.lmax),
        ("K", flags.k),
        ("D", flags.d),
        ("T", flags.t),
        ("A", flags.a),
        ("N", flags.n),
        ("N", flags.n_values),
        ("model", flags.model),
        ("parameter", flags.parameter),
        ("growth", flags.growth),
        ("policy", flags.policy),
        ("alpha", flags.alpha),
        ("lambda", flags.lambda),
        ("budget", flags.budget),
        ("convention", flags.convention),
    ];
    let mut inline: Vec<(String, String)> = named
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k.to_owned(), v)))
        .collect();
    for pair in flags.set {
        let Some((k, v)) = pair.split_once('=') else {
            return Err(Cli::command_error(format!("--set expects KEY=VALUE, got `{pair}`")));
        };
        inline.push((k.trim().to_owned(), v.trim().to_owned()));
    }
    let search_cap = match flags.cap {
        None => None,
        Some(raw) if command == Command::Sweep => {
            inline.push(("cap".into(), raw));
            None
        }
        Some(raw) => Some(
            raw.trim()
                .parse()
                .map_err(|_| Cli::command_error(format!("--cap must be a nonnegative integer, got `{raw}`")))?,
        ),
    };
    Ok(RunConfig {
        command,
        spec_file: flags.spec,
        inline,
        format: flags.format,
        constants_override: flags
            .constants
            .or_else(|| std::env::var_os(CONSTANTS_ENV).map(PathBuf::from)),
        enum_cap: flags.enum_cap,
        search_cap,
    })
}

impl Cli {
    fn command_error(msg: String) -> clap::Error {
        use clap::CommandFactory;
        Cli::command().error(clap::error::ErrorKind::ValueValidation, msg)
    }
}

/// What a run emits: exit status, standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Core(Error),
    Input(String),
    /// Output was produced but a self-check failed.
    Internal { stdout: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Exit status for a library error: 2 for unreachable targets, 1 for
/// everything the caller can fix by changing inputs.
pub fn exit_status(e: &Error) -> i32 {
    match e {
        Error::UnreachableTarget(_) => EXIT_UNREACHABLE,
        _ => EXIT_VALIDATION,
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    match execute(config) {
        Ok(stdout) => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Core(e)) => Outcome {
            status: exit_status(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(Failure::Input(msg)) => Outcome {
            status: EXIT_VALIDATION,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Internal { stdout, message }) => Outcome {
            status: EXIT_INTERNAL,
            stdout,
            stderr: format!("error: internal: {message}\n"),
        },
    }
}

fn execute(config: &RunConfig) -> Run<String> {
    if config.format == Format::Csv && !matches!(config.command, Command::Sweep | Command::Verify) {
        return Err(Error::validation("format", "csv is only available for sweep and verify").into());
    }
    match config.command {
        Command::Dim => dim(config),
        Command::Classify => classify(config),
        Command::Solve => solve(config),
        Command::Sweep => sweep(config),
        Command::CaseStudy(study) => case_study(config, study),
        Command::Verify => verify(config),
    }
}

fn inline_json(raw: &str) -> Json {
    if let Ok(u) = raw.parse::<u64>() {
        return Json::from(u);
    }
    match raw.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(n) => Json::Number(n),
        None => Json::String(raw.to_owned()),
    }
}

fn read_file(path: &PathBuf, what: &str) -> Run<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {what} {}: {e}", path.display())))
}

fn log_conflicts(conflicts: Vec<String>) {
    for c in conflicts {
        log::warn!("{c}");
    }
}

/// Spec from `--spec` (or an empty one of `default_kind`) with inline
/// overrides applied. An inline `kind` replaces the file's.
fn raw_spec(config: &RunConfig, default_kind: &str) -> Run<RawSpec> {
    let mut inline: Vec<(String, Json)> = Vec::new();
    let mut kind = None;
    for (k, v) in &config.inline {
        if k == "kind" {
            kind = Some(v.clone());
        } else {
            inline.push((k.clone(), inline_json(v)));
        }
    }
    let mut raw = match &config.spec_file {
        Some(path) => {
            let mut raw = RawSpec::parse(&read_file(path, "spec file")?)?;
            if let Some(k) = kind {
                let replacement = RawSpec::new(&k)?;
                if replacement.kind != raw.kind {
                    log::warn!("kind: inline `{}` overrides file value `{}`", replacement.kind, raw.kind);
                    raw.kind = replacement.kind;
                }
            }
            raw
        }
        None => RawSpec::new(kind.as_deref().unwrap_or(default_kind))?,
    };
    log_conflicts(raw.merge(&inline));
    Ok(raw)
}

/// Key/value parameters for commands without a core spec kind (case
/// studies, verify): the file object, if any, with inline values on top.
fn plain_params(config: &RunConfig, expected_kind: &str, allowed: &[&str]) -> Run<Map<String, Json>> {
    let mut map = match &config.spec_file {
        Some(path) => {
            let text = read_file(path, "spec file")?;
            match serde_json::from_str::<Json>(&text).map_err(|e| Error::Parse(format!("spec: {e}")))? {
                Json::Object(m) => m,
                _ => return Err(Error::Parse("spec must be a JSON object".into()).into()),
            }
        }
        None => Map::new(),
    };
    match map.remove("kind") {
        None => {}
        Some(Json::String(k)) if k == expected_kind => {}
        Some(other) => {
            return Err(Error::validation("kind", format!("expected `{expected_kind}`, got {other}")).into())
        }
    }
    for (k, v) in &config.inline {
        let v = inline_json(v);
        if let Some(old) = map.insert(k.clone(), v.clone()) {
            if old != v {
                log::warn!("{k}: inline {v} overrides file value {old}");
            }
        }
    }
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::validation(
            k,
            &format!("not a parameter of `{expected_kind}` (expected one of {})", allowed.join(", ")),
        )
        .into());
    }
    Ok(map)
}

fn param_real(map: &Map<String, Json>, key: &str) -> Run<Option<f64>> {
    let bad = || Failure::Core(Error::validation(key, "must be a finite number"));
    let v = match map.get(key) {
        None => return Ok(None),
        Some(Json::Number(n)) => n.as_f64().ok_or_else(bad)?,
        Some(Json::String(s)) => s.trim().parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if v.is_finite() {
        Ok(Some(v))
    } else {
        Err(bad())
    }
}

fn param_u32(map: &Map<String, Json>, key: &str) -> Run<Option<u32>> {
    match param_real(map, key)? {
        None => Ok(None),
        Some(v) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => Ok(Some(v as u32)),
        Some(_) => Err(Error::validation(key, "must be an integer in 0..=4294967295").into()),
    }
}

fn required<T>(v: Option<T>, key: &str) -> Run<T> {
    v.ok_or_else(|| Error::validation(key, "required").into())
}

fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        _ => report.to_text(),
    }
}

fn unit_of(key: &str) -> &'static str {
    match key {
        "M" => "modes",
        "L" | "Lmax" => "particles",
        "K" => "external states",
        "D" => "internal states",
        "T" => "degrees of freedom",
        "A/h" | "A" => "h",
        "N" => "qubits",
        _ => "dimensionless",
    }
}

fn relation_of(spec: &SystemSpec) -> &'static str {
    match spec {
        SystemSpec::DegreesOfFreedom { .. } => "Ω = ⌊A/h⌋^T",
        SystemSpec::BoseFixed { .. } => "Ω = C(M+L-1, L)",
        SystemSpec::BoseVariable { .. } => "Ω = C(M+Lmax, Lmax)",
        SystemSpec::Fermi { .. } => "Ω = C(M, L)",
        SystemSpec::Distinguishable { .. } => "Ω = C(K, L)·D^L",
    }
}

fn dim(config: &RunConfig) -> Run<String> {
    let raw = raw_spec(config, "bose")?;
    let spec = raw.system()?;
    let mut report = Report::new("dim", relation_of(&spec)).input("kind", spec.kind_name(), "dimensionless");
    report = match spec {
        SystemSpec::DegreesOfFreedom { dofs, action_per_dof } => {
            report.input("T", dofs, unit_of("T")).input("A", action_per_dof, unit_of("A"))
        }
        SystemSpec::BoseFixed { modes, particles } | SystemSpec::Fermi { modes, particles } => {
            report.input("M", modes, unit_of("M")).input("L", particles, unit_of("L"))
        }
        SystemSpec::BoseVariable { modes, max_particles } => {
            report.input("M", modes, unit_of("M")).input("Lmax", max_particles, unit_of("Lmax"))
        }
        SystemSpec::Distinguishable { external, internal, particles } => report
            .input("K", external, unit_of("K"))
            .input("D", internal, unit_of("D"))
            .input("L", particles, unit_of("L")),
    };
    let exact = spec.dimension()?;
    report = report
        .output("dimension", exact.value().clone(), "states")
        .output("log2_dimension", exact.log2(), "bits")
        .output("log2_lgamma", spec.log2_lgamma::<f64>()?, "bits");
    if let Ok(asymptotic) = spec.asymptotic_log2::<f64>() {
        report = report.output("log2_asymptotic", asymptotic, "bits");
    }
    Ok(emit_report(&report, config.format))
}

fn complement_text(v: &ScalabilityVerdict) -> String {
    v.complement_growth.map_or_else(|| "none".to_owned(), |g| g.to_string())
}

fn measured_text(m: &MeasuredGrowth) -> String {
    match m {
        MeasuredGrowth::Constant => "constant".into(),
        MeasuredGrowth::Polynomial { degree } => format!("polynomial, degree {degree:.4}"),
        MeasuredGrowth::Exponential { base } => format!("exponential, base {base:.4}"),
        MeasuredGrowth::Undetermined => "undetermined".into(),
    }
}

fn classify(config: &RunConfig) -> Run<String> {
    let mut raw = raw_spec(config, "growth")?;
    let check = if raw.has("policy") {
        let ns = raw.real_list("N")?;
        let function: IntFunction = raw
            .text("policy")?
            .parse()
            .map_err(|e: Error| Error::validation("policy", e.to_string()))?;
        raw.take("policy");
        raw.take("N");
        let implied = function.growth_class().to_string();
        if raw.has("growth") {
            if raw.growth()?.growth != function.growth_class() {
                return Err(Error::validation("growth", format!("must match the policy's class `{implied}`")).into());
            }
        } else {
            raw.merge(&[("growth".to_owned(), Json::String(implied))]);
        }
        Some((function, ns))
    } else {
        None
    };
    let spec = raw.growth()?;
    let verdict = spec.classify()?;
    let model = raw.text("model")?.to_owned();
    let mut report = Report::new("classify", "complement solved from Ω(controlled, complement) = 2^N")
        .input("model", model.as_str(), "dimensionless");
    if model != "dof" {
        report = report.input("parameter", raw.text("parameter")?, "dimensionless");
    }
    if raw.has("D") {
        report = report.input("D", raw.count("D")?, unit_of("D"));
    }
    report = report
        .input("growth", spec.growth.to_string(), "dimensionless")
        .output("case", verdict.case_label.as_str(), "dimensionless")
        .output("verdict", verdict.verdict.to_string(), "dimensionless")
        .output("complement_growth", complement_text(&verdict), "dimensionless")
        .note(verdict.narrative.clone());
    if let Some((function, ns)) = check {
        let ec = classify::empirical_check(spec.model, function, &ns)?;
        report = report
            .input("policy", ec.policy.as_str(), "dimensionless")
            .output("measured_growth", measured_text(&ec.fit.measured), "dimensionless")
            .output("r2_exponential", ec.fit.r2_exponential, "dimensionless")
            .output("r2_polynomial", ec.fit.r2_polynomial, "dimensionless")
            .output("agrees", if ec.agrees { "yes" } else { "no" }, "dimensionless");
        for row in &ec.rows {
            report = report.output(&format!("complement[N={}]", row.n), row.complement, "count");
        }
    }
    Ok(emit_report(&report, config.format))
}

fn requirement_report(req: &ResourceRequirement, kind: &str) -> Run<Report> {
    let minimal = req.is_minimal()?;
    let spec = req.spec_with(req.solved.value);
    let mut report = Report::new("solve", relation_of(&spec))
        .input("kind", kind, "dimensionless")
        .input("N", req.target_qubits, "qubits");
    for f in &req.fixed {
        report = report.input(&f.name, f.value, unit_of(&f.name));
    }
    report = report
        .output(&req.solved.name, req.solved.value, unit_of(&req.solved.name))
        .output("log2_dimension", req.achieved_log2, "bits");
    if req.achieved_log2 <= PRINT_DIMENSION_BITS {
        report = report.output("dimension", solver::achieved_dimension(req)?.into_value(), "states");
    }
    if !minimal {
        return Err(Failure::Internal {
            stdout: String::new(),
            message: format!("{} = {} is not minimal", req.solved.name, req.solved.value),
        });
    }
    Ok(report.note(format!("minimal: {} - 1 falls short of 2^N", req.solved.name)))
}

fn solve(config: &RunConfig) -> Run<String> {
    let raw = raw_spec(config, "bose")?;
    let request = raw.solve_request(config.search_cap.unwrap_or(solver::DEFAULT_SEARCH_CAP))?;
    let req = request.solve()?;
    let report = requirement_report(&req, &raw.kind)?;
    Ok(emit_report(&report, config.format))
}

fn sweep_text(table: &SweepTable) -> String {
    let mut out = format!("sweep\npolicy: {}\n", table.policy);
    out.push_str(&table.to_csv());
    for row in &table.rows {
        if let Some(f) = &row.failure {
            let _ = writeln!(out, "N = {}: {f}", row.n);
        }
    }
    out
}

fn sweep(config: &RunConfig) -> Run<String> {
    let raw = raw_spec(config, "sweep")?;
    let table = raw.sweep()?.run()?;
    Ok(match config.format {
        Format::Text => sweep_text(&table),
        Format::Json => to_json(&table),
        Format::Csv => table.to_csv(),
    })
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports always serialize") + "\n"
}

fn constants(config: &RunConfig) -> Run<PhysicalConstants> {
    match &config.constants_override {
        Some(path) => Ok(PhysicalConstants::from_json(&read_file(path, "constants file")?)?),
        None => Ok(PhysicalConstants::default()),
    }
}

fn case_study(config: &RunConfig, study: Study) -> Run<String> {
    let mut c = constants(config)?;
    let report = match study {
        Study::Hydrogen => {
            let p = plain_params(config, study.name(), &["N", "convention"])?;
            let convention: HydrogenConvention = match p.get("convention") {
                None => HydrogenConvention::Asymptotic,
                Some(Json::String(s)) => s
                    .parse()
                    .map_err(|e: Error| Error::validation("convention", e.to_string()))?,
                Some(_) => return Err(Error::validation("convention", "must be asymptotic or exact").into()),
            };
            let n = required(param_real(&p, "N")?, "N")?;
            cases::hydrogen_for_qubits(n, convention, &c)?.report(&c)
        }
        Study::Nmr => {
            let p = plain_params(config, study.name(), &["N", "alpha", "budget"])?;
            if let Some(b) = param_real(&p, "budget")? {
                c.molecule_count = b;
            }
            if let Some(a) = param_real(&p, "alpha")? {
                c.polarization = a;
            }
            c.validate()?;
            let n = required(param_u32(&p, "N")?, "N")?;
            cases::nmr_report(c.polarization, n, &c)?
        }
        Study::ClassicalWave => {
            let p = plain_params(config, study.name(), &["N", "lambda"])?;
            if let Some(l) = param_real(&p, "lambda")? {
                c.wavelength = l;
            }
            c.validate()?;
            let n = required(param_u32(&p, "N")?, "N")?;
            cases::classical_wave_report(n, &c)?
        }
        Study::Decoherence => {
            let p = plain_params(config, study.name(), &["N"])?;
            let n = required(param_u32(&p, "N")?, "N")?;
            cases::decoherence_comparison::<f64>(n)?.report()
        }
        Study::UnaryControl => {
            let p = plain_params(config, study.name(), &["N"])?;
            let n = required(param_u32(&p, "N")?, "N")?;
            cases::unary_control_parameters(n)?.report()
        }
    };
    Ok(emit_report(&report, config.format))
}

fn verification_text(v: &VerificationReport) -> String {
    let mut out = String::from("verify\n");
    let _ = writeln!(out, "grid: M ≤ {}, L ≤ {}", v.max_modes, v.max_particles);
    let _ = writeln!(out, "specs_checked = {}", v.specs_checked);
    let _ = writeln!(out, "configurations = {}", v.configurations);
    let _ = writeln!(out, "all_pass = {}", v.all_pass);
    if let Some(r) = &v.first_mismatch {
        let _ = writeln!(out, "first_mismatch: {} {}: enumerated {}, formula {}", r.family, r.params, r.enumerated, r.formula);
    }
    out
}

fn verification_csv(v: &VerificationReport) -> String {
    let mut out = String::from("family,params,enumerated,formula,variable_enumerated,variable_formula,match\n");
    for r in &v.rows {
        let (ve, vf) = match &r.variable {
            Some(c) => (c.enumerated.to_string(), c.formula.to_string()),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(out, "{},{},{},{},{ve},{vf},{}", r.family, r.params, r.enumerated, r.formula, r.matches());
    }
    out
}

fn verify(config: &RunConfig) -> Run<String> {
    let p = plain_params(config, "verify", &["M", "L"])?;
    let max_modes = param_u32(&p, "M")?.unwrap_or(8);
    let max_particles = param_u32(&p, "L")?.unwrap_or(8);
    let limits = EnumerationLimits {
        budget: config.enum_cap.unwrap_or(oracle::DEFAULT_BUDGET),
        ..EnumerationLimits::default()
    };
    let v = oracle::verify_formulas(max_modes, max_particles, &limits)?;
    let stdout = match config.format {
        Format::Text => verification_text(&v),
        Format::Json => to_json(&v),
        Format::Csv => verification_csv(&v),
    };
    if v.all_pass {
        Ok(stdout)
    } else {
        Err(Failure::Internal {
            stdout,
            message: "enumeration and formula counts disagree".into(),
        })
    }
}
