//! Config-driven experiment runner.
//!
//! A run reads one TOML document:
//!
//! ```toml
//! kind = "chsh"           # spin_monte_carlo | epr_bohm | chsh | born_table | variable_system_check
//!
//! [parameters]            # kind-specific; angles in degrees
//! a = 0
//! a_prime = 90
//! b = 225
//! b_prime = 135
//! samples = 100000
//! seed = 7
//!
//! [output]
//! path = "reports"        # directory, created if missing
//! format = "structured"   # structured (JSON) | csv
//! ```
//!
//! The report lands in `<path>/<kind>.json` or `<path>/<kind>.csv`. Exit
//! status is [`EXIT_PASS`] when every check passes, [`EXIT_FAILED_CHECK`]
//! otherwise, and [`EXIT_CONFIG`] for unreadable or invalid configs.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use toml::{Table, Value};

use crate::born::LikelihoodModel;
use crate::document::SystemDocument;
use crate::experiments::{
    angle_between, born_table, chsh_lhv, chsh_lhv_exact, chsh_quantum, epr_bohm_report,
    lhv_correlation, spin_monte_carlo, variable_system_check, ChshSetting, SpinModel, CHSH_TERMS,
    MIN_LHV_SAMPLES,
};
use crate::report::Report;
use crate::rng::RngStream;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const KINDS: [&str; 5] = [
    "spin_monte_carlo",
    "epr_bohm",
    "chsh",
    "born_table",
    "variable_system_check",
];

/// Marginal checks allow this many standard errors.
pub const MARGINAL_SIGMAS: f64 = 3.0;
/// CHSH checks allow this many standard errors.
pub const CHSH_SIGMAS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Structured,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Structured => "json",
            Format::Csv => "csv",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "structured" => Some(Format::Structured),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Format::Structured => "structured",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qvars",
    version,
    about = "Run a configured experiment and write its report"
)]
pub struct Args {
    /// Experiment config (TOML).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Overrides `parameters.seed`.
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Overrides `parameters.samples`.
    #[arg(long, value_name = "N")]
    pub samples: Option<u64>,
    /// Overrides `output.path`.
    #[arg(long, value_name = "DIR")]
    pub output: Option<PathBuf>,
    /// Overrides `output.format`.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Monte Carlo worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, value_name = "N")]
    pub workers: Option<usize>,
    /// Check the config and list violations without running anything.
    #[arg(long)]
    pub validate: bool,
}

/// Command-line values that take precedence over the config document.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

impl From<&Args> for Overrides {
    fn from(a: &Args) -> Self {
        Self {
            seed: a.seed,
            samples: a.samples,
            output: a.output.clone(),
            format: a.format,
            workers: a.workers,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Experiment {
    SpinMonteCarlo {
        model: SpinModel,
        samples: u64,
        seed: u64,
        stream: u64,
    },
    EprBohm,
    Chsh {
        setting: ChshSetting,
        samples: Option<u64>,
        seed: u64,
    },
    BornTable {
        prepared_deg: f64,
        outcome_deg: Vec<f64>,
        likelihood: Option<LikelihoodModel>,
    },
    VariableSystemCheck {
        system_path: PathBuf,
        document: SystemDocument,
        theorem: Option<[String; 3]>,
    },
}

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::SpinMonteCarlo { .. } => "spin_monte_carlo",
            Experiment::EprBohm => "epr_bohm",
            Experiment::Chsh { .. } => "chsh",
            Experiment::BornTable { .. } => "born_table",
            Experiment::VariableSystemCheck { .. } => "variable_system_check",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub workers: usize,
    pub output_dir: PathBuf,
    pub format: Format,
}

/// One schema problem, addressed by its dotted key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub key: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, self.message)
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Unreadable { path: PathBuf, reason: String },
    Syntax(String),
    Invalid(Vec<Violation>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Unreadable { path, reason } => {
                write!(f, "cannot read config {}: {reason}", path.display())
            }
            ConfigError::Syntax(e) => write!(f, "config is not valid TOML: {e}"),
            ConfigError::Invalid(v) => {
                write!(f, "{} violation(s)", v.len())?;
                for x in v {
                    write!(f, "\n  {x}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

struct Collector<'a> {
    params: Option<&'a Table>,
    violations: Vec<Violation>,
}

impl<'a> Collector<'a> {
    fn fail(&mut self, key: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            key: key.to_owned(),
            message: message.into(),
        });
    }

    fn get(&self, name: &str) -> Option<&'a Value> {
        self.params.and_then(|p| p.get(name))
    }

    fn number(&mut self, name: &str, required: bool) -> Option<f64> {
        let key = format!("parameters.{name}");
        match self.get(name) {
            None => {
                if required {
                    self.fail(&key, "missing");
                }
                None
            }
            Some(v) => match as_number(v) {
                Some(x) if x.is_finite() => Some(x),
                _ => {
                    self.fail(&key, "expected a number");
                    None
                }
            },
        }
    }

    fn count(&mut self, name: &str, required: bool, min: i64) -> Option<u64> {
        let key = format!("parameters.{name}");
        match self.get(name) {
            None => {
                if required {
                    self.fail(&key, "missing (required for this kind)");
                }
                None
            }
            Some(Value::Integer(i)) if *i < 0 => {
                self.fail(&key, format!("must not be negative, got {i}"));
                None
            }
            Some(Value::Integer(i)) if *i < min => {
                self.fail(&key, format!("must be at least {min}, got {i}"));
                None
            }
            Some(Value::Integer(i)) => Some(*i as u64),
            Some(_) => {
                self.fail(&key, "expected a non-negative integer");
                None
            }
        }
    }

    fn numbers(&mut self, name: &str, required: bool) -> Option<Vec<f64>> {
        let key = format!("parameters.{name}");
        match self.get(name) {
            None => {
                if required {
                    self.fail(&key, "missing");
                }
                None
            }
            Some(Value::Array(a)) => {
                let xs: Option<Vec<f64>> = a.iter().map(as_number).collect();
                match xs {
                    Some(xs) if !xs.is_empty() && xs.iter().all(|x| x.is_finite()) => Some(xs),
                    Some(xs) if xs.is_empty() => {
                        self.fail(&key, "must not be empty");
                        None
                    }
                    _ => {
                        self.fail(&key, "expected an array of numbers");
                        None
                    }
                }
            }
            Some(_) => {
                self.fail(&key, "expected an array of numbers");
                None
            }
        }
    }

    fn seed(&mut self) -> u64 {
        self.count("seed", false, 0).unwrap_or(0)
    }

    fn angle(&mut self, name: &str) -> Option<f64> {
        let x = self.number(name, true)?;
        if !(0.0..360.0).contains(&x) {
            self.fail(
                &format!("parameters.{name}"),
                format!("angle {x} outside [0, 360)"),
            );
            return None;
        }
        Some(x)
    }

    fn reject_unknown(&mut self, allowed: &[&str]) {
        let unknown: Vec<String> = self
            .params
            .map(|p| {
                p.keys()
                    .filter(|k| !allowed.contains(&k.as_str()))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default();
        for k in unknown {
            self.fail(
                &format!("parameters.{k}"),
                "unknown parameter for this kind",
            );
        }
    }
}

fn as_number(v: &Value) -> Option<f64> {
    match v {
        Value::Integer(i) => Some(*i as f64),
        Value::Float(x) => Some(*x),
        _ => None,
    }
}

/// Reads a config file and applies overrides, without validating.
pub fn read_config(path: &Path, overrides: &Overrides) -> Result<Table, ConfigError> {
    let text = fs::read_to_string(path).map_err(|e| ConfigError::Unreadable {
        path: path.to_owned(),
        reason: e.to_string(),
    })?;
    let mut table: Table = text
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::Syntax(e.message().to_owned()))?;
    apply_overrides(&mut table, overrides);
    Ok(table)
}

fn apply_overrides(table: &mut Table, o: &Overrides) {
    fn section<'t>(table: &'t mut Table, name: &str) -> Option<&'t mut Table> {
        table
            .entry(name)
            .or_insert_with(|| Value::Table(Table::new()))
            .as_table_mut()
    }
    // seed and sample counts only mean something to the sampling kinds
    let samples_apply = matches!(
        table.get("kind").and_then(Value::as_str),
        Some("spin_monte_carlo" | "chsh")
    );
    if samples_apply && (o.seed.is_some() || o.samples.is_some()) {
        if let Some(p) = section(table, "parameters") {
            if let Some(seed) = o.seed {
                p.insert("seed".into(), Value::Integer(seed as i64));
            }
            if let Some(n) = o.samples {
                p.insert("samples".into(), Value::Integer(n as i64));
            }
        }
    }
    if o.output.is_some() || o.format.is_some() {
        if let Some(out) = section(table, "output") {
            if let Some(dir) = &o.output {
                out.insert(
                    "path".into(),
                    Value::String(dir.to_string_lossy().into_owned()),
                );
            }
            if let Some(f) = o.format {
                out.insert("format".into(), Value::String(f.name().into()));
            }
        }
    }
    if let Some(w) = o.workers {
        table.insert("workers".into(), Value::Integer(w as i64));
    }
}

/// Schema-checks a config document. Relative file paths resolve against
/// `base_dir`.
pub fn parse_config(table: &Table, base_dir: &Path) -> Result<ExperimentConfig, Vec<Violation>> {
    let mut top = Collector {
        params: None,
        violations: Vec::new(),
    };
    for key in table.keys() {
        if !["kind", "parameters", "output", "workers"].contains(&key.as_str()) {
            top.fail(key, "unknown top-level key");
        }
    }
    let kind = match table.get("kind") {
        None => {
            top.fail("kind", "missing");
            None
        }
        Some(Value::String(k)) if KINDS.contains(&k.as_str()) => Some(k.as_str()),
        Some(Value::String(k)) => {
            top.fail("kind", format!("unknown experiment kind `{k}`"));
            None
        }
        Some(_) => {
            top.fail("kind", "expected a string");
            None
        }
    };
    let params = match table.get("parameters") {
        None => None,
        Some(Value::Table(t)) => Some(t),
        Some(_) => {
            top.fail("parameters", "expected a table");
            None
        }
    };
    let workers = match table.get("workers") {
        None => 0,
        Some(Value::Integer(w)) if *w >= 0 => *w as usize,
        Some(_) => {
            top.fail("workers", "expected a non-negative integer");
            0
        }
    };
    let (output_dir, format) = parse_output(table.get("output"), &mut top);
    let mut c = Collector {
        params,
        violations: top.violations,
    };

    let experiment = match kind {
        Some("spin_monte_carlo") => parse_spin(&mut c),
        Some("epr_bohm") => {
            c.reject_unknown(&[]);
            Some(Experiment::EprBohm)
        }
        Some("chsh") => parse_chsh(&mut c),
        Some("born_table") => parse_born_table(&mut c),
        Some("variable_system_check") => parse_system_check(&mut c, base_dir),
        _ => None,
    };
    match experiment {
        Some(experiment) if c.violations.is_empty() => Ok(ExperimentConfig {
            experiment,
            workers,
            output_dir,
            format,
        }),
        _ => Err(c.violations),
    }
}

fn parse_output(v: Option<&Value>, c: &mut Collector<'_>) -> (PathBuf, Format) {
    let mut dir = PathBuf::from("reports");
    let mut format = Format::Structured;
    let Some(v) = v else {
        return (dir, format);
    };
    let Some(t) = v.as_table() else {
        c.fail("output", "expected a table");
        return (dir, format);
    };
    for (k, v) in t {
        match (k.as_str(), v) {
            ("path", Value::String(s)) if !s.is_empty() => dir = PathBuf::from(s),
            ("path", _) => c.fail("output.path", "expected a non-empty string"),
            ("format", Value::String(s)) => match Format::parse(s) {
                Some(f) => format = f,
                None => c.fail(
                    "output.format",
                    format!("expected structured or csv, got `{s}`"),
                ),
            },
            ("format", _) => c.fail("output.format", "expected a string"),
            _ => c.fail(&format!("output.{k}"), "unknown key"),
        }
    }
    (dir, format)
}

fn parse_spin(c: &mut Collector<'_>) -> Option<Experiment> {
    c.reject_unknown(&[
        "samples",
        "seed",
        "stream",
        "dimension",
        "directions_deg",
        "directions",
    ]);
    let samples = c.count("samples", true, 1);
    let seed = c.seed();
    let stream = c.count("stream", false, 0).unwrap_or(0);
    let dimension = c.count("dimension", false, 2).unwrap_or(2);
    let model = match dimension {
        2 => c
            .numbers("directions_deg", true)
            .map(|d| SpinModel::planar(&d)),
        3 => match c.get("directions").and_then(Value::as_array) {
            None => {
                c.fail("parameters.directions", "missing array of 3-vectors");
                None
            }
            Some(rows) => {
                let vectors: Option<Vec<[f64; 3]>> = rows
                    .iter()
                    .map(|r| {
                        let xs: Vec<f64> =
                            r.as_array()?.iter().map(as_number).collect::<Option<_>>()?;
                        <[f64; 3]>::try_from(xs).ok()
                    })
                    .collect();
                match vectors.map(SpinModel::spatial) {
                    Some(Ok(m)) if !m.directions().is_empty() => Some(m),
                    Some(Err(e)) => {
                        c.fail("parameters.directions", e.to_string());
                        None
                    }
                    _ => {
                        c.fail(
                            "parameters.directions",
                            "expected a non-empty array of 3-vectors",
                        );
                        None
                    }
                }
            }
        },
        d => {
            c.fail("parameters.dimension", format!("must be 2 or 3, got {d}"));
            None
        }
    };
    Some(Experiment::SpinMonteCarlo {
        model: model?,
        samples: samples?,
        seed,
        stream,
    })
}

fn parse_chsh(c: &mut Collector<'_>) -> Option<Experiment> {
    c.reject_unknown(&["a", "a_prime", "b", "b_prime", "samples", "seed"]);
    let angles = [
        c.angle("a"),
        c.angle("a_prime"),
        c.angle("b"),
        c.angle("b_prime"),
    ];
    let samples = c.count("samples", false, MIN_LHV_SAMPLES as i64);
    let seed = c.seed();
    let [Some(a), Some(a2), Some(b), Some(b2)] = angles else {
        return None;
    };
    Some(Experiment::Chsh {
        setting: ChshSetting::new(a, a2, b, b2).ok()?,
        samples,
        seed,
    })
}

fn parse_born_table(c: &mut Collector<'_>) -> Option<Experiment> {
    c.reject_unknown(&["prepared_deg", "outcome_deg", "likelihood"]);
    let prepared_deg = c.number("prepared_deg", true);
    let outcome_deg = c.numbers("outcome_deg", true);
    let likelihood = match c.get("likelihood") {
        None => None,
        Some(v) => match v.clone().try_into::<LikelihoodModel>() {
            Ok(m) => {
                let mut values = m.theta_values().to_vec();
                values.sort_by(f64::total_cmp);
                if values != [-1.0, 1.0] {
                    c.fail(
                        "parameters.likelihood.theta_values",
                        "must be the spin values -1 and 1",
                    );
                    None
                } else {
                    Some(m)
                }
            }
            Err(e) => {
                c.fail("parameters.likelihood", e.message().to_owned());
                None
            }
        },
    };
    Some(Experiment::BornTable {
        prepared_deg: prepared_deg?,
        outcome_deg: outcome_deg?,
        likelihood,
    })
}

fn parse_system_check(c: &mut Collector<'_>, base_dir: &Path) -> Option<Experiment> {
    c.reject_unknown(&["system", "theorem"]);
    let system_path = match c.get("system") {
        Some(Value::String(s)) => base_dir.join(s),
        Some(_) => {
            c.fail("parameters.system", "expected a file path");
            return None;
        }
        None => {
            c.fail("parameters.system", "missing");
            return None;
        }
    };
    let theorem = match c.get("theorem") {
        None => None,
        Some(Value::Array(a)) if a.len() == 3 && a.iter().all(Value::is_str) => {
            Some([0, 1, 2].map(|i| a[i].as_str().expect("checked").to_owned()))
        }
        Some(_) => {
            c.fail(
                "parameters.theorem",
                "expected three variable names [theta, eta, lambda]",
            );
            None
        }
    };
    let text = match fs::read_to_string(&system_path) {
        Ok(t) => t,
        Err(e) => {
            c.fail(
                "parameters.system",
                format!("cannot read {}: {e}", system_path.display()),
            );
            return None;
        }
    };
    let document = match SystemDocument::from_toml(&text) {
        Ok(d) => d,
        Err(e) => {
            c.fail(
                "parameters.system",
                format!("{}: {}", system_path.display(), e.message()),
            );
            return None;
        }
    };
    match document.build() {
        Ok(loaded) => {
            if let Some(names) = &theorem {
                for n in names {
                    if loaded.variable(n).is_none() {
                        c.fail(
                            "parameters.theorem",
                            format!("variable `{n}` is not declared"),
                        );
                    }
                }
            }
        }
        Err(e) => {
            c.fail(
                "parameters.system",
                format!("{}: {e}", system_path.display()),
            );
            return None;
        }
    }
    Some(Experiment::VariableSystemCheck {
        system_path,
        document,
        theorem,
    })
}

/// Runs one experiment and returns its report. `Err` means the computation
/// itself failed, which counts as a failed check.
pub fn execute(config: &ExperimentConfig) -> crate::Result<Report> {
    match &config.experiment {
        Experiment::SpinMonteCarlo {
            model,
            samples,
            seed,
            stream,
        } => Ok(spin_report(model, *samples, *seed, *stream, config.workers)),
        Experiment::EprBohm => epr_bohm_report(),
        Experiment::Chsh {
            setting,
            samples,
            seed,
        } => chsh_report(setting, *samples, *seed, config.workers),
        Experiment::BornTable {
            prepared_deg,
            outcome_deg,
            likelihood,
        } => born_table(*prepared_deg, outcome_deg, likelihood.as_ref()),
        Experiment::VariableSystemCheck {
            system_path,
            document,
            theorem,
        } => {
            let loaded = document.build()?;
            let triple = theorem
                .as_ref()
                .map(|[t, e, l]| (t.as_str(), e.as_str(), l.as_str()));
            let mut r = variable_system_check(&loaded, triple)?;
            let name = system_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned());
            r.input("system_file", name);
            Ok(r)
        }
    }
}

fn spin_report(model: &SpinModel, n: u64, seed: u64, stream: u64, workers: usize) -> Report {
    let rng = RngStream::new(seed, stream);
    let stats = spin_monte_carlo(model, n, &rng, workers);
    let mut r = Report::new("spin_monte_carlo");
    r.input("dimension", model.dimension())
        .input("directions", model.directions())
        .input("samples", n)
        .input("stream", stream);
    r.seeds.push(seed);
    let m = model.directions().len();
    let sigma = stats.marginal_stderr();
    let mut worst_marginal: f64 = 0.0;
    for i in 0..m {
        let p = stats.marginal(i);
        worst_marginal = worst_marginal.max((p - 0.5).abs() / sigma);
        r.row(format!("direction={i}"), "P(+1)", p);
    }
    r.check(
        "marginal frequency of +1 is 1/2 within 3 sigma",
        worst_marginal <= MARGINAL_SIGMAS,
        format!("largest deviation {worst_marginal:.3} sigma, sigma = {sigma:e}"),
    );
    let mut worst_pair: f64 = 0.0;
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let gamma = angle_between(&model.directions()[i], &model.directions()[j]);
            let exact = lhv_correlation(gamma);
            let est = stats.correlation(i, j);
            let se = stats.correlation_stderr(exact);
            let z = if se > 0.0 {
                (est - exact).abs() / se
            } else if (est - exact).abs() <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            worst_pair = worst_pair.max(z);
            let setting = format!("pair={i},{j}");
            r.row(&setting, "E", est).row(&setting, "1-2g/pi", exact);
            pairs.push(serde_json::json!({
                "i": i, "j": j, "angle_deg": gamma.to_degrees(),
                "estimate": est, "exact": exact, "stderr": se,
            }));
        }
    }
    if m > 1 {
        r.check(
            "pair correlations match 1 - 2 gamma / pi within 3 sigma",
            worst_pair <= MARGINAL_SIGMAS,
            format!("largest deviation {worst_pair:.3} sigma"),
        );
    }
    r.result(
        "marginals",
        (0..m).map(|i| stats.marginal(i)).collect::<Vec<_>>(),
    )
    .result("pair_correlations", pairs);
    r
}

fn chsh_report(
    setting: &ChshSetting,
    samples: Option<u64>,
    seed: u64,
    workers: usize,
) -> crate::Result<Report> {
    let mut r = Report::new("chsh");
    r.input("setting", setting);
    let label = setting.label();
    let q = chsh_quantum(setting)?;
    let in_range = q.terms.iter().all(|e| e.abs() <= 1.0 + 1e-10);
    r.check(
        "quantum correlations lie in [-1, 1]",
        in_range,
        format!("{:?}", q.terms),
    );
    let tsirelson = 2.0 * 2f64.sqrt();
    r.check(
        "quantum S is at most 2 sqrt 2",
        q.s.abs() <= tsirelson + 1e-9,
        format!("S = {}", q.s),
    );
    for (name, e) in CHSH_TERMS.iter().zip(q.terms) {
        r.row(&label, format!("quantum {name}"), e);
    }
    r.row(&label, "quantum S", q.s);
    r.result("quantum", q)
        .result("quantum_exceeds_classical_bound", q.s.abs() > 2.0);

    let exact = chsh_lhv_exact(setting);
    let exact_s = crate::experiments::chsh_combination(exact);
    r.result(
        "lhv_exact",
        serde_json::json!({ "terms": exact, "s": exact_s }),
    );

    if let Some(n) = samples {
        r.input("samples", n);
        r.seeds.push(seed);
        let est = chsh_lhv(setting, n, &RngStream::new(seed, 0), workers)?;
        r.check(
            "simulated |S| is at most 2 + 5 stderr",
            est.within_bound(CHSH_SIGMAS),
            format!("S = {} +- {}", est.s, est.stderr),
        );
        let mut worst: f64 = 0.0;
        for (t, x) in est.terms.iter().zip(exact) {
            let d = (t.value - x).abs();
            let z = if t.stderr > 0.0 {
                d / t.stderr
            } else if d <= 1e-12 {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(z);
        }
        r.check(
            "simulated terms match 1 - 2 gamma / pi within 5 stderr",
            worst <= CHSH_SIGMAS,
            format!("largest deviation {worst:.3} stderr"),
        );
        for (name, t) in CHSH_TERMS.iter().zip(est.terms) {
            r.row(&label, format!("lhv {name}"), t.value);
        }
        r.row(&label, "lhv S", est.s)
            .row(&label, "lhv S stderr", est.stderr);
        r.result("lhv", est);
    }
    Ok(r)
}

/// Path of the report file `execute` output is written to.
pub fn report_path(config: &ExperimentConfig) -> PathBuf {
    config.output_dir.join(format!(
        "{}.{}",
        config.experiment.kind(),
        config.format.extension()
    ))
}

pub fn write_report(config: &ExperimentConfig, report: &Report) -> std::io::Result<PathBuf> {
    fs::create_dir_all(&config.output_dir)?;
    let path = report_path(config);
    let body = match config.format {
        Format::Structured => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    fs::write(&path, body)?;
    Ok(path)
}

fn load(path: &Path, overrides: &Overrides, err: &mut dyn Write) -> Result<ExperimentConfig, i32> {
    let table = match read_config(path, overrides) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return Err(EXIT_CONFIG);
        }
    };
    let base = path.parent().unwrap_or(Path::new("."));
    parse_config(&table, base).map_err(|violations| {
        for v in &violations {
            let _ = writeln!(err, "error: {v}");
        }
        EXIT_CONFIG
    })
}

/// Checks a config without running it. Violations go to `err`.
pub fn validate(path: &Path, overrides: &Overrides, err: &mut dyn Write) -> i32 {
    match load(path, overrides, err) {
        Ok(c) => {
            let _ = writeln!(
                err,
                "{}: valid {} config",
                path.display(),
                c.experiment.kind()
            );
            EXIT_PASS
        }
        Err(code) => code,
    }
}

/// Loads, runs and writes one experiment. Diagnostics go to `err`.
pub fn run(path: &Path, overrides: &Overrides, err: &mut dyn Write) -> i32 {
    let config = match load(path, overrides, err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let report = match execute(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(
                err,
                "check failed: {} computation: {e}",
                config.experiment.kind()
            );
            return EXIT_FAILED_CHECK;
        }
    };
    match write_report(&config, &report) {
        Ok(p) => {
            let _ = writeln!(err, "wrote {}", p.display());
        }
        Err(e) => {
            let _ = writeln!(
                err,
                "error: cannot write report to {}: {e}",
                config.output_dir.display()
            );
            return EXIT_CONFIG;
        }
    }
    let failed: Vec<_> = report.failed_checks().collect();
    for c in &failed {
        let _ = writeln!(err, "check failed: {}: {}", c.name, c.detail);
    }
    if failed.is_empty() {
        EXIT_PASS
    } else {
        EXIT_FAILED_CHECK
    }
}

/// Entry point for the binary: parses `args` and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
        }
    };
    let overrides = Overrides::from(&args);
    let mut stderr = std::io::stderr();
    if args.validate {
        validate(&args.config, &overrides, &mut stderr)
    } else {
        run(&args.config, &overrides, &mut stderr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(s: &str) -> Table {
        s.parse().unwrap()
    }

    fn violations(s: &str) -> Vec<Violation> {
        parse_config(&table(s), Path::new(".")).unwrap_err()
    }

    #[test]
    fn unknown_kind_is_named() {
        let v = violations("kind = \"bogus\"");
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("unknown experiment kind"));
    }

    #[test]
    fn spin_requires_samples() {
        let v = violations("kind = \"spin_monte_carlo\"\n[parameters]\ndirections_deg = [0, 90]");
        assert_eq!(v[0].key, "parameters.samples");
    }

    #[test]
    fn negative_seed_is_named() {
        let v = violations(
            "kind = \"spin_monte_carlo\"\n[parameters]\nsamples = 10\nseed = -3\ndirections_deg = [0]",
        );
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].key, "parameters.seed");
        assert!(v[0].message.contains("negative"));
    }

    #[test]
    fn zero_samples_rejected() {
        let v = violations(
            "kind = \"spin_monte_carlo\"\n[parameters]\nsamples = 0\ndirections_deg = [0]",
        );
        assert_eq!(v[0].key, "parameters.samples");
    }

    #[test]
    fn epr_parses_with_defaults() {
        let c = parse_config(&table("kind = \"epr_bohm\""), Path::new(".")).unwrap();
        assert_eq!(c.format, Format::Structured);
        assert_eq!(report_path(&c), PathBuf::from("reports/epr_bohm.json"));
    }

    #[test]
    fn overrides_fill_missing_values() {
        let mut t = table("kind = \"spin_monte_carlo\"\n[parameters]\ndirections_deg = [0]");
        apply_overrides(
            &mut t,
            &Overrides {
                samples: Some(50),
                format: Some(Format::Csv),
                ..Overrides::default()
            },
        );
        let c = parse_config(&t, Path::new(".")).unwrap();
        assert_eq!(c.format, Format::Csv);
        assert!(matches!(
            c.experiment,
            Experiment::SpinMonteCarlo { samples: 50, .. }
        ));
    }

    #[test]
    fn chsh_angles_checked() {
        let v =
            violations("kind = \"chsh\"\n[parameters]\na = 0\na_prime = 360\nb = 1\nb_prime = 2");
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].key, "parameters.a_prime");
    }

    #[test]
    fn chsh_optimal_report() {
        let c = parse_config(
            &table("kind = \"chsh\"\n[parameters]\na = 0\na_prime = 90\nb = 225\nb_prime = 135\nsamples = 20000\nseed = 1"),
            Path::new("."),
        )
        .unwrap();
        let r = execute(&c).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
        let s = r.results["quantum"]["s"].as_f64().unwrap();
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn missing_system_file_is_a_violation() {
        let v = violations(
            "kind = \"variable_system_check\"\n[parameters]\nsystem = \"no/such/file.toml\"",
        );
        assert_eq!(v[0].key, "parameters.system");
    }
}
