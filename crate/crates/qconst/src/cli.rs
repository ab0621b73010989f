//! Command-line front end. Every command is deterministic given its flags
//! (plus the seed where one applies) and emits plot-ready CSV or JSON.
//!
//! Flags can also be read from an optional `key=value` defaults file
//! passed with `--config`; explicit flags always win. Exit codes: 0
//! success, 1 selfcheck failure, 2 usage or validation error, 3 degenerate
//! result (an estimate that conditions on an event that never occurred).

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::asymptotics::{crossing_eta, figure1_curve};
use crate::combinatorics::profile_multiplicities;
use crate::error::Error;
use crate::ftm::outcome_distribution;
use crate::function_space::FunctionSpec;
use crate::inference::{classical_posterior, posterior_table, quantum_posterior, PosteriorQuery};
use crate::montecarlo::{run_experiment, ExperimentConfig};
use crate::output::{
    f64_json, format_significant, rational_decimal, rational_json, to_json_string, Format,
    OutputSpec,
};
use crate::selfcheck::{run_and_report, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFCHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

const DEFAULT_PRECISION: usize = 12;

/// Entry point for the `qconst` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::InvalidArgument(_) | Error::Parse(_) | Error::ResourceLimit(_) => EXIT_USAGE,
                Error::Degenerate(_) => EXIT_DEGENERATE,
                Error::Io(_) => 1,
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qconst",
    version,
    about = "Constancy testing by superposed evaluation and Fourier measurement, \
             with exact Bayesian comparison against classical sampling"
)]
struct Cli {
    /// Optional key=value defaults file; explicit flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measurement outcome distribution of one function
    Dist(DistArgs),
    /// Exact posterior table Pr(const | k) versus k
    Posterior(PosteriorArgs),
    /// Large-N worst-case error curves and their crossing point
    Worstcase(WorstcaseArgs),
    /// Stochastic estimate of the posterior, checked against the exact value
    Montecarlo(MontecarloArgs),
    /// Row profiles and their exact multiplicities
    Profiles(ProfilesArgs),
    /// Run the built-in invariant suites
    Selfcheck(SelfcheckArgs),
    /// Preset: worstcase --samples 101
    Fig1(OutputArgs),
    /// Preset: posterior --n 8 --m 2 --kmax 7
    Fig2(OutputArgs),
    /// Preset: posterior --n 16 --m 2 --kmax 15
    Fig3(OutputArgs),
    /// Preset: posterior --n 16 --m 8 --kmax 15
    Fig4(OutputArgs),
    /// Preset: posterior --n 24 --m 24 --kmax 23
    Fig5(OutputArgs),
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write to PATH instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Significant digits for numeric fields (3..=17)
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Args, Debug)]
struct DistArgs {
    /// Function literal: comma-separated values, e.g. "0,1,0"
    #[arg(value_name = "FUNCTION")]
    function: Option<String>,
    /// Range size M
    #[arg(long)]
    m: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PosteriorArgs {
    /// Domain size N
    #[arg(long)]
    n: Option<usize>,
    /// Range size M
    #[arg(long)]
    m: Option<usize>,
    /// Largest k in the table
    #[arg(long)]
    kmax: Option<usize>,
    /// Posterior column(s) to emit
    #[arg(long, value_enum)]
    algorithm: Option<AlgorithmArg>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct WorstcaseArgs {
    /// Number of eta samples on [0, 1]
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct MontecarloArgs {
    /// Domain size N
    #[arg(long)]
    n: Option<usize>,
    /// Range size M
    #[arg(long)]
    m: Option<usize>,
    /// Constant indications to condition on
    #[arg(long)]
    k: Option<usize>,
    /// Number of trials
    #[arg(long)]
    trials: Option<u64>,
    /// RNG seed
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ProfilesArgs {
    /// Domain size N
    #[arg(long)]
    n: Option<usize>,
    /// Range size M
    #[arg(long)]
    m: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Suite scope
    #[arg(value_enum, value_name = "LEVEL")]
    level: Option<LevelArg>,
    /// Enumeration cap override for the sweeps
    #[arg(long)]
    cap: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

impl FromStr for FormatArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Quantum,
    Classical,
    Both,
}

impl FromStr for AlgorithmArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "quantum" => Ok(Self::Quantum),
            "classical" => Ok(Self::Classical),
            "both" => Ok(Self::Both),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

impl FromStr for LevelArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Ok(Self::Fast),
            "full" => Ok(Self::Full),
            other => Err(format!("unknown level {other:?}")),
        }
    }
}

/// Key=value defaults loaded from `--config`.
struct FileDefaults(HashMap<String, String>);

impl FileDefaults {
    fn load(path: Option<&Path>) -> Result<Self, Error> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Parse(format!(
                        "{}:{}: expected key=value, got {line:?}",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| Error::Parse(format!("config value {key}={raw} is invalid"))),
        }
    }
}

fn resolved<T: FromStr>(
    flag: Option<T>,
    defaults: &FileDefaults,
    key: &str,
) -> Result<Option<T>, Error> {
    match flag {
        Some(value) => Ok(Some(value)),
        None => defaults.parse(key),
    }
}

fn required<T>(value: Option<T>, what: &str) -> Result<T, Error> {
    value.ok_or_else(|| Error::InvalidArgument(format!("missing required {what}")))
}

fn resolve_output(
    args: &OutputArgs,
    defaults: &FileDefaults,
    default_format: Format,
) -> Result<OutputSpec, Error> {
    let format = resolved(args.format, defaults, "format")?
        .map(Format::from)
        .unwrap_or(default_format);
    let out = resolved(args.out.clone(), defaults, "out")?;
    let precision =
        resolved(args.precision, defaults, "precision")?.unwrap_or(DEFAULT_PRECISION);
    OutputSpec::new(format, out, precision)
}

fn execute(cli: Cli) -> Result<i32, Error> {
    let defaults = FileDefaults::load(cli.config.as_deref())?;
    match cli.command {
        Command::Dist(args) => cmd_dist(args, &defaults),
        Command::Posterior(args) => cmd_posterior(args, &defaults),
        Command::Worstcase(args) => cmd_worstcase(args, &defaults),
        Command::Montecarlo(args) => cmd_montecarlo(args, &defaults),
        Command::Profiles(args) => cmd_profiles(args, &defaults),
        Command::Selfcheck(args) => cmd_selfcheck(args, &defaults),
        Command::Fig1(output) => cmd_worstcase(
            WorstcaseArgs {
                samples: Some(101),
                output,
            },
            &defaults,
        ),
        Command::Fig2(output) => cmd_posterior(preset_posterior(8, 2, 7, output), &defaults),
        Command::Fig3(output) => cmd_posterior(preset_posterior(16, 2, 15, output), &defaults),
        Command::Fig4(output) => cmd_posterior(preset_posterior(16, 8, 15, output), &defaults),
        Command::Fig5(output) => cmd_posterior(preset_posterior(24, 24, 23, output), &defaults),
    }
}

fn preset_posterior(n: usize, m: usize, kmax: usize, output: OutputArgs) -> PosteriorArgs {
    PosteriorArgs {
        n: Some(n),
        m: Some(m),
        kmax: Some(kmax),
        algorithm: Some(AlgorithmArg::Both),
        output,
    }
}

fn cmd_dist(args: DistArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let literal: String = required(resolved(args.function, defaults, "function")?, "FUNCTION literal")?;
    let m_range = required(resolved(args.m, defaults, "m")?, "--m")?;
    let output = resolve_output(&args.output, defaults, Format::Csv)?;

    let f = FunctionSpec::parse(&literal, m_range)?;
    let dist = outcome_distribution(&f);
    let mut w = output.writer()?;
    match output.format {
        Format::Csv => {
            writeln!(w, "alpha,beta,probability,class")?;
            for (outcome, p, class) in dist.iter() {
                writeln!(
                    w,
                    "{},{},{},{}",
                    outcome.alpha,
                    outcome.beta,
                    format_significant(p, output.precision),
                    class
                )?;
            }
        }
        Format::Json => {
            let outcomes: Vec<Value> = dist
                .iter()
                .map(|(outcome, p, class)| {
                    json!({
                        "alpha": outcome.alpha,
                        "beta": outcome.beta,
                        "probability": f64_json(p, output.precision),
                        "class": class.to_string(),
                    })
                })
                .collect();
            let mut class_totals = serde_json::Map::new();
            for class in crate::ftm::OutcomeClass::ALL {
                class_totals.insert(
                    class.to_string(),
                    f64_json(dist.class_total(class), output.precision),
                );
            }
            let doc = json!({
                "n_domain": f.n_domain(),
                "m_range": f.m_range(),
                "outcomes": outcomes,
                "class_totals": Value::Object(class_totals),
            });
            writeln!(w, "{}", to_json_string(&doc))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_posterior(args: PosteriorArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let n = required(resolved(args.n, defaults, "n")?, "--n")?;
    let m = required(resolved(args.m, defaults, "m")?, "--m")?;
    let kmax = required(resolved(args.kmax, defaults, "kmax")?, "--kmax")?;
    let algorithm = resolved(args.algorithm, defaults, "algorithm")?.unwrap_or(AlgorithmArg::Both);
    let output = resolve_output(&args.output, defaults, Format::Csv)?;

    // rows of (k, quantum, classical); unrequested columns stay None
    let rows: Vec<(usize, Option<_>, Option<_>)> = match algorithm {
        AlgorithmArg::Both => posterior_table(n, m, kmax)?
            .into_iter()
            .map(|row| (row.k, Some(row.quantum), Some(row.classical)))
            .collect(),
        AlgorithmArg::Quantum => (1..=kmax)
            .map(|k| {
                let query = PosteriorQuery::new(n, m, k)?;
                Ok((k, Some(quantum_posterior(&query)?), None))
            })
            .collect::<Result<_, Error>>()?,
        AlgorithmArg::Classical => (1..=kmax)
            .map(|k| {
                let query = PosteriorQuery::new(n, m, k)?;
                Ok((k, None, Some(classical_posterior(&query)?)))
            })
            .collect::<Result<_, Error>>()?,
    };

    let mut w = output.writer()?;
    match output.format {
        Format::Csv => {
            let mut header = vec!["k"];
            if rows.first().is_some_and(|r| r.1.is_some()) {
                header.push("quantum");
            }
            if rows.first().is_some_and(|r| r.2.is_some()) {
                header.push("classical");
            }
            writeln!(w, "{}", header.join(","))?;
            for (k, quantum, classical) in &rows {
                let mut fields = vec![k.to_string()];
                if let Some(q) = quantum {
                    fields.push(rational_decimal(q, output.precision));
                }
                if let Some(c) = classical {
                    fields.push(rational_decimal(c, output.precision));
                }
                writeln!(w, "{}", fields.join(","))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(k, quantum, classical)| {
                    let mut row = serde_json::Map::new();
                    row.insert("k".into(), json!(k));
                    if let Some(q) = quantum {
                        row.insert("quantum".into(), rational_json(q, output.precision));
                    }
                    if let Some(c) = classical {
                        row.insert("classical".into(), rational_json(c, output.precision));
                    }
                    Value::Object(row)
                })
                .collect();
            let doc = json!({
                "n_domain": n,
                "m_range": m,
                "rows": rows,
            });
            writeln!(w, "{}", to_json_string(&doc))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_worstcase(args: WorstcaseArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let samples = required(resolved(args.samples, defaults, "samples")?, "--samples")?;
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let output = resolve_output(&args.output, defaults, Format::Csv)?;
    let curve = figure1_curve(samples);
    let crossing = crossing_eta();

    let mut w = output.writer()?;
    match output.format {
        Format::Csv => {
            writeln!(w, "eta,quantum_eps,classical_eps")?;
            for point in &curve {
                writeln!(
                    w,
                    "{},{},{}",
                    format_significant(point.eta, output.precision),
                    format_significant(point.quantum_eps, output.precision),
                    format_significant(point.classical_eps, output.precision),
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = curve
                .iter()
                .map(|point| {
                    json!({
                        "eta": f64_json(point.eta, output.precision),
                        "quantum_eps": f64_json(point.quantum_eps, output.precision),
                        "classical_eps": f64_json(point.classical_eps, output.precision),
                    })
                })
                .collect();
            let doc = json!({
                "samples": samples,
                "crossing_eta": f64_json(crossing, output.precision),
                "rows": rows,
            });
            writeln!(w, "{}", to_json_string(&doc))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_montecarlo(args: MontecarloArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let n = required(resolved(args.n, defaults, "n")?, "--n")?;
    let m = required(resolved(args.m, defaults, "m")?, "--m")?;
    let k = required(resolved(args.k, defaults, "k")?, "--k")?;
    let trials = required(resolved(args.trials, defaults, "trials")?, "--trials")?;
    let seed = required(resolved(args.seed, defaults, "seed")?, "--seed")?;
    let output = resolve_output(&args.output, defaults, Format::Json)?;
    if output.format != Format::Json {
        return Err(Error::InvalidArgument(
            "montecarlo results serialize to JSON only".into(),
        ));
    }

    let config = ExperimentConfig::new(n, m, k, trials, seed)?;
    let result = run_experiment(&config);
    let exact = quantum_posterior(&PosteriorQuery::new(n, m, k)?).ok();
    let agreement = match (result.estimate, result.std_error, &exact) {
        (Some(estimate), Some(se), Some(exact)) => {
            use num_traits::ToPrimitive;
            let exact = exact.to_f64().unwrap_or(f64::NAN);
            Some((estimate - exact).abs() <= 4.0 * se.max(f64::EPSILON))
        }
        _ => None,
    };

    let doc = json!({
        "config": {
            "n": n,
            "m": m,
            "k": k,
            "trials": trials,
            "seed": seed,
        },
        "conditioning_events": result.conditioning_events,
        "constant_and_conditioned": result.constant_and_conditioned,
        "aborted_not_constant": result.aborted_not_constant,
        "fail_outcomes": result.fail_outcomes,
        "total_outcomes": result.total_outcomes,
        "estimate": result.estimate.map_or(Value::Null, |e| f64_json(e, output.precision)),
        "std_error": result.std_error.map_or(Value::Null, |e| f64_json(e, output.precision)),
        "exact_posterior": exact
            .as_ref()
            .map_or(Value::Null, |e| rational_json(e, output.precision)),
        "agreement": agreement.map_or(Value::Null, Value::Bool),
    });
    let mut w = output.writer()?;
    writeln!(w, "{}", to_json_string(&doc))?;
    drop(w);

    if result.conditioning_events == 0 {
        eprintln!(
            "error: no trial accumulated {k} constant indications; the estimate is undefined"
        );
        return Ok(EXIT_DEGENERATE);
    }
    Ok(EXIT_OK)
}

fn cmd_profiles(args: ProfilesArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let n = required(resolved(args.n, defaults, "n")?, "--n")?;
    let m = required(resolved(args.m, defaults, "m")?, "--m")?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "domain and range sizes must be at least 1".into(),
        ));
    }
    let output = resolve_output(&args.output, defaults, Format::Csv)?;
    let table = profile_multiplicities(n, m);

    let mut w = output.writer()?;
    match output.format {
        Format::Csv => {
            let header: Vec<String> = (0..=n).map(|l| format!("j{l}")).collect();
            writeln!(w, "{},count", header.join(","))?;
            for pm in &table {
                let fields: Vec<String> =
                    pm.profile.counts().iter().map(|j| j.to_string()).collect();
                writeln!(w, "{},{}", fields.join(","), pm.count)?;
            }
        }
        Format::Json => {
            let profiles: Vec<Value> = table
                .iter()
                .map(|pm| {
                    json!({
                        "profile": pm.profile.counts(),
                        "count": pm.count.to_string(),
                    })
                })
                .collect();
            let doc = json!({
                "n_domain": n,
                "m_range": m,
                "profiles": profiles,
            });
            writeln!(w, "{}", to_json_string(&doc))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_selfcheck(args: SelfcheckArgs, defaults: &FileDefaults) -> Result<i32, Error> {
    let level = match resolved(args.level, defaults, "level")?.unwrap_or(LevelArg::Fast) {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let cap = resolved(args.cap, defaults, "cap")?.unwrap_or(u64::MAX);
    let all_passed = run_and_report(level, cap, std::io::stdout().lock())?;
    Ok(if all_passed { EXIT_OK } else { EXIT_SELFCHECK_FAILED })
}
