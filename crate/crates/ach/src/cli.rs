//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for file-system failures, 2 for invalid flags or
//! input content. Errors go to stderr, one per line, prefixed with `error:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ach_core::eval::{detection_bench, robustness_bench, BenchCase, Method};
use ach_core::synthdata::{inject, reference_queries};
use ach_core::{AnomalyKind, AnomalySpec, Contamination, DepthConfig, Estimator, GenKind, GenSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::io::{self, IoError, Rescale};
use crate::parallel::ParallelScorer;

#[derive(Debug, Parser)]
#[command(
    name = "ach",
    version,
    about = "Area-of-convex-hull depth for sampled curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a synthetic curve batch, optionally with injected anomalies.
    Generate(GenerateArgs),
    /// Score query curves against a reference batch.
    Depth(DepthArgs),
    /// Ranking stability under growing contamination of the reference.
    Robustness(RobustnessArgs),
    /// Number of anomalies found among the lowest-depth curves, per severity.
    Detect(DetectArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dataset {
    Gbm,
    Sinusoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Location,
    Isolated,
    Shape,
    Amplitude,
}

impl Kind {
    fn anomaly(self) -> AnomalyKind {
        match self {
            Kind::Location => AnomalyKind::location(),
            Kind::Isolated => AnomalyKind::isolated(),
            Kind::Shape => AnomalyKind::shape(),
            Kind::Amplitude => AnomalyKind::amplitude(),
        }
    }

    /// Dataset the anomaly type is studied on in the robustness benchmark.
    fn home_dataset(self) -> Dataset {
        match self {
            Kind::Location => Dataset::Gbm,
            _ => Dataset::Sinusoid,
        }
    }

    fn default_grid(self) -> (f64, f64, usize) {
        match self {
            Kind::Location => (0.0, 3.0, 7),
            Kind::Isolated => (0.0, 10.0, 6),
            Kind::Shape => (0.0, 0.05, 6),
            Kind::Amplitude => (1.0, 2.0, 6),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorArg {
    Mc,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Ach,
    Integrated,
}

/// Parameters of the two synthetic families.
#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// GBM drift.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub mu: f64,
    /// GBM squared volatility.
    #[arg(long, default_value_t = 0.5)]
    pub sigma2: f64,
    /// GBM starting value.
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    /// Lower bound of the sinusoid coefficients.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lo: f64,
    /// Upper bound of the sinusoid coefficients.
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub hi: f64,
}

impl FamilyArgs {
    fn kind(&self, dataset: Dataset) -> Result<GenKind, CliError> {
        match dataset {
            Dataset::Gbm => {
                if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
                    return Err(CliError::invalid(format!(
                        "--sigma2 must be a finite non-negative number, got {}",
                        self.sigma2
                    )));
                }
                Ok(GenKind::Gbm {
                    mu: self.mu,
                    sigma: self.sigma2.sqrt(),
                    x0: self.x0,
                })
            }
            Dataset::Sinusoid => Ok(GenKind::Sinusoid {
                lo: self.lo,
                hi: self.hi,
            }),
        }
    }
}

/// Estimator selection shared by the scoring subcommands.
#[derive(Debug, Clone, Args, Serialize)]
pub struct EstimatorArgs {
    /// Depth degree: number of reference curves per hull.
    #[arg(long = "J", default_value_t = 2)]
    pub degree: usize,
    /// Number of Monte-Carlo draws (default 5n).
    #[arg(long = "K")]
    pub draws: Option<usize>,
    #[arg(long, value_enum, default_value_t = EstimatorArg::Mc)]
    pub estimator: EstimatorArg,
    /// Average over degrees 1..=J (the default).
    #[arg(long, overrides_with = "no_averaged")]
    pub averaged: bool,
    /// Use the single degree J only.
    #[arg(long = "no-averaged", overrides_with = "averaged")]
    pub no_averaged: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Ach)]
    pub method: MethodArg,
}

impl EstimatorArgs {
    fn config(&self, seed: u64) -> DepthConfig {
        DepthConfig {
            degree: self.degree,
            estimator: match self.estimator {
                EstimatorArg::Mc => Estimator::MonteCarlo,
                EstimatorArg::Exact => Estimator::Exact,
            },
            draws: self.draws,
            averaged: !self.no_averaged,
            seed,
        }
    }

    fn method(&self, seed: u64) -> Method {
        match self.method {
            MethodArg::Ach => Method::Ach(self.config(seed)),
            MethodArg::Integrated => Method::IntegratedBaseline,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ThreadArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "ACH_THREADS", default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Dataset,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub p: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Anomaly type to inject.
    #[arg(long, value_enum)]
    pub anomaly: Option<Kind>,
    /// Contamination in percent of n.
    #[arg(long, conflicts_with = "count", requires = "anomaly")]
    pub alpha: Option<f64>,
    /// Exact number of anomalies.
    #[arg(long, requires = "anomaly")]
    pub count: Option<usize>,
    /// Seed of the anomaly injection (default: --seed).
    #[arg(long)]
    pub anomaly_seed: Option<u64>,
    /// Labels file (default: next to the output, `.labels.csv`).
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Also write the four reference queries (a deep curve and three anomalies).
    #[arg(long)]
    pub reference_queries: Option<PathBuf>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    /// Reference curves CSV.
    #[arg(short, long)]
    pub reference: PathBuf,
    /// Query curves CSV (default: the reference itself).
    #[arg(short, long)]
    pub queries: Option<PathBuf>,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Time rescaling: `none`, `auto` or `START:END`.
    #[arg(long, default_value = "none", value_parser = parse_rescale)]
    pub rescale: Rescale,
    #[command(flatten)]
    pub threads: ThreadArgs,
    /// Report CSV (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchOutput {
    /// Results CSV (default: stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON summary (default: the output path with a `.json` extension).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    /// Anomaly types (default: location, isolated and shape).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub kind: Vec<Kind>,
    /// Dataset for every kind (default: GBM for location, sinusoid otherwise).
    #[arg(long, value_enum)]
    pub dataset: Option<Dataset>,
    /// Contamination levels in percent.
    #[arg(long, value_delimiter = ',', default_value = "0,5,10,15,25,30")]
    pub alphas: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub p: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[command(flatten)]
    pub threads: ThreadArgs,
    #[command(flatten)]
    pub out: BenchOutput,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Dataset::Gbm)]
    pub dataset: Dataset,
    /// Severity grid `START:END:COUNT`, endpoints included.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    /// Number of anomalies, also the size of the flagged set.
    #[arg(long, default_value_t = 15)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub p: usize,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[command(flatten)]
    pub threads: ThreadArgs,
    #[command(flatten)]
    pub out: BenchOutput,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.end
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("expected START:END:COUNT, got `{s}`"));
    };
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{x}` is not a number"))
    };
    let start = num(a)?;
    let end = num(b)?;
    let count: usize = c
        .trim()
        .parse()
        .map_err(|_| format!("`{c}` is not a count"))?;
    if count == 0 || !start.is_finite() || !end.is_finite() || end < start {
        return Err(format!(
            "grid `{s}` needs finite START <= END and COUNT >= 1"
        ));
    }
    Ok(Grid { start, end, count })
}

pub fn parse_rescale(s: &str) -> Result<Rescale, String> {
    match s {
        "none" => Ok(Rescale::None),
        "auto" => Ok(Rescale::Auto),
        _ => {
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| format!("expected none, auto or START:END, got `{s}`"))?;
            let a: f64 = a
                .trim()
                .parse()
                .map_err(|_| format!("`{a}` is not a number"))?;
            let b: f64 = b
                .trim()
                .parse()
                .map_err(|_| format!("`{b}` is not a number"))?;
            if a >= b || !a.is_finite() || !b.is_finite() {
                return Err(format!("rescale interval `{s}` needs finite START < END"));
            }
            Ok(Rescale::Interval(a, b))
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Invalid(String),
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Invalid(m) => m,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        if e.is_io() {
            CliError::Io(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<ach_core::Error> for CliError {
    fn from(e: ach_core::Error) -> Self {
        let hint = match e {
            ach_core::Error::SubsetBudget { .. } => "; use --estimator mc",
            _ => "",
        };
        CliError::Invalid(format!("{e}{hint}"))
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            let mut stderr = std::io::stderr().lock();
            for line in e.message().lines() {
                let _ = writeln!(stderr, "error: {line}");
            }
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Generate(a) => cmd_generate(&a),
        Command::Depth(a) => cmd_depth(&a),
        Command::Robustness(a) => cmd_robustness(&a),
        Command::Detect(a) => cmd_detect(&a),
    }
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn check_distinct(inputs: &[&Path], outputs: &[&Path]) -> Result<(), CliError> {
    for (i, o) in outputs.iter().enumerate() {
        if let Some(p) = inputs.iter().find(|p| same_file(p, o)) {
            return Err(CliError::invalid(format!(
                "output {} would overwrite input {}",
                o.display(),
                p.display()
            )));
        }
        if outputs[..i].iter().any(|p| same_file(p, o)) {
            return Err(CliError::invalid(format!(
                "output {} given twice",
                o.display()
            )));
        }
    }
    Ok(())
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn check_size(n: usize, p: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::invalid("--n must be at least 1"));
    }
    if p < 2 {
        return Err(CliError::invalid("--p must be at least 2"));
    }
    Ok(())
}

fn scorer(
    est: &EstimatorArgs,
    seed: u64,
    threads: &ThreadArgs,
) -> Result<ParallelScorer, CliError> {
    ParallelScorer::new(est.method(seed), threads.threads)
        .map_err(|e| CliError::invalid(format!("thread pool: {e}")))
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<(), CliError> {
    check_size(a.n, a.p)?;
    let spec = GenSpec::new(a.family.kind(a.kind)?, a.n, a.p, a.seed);
    spec.validate()?;
    let contamination = match (a.alpha, a.count) {
        (Some(pct), _) => {
            if !(0.0..=100.0).contains(&pct) {
                return Err(CliError::invalid(format!(
                    "--alpha must be a percentage in [0, 100], got {pct}"
                )));
            }
            Some(Contamination::Fraction(pct / 100.0))
        }
        (None, Some(m)) => Some(Contamination::Count(m)),
        (None, None) => a.anomaly.map(|_| Contamination::Fraction(0.1)),
    };
    let labels_path = a
        .labels
        .clone()
        .unwrap_or_else(|| sibling(&a.output, ".labels.csv"));
    let mut outputs = vec![a.output.as_path()];
    if a.anomaly.is_some() {
        outputs.push(&labels_path);
    }
    if let Some(q) = &a.reference_queries {
        outputs.push(q);
    }
    check_distinct(&[], &outputs)?;

    let batch = spec.generate()?;
    match (a.anomaly, contamination) {
        (Some(kind), Some(c)) => {
            let anomaly = AnomalySpec::new(kind.anomaly(), c, a.anomaly_seed.unwrap_or(a.seed));
            let (dirty, labels) = inject(&batch, &anomaly)?;
            io::write_curves(&dirty, &a.output)?;
            io::write_labels(&dirty, &labels, &labels_path)?;
        }
        _ => io::write_curves(&batch, &a.output)?,
    }
    if let Some(q) = &a.reference_queries {
        io::write_curves(&reference_queries(&spec.kind, a.p)?, q)?;
    }
    Ok(())
}

pub fn cmd_depth(a: &DepthArgs) -> Result<(), CliError> {
    let mut inputs = vec![a.reference.as_path()];
    if let Some(q) = &a.queries {
        inputs.push(q);
    }
    if let Some(o) = &a.output {
        check_distinct(&inputs, &[o])?;
    }
    let reference = io::read_curves(&a.reference, a.rescale)?;
    let queries = match &a.queries {
        Some(q) => io::read_curves(q, a.rescale)?,
        None => reference.clone(),
    };
    let config = a.estimator.config(a.seed);
    let scorer = scorer(&a.estimator, a.seed, &a.threads)?;
    let start = Instant::now();
    let report = match scorer.method() {
        Method::Ach(cfg) => scorer.report(&reference, &queries, cfg)?,
        Method::IntegratedBaseline => {
            let depths =
                ach_core::eval::Scorer::score(&scorer, &reference, queries.curves(), a.seed)?;
            ach_core::DepthReport::new(config, queries.ids().map(String::from).collect(), depths)
        }
    };
    let elapsed = start.elapsed();
    match &a.output {
        Some(path) => io::write_report(&report, path)?,
        None => io::write_report_to(&report, std::io::stdout().lock())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    eprintln!(
        "scored {} queries against {} curves in {:.3}s (threads: {})",
        queries.len(),
        reference.len(),
        elapsed.as_secs_f64(),
        scorer.threads()
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct BenchConfig<'a> {
    datasets: Vec<(&'a str, Dataset)>,
    n: usize,
    p: usize,
    reps: usize,
    seed: u64,
    family: &'a FamilyArgs,
    estimator: &'a EstimatorArgs,
    m: Option<usize>,
}

fn write_bench(
    out: &BenchOutput,
    name: &str,
    config: BenchConfig<'_>,
    result: &ach_core::BenchmarkResult,
) -> Result<(), CliError> {
    let json_path = out
        .json
        .clone()
        .or_else(|| out.output.as_ref().map(|o| o.with_extension("json")));
    match &out.output {
        Some(path) => io::write_results(result, path)?,
        None => io::write_results_to(result, std::io::stdout().lock())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    if let Some(path) = json_path {
        let text = io::summary_json(name, config, &result.summaries())?;
        io::write_text(&path, &text)?;
    }
    Ok(())
}

fn bench_outputs(out: &BenchOutput) -> Result<(), CliError> {
    let json = out
        .json
        .clone()
        .or_else(|| out.output.as_ref().map(|o| o.with_extension("json")));
    let mut outputs: Vec<&Path> = Vec::new();
    if let Some(o) = &out.output {
        outputs.push(o);
    }
    if let Some(j) = &json {
        outputs.push(j);
    }
    check_distinct(&[], &outputs)
}

pub fn cmd_robustness(a: &RobustnessArgs) -> Result<(), CliError> {
    check_size(a.n, a.p)?;
    bench_outputs(&a.out)?;
    let kinds = if a.kind.is_empty() {
        vec![Kind::Location, Kind::Isolated, Kind::Shape]
    } else {
        a.kind.clone()
    };
    if let Some(bad) = a.alphas.iter().find(|x| !(0.0..=100.0).contains(*x)) {
        return Err(CliError::invalid(format!(
            "--alphas takes percentages in [0, 100], got {bad}"
        )));
    }
    let alphas: Vec<f64> = a.alphas.iter().map(|x| x / 100.0).collect();
    let mut cases = Vec::new();
    let mut datasets = Vec::new();
    for k in &kinds {
        let ds = a.dataset.unwrap_or(k.home_dataset());
        let gen = GenSpec::new(a.family.kind(ds)?, a.n, a.p, a.seed);
        gen.validate()?;
        a.estimator.config(a.seed).validate(a.n)?;
        datasets.push((k.anomaly().name(), ds));
        cases.push(BenchCase {
            gen,
            anomaly: k.anomaly(),
        });
    }
    let scorer = scorer(&a.estimator, a.seed, &a.threads)?;
    let result = robustness_bench(&cases, &alphas, &scorer, a.reps, a.seed)?;
    let config = BenchConfig {
        datasets,
        n: a.n,
        p: a.p,
        reps: a.reps,
        seed: a.seed,
        family: &a.family,
        estimator: &a.estimator,
        m: None,
    };
    write_bench(&a.out, "robustness", config, &result)
}

pub fn cmd_detect(a: &DetectArgs) -> Result<(), CliError> {
    check_size(a.n, a.p)?;
    bench_outputs(&a.out)?;
    if a.m == 0 || a.m > a.n {
        return Err(CliError::invalid(format!(
            "--m must be in 1..={}, got {}",
            a.n, a.m
        )));
    }
    let grid = a.grid.unwrap_or_else(|| {
        let (start, end, count) = a.kind.default_grid();
        Grid { start, end, count }
    });
    let gen = GenSpec::new(a.family.kind(a.dataset)?, a.n, a.p, a.seed);
    gen.validate()?;
    a.estimator.config(a.seed).validate(a.n)?;
    let scorer = scorer(&a.estimator, a.seed, &a.threads)?;
    let result = detection_bench(
        &gen,
        a.kind.anomaly(),
        &grid.points(),
        a.m,
        &scorer,
        a.reps,
        a.seed,
    )?;
    let config = BenchConfig {
        datasets: vec![(a.kind.anomaly().name(), a.dataset)],
        n: a.n,
        p: a.p,
        reps: a.reps,
        seed: a.seed,
        family: &a.family,
        estimator: &a.estimator,
        m: Some(a.m),
    };
    write_bench(&a.out, "detection", config, &result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("0:10:5").unwrap().points(),
            vec![0.0, 2.5, 5.0, 7.5, 10.0]
        );
        assert_eq!(parse_grid("1:1:1").unwrap().points(), vec![1.0]);
        assert!(parse_grid("0:10").is_err());
        assert!(parse_grid("0:10:0").is_err());
        assert!(parse_grid("3:1:4").is_err());
        assert!(parse_grid("a:1:4").is_err());
    }

    #[test]
    fn rescale_parsing() {
        assert_eq!(parse_rescale("auto").unwrap(), Rescale::Auto);
        assert_eq!(parse_rescale("-1:4").unwrap(), Rescale::Interval(-1.0, 4.0));
        assert!(parse_rescale("4:1").is_err());
        assert!(parse_rescale("x").is_err());
    }

    #[test]
    fn estimator_defaults() {
        let cli = Cli::try_parse_from(["ach", "depth", "-r", "a.csv"]).unwrap();
        let Command::Depth(d) = cli.command else {
            panic!()
        };
        let cfg = d.estimator.config(d.seed);
        assert_eq!(cfg, DepthConfig::default());
        let cli = Cli::try_parse_from([
            "ach",
            "depth",
            "-r",
            "a.csv",
            "--no-averaged",
            "--J",
            "3",
            "--estimator",
            "exact",
        ])
        .unwrap();
        let Command::Depth(d) = cli.command else {
            panic!()
        };
        let cfg = d.estimator.config(0);
        assert!(!cfg.averaged);
        assert_eq!(cfg.degree, 3);
        assert_eq!(cfg.estimator, Estimator::Exact);
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("/x/b.csv"), ".labels.csv"),
            PathBuf::from("/x/b.labels.csv")
        );
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(ach_core::Error::ZeroDegree).exit_code(), 2);
        let io = IoError::Io {
            path: "p".into(),
            source: std::io::Error::other("boom"),
        };
        assert_eq!(CliError::from(io).exit_code(), 1);
    }
}
