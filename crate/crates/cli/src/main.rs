//! `dlct` command-line tool.
//!
//! Exit status: 0 on success, 2 for bad input or usage, 3 when the requested
//! transform is mathematically undefined (bad determinant, `b = 0` where a
//! chirp convolution is required, non-finite parameters).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlct::complexity::{bench_input, direct_real_mults, fast_real_mults, time_method};
use dlct::io::{read_signal, write_report, write_signal};
use dlct::{
    dfresnel, dfrft, dlct as forward, dscale, idlct, make_test_signal, plan_box, plan_refined, run_experiment,
    ExperimentConfig, LctError, LctParams, Method, ParallelogramSpec, Protocol, TestSignal, TimeFreqBox,
};

#[derive(Parser)]
#[command(name = "dlct", version, about = "Fast discrete linear canonical transform")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a signal file (.csv or .json).
    #[command(allow_negative_numbers = true)]
    Transform(TransformArgs),
    /// Sampling period and sample count for a continuous input.
    #[command(allow_negative_numbers = true)]
    Plan(PlanArgs),
    /// Run a randomized experiment suite.
    #[command(allow_negative_numbers = true)]
    Experiment(ExperimentArgs),
    /// Time the fast and direct transforms.
    Bench(BenchArgs),
    /// Write a named test signal.
    Signal(SignalArgs),
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct TransformKind {
    /// General parameter matrix (a, b; c, d).
    #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"])]
    params: Option<Vec<f64>>,
    /// Fractional Fourier transform angle in radians.
    #[arg(long, value_name = "ALPHA")]
    frft: Option<f64>,
    /// Fresnel transform with wavelength and distance.
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "Z"])]
    fresnel: Option<Vec<f64>>,
    /// Scaling by sigma.
    #[arg(long, value_name = "SIGMA")]
    scale: Option<f64>,
}

#[derive(Args)]
struct TransformArgs {
    input: PathBuf,
    output: PathBuf,
    #[command(flatten)]
    kind: TransformKind,
    /// Apply the inverse transform.
    #[arg(long)]
    inverse: bool,
}

#[derive(Args)]
struct PlanArgs {
    /// Duration of a rectangular support.
    #[arg(long = "T", requires = "bandwidth", conflicts_with = "vertices")]
    duration: Option<f64>,
    /// Bandwidth of a rectangular support.
    #[arg(long = "F", requires = "duration")]
    bandwidth: Option<f64>,
    /// Two parallelogram vertices: the rightmost one and its lower-left neighbour.
    #[arg(long, num_args = 4, value_names = ["T1", "F1", "T2", "F2"], required_unless_present = "duration")]
    vertices: Option<Vec<f64>>,
    /// Continuous parameter matrix (a, b; c, d).
    #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], required = true)]
    params: Vec<f64>,
    /// Also require the continuous input and output to be recoverable.
    #[arg(long)]
    recoverable: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Accuracy,
    Additivity,
    Reversibility,
}

#[derive(Args)]
struct ExperimentArgs {
    suite: Suite,
    /// h1..h4, or gauss:<s>:<N>. Defaults to gauss:1:101 for accuracy and h1 otherwise.
    #[arg(long)]
    signal: Option<String>,
    #[arg(long, default_value_t = 200)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw matrices with every chirp rate in [-limit, limit].
    #[arg(long, value_name = "LIMIT")]
    chirp_limit: Option<f64>,
    /// Report file (.csv or .json), sorted by NMSE.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMethod {
    Fast,
    Direct,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long, default_value = "fast")]
    method: BenchMethod,
    /// Repetitions per size; the minimum time is reported.
    #[arg(long, default_value_t = 3)]
    reps: usize,
}

#[derive(Args)]
struct SignalArgs {
    name: String,
    output: PathBuf,
}

fn matrix(v: &[f64]) -> dlct::Result<LctParams> {
    LctParams::new(v[0], v[1], v[2], v[3])
}

fn cmd_transform(args: TransformArgs) -> dlct::Result<()> {
    let x = read_signal(&args.input)?;
    let k = &args.kind;
    let y = if let Some(p) = &k.params {
        let m = matrix(p)?;
        if args.inverse { idlct(&x, &m)? } else { forward(&x, &m)? }
    } else if let Some(alpha) = k.frft {
        dfrft(&x, if args.inverse { -alpha } else { alpha })?
    } else if let Some(f) = &k.fresnel {
        dfresnel(&x, f[0], if args.inverse { -f[1] } else { f[1] })?
    } else if let Some(sigma) = k.scale {
        if sigma == 0.0 || !sigma.is_finite() {
            return Err(LctError::InvalidArgument(format!("scale must be nonzero and finite, got {sigma}")));
        }
        dscale(&x, if args.inverse { 1.0 / sigma } else { sigma })?
    } else {
        unreachable!("clap requires one transform kind")
    };
    write_signal(&y, &args.output)
}

fn cmd_plan(args: PlanArgs) -> dlct::Result<()> {
    let m = matrix(&args.params)?;
    let plan = match (args.duration, args.bandwidth, &args.vertices) {
        (Some(t), Some(f), _) => plan_box(&TimeFreqBox::new(t, f)?, &m, args.recoverable)?,
        (_, _, Some(v)) => {
            let spec = ParallelogramSpec { p1: (v[0], v[1]), p2: (v[2], v[3]) };
            plan_refined(&spec, &m, args.recoverable)?
        }
        _ => unreachable!("clap requires --T/--F or --vertices"),
    };
    let text = serde_json::to_string_pretty(&plan).map_err(|e| LctError::Format(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> dlct::Result<()> {
    let protocol = match args.suite {
        Suite::Accuracy => Protocol::Accuracy,
        Suite::Additivity => Protocol::Additivity,
        Suite::Reversibility => Protocol::Reversibility,
    };
    let default_signal = if protocol == Protocol::Accuracy { "gauss:1:101" } else { "h1" };
    let signal: TestSignal = args.signal.as_deref().unwrap_or(default_signal).parse()?;
    let mut report = run_experiment(&ExperimentConfig {
        protocol,
        signal,
        runs: args.runs,
        seed: args.seed,
        chirp_limit: args.chirp_limit,
    })?;
    report.sort_by_nmse();
    if let Some(path) = &args.output {
        write_report(&report, path)?;
    }
    match report.summary() {
        Some(s) => println!(
            "{protocol} on {}: runs={} min={:e} median={:e} max={:e}",
            report.signal, s.runs, s.min, s.median, s.max
        ),
        None => println!("{protocol} on {}: runs=0", report.signal),
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> dlct::Result<()> {
    if let Some(bad) = args.sizes.iter().find(|&&n| n == 0) {
        return Err(LctError::InvalidArgument(format!("sizes must be positive, got {bad}")));
    }
    let method = match args.method {
        BenchMethod::Fast => Method::Fast,
        BenchMethod::Direct => Method::Direct,
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "n,method,seconds,real_mults")?;
    for &n in &args.sizes {
        let (x, m) = bench_input(n)?;
        let t = time_method(method, &x, &m, args.reps)?;
        let mults = match method {
            Method::Fast => fast_real_mults(n),
            Method::Direct => direct_real_mults(n),
        };
        writeln!(out, "{n},{method},{:e},{mults}", t.as_secs_f64())?;
    }
    Ok(())
}

fn cmd_signal(args: SignalArgs) -> dlct::Result<()> {
    write_signal(&make_test_signal(&args.name)?, &args.output)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Transform(a) => cmd_transform(a),
        Command::Plan(a) => cmd_plan(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Signal(a) => cmd_signal(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain_error() { 3 } else { 2 })
        }
    }
}
