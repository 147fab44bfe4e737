//! Command-line surface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use colorswitch_core::faults::{FaultClass, FaultEnumerator, FaultReport};
use colorswitch_core::{Mode, NoiseModel, Protocol};

use crate::config::{FlatConfig, RunConfig};
use crate::error::CliError;
use crate::fit::{curve, fit, points_from_rows, FitPoint, FitResult, FitTarget};
use crate::output::{emit_results, read_csv};
use crate::sweep::{run_point, SweepResult};
use crate::validate::{run_checks, Fixture};

#[derive(Debug, Parser)]
#[command(name = "colorswitch", version, about = "Code-switching magic state preparation simulator")]
pub struct Cli {
    /// Flat key-value config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noiseless checks of code tables, circuit fixtures and the protocol.
    Validate {
        /// Extra fixture files: circuit text with `#! expect <pauli>` lines.
        #[arg(long = "fixture")]
        fixtures: Vec<PathBuf>,
    },
    /// Exhaustive fault injection over the whole protocol.
    Faults {
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value = "ec")]
        mode: String,
        /// Uniform noise strength weighting the combinations.
        #[arg(long, default_value_t = 1e-3)]
        p: f64,
        /// Failing combinations to list.
        #[arg(long, default_value_t = 0)]
        examples: usize,
    },
    /// Monte Carlo at one noise point.
    Sample(RunArgs),
    /// Monte Carlo over `sweep.p_values`.
    Sweep(RunArgs),
    /// Polynomial fit of sweep results.
    Fit(FitArgs),
}

#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// `uniform` or `multiparameter`.
    #[arg(long)]
    pub noise_kind: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub p_i: Option<f64>,
    #[arg(long)]
    pub p_m: Option<f64>,
    #[arg(long = "p-1")]
    pub p_1: Option<f64>,
    #[arg(long = "p-2")]
    pub p_2: Option<f64>,
    /// Comma-separated list of uniform `p` values.
    #[arg(long)]
    pub p_values: Option<String>,
    /// `ec` or `ps`.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `expectation` or `sample`.
    #[arg(long)]
    pub readout: Option<String>,
    /// `lexmin`, `lexmax` or `disabled`.
    #[arg(long)]
    pub tiebreak: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Shots per work item.
    #[arg(long)]
    pub chunk: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Sweep CSV, or a `p,value,sigma` CSV.
    pub input: PathBuf,
    /// `infidelity` or `rejection`; ignored for `p,value,sigma` input.
    #[arg(long, default_value = "infidelity")]
    pub target: String,
    /// Only rows of this mode.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub leading_degree: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Evaluate the fit at these `p` values.
    #[arg(long, value_delimiter = ',')]
    pub at: Vec<f64>,
    /// Write a log-spaced curve `p,value,sigma,extrapolated` to this file.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Print the fit as JSON.
    #[arg(long)]
    pub json: bool,
}

fn overrides(file: Option<&PathBuf>, a: &RunArgs) -> Result<RunConfig, CliError> {
    let mut flat = match file {
        Some(p) => FlatConfig::load(p)?,
        None => FlatConfig::default(),
    };
    let floats = [
        ("noise.p", a.p),
        ("noise.p_i", a.p_i),
        ("noise.p_m", a.p_m),
        ("noise.p_1", a.p_1),
        ("noise.p_2", a.p_2),
    ];
    for (k, v) in floats {
        if let Some(v) = v {
            flat.set(k, v);
        }
    }
    if a.p.is_some() && a.p_values.is_none() {
        flat.0.remove("sweep.p_values");
    }
    let strings = [
        ("noise.kind", &a.noise_kind),
        ("sweep.p_values", &a.p_values),
        ("run.mode", &a.mode),
        ("run.readout", &a.readout),
        ("reduction.tiebreak", &a.tiebreak),
    ];
    for (k, v) in strings {
        if let Some(v) = v {
            flat.set(k, v.as_str());
        }
    }
    // Seeds are full u64; strings avoid TOML's signed integers.
    for (k, v) in [("run.shots", a.shots), ("run.seed", a.seed), ("run.chunk", a.chunk)] {
        if let Some(v) = v {
            flat.set(k, v.to_string());
        }
    }
    if let Some(o) = &a.output {
        flat.set("output.path", o.to_string_lossy().as_ref());
    }
    RunConfig::from_flat(&flat)
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn print_result(out: &mut impl Write, r: &SweepResult) -> std::io::Result<()> {
    writeln!(
        out,
        "p = {}  mode = {}  shots = {}  accept = {:.5} ± {:.5}  p_fail = {:.4e} ± {:.2e}  delta = {:.6}",
        r.noise.label(),
        r.mode,
        r.shots,
        r.accept_rate,
        r.sigma_accept,
        r.p_fail,
        r.sigma_fail,
        r.delta
    )
}

pub fn print_fault_report(out: &mut impl Write, r: &FaultReport, mode: Mode, p: f64) -> std::io::Result<()> {
    writeln!(
        out,
        "fault enumeration: order {}, mode {}, {} combinations",
        r.order,
        mode.as_str(),
        r.combinations
    )?;
    for c in FaultClass::ALL {
        writeln!(out, "  {:<16} {}", c.as_str(), r.count(c))?;
    }
    if p > 0.0 {
        writeln!(
            out,
            "weighted infidelity {:.4e} ({:.4} p^{} at p = {p})",
            r.weighted_infidelity,
            r.weighted_infidelity / p.powi(r.order as i32),
            r.order
        )?;
    }
    writeln!(out, "{} logical failures", r.logical_failures())
}

fn run_fit(args: &FitArgs, out: &mut impl Write) -> Result<(), CliError> {
    let target = FitTarget::parse(&args.target)
        .ok_or_else(|| CliError::Usage(format!("unknown fit target `{}`", args.target)))?;
    let header = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::io(&args.input, e))?
        .lines()
        .next()
        .unwrap_or_default()
        .trim()
        .to_string();
    let (points, mode) = if header == "p,value,sigma" {
        let mut r = csv::Reader::from_path(&args.input).map_err(|e| CliError::format(&args.input, e))?;
        let pts: Vec<FitPoint> = r
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::format(&args.input, e))?;
        (pts, args.mode.clone().unwrap_or_else(|| "ec".into()))
    } else {
        let mut rows = read_csv(&args.input)?;
        if let Some(m) = &args.mode {
            let m = Mode::parse(m).ok_or_else(|| CliError::Usage(format!("unknown mode `{m}`")))?;
            rows.retain(|r| r.mode == m.as_str());
        }
        let mode = match rows.first() {
            Some(r) if rows.iter().all(|x| x.mode == r.mode) => r.mode.clone(),
            Some(_) => return Err(CliError::Usage("rows mix modes; pass --mode".into())),
            None => return Err(CliError::Fit("no rows to fit".into())),
        };
        (points_from_rows(&rows, target)?, mode)
    };
    let k = args.leading_degree.unwrap_or(target.default_leading_degree(&mode));
    let m = args.degree.unwrap_or(target.default_degree()).max(k);
    let f = fit(&points, k, m)?;
    let io = |e| CliError::io(std::path::Path::new("<stdout>"), e);
    if args.json {
        let text = serde_json::to_string_pretty(&f).expect("plain data");
        writeln!(out, "{text}").map_err(io)?;
    } else {
        print_fit(out, &f).map_err(io)?;
    }
    for &p in &args.at {
        let v = f.evaluate(p);
        let label = if v.extrapolated { "  (extrapolated)" } else { "" };
        writeln!(out, "at p = {p}: {:.4e} ± {:.2e}{label}", v.value, v.sigma).map_err(io)?;
    }
    if let Some(path) = &args.curve {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::format(path, e))?;
        w.write_record(["p", "value", "sigma", "extrapolated"])
            .map_err(|e| CliError::format(path, e))?;
        for (p, v) in curve(&f, 1e-4, 1e-2, 41) {
            w.write_record([p.to_string(), v.value.to_string(), v.sigma.to_string(), v.extrapolated.to_string()])
                .map_err(|e| CliError::format(path, e))?;
        }
        w.flush().map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

pub fn print_fit(out: &mut impl Write, f: &FitResult) -> std::io::Result<()> {
    writeln!(out, "fit of degrees {}..={} (chi2 = {:.3}, dof = {})", f.leading_degree, f.degree, f.chi2, f.dof)?;
    for (i, (c, s)) in f.coefficients.iter().zip(&f.std_errors).enumerate() {
        writeln!(out, "  c{} = {c:.6e} ± {s:.2e}", f.leading_degree + i)?;
    }
    writeln!(out, "  fitted range p ∈ [{}, {}]", f.p_min, f.p_max)
}

/// Runs a parsed command line, writing reports to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    let io = |e| CliError::io(std::path::Path::new("<stdout>"), e);
    match &cli.command {
        Command::Validate { fixtures } => {
            let mut extra = Vec::new();
            for path in fixtures {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                extra.push(Fixture::parse(&path.to_string_lossy(), &text)?);
            }
            let checks = run_checks(&extra);
            for c in &checks {
                writeln!(out, "{c}").map_err(io)?;
            }
            let failed = checks.iter().filter(|c| c.outcome.is_err()).count();
            if failed > 0 {
                return Err(CliError::Validation(format!("{failed} of {} checks failed", checks.len())));
            }
            writeln!(out, "all {} checks passed", checks.len()).map_err(io)
        }
        Command::Faults { order, mode, p, examples } => {
            let mode = Mode::parse(mode).ok_or_else(|| CliError::Usage(format!("unknown mode `{mode}`")))?;
            let noise = NoiseModel::uniform(*p)?;
            let protocol = Protocol::new(noise, mode)?;
            let mut e = FaultEnumerator::new(&protocol);
            let report = e.enumerate(*order)?;
            print_fault_report(out, &report, mode, *p).map_err(io)?;
            for f in report.failures.iter().take(*examples) {
                let desc: Vec<String> = f
                    .iter()
                    .map(|&(l, o)| {
                        let (stage, local, _) = e.layout()[l as usize];
                        format!("{stage:?}[{local}] option {o}")
                    })
                    .collect();
                writeln!(out, "  failure: {}", desc.join(", ")).map_err(io)?;
            }
            Ok(())
        }
        Command::Sample(args) | Command::Sweep(args) => {
            let config = overrides(cli.config.as_ref(), args)?;
            if matches!(cli.command, Command::Sample(_)) && config.points.len() != 1 {
                return Err(CliError::Usage("sample takes one noise point; use sweep for a list".into()));
            }
            let mut results = Vec::new();
            for point in &config.points {
                let r = with_threads(args.threads, || run_point(&config, point))??;
                print_result(out, &r).map_err(io)?;
                results.push(r);
            }
            let (csv, json) = emit_results(&config, &results)?;
            writeln!(out, "wrote {} and {}", csv.display(), json.display()).map_err(io)
        }
        Command::Fit(args) => run_fit(args, out),
    }
}

/// Entry point shared by the binary: parses `args` and returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { CliError::USAGE } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
