//! `iepl`: realizability, multiplicity lists, minimum variance and sampling
//! for generalized graph Laplacians.
//!
//! Exit codes: 0 success, 1 error, 2 not realizable, 3 unsupported family,
//! 64 usage error.

mod json;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use iepl::minvar::{self, DescentOptions, MinVarOptions, MinVarResult, SolverChoice};
use iepl::multiplicity;
use iepl::realizability::{self, RealizationWitness, TargetSpectrum};
use iepl::sampler;
use iepl::{Error, Family, Graph};

const EXIT_ERROR: u8 = 1;
const EXIT_NOT_REALIZABLE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "iepl", version, about = "Inverse eigenvalue problems for generalized graph Laplacians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a spectrum is realizable for a graph family.
    Check(SpectrumArgs),
    /// Build a generalized Laplacian with the given spectrum.
    Realize(SpectrumArgs),
    /// List the allowed ordered multiplicity lists of a family.
    Lists {
        /// Family: P<n>, K<n>, K1,<k>, star<n>, paw, C4, K4-e.
        family: String,
    },
    /// Minimum spectral variance over trace-normalized weightings.
    Mv {
        /// Graph name (P5, C4, K4, K1,3, paw, K4-e, "doublestar 3 3") or a
        /// file in the text format.
        graph: String,
        #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
        solver: SolverArg,
        /// Descent stopping tolerance on eta.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Descent: use curvature 6 for incident edge pairs instead of 8.
        #[arg(long)]
        exact_step: bool,
        /// Descent iteration cap.
        #[arg(long, default_value_t = 1_000_000)]
        max_iter: usize,
        /// Largest edge count for exhaustive support enumeration.
        #[arg(long, default_value_t = minvar::DEFAULT_EXHAUSTIVE_LIMIT)]
        limit: usize,
    },
    /// Sample random weightings and write the spectra as CSV.
    Sample {
        /// Graph name or text-format file.
        graph: String,
        #[arg(long, default_value_t = sampler::DEFAULT_SAMPLE_COUNT)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path; a JSON sidecar is written next to it.
        #[arg(long)]
        out: PathBuf,
        /// Replace sample 0 with the all-ones weighting.
        #[arg(long)]
        anchor: bool,
    },
    /// Weighting with n distinct Laplacian eigenvalues.
    Distinct {
        /// Graph name or text-format file.
        graph: String,
    },
}

#[derive(Debug, clap::Args)]
struct SpectrumArgs {
    /// Family: star, path, complete, P<n>, K<n>, K1,<k>, paw, C4, K4-e.
    family: String,
    /// Ascending eigenvalues including the leading 0.
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    spectrum: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    Descent,
    Auto,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = configure_threads().and_then(|()| run(cli.command));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `iepl --help` for usage");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotRealizable(_) => EXIT_NOT_REALIZABLE,
                Error::Unsupported(_) => EXIT_UNSUPPORTED,
                _ => EXIT_ERROR,
            })
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("IEPL_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("IEPL_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn emit<T: Serialize>(value: &T) -> CliResult<()> {
    let text = json::to_string(value).map_err(|e| Error::Io(e.into()))?;
    println!("{text}");
    Ok(())
}

fn load_graph(arg: &str) -> CliResult<Graph> {
    let path = Path::new(arg);
    let parsed = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(Error::from)?;
        Graph::parse_text(&text)
    } else {
        arg.parse()
    };
    parsed.map_err(|e| match e {
        Error::InvalidGraph(msg) => CliError::Usage(msg),
        other => other.into(),
    })
}

fn parse_target(args: &SpectrumArgs) -> CliResult<(Family, TargetSpectrum)> {
    let target = TargetSpectrum::new(args.spectrum.clone()).map_err(|e| match e {
        Error::InvalidInput(msg) => CliError::Usage(format!("spectrum: {msg}")),
        other => other.into(),
    })?;
    let family = Family::parse_for_size(&args.family, target.n()).map_err(|e| match e {
        Error::InvalidInput(msg) => CliError::Usage(msg),
        other => other.into(),
    })?;
    Ok((family, target))
}

#[derive(Serialize)]
struct CheckOutput {
    family: String,
    realizable: bool,
}

#[derive(Serialize)]
struct WitnessOutput<'a> {
    family: String,
    n: usize,
    /// 0-based endpoints, in weight order.
    edges: &'a [[usize; 2]],
    weights: &'a [f64],
    matrix: Vec<Vec<f64>>,
    target: &'a [f64],
    spectrum: &'a [f64],
    spectrum_error: f64,
}

impl<'a> WitnessOutput<'a> {
    fn new(family: String, w: &'a RealizationWitness, target: &'a [f64]) -> Self {
        WitnessOutput {
            family,
            n: w.graph.n(),
            edges: w.graph.edges(),
            weights: &w.weights,
            matrix: w.matrix.row_iter().map(|r| r.iter().copied().collect()).collect(),
            target,
            spectrum: w.achieved.values(),
            spectrum_error: w.spectrum_error(target),
        }
    }
}

#[derive(Serialize)]
struct MvOutput<'a> {
    n: usize,
    m: usize,
    #[serde(flatten)]
    result: &'a MinVarResult,
    converged: bool,
    amv: f64,
    var_one: f64,
    var_one_upper_bound: f64,
}

#[derive(Serialize)]
struct SampleOutput<'a> {
    csv: &'a Path,
    sidecar: &'a Path,
    count: usize,
    seed: u64,
    anchor: bool,
}

#[derive(Serialize)]
struct DistinctOutput<'a> {
    n: usize,
    edges: &'a [[usize; 2]],
    weights: &'a [f64],
    spectrum: &'a [f64],
    multiplicity_list: Vec<usize>,
    min_gap: f64,
}

fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Check(args) => {
            let (family, target) = parse_target(&args)?;
            let realizable = realizability::check_realizable(family, &target)?;
            emit(&CheckOutput {
                family: family.to_string(),
                realizable,
            })?;
            Ok(if realizable { 0 } else { EXIT_NOT_REALIZABLE })
        }
        Command::Realize(args) => {
            let (family, target) = parse_target(&args)?;
            let witness = match realizability::realize(family, &target) {
                Err(Error::NotRealizable(reason)) => {
                    emit(&serde_json::json!({
                        "family": family.to_string(),
                        "realizable": false,
                        "reason": reason,
                    }))?;
                    return Ok(EXIT_NOT_REALIZABLE);
                }
                other => other?,
            };
            emit(&WitnessOutput::new(family.to_string(), &witness, target.values()))?;
            Ok(0)
        }
        Command::Lists { family } => {
            let family: Family = family.parse()?;
            let catalog = multiplicity::allowed_lists(family)?;
            emit(&catalog.lists)?;
            Ok(0)
        }
        Command::Mv {
            graph,
            solver,
            tol,
            exact_step,
            max_iter,
            limit,
        } => {
            if !(tol > 0.0) {
                return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
            }
            let g = load_graph(&graph)?;
            let opts = MinVarOptions {
                solver: match solver {
                    SolverArg::Exact => SolverChoice::Exact,
                    SolverArg::Descent => SolverChoice::Descent,
                    SolverArg::Auto => SolverChoice::Auto,
                },
                limit,
                descent: DescentOptions {
                    tol,
                    max_iter,
                    exact_step,
                },
            };
            let (result, converged) = match minvar::minvar(&g, &opts) {
                Ok(r) => (r, true),
                Err(Error::NotConverged { iterations, eta, best }) => {
                    eprintln!("warning: descent stopped after {iterations} iterations with eta = {eta:e}");
                    (*best, false)
                }
                Err(e) => return Err(e.into()),
            };
            emit(&MvOutput {
                n: g.n(),
                m: g.m(),
                result: &result,
                converged,
                amv: minvar::amv(&g)?,
                var_one: minvar::var_one(&g)?,
                var_one_upper_bound: minvar::var_one_upper_bound(&g)?,
            })?;
            Ok(if converged { 0 } else { EXIT_ERROR })
        }
        Command::Sample {
            graph,
            count,
            seed,
            out,
            anchor,
        } => {
            let g = load_graph(&graph)?;
            let run = sampler::sample_spectra(&g, count, seed, anchor)?;
            let sidecar = sampler::export_csv(&run, &out)?;
            emit(&SampleOutput {
                csv: &out,
                sidecar: &sidecar,
                count,
                seed,
                anchor,
            })?;
            Ok(0)
        }
        Command::Distinct { graph } => {
            let g = load_graph(&graph)?;
            let w = multiplicity::construct_all_distinct(&g)?;
            emit(&DistinctOutput {
                n: g.n(),
                edges: g.edges(),
                weights: &w.weights,
                spectrum: w.achieved.values(),
                multiplicity_list: w.achieved.multiplicity_list().0,
                min_gap: w.achieved.min_gap(),
            })?;
            Ok(0)
        }
    }
}
