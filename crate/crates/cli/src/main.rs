use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eunorm::cocycles::{self, Coc, CocMode, CocOptions, Coco, Pcoc, Sul};
use eunorm::exact::format_rational;
use eunorm::fixtures::{self, SurfaceTriangulation};
use eunorm::io::{self, EulerOutput, FlagTupleFile, ItuOutput, MatrixTupleFile, TupleFile};
use eunorm::montecarlo::{self, ItuOptions, SampleMode};
use eunorm::simplicial::{self, EulerMode, FlatBundleComplex};
use eunorm::verify::{self, Suite, VerifyConfig};
use eunorm::{Error, ExecPolicy, RationalVector};

#[derive(Parser)]
#[command(name = "eunorm", version, about = "Exact Euler cocycles on oriented flags and flat bundles")]
struct Cli {
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a cochain or its coboundary on a JSON tuple file.
    Eval {
        kind: Kind,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Factorized)]
        mode: Mode,
        /// log2 of the largest naive deflation sum allowed.
        #[arg(long, default_value_t = 20)]
        budget: usize,
    },
    /// Construct and check one of the explicit witnesses.
    Witness {
        kind: WitnessKind,
        #[arg(long)]
        n: usize,
    },
    /// Run seeded property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Dimensions to cycle through (default depends on the suite).
        #[arg(long = "n", num_args = 1..)]
        dims: Option<Vec<usize>>,
        /// Numerator and denominator bound for random rationals.
        #[arg(long, default_value_t = eunorm::random::DEFAULT_RANGE)]
        range: i64,
    },
    /// Euler number of a flat bundle over a simplicial complex.
    Euler {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Euler::Smillie)]
        mode: Euler,
        /// Report the raw sum even when the chain has boundary.
        #[arg(long)]
        allow_open: bool,
    },
    /// Monte Carlo estimate of the sphere integral for a tuple of matrices.
    Itu {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Sampling::Ball)]
        mode: Sampling,
        /// JSON matrix file; the identity tuple when omitted.
        #[arg(long)]
        gs: Option<PathBuf>,
    },
    /// Points in general position realizing a flag tuple's bracket orientations.
    Realize { file: PathBuf },
    /// Emit a genus-g surface bundle file.
    Fixture {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = Holonomy::Fuchsian)]
        holonomy: Holonomy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pcoc,
    Coco,
    Coc,
    Sul,
    Smi,
    Dpcoc,
    Dcoco,
    Dsul,
    Dcoc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Naive,
    Factorized,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Obstruction,
    CoboundaryKill,
}

#[derive(Clone, Copy, ValueEnum)]
enum Euler {
    Smillie,
    Sullivan,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampling {
    Ball,
    Projective,
}

#[derive(Clone, Copy, ValueEnum)]
enum Holonomy {
    Fuchsian,
    Trivial,
}

enum Failure {
    Input(Error),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Violation(msg),
            e => Failure::Input(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let policy = if cli.sequential {
        ExecPolicy::Sequential
    } else {
        ExecPolicy::Parallel
    };
    match run(cli.command, policy) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("property violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn points(path: &Path) -> Result<Vec<RationalVector>, Error> {
    io::read_json::<TupleFile>(path)?.into_points()
}

fn flags(path: &Path) -> Result<Vec<eunorm::OrientedFlag>, Error> {
    io::read_json::<FlagTupleFile>(path)?.into_flags()
}

fn run(command: Command, policy: ExecPolicy) -> Result<(), Failure> {
    match command {
        Command::Eval {
            kind,
            file,
            mode,
            budget,
        } => {
            let opts = CocOptions {
                mode: match mode {
                    Mode::Naive => CocMode::Naive,
                    Mode::Factorized => CocMode::Factorized,
                },
                budget_log2: budget,
                policy,
            };
            let value = match kind {
                Kind::Pcoc => cocycles::pcoc(&points(&file)?)?,
                Kind::Sul => cocycles::sul(&points(&file)?)?,
                Kind::Smi => cocycles::smi(&points(&file)?)?,
                Kind::Coco => cocycles::coco(&flags(&file)?)?,
                Kind::Coc => cocycles::coc(&flags(&file)?, opts)?,
                Kind::Dpcoc => cocycles::coboundary(&Pcoc, &points(&file)?)?,
                Kind::Dsul => cocycles::coboundary(&Sul, &points(&file)?)?,
                Kind::Dcoco => cocycles::coboundary(&Coco, &flags(&file)?)?,
                Kind::Dcoc => cocycles::coboundary(&Coc(opts), &flags(&file)?)?,
            };
            println!("{}", format_rational(&value));
        }
        Command::Witness { kind, n } => match kind {
            WitnessKind::Obstruction => {
                let (tuple, value) = cocycles::obstruction_witness(n)?;
                print_json(&json!({
                    "n": n,
                    "points": tuple,
                    "value": format_rational(&value),
                    "vanishes": value == eunorm::exact::rat(0, 1),
                }));
            }
            WitnessKind::CoboundaryKill => {
                let (fs, gs) = cocycles::coboundary_kill_witness(n)?;
                let dets = gs
                    .iter()
                    .map(|g| g.det().map(|d| format_rational(&d)))
                    .collect::<Result<Vec<_>, _>>()?;
                print_json(&json!({
                    "n": n,
                    "flags": FlagTupleFile::from_flags(n, &fs).flags,
                    "matrices": gs,
                    "determinants": dets,
                    "fixes_other_flags": true,
                }));
            }
        },
        Command::Verify {
            suite,
            seed,
            trials,
            dims,
            range,
        } => {
            let suites = Suite::parse(&suite).ok_or_else(|| Error::Parse(format!("unknown suite `{suite}`")))?;
            if let Some(bad) = dims.iter().flatten().find(|&&n| n == 0 || n % 2 == 1) {
                return Err(Error::OddDimension(*bad).into());
            }
            let cfg = VerifyConfig {
                seed,
                trials,
                dims,
                range,
                policy,
            };
            let reports: Vec<_> = suites.into_iter().map(|s| verify::run_suite(s, &cfg)).collect();
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.clone()).collect();
            if reports.len() == 1 {
                print_json(&reports[0]);
            } else {
                print_json(&reports);
            }
            if !failed.is_empty() {
                return Err(Failure::Violation(format!("failing suites: {}", failed.join(", "))));
            }
        }
        Command::Euler { file, mode, allow_open } => {
            let bundle: FlatBundleComplex = io::read_json(&file)?;
            let mode = match mode {
                Euler::Smillie => EulerMode::Smillie,
                Euler::Sullivan => EulerMode::Sullivan,
            };
            let report = simplicial::euler_number(&bundle, mode, policy)?;
            if !report.closed && !allow_open {
                return Err(Error::NotClosed(simplicial::chain_boundary(&bundle).len()).into());
            }
            print_json(&EulerOutput::from(&report));
        }
        Command::Itu {
            n,
            samples,
            seed,
            mode,
            gs,
        } => {
            eunorm::exact::check_even_dimension(n)?;
            let gs = match gs {
                Some(path) => {
                    let file: MatrixTupleFile = io::read_json(&path)?;
                    if file.n != n {
                        return Err(Error::DimensionMismatch {
                            expected: n,
                            found: file.n,
                        }
                        .into());
                    }
                    file.into_matrices()?
                }
                None => montecarlo::identity_tuple(n),
            };
            let mode = match mode {
                Sampling::Ball => SampleMode::Ball,
                Sampling::Projective => SampleMode::Projective,
            };
            let est = montecarlo::itu_estimate(&gs, ItuOptions::new(samples, seed, mode).with_policy(policy))?;
            print_json(&ItuOutput::from(&est));
        }
        Command::Realize { file } => {
            let fs = flags(&file)?;
            let xs = eunorm::realize_points(&fs)?;
            print_json(&TupleFile::new(fs[0].dim(), xs));
        }
        Command::Fixture { genus, holonomy, seed } => {
            let surface = SurfaceTriangulation::new(genus)?;
            let mut rng = eunorm::random::trial_rng(seed, 0);
            let section = fixtures::random_section(&mut rng, surface.vertex_count, 2, eunorm::random::DEFAULT_RANGE);
            let bundle = match holonomy {
                Holonomy::Trivial => surface.trivial_bundle(2, section)?,
                Holonomy::Fuchsian => {
                    let gens = fixtures::exact_surface_representation(&fixtures::fuchsian_generators(genus))?;
                    surface.bundle(&gens, section)?
                }
            };
            print_json(&bundle);
        }
    }
    Ok(())
}
