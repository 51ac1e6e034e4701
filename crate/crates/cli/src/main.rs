use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zbstein::generators::{random_centered, random_standardized, random_two_point, seeded_rng};
use zbstein::harness::{asymptotic_sweep, lower_bound_sweep, search_d3, verify_bound, verify_iid};
use zbstein::{
    a_report, center, functional_report, reduce_to_d3, tolerances, w1_step_pwl, zero_bias,
    BoundReport, D3GridSpec, Error, FiniteDist, GridRange,
};

#[derive(Parser)]
#[command(name = "zbstein", version, about = "Zero-bias and L1 Berry-Esseen computations")]
struct Cli {
    /// Print every numerical tolerance to stderr.
    #[arg(long, global = true)]
    tol_report: bool,

    /// Seed for commands that draw random laws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads: a positive count or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    threads: String,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// B(G), A(G) and moment summary of a centered law.
    Bfun { dist: PathBuf },
    /// A(G) with ω, lattice span and the Zolotarev ratio.
    Afun { dist: PathBuf },
    /// Zero-bias law and its L1 distance to the input.
    Zb {
        dist: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// L1 distance of the normalized sum to the normal against the moment bounds.
    Verify {
        /// One law (with --n or --n-schedule) or a JSON array of summands.
        #[arg(long)]
        dist: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        n_schedule: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Subtract the mean instead of rejecting uncentered input.
        #[arg(long)]
        recenter: bool,
    },
    /// Exhaustive B search over standardized three-point laws.
    SearchD3 {
        /// x=lo:hi:steps,z=lo:hi:steps,alpha=lo:hi:steps
        #[arg(long)]
        grid: String,
    },
    /// ψ(p) over a grid of Bernoulli parameters, as CSV.
    LowerBound {
        /// lo:hi:steps
        #[arg(long)]
        p_grid: String,
    },
    /// Decomposition of a standardized law into laws on at most three points.
    ReduceD3 { dist: PathBuf },
    /// A seeded random law, as JSON.
    Random {
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Kind::Standardized)]
        kind: Kind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Centered,
    Standardized,
    TwoPoint,
}

enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(msg) => Failure::Violation(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads(&cli.threads) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if cli.tol_report {
        for (name, value) in tolerances::all() {
            if value >= 1.0 && value.fract() == 0.0 {
                eprintln!("{name} = {value}");
            } else {
                eprintln!("{name} = {value:e}");
            }
        }
    }
    let Some(command) = cli.command else {
        if cli.tol_report {
            return ExitCode::SUCCESS;
        }
        eprintln!("error: no subcommand given (see --help)");
        return ExitCode::from(2);
    };
    match run(command, cli.seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(threads: &str) -> std::result::Result<(), String> {
    if threads == "auto" {
        return Ok(());
    }
    let n: usize = threads
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("--threads expects a positive integer or `auto`, got {threads:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command, seed: u64) -> CliResult<()> {
    match command {
        Command::Bfun { dist } => print_json(&functional_report(&load_dist(&dist)?)?),
        Command::Afun { dist } => print_json(&a_report(&load_dist(&dist)?)?),
        Command::Zb { dist, output } => {
            let d = load_dist(&dist)?;
            let z = zero_bias(&d)?;
            #[derive(Serialize)]
            struct Out<'a> {
                zero_bias: &'a zbstein::ZeroBiasDist,
                w1: f64,
            }
            let out = Out {
                zero_bias: &z,
                w1: w1_step_pwl(&d, &z),
            };
            match output {
                Some(path) => {
                    let text = serde_json::to_string_pretty(&out).expect("serializable");
                    fs::write(&path, text)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    println!("{}", out.w1);
                    Ok(())
                }
                None => print_json(&out),
            }
        }
        Command::Verify {
            dist,
            n,
            n_schedule,
            format,
            recenter,
        } => verify(&dist, n, n_schedule, format, recenter),
        Command::SearchD3 { grid } => {
            let grid: D3GridSpec = grid.parse()?;
            let result = search_d3(&grid)?;
            print_json(&result)?;
            if result.violations > 0 {
                return Err(Failure::Violation(format!(
                    "{} grid points with B > 1",
                    result.violations
                )));
            }
            Ok(())
        }
        Command::LowerBound { p_grid } => {
            let range: GridRange = p_grid.parse()?;
            let table = lower_bound_sweep(&range.points())?;
            println!("p,psi");
            for (p, psi) in &table.rows {
                println!("{p},{psi}");
            }
            Ok(())
        }
        Command::ReduceD3 { dist } => print_json(&reduce_to_d3(&load_dist(&dist)?)?),
        Command::Random { points, kind } => {
            let mut rng = seeded_rng(seed);
            if points < 2 {
                return Err(Failure::Input("--points must be at least 2".into()));
            }
            let d = match kind {
                Kind::Centered => random_centered(&mut rng, points),
                Kind::Standardized => random_standardized(&mut rng, points),
                Kind::TwoPoint => random_two_point(&mut rng),
            };
            print_json(&d)
        }
    }
}

fn verify(
    path: &Path,
    n: Option<usize>,
    mut schedule: Vec<usize>,
    format: Format,
    recenter: bool,
) -> CliResult<()> {
    let fix = |d: FiniteDist| if recenter { center(&d) } else { d };
    let reports: Vec<BoundReport> = if n.is_none() && schedule.is_empty() {
        let comps: Vec<FiniteDist> = load_laws(path)?.into_iter().map(fix).collect();
        vec![verify_bound(&comps)?]
    } else {
        let g = fix(load_dist(path)?);
        if let Some(n) = n {
            if !schedule.contains(&n) {
                schedule.push(n);
            }
        }
        schedule.sort_unstable();
        schedule.dedup();
        if schedule.len() == 1 {
            vec![verify_iid(&g, schedule[0])?]
        } else {
            asymptotic_sweep(&g, &schedule)?
        }
    };
    match format {
        Format::Csv => {
            println!("{}", BoundReport::CSV_HEADER);
            for r in &reports {
                println!("{}", r.csv_row());
            }
        }
        Format::Json => print_json(&reports)?,
    }
    let violations: Vec<String> = reports.iter().flat_map(|r| r.violations()).collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(violations.join("; ")))
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_dist(path: &Path) -> CliResult<FiniteDist> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// A single law or an array of laws.
fn load_laws(path: &Path) -> CliResult<Vec<FiniteDist>> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|d| vec![d])
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    Ok(())
}
