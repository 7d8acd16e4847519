use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use robin_eigen::characteristic::hypothesis_bounds;
use robin_eigen::eigensolver::{eigenpair_quality, principal_eigenvalue, solve_curve};
use robin_eigen::harness::{self, FigureOutcome, HarnessError, RowStatus};
use robin_eigen::{Error, Params, Placement, SolverConfig, SpectralWindow, SweepConfig};

#[derive(Parser)]
#[command(
    name = "robin-eigen",
    version,
    about = "Principal eigenvalue of an indefinite-weight Robin problem"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Principal eigenvalue at one placement.
    Solve {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        a: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// λ(a) over the placement grid.
    Curve {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        n_a: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also write the table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch classification over a β-grid or a list of pairs.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Lines of `beta0 beta1`, evaluated instead of the grid.
        #[arg(long)]
        pairs_file: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        figdir: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Report the sufficient conditions of the classification theorem.
    CheckHypotheses {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        beta0: f64,
        /// Defaults to beta0.
        #[arg(long)]
        beta1: Option<f64>,
    },
    /// Compare the solver with the Neumann and Dirichlet limit equations.
    VerifyLimits {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        kappa: f64,
        #[arg(long)]
        a: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    c: f64,
    #[arg(long)]
    kappa: f64,
    #[arg(long)]
    beta0: f64,
    #[arg(long)]
    beta1: f64,
}

impl PairArgs {
    fn params(&self) -> Result<Params, Error> {
        Params::new(self.c, self.kappa, self.beta0, self.beta1)
    }
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    n_lambda: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(n) = self.n_lambda {
            cfg.n_lambda = n;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        cfg
    }
}

enum Failure {
    Input(String),
    Solver(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Solver(e.to_string())
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Solver(e) => e.into(),
            HarnessError::Parse { .. } => Failure::Input(e.to_string()),
            HarnessError::Io { .. } | HarnessError::Csv { .. } => Failure::Io(e.to_string()),
        }
    }
}

fn solve(pair: &PairArgs, a: f64, solver: &SolverArgs) -> Result<(), Failure> {
    let p = pair.params()?;
    let cfg = solver.config().validate()?;
    let pl = Placement::new(a, &p)?;
    let res = principal_eigenvalue(pl, &p, &cfg)?;
    let q = eigenpair_quality(pl, &p, &res)?;
    println!("lambda: {}", res.lambda);
    println!("bracket: [{}, {}]", res.bracket.lo, res.bracket.hi);
    println!("iterations: {}", res.iterations);
    println!("char_f_residual: {:e}", res.char_f_residual);
    println!("boundary_defect: {:e}", q.boundary_defect);
    println!("positive: {}", q.positive);
    println!("rayleigh_rel_err: {:e}", q.rayleigh_rel_err);
    println!(
        "window: [{}, {}]",
        res.window.lambda_min, res.window.lambda_max
    );
    println!("extended_window: {}", res.extended_window);
    println!("rejected_roots: {}", res.rejected_roots);
    Ok(())
}

fn curve(
    pair: &PairArgs,
    n_a: Option<usize>,
    solver: &SolverArgs,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let p = pair.params()?;
    let mut cfg = solver.config();
    if let Some(n) = n_a {
        cfg.n_a = n;
    }
    let cfg = cfg.validate()?;
    let results = solve_curve(&p, &cfg)?;
    let mut table = String::from("a lambda extended_window\n");
    for (a, r) in &results {
        table.push_str(&format!("{} {} {}\n", a.a(), r.lambda, r.extended_window));
    }
    print!("{table}");
    if let Some(path) = out {
        std::fs::write(path, &table)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn sweep(
    config: Option<&PathBuf>,
    pairs_file: Option<&PathBuf>,
    out: Option<PathBuf>,
    figdir: Option<PathBuf>,
    workers: Option<usize>,
) -> Result<(), Failure> {
    let mut cfg = SweepConfig::default();
    if let Some(path) = config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        cfg.apply_kv(&text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if let Some(o) = out {
        cfg.out_csv = o;
    }
    if let Some(f) = figdir {
        cfg.fig_dir = f;
    }
    let cfg = cfg.validate()?;
    if let Some(n) = workers {
        if n == 0 {
            return Err(Failure::Input("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Solver(e.to_string()))?;
    }
    let start = Instant::now();
    let outcome = match pairs_file {
        Some(path) => {
            let pairs = harness::read_pairs_file(path)?;
            harness::run_pairs(&pairs, cfg.c, cfg.kappa, &cfg.solver)
        }
        None => harness::run_sweep(&cfg)?,
    };
    let elapsed = start.elapsed();
    harness::write_csv(&outcome.rows, &cfg.out_csv)?;
    let figures = harness::emit_figures(&outcome.rows, &outcome.curves, &cfg.fig_dir)?;

    let errors = outcome
        .rows
        .iter()
        .filter(|r| matches!(r.status, RowStatus::Error(_)))
        .count();
    let compared: Vec<bool> = outcome.rows.iter().filter_map(|r| r.comparison()).collect();
    let matched = compared.iter().filter(|&&m| m).count();
    println!("pairs: {}", outcome.rows.len());
    println!("classified: {}", compared.len());
    println!("matched: {matched}");
    println!("errors: {errors}");
    println!("elapsed_s: {:.2}", elapsed.as_secs_f64());
    println!("csv: {}", cfg.out_csv.display());
    let mut fig_failed = false;
    for f in &figures {
        match f {
            FigureOutcome::Written {
                cell, data, plot, ..
            } => {
                println!(
                    "figure {}: {} {}",
                    cell.stem(),
                    data.display(),
                    plot.display()
                )
            }
            FigureOutcome::Skipped { cell } => println!("figure {}: skipped", cell.stem()),
            FigureOutcome::Failed { cell, error } => {
                eprintln!("figure {}: {error}", cell.stem());
                fig_failed = true;
            }
        }
    }
    if fig_failed {
        return Err(Failure::Io("some figures could not be written".into()));
    }
    Ok(())
}

fn check_hypotheses(c: f64, kappa: f64, beta0: f64, beta1: Option<f64>) -> Result<(), Failure> {
    let p = Params::new(c, kappa, beta0, beta1.unwrap_or(beta0))?;
    let report = hypothesis_bounds(&p, SpectralWindow::new(c, kappa));
    print!("{}", report.to_text());
    Ok(())
}

fn verify_limits(c: f64, kappa: f64, a: f64, solver: &SolverArgs) -> Result<(), Failure> {
    let report = harness::verify_limits(c, kappa, a, &solver.config())?;
    print!("{}", report.to_text());
    println!("all_passed: {}", report.passed());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.cmd {
        Cmd::Solve { pair, a, solver } => solve(pair, *a, solver),
        Cmd::Curve {
            pair,
            n_a,
            solver,
            out,
        } => curve(pair, *n_a, solver, out.as_ref()),
        Cmd::Sweep {
            config,
            pairs_file,
            out,
            figdir,
            workers,
        } => sweep(
            config.as_ref(),
            pairs_file.as_ref(),
            out.clone(),
            figdir.clone(),
            *workers,
        ),
        Cmd::CheckHypotheses {
            c,
            kappa,
            beta0,
            beta1,
        } => check_hypotheses(*c, *kappa, *beta0, *beta1),
        Cmd::VerifyLimits {
            c,
            kappa,
            a,
            solver,
        } => verify_limits(*c, *kappa, *a, solver),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("solver failure: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(3)
        }
    }
}
