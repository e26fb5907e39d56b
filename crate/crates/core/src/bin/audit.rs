use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hpm_audit::audit::{fig1_csv, fig1_data, fig1_svg, integrate_csv, run_all};
use hpm_audit::numeric::{rk_integrate, uniform_grid, SolverConfig};
use hpm_audit::{
    hpm_expand, parse_problem_file, taylor_solve, Embedding, IvpProblem, ProblemRegistry,
};

#[derive(Parser)]
#[command(
    name = "audit",
    version,
    about = "Series, perturbation and numeric solutions of y'' + (k/x) y' + f(x, y) = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbeddingArg {
    ThetaF,
    KeepG,
}

impl From<EmbeddingArg> for Embedding {
    fn from(e: EmbeddingArg) -> Self {
        match e {
            EmbeddingArg::ThetaF => Embedding::ThetaTimesF,
            EmbeddingArg::KeepG => Embedding::ThetaTimesFKeepG,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Taylor coefficients about x = 0 as exact rationals.
    Taylor {
        /// Builtin name or path to a problem file.
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Perturbation corrections, partial sums, and the noise report.
    Hpm {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 3)]
        orders: usize,
        #[arg(long, default_value_t = 40)]
        trunc: usize,
        #[arg(long, value_enum, default_value = "theta-f")]
        embedding: EmbeddingArg,
    },
    /// Adaptive Runge–Kutta solution sampled on a uniform grid.
    Integrate {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 0.5)]
        x_start: f64,
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
        #[arg(long, default_value_t = 1e-10)]
        rel_tol: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Numeric solution, series, and asymptote of example 4.
    Fig1 {
        #[arg(long, default_value = "fig1.csv")]
        csv: PathBuf,
        #[arg(long, default_value = "fig1.svg")]
        svg: PathBuf,
        #[arg(long, default_value_t = 100.0)]
        x_max: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Every audit criterion; writes report.txt, report.json and data files.
    RunAll {
        #[arg(long, default_value = "audit-out")]
        out: PathBuf,
        /// Replace a builtin with a problem file: NAME=PATH.
        #[arg(long = "override", value_name = "NAME=PATH")]
        overrides: Vec<String>,
    },
}

enum Failure {
    Criteria,
    Usage(String),
    Io(String),
}

impl Failure {
    fn usage(e: impl Display) -> Self {
        Failure::Usage(e.to_string())
    }

    fn io(path: &Path, e: impl Display) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }
}

type Outcome = Result<(), Failure>;

fn load_problem(reg: &ProblemRegistry, name_or_path: &str) -> Result<IvpProblem, Failure> {
    if let Ok(p) = reg.get(name_or_path) {
        return Ok(p.clone());
    }
    let path = Path::new(name_or_path);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        return parse_problem_file(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())));
    }
    Err(Failure::Usage(format!("unknown problem `{name_or_path}`")))
}

fn write_file(path: &Path, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| Failure::io(path, e))
}

fn cmd_taylor(reg: &ProblemRegistry, problem: &str, trunc: usize) -> Outcome {
    let p = load_problem(reg, problem)?;
    let t = taylor_solve(&p, trunc).map_err(Failure::usage)?;
    println!("{p}");
    for (m, c) in t.series.terms() {
        println!("{m}: {}", hpm_audit::series::format_rational(c));
    }
    match t.closure_degree {
        Some(d) => println!("polynomial closure at degree {d}"),
        None => println!("no polynomial closure through degree {trunc}"),
    }
    Ok(())
}

fn cmd_hpm(
    reg: &ProblemRegistry,
    problem: &str,
    orders: usize,
    trunc: usize,
    embedding: Embedding,
) -> Outcome {
    let p = load_problem(reg, problem)?;
    let h = hpm_expand(&p, orders, trunc, embedding).map_err(Failure::usage)?;
    let reference = taylor_solve(&p, trunc).map_err(Failure::usage)?;
    let report = h
        .noise_report(Some(&reference.series))
        .map_err(Failure::usage)?;
    println!("{p}");
    println!("embedding {embedding}, truncation {trunc}");
    for (j, y) in h.corrections.iter().enumerate() {
        println!("y{j} = {y}");
    }
    for o in &report.orders {
        println!("S{} = {}", o.order, o.partial_sum);
    }
    println!("noise against the Taylor series:");
    for o in &report.orders {
        let first = o
            .first_difference
            .map_or("none".to_string(), |d| d.to_string());
        let residual = o
            .residual
            .lowest_nonzero_degree()
            .map_or("none".to_string(), |d| d.to_string());
        println!(
            "order {}: first differing degree {first}; residual lowest degree {residual}",
            o.order
        );
        if let Some(n) = o.noise.as_ref().filter(|n| !n.is_zero()) {
            println!("  noise {n}");
        }
    }
    println!("coefficient by order:");
    for (m, row) in report.trajectories.range(..=trunc.min(16)) {
        let row: Vec<String> = row.iter().map(hpm_audit::series::format_rational).collect();
        println!("x^{m}: {}", row.join(", "));
    }
    Ok(())
}

fn cmd_integrate(
    reg: &ProblemRegistry,
    problem: &str,
    cfg: SolverConfig,
    samples: usize,
    csv: Option<&Path>,
) -> Outcome {
    let p = load_problem(reg, problem)?;
    let t = rk_integrate(&p, &cfg).map_err(Failure::usage)?;
    let body = integrate_csv(&t, &uniform_grid(cfg.x_start, cfg.x_max, samples))
        .map_err(Failure::usage)?;
    match csv {
        Some(path) => {
            write_file(path, &body)?;
            eprintln!(
                "{} steps, wrote {} rows to {}",
                t.samples.len() - 1,
                samples,
                path.display()
            );
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_fig1(reg: &ProblemRegistry, csv: &Path, svg: &Path, x_max: f64, samples: usize) -> Outcome {
    let p = reg.get("ex4").map_err(Failure::usage)?;
    let d = fig1_data(p, x_max, samples, 9).map_err(Failure::usage)?;
    write_file(csv, &fig1_csv(&d))?;
    write_file(svg, &fig1_svg(&d))?;
    println!(
        "crossings of sqrt(ln x / x) on [2, {x_max}]: {}",
        d.crossings
    );
    if let Some((x, y)) = d.first_max {
        println!("first maximum at x = {x:.6}, y = {y:.6}");
    }
    Ok(())
}

fn cmd_run_all(mut reg: ProblemRegistry, out: &Path, overrides: &[String]) -> Outcome {
    for o in overrides {
        let (name, path) = o
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("override `{o}` is not NAME=PATH")))?;
        let path = Path::new(path);
        let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        let p = parse_problem_file(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        reg.insert(name, p);
    }
    let report = run_all(out, &reg).map_err(|e| Failure::io(out, e))?;
    print!("{}", report.to_text());
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Criteria)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reg = ProblemRegistry::builtins();
    let outcome = match cli.command {
        Command::Taylor { problem, trunc } => cmd_taylor(&reg, &problem, trunc),
        Command::Hpm {
            problem,
            orders,
            trunc,
            embedding,
        } => cmd_hpm(&reg, &problem, orders, trunc, embedding.into()),
        Command::Integrate {
            problem,
            x_start,
            x_max,
            rel_tol,
            samples,
            csv,
        } => {
            let cfg = SolverConfig {
                x_start,
                x_max,
                rel_tol,
                ..SolverConfig::default()
            };
            cmd_integrate(&reg, &problem, cfg, samples, csv.as_deref())
        }
        Command::Fig1 {
            csv,
            svg,
            x_max,
            samples,
        } => cmd_fig1(&reg, &csv, &svg, x_max, samples),
        Command::RunAll { out, overrides } => cmd_run_all(reg, &out, &overrides),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Criteria) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
