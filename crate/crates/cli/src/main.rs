use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use monogenic::verify::{self, Format, Report, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "monogenic", version, about = "Verification runner for monogenic and coherent-state models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite and emit a report.
    Verify {
        /// clifford, cpoly, hermite, bargmann, m2, gn, framework or all
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Algebra dimension.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Degree cap.
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Gauss-Hermite order.
        #[arg(long, default_value_t = 40)]
        quad: usize,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        /// Multiplies every tolerance.
        #[arg(long = "tol-scale", default_value_t = 1.0)]
        tol_scale: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// json, csv or text
        #[arg(long, default_value = "json")]
        format: Format,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate functions from a spec file at the points of a points file.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        points: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exit status: 0 when every asserted check passes, 1 otherwise.
fn run_verify(cfg: SuiteConfig, out: Option<&PathBuf>) -> Result<ExitCode> {
    let checks = verify::run_suite(&cfg)?;
    let report = Report::new(cfg.clone(), checks);
    write_out(out, &verify::emit_report(&report, cfg.format)?)?;
    for c in report.failed_diagnostic() {
        eprintln!("warning: diagnostic check {} above tolerance (residual {:e}, tol {:e})", c.id, c.residual, c.tol);
    }
    let failed: Vec<_> = report.failed_asserted().collect();
    for c in &failed {
        eprintln!("error: check {} failed (residual {:e}, tol {:e})", c.id, c.residual, c.tol);
    }
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_eval(spec: &PathBuf, points: &PathBuf, out: Option<&PathBuf>) -> Result<ExitCode> {
    let spec_text = fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
    let points_text = fs::read_to_string(points).with_context(|| format!("reading {}", points.display()))?;
    let specs = verify::parse_spec(&spec_text).with_context(|| format!("in {}", spec.display()))?;
    let pts = verify::parse_points(&points_text).with_context(|| format!("in {}", points.display()))?;
    let rows = verify::tabulate(&specs, &pts)?;
    let json = serde_json::to_string_pretty(&serde_json::json!({ "values": rows }))? + "\n";
    write_out(out, &json)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suite, n, degree, quad, h, tol_scale, seed, format, out } => {
            let cfg = SuiteConfig { suite, n, degree, quad, h, tol_scale, seed, format };
            run_verify(cfg, out.as_ref())
        }
        Command::Eval { spec, points, out } => run_eval(&spec, &points, out.as_ref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
