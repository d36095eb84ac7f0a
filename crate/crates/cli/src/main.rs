use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hypervel_cli::config::{OutputFormat, RunConfig, DEFAULT_SAMPLES};
use hypervel_cli::eval::{cmd_eval, OPERATIONS};
use hypervel_cli::output::{render_reports, to_json};
use hypervel_cli::suites::{exit_code, run_suite, Suite};
use hypervel_cli::table::{cmd_table, SUPPORTED};
use hypervel_core::params::DEFAULT_TOL;
use hypervel_core::Params;

#[derive(Parser)]
#[command(
    name = "hypervel",
    version,
    about = "Einstein-number arithmetic: evaluate, tabulate, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Speed limit c.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Residual bound for loose-class laws.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operation; operands are a JSON array.
    #[command(after_help = operations_help())]
    Eval {
        op: String,
        #[arg(allow_hyphen_values = true)]
        operands: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print a CSV composition table over a grid such as `{0,c}` or `-c:c:5`.
    Table {
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Run a law suite and print one report per law.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, env = "HYPERVEL_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn operations_help() -> String {
    let mut s = String::from("Operations:\n");
    for (name, shape) in OPERATIONS {
        s.push_str(&format!("  {name:<24} {shape}\n"));
    }
    s
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("hypervel: {msg}");
    ExitCode::from(code)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn eval_text(v: &serde_json::Value, format: OutputFormat) -> String {
    use serde_json::Value;
    let cells = |v: &Value| -> String {
        match v {
            Value::Array(xs) => xs.iter().map(to_json).collect::<Vec<_>>().join(","),
            other => to_json(other),
        }
    };
    match (format, v) {
        (OutputFormat::Csv, Value::Array(rows)) if rows.iter().all(Value::is_array) => {
            rows.iter().map(|r| cells(r) + "\n").collect()
        }
        (OutputFormat::Csv, other) => cells(other) + "\n",
        _ => to_json(v) + "\n",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { op, operands, common } => {
            let cfg = RunConfig {
                c: common.c,
                tol: common.tol,
                format: common.format,
                ..RunConfig::default()
            };
            if let Err(e) = cfg.validate() {
                return fail(2, e);
            }
            match cmd_eval(&op, &operands, &cfg) {
                Ok(v) => {
                    emit(&eval_text(&v, cfg.format));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(2, e),
            }
        }
        Command::Table { op, grid, c } => {
            if !SUPPORTED.contains(&op.as_str()) {
                return fail(
                    2,
                    format!(
                        "unsupported table operation `{op}` (supported: {})",
                        SUPPORTED.join(", ")
                    ),
                );
            }
            let params = match Params::new(c) {
                Ok(p) => p,
                Err(e) => return fail(2, e),
            };
            match cmd_table(&op, &grid, params) {
                Ok(csv) => {
                    emit(&csv);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(2, e),
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
            common,
        } => {
            let cfg = RunConfig {
                c: common.c,
                tol: common.tol,
                seed,
                samples,
                format: common.format,
            };
            if let Err(e) = cfg.validate() {
                return fail(2, e);
            }
            let reports = run_suite(suite, &cfg);
            emit(&render_reports(&reports, cfg.format));
            ExitCode::from(exit_code(&reports) as u8)
        }
    }
}
