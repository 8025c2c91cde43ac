use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use isoperim_cli::{run, Command, RunSpec, EXIT_OK, EXIT_VALIDATION};

/// Polygon isoperimetric toolkit: gradients, KKT diagnostics and a
/// fixed-area perimeter minimizer.
#[derive(Parser)]
#[command(name = "isoperim", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a polygon (regular, random_convex, random_simple, star).
    Gen(Flags),
    /// Compare analytic gradients with central finite differences.
    Gradcheck(Flags),
    /// KKT residual and regularity report as JSON.
    Kkt(Flags),
    /// Minimize perimeter at fixed area; writes the final polygon and a trace CSV.
    Optimize(Flags),
    /// Render the polygon and its gradient field as SVG.
    Plot(Flags),
}

#[derive(Args)]
struct Flags {
    /// Input polygon (.json or .csv).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; reports go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    area: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Polygon family for `gen` and batch `optimize`.
    #[arg(long)]
    kind: Option<String>,
    /// Gradient-check tolerance, or the KKT stopping tolerance for `optimize`.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long = "max-iters")]
    max_iters: Option<String>,
    /// Trace CSV path for `optimize` (default: <out stem>.trace.csv).
    #[arg(long)]
    trace: Option<String>,
    /// Also write the gradient field JSON (`plot`).
    #[arg(long)]
    field: Option<String>,
    /// Batch mode for `optimize`: run this many consecutive seeds.
    #[arg(long)]
    runs: Option<String>,
    /// Any other setting, e.g. `--set armijo_c=1e-4`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn into_spec(command: Command, f: Flags) -> Result<RunSpec, String> {
    let mut spec = RunSpec::new(command);
    spec.input_path = f.input;
    spec.output_path = f.out;
    let named = [
        ("n", f.n),
        ("area", f.area),
        ("seed", f.seed),
        ("kind", f.kind),
        ("tol", f.tol),
        ("max_iters", f.max_iters),
        ("trace", f.trace),
        ("field", f.field),
        ("runs", f.runs),
    ];
    for (k, v) in named {
        if let Some(v) = v {
            spec.overrides.push((k.to_string(), v));
        }
    }
    for kv in f.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("--set expects KEY=VALUE, got '{kv}'"))?;
        spec.overrides.push((k.to_string(), v.to_string()));
    }
    Ok(spec)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (command, flags) = match cli.command {
        Cmd::Gen(f) => (Command::Gen, f),
        Cmd::Gradcheck(f) => (Command::Gradcheck, f),
        Cmd::Kkt(f) => (Command::Kkt, f),
        Cmd::Optimize(f) => (Command::Optimize, f),
        Cmd::Plot(f) => (Command::Plot, f),
    };
    let code = match into_spec(command, flags) {
        Ok(spec) => run(&spec),
        Err(msg) => {
            eprintln!("isoperim: {msg}");
            EXIT_VALIDATION
        }
    };
    std::process::exit(code);
}
