//! Command dispatch for the `isoperim` binary.
//!
//! A [`RunSpec`] names one command, optional input/output paths and a list of
//! `key=value` overrides. [`run`] validates the overrides against the command,
//! performs it and returns the process exit code: 0 on success, 1 on
//! validation failure, 2 on I/O failure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use isoperim::io::{self, FileError};
use isoperim::{
    generate, gradcheck, kkt_residual, optimize, regular_reference, svg, GradientField,
    OptimizerConfig, Polygon, PolygonKind,
};
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Gen,
    Gradcheck,
    Kkt,
    Optimize,
    Plot,
}

impl Command {
    fn allowed_keys(self) -> &'static [&'static str] {
        match self {
            Command::Gen => &["kind", "n", "area", "seed"],
            Command::Gradcheck => &["h", "tol"],
            Command::Kkt => &[],
            Command::Optimize => &[
                "area",
                "tol",
                "max_iters",
                "step_init",
                "armijo_c",
                "armijo_shrink",
                "min_edge_frac",
                "convexify_every",
                "seed",
                "trace",
                "runs",
                "kind",
                "n",
            ],
            Command::Plot => &["field"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Gradcheck => "gradcheck",
            Command::Kkt => "kkt",
            Command::Optimize => "optimize",
            Command::Plot => "plot",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    /// Where data goes; reports fall back to standard output when absent.
    pub output_path: Option<PathBuf>,
    /// `key=value` settings in command-line order; later entries win.
    pub overrides: Vec<(String, String)>,
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input_path: None,
            output_path: None,
            overrides: Vec::new(),
        }
    }

    pub fn input(mut self, path: impl Into<PathBuf>) -> Self {
        self.input_path = Some(path.into());
        self
    }

    pub fn output(mut self, path: impl Into<PathBuf>) -> Self {
        self.output_path = Some(path.into());
        self
    }

    pub fn set(mut self, key: &str, value: impl ToString) -> Self {
        self.overrides.push((key.to_string(), value.to_string()));
        self
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        match e {
            FileError::Io { .. } => Failure::Io(e.to_string()),
            FileError::Invalid { .. } => Failure::Validation(e.to_string()),
        }
    }
}

impl From<isoperim::Error> for Failure {
    fn from(e: isoperim::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// Runs one command, printing diagnostics to standard error.
pub fn run(spec: &RunSpec) -> i32 {
    match execute(spec) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("isoperim {}: {f}", spec.command.name());
            f.exit_code()
        }
    }
}

/// Like [`run`] but returns the failure instead of printing it.
pub fn execute(spec: &RunSpec) -> Outcome<()> {
    let settings = Settings::new(spec)?;
    match spec.command {
        Command::Gen => cmd_gen(spec, &settings),
        Command::Gradcheck => cmd_gradcheck(spec, &settings),
        Command::Kkt => cmd_kkt(spec),
        Command::Optimize => cmd_optimize(spec, &settings),
        Command::Plot => cmd_plot(spec, &settings),
    }
}

/// Validated overrides for one command.
struct Settings {
    pairs: Vec<(String, String)>,
}

impl Settings {
    fn new(spec: &RunSpec) -> Outcome<Self> {
        let allowed = spec.command.allowed_keys();
        let mut pairs = Vec::with_capacity(spec.overrides.len());
        for (k, v) in &spec.overrides {
            let key = k.trim().replace('-', "_");
            if !allowed.contains(&key.as_str()) {
                return Err(Failure::Validation(format!(
                    "unknown key '{k}' for command {}",
                    spec.command.name()
                )));
            }
            pairs.push((key, v.trim().to_string()));
        }
        Ok(Self { pairs })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.pairs
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn get<T: FromStr>(&self, key: &str) -> Outcome<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| Failure::Validation(format!("invalid value '{v}' for {key}")))
            })
            .transpose()
    }

    fn get_or<T: FromStr>(&self, key: &str, default: T) -> Outcome<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn optimizer_config(&self) -> Outcome<OptimizerConfig<f64>> {
        let d = OptimizerConfig::<f64>::default();
        let cfg = OptimizerConfig {
            area_target: self.get_or("area", d.area_target)?,
            max_iters: self.get_or("max_iters", d.max_iters)?,
            step_init: self.get("step_init")?.or(d.step_init),
            armijo_c: self.get_or("armijo_c", d.armijo_c)?,
            armijo_shrink: self.get_or("armijo_shrink", d.armijo_shrink)?,
            kkt_tol: self.get_or("tol", d.kkt_tol)?,
            min_edge_frac: self.get_or("min_edge_frac", d.min_edge_frac)?,
            convexify_every: self.get_or("convexify_every", d.convexify_every)?,
            seed: self.get_or("seed", d.seed)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn kind(&self) -> Outcome<PolygonKind> {
        match self.raw("kind") {
            None => Ok(PolygonKind::RandomConvex),
            Some(k) => Ok(k.parse::<PolygonKind>()?),
        }
    }
}

fn require_input(spec: &RunSpec) -> Outcome<&Path> {
    spec.input_path
        .as_deref()
        .ok_or_else(|| Failure::Validation("missing --in".to_string()))
}

fn require_output(spec: &RunSpec) -> Outcome<&Path> {
    spec.output_path
        .as_deref()
        .ok_or_else(|| Failure::Validation("missing --out".to_string()))
}

/// Reads the input polygon and rejects self-intersecting ones.
fn read_simple_polygon(spec: &RunSpec) -> Outcome<Polygon<f64>> {
    let p: Polygon<f64> = io::read_polygon(require_input(spec)?)?;
    if !p.is_simple() {
        return Err(Failure::Validation("polygon is not simple".to_string()));
    }
    Ok(p)
}

/// Writes `text` to the output path, or to standard output if none is set.
fn emit(spec: &RunSpec, text: &str) -> Outcome<()> {
    match &spec.output_path {
        Some(path) => Ok(io::write_text(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(spec: &RunSpec, s: &Settings) -> Outcome<()> {
    let out = require_output(spec)?;
    let p: Polygon<f64> = generate(
        s.kind()?,
        s.get_or("n", 6usize)?,
        s.get_or("area", 1.0)?,
        s.get_or("seed", 0u64)?,
    )?;
    Ok(io::write_polygon(out, &p)?)
}

fn cmd_gradcheck(spec: &RunSpec, s: &Settings) -> Outcome<()> {
    let p = read_simple_polygon(spec)?;
    let report = gradcheck(&p, s.get_or("h", 1e-6)?, s.get_or("tol", 1e-6)?)?;
    emit(spec, &io::to_json_pretty(&report))?;
    if !report.pass {
        return Err(Failure::Validation(format!(
            "gradient check failed: area abs err {:e}, perimeter rel err {:e}",
            report.max_abs_err_area, report.max_rel_err_perim
        )));
    }
    Ok(())
}

fn cmd_kkt(spec: &RunSpec) -> Outcome<()> {
    let p = read_simple_polygon(spec)?;
    let report = kkt_residual(&p)?;
    emit(spec, &io::to_json_pretty(&report))
}

fn default_trace_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "polygon".to_string());
    out.with_file_name(format!("{stem}.trace.csv"))
}

fn cmd_optimize(spec: &RunSpec, s: &Settings) -> Outcome<()> {
    let cfg = s.optimizer_config()?;
    let out = require_output(spec)?;
    if let Some(runs) = s.get::<usize>("runs")? {
        return optimize_batch(out, s, &cfg, runs);
    }
    let p0 = read_simple_polygon(spec)?;
    let result = optimize(&p0, &cfg)?;
    io::write_polygon(out, &result.polygon)?;
    let trace_path = s
        .raw("trace")
        .map(PathBuf::from)
        .unwrap_or_else(|| default_trace_path(out));
    io::write_text(&trace_path, &io::trace_to_csv(&result.trace))?;
    let last = result.final_record();
    eprintln!(
        "{} after {} iterations: perimeter {}, residual_relative {:e}",
        if result.converged { "converged" } else { "not converged" },
        result.iterations,
        last.perimeter,
        last.residual_relative
    );
    Ok(())
}

/// Independent seeded runs in parallel; the summary is written in seed order.
fn optimize_batch(out: &Path, s: &Settings, cfg: &OptimizerConfig<f64>, runs: usize) -> Outcome<()> {
    let kind = s.kind()?;
    let n = s.get_or("n", 6usize)?;
    let reference = regular_reference(n, cfg.area_target)?;
    let first = cfg.seed;
    let rows: Vec<Outcome<String>> = (0..runs as u64)
        .into_par_iter()
        .map(|k| {
            let seed = first + k;
            let p0: Polygon<f64> = generate(kind, n, cfg.area_target, seed)?;
            let r = optimize(&p0, cfg)?;
            let last = r.final_record();
            Ok(format!(
                "{seed},{n},{},{},{:?},{:?},{:?},{:?},{:?}\n",
                r.converged,
                r.iterations,
                last.perimeter,
                reference.perimeter,
                last.residual_relative,
                last.edge_cv,
                last.angle_cv
            ))
        })
        .collect();
    let mut text = String::from(
        "seed,n,converged,iterations,perimeter,perimeter_star,residual_relative,edge_cv,angle_cv\n",
    );
    for row in rows {
        text.push_str(&row?);
    }
    Ok(io::write_text(out, &text)?)
}

fn cmd_plot(spec: &RunSpec, s: &Settings) -> Outcome<()> {
    let p = read_simple_polygon(spec)?;
    let out = require_output(spec)?;
    let field = GradientField::compute(&p);
    svg::write_svg(out, &p, &field)?;
    if let Some(path) = s.raw("field") {
        io::write_text(Path::new(path), &io::to_json_pretty(&field))?;
    }
    Ok(())
}
