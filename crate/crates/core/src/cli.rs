//! Command-line front end: `solve`, `diagnose`, `bench`, `spectrum`.
//!
//! Exit status is 0 on success, 2 for invalid input (bad JSON, bad flags,
//! inconsistent configuration) and 3 when a numerical routine fails.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::coeff::build_coeff_matrix;
use crate::diagnostics::{
    spectrum, spectrum_csv, Diagnostics, DiagnosticsConfig, Normalization, Threshold, ThresholdMode,
};
use crate::error::Error;
use crate::format::{json_sig17, sig17};
use crate::function::FunctionSpec;
use crate::reference::{rk_baseline, ReferenceForm, ReferenceSolution};
use crate::star::{solve_ode, SolveConfig, SolverPath};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "star-resolvent",
    version,
    about = "Linear ODEs y' = f(t) y through the ★-resolvent in a Legendre basis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and tabulate the solution on an equispaced mesh.
    Solve(SolveArgs),
    /// Bandwidth, spectral radius and extreme singular values of F.
    Diagnose(DiagnoseArgs),
    /// Maximal relative errors of the solver and of a Runge–Kutta baseline.
    Bench(BenchArgs),
    /// All eigenvalues of F as `re,im` rows.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Table,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Problem description in JSON.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog name (f1..f5, cos, log1p, zero) or an inline JSON function.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long = "M", alias = "m")]
    pub order: Option<usize>,
    #[arg(long = "T", alias = "t")]
    pub interval_end: Option<f64>,
    #[arg(long)]
    pub mesh_points: Option<usize>,
    #[arg(long)]
    pub threshold_mode: Option<ThresholdMode>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[arg(long = "M", alias = "m", value_delimiter = ',', default_values_t = vec![25, 100, 500])]
    pub orders: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = default_functions())]
    pub functions: Vec<String>,
    #[arg(long = "T", alias = "t", default_value_t = 1.0)]
    pub interval_end: f64,
    #[arg(long, default_value = "relative")]
    pub threshold_mode: ThresholdMode,
    /// Report `(2/T) F` (reference) or `F` on `[0, T]` (physical).
    #[arg(long, value_enum, default_value_t = NormalizationArg::Reference)]
    pub normalization: NormalizationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long = "M", alias = "m", value_delimiter = ',', default_values_t = vec![25, 100])]
    pub orders: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = default_functions())]
    pub functions: Vec<String>,
    #[arg(long, default_value_t = 100)]
    pub mesh_points: usize,
    /// Requested relative and absolute tolerance of the Runge–Kutta row.
    #[arg(long, default_value_t = f64::EPSILON)]
    pub rk_tol: f64,
    #[arg(long, default_value = "relative")]
    pub threshold_mode: ThresholdMode,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, default_value = "f1")]
    pub function: String,
    #[arg(long = "M", alias = "m", default_value_t = 100)]
    pub order: usize,
    #[arg(long = "T", alias = "t", default_value_t = 1.0)]
    pub interval_end: f64,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Reference)]
    pub normalization: NormalizationArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Reference,
    Physical,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Reference => Normalization::Reference,
            NormalizationArg::Physical => Normalization::Physical,
        }
    }
}

fn default_functions() -> Vec<String> {
    FunctionSpec::catalog()
        .into_iter()
        .map(|(id, _)| id.to_string())
        .collect()
}

/// Failure of a command, carrying its exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Numerical(Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Domain(_) => CliError::Config(e.to_string()),
            other => CliError::Numerical(other),
        }
    }
}

/// Problem file accepted by `solve --config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub function: FunctionSpec,
    #[serde(rename = "M")]
    pub order: usize,
    #[serde(rename = "T", default = "default_interval_end")]
    pub interval_end: f64,
    #[serde(default = "default_mesh_points")]
    pub mesh_points: usize,
    #[serde(default)]
    pub bandwidth_threshold_mode: ThresholdMode,
    #[serde(default)]
    pub output_format: OutputFormat,
}

fn default_interval_end() -> f64 {
    1.0
}

fn default_mesh_points() -> usize {
    100
}

impl ProblemConfig {
    pub fn new(function: FunctionSpec, order: usize) -> Self {
        Self {
            function,
            order,
            interval_end: default_interval_end(),
            mesh_points: default_mesh_points(),
            bandwidth_threshold_mode: ThresholdMode::default(),
            output_format: OutputFormat::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.order < 2 {
            return Err(CliError::Config(format!(
                "M must be at least 2, got {}",
                self.order
            )));
        }
        if self.mesh_points < 2 {
            return Err(CliError::Config(format!(
                "mesh_points must be at least 2, got {}",
                self.mesh_points
            )));
        }
        if !(self.interval_end > 0.0 && self.interval_end.is_finite()) {
            return Err(CliError::Config(format!(
                "T must be positive, got {}",
                self.interval_end
            )));
        }
        self.function.validate()?;
        Ok(())
    }
}

/// Name from the catalog, `zero`, or an inline JSON object.
pub fn parse_function(text: &str) -> Result<FunctionSpec, CliError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        serde_json::from_str(trimmed).map_err(|e| CliError::Config(format!("invalid function JSON: {e}")))
    } else {
        Ok(FunctionSpec::from_name(trimmed)?)
    }
}

fn function_id(name: &str) -> String {
    let spec = FunctionSpec::from_name(name).ok();
    FunctionSpec::catalog()
        .into_iter()
        .find(|(_, f)| Some(f) == spec.as_ref())
        .map(|(id, _)| id.to_string())
        .unwrap_or_else(|| name.trim().to_string())
}

/// Equispaced mesh on `[0, T]` with both endpoints.
pub fn equispaced_mesh(interval_end: f64, points: usize) -> Vec<f64> {
    let last = (points - 1) as f64;
    (0..points).map(|i| interval_end * i as f64 / last).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRow {
    #[serde(serialize_with = "json_sig17")]
    pub t: f64,
    #[serde(serialize_with = "json_sig17")]
    pub y_hat: f64,
    #[serde(serialize_with = "json_sig17")]
    pub y_ref: f64,
    #[serde(serialize_with = "json_sig17")]
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    #[serde(serialize_with = "json_sig17")]
    pub max_rel_err: f64,
    pub bandwidth: usize,
    pub zeroed_rows: usize,
    #[serde(serialize_with = "json_sig17")]
    pub residual: f64,
    pub solver: SolverPath,
    pub reference: ReferenceForm,
    pub diagnostics: Option<Diagnostics>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub config: ProblemConfig,
    pub rows: Vec<SolveRow>,
    pub summary: SolveSummary,
}

pub fn solve_report(config: &ProblemConfig) -> Result<SolveReport, CliError> {
    config.validate()?;
    let basis = Basis::new(config.order, config.interval_end)?;
    let solve_config = SolveConfig {
        threshold: Threshold::from_mode(config.bandwidth_threshold_mode),
        ..Default::default()
    };
    let sol = solve_ode(&config.function, &basis, &solve_config)?;
    let mesh = equispaced_mesh(config.interval_end, config.mesh_points);
    let reference = ReferenceSolution::new(config.function.clone());
    let y_ref = reference.on_mesh(&mesh)?;
    let mut rows = Vec::with_capacity(mesh.len());
    for (&t, &r) in mesh.iter().zip(&y_ref) {
        let y = sol.evaluate(t)?;
        if !y.is_finite() || !r.is_finite() {
            let value = if y.is_finite() { r } else { y };
            return Err(Error::NonFinite { t, value }.into());
        }
        rows.push(SolveRow {
            t,
            y_hat: y,
            y_ref: r,
            rel_err: ((y - r) / r).abs(),
        });
    }
    let max_rel_err = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok(SolveReport {
        config: config.clone(),
        rows,
        summary: SolveSummary {
            max_rel_err,
            bandwidth: sol.bandwidth_used,
            zeroed_rows: sol.zeroed_rows,
            residual: sol.residual,
            solver: sol.path,
            reference: reference.form,
            diagnostics: sol.diagnostics,
        },
    })
}

fn render_solve(report: &SolveReport, format: OutputFormat) -> Result<String, CliError> {
    let s = &report.summary;
    Ok(match format {
        OutputFormat::Json => to_json(report)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["t", "y_hat", "y_ref", "rel_err"])
                .map_err(csv_error)?;
            for r in &report.rows {
                w.write_record([sig17(r.t), sig17(r.y_hat), sig17(r.y_ref), sig17(r.rel_err)])
                    .map_err(csv_error)?;
            }
            let mut out = finish_csv(w)?;
            writeln!(out, "# max_rel_err,{}", sig17(s.max_rel_err)).unwrap();
            out
        }
        OutputFormat::Table => {
            let mut out = format!(
                "{:>8}  {:>22}  {:>22}  {:>10}\n",
                "t", "y_hat", "y_ref", "rel_err"
            );
            for r in &report.rows {
                writeln!(
                    out,
                    "{:>8.5}  {:>22.16}  {:>22.16}  {:>10.2e}",
                    r.t, r.y_hat, r.y_ref, r.rel_err
                )
                .unwrap();
            }
            writeln!(
                out,
                "max_rel_err = {:.2e}  (M = {}, b = {}, zeroed rows = {})",
                s.max_rel_err, report.config.order, s.bandwidth, s.zeroed_rows
            )
            .unwrap();
            out
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnoseRecord {
    pub function: String,
    pub label: String,
    #[serde(rename = "M")]
    pub order: usize,
    pub diagnostics: Diagnostics,
}

/// One record per `(M, function)` pair, `M` varying slowest.
pub fn diagnose_report(
    orders: &[usize],
    functions: &[String],
    interval_end: f64,
    config: &DiagnosticsConfig,
) -> Result<Vec<DiagnoseRecord>, CliError> {
    if orders.is_empty() || functions.is_empty() {
        return Err(CliError::Config("need at least one M and one function".into()));
    }
    let specs = functions
        .iter()
        .map(|name| parse_function(name).map(|f| (function_id(name), f)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut records = Vec::new();
    for &m in orders {
        if m < 2 {
            return Err(CliError::Config(format!("M must be at least 2, got {m}")));
        }
        let basis = Basis::new(m, interval_end)?;
        for (id, spec) in &specs {
            let f = build_coeff_matrix(spec, &basis)?;
            records.push(DiagnoseRecord {
                function: id.clone(),
                label: spec.label(),
                order: m,
                diagnostics: Diagnostics::measure(&f, config)?,
            });
        }
    }
    Ok(records)
}

fn render_diagnose(records: &[DiagnoseRecord], format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Json => to_json(&records)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "function",
                "M",
                "bandwidth",
                "spectral_radius",
                "sigma_min",
                "sigma_max",
                "sigma_min_trusted",
            ])
            .map_err(csv_error)?;
            for r in records {
                let d = &r.diagnostics;
                w.write_record([
                    r.function.clone(),
                    r.order.to_string(),
                    d.bandwidth.to_string(),
                    sig17(d.spectral_radius),
                    sig17(d.sigma_min),
                    sig17(d.sigma_max),
                    d.sigma_min_trusted.to_string(),
                ])
                .map_err(csv_error)?;
            }
            finish_csv(w)?
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let mut orders: Vec<usize> = records.iter().map(|r| r.order).collect();
            orders.dedup();
            for m in orders {
                let block: Vec<&DiagnoseRecord> = records.iter().filter(|r| r.order == m).collect();
                write!(out, "{:<18}", format!("M = {m}")).unwrap();
                for r in &block {
                    write!(out, "{:>11}", r.function).unwrap();
                }
                out.push('\n');
                let mut row = |name: &str, cell: &dyn Fn(&Diagnostics) -> String| {
                    write!(out, "{name:<18}").unwrap();
                    for r in &block {
                        write!(out, "{:>11}", cell(&r.diagnostics)).unwrap();
                    }
                    out.push('\n');
                };
                row("Num. band.", &|d| d.bandwidth.to_string());
                row("Spectral radius", &|d| format!("{:.4}", d.spectral_radius));
                row("sigma_min", &|d| {
                    format!(
                        "{:.2e}{}",
                        d.sigma_min,
                        if d.sigma_min_trusted { "" } else { "*" }
                    )
                });
                row("sigma_max", &|d| format!("{:.4}", d.sigma_max));
                out.push('\n');
            }
            if records.iter().any(|r| !r.diagnostics.sigma_min_trusted) {
                out.push_str("* below 1e-15 sigma_max, not resolved in double precision\n");
            }
            out
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchCell {
    pub function: String,
    #[serde(serialize_with = "json_sig17")]
    pub max_rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    /// `y_M` for the solver, `rk45` for the baseline.
    pub method: String,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    pub cells: Vec<BenchCell>,
    /// Set on the baseline row when the requested tolerance was raised.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub clamped_tolerance: Option<f64>,
}

pub fn bench_report(
    orders: &[usize],
    functions: &[String],
    mesh_points: usize,
    rk_tol: f64,
    threshold: Threshold,
) -> Result<Vec<BenchRow>, CliError> {
    if orders.is_empty() {
        return Err(CliError::Config("bench needs at least one M".into()));
    }
    if mesh_points < 2 {
        return Err(CliError::Config("mesh_points must be at least 2".into()));
    }
    let specs = functions
        .iter()
        .map(|name| parse_function(name).map(|f| (function_id(name), f)))
        .collect::<Result<Vec<_>, _>>()?;
    let mesh = equispaced_mesh(1.0, mesh_points);
    let references = specs
        .iter()
        .map(|(_, f)| ReferenceSolution::new(f.clone()).on_mesh(&mesh))
        .collect::<Result<Vec<_>, _>>()?;
    let max_rel = |values: &[f64], reference: &[f64]| {
        values
            .iter()
            .zip(reference)
            .map(|(y, r)| ((y - r) / r).abs())
            .fold(0.0, f64::max)
    };
    let mut rows = Vec::new();
    for &m in orders {
        let basis = Basis::new(m, 1.0)?;
        let config = SolveConfig {
            threshold,
            diagnostics: false,
            ..Default::default()
        };
        let mut cells = Vec::new();
        for ((id, f), reference) in specs.iter().zip(&references) {
            let sol = solve_ode(f, &basis, &config)?;
            let values = sol.evaluate_many(&mesh)?;
            cells.push(BenchCell {
                function: id.clone(),
                max_rel_err: max_rel(&values, reference),
            });
        }
        rows.push(BenchRow {
            method: format!("y_{m}"),
            order: Some(m),
            cells,
            clamped_tolerance: None,
        });
    }
    let mut cells = Vec::new();
    let mut clamped = None;
    for ((id, f), reference) in specs.iter().zip(&references) {
        let out = rk_baseline(f, &mesh, rk_tol, rk_tol)?;
        if out.clamped {
            clamped = Some(out.rel_tol);
        }
        cells.push(BenchCell {
            function: id.clone(),
            max_rel_err: max_rel(&out.values, reference),
        });
    }
    rows.push(BenchRow {
        method: "rk45".into(),
        order: None,
        cells,
        clamped_tolerance: clamped,
    });
    Ok(rows)
}

fn render_bench(rows: &[BenchRow], format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Json => to_json(&rows)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["method", "function", "max_rel_err"])
                .map_err(csv_error)?;
            for r in rows {
                for c in &r.cells {
                    w.write_record([r.method.clone(), c.function.clone(), sig17(c.max_rel_err)])
                        .map_err(csv_error)?;
                }
            }
            finish_csv(w)?
        }
        OutputFormat::Table => {
            let mut out = format!("{:<10}", "");
            if let Some(first) = rows.first() {
                for c in &first.cells {
                    write!(out, "{:>11}", c.function).unwrap();
                }
            }
            out.push('\n');
            for r in rows {
                write!(out, "{:<10}", r.method).unwrap();
                for c in &r.cells {
                    write!(out, "{:>11.2e}", c.max_rel_err).unwrap();
                }
                out.push('\n');
            }
            if let Some(tol) = rows.iter().find_map(|r| r.clamped_tolerance) {
                writeln!(out, "rk45 tolerance raised to {tol:e}").unwrap();
            }
            out
        }
    })
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn read_config(path: &Path) -> Result<ProblemConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
}

/// Runs one parsed command and returns the text it produces.
pub fn execute(command: &Command) -> Result<(String, Option<PathBuf>), CliError> {
    match command {
        Command::Solve(args) => {
            let mut config = match (&args.config, &args.function) {
                (Some(path), _) => read_config(path)?,
                (None, Some(_)) => ProblemConfig::new(FunctionSpec::zero(), 100),
                (None, None) => return Err(CliError::Config("solve needs --config or --function".into())),
            };
            if let Some(f) = &args.function {
                config.function = parse_function(f)?;
            }
            if let Some(m) = args.order {
                config.order = m;
            }
            if let Some(t) = args.interval_end {
                config.interval_end = t;
            }
            if let Some(n) = args.mesh_points {
                config.mesh_points = n;
            }
            if let Some(mode) = args.threshold_mode {
                config.bandwidth_threshold_mode = mode;
            }
            if let Some(fmt) = args.output.format {
                config.output_format = fmt;
            }
            let report = solve_report(&config)?;
            Ok((
                render_solve(&report, config.output_format)?,
                args.output.out.clone(),
            ))
        }
        Command::Diagnose(args) => {
            let config = DiagnosticsConfig {
                threshold: Threshold::from_mode(args.threshold_mode),
                normalization: args.normalization.into(),
                with_spectrum: false,
            };
            let records = diagnose_report(&args.orders, &args.functions, args.interval_end, &config)?;
            let text = render_diagnose(&records, args.output.format.unwrap_or_default())?;
            Ok((text, args.output.out.clone()))
        }
        Command::Bench(args) => {
            let rows = bench_report(
                &args.orders,
                &args.functions,
                args.mesh_points,
                args.rk_tol,
                Threshold::from_mode(args.threshold_mode),
            )?;
            Ok((
                render_bench(&rows, args.output.format.unwrap_or_default())?,
                args.output.out.clone(),
            ))
        }
        Command::Spectrum(args) => {
            if args.order < 1 {
                return Err(CliError::Config("M must be at least 1".into()));
            }
            let spec = parse_function(&args.function)?;
            let basis = Basis::new(args.order, args.interval_end)?;
            let f = build_coeff_matrix(&spec, &basis)?;
            let scale = Normalization::from(args.normalization).factor(args.interval_end);
            let eigs: Vec<_> = spectrum(&f)?
                .into_iter()
                .map(|mut z| {
                    z.re *= scale;
                    z.im *= scale;
                    z
                })
                .collect();
            let text = match args.output.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Json => to_json(&eigs)?,
                _ => spectrum_csv(&eigs),
            };
            Ok((text, args.output.out.clone()))
        }
    }
}

/// Parses arguments, runs the command, writes its output and returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = execute(&cli.command).and_then(|(text, out)| {
        match out {
            Some(path) => std::fs::write(&path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("star-resolvent").chain(args.iter().copied()))
            .unwrap()
            .command
    }

    #[test]
    fn flags_parse() {
        match parse(&[
            "diagnose",
            "--M",
            "25,100",
            "--functions",
            "f1,cos",
            "--format",
            "csv",
        ]) {
            Command::Diagnose(a) => {
                assert_eq!(a.orders, vec![25, 100]);
                assert_eq!(a.functions, vec!["f1", "cos"]);
                assert_eq!(a.output.format, Some(OutputFormat::Csv));
            }
            other => panic!("{other:?}"),
        }
        match parse(&[
            "solve",
            "--function",
            "t3",
            "--M",
            "30",
            "--threshold-mode",
            "absolute",
        ]) {
            Command::Solve(a) => {
                assert_eq!(a.order, Some(30));
                assert_eq!(a.threshold_mode, Some(ThresholdMode::Absolute));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn config_json_with_defaults() {
        let c: ProblemConfig = serde_json::from_str(r#"{"function":{"kind":"cos"},"M":40}"#).unwrap();
        assert_eq!(c.interval_end, 1.0);
        assert_eq!(c.mesh_points, 100);
        assert_eq!(c.output_format, OutputFormat::Table);
        assert!(
            serde_json::from_str::<ProblemConfig>(r#"{"function":{"kind":"cos"},"M":40,"x":1}"#).is_err()
        );
        let mut bad = c.clone();
        bad.order = 1;
        assert_eq!(bad.validate().unwrap_err().exit_code(), EXIT_CONFIG);
    }

    #[test]
    fn inline_function_json() {
        assert_eq!(
            parse_function(r#"{"kind":"polynomial","coeffs":[0,0,0,1]}"#).unwrap(),
            FunctionSpec::Polynomial {
                coeffs: vec![0.0, 0.0, 0.0, 1.0]
            }
        );
        assert!(parse_function("{nope").is_err());
        assert_eq!(function_id("cos"), "f4");
        assert_eq!(function_id("zero"), "zero");
    }

    #[test]
    fn error_classes_map_to_exit_codes() {
        assert_eq!(CliError::from(Error::Config("x".into())).exit_code(), EXIT_CONFIG);
        assert_eq!(
            CliError::from(Error::Singular {
                pivot: 0,
                condition: 1.0
            })
            .exit_code(),
            EXIT_NUMERICAL
        );
    }

    #[test]
    fn mesh_has_both_endpoints() {
        let m = equispaced_mesh(2.0, 5);
        assert_eq!(m, vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }
}
