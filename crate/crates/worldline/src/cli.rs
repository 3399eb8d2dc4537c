//! Command-line front end.
//!
//! Each subcommand evaluates one of the library routes and emits a table,
//! CSV by default or JSON with a metadata header. Output is deterministic:
//! floats are printed with 17 significant digits in scientific notation
//! (lossless for f64), rows keep a fixed order, and a sweep point that
//! fails to converge becomes an `error` cell instead of aborting the run.
//!
//! Exit codes: 0 on success, 2 for usage or validation problems, 3 when
//! the numerics failed (a convergence error, a moment discrepancy above
//! threshold, or a sweep with more than 5% failed points).

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::moments::{self, GaussianPacket};
use crate::quadrature::{self, QuadratureSpec};
use crate::series;
use crate::spectra;
use crate::weaktraj::{self, WeakTrajectory};

#[derive(Parser, Debug)]
#[command(
    name = "worldline",
    version,
    about = "Worldline-distance expectations for free relativistic particles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form momentum moments next to the quadrature cross-check
    Moments(MomentsArgs),
    /// Term table and truncation summary of the asymptotic expansion
    Series(SeriesArgs),
    /// Distance rate against spread for the reference drift velocities
    Figure1(Figure1Args),
    /// Distance rate against spread for several truncation windows
    Figure2(Figure2Args),
    /// Eigenvalues on plane waves or in a box
    Spectrum(SpectrumArgs),
    /// Distance estimate from a sampled trajectory file
    Weak(WeakArgs),
    /// Distance rate over a custom grid of spreads and velocities
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    /// Packet width (physical mode; excludes --x)
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Central momentum (physical mode)
    #[arg(long)]
    pub p0: Option<f64>,
    /// Particle mass (physical mode)
    #[arg(long)]
    pub mass: Option<f64>,
    /// Dimensionless spread 1/(mass*sigma)^2 (excludes --sigma)
    #[arg(long)]
    pub x: Option<f64>,
    /// Drift velocity in units of c (dimensionless mode)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Highest moment index
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    /// Relative tolerance of the cross-check quadrature
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Largest accepted discrepancy between the two routes
    #[arg(long, default_value_t = 1e-8)]
    pub threshold: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    /// Dimensionless spread 1/(mass*sigma)^2
    #[arg(long)]
    pub x: f64,
    /// Drift velocity in units of c
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Elapsed coordinate time
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Highest expansion order
    #[arg(long, default_value_t = 40)]
    pub n_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Smallest spread in the grid
    #[arg(long, default_value_t = quadrature::DEFAULT_X_MIN)]
    pub x_min: f64,
    /// Largest spread in the grid
    #[arg(long, default_value_t = quadrature::DEFAULT_X_MAX)]
    pub x_max: f64,
    /// Number of logarithmically spaced grid points
    #[arg(long, default_value_t = quadrature::DEFAULT_X_COUNT)]
    pub x_count: usize,
}

#[derive(Args, Debug)]
pub struct ToleranceArgs {
    /// Relative tolerance of the rate quadrature
    #[arg(long, default_value_t = quadrature::DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Absolute tolerance of the rate quadrature
    #[arg(long, default_value_t = quadrature::DEFAULT_ABS_TOL)]
    pub abs_tol: f64,
    /// Subdivision budget per integral
    #[arg(long, default_value_t = quadrature::DEFAULT_MAX_SUBDIVISIONS)]
    pub max_subdivisions: u32,
}

#[derive(Args, Debug)]
pub struct Figure1Args {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Drift velocities, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = quadrature::FIGURE_BETAS)]
    pub betas: Vec<f64>,
    /// Gaussian window half-width in standard deviations
    #[arg(long, default_value_t = quadrature::DEFAULT_N_SIGMA)]
    pub n_sigma: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct Figure2Args {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Drift velocity in units of c
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    /// Window half-widths to compare, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = quadrature::STUDY_N_SIGMAS)]
    pub n_sigmas: Vec<f64>,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Plane-wave momentum (excludes --box-length)
    #[arg(long)]
    pub p: Option<f64>,
    /// Box length (excludes --p)
    #[arg(long)]
    pub box_length: Option<f64>,
    /// Particle mass
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Elapsed coordinate time
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Number of box levels to list
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct WeakArgs {
    /// Trajectory file: one `t x y z` row per line, uniform time steps
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Drift velocities, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta_list: Vec<f64>,
    /// Gaussian window half-width in standard deviations
    #[arg(long, default_value_t = quadrature::DEFAULT_N_SIGMA)]
    pub n_sigma: f64,
    #[command(flatten)]
    pub tol: ToleranceArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

/// Lossless float rendering: 17 significant digits, scientific notation.
fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
enum Cell {
    F(f64),
    U(u64),
    B(bool),
    S(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(v) => fmt_float(*v),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::F(v) => fmt_float(*v),
            Cell::U(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(s) => format!("\"{}\"", esc_json(s)),
            Cell::Missing => "null".to_string(),
        }
    }
}

fn esc_json(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One rendered table. Metadata goes to the JSON header; the summary, when
/// present, also appears as `# key=value` lines before the CSV header.
struct Doc {
    command: &'static str,
    meta: Vec<(&'static str, Cell)>,
    summary: Vec<(&'static str, Cell)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Doc {
    fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Doc {
            command,
            meta: Vec::new(),
            summary: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.summary {
            out.push_str(&format!("# {key}={}\n", value.csv()));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"metadata\":{");
        out.push_str(&format!(
            "\"command\":\"{}\",\"version\":\"{}\"",
            self.command,
            env!("CARGO_PKG_VERSION")
        ));
        for (key, value) in &self.meta {
            out.push_str(&format!(",\"{key}\":{}", value.json()));
        }
        out.push('}');
        if !self.summary.is_empty() {
            out.push_str(",\"summary\":{");
            let parts: Vec<String> = self
                .summary
                .iter()
                .map(|(key, value)| format!("\"{key}\":{}", value.json()))
                .collect();
            out.push_str(&parts.join(","));
            out.push('}');
        }
        out.push_str(",\"rows\":[");
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| format!("\"{col}\":{}", cell.json()))
                    .collect();
                format!("{{{}}}", fields.join(","))
            })
            .collect();
        out.push_str(&rows.join(","));
        out.push_str("]}\n");
        out
    }
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if !(v.is_finite() && v > 0.0) {
        return Err(CliError::Usage(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<(), CliError> {
    if !beta.is_finite() || beta >= 1.0 {
        return Err(CliError::Usage(format!("beta must be < 1, got {beta}")));
    }
    if beta < 0.0 {
        return Err(CliError::Usage(format!(
            "beta must be nonnegative, got {beta}"
        )));
    }
    Ok(())
}

fn quad_beta(beta: f64) -> Result<(), CliError> {
    check_beta(beta)?;
    if beta == 0.0 {
        return Err(CliError::Usage(
            "beta must be positive for the rate quadrature".to_string(),
        ));
    }
    Ok(())
}

fn build_quad_spec(tol: &ToleranceArgs, n_sigma: f64) -> Result<QuadratureSpec, CliError> {
    check_positive("rel-tol", tol.rel_tol)?;
    check_positive("abs-tol", tol.abs_tol)?;
    if !(n_sigma.is_finite() && n_sigma >= 0.0) {
        return Err(CliError::Usage(format!(
            "n-sigma must be nonnegative, got {n_sigma}"
        )));
    }
    Ok(QuadratureSpec {
        rel_tol: tol.rel_tol,
        abs_tol: tol.abs_tol,
        n_sigma,
        max_subdivisions: tol.max_subdivisions,
    })
}

fn build_grid(grid: &GridArgs) -> Result<Vec<f64>, CliError> {
    quadrature::log_grid(grid.x_min, grid.x_max, grid.x_count)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_packet(args: &MomentsArgs) -> Result<GaussianPacket, CliError> {
    match (args.sigma, args.x) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --sigma (with --p0/--mass) or --x (with --beta), not both".to_string(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --sigma or --x is required".to_string(),
        )),
        (Some(sigma), None) => {
            if args.beta.is_some() {
                return Err(CliError::Usage(
                    "--beta belongs to the --x parameterization".to_string(),
                ));
            }
            GaussianPacket::new(sigma, args.p0.unwrap_or(0.0), args.mass.unwrap_or(1.0))
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        (None, Some(x)) => {
            if args.p0.is_some() || args.mass.is_some() {
                return Err(CliError::Usage(
                    "--p0 and --mass belong to the --sigma parameterization".to_string(),
                ));
            }
            let beta = args.beta.unwrap_or(0.0);
            check_beta(beta)?;
            GaussianPacket::from_dimensionless(x, beta).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn run_moments(args: &MomentsArgs) -> Result<(Doc, u8), CliError> {
    let packet = resolve_packet(args)?;
    if args.n_max > moments::MAX_MOMENT_INDEX {
        return Err(CliError::Usage(format!(
            "n-max must be at most {}, got {}",
            moments::MAX_MOMENT_INDEX,
            args.n_max
        )));
    }
    check_positive("tol", args.tol)?;
    check_positive("threshold", args.threshold)?;
    let rows = moments::moment_table(&packet, args.n_max, args.tol).map_err(|e| match e {
        moments::MomentError::OracleDidNotConverge { .. } => CliError::Numerical(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;

    let mut doc = Doc::new(
        "moments",
        vec!["n", "closed_form", "oracle", "rel_discrepancy"],
    );
    doc.meta = vec![
        ("sigma", Cell::F(packet.sigma())),
        ("p0", Cell::F(packet.p0())),
        ("mass", Cell::F(packet.mass())),
        ("x", Cell::F(packet.x())),
        ("beta", Cell::F(packet.beta())),
        ("n_max", Cell::U(args.n_max as u64)),
        ("tol", Cell::F(args.tol)),
        ("threshold", Cell::F(args.threshold)),
    ];
    let mut worst = 0.0f64;
    for row in &rows {
        worst = worst.max(row.rel_discrepancy);
        doc.rows.push(vec![
            Cell::U(row.n as u64),
            Cell::F(row.closed_form),
            Cell::F(row.oracle),
            Cell::F(row.rel_discrepancy),
        ]);
    }
    let code = if worst <= args.threshold { 0 } else { 3 };
    if code != 0 {
        eprintln!(
            "worst discrepancy {:e} exceeds threshold {:e}",
            worst, args.threshold
        );
    }
    Ok((doc, code))
}

fn run_series(args: &SeriesArgs) -> Result<(Doc, u8), CliError> {
    let report = series::expansion_report(args.x, args.beta, args.t, args.n_max)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut doc = Doc::new("series", vec!["n", "term", "partial_sum"]);
    doc.meta = vec![
        ("x", Cell::F(args.x)),
        ("beta", Cell::F(args.beta)),
        ("t", Cell::F(args.t)),
        ("n_max", Cell::U(args.n_max as u64)),
    ];
    doc.summary = vec![
        ("min_term_index", Cell::U(report.min_term_index as u64)),
        ("min_term_value", Cell::F(report.min_term_value)),
        ("truncated_sum", Cell::F(report.truncated_sum)),
        ("classical_ref", Cell::F(report.classical_ref)),
        (
            "divergent_after",
            report
                .divergent_after
                .map(|k| Cell::U(k as u64))
                .unwrap_or(Cell::Missing),
        ),
        (
            "truncated_by_overflow",
            Cell::B(report.truncated_by_overflow),
        ),
    ];
    for (n, (term, sum)) in report.terms.iter().zip(&report.partial_sums).enumerate() {
        doc.rows
            .push(vec![Cell::U(n as u64), Cell::F(*term), Cell::F(*sum)]);
    }
    Ok((doc, 0))
}

fn sweep_doc(
    command: &'static str,
    grid: &[f64],
    betas: &[f64],
    spec: &QuadratureSpec,
) -> (Doc, u8) {
    let rows = quadrature::sweep(grid, betas, spec);
    let mut doc = Doc::new(command, vec!["beta", "x", "ds_dt", "classical_ref"]);
    doc.meta = vec![
        ("n_sigma", Cell::F(spec.n_sigma)),
        ("rel_tol", Cell::F(spec.rel_tol)),
        ("abs_tol", Cell::F(spec.abs_tol)),
        ("x_count", Cell::U(grid.len() as u64)),
    ];
    let mut failed = 0usize;
    for pt in &rows {
        let cell = match &pt.ds_dt {
            Ok(v) => Cell::F(*v),
            Err(e) => {
                failed += 1;
                eprintln!("point beta={} x={}: {e}", pt.beta, pt.x);
                Cell::S("error".to_string())
            }
        };
        doc.rows.push(vec![
            Cell::F(pt.beta),
            Cell::F(pt.x),
            cell,
            Cell::F(pt.classical_ref),
        ]);
    }
    let total = rows.len().max(1);
    let ok = total - failed;
    let code = if (ok as f64) >= 0.95 * total as f64 {
        0
    } else {
        3
    };
    if failed > 0 {
        eprintln!("{failed} of {total} points failed to converge");
    }
    (doc, code)
}

fn run_figure1(args: &Figure1Args) -> Result<(Doc, u8), CliError> {
    if args.betas.is_empty() {
        return Err(CliError::Usage("need at least one beta".to_string()));
    }
    for &beta in &args.betas {
        quad_beta(beta)?;
    }
    let grid = build_grid(&args.grid)?;
    let spec = build_quad_spec(&args.tol, args.n_sigma)?;
    Ok(sweep_doc("figure1", &grid, &args.betas, &spec))
}

fn run_figure2(args: &Figure2Args) -> Result<(Doc, u8), CliError> {
    quad_beta(args.beta)?;
    if args.n_sigmas.is_empty() {
        return Err(CliError::Usage("need at least one n-sigma".to_string()));
    }
    let grid = build_grid(&args.grid)?;
    let spec = build_quad_spec(&args.tol, quadrature::DEFAULT_N_SIGMA)?;
    for &n in &args.n_sigmas {
        if !(n.is_finite() && n >= 0.0) {
            return Err(CliError::Usage(format!(
                "n-sigma must be nonnegative, got {n}"
            )));
        }
    }
    let rows = quadrature::truncation_study(&grid, args.beta, &args.n_sigmas, &spec);
    let mut doc = Doc::new("figure2", vec!["n_sigma", "x", "ds_dt"]);
    doc.meta = vec![
        ("beta", Cell::F(args.beta)),
        ("rel_tol", Cell::F(spec.rel_tol)),
        ("abs_tol", Cell::F(spec.abs_tol)),
        ("x_count", Cell::U(grid.len() as u64)),
    ];
    let mut failed = 0usize;
    for pt in &rows {
        let cell = match &pt.ds_dt {
            Ok(v) => Cell::F(*v),
            Err(e) => {
                failed += 1;
                eprintln!("point n_sigma={} x={}: {e}", pt.n_sigma, pt.x);
                Cell::S("error".to_string())
            }
        };
        doc.rows
            .push(vec![Cell::F(pt.n_sigma), Cell::F(pt.x), cell]);
    }
    let total = rows.len().max(1);
    let ok = total - failed;
    let code = if (ok as f64) >= 0.95 * total as f64 {
        0
    } else {
        3
    };
    Ok((doc, code))
}

fn run_spectrum(args: &SpectrumArgs) -> Result<(Doc, u8), CliError> {
    match (args.p, args.box_length) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --p or --box-length, not both".to_string(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --p or --box-length is required".to_string(),
        )),
        (Some(p), None) => {
            let s = spectra::planewave_eigenvalue(p, args.mass, args.t)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut doc = Doc::new("spectrum", vec!["p", "mass", "t", "s_eigenvalue"]);
            doc.rows.push(vec![
                Cell::F(p),
                Cell::F(args.mass),
                Cell::F(args.t),
                Cell::F(s),
            ]);
            Ok((doc, 0))
        }
        (None, Some(length)) => {
            let levels = spectra::box_spectrum(length, args.mass, args.t, args.n_max)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut doc = Doc::new("spectrum", vec!["n", "p_n", "evaluable", "s_eigenvalue"]);
            doc.meta = vec![
                ("box_length", Cell::F(length)),
                ("mass", Cell::F(args.mass)),
                ("t", Cell::F(args.t)),
            ];
            for level in levels {
                doc.rows.push(vec![
                    Cell::U(level.n as u64),
                    Cell::F(level.p_n),
                    Cell::B(level.evaluable()),
                    level.s_eigenvalue.map(Cell::F).unwrap_or(Cell::Missing),
                ]);
            }
            Ok((doc, 0))
        }
    }
}

/// Parse a `t x y z` table. Blank lines and `#` comments are skipped.
pub fn parse_trajectory(text: &str) -> Result<(Vec<f64>, Vec<[f64; 3]>), String> {
    let mut times = Vec::new();
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(format!(
                "line {}: expected 4 fields `t x y z`, got {}",
                lineno + 1,
                fields.len()
            ));
        }
        let mut vals = [0.0f64; 4];
        for (i, field) in fields.iter().enumerate() {
            vals[i] = field
                .parse()
                .map_err(|_| format!("line {}: `{field}` is not a number", lineno + 1))?;
        }
        times.push(vals[0]);
        points.push([vals[1], vals[2], vals[3]]);
    }
    Ok((times, points))
}

fn run_weak(args: &WeakArgs) -> Result<(Doc, u8), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.input.display())))?;
    let (times, points) = parse_trajectory(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.input.display())))?;
    let traj = WeakTrajectory::from_samples(&times, points)
        .map_err(|e| CliError::Usage(format!("{}: {e}", args.input.display())))?;
    let est = weaktraj::weak_distance_estimate(&traj);
    let mut doc = Doc::new("weak", vec!["distance", "superluminal_steps", "duration"]);
    doc.meta = vec![
        ("points", Cell::U(traj.len() as u64)),
        ("dt", Cell::F(traj.dt())),
    ];
    doc.rows.push(vec![
        Cell::F(est.distance),
        Cell::U(est.superluminal_steps as u64),
        Cell::F(traj.duration()),
    ]);
    Ok((doc, 0))
}

fn run_sweep(args: &SweepArgs) -> Result<(Doc, u8), CliError> {
    if args.beta_list.is_empty() {
        return Err(CliError::Usage("need at least one beta".to_string()));
    }
    for &beta in &args.beta_list {
        quad_beta(beta)?;
    }
    let grid = build_grid(&args.grid)?;
    let spec = build_quad_spec(&args.tol, args.n_sigma)?;
    Ok(sweep_doc("sweep", &grid, &args.beta_list, &spec))
}

/// Dispatch a parsed command line. Returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let (result, out) = match &cli.command {
        Command::Moments(args) => (run_moments(args), &args.out),
        Command::Series(args) => (run_series(args), &args.out),
        Command::Figure1(args) => (run_figure1(args), &args.out),
        Command::Figure2(args) => (run_figure2(args), &args.out),
        Command::Spectrum(args) => (run_spectrum(args), &args.out),
        Command::Weak(args) => (run_weak(args), &args.out),
        Command::Sweep(args) => (run_sweep(args), &args.out),
    };
    let (doc, code) = match result {
        Ok(pair) => pair,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            return 3;
        }
    };
    let rendered = doc.render(out.format);
    match &out.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{rendered}"),
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_lossless() {
        for &v in &[
            0.1,
            1.0 / 3.0,
            4.4309086466927462936e-7,
            1e-8,
            123456.789,
            -0.0030529431152343757,
        ] {
            let s = fmt_float(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, v, "{s}");
        }
    }

    #[test]
    fn csv_rendering_is_plain() {
        let mut doc = Doc::new("demo", vec!["a", "b"]);
        doc.rows.push(vec![Cell::U(1), Cell::F(0.5)]);
        doc.rows.push(vec![Cell::U(2), Cell::Missing]);
        let csv = doc.render(Format::Csv);
        assert_eq!(csv, "a,b\n1,5.0000000000000000e-1\n2,\n");
    }

    #[test]
    fn json_rendering_nests_metadata() {
        let mut doc = Doc::new("demo", vec!["a"]);
        doc.meta.push(("x", Cell::F(1.0)));
        doc.summary.push(("flag", Cell::B(true)));
        doc.rows.push(vec![Cell::S("error".to_string())]);
        let json = doc.render(Format::Json);
        assert!(json.starts_with("{\"metadata\":{\"command\":\"demo\""));
        assert!(json.contains("\"summary\":{\"flag\":true}"));
        assert!(json.contains("\"rows\":[{\"a\":\"error\"}]"));
    }

    #[test]
    fn trajectory_parser_accepts_comments_and_blanks() {
        let text = "# header\n0.0 0.0 0.0 0.0\n\n0.1 0.06 0.0 0.0\n0.2 0.12 0.0 0.0\n";
        let (times, points) = parse_trajectory(text).unwrap();
        assert_eq!(times, vec![0.0, 0.1, 0.2]);
        assert_eq!(points.len(), 3);
        assert_eq!(points[1][0], 0.06);
    }

    #[test]
    fn trajectory_parser_rejects_malformed_rows() {
        assert!(parse_trajectory("0.0 1.0 2.0\n").is_err());
        assert!(parse_trajectory("0.0 1.0 2.0 three\n").is_err());
    }

    #[test]
    fn packet_resolution_modes() {
        let args = |sigma, p0, mass, x, beta| MomentsArgs {
            sigma,
            p0,
            mass,
            x,
            beta,
            n_max: 4,
            tol: 1e-9,
            threshold: 1e-8,
            out: OutputArgs {
                format: Format::Csv,
                output: None,
            },
        };
        let p = resolve_packet(&args(Some(2.0), Some(0.5), None, None, None)).unwrap();
        assert_eq!((p.sigma(), p.p0(), p.mass()), (2.0, 0.5, 1.0));
        let p = resolve_packet(&args(None, None, None, Some(0.25), Some(0.5))).unwrap();
        assert!((p.x() - 0.25).abs() < 1e-15);
        assert!(resolve_packet(&args(Some(1.0), None, None, Some(1.0), None)).is_err());
        assert!(resolve_packet(&args(None, None, None, None, None)).is_err());
        assert!(resolve_packet(&args(Some(1.0), None, None, None, Some(0.1))).is_err());
        assert!(resolve_packet(&args(None, Some(0.1), None, Some(1.0), None)).is_err());
        match resolve_packet(&args(None, None, None, Some(1.0), Some(1.5))) {
            Err(CliError::Usage(msg)) => assert!(msg.contains("beta must be < 1")),
            other => panic!("expected usage error, got {other:?}"),
        }
    }
}
