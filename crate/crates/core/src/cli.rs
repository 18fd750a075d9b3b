//! `linegraph` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 numerical or identity
//! failure. Data goes to `--output` (stdout when omitted); diagnostics go to
//! stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{error_study, track_eigenvectors, ContinuationResult, ErrorStudyResult};
use crate::eigen::eig_symmetric;
use crate::error::SpectraError;
use crate::graph::{build_laplacian, build_perturbed_laplacian, LineGraphSpec, PerturbationSpec};
use crate::spectrum::{ascending_position, predict_spectrum, ClosedFormSpectrum};
use crate::svg::{render_grid, Plot, Series, Style, BLUE, PALETTE, RED};
use crate::validate::{IdentitySuite, DEFAULT_MAX_N};

/// Closed form vs. oracle agreement required by `spectrum` (and the ε=0 base in `perturb`).
pub const SPECTRUM_AGREEMENT_TOL: f64 = 1e-9;
/// Oracle residual must stay under this multiple of `max |A_ij|`.
pub const ORACLE_RESIDUAL_REL_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "linegraph",
    version,
    about = "Line-graph Laplacian spectra under a single edge perturbation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m1: usize,
    #[arg(long)]
    pub m2: usize,
}

#[derive(Debug, Args, Clone)]
pub struct RangeArgs {
    #[arg(long = "eps-min", allow_negative_numbers = true)]
    pub eps_min: f64,
    #[arg(long = "eps-max", allow_negative_numbers = true)]
    pub eps_max: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form eigenvalues next to oracle eigenvalues.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// First-order prediction vs. oracle for one perturbation.
    Perturb {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_negative_numbers = true)]
        epsilon: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Second-order error E(ε) over an evenly spaced ε grid of `steps` points.
    Sweep {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sign-aligned eigenvector continuation over `steps` equal ε increments.
    Track {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Eigenvectors to plot, by ascending-eigenvalue rank (1 = constant mode).
        #[arg(long, value_delimiter = ',', default_values_t = [5usize, 6, 7, 8])]
        vectors: Vec<usize>,
        /// ε values to overlay in the plot; defaults to the start, midpoint,
        /// three-quarter point and end of the range.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        at: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs every closed-form identity family and prints one line per family.
    Validate {
        #[arg(long = "max-n", default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Which subcommand a [`RunConfig`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Spectrum,
    Perturb,
    Sweep,
    Track,
    Validate,
}

/// Flattened, validated view of a command line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: usize,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    pub epsilon: Option<f64>,
    pub eps_min: Option<f64>,
    pub eps_max: Option<f64>,
    pub steps: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub vectors: Vec<usize>,
    pub at: Vec<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::NoConvergence { .. } | SpectraError::Degenerate(_) => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl RunConfig {
    pub fn from_command(cmd: Command) -> Result<Self, CliError> {
        let base = |command, n, format, output_path| RunConfig {
            command,
            n,
            m1: None,
            m2: None,
            epsilon: None,
            eps_min: None,
            eps_max: None,
            steps: None,
            output_path,
            format,
            vectors: Vec::new(),
            at: Vec::new(),
        };
        let cfg = match cmd {
            Command::Spectrum { n, out } => base(CommandKind::Spectrum, n, out.format, out.output),
            Command::Perturb { pair, epsilon, out } => RunConfig {
                m1: Some(pair.m1),
                m2: Some(pair.m2),
                epsilon: Some(epsilon),
                ..base(CommandKind::Perturb, pair.n, out.format, out.output)
            },
            Command::Sweep { pair, range, out } => RunConfig {
                m1: Some(pair.m1),
                m2: Some(pair.m2),
                eps_min: Some(range.eps_min),
                eps_max: Some(range.eps_max),
                steps: Some(range.steps),
                ..base(CommandKind::Sweep, pair.n, out.format, out.output)
            },
            Command::Track {
                pair,
                range,
                vectors,
                at,
                out,
            } => RunConfig {
                m1: Some(pair.m1),
                m2: Some(pair.m2),
                eps_min: Some(range.eps_min),
                eps_max: Some(range.eps_max),
                steps: Some(range.steps),
                vectors,
                at,
                ..base(CommandKind::Track, pair.n, out.format, out.output)
            },
            Command::Validate { max_n, output } => {
                base(CommandKind::Validate, max_n, Format::Csv, output)
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.command != CommandKind::Validate && self.n < 2 {
            return usage(format!("--n must be at least 2, got {}", self.n));
        }
        if self.command == CommandKind::Validate && self.n < 1 {
            return usage("--max-n must be at least 1".into());
        }
        if let (Some(lo), Some(hi)) = (self.eps_min, self.eps_max) {
            if !(lo.is_finite() && hi.is_finite()) {
                return usage("--eps-min and --eps-max must be finite".into());
            }
            if lo >= hi {
                return usage(format!(
                    "--eps-min ({lo}) must be smaller than --eps-max ({hi})"
                ));
            }
        }
        if let Some(s) = self.steps {
            if s < 2 {
                return usage(format!("--steps must be at least 2, got {s}"));
            }
        }
        if self.command == CommandKind::Sweep && self.eps_min.is_some_and(|e| e <= 0.0) {
            return usage("sweep needs --eps-min > 0 (the error divides by ε²)".into());
        }
        if self.command == CommandKind::Track {
            if let Some(&bad) = self.vectors.iter().find(|&&v| v < 1 || v > self.n) {
                return usage(format!("--vectors entry {bad} outside 1..={}", self.n));
            }
        }
        if let Some(e) = self.epsilon {
            if !e.is_finite() {
                return usage("--epsilon must be finite".into());
            }
        }
        Ok(())
    }

    fn pair(&self) -> (usize, usize) {
        (self.m1.unwrap_or(0), self.m2.unwrap_or(0))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = RunConfig::from_command(cli.command).and_then(|cfg| execute(&cfg, stdout, stderr));
    match result {
        Ok(code) => code,
        Err(e) => {
            let (kind, msg) = match &e {
                CliError::Usage(m) => ("error", m),
                CliError::Numerical(m) => ("numerical failure", m),
            };
            let _ = writeln!(stderr, "linegraph: {kind}: {msg}");
            if matches!(e, CliError::Usage(_)) {
                let _ = writeln!(stderr, "Run `linegraph --help` for usage.");
            }
            e.exit_code()
        }
    }
}

/// Runs a validated config. Returns the exit code for a completed run.
pub fn execute(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let (payload, code) = match cfg.command {
        CommandKind::Spectrum => cmd_spectrum(cfg, stderr)?,
        CommandKind::Perturb => cmd_perturb(cfg, stderr)?,
        CommandKind::Sweep => cmd_sweep(cfg, stderr)?,
        CommandKind::Track => cmd_track(cfg, stderr)?,
        CommandKind::Validate => cmd_validate(cfg, stderr)?,
    };
    emit(cfg, &payload, stdout)?;
    Ok(code)
}

fn emit(cfg: &RunConfig, payload: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output_path {
        Some(p) => fs::write(p, payload)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(payload.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}"))),
    }
}

/// 17 significant digits: enough to round-trip every f64.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_table(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))
}

fn to_json(value: &impl Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("json encoding failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    k: usize,
    theta_k: f64,
    lambda_closed_form: f64,
    lambda_oracle: f64,
    abs_diff: f64,
}

pub fn cmd_spectrum(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), CliError> {
    let n = cfg.n;
    let graph = LineGraphSpec::canonical(n)?;
    let closed = ClosedFormSpectrum::for_graph(&graph)?;
    let oracle = eig_symmetric(&build_laplacian(&graph)?)?;
    let rows: Vec<SpectrumRow> = closed
        .entries
        .iter()
        .map(|e| {
            let o = oracle.eigenvalues[ascending_position(n, e.k)];
            SpectrumRow {
                k: e.k,
                theta_k: e.theta,
                lambda_closed_form: e.lambda,
                lambda_oracle: o,
                abs_diff: (e.lambda - o).abs(),
            }
        })
        .collect();
    let max_diff = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    let code = if max_diff <= SPECTRUM_AGREEMENT_TOL {
        EXIT_OK
    } else {
        let _ = writeln!(
            stderr,
            "linegraph: closed form and oracle differ by {max_diff:e} (> {SPECTRUM_AGREEMENT_TOL:e})"
        );
        EXIT_NUMERICAL
    };

    let payload = match cfg.format {
        Format::Csv => csv_table(
            &[
                "k",
                "theta_k",
                "lambda_closed_form",
                "lambda_oracle",
                "abs_diff",
            ],
            rows.iter().map(|r| {
                vec![
                    r.k.to_string(),
                    fmt_num(r.theta_k),
                    fmt_num(r.lambda_closed_form),
                    fmt_num(r.lambda_oracle),
                    fmt_num(r.abs_diff),
                ]
            }),
        )?,
        Format::Json => to_json(&json!({
            "command": "spectrum",
            "n": n,
            "ordering": "eq14-descending",
            "max_abs_diff": max_diff,
            "rows": rows,
        }))?,
        Format::Svg => Plot::new(
            format!("Line graph spectrum, n = {n}"),
            "index k",
            "eigenvalue",
        )
        .with_series(Series::new(
            "closed form",
            rows.iter()
                .map(|r| (r.k as f64, r.lambda_closed_form))
                .collect(),
            BLUE,
            Style::Markers,
        ))
        .with_series(Series::new(
            "oracle",
            rows.iter().map(|r| (r.k as f64, r.lambda_oracle)).collect(),
            RED,
            Style::OpenMarkers,
        ))
        .render(),
    };
    Ok((payload, code))
}

#[derive(Debug, Serialize)]
struct PerturbRow {
    k: usize,
    lambda0: f64,
    lambda_prime: f64,
    predicted: f64,
    oracle: f64,
    residual: f64,
    /// Absent for ε = 0.
    residual_over_eps2: Option<f64>,
}

fn oracle_quality_ok(
    a: &crate::matrix::SymmetricMatrix,
    d: &crate::eigen::EigenDecomposition,
) -> bool {
    d.residual_bound <= ORACLE_RESIDUAL_REL_TOL * a.max_abs().max(1.0)
}

pub fn cmd_perturb(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), CliError> {
    let n = cfg.n;
    let (m1, m2) = cfg.pair();
    let eps = cfg.epsilon.unwrap_or(0.0);
    let graph = LineGraphSpec::canonical(n)?;
    let pert = PerturbationSpec::new(m1, m2, eps)?;
    let predictions = predict_spectrum(&graph, &pert)?;
    let a = build_perturbed_laplacian(&graph, &pert)?;
    let d = eig_symmetric(&a)?;

    let rows: Vec<PerturbRow> = predictions
        .iter()
        .map(|p| {
            let oracle = d.eigenvalues[ascending_position(n, p.k)];
            let residual = oracle - p.predicted;
            PerturbRow {
                k: p.k,
                lambda0: p.lambda0,
                lambda_prime: p.lambda_prime,
                predicted: p.predicted,
                oracle,
                residual,
                residual_over_eps2: (eps != 0.0).then(|| residual / (eps * eps)),
            }
        })
        .collect();

    let mut code = EXIT_OK;
    if !oracle_quality_ok(&a, &d) {
        let _ = writeln!(
            stderr,
            "linegraph: oracle residual {:e} too large",
            d.residual_bound
        );
        code = EXIT_NUMERICAL;
    }

    let payload = match cfg.format {
        Format::Csv => csv_table(
            &[
                "k",
                "lambda0",
                "lambda_prime",
                "predicted",
                "oracle",
                "residual",
                "residual_over_eps2",
            ],
            rows.iter().map(|r| {
                vec![
                    r.k.to_string(),
                    fmt_num(r.lambda0),
                    fmt_num(r.lambda_prime),
                    fmt_num(r.predicted),
                    fmt_num(r.oracle),
                    fmt_num(r.residual),
                    r.residual_over_eps2.map(fmt_num).unwrap_or_default(),
                ]
            }),
        )?,
        Format::Json => to_json(&json!({
            "command": "perturb",
            "n": n, "m1": pert.m1(), "m2": pert.m2(), "epsilon": eps,
            "ordering": "eq14-descending",
            "oracle_residual_bound": d.residual_bound,
            "rows": rows,
        }))?,
        Format::Svg => {
            // Ascending rank on the x axis, as in an eigenvalue index plot.
            let by_rank = |f: &dyn Fn(&PerturbRow) -> f64| -> Vec<(f64, f64)> {
                rows.iter().map(|r| ((n - r.k + 1) as f64, f(r))).collect()
            };
            Plot::new(
                format!(
                    "Eigenvalues, n = {n}, edge ({}, {}), ε = {eps}",
                    pert.m1(),
                    pert.m2()
                ),
                "eigenvalue index (ascending)",
                "eigenvalue",
            )
            .with_series(Series::new(
                "unperturbed",
                by_rank(&|r| r.lambda0),
                BLUE,
                Style::Markers,
            ))
            .with_series(Series::new(
                "perturbed (oracle)",
                by_rank(&|r| r.oracle),
                RED,
                Style::Markers,
            ))
            .with_series(Series::new(
                "first-order prediction",
                by_rank(&|r| r.predicted),
                "#000000",
                Style::OpenMarkers,
            ))
            .render()
        }
    };
    Ok((payload, code))
}

fn sweep_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let h = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + i as f64 * h
            }
        })
        .collect()
}

fn sweep_payload(cfg: &RunConfig, r: &ErrorStudyResult) -> Result<String, CliError> {
    Ok(match cfg.format {
        Format::Csv => {
            let mut rows = Vec::new();
            for (i, e) in r.epsilons.iter().enumerate() {
                for s in &r.series {
                    rows.push(vec![fmt_num(*e), s.k.to_string(), fmt_num(s.errors[i])]);
                }
            }
            csv_table(&["epsilon", "k", "E"], rows)?
        }
        Format::Json => to_json(&json!({
            "command": "sweep",
            "n": r.graph.n(), "m1": r.m1, "m2": r.m2,
            "ordering": "eq14-descending",
            "epsilons": r.epsilons,
            "series": r.series.iter().map(|s| json!({
                "k": s.k, "lambda0": s.lambda0, "lambda_prime": s.lambda_prime,
                "oracle": s.oracle, "E": s.errors,
            })).collect::<Vec<_>>(),
            "fitted_constant": r.fitted_constant(),
            "small_epsilon_E": r.small_epsilon_limit(),
            "degenerate_steps": r.degenerate_steps,
        }))?,
        Format::Svg => {
            let mut plot = Plot::new(
                format!(
                    "Second-order error, n = {}, edge ({}, {})",
                    r.graph.n(),
                    r.m1,
                    r.m2
                ),
                "ε",
                "E = (λ(ε) − λ(0) − ελ′(0)) / ε²",
            );
            for (i, s) in r.series.iter().enumerate() {
                plot.series.push(Series::new(
                    format!("k = {}", s.k),
                    r.epsilons
                        .iter()
                        .copied()
                        .zip(s.errors.iter().copied())
                        .collect(),
                    PALETTE[i % PALETTE.len()],
                    Style::LineMarkers,
                ));
            }
            plot.render()
        }
    })
}

pub fn cmd_sweep(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), CliError> {
    let graph = LineGraphSpec::canonical(cfg.n)?;
    let (lo, hi, steps) = (
        cfg.eps_min.unwrap(),
        cfg.eps_max.unwrap(),
        cfg.steps.unwrap(),
    );
    let r = error_study(&graph, cfg.pair(), &sweep_grid(lo, hi, steps))?;
    let mut code = EXIT_OK;
    if r.series
        .iter()
        .flat_map(|s| &s.errors)
        .any(|e| !e.is_finite())
    {
        let _ = writeln!(stderr, "linegraph: non-finite error value in sweep");
        code = EXIT_NUMERICAL;
    }
    if !r.degenerate_steps.is_empty() {
        let _ = writeln!(
            stderr,
            "linegraph: degenerate spectrum at sweep points {:?}",
            r.degenerate_steps
        );
    }
    let _ = writeln!(
        stderr,
        "fitted C = {:.6e}; E at smallest ε: {:?}",
        r.fitted_constant(),
        r.small_epsilon_limit()
    );
    Ok((sweep_payload(cfg, &r)?, code))
}

fn default_overlay(lo: f64, hi: f64) -> Vec<f64> {
    [0.0, 0.5, 0.75, 1.0]
        .iter()
        .map(|f| lo + f * (hi - lo))
        .collect()
}

fn track_payload(cfg: &RunConfig, r: &ContinuationResult) -> Result<String, CliError> {
    let n = r.n;
    Ok(match cfg.format {
        Format::Csv => {
            let mut rows = Vec::with_capacity(r.steps.len() * n * n);
            for (i, s) in r.steps.iter().enumerate() {
                let degenerate = r.degeneracy_flags.contains(&i);
                for k in 1..=n {
                    let flipped = r.flip_events.iter().any(|f| f.step == i && f.k == k);
                    for (c, x) in s.eigenvectors[k - 1].iter().enumerate() {
                        rows.push(vec![
                            i.to_string(),
                            fmt_num(s.epsilon),
                            k.to_string(),
                            fmt_num(s.eigenvalues[k - 1]),
                            (c + 1).to_string(),
                            fmt_num(*x),
                            flipped.to_string(),
                            degenerate.to_string(),
                        ]);
                    }
                }
            }
            csv_table(
                &[
                    "step",
                    "epsilon",
                    "k",
                    "lambda",
                    "vertex",
                    "component",
                    "flipped",
                    "degenerate",
                ],
                rows,
            )?
        }
        Format::Json => to_json(&json!({
            "command": "track",
            "n": n, "m1": r.m1, "m2": r.m2,
            "ordering": "eq14-descending",
            "epsilons": r.epsilons,
            "flip_events": r.flip_events,
            "degeneracy_flags": r.degeneracy_flags,
            "step_changes": r.step_changes,
            "steps": r.steps,
        }))?,
        Format::Svg => {
            let overlay = if cfg.at.is_empty() {
                default_overlay(r.epsilons[0], *r.epsilons.last().unwrap())
            } else {
                cfg.at.clone()
            };
            let picks: Vec<usize> = overlay
                .iter()
                .map(|&e| {
                    (0..r.epsilons.len())
                        .min_by(|&a, &b| {
                            (r.epsilons[a] - e)
                                .abs()
                                .total_cmp(&(r.epsilons[b] - e).abs())
                        })
                        .unwrap()
                })
                .collect();
            let panels: Vec<Plot> = cfg
                .vectors
                .iter()
                .map(|&rank| {
                    let k = n + 1 - rank;
                    let mut p = Plot::new(
                        format!("eigenvector {rank} (k = {k})"),
                        "vertex",
                        "component",
                    );
                    for (j, &step) in picks.iter().enumerate() {
                        let v = &r.steps[step].eigenvectors[k - 1];
                        let color = if j == 0 {
                            BLUE
                        } else {
                            PALETTE[(j + 1) % PALETTE.len()]
                        };
                        let color = if j + 1 == picks.len() && j > 0 {
                            RED
                        } else {
                            color
                        };
                        p.series.push(Series::new(
                            format!("ε = {:.3}", r.epsilons[step]),
                            v.iter()
                                .enumerate()
                                .map(|(i, x)| ((i + 1) as f64, *x))
                                .collect(),
                            color,
                            Style::Line,
                        ));
                    }
                    p
                })
                .collect();
            render_grid(&panels, 2)
        }
    })
}

pub fn cmd_track(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), CliError> {
    let graph = LineGraphSpec::canonical(cfg.n)?;
    let (lo, hi, steps) = (
        cfg.eps_min.unwrap(),
        cfg.eps_max.unwrap(),
        cfg.steps.unwrap(),
    );
    let r = track_eigenvectors(&graph, cfg.pair(), lo, hi, steps)?;
    if !r.degeneracy_flags.is_empty() {
        let _ = writeln!(
            stderr,
            "linegraph: spectrum not simple at steps {:?}",
            r.degeneracy_flags
        );
    }
    let _ = writeln!(
        stderr,
        "{} sign corrections; max step change {:.6e}",
        r.flip_events.len(),
        r.max_step_change()
    );
    Ok((track_payload(cfg, &r)?, EXIT_OK))
}

pub fn cmd_validate(cfg: &RunConfig, stderr: &mut dyn Write) -> Result<(String, i32), CliError> {
    let outcomes = IdentitySuite::with_max_n(cfg.n).run();
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.to_string());
        text.push('\n');
    }
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
    let code = if failed.is_empty() {
        EXIT_OK
    } else {
        for f in &failed {
            let _ = writeln!(
                stderr,
                "linegraph: identity family '{}' failed at {}",
                f.name,
                f.witness.as_deref().unwrap_or("?")
            );
        }
        EXIT_NUMERICAL
    };
    Ok((text, code))
}
