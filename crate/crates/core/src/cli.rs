//! Command-line front end: `sample`, `verify`, `integrate`, `geometry` and
//! `analytic`.
//!
//! Exit codes: 0 success, 1 a check failed (the report is still written),
//! 2 usage error, 3 I/O error. `LEMNICHOR_SEED` is reserved; nothing here is
//! random.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytic;
use crate::dynamics::{self, Configuration, PotentialVariant};
use crate::elliptic::EllipticContext;
use crate::export;
use crate::geometry::{self, GeometrySample, TangencyCandidate};
use crate::invariants;
use crate::orbit;
use crate::tolerance::Tolerances;
use crate::vec2::Vec2;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum InitSource {
    Analytic,
    File,
}

#[derive(Debug, Parser)]
#[command(
    name = "lemnichor",
    version,
    about = "Three-body choreography on the lemniscate"
)]
pub struct Cli {
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Output format (csv for data, json for reports by default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Number of samples over one period.
    #[arg(long, global = true)]
    pub n_samples: Option<usize>,
    /// Multiply every tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub tolerance_scale: f64,
    /// Export positions as x x̂ + k² y ŷ.
    #[arg(long, global = true)]
    pub affine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Positions and velocities at t = j·4K/n.
    Sample,
    /// Conserved quantities and equation-of-motion residuals over a period.
    Verify,
    /// Velocity-Verlet integration.
    Integrate {
        #[arg(long, default_value = "U")]
        variant: PotentialVariant,
        /// Step size (default 4K/65536).
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 65536)]
        steps: usize,
        #[arg(long, value_enum, default_value = "analytic")]
        init: InitSource,
        /// JSON configuration used with `--init file`.
        #[arg(long)]
        init_path: Option<PathBuf>,
        /// Write every n-th step.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Tangent-line geometry: a sweep, or a construction from c or from one body.
    Geometry {
        /// Concurrency point `cx,cy` to rebuild the triple from.
        #[arg(long, value_parser = parse_point, conflicts_with = "from_point")]
        from_c: Option<Vec2>,
        /// Phase of body 1 to rebuild the triple from.
        #[arg(long)]
        from_point: Option<f64>,
    },
    /// Special values, residues, principal parts and pole census.
    Analytic,
}

fn parse_point(s: &str) -> Result<Vec2, String> {
    let (a, b) = s.split_once(',').ok_or("expected cx,cy")?;
    let x = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let y = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Vec2::new(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommandKind {
    Sample,
    Verify,
    Integrate,
    Geometry,
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum GeometryMode {
    Sweep,
    FromC(Vec2),
    FromPoint(f64),
}

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n_samples: usize,
    pub dt: f64,
    pub steps: usize,
    pub stride: usize,
    pub variant: PotentialVariant,
    pub init: InitSource,
    pub init_path: Option<PathBuf>,
    pub geometry: GeometryMode,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub affine: bool,
    pub tolerances: Tolerances,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli, ctx: &EllipticContext) -> Result<Self, CliError> {
        let usage = |m: &str| Err(CliError::Usage(m.to_string()));
        if !(cli.tolerance_scale > 0.0 && cli.tolerance_scale.is_finite()) {
            return usage("--tolerance-scale must be positive");
        }
        let (command, default_n, default_format) = match cli.command {
            Command::Sample => (CommandKind::Sample, 12, Format::Csv),
            Command::Verify => (CommandKind::Verify, 1000, Format::Json),
            Command::Integrate { .. } => (CommandKind::Integrate, 1, Format::Csv),
            Command::Geometry { .. } => (CommandKind::Geometry, 200, Format::Csv),
            Command::Analytic => (CommandKind::Analytic, 1, Format::Json),
        };
        let n_samples = cli.n_samples.unwrap_or(default_n);
        if n_samples < 1 {
            return usage("--n-samples must be at least 1");
        }
        let mut config = RunConfig {
            command,
            n_samples,
            dt: ctx.period() / 65536.0,
            steps: 65536,
            stride: 1,
            variant: PotentialVariant::UCentral,
            init: InitSource::Analytic,
            init_path: None,
            geometry: GeometryMode::Sweep,
            output_path: cli.output.clone(),
            format: cli.format.unwrap_or(default_format),
            affine: cli.affine,
            tolerances: Tolerances::default().scaled(cli.tolerance_scale),
        };
        match &cli.command {
            Command::Integrate {
                variant,
                dt,
                steps,
                init,
                init_path,
                stride,
            } => {
                if let Some(dt) = *dt {
                    if !(dt > 0.0 && dt.is_finite()) {
                        return usage("--dt must be positive");
                    }
                    config.dt = dt;
                }
                if *steps < 1 {
                    return usage("--steps must be at least 1");
                }
                if *stride < 1 {
                    return usage("--stride must be at least 1");
                }
                if *init == InitSource::File && init_path.is_none() {
                    return usage("--init file needs --init-path");
                }
                config.variant = *variant;
                config.steps = *steps;
                config.stride = *stride;
                config.init = *init;
                config.init_path = init_path.clone();
            }
            Command::Geometry { from_c, from_point } => {
                config.geometry = match (from_c, from_point) {
                    (Some(c), None) => GeometryMode::FromC(*c),
                    (None, Some(s)) => GeometryMode::FromPoint(*s),
                    _ => GeometryMode::Sweep,
                };
            }
            _ => {}
        }
        Ok(config)
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// One line of the `verify` report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyEntry {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_samples: usize,
    pub m: f64,
    pub entries: Vec<VerifyEntry>,
    pub pass: bool,
}

fn entry(name: &str, max_residual: f64, tolerance: f64) -> VerifyEntry {
    VerifyEntry {
        name: name.to_string(),
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    }
}

/// Conserved quantities, equation of motion and energy over `n` samples.
pub fn verify_report(n: usize, ctx: &EllipticContext, tol: &Tolerances) -> VerifyReport {
    let reports = invariants::sweep(n, ctx);
    let mut entries: Vec<VerifyEntry> = invariants::max_residuals(&reports)
        .into_iter()
        .map(|(k, v)| entry(k, v, invariants::InvariantReport::tolerance_for(k, tol)))
        .collect();

    let ts: Vec<f64> = (0..n).map(|j| j as f64 * ctx.period() / n as f64).collect();
    let worst = |f: &dyn Fn(f64) -> Option<f64>| {
        ts.iter()
            .map(|&t| f(t).unwrap_or(f64::NAN))
            .fold(0.0f64, |a, b| {
                if b.is_nan() || a.is_nan() {
                    f64::NAN
                } else {
                    a.max(b)
                }
            })
    };
    for v in PotentialVariant::ALL {
        let r = worst(&|t| dynamics::eom_residual(t, v, ctx).ok());
        entries.push(entry(&format!("eom_{v}"), r, tol.eom));
    }
    entries.push(entry(
        "variant_agreement",
        worst(&|t| dynamics::variant_disagreement(t, ctx).ok()),
        tol.variant_agreement,
    ));
    // both potentials give ¼ ln(3√3/2) on the orbit
    let energy = 0.25 * (1.5 * 3f64.sqrt()).ln();
    for v in PotentialVariant::ALL {
        let r = worst(&|t| {
            let s = orbit::triple(t, ctx);
            dynamics::total_energy(&s.positions(), &s.velocities(), v)
                .ok()
                .map(|e| (e - energy).abs())
        });
        entries.push(entry(&format!("energy_{v}"), r, tol.energy));
    }
    let pass = entries.iter().all(|e| e.pass);
    VerifyReport {
        n_samples: n,
        m: ctx.m(),
        entries,
        pass,
    }
}

/// Summary written next to an integration run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegrationMeta {
    pub variant: PotentialVariant,
    pub dt: f64,
    pub steps: usize,
    pub stride: usize,
    pub init: InitSource,
    pub completed_steps: usize,
    pub error: Option<String>,
    pub max_energy_drift: f64,
    pub max_angular_momentum_drift: f64,
    /// Largest body distance between the last and the first sample.
    pub return_error: f64,
    /// Whether `steps · dt` spans a whole number of periods.
    pub whole_periods: bool,
    pub return_tolerance: f64,
    /// Largest distance from the analytic orbit (analytic start only).
    pub max_error_against_orbit: Option<f64>,
    pub pass: bool,
}

fn read_configuration(path: &Path) -> Result<Configuration, CliError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad configuration file: {e}")))
}

fn run_integrate(config: &RunConfig, ctx: &EllipticContext) -> Result<u8, CliError> {
    let init = match config.init {
        InitSource::Analytic => Configuration::analytic(0.0, ctx),
        InitSource::File => read_configuration(config.init_path.as_deref().expect("validated"))?,
    };
    let (traj, error, completed) =
        match dynamics::integrate(&init, config.variant, config.dt, config.steps) {
            Ok(t) => (t, None, config.steps),
            Err(f) => (
                f.partial.clone(),
                Some(f.to_string()),
                f.step.saturating_sub(1),
            ),
        };

    let periods = config.dt * config.steps as f64 / ctx.period();
    let whole_periods =
        error.is_none() && (periods - periods.round()).abs() < 1e-9 && periods.round() >= 1.0;
    let return_error = match (traj.first(), traj.last()) {
        (Some(a), Some(b)) => a.state.max_position_distance(&b.state),
        _ => f64::NAN,
    };
    let tol = config.tolerances.integration_return;
    let pass = error.is_none() && (!whole_periods || return_error <= tol);
    let meta = IntegrationMeta {
        variant: config.variant,
        dt: config.dt,
        steps: config.steps,
        stride: config.stride,
        init: config.init,
        completed_steps: completed,
        error,
        max_energy_drift: traj.max_energy_drift(),
        max_angular_momentum_drift: traj.max_angular_momentum_drift(),
        return_error,
        whole_periods,
        return_tolerance: tol,
        max_error_against_orbit: (config.init == InitSource::Analytic)
            .then(|| traj.max_error_against_orbit(0.0, ctx)),
        pass,
    };

    let affine = config.affine.then_some(ctx);
    let mut out = open_output(config.output_path.as_deref())?;
    match config.format {
        Format::Csv => export::write_rows(
            &mut out,
            &export::TRAJECTORY_HEADER,
            traj.samples
                .iter()
                .step_by(config.stride)
                .map(|s| export::trajectory_row(s, affine)),
        )?,
        Format::Json => {
            let samples: Vec<_> = traj.samples.iter().step_by(config.stride).collect();
            export::write_json(&mut out, &samples)?
        }
    }
    out.flush()?;
    drop(out);

    match &config.output_path {
        Some(p) => {
            let mut side = p.clone().into_os_string();
            side.push(".meta.json");
            export::write_json(BufWriter::new(File::create(PathBuf::from(side))?), &meta)?;
        }
        None => export::write_json(io::stderr().lock(), &meta)?,
    }
    eprintln!(
        "return error after {:.6} periods: {:.3e} (energy drift {:.3e})",
        periods, meta.return_error, meta.max_energy_drift
    );
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Checks applied to a geometry sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometrySummary {
    pub samples: usize,
    pub degenerate: usize,
    pub max_concurrency_residual: f64,
    pub max_hyperbola_residual: f64,
    pub quadrant_violations: usize,
    pub pass: bool,
}

pub fn geometry_summary(samples: &[GeometrySample], tol: &Tolerances) -> GeometrySummary {
    let good: Vec<&GeometrySample> = samples.iter().filter(|g| !g.is_degenerate()).collect();
    let max_c = good
        .iter()
        .map(|g| g.concurrency_residual)
        .fold(0.0, f64::max);
    let max_h = good
        .iter()
        .map(|g| g.hyperbola_residual.abs())
        .fold(0.0, f64::max);
    let violations = good.iter().filter(|g| !g.quadrants_distinct()).count();
    GeometrySummary {
        samples: samples.len(),
        degenerate: samples.len() - good.len(),
        max_concurrency_residual: max_c,
        max_hyperbola_residual: max_h,
        quadrant_violations: violations,
        pass: max_c <= tol.concurrency && max_h <= tol.hyperbola && violations == 0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct CandidateOut {
    s: f64,
    x: f64,
    y: f64,
    quadrant: u8,
    chosen: bool,
}

fn candidate_rows(cands: &[TangencyCandidate], chosen: &[TangencyCandidate]) -> Vec<CandidateOut> {
    cands
        .iter()
        .map(|k| CandidateOut {
            s: k.s,
            x: k.point.x,
            y: k.point.y,
            quadrant: k.quadrant.map_or(0, |q| q.number()),
            chosen: chosen.iter().any(|c| c.s == k.s),
        })
        .collect()
}

fn run_geometry(config: &RunConfig, ctx: &EllipticContext) -> Result<u8, CliError> {
    let mut out = open_output(config.output_path.as_deref())?;
    match config.geometry {
        GeometryMode::Sweep => {
            let n = config.n_samples;
            let samples = geometry::sweep(n, 0.5 * ctx.period() / n as f64, ctx);
            let summary = geometry_summary(&samples, &config.tolerances);
            match config.format {
                Format::Csv => export::write_rows(
                    &mut out,
                    &export::GEOMETRY_HEADER,
                    samples.iter().map(export::geometry_row),
                )?,
                Format::Json => export::write_json(&mut out, &samples)?,
            }
            out.flush()?;
            export::write_json(io::stderr().lock(), &summary)?;
            Ok(if summary.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        GeometryMode::FromC(c) => {
            let cands = match geometry::tangents_from_point(c, ctx) {
                Ok(k) => k,
                Err(e) => return failure(&e.to_string()),
            };
            let chosen = geometry::select_choreographic(c, &cands, ctx);
            let rows = candidate_rows(&cands, chosen.as_ref().map(|k| &k[..]).unwrap_or(&[]));
            write_candidates(&mut out, config.format, &rows)?;
            match chosen {
                Ok(_) => Ok(EXIT_OK),
                Err(e) => failure(&e.to_string()),
            }
        }
        GeometryMode::FromPoint(s) => match geometry::complete_triple_from_point(s, ctx) {
            Ok(done) => {
                let x1 = orbit::position(s, ctx);
                let rows = vec![
                    CandidateOut {
                        s,
                        x: x1.x,
                        y: x1.y,
                        quadrant: geometry::Quadrant::of(x1).map_or(0, |q| q.number()),
                        chosen: true,
                    },
                    candidate_out(done.phases[0], done.positions[0]),
                    candidate_out(done.phases[1], done.positions[1]),
                ];
                match config.format {
                    Format::Csv => write_candidates(&mut out, config.format, &rows)?,
                    Format::Json => export::write_json(&mut out, &done)?,
                }
                Ok(EXIT_OK)
            }
            Err(e) => failure(&e.to_string()),
        },
    }
}

fn candidate_out(s: f64, p: Vec2) -> CandidateOut {
    CandidateOut {
        s,
        x: p.x,
        y: p.y,
        quadrant: geometry::Quadrant::of(p).map_or(0, |q| q.number()),
        chosen: true,
    }
}

fn write_candidates(out: &mut dyn Write, format: Format, rows: &[CandidateOut]) -> io::Result<()> {
    match format {
        Format::Csv => export::write_records(
            out,
            &["s", "x", "y", "quadrant", "chosen"],
            rows.iter().map(|r| {
                vec![
                    export::format_value(r.s),
                    export::format_value(r.x),
                    export::format_value(r.y),
                    r.quadrant.to_string(),
                    r.chosen.to_string(),
                ]
            }),
        ),
        Format::Json => export::write_json(out, rows),
    }
}

fn failure(message: &str) -> Result<u8, CliError> {
    #[derive(Serialize)]
    struct Failure<'a> {
        error: &'a str,
    }
    export::write_json(io::stderr().lock(), &Failure { error: message })?;
    Ok(EXIT_CHECK_FAILED)
}

fn run_inner(config: &RunConfig, ctx: &EllipticContext) -> Result<u8, CliError> {
    let tol = &config.tolerances;
    match config.command {
        CommandKind::Sample => {
            let n = config.n_samples;
            let states: Vec<_> = (0..n)
                .map(|j| orbit::triple(j as f64 * ctx.period() / n as f64, ctx))
                .collect();
            let affine = config.affine.then_some(ctx);
            let mut out = open_output(config.output_path.as_deref())?;
            match config.format {
                Format::Csv => export::write_rows(
                    &mut out,
                    &export::SAMPLE_HEADER,
                    states.iter().map(|s| export::sample_row(s, affine)),
                )?,
                Format::Json => {
                    let states: Vec<_> = states
                        .into_iter()
                        .map(|mut s| {
                            if let Some(ctx) = affine {
                                for b in &mut s.bodies {
                                    b.pos = orbit::affine_scaled(b.pos, ctx);
                                }
                            }
                            s
                        })
                        .collect();
                    export::write_json(&mut out, &states)?
                }
            }
            Ok(EXIT_OK)
        }
        CommandKind::Verify => {
            let report = verify_report(config.n_samples, ctx, tol);
            let mut out = open_output(config.output_path.as_deref())?;
            match config.format {
                Format::Json => export::write_json(&mut out, &report)?,
                Format::Csv => export::write_records(
                    &mut out,
                    &["name", "max_residual", "tolerance", "pass"],
                    report.entries.iter().map(|e| {
                        vec![
                            e.name.clone(),
                            export::format_value(e.max_residual),
                            export::format_value(e.tolerance),
                            e.pass.to_string(),
                        ]
                    }),
                )?,
            }
            out.flush()?;
            if !report.pass {
                let failed: Vec<_> = report.entries.iter().filter(|e| !e.pass).collect();
                export::write_json(io::stderr().lock(), &failed)?;
            }
            Ok(if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        CommandKind::Integrate => run_integrate(config, ctx),
        CommandKind::Geometry => run_geometry(config, ctx),
        CommandKind::Analytic => {
            let report = analytic::full_report(ctx, tol);
            let mut out = open_output(config.output_path.as_deref())?;
            match config.format {
                Format::Json => export::write_json(&mut out, &report)?,
                Format::Csv => export::write_records(
                    &mut out,
                    &[
                        "name",
                        "claimed_re",
                        "claimed_im",
                        "observed_re",
                        "observed_im",
                        "residual",
                        "tolerance",
                        "pass",
                    ],
                    report.records.iter().map(|r| {
                        vec![
                            r.name.clone(),
                            export::format_value(r.claimed.re),
                            export::format_value(r.claimed.im),
                            export::format_value(r.observed.re),
                            export::format_value(r.observed.im),
                            export::format_value(r.residual),
                            export::format_value(r.tolerance),
                            r.pass.to_string(),
                        ]
                    }),
                )?,
            }
            out.flush()?;
            if !report.passes() {
                export::write_json(io::stderr().lock(), &report.failures())?;
            }
            Ok(if report.passes() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

/// Executes one validated configuration and returns the exit code.
pub fn run(config: &RunConfig) -> u8 {
    let ctx = EllipticContext::choreographic();
    match run_inner(config, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lemnichor: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let ctx = EllipticContext::choreographic();
    match RunConfig::from_cli(&cli, &ctx) {
        Ok(config) => run(&config),
        Err(e) => {
            eprintln!("lemnichor: {e}");
            e.exit_code()
        }
    }
}
