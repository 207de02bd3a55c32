//! Batch commands behind the `crosslab` binary.
//!
//! Exit codes: 0 success, 1 a threshold was violated, 2 unusable config or
//! arguments, 3 a computation failed. Failures print a JSON record
//! `{"error": {"code", "message"}}` on stderr and to `error.json` in the
//! output directory.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::acceptance;
use crate::config::{self, EnvelopeConfig, ExtremalConfig, VerifyConfig};
use crate::cross::{connected_components, cross_envelope, envelope_mask};
use crate::error::{Error, Result};
use crate::extension::{
    cauchy_reconstruct, fit_rational, local_cross, local_overlap_consistency, sample_cross,
    uniqueness_residual, Holomorphic, SamplingStrategy,
};
use crate::extremal::{solve_specs, ScalarField};
use crate::singularity::envelope_trace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "crosslab", version, about = "Cross envelopes, extremal functions and extension checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: GlobalOpts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative extremal function of a condenser.
    Extremal,
    /// Envelope of a cross on a product grid.
    Envelope,
    /// Sample, fit and verify an extension.
    Verify,
    /// Run the acceptance criteria.
    Suite,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// JSON config (required except for `suite`).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory; created if missing.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Sampling seed override.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Worker threads (default: logical CPUs).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Solver tolerance override.
    #[arg(long, global = true, value_name = "X")]
    pub tol: Option<f64>,
}

fn write_json<T: Serialize>(dir: Option<&Path>, name: &str, value: &T) -> Result<String> {
    let text = config::to_canonical_json(value)?;
    if let Some(dir) = dir {
        fs::write(dir.join(name), &text)?;
    }
    Ok(text)
}

fn create<F>(dir: Option<&Path>, name: &str, write: F) -> Result<()>
where
    F: FnOnce(BufWriter<File>) -> std::io::Result<()>,
{
    if let Some(dir) = dir {
        write(BufWriter::new(File::create(dir.join(name))?))?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalSummary {
    pub max: f64,
    pub min: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Writes `field.csv`, `field.pgm` and `summary.json`.
pub fn cmd_extremal(cfg: &ExtremalConfig, out: Option<&Path>) -> Result<ExtremalSummary> {
    cfg.validate()?;
    let field = solve_specs(&cfg.omega, &cfg.a, &cfg.grid, &cfg.solver)?;
    create(out, "field.csv", |w| field.write_csv(w))?;
    create(out, "field.pgm", |w| field.write_pgm(w))?;
    let summary = ExtremalSummary {
        max: field.max(),
        min: field.min(),
        iterations: field.iterations,
        residual: field.residual,
    };
    write_json(out, "summary.json", &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeSummary {
    /// Flagged pairs over pairs of the product domain `D×G`.
    pub volume_fraction: f64,
    pub component_count: usize,
    pub flagged: usize,
    pub domain_pairs: usize,
}

/// Writes `envelope.csv` (run-length rows) and `summary.json`.
pub fn cmd_envelope(cfg: &EnvelopeConfig, out: Option<&Path>) -> Result<EnvelopeSummary> {
    cfg.validate()?;
    let env = cross_envelope(&cfg.cross, &cfg.grid_z, &cfg.grid_w, &cfg.solver)?;
    envelope_from_fields(&env.omega_a, &env.omega_b, out)
}

/// The envelope stage of [`cmd_envelope`] on given fields.
pub fn envelope_from_fields(
    omega_a: &ScalarField,
    omega_b: &ScalarField,
    out: Option<&Path>,
) -> Result<EnvelopeSummary> {
    let mask = envelope_mask(omega_a, omega_b);
    create(out, "envelope.csv", |w| mask.write_rle_csv(w))?;
    let components = connected_components(&mask)?;
    let domain_pairs = omega_a.domain.count() * omega_b.domain.count();
    let summary = EnvelopeSummary {
        volume_fraction: mask.count() as f64 / domain_pairs as f64,
        component_count: components.count,
        flagged: mask.count(),
        domain_pairs,
    };
    write_json(out, "summary.json", &summary)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Removability {
    pub value: Complex64,
    pub expected: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub failures: Vec<String>,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    pub n_test_points: usize,
    pub region: String,
    pub condition: f64,
    pub n_samples: usize,
    pub uniqueness_residual: Option<f64>,
    pub removability: Option<Removability>,
    pub overlap_discrepancy: Option<f64>,
}

/// Sample, fit, verify, then the optional uniqueness, removability and
/// overlap checks. Writes `fit.json` once the fit exists and `report.json`
/// at the end.
pub fn cmd_verify(cfg: &VerifyConfig, out: Option<&Path>) -> Result<VerifyReport> {
    cfg.validate()?;
    let m = &cfg.singular_set;
    let f = cfg.ground_truth.build(m);
    let reference = cfg.reference.as_ref().unwrap_or(&cfg.ground_truth).build(m);
    let deg = (cfg.fit.deg[0], cfg.fit.deg[1]);
    let strategy = &cfg.sampling;
    let clearance = strategy.clearance_for(&cfg.cross);
    let checks = &cfg.checks;

    let env = cross_envelope(&cfg.cross, &cfg.grid_z, &cfg.grid_w, &cfg.solver)?;
    let trace = envelope_trace(m, &env.mask);
    let samples = sample_cross(&f, &cfg.cross, m, strategy)?;
    let fit = fit_rational(&samples, m, cfg.fit.m, deg)?;
    write_json(out, "fit.json", &fit)?;
    let errors = crate::extension::verify_extension(
        &fit,
        &reference,
        &env.mask,
        &trace,
        checks.n_test,
        strategy.seed,
        clearance,
    )?;

    let mut failures = Vec::new();
    if !(errors.max_rel_error <= checks.max_rel_error) {
        failures.push(format!(
            "max_rel_error {:e} exceeds {:e}",
            errors.max_rel_error, checks.max_rel_error
        ));
    }
    let uniqueness = match checks.uniqueness {
        Some(limit) => {
            let u = uniqueness_residual(&cfg.cross, m, cfg.fit.m, deg, strategy)?;
            if !(u.residual <= limit) {
                failures.push(format!("uniqueness residual {:e} exceeds {limit:e}", u.residual));
            }
            Some(u.residual)
        }
        None => None,
    };
    let removability = match &checks.removability {
        Some(r) => {
            let center = (r.center[0], r.center[1]);
            let value = cauchy_reconstruct(&fit, center, (r.radii[0], r.radii[1]), r.n_quad)?;
            let expected = reference.eval(center.0, center.1);
            let error = (value - expected).norm();
            if !(error <= r.tol) {
                failures.push(format!("removability error {error:e} exceeds {:e}", r.tol));
            }
            Some(Removability { value, expected, error })
        }
        None => None,
    };
    let overlap = match &checks.overlap {
        Some(o) => {
            let local = |base: [Complex64; 2]| -> Result<_> {
                let cross = local_cross(base[0], base[1], o.radius);
                let strat = SamplingStrategy { clearance: Some(clearance), ..strategy.clone() };
                let fit = fit_rational(&sample_cross(&f, &cross, m, &strat)?, m, cfg.fit.m, deg)?;
                let env = cross_envelope(&cross, &cfg.grid_z, &cfg.grid_w, &cfg.solver)?;
                Ok((fit, env.mask))
            };
            let (fit1, env1) = local(o.xi)?;
            let (fit2, env2) = local(o.eta)?;
            let d = local_overlap_consistency(
                &fit1,
                &fit2,
                &env1.and(&env2),
                o.n_test,
                strategy.seed,
                clearance,
            )?;
            if !(d <= o.tol) {
                failures.push(format!("overlap discrepancy {d:e} exceeds {:e}", o.tol));
            }
            Some(d)
        }
        None => None,
    };

    let report = VerifyReport {
        passed: failures.is_empty(),
        failures,
        max_rel_error: errors.max_rel_error,
        mean_rel_error: errors.mean_rel_error,
        n_test_points: errors.n_test_points,
        region: errors.region,
        condition: fit.condition,
        n_samples: samples.len(),
        uniqueness_residual: uniqueness,
        removability,
        overlap_discrepancy: overlap,
    };
    write_json(out, "report.json", &report)?;
    Ok(report)
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Json(_) | Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn report_error(e: &Error, out: Option<&Path>) -> i32 {
    let record = ErrorRecord { error: ErrorBody { code: e.code(), message: e.to_string() } };
    if let Ok(text) = config::to_canonical_json(&record) {
        eprint!("{text}");
        if let Some(dir) = out {
            let _ = fs::write(dir.join("error.json"), text);
        }
    }
    exit_code_for(e)
}

fn load_config<T: serde::de::DeserializeOwned>(opts: &GlobalOpts) -> Result<T> {
    let path = opts.config.as_ref().ok_or_else(|| Error::Config("--config is required".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    config::parse(&text)
}

fn run_command(cli: &Cli) -> Result<i32> {
    let opts = &cli.opts;
    let out = opts.out.as_deref();
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    match cli.command {
        Command::Extremal => {
            let mut cfg: ExtremalConfig = load_config(opts)?;
            if let Some(tol) = opts.tol {
                cfg.solver.tol = tol;
            }
            print!("{}", config::to_canonical_json(&cmd_extremal(&cfg, out)?)?);
            Ok(EXIT_OK)
        }
        Command::Envelope => {
            let mut cfg: EnvelopeConfig = load_config(opts)?;
            if let Some(tol) = opts.tol {
                cfg.solver.tol = tol;
            }
            print!("{}", config::to_canonical_json(&cmd_envelope(&cfg, out)?)?);
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let mut cfg: VerifyConfig = load_config(opts)?;
            if let Some(tol) = opts.tol {
                cfg.solver.tol = tol;
            }
            if let Some(seed) = opts.seed {
                cfg.sampling.seed = seed;
            }
            let report = cmd_verify(&cfg, out)?;
            print!("{}", config::to_canonical_json(&report)?);
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Suite => {
            let seed = opts.seed.unwrap_or(acceptance::DEFAULT_SEED);
            let report = acceptance::run_suite(seed, acceptance::ALL, |c, elapsed| {
                eprintln!("criterion {:>2} finished in {:.1} s", c.id, elapsed.as_secs_f64());
            });
            print!("{}", report.table());
            write_json(out, "suite.json", &report)?;
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.opts.jobs {
        // A pool built earlier in this process is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let started = Instant::now();
    match run_command(&cli) {
        Ok(code) => {
            eprintln!("done in {:.1} s", started.elapsed().as_secs_f64());
            code
        }
        Err(e) => report_error(&e, cli.opts.out.as_deref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for(&Error::Config("x".into())), EXIT_CONFIG);
        assert_eq!(exit_code_for(&Error::EmptyA), EXIT_RUNTIME);
        assert_eq!(run_from(["crosslab", "bogus"]), EXIT_CONFIG);
        assert_eq!(run_from(["crosslab", "extremal"]), EXIT_CONFIG);
    }
}
