//! Batch command-line surface: evaluation, verification suites, kernel
//! tables, spectra sampling, and grid export, all emitting machine-readable
//! artifacts.
//!
//! Conventions:
//!
//! - complex numbers on the command line are written `a+bi` / `a-bi` with no
//!   spaces (`1+0i`, `-0.5-2e-3i`, `2i`, `3`);
//! - CSV uses `.` as the decimal separator and prints floats with 17
//!   significant digits (round-trip safe);
//! - identical flags and seeds give byte-identical output; the report
//!   timestamp is suppressed with `--no-timestamp`;
//! - exit status: 0 when every check passes, 1 when a suite fails
//!   (the failing checks are named in the report), 2 for usage errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::Error;
use crate::ginibre::{self, SpectrumSample, RNG_DESCRIPTION};
use crate::hermite;
use crate::kernels;
use crate::quadrature::QuadratureGrid;
use crate::report::{CheckResult, Report};
use crate::suites::{self, SuiteConfig};

/// A complex command-line argument in `a+bi` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| {
            format!("cannot parse '{s}' as a complex number ({what}); expected a+bi with no spaces")
        };
        let t = s.trim();
        if t.is_empty() || t.contains(' ') {
            return Err(bad("empty or contains spaces"));
        }
        let parse_real = |txt: &str| -> Result<f64, String> {
            let txt = match txt {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            txt.parse::<f64>().map_err(|_| bad(txt))
        };
        if let Some(body) = t.strip_suffix(['i', 'I']) {
            // find the split between the real and imaginary parts: the last
            // sign that does not follow an exponent marker
            let bytes = body.as_bytes();
            let mut split = None;
            for idx in (1..bytes.len()).rev() {
                let ch = bytes[idx];
                if (ch == b'+' || ch == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                    split = Some(idx);
                    break;
                }
            }
            let (re_txt, im_txt) = match split {
                Some(idx) => (&body[..idx], &body[idx..]),
                None => ("0", body),
            };
            let re = if re_txt.is_empty() {
                0.0
            } else {
                parse_real(re_txt)?
            };
            let im = parse_real(im_txt)?;
            let z = Complex64::new(re, im);
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(bad("non-finite"));
            }
            Ok(ComplexArg(z))
        } else {
            let re = parse_real(t)?;
            if !re.is_finite() {
                return Err(bad("non-finite"));
            }
            Ok(ComplexArg(Complex64::new(re, 0.0)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// physicists' Hermite `H_m(x)`
    Real,
    /// rescaled Hermite `H_m(z, τ)`
    Rescaled,
    /// complex Hermite `H_{m,n}(z, z̄)`
    Complex,
    /// squeezed complex Hermite `H_{m,n}(z, z̄; τ)`
    Squeezed,
    /// normalized complex Hermite `φ_{m,n}(z)`
    Phi,
    /// generalized Laguerre `L_m^{(α)}(x)`
    Laguerre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Flags shared by every command.
#[derive(Debug, Args)]
pub struct CommonOpts {
    /// Write the primary artifact here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Which artifact goes to standard output for commands that produce both.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Cap the worker-thread count (default: available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Omit the timestamp so reruns are byte-identical.
    #[arg(long)]
    pub no_timestamp: bool,
}

/// `elliptic-hermite` — squeezed complex Hermite polynomials of the
/// elliptic Ginibre model: evaluation, verification, kernels, sampling.
#[derive(Debug, Parser)]
#[command(name = "elliptic-hermite", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one member of a polynomial family at a point (JSON).
    Eval {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(short, long, default_value_t = 0)]
        m: usize,
        #[arg(short, long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        /// Laguerre order α.
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Evaluation point, written a+bi.
        #[arg(long, default_value = "0+0i")]
        z: ComplexArg,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        /// One of poly|hermite|operators|quadrature|kernels|ginibre|acceptance|all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Quadrature nodes per axis.
        #[arg(long = "quad", default_value_t = 64)]
        n_q: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Series truncation cap.
        #[arg(long, default_value_t = 200)]
        kmax: usize,
        /// Monte Carlo trials (seeds) for the sampling checks.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Tabulate the closed and series kernel forms at random probes (CSV).
    Kernel {
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        /// Landau level.
        #[arg(short, long, default_value_t = 0)]
        n: usize,
        /// Number of probe pairs.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        kmax: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sample elliptic spectra: eigenvalue CSV plus a JSON summary of the
    /// spectral statistics per seed and pooled.
    Sample {
        /// Matrix size N.
        #[arg(long, short = 'N', default_value_t = 256)]
        size: usize,
        #[arg(long, default_value_t = 0.5)]
        tau: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of seeds (seed, seed+1, …).
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Export a tensor quadrature grid as CSV (columns x, y, weight).
    Grid {
        #[arg(long = "quad", default_value_t = 64)]
        n_q: usize,
        #[arg(long, default_value_t = 0.0)]
        tau: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn configure_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // ignore the error when a pool already exists (tests, repeat calls)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }
}

fn write_artifact(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// Execute a parsed command; `Ok` carries the process exit status.
pub fn execute(config: RunConfig) -> Result<ExitCode, Error> {
    match config.command {
        Command::Eval {
            family,
            m,
            n,
            tau,
            alpha,
            z,
            common,
        } => {
            configure_threads(common.threads);
            let z = crate::poly::ComplexPoint::try_from(z.0)?.value();
            let value = match family {
                Family::Real => hermite::hermite(m, z)?,
                Family::Rescaled => hermite::hermite_rescaled(m, z, tau)?,
                Family::Complex => hermite::complex_hermite_value(m, n, z)?,
                Family::Squeezed => hermite::squeezed_hermite_value(m, n, tau, z)?,
                Family::Phi => hermite::phi_normalized(m, n, z)?,
                Family::Laguerre => hermite::laguerre(m, alpha, z)?,
            };
            let family_name = format!("{family:?}").to_lowercase();
            let mut payload = serde_json::json!({
                "family": family_name,
                "m": m,
                "n": n,
                "tau": tau,
                "z": {"re": z.re, "im": z.im},
                "value": {"re": value.re, "im": value.im},
            });
            if matches!(family, Family::Laguerre) {
                payload["alpha"] = serde_json::json!(alpha);
            }
            let text = serde_json::to_string_pretty(&payload).expect("serialize") + "\n";
            write_artifact(&common.out, &text).map_err(io_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            tau,
            max_degree,
            n_q,
            seed,
            kmax,
            trials,
            common,
        } => {
            configure_threads(common.threads);
            hermite::check_tau_half_open(tau)?;
            if !(2..=256).contains(&n_q) {
                return Err(Error::NodesOutOfRange { n_q });
            }
            let cfg = SuiteConfig {
                tau,
                max_degree,
                n_q,
                seed,
                kmax,
                trials,
            };
            let checks: Vec<CheckResult> = if suite == "acceptance" {
                suites::acceptance::run_all()?
                    .into_iter()
                    .flat_map(|c| c.checks)
                    .collect()
            } else {
                suites::run_suite(&suite, &cfg)?
            };
            let params = serde_json::json!({
                "suite": suite,
                "tau": tau,
                "max_degree": max_degree,
                "quad": n_q,
                "seed": seed,
                "kmax": kmax,
                "trials": trials,
            });
            let include_rng = suite == "all" || suite == "ginibre" || suite == "acceptance";
            let mut report = Report::new("verify", params, checks, !common.no_timestamp);
            if include_rng {
                report = report.with_rng(RNG_DESCRIPTION);
            }
            let pass = report.pass;
            let text = serde_json::to_string_pretty(&report).expect("serialize") + "\n";
            write_artifact(&common.out, &text).map_err(io_error)?;
            if pass {
                Ok(ExitCode::SUCCESS)
            } else {
                for check in report.checks.iter().filter(|c| !c.pass) {
                    eprintln!(
                        "FAILED {}: value {:.6e} against tolerance {:.1e}",
                        check.check, check.max_abs_err, check.tol
                    );
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Kernel {
            tau,
            n,
            trials,
            seed,
            kmax,
            common,
        } => {
            configure_threads(common.threads);
            let mut rng = ginibre::rng_for(seed, 0);
            let mut csv = String::from(
                "z_re,z_im,w_re,w_im,closed_re,closed_im,series_re,series_im,ratio_re,ratio_im\n",
            );
            use rand::Rng;
            for _ in 0..trials {
                let z = Complex64::new(3.0 * rng.gen::<f64>() - 1.5, 3.0 * rng.gen::<f64>() - 1.5);
                let w = Complex64::new(3.0 * rng.gen::<f64>() - 1.5, 3.0 * rng.gen::<f64>() - 1.5);
                let closed = kernels::kernel_w_closed(tau, n, z, w)?;
                let series = kernels::kernel_w_series(tau, n, z, w, kmax)?.value;
                let ratio = closed / series;
                let row = [
                    z.re, z.im, w.re, w.im, closed.re, closed.im, series.re, series.im, ratio.re,
                    ratio.im,
                ];
                let cells: Vec<String> = row.iter().map(|&x| fmt_f(x)).collect();
                csv.push_str(&cells.join(","));
                csv.push('\n');
            }
            write_artifact(&common.out, &csv).map_err(io_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            size,
            tau,
            seed,
            trials,
            common,
        } => {
            configure_threads(common.threads);
            let seeds: Vec<u64> = (0..trials.max(1) as u64)
                .map(|t| seed.wrapping_add(t))
                .collect();
            let samples: Vec<SpectrumSample> = seeds
                .iter()
                .map(|&s| SpectrumSample::draw(size, tau, s))
                .collect::<Result<_, Error>>()?;
            let mut csv = String::from("seed,index,lambda_re,lambda_im\n");
            for sample in &samples {
                for (idx, &(re, im)) in sample.eigenvalues.iter().enumerate() {
                    csv.push_str(&format!(
                        "{},{},{},{}\n",
                        sample.seed,
                        idx,
                        fmt_f(re),
                        fmt_f(im)
                    ));
                }
            }
            let per_seed: Vec<serde_json::Value> = samples
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "seed": s.seed,
                        "stats": ginibre::spectral_stats(s),
                    })
                })
                .collect();
            let mut summary = serde_json::json!({
                "schema_version": crate::report::SCHEMA_VERSION,
                "command": "sample",
                "rng": RNG_DESCRIPTION,
                "params": {"size": size, "tau": tau, "seed": seed, "trials": trials},
                "per_seed": per_seed,
                "pooled": ginibre::pooled_stats(&samples),
            });
            if !common.no_timestamp {
                summary["timestamp"] = serde_json::json!(chrono::Utc::now().to_rfc3339());
            }
            let json = serde_json::to_string_pretty(&summary).expect("serialize") + "\n";
            // the CSV goes to --out when provided; stdout carries whichever
            // artifact --format selects
            match (&common.out, common.format) {
                (Some(path), OutputFormat::Json) => {
                    std::fs::write(path, &csv).map_err(io_error)?;
                    print!("{json}");
                }
                (Some(path), OutputFormat::Csv) => {
                    std::fs::write(path, &json).map_err(io_error)?;
                    print!("{csv}");
                }
                (None, OutputFormat::Json) => print!("{json}"),
                (None, OutputFormat::Csv) => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid { n_q, tau, common } => {
            configure_threads(common.threads);
            let grid = QuadratureGrid::elliptic(n_q, tau)?;
            let mut buf = Vec::new();
            grid.write_csv(&mut buf).map_err(io_error)?;
            let text = String::from_utf8(buf).expect("utf8 csv");
            write_artifact(&common.out, &text).map_err(io_error)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// Parse the process arguments and run; usage problems exit with status 2,
/// failed suites with status 1.
pub fn main() -> ExitCode {
    let config = RunConfig::parse();
    match execute(config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Complex64 {
        s.parse::<ComplexArg>().unwrap().0
    }

    #[test]
    fn complex_argument_forms() {
        assert_eq!(parse("1+0i"), Complex64::new(1.0, 0.0));
        assert_eq!(parse("-1.5-2e3i"), Complex64::new(-1.5, -2000.0));
        assert_eq!(parse("2i"), Complex64::new(0.0, 2.0));
        assert_eq!(parse("-i"), Complex64::new(0.0, -1.0));
        assert_eq!(parse("3"), Complex64::new(3.0, 0.0));
        assert_eq!(parse("1e-2+0.5i"), Complex64::new(0.01, 0.5));
        assert_eq!(parse("-2.5"), Complex64::new(-2.5, 0.0));
    }

    #[test]
    fn complex_argument_rejects_garbage() {
        for bad in ["", "1 + 2i", "abc", "1+2j", "1++2i", "nan+1i"] {
            let r = bad.parse::<ComplexArg>();
            assert!(r.is_err(), "'{bad}' unexpectedly parsed as {r:?}");
        }
    }
}
