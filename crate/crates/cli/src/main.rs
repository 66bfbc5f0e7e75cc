//! smax: command-line front end for the Schrodinger maximal-function
//! laboratory.
//!
//! Every subcommand reads one plain-text config file and writes a JSON
//! report plus a headered CSV into `--out-dir`; `--emit-plot-data` adds
//! two-column `.dat` files for plotting.  Exit codes: 0 when every check
//! passes, 1 when a verification fails, 2 on usage or config errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use smax_core::covering::{covering_profile, rhs_sum, SumMode};
use smax_core::grid::{from_spectrum, l2_norm};
use smax_core::harness::{self, config::ExperimentConfig};
use smax_core::maximal::maximal_field;
use smax_core::propagator::{propagate, PropagatorParams};
use smax_core::settools::sample_set;
use smax_core::{Error, Real, Result};

#[derive(Parser)]
#[command(
    name = "smax",
    version,
    about = "Dispersive maximal-function laboratory",
    propagate_version = true
)]
struct Cli {
    /// Directory for reports and plot data.
    #[arg(long, default_value = "out", global = true)]
    out_dir: PathBuf,
    /// Also write two-column plot files (abscissa, value) per curve.
    #[arg(long, global = true)]
    emit_plot_data: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count anisotropic covers of the configured set across dyadic scales.
    Cover { config: PathBuf },
    /// Weighted covering series for the configured set at one regularity.
    #[command(name = "rhs-sum")]
    RhsSum { config: PathBuf },
    /// Evolve the configured datum to params.t and dump the field.
    Propagate { config: PathBuf },
    /// Maximal field of the configured set at pitch params.resolution.
    Maximal { config: PathBuf },
    /// Check the one-cube bound (1+rA)^n (1+(rA)^a) ||f||_2 for banded data.
    #[command(name = "verify-cube")]
    VerifyCube { config: PathBuf },
    /// Check the covering bound 2^(2n+2) N ||f||_2^2 for banded data.
    #[command(name = "verify-cover")]
    VerifyCover { config: PathBuf },
    /// Ratio report for a time-only set with 2^(-2ms/a) weights.
    #[command(name = "verify-thmA")]
    VerifyThmA { config: PathBuf },
    /// Ratio report for a space-time set at the natural exponent b = a.
    #[command(name = "verify-thm1")]
    VerifyThm1 { config: PathBuf },
    /// Sweep the covering series over [s_min, s_max] and locate the boundary.
    #[command(name = "scan-s")]
    ScanS { config: PathBuf },
    /// Track the evolved field back to the datum along a time sequence.
    Converge { config: PathBuf },
    /// Run each config file's named experiment in order.
    Run {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
    },
}

impl Command {
    /// Experiment name and config path for the single-experiment commands.
    fn single(&self) -> Option<(&'static str, &Path)> {
        match self {
            Command::Cover { config } => Some(("cover", config)),
            Command::RhsSum { config } => Some(("rhs-sum", config)),
            Command::Propagate { config } => Some(("propagate", config)),
            Command::Maximal { config } => Some(("maximal", config)),
            Command::VerifyCube { config } => Some(("verify-cube", config)),
            Command::VerifyCover { config } => Some(("verify-cover", config)),
            Command::VerifyThmA { config } => Some(("verify-thmA", config)),
            Command::VerifyThm1 { config } => Some(("verify-thm1", config)),
            Command::ScanS { config } => Some(("scan-s", config)),
            Command::Converge { config } => Some(("converge", config)),
            Command::Run { .. } => None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Err(err) = &outcome {
        eprintln!("smax: {err}");
    }
    ExitCode::from(exit_for(&outcome))
}

/// 0 when every check passes, 1 when a verification fails, 2 on errors.
fn exit_for(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match (&cli.command, cli.command.single()) {
        (Command::Run { configs }, _) => {
            let mut all = true;
            for path in configs {
                let cfg = ExperimentConfig::load(path)?;
                if cfg.experiment.is_empty() {
                    return Err(Error::Config(format!(
                        "{}: run needs an `experiment` key naming a subcommand",
                        path.display()
                    )));
                }
                all &= execute(&cfg.experiment.clone(), &cfg, cli)?;
            }
            Ok(all)
        }
        (_, Some((name, path))) => execute(name, &ExperimentConfig::load(path)?, cli),
        _ => unreachable!("every command is single or run"),
    }
}

/// Metadata report for the measurement-only experiments.
#[derive(Serialize)]
struct FieldSummary {
    schema: u32,
    experiment: &'static str,
    a: Real,
    t: Option<Real>,
    sample_count: Option<usize>,
    l2_in: Real,
    l2_out: Real,
}

fn execute(name: &str, cfg: &ExperimentConfig, cli: &Cli) -> Result<bool> {
    let grid = cfg.grid_spec()?;
    let spectrum = cfg.spectrum(&grid)?;
    let stem = if cfg.output.is_empty() {
        name.to_string()
    } else {
        cfg.output.clone()
    };
    let p = &cfg.params;
    let mut pass = true;
    match name {
        "cover" => {
            let set = cfg.set_spec()?;
            let b = if set.is_time_only() { 1.0 } else { p.a };
            let profile = covering_profile(&set, b, p.m_min..=p.m_max)?;
            write_out(cli, &stem, "csv", &harness::profile_csv(&profile))?;
            write_out(cli, &stem, "json", &harness::to_json(&profile)?)?;
            if cli.emit_plot_data {
                let pairs = profile
                    .entries()
                    .iter()
                    .map(|e| (e.m as Real, e.count as Real));
                write_out(cli, &stem, "counts.dat", &harness::two_column(pairs))?;
            }
            println!(
                "cover: {} scales at b = {b}, largest count {}",
                profile.entries().len(),
                profile.entries().iter().map(|e| e.count).max().unwrap_or(0)
            );
        }
        "rhs-sum" => {
            let set = cfg.set_spec()?;
            let (b, mode) = if set.is_time_only() {
                (1.0, SumMode::ThmA { a: p.a })
            } else {
                (p.a, SumMode::Thm1)
            };
            let profile = covering_profile(&set, b, p.m_min..=p.m_max)?;
            let sum = rhs_sum(&profile, p.s, mode)?;
            write_out(cli, &stem, "csv", &harness::sum_csv(&sum))?;
            write_out(cli, &stem, "json", &harness::to_json(&sum)?)?;
            if cli.emit_plot_data {
                let pairs = sum.entries().iter().map(|e| (e.m as Real, e.partial));
                write_out(cli, &stem, "partials.dat", &harness::two_column(pairs))?;
            }
            println!(
                "rhs-sum: s = {}, total {:.6e}, converged = {}",
                p.s,
                sum.total(),
                sum.converged()
            );
        }
        "propagate" => {
            let params = PropagatorParams::new(p.a, p.t)?;
            let field = propagate(&spectrum, &params)?;
            let summary = FieldSummary {
                schema: harness::REPORT_SCHEMA,
                experiment: "propagate",
                a: p.a,
                t: Some(p.t),
                sample_count: None,
                l2_in: l2_norm(&from_spectrum(&spectrum)),
                l2_out: l2_norm(&field),
            };
            write_out(cli, &stem, "csv", &harness::complex_field_csv(&field))?;
            write_out(cli, &stem, "json", &harness::to_json(&summary)?)?;
            if cli.emit_plot_data && grid.dimension() == 1 {
                let mut x = [0.0];
                let pairs = field.values().iter().enumerate().map(|(idx, z)| {
                    grid.point(idx, &mut x);
                    (x[0], z.norm())
                });
                write_out(cli, &stem, "abs.dat", &harness::two_column(pairs))?;
            }
            println!(
                "propagate: t = {}, ||u||_2 = {:.6e} (datum {:.6e})",
                p.t, summary.l2_out, summary.l2_in
            );
        }
        "maximal" => {
            let set = cfg.set_spec()?;
            let samples = sample_set(&set, p.resolution)?;
            let field = maximal_field(&spectrum, &samples, p.a)?;
            let summary = FieldSummary {
                schema: harness::REPORT_SCHEMA,
                experiment: "maximal",
                a: p.a,
                t: None,
                sample_count: Some(samples.len()),
                l2_in: l2_norm(&from_spectrum(&spectrum)),
                l2_out: field.l2_norm(),
            };
            write_out(cli, &stem, "csv", &harness::real_field_csv(&field))?;
            write_out(cli, &stem, "json", &harness::to_json(&summary)?)?;
            if cli.emit_plot_data && grid.dimension() == 1 {
                let mut x = [0.0];
                let pairs = field.values().iter().enumerate().map(|(idx, v)| {
                    grid.point(idx, &mut x);
                    (x[0], *v)
                });
                write_out(cli, &stem, "field.dat", &harness::two_column(pairs))?;
            }
            println!(
                "maximal: {} parameter samples, ||sup|S_t f|||_2 = {:.6e}",
                samples.len(),
                summary.l2_out
            );
        }
        "verify-cube" => {
            let report =
                harness::verify_cube(&spectrum, p.a, p.r, &p.cube_corner, p.cube_time, p.band_limit)?;
            pass = report.pass;
            write_out(cli, &stem, "csv", &harness::verification_csv(&report))?;
            write_out(cli, &stem, "json", &harness::to_json(&report)?)?;
            println!(
                "verify-cube: {} (measured {:.6e} vs bound {:.6e})",
                verdict(pass),
                report.measured,
                report.bound
            );
        }
        "verify-cover" => {
            let set = cfg.set_spec()?;
            let report = harness::verify_cover_bound(&spectrum, &set, p.a, p.r, p.band_limit)?;
            pass = report.pass;
            write_out(cli, &stem, "csv", &harness::verification_csv(&report))?;
            write_out(cli, &stem, "json", &harness::to_json(&report)?)?;
            println!(
                "verify-cover: {} (measured {:.6e} vs bound {:.6e})",
                verdict(pass),
                report.measured,
                report.bound
            );
        }
        "verify-thmA" | "verify-thm1" => {
            let set = cfg.set_spec()?;
            let report = if name == "verify-thmA" {
                harness::verify_thmA(&spectrum, &set, p.a, p.s, p.m_max)?
            } else {
                harness::verify_thm1(&spectrum, &set, p.a, p.s, p.m_max)?
            };
            pass = report.holds;
            write_out(cli, &stem, "csv", &harness::ratio_csv(&report))?;
            write_out(cli, &stem, "json", &harness::to_json(&report)?)?;
            println!(
                "{name}: {} (ratio {:.4}, series converged = {})",
                verdict(pass),
                report.ratio,
                report.series_converged
            );
        }
        "scan-s" => {
            let set = cfg.set_spec()?;
            let s_grid = cfg.s_grid()?;
            let report = harness::scan_s(&spectrum, &set, p.a, &s_grid, p.m_max)?;
            write_out(cli, &stem, "csv", &harness::scan_csv(&report))?;
            write_out(cli, &stem, "json", &harness::to_json(&report)?)?;
            if cli.emit_plot_data {
                let pairs = report.rows.iter().map(|r| (r.s, r.growth_exponent));
                write_out(cli, &stem, "exponents.dat", &harness::two_column(pairs))?;
            }
            match report.boundary {
                Some(b) => println!("scan-s: convergence boundary near s = {b:.4}"),
                None => println!("scan-s: no sign change on [{}, {}]", p.s_min, p.s_max),
            }
        }
        "converge" => {
            let set = cfg.set_spec()?;
            let table = harness::convergence_experiment(&spectrum, &set, p.a)?;
            pass = table.oracle_bounded;
            write_out(cli, &stem, "csv", &harness::decay_csv(&table))?;
            write_out(cli, &stem, "json", &harness::to_json(&table)?)?;
            if cli.emit_plot_data {
                let pairs = table.rows.iter().map(|r| (r.t, r.d));
                write_out(cli, &stem, "decay.dat", &harness::two_column(pairs))?;
            }
            println!(
                "converge: {} (rate bound {}, tail decreasing = {})",
                verdict(pass),
                if table.oracle_bounded { "holds" } else { "violated" },
                table.tail_decreasing
            );
        }
        other => {
            return Err(Error::Config(format!(
                "unknown experiment {other:?}; expected one of cover, rhs-sum, \
                 propagate, maximal, verify-cube, verify-cover, verify-thmA, \
                 verify-thm1, scan-s, converge"
            )))
        }
    }
    Ok(pass)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_out(cli: &Cli, stem: &str, ext: &str, contents: &str) -> Result<()> {
    let path = cli.out_dir.join(format!("{stem}.{ext}"));
    harness::write_atomic(&path, contents)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_cover_the_three_outcomes() {
        assert_eq!(exit_for(&Ok(true)), 0);
        assert_eq!(exit_for(&Ok(false)), 1, "a failed verification exits 1");
        assert_eq!(exit_for(&Err(Error::Config("x".into()))), 2);
    }
}
