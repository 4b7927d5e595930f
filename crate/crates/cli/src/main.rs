//! `biscv`: bi-s*-concavity checks, CR suprema, envelopes and Fisher
//! information from the command line.

mod args;
mod output;

use args::{Cli, Command, Format, Method};
use biscv_core::envelope::{emit_envelope_table, envelope_csv};
use biscv_core::fisher::check_fisher_chain;
use biscv_core::shape::{
    check_condition_iii, check_condition_iv, check_midpoint, cr_report, delta_threshold, max_s, Certificate,
    CheckSettings, MixtureFamily,
};
use biscv_core::{Error, Grid};
use clap::Parser;
use output::{num, Document};
use serde_json::{json, Value};
use std::process::ExitCode;

const EXIT_PASS: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// What a subcommand hands back to `main`.
enum Outcome {
    Json { result: Value, passed: bool },
    Csv(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = cli.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }

    let doc = Document::new(&cli);
    let (text, code) = match run(&cli) {
        Ok(Outcome::Json { result, passed }) => {
            (doc.render(result), if passed { EXIT_PASS } else { EXIT_FAIL })
        }
        Ok(Outcome::Csv(text)) => (text, EXIT_PASS),
        Err(e) => {
            eprintln!("error: {e}");
            (doc.render_error(&e), EXIT_ERROR)
        }
    };
    match output::emit(cli.common().output.as_deref(), &text) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn settings(cli: &Cli) -> CheckSettings {
    let c = cli.common();
    CheckSettings {
        grid_points: c.grid_points,
        eps: c.eps,
        tol: c.tol,
    }
}

fn certificates_json(certs: &[Certificate]) -> serde_json::Result<Value> {
    let passed = certs.iter().all(Certificate::passed);
    Ok(json!({
        "verdict": if passed { "pass" } else { "fail" },
        "certificates": serde_json::to_value(certs)?,
    }))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let settings = settings(cli);
    let to_value = |v: serde_json::Result<Value>| v.map_err(|e| Error::Domain(format!("serialization failed: {e}")));
    match &cli.command {
        Command::Check { dist, index, method, .. } => {
            let idx = index.resolve()?;
            let grid = Grid::quantile_spaced(dist, settings.grid_points, settings.eps)?;
            let tol = settings.tol;
            let certs = match method {
                Method::Iv => vec![check_condition_iv(dist, idx, &grid, tol)?],
                Method::Iii => vec![check_condition_iii(dist, idx, &grid, tol)?],
                Method::Midpoint => vec![check_midpoint(dist, idx, &grid, tol)?],
                Method::All => vec![
                    check_condition_iv(dist, idx, &grid, tol)?,
                    check_condition_iii(dist, idx, &grid, tol)?,
                    check_midpoint(dist, idx, &grid, tol)?,
                ],
            };
            let passed = certs.iter().all(Certificate::passed);
            Ok(Outcome::Json {
                result: to_value(certificates_json(&certs))?,
                passed,
            })
        }
        Command::Gamma { dist, index, .. } => {
            let idx = index.resolve()?;
            let grid = Grid::quantile_spaced(dist, settings.grid_points, settings.eps)?;
            let rep = cr_report(dist, idx, &grid)?;
            Ok(Outcome::Json {
                result: to_value(serde_json::to_value(&rep))?,
                passed: true,
            })
        }
        Command::MaxS {
            dist, lo, hi, bisect_tol, ..
        } => {
            let s = max_s(dist, *lo, *hi, *bisect_tol, &settings)?;
            Ok(Outcome::Json {
                result: json!({ "max_s": num(s) }),
                passed: true,
            })
        }
        Command::Threshold {
            family,
            r,
            index,
            lo,
            hi,
            bisect_tol,
            ..
        } => {
            let idx = index.resolve()?;
            let fam = match family {
                args::MixtureArg::Normmix => MixtureFamily::NormalMixture,
                args::MixtureArg::Tmix => MixtureFamily::TMixture {
                    r: r.expect("validated: tmix requires --r"),
                },
            };
            let delta = delta_threshold(fam, idx, *lo, *hi, *bisect_tol, &settings)?;
            Ok(Outcome::Json {
                result: json!({ "delta_star": num(delta) }),
                passed: true,
            })
        }
        Command::Envelope { dist, index, .. } => {
            let idx = index.resolve()?;
            let grid = Grid::quantile_spaced(dist, settings.grid_points, settings.eps)?;
            let rows = emit_envelope_table(dist, idx, &grid)?;
            match cli.common().format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(Outcome::Csv(envelope_csv(&rows))),
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|row| {
                            let mut v = serde_json::to_value(row)?;
                            v["F_U_clamped"] = num(row.f_upper_clamped());
                            Ok(v)
                        })
                        .collect::<serde_json::Result<_>>()
                        .map_err(|e| Error::Domain(format!("serialization failed: {e}")))?;
                    Ok(Outcome::Json {
                        result: json!({ "rows": rows }),
                        passed: true,
                    })
                }
            }
        }
        Command::Fisher {
            dist, index, rel_tol, ..
        } => {
            let idx = index.resolve()?;
            let rep = check_fisher_chain(dist, idx, *rel_tol, &settings)?;
            let passed = rep.holds;
            Ok(Outcome::Json {
                result: to_value(serde_json::to_value(&rep))?,
                passed,
            })
        }
        Command::Catalog { dist, .. } => {
            let support = dist.support();
            let constant = dist.normalizing_constant().map_or(Value::Null, num);
            Ok(Outcome::Json {
                result: json!({
                    "spec": dist.to_string(),
                    "parameters": to_value(serde_json::to_value(dist.family()))?,
                    "support": to_value(serde_json::to_value(support))?,
                    "max_known_s": to_value(serde_json::to_value(dist.max_known_s()))?,
                    "normalizing_constant": constant,
                }),
                passed: true,
            })
        }
    }
}
