use std::fmt::Write as _;
use std::io::Write;

use clap::Args;
use qes_core::models::{solve_tuned_parameter, QesSolution};
use qes_core::oracle::{default_grid, residual_profile, verify, VerifyOptions};
use qes_core::QesError;
use rayon::prelude::*;

use crate::document::{fmt_f64, Document, ReportDoc};
use crate::errata::{self, Erratum};
use crate::request::{self, GridArgs, ModelArgs, Request};
use crate::{CliError, Exit};

pub const MAX_TABLE_DEGREE: usize = 8;

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Polynomial degree of the level
    #[arg(long)]
    pub n: Option<usize>,
    /// Put errata notes in the JSON document instead of standard error
    #[arg(long)]
    pub json_errata: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub solve: SolveArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Test this energy instead of the algebraic one
    #[arg(long)]
    pub override_energy: Option<f64>,
    /// Test against the potential with this tuned value
    #[arg(long)]
    pub override_tuned: Option<f64>,
    /// Lower end of the shooting bracket (default: grown around the energy)
    #[arg(long, requires = "bracket_hi")]
    pub bracket_lo: Option<f64>,
    #[arg(long, requires = "bracket_lo")]
    pub bracket_hi: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n: Option<usize>,
    /// Fixed parameter to vary
    #[arg(long)]
    pub sweep: String,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of points, both ends included
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TableArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Highest degree to tabulate (at most 8)
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub n: Option<usize>,
    /// Which root, counting from the smallest tuned value
    #[arg(long, default_value_t = 0)]
    pub root_index: usize,
    #[command(flatten)]
    pub grid: GridArgs,
}

/// Solver outcome: roots, or the reason there are none. Errors that mean the
/// request itself was malformed become usage errors.
fn run_solver(req: &Request, n: usize) -> Result<Result<Vec<QesSolution>, QesError>, CliError> {
    let template = req.template()?;
    match solve_tuned_parameter(&template, n, &req.options) {
        Ok(s) => Ok(Ok(s)),
        Err(e @ (QesError::InvalidParameters(_) | QesError::NegativeDiscriminant(_))) => Err(CliError::Usage(e.to_string())),
        Err(e) => Ok(Err(e)),
    }
}

fn emit_errata(doc: &mut Document, notes: Vec<Erratum>, json: bool, err: &mut dyn Write) -> std::io::Result<()> {
    if json {
        doc.errata = (!notes.is_empty()).then_some(notes);
    } else {
        for e in notes {
            writeln!(err, "erratum: {}", e.note)?;
        }
    }
    Ok(())
}

pub fn solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    let req = request::build(&args.model, args.n, None)?;
    let n = req.require_n()?;
    let (solutions, exit) = match run_solver(&req, n)? {
        Ok(s) => (s, Exit::Success),
        Err(e) => {
            writeln!(err, "no admissible root: {e}")?;
            (Vec::new(), Exit::NoRoot)
        }
    };
    let mut doc = Document::new(&req, n, &solutions);
    emit_errata(&mut doc, errata::collect(&req, n, &solutions), args.json_errata, err)?;
    writeln!(out, "{}", doc.to_json())?;
    Ok(exit)
}

pub fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    let req = request::build(&args.solve.model, args.solve.n, None)?;
    let n = req.require_n()?;
    let bracket = args.bracket_lo.zip(args.bracket_hi);
    let (solutions, mut exit) = match run_solver(&req, n)? {
        Ok(s) => (s, Exit::Success),
        Err(e) => {
            writeln!(err, "no admissible root: {e}")?;
            (Vec::new(), Exit::NoRoot)
        }
    };

    let mut reports = Vec::with_capacity(solutions.len());
    for s in &solutions {
        let energy = args.override_energy.unwrap_or(s.energy);
        let tuned = args.override_tuned.unwrap_or(s.tuned.value);
        let model = s.params.with_tuned(tuned);
        let grid = args.grid.resolve(|| default_grid(&model, energy).ok())?;
        let outcome = model
            .validate()
            .and_then(|_| verify(&model, energy, s, &VerifyOptions { grid, bracket }));
        let doc = match outcome {
            Ok(r) => ReportDoc {
                energy,
                tuned_value: tuned,
                residual_rel: Some(r.residual_rel),
                e_shoot: Some(r.e_shoot),
                e_abs_err: Some(r.e_abs_err),
                norm: Some(r.norm),
                passed: r.passes(energy),
                error: None,
            },
            Err(e) => ReportDoc {
                energy,
                tuned_value: tuned,
                residual_rel: None,
                e_shoot: None,
                e_abs_err: None,
                norm: None,
                passed: false,
                error: Some(e.to_string()),
            },
        };
        if !doc.passed {
            writeln!(err, "verification failed for {} = {}: {doc:?}", s.tuned.name, fmt_f64(s.tuned.value))?;
            exit = Exit::VerificationFailed;
        }
        reports.push(doc);
    }

    let mut doc = Document::new(&req, n, &solutions);
    doc.reports = Some(reports);
    emit_errata(&mut doc, errata::collect(&req, n, &solutions), args.solve.json_errata, err)?;
    writeln!(out, "{}", doc.to_json())?;
    Ok(exit)
}

/// `steps` evenly spaced values from `from` to `to`, both included.
fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| if i + 1 == steps { to } else { from + (to - from) * i as f64 / last })
        .collect()
}

pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let req = request::build(&args.model, args.n, Some(&args.sweep))?;
    let n = req.require_n()?;
    if !req.kind.fixed_parameter_names().contains(&args.sweep.as_str()) {
        return Err(CliError::Usage(format!(
            "cannot sweep '{}': fixed parameters of {} are {}",
            args.sweep,
            req.kind,
            req.kind.fixed_parameter_names().join(", ")
        )));
    }
    if !(args.from.is_finite() && args.to.is_finite()) {
        return Err(CliError::Usage("sweep bounds must be finite".into()));
    }
    if args.steps < 2 {
        return Err(CliError::Usage("--steps must be at least 2".into()));
    }

    let rows: Vec<String> = linspace(args.from, args.to, args.steps)
        .into_par_iter()
        .map(|v| {
            let x = fmt_f64(v);
            let solved = req
                .template_with(&args.sweep, v)
                .and_then(|t| solve_tuned_parameter(&t, n, &req.options));
            match solved {
                Ok(sols) => sols
                    .iter()
                    .enumerate()
                    .fold(String::new(), |mut acc, (i, s)| {
                        let _ = writeln!(
                            acc,
                            "{x},{i},{},{},{}",
                            fmt_f64(s.tuned.value),
                            fmt_f64(s.energy),
                            fmt_f64(s.diagnostics.det_residual)
                        );
                        acc
                    }),
                Err(_) => format!("{x},,,,\n"),
            }
        })
        .collect();

    writeln!(out, "swept_value,root_index,tuned_value,energy,det_residual")?;
    for r in rows {
        out.write_all(r.as_bytes())?;
    }
    Ok(Exit::Success)
}

pub fn table(args: &TableArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    if args.n_max > MAX_TABLE_DEGREE {
        return Err(CliError::Usage(format!("--n-max must be at most {MAX_TABLE_DEGREE}")));
    }
    let req = request::build(&args.model, None, None)?;
    let tuned = req.kind.tuned_parameter();
    let fixed: Vec<String> = req.fixed.iter().map(|(k, v)| format!("{k}={}", fmt_f64(*v))).collect();
    writeln!(out, "# {}  l={}  {}", req.kind, req.l, fixed.join(" "))?;
    writeln!(out, "{:<3} {:<4} {:<24} {:<24} {:<40} errata", "n", "root", "energy", tuned, "p")?;

    for n in 0..=args.n_max {
        let solutions = match run_solver(&req, n)? {
            Ok(s) => s,
            Err(e) => {
                writeln!(out, "{n:<3} {:<4} no admissible root ({e})", "-")?;
                continue;
            }
        };
        let notes = errata::collect(&req, n, &solutions);
        for (i, s) in solutions.iter().enumerate() {
            let p: Vec<String> = s.p.iter().map(|v| fmt_f64(*v)).collect();
            let marks: Vec<String> = notes
                .iter()
                .filter(|e| n == 0 || e.location.ends_with(&fmt_f64(s.tuned.value)))
                .map(|e| format!("{} {} published {}", e.location, e.quantity, fmt_f64(e.published)))
                .collect();
            writeln!(
                out,
                "{n:<3} {i:<4} {:<24} {:<24} {:<40} {}",
                fmt_f64(s.energy),
                fmt_f64(s.tuned.value),
                format!("[{}]", p.join(", ")),
                marks.join("; ")
            )?;
        }
    }
    Ok(Exit::Success)
}

pub fn wavefunction(args: &WavefunctionArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    let req = request::build(&args.model, args.n, None)?;
    let n = req.require_n()?;
    let solutions = match run_solver(&req, n)? {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "no admissible root: {e}")?;
            return Ok(Exit::NoRoot);
        }
    };
    let s = solutions.get(args.root_index).ok_or_else(|| {
        CliError::Usage(format!("--root-index {} out of range ({} roots)", args.root_index, solutions.len()))
    })?;
    let grid = match args.grid.resolve(|| default_grid(&s.params, s.energy).ok())? {
        Some(g) => g,
        None => default_grid(&s.params, s.energy).map_err(|e| CliError::Usage(e.to_string()))?,
    };
    let points = grid.points();
    let residuals = residual_profile(&s.params, s.energy, s, &points);
    writeln!(out, "r,psi,residual")?;
    for (r, res) in points.iter().zip(residuals) {
        writeln!(out, "{},{},{}", fmt_f64(*r), fmt_f64(qes_core::models::wavefunction(s, *r)), fmt_f64(res))?;
    }
    Ok(Exit::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        assert_eq!(linspace(0.5, 2.0, 4), vec![0.5, 1.0, 1.5, 2.0]);
        assert_eq!(linspace(-1.2, -0.6, 2), vec![-1.2, -0.6]);
    }
}
