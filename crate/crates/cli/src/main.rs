#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod error;
mod output;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use isodense_core::interval1d::{constraint_beta, contour_grid, symmetric_threshold};
use isodense_core::{critical_offset, fmt12, Density, Dimension};
use rayon::prelude::*;

use args::{AcritArgs, Cli, Command, ContourArgs, EvolveArgs, SolveArgs, SweepArgs};
use error::CliError;
use output::{csv_row, emit, num, Record};

const THREADS_VAR: &str = "ISODENSE_THREADS";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("isodense: {e}");
            e.exit_code()
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, CliError> {
    match cmd {
        Command::Solve(a) => cmd_solve(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Contour(a) => cmd_contour(a),
        Command::Evolve(a) => cmd_evolve(a),
        Command::Acrit(a) => cmd_acrit(a),
        Command::Verify(a) => {
            Ok(if verify::run(a.suite)? { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn header(dim: Dimension, p: f64, a: Option<f64>, mass: f64) -> Record {
    let r = Record::new().with("dim", dim.d().into()).real("p", p);
    let r = match a {
        Some(a) => r.real("a", a),
        None => r,
    };
    r.real("mass", mass)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, CliError> {
    let pr = &args.problem;
    let dim = solve::dimension(pr.dim)?;
    let dens = Density::new(pr.p, args.a)?;
    let s = solve::solve(dim, &dens, pr.mass, args.force_numeric, &args.evolver)?;
    let rec = s.to_record(header(dim, pr.p, Some(args.a), pr.mass));
    emit(args.out.as_deref(), &rec.to_json())?;
    Ok(ExitCode::SUCCESS)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Numeric(format!("cannot start worker threads: {e}")))
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let pr = &args.problem;
    let dim = solve::dimension(pr.dim)?;
    if !(args.a_min >= 0.0 && args.a_min <= args.a_max && args.a_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "need 0 <= --a-min <= --a-max, got {} and {}",
            args.a_min, args.a_max
        )));
    }
    if args.steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {}", args.steps)));
    }
    Density::new(pr.p, args.a_min)?;
    let span = args.a_max - args.a_min;
    let offsets: Vec<f64> = (0..args.steps)
        .map(|k| args.a_min + span * k as f64 / (args.steps - 1) as f64)
        .collect();

    let pool = thread_pool()?;
    let mut rows: Vec<(f64, Result<[String; 5], CliError>)> = pool.install(|| {
        offsets
            .par_iter()
            .map(|&a| {
                let cells = Density::new(pr.p, a)
                    .map_err(CliError::from)
                    .and_then(|d| solve::solve(dim, &d, pr.mass, args.force_numeric, &args.evolver))
                    .map(|s| s.csv_cells());
                (a, cells)
            })
            .collect()
    });
    rows.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut body = if dim == Dimension::One {
        String::from("a,branch,alpha,beta,perimeter,mass_residual\n")
    } else {
        String::from("a,branch,R,r0,perimeter,mass_residual\n")
    };
    for (a, cells) in rows {
        let cells = cells?;
        let mut line = vec![fmt12(a)];
        line.extend(cells);
        body.push_str(&csv_row(&line));
    }
    emit(args.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_contour(args: ContourArgs) -> Result<ExitCode, CliError> {
    let dens = Density::new(args.p, args.a)?;
    if !(args.mass > 0.0 && args.mass.is_finite()) {
        return Err(CliError::Usage(format!("--mass must be positive, got {}", args.mass)));
    }
    if args.grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {}", args.grid)));
    }
    // the whole mass on one side of the origin bounds both axes
    let reach = constraint_beta(&dens, 0.0, args.mass)?.expect("zero |alpha| carries no mass");
    let extent = 1.25 * reach;
    let g = contour_grid(&dens, extent, extent, args.grid)?;
    let band = args.mass / (args.grid - 1) as f64;

    let mut body = String::from("alpha_abs,beta,perimeter,mass,on_constraint,constraint_beta\n");
    for i in 0..g.n {
        let cb = constraint_beta(&dens, g.alpha_abs[i], args.mass)?;
        let cb = cb.map(fmt12).unwrap_or_default();
        for j in 0..g.n {
            let m = g.mass_at(i, j);
            let flag = if (m - args.mass).abs() < band { "1" } else { "0" };
            body.push_str(&csv_row(&[
                fmt12(g.alpha_abs[i]),
                fmt12(g.beta[j]),
                fmt12(g.perimeter_at(i, j)),
                fmt12(m),
                flag.to_string(),
                cb.clone(),
            ]));
        }
    }
    emit(args.out.as_deref(), &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_evolve(args: EvolveArgs) -> Result<ExitCode, CliError> {
    let dim = solve::dimension(args.dim)?;
    let dens = Density::new(args.p, args.a)?;
    let r = solve::evolve(dim, &dens, args.mass, &args.evolver)?;
    let rec = header(dim, args.p, Some(args.a), args.mass)
        .with("vertices", args.evolver.vertices.into())
        .with("iterations", r.iterations.into())
        .with("converged", r.converged.into())
        .real("weighted_perimeter", r.weighted_perimeter)
        .real("weighted_mass", r.weighted_mass)
        .real("unweighted_perimeter", r.unweighted_perimeter)
        .real("unweighted_area", r.unweighted_area)
        .real("isoperimetric_quotient", isodense_core::evolver::isoperimetric_quotient(&r.final_curve))
        .real("radius", r.radius)
        .real("center_offset", r.center_offset)
        .real("lagrange_multiplier", r.lagrange_multiplier)
        .real("kappa_psi_spread", r.kappa_psi_spread)
        .real("max_mass_residual", r.max_mass_residual);
    if let Some(path) = args.out.as_deref() {
        emit(Some(path), &r.final_curve.to_csv())?;
    }
    emit(None, &rec.to_json())?;
    if !r.converged {
        return Err(CliError::Numeric(format!(
            "not converged after {} iterations",
            args.evolver.iters
        )));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_acrit(args: AcritArgs) -> Result<ExitCode, CliError> {
    let pr = &args.problem;
    let dim = solve::dimension(pr.dim)?;
    let a_crit = critical_offset(pr.p, dim, pr.mass)?;
    let mut rec = header(dim, pr.p, None, pr.mass).real("a_crit", a_crit);
    if let Some(r) = Density::new(pr.p, a_crit)?.log_convex_radius() {
        rec = rec.real("critical_radius", r);
    }
    if dim == Dimension::One {
        rec = rec.with("interval_threshold", num(symmetric_threshold(pr.p, pr.mass)?));
    }
    emit(args.out.as_deref(), &rec.to_json())?;
    Ok(ExitCode::SUCCESS)
}
