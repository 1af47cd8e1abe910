use isodense_core::interval1d::{self, solve_general};
use isodense_core::radial::{solve_2d_p2, solve_3d_p2, symmetric_ball};
use isodense_core::{
    critical_offset, evolve_2d, evolve_3d_axisym, fmt12, Density, Dimension, EvolveConfig,
    EvolveReport,
};

use crate::args::EvolverOpts;
use crate::error::CliError;
use crate::output::Record;

/// Offset below which an evolved region counts as centred, relative to its radius.
const CENTRED_FRACTION: f64 = 1e-3;

pub enum Solved {
    Line {
        alpha: f64,
        beta: f64,
        perimeter: f64,
        branch: &'static str,
        lambda: Option<f64>,
        method: &'static str,
        mass_residual: f64,
    },
    Ball {
        radius: f64,
        offset: f64,
        perimeter: f64,
        branch: &'static str,
        lambda: Option<f64>,
        method: &'static str,
        mass_residual: f64,
        report: Option<Box<EvolveReport>>,
    },
}

pub fn dimension(d: u32) -> Result<Dimension, CliError> {
    Dimension::try_from(d).map_err(CliError::from)
}

pub fn evolve_config(o: &EvolverOpts) -> EvolveConfig {
    EvolveConfig { vertices: o.vertices, max_iters: o.iters, tol: o.tol }
}

pub fn evolve(dim: Dimension, dens: &Density, mass: f64, o: &EvolverOpts) -> Result<EvolveReport, CliError> {
    let cfg = evolve_config(o);
    Ok(match dim {
        Dimension::Two => evolve_2d(dens, mass, &cfg)?,
        Dimension::Three => evolve_3d_axisym(dens, mass, &cfg)?,
        Dimension::One => return Err(CliError::Usage("the evolver needs --dim 2 or 3".into())),
    })
}

pub fn solve(
    dim: Dimension,
    dens: &Density,
    mass: f64,
    force_numeric: bool,
    o: &EvolverOpts,
) -> Result<Solved, CliError> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(CliError::Usage(format!("--mass must be positive, got {mass}")));
    }
    let (p, a) = (dens.p(), dens.a());
    if dim == Dimension::One {
        let exact = !force_numeric && (p == 2.0 || p <= 1.0);
        let s = if force_numeric { solve_general(dens, mass)? } else { interval1d::solve(dens, mass)? };
        return Ok(Solved::Line {
            alpha: s.alpha,
            beta: s.beta,
            perimeter: s.perimeter,
            branch: s.branch.as_str(),
            lambda: s.lagrange_multiplier,
            method: if exact { "exact" } else { "numeric" },
            mass_residual: (s.mass(dens) - mass).abs(),
        });
    }

    let closed = if force_numeric {
        None
    } else if p == 2.0 {
        Some(if dim == Dimension::Two { solve_2d_p2(a, mass)? } else { solve_3d_p2(a, mass)? })
    } else if p > 1.0 && a >= critical_offset(p, dim, mass)? {
        Some(symmetric_ball(dens, dim, mass)?)
    } else {
        None
    };
    if let Some(b) = closed {
        return Ok(Solved::Ball {
            radius: b.radius,
            offset: b.center_offset,
            perimeter: b.perimeter,
            branch: b.branch.as_str(),
            lambda: b.lagrange_multiplier,
            method: "exact",
            mass_residual: (b.mass - mass).abs(),
            report: None,
        });
    }
    let r = evolve(dim, dens, mass, o)?;
    if !r.converged {
        return Err(CliError::Numeric(format!(
            "evolver did not converge within {} iterations at a = {}",
            o.iters,
            fmt12(a)
        )));
    }
    Ok(Solved::Ball {
        radius: r.radius,
        offset: r.center_offset,
        perimeter: r.weighted_perimeter,
        branch: if r.center_offset <= CENTRED_FRACTION * r.radius { "Centred" } else { "OffCentre" },
        lambda: Some(r.lagrange_multiplier),
        method: "evolver",
        mass_residual: (r.weighted_mass - mass).abs(),
        report: Some(Box::new(r)),
    })
}

impl Solved {
    pub fn to_record(&self, base: Record) -> Record {
        match self {
            Solved::Line { alpha, beta, perimeter, branch, lambda, method, mass_residual } => base
                .text("method", method)
                .text("branch", branch)
                .real("alpha", *alpha)
                .real("beta", *beta)
                .real("perimeter", *perimeter)
                .opt("lagrange_multiplier", *lambda)
                .real("mass_residual", *mass_residual),
            Solved::Ball { radius, offset, perimeter, branch, lambda, method, mass_residual, report } => {
                let rec = base
                    .text("method", method)
                    .text("branch", branch)
                    .real("R", *radius)
                    .real("r0", *offset)
                    .real("perimeter", *perimeter)
                    .opt("lagrange_multiplier", *lambda)
                    .real("mass_residual", *mass_residual);
                match report {
                    Some(r) => rec
                        .with("iterations", r.iterations.into())
                        .real("kappa_psi_spread", r.kappa_psi_spread)
                        .real(
                            "isoperimetric_quotient",
                            isodense_core::evolver::isoperimetric_quotient(&r.final_curve),
                        ),
                    None => rec,
                }
            }
        }
    }

    /// `branch, first, second, perimeter, mass_residual` for sweep rows.
    pub fn csv_cells(&self) -> [String; 5] {
        match self {
            Solved::Line { alpha, beta, perimeter, branch, mass_residual, .. } => {
                [branch.to_string(), fmt12(*alpha), fmt12(*beta), fmt12(*perimeter), fmt12(*mass_residual)]
            }
            Solved::Ball { radius, offset, perimeter, branch, mass_residual, .. } => {
                [branch.to_string(), fmt12(*radius), fmt12(*offset), fmt12(*perimeter), fmt12(*mass_residual)]
            }
        }
    }
}
