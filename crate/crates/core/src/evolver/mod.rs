//! Constrained descent of weighted perimeter in the plane and for
//! axisymmetric surfaces in space.

mod curve;
mod descent;
pub(crate) mod functionals;

use serde::Serialize;

pub use curve::{
    isoperimetric_quotient, mass_gradient_2d, mass_gradient_axisym, perimeter_gradient_2d,
    surface_gradient_axisym, weighted_mass_2d, weighted_mass_axisym, weighted_perimeter_2d,
    weighted_surface_axisym, PolyCurve, Profile,
};

use crate::density::{Density, Dimension};
use crate::error::{domain, Result};
use crate::radial::symmetric_ball;
use descent::{Descent, Geometry, State};
use functionals::{menger_curvature, outward_normal, Point};

/// Discretisation and stopping parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolveConfig {
    /// Number of vertices (planar) or profile segments (axisymmetric).
    pub vertices: usize,
    pub max_iters: usize,
    /// Relative perimeter decrease over 50 iterations below which the run stops.
    pub tol: f64,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        Self { vertices: 512, max_iters: 20_000, tol: 1e-10 }
    }
}

impl EvolveConfig {
    pub const MIN_PLANAR: usize = 64;
    pub const MIN_AXISYM: usize = 16;

    fn validate(&self, min: usize) -> Result<()> {
        if self.vertices < min {
            return domain(format!("need at least {min} vertices, got {}", self.vertices));
        }
        if self.max_iters == 0 {
            return domain("max_iters must be positive");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return domain(format!("tol must be positive, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvolveReport {
    pub dim: u32,
    /// Planar curve, or the closed meridian section of the surface.
    pub final_curve: PolyCurve,
    /// Weighted perimeter (planar) or weighted surface area.
    pub weighted_perimeter: f64,
    pub weighted_mass: f64,
    /// Euclidean length and area of `final_curve`.
    pub unweighted_perimeter: f64,
    pub unweighted_area: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `(max - min) / |mean|` of the weighted curvature over the vertices.
    pub kappa_psi_spread: f64,
    /// Radius of the disc or ball with the same Euclidean area or volume.
    pub radius: f64,
    /// Distance of the area or volume centroid from the origin.
    pub center_offset: f64,
    pub lagrange_multiplier: f64,
    #[serde(skip)]
    pub perimeter_history: Vec<f64>,
    /// History indices produced by a resampling step rather than a descent step.
    #[serde(skip)]
    pub resampled_at: Vec<usize>,
    pub max_mass_residual: f64,
}

fn check_mass(m0: f64) -> Result<()> {
    if !(m0 > 0.0 && m0.is_finite()) {
        return domain(format!("mass must be positive and finite, got {m0}"));
    }
    Ok(())
}

/// Starting circle: the centred disc or ball of mass `m0`, shifted off the
/// origin so that off-centre minimisers are reachable.
fn initial_state(dens: &Density, dim: Dimension, m0: f64, nv: usize) -> Result<State> {
    let r = symmetric_ball(dens, dim, m0)?.radius;
    let center = if dens.p() == 2.0 { (r * r - dens.a()).max(0.0).sqrt() } else { 0.5 * r };
    Ok(State { center, radii: vec![r; nv] })
}

/// Minimises weighted perimeter among planar curves enclosing weighted mass `m0`.
pub fn evolve_2d(dens: &Density, m0: f64, cfg: &EvolveConfig) -> Result<EvolveReport> {
    check_mass(m0)?;
    cfg.validate(EvolveConfig::MIN_PLANAR)?;
    let n = cfg.vertices;
    let engine = Descent::new(dens, Geometry::Planar, n);
    let init = initial_state(dens, Dimension::Two, m0, n)?;
    let out = engine.run(init, m0, cfg.max_iters, cfg.tol)?;

    let curve = PolyCurve::from_star_shaped(out.vertices);
    let area = curve.area();
    let c = curve.centroid();
    Ok(EvolveReport {
        dim: 2,
        kappa_psi_spread: spread(&planar_kappa(dens, curve.vertices())?),
        unweighted_perimeter: curve.length(),
        unweighted_area: area,
        radius: (area / std::f64::consts::PI).sqrt(),
        center_offset: c[0].hypot(c[1]),
        final_curve: curve,
        weighted_perimeter: out.perimeter,
        weighted_mass: out.mass,
        iterations: out.iterations,
        converged: out.converged,
        lagrange_multiplier: -out.lambda,
        perimeter_history: out.history,
        resampled_at: out.recentred_at,
        max_mass_residual: out.max_mass_residual,
    })
}

/// Minimises weighted area among surfaces of revolution about the x-axis
/// enclosing weighted volume `m0`. `cfg.vertices` counts profile segments.
pub fn evolve_3d_axisym(dens: &Density, m0: f64, cfg: &EvolveConfig) -> Result<EvolveReport> {
    check_mass(m0)?;
    cfg.validate(EvolveConfig::MIN_AXISYM)?;
    let n = cfg.vertices;
    let engine = Descent::new(dens, Geometry::Axisym, n);
    let init = initial_state(dens, Dimension::Three, m0, n + 1)?;
    let out = engine.run(init, m0, cfg.max_iters, cfg.tol)?;

    let profile = Profile::new(out.vertices)?;
    let (vol, xc) = functionals::axisym_volume_centroid(profile.points());
    let kappa = axisym_kappa(dens, profile.points())?;
    let curve = profile.meridian();
    Ok(EvolveReport {
        dim: 3,
        kappa_psi_spread: spread(&kappa),
        unweighted_perimeter: curve.length(),
        unweighted_area: curve.area(),
        radius: (3.0 * vol / (4.0 * std::f64::consts::PI)).cbrt(),
        center_offset: xc.abs(),
        final_curve: curve,
        weighted_perimeter: out.perimeter,
        weighted_mass: out.mass,
        iterations: out.iterations,
        converged: out.converged,
        lagrange_multiplier: -out.lambda,
        perimeter_history: out.history,
        resampled_at: out.recentred_at,
        max_mass_residual: out.max_mass_residual,
    })
}

fn radial_term(dens: &Density, x: Point, n: Point) -> Result<Option<f64>> {
    let r = x[0].hypot(x[1]);
    if r < 1e-12 {
        return Ok(None);
    }
    Ok(Some(dens.psi_derivative(r)? * (x[0] * n[0] + x[1] * n[1]) / r))
}

/// Discrete `kappa + d psi / d n` at every vertex of a closed polygon.
pub fn planar_kappa(dens: &Density, v: &[Point]) -> Result<Vec<f64>> {
    let n = v.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let (a, b, c) = (v[(j + n - 1) % n], v[j], v[(j + 1) % n]);
        if let Some(t) = radial_term(dens, b, outward_normal(a, c))? {
            out.push(menger_curvature(a, b, c) + t);
        }
    }
    Ok(out)
}

/// Discrete mean curvature plus `d psi / d n` at the interior profile points
/// of a surface of revolution.
pub fn axisym_kappa(dens: &Density, v: &[Point]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(v.len());
    for j in 1..v.len() - 1 {
        let (a, b, c) = (v[j - 1], v[j], v[j + 1]);
        let nrm = outward_normal(a, c);
        if let Some(t) = radial_term(dens, b, nrm)? {
            out.push(menger_curvature(a, b, c) + nrm[1] / b[1] + t);
        }
    }
    Ok(out)
}

/// `(max - min) / |mean|`.
pub fn spread(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (hi - lo) / mean.abs()
}
