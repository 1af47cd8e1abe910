use serde::Serialize;

use super::{beta_for_mass, mass1d, perimeter1d, Interval};
use crate::density::Density;
use crate::error::{domain, Error, Result};

/// Perimeter and mass sampled on a regular `(|alpha|, beta)` grid.
///
/// Storage is row-major with the row index running over `|alpha|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourGrid {
    pub n: usize,
    pub alpha_abs: Vec<f64>,
    pub beta: Vec<f64>,
    pub perimeter: Vec<f64>,
    pub mass: Vec<f64>,
}

impl ContourGrid {
    pub fn perimeter_at(&self, i: usize, j: usize) -> f64 {
        self.perimeter[i * self.n + j]
    }

    pub fn mass_at(&self, i: usize, j: usize) -> f64 {
        self.mass[i * self.n + j]
    }
}

pub fn contour_grid(
    dens: &Density,
    alpha_max: f64,
    beta_max: f64,
    n: usize,
) -> Result<ContourGrid> {
    if n < 2 {
        return Err(Error::Config(format!("contour grid needs n >= 2, got {n}")));
    }
    if !(alpha_max > 0.0 && beta_max > 0.0) {
        return domain("contour grid extents must be positive");
    }
    let axis = |max: f64| -> Vec<f64> {
        (0..n).map(|k| max * k as f64 / (n - 1) as f64).collect()
    };
    let alpha_abs = axis(alpha_max);
    let beta = axis(beta_max);
    let mut perimeter = Vec::with_capacity(n * n);
    let mut mass = Vec::with_capacity(n * n);
    for &x in &alpha_abs {
        for &y in &beta {
            let iv = Interval::new(-x, y)?;
            perimeter.push(perimeter1d(dens, &iv));
            mass.push(mass1d(dens, &iv));
        }
    }
    Ok(ContourGrid {
        n,
        alpha_abs,
        beta,
        perimeter,
        mass,
    })
}

/// `beta` on the mass contour `M(|alpha|, beta) = m` at the given `|alpha|`,
/// or `None` if `|alpha|` alone already exceeds the mass.
pub fn constraint_beta(dens: &Density, alpha_abs: f64, m: f64) -> Result<Option<f64>> {
    let rest = m - dens.primitive_abs(alpha_abs);
    if rest < 0.0 {
        return Ok(None);
    }
    beta_for_mass(dens, rest).map(Some)
}

/// Second derivatives `d^2 beta / d|alpha|^2` along the contour of constant
/// perimeter and along the contour of constant mass through
/// `(|alpha|, beta)`.
///
/// For `0 < p < 1` the first is positive (convex perimeter contours) and the
/// second negative (concave mass contours).
pub fn contour_curvatures(dens: &Density, alpha_abs: f64, beta: f64) -> Result<(f64, f64)> {
    if !(alpha_abs > 0.0 && beta > 0.0) {
        return domain("contour curvatures need |alpha| > 0 and beta > 0");
    }
    let (p, a) = (dens.p(), dens.a());
    let (x, y) = (alpha_abs, beta);
    let perimeter_contour =
        -(p - 1.0) / y.powf(p - 1.0) * (x.powf(p - 2.0) + x.powf(2.0 * p - 2.0) / y.powf(p));
    let (rx, ry) = (x.powf(p) + a, y.powf(p) + a);
    let mass_contour =
        -(p * x.powf(p - 1.0) * ry * ry + p * y.powf(p - 1.0) * rx * rx) / (ry * ry * ry);
    Ok((perimeter_contour, mass_contour))
}
