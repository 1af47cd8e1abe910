//! The radial density `rho(r) = r^p + a` and the quantities derived from it.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Radial density `rho(r) = r^p + a` with `p > 0` and `a >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Density {
    p: f64,
    a: f64,
}

impl Density {
    pub fn new(p: f64, a: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return domain(format!("exponent p must be positive and finite, got {p}"));
        }
        if !(a.is_finite() && a >= 0.0) {
            return domain(format!("offset a must be non-negative and finite, got {a}"));
        }
        Ok(Density { p, a })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `r^p` for `r >= 0`, with fast paths for the integer exponents the
    /// closed-form results use.
    #[inline]
    pub fn power(&self, r: f64) -> f64 {
        if self.p == 2.0 {
            r * r
        } else if self.p == 1.0 {
            r
        } else if self.p == 4.0 {
            let r2 = r * r;
            r2 * r2
        } else {
            r.powf(self.p)
        }
    }

    /// `rho(r)`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return domain(format!("radial density needs r >= 0, got {r}"));
        }
        Ok(self.at(r))
    }

    /// `rho(|x|)` without argument checks.
    #[inline]
    pub fn at(&self, x: f64) -> f64 {
        self.power(x.abs()) + self.a
    }

    /// `F(q) = q^{p+1}/(p+1) + a q`, the primitive of `rho` with `F(0) = 0`.
    pub fn primitive(&self, q: f64) -> Result<f64> {
        if !(q >= 0.0) {
            return domain(format!("primitive needs q >= 0, got {q}"));
        }
        Ok(self.primitive_abs(q))
    }

    /// `F(|x|)` without argument checks.
    #[inline]
    pub fn primitive_abs(&self, x: f64) -> f64 {
        let q = x.abs();
        q * self.power(q) / (self.p + 1.0) + self.a * q
    }

    /// `d(log rho)/dr = p r^{p-1} / (r^p + a)`.
    pub fn psi_derivative(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return domain(format!("log-density derivative needs r > 0, got {r}"));
        }
        let rp = self.power(r);
        Ok(self.p * rp / (r * (rp + self.a)))
    }

    /// Second derivative of `log rho`:
    /// `p r^{p-2} (a(p-1) - r^p) / (r^p + a)^2`.
    pub fn psi_second_derivative(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return domain(format!("log-density curvature needs r > 0, got {r}"));
        }
        let rp = self.power(r);
        let denom = rp + self.a;
        Ok(self.p * rp / (r * r) * (self.a * (self.p - 1.0) - rp) / (denom * denom))
    }

    /// Radius `(a(p-1))^{1/p}` inside which `rho` is log-convex; `None` when
    /// `p <= 1` (or `a = 0`), where no such ball exists.
    pub fn log_convex_radius(&self) -> Option<f64> {
        if self.p <= 1.0 || self.a <= 0.0 {
            return None;
        }
        Some((self.a * (self.p - 1.0)).powf(1.0 / self.p))
    }

    /// Mass of the origin-centred ball of critical radius,
    /// `k_d p (d+1) / (d (p+d)) (p-1)^{d/p} a^{(p+d)/p}`.
    pub fn critical_mass(&self, dim: Dimension) -> Result<f64> {
        if self.p <= 1.0 {
            return Err(Error::Branch(format!(
                "critical mass is only defined for p > 1, got p = {}",
                self.p
            )));
        }
        let (p, d, k) = (self.p, dim.d() as f64, dim.sphere_constant());
        Ok(k * p * (d + 1.0) / (d * (p + d))
            * (p - 1.0).powf(d / p)
            * self.a.powf((p + d) / p))
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r^{} + {}", self.p, self.a)
    }
}

/// Ambient dimension of the problem.
///
/// `sphere_constant` is the measure of the unit sphere: 2 points in 1D,
/// `2 pi` in 2D and `4 pi` in 3D. The 1D value must count both ends of the
/// symmetric interval `[-R, R]`; with it the general critical offset
/// reduces to the dedicated interval formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dimension {
    One,
    Two,
    Three,
}

impl Dimension {
    pub fn d(self) -> u32 {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
            Dimension::Three => 3,
        }
    }

    pub fn sphere_constant(self) -> f64 {
        match self {
            Dimension::One => 2.0,
            Dimension::Two => 2.0 * PI,
            Dimension::Three => 4.0 * PI,
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        match d {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            3 => Ok(Dimension::Three),
            _ => domain(format!("dimension must be 1, 2 or 3, got {d}")),
        }
    }
}

/// Offset above which the origin-centred ball of mass `mass` is
/// isoperimetric:
/// `(d(p+d) / (k_d p (d+1)))^{p/(p+d)} (p-1)^{-d/(p+d)} M^{p/(p+d)}`.
pub fn critical_offset(p: f64, dim: Dimension, mass: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Branch(format!(
            "critical offset is only defined for p > 1, got p = {p}"
        )));
    }
    if !(mass > 0.0) {
        return domain(format!("mass must be positive, got {mass}"));
    }
    let (d, k) = (dim.d() as f64, dim.sphere_constant());
    let e = p / (p + d);
    Ok((d * (p + d) / (k * p * (d + 1.0))).powf(e) * (p - 1.0).powf(-d / (p + d)) * mass.powf(e))
}
