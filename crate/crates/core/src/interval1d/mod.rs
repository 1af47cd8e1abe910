//! Isoperimetric intervals on the real line.
//!
//! With `rho(x) = |x|^p + a` the optimal region is a single interval
//! `[alpha, beta]` with `alpha <= 0 < beta`. Closed forms exist for
//! `p = 2`, `p = 1` and `0 < p < 1`; the remaining exponents go through the
//! constrained line search in [`solve_general`], checked against the
//! exhaustive [`brute_force_oracle`].

mod closed_form;
mod contour;
mod reduce;
mod search;

pub use closed_form::{
    half_power_closed_form, solve_p1, solve_p2, solve_p_lt_1, solve_symmetric,
};
pub use contour::{constraint_beta, contour_curvatures, contour_grid, ContourGrid};
pub use reduce::{reduce_intervals, reduce_intervals_traced, Reduction};
pub use search::{brute_force_oracle, solve_general};

use serde::Serialize;

use crate::density::Density;
use crate::error::{domain, Result};
use crate::numerics::{bisect, expand_bracket, RootConfig};

/// Closed interval `[lo, hi]` of the real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return domain(format!("interval ends must be finite, got [{lo}, {hi}]"));
        }
        if lo > hi {
            return domain(format!("interval has lo > hi: [{lo}, {hi}]"));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains_origin(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }
}

/// Which family the optimal interval belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch1d {
    /// One end at the origin (`alpha = 0`).
    AtOrigin,
    /// Straddles the origin with `|alpha| != beta`.
    Asymmetric,
    /// Symmetric about the origin (`alpha = -beta`).
    Symmetric,
}

impl Branch1d {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch1d::AtOrigin => "AtOrigin",
            Branch1d::Asymmetric => "Asymmetric",
            Branch1d::Symmetric => "Symmetric",
        }
    }
}

/// Optimal interval `[alpha, beta]` for a prescribed mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalSolution {
    pub alpha: f64,
    pub beta: f64,
    pub perimeter: f64,
    pub branch: Branch1d,
    /// Multiplier of the mass constraint, from `dL/dbeta = 0`.
    pub lagrange_multiplier: Option<f64>,
}

impl IntervalSolution {
    pub fn interval(&self) -> Interval {
        Interval {
            lo: self.alpha,
            hi: self.beta,
        }
    }

    pub fn mass(&self, dens: &Density) -> f64 {
        mass1d(dens, &self.interval())
    }

    pub(crate) fn from_ends(dens: &Density, alpha: f64, beta: f64, branch: Branch1d) -> Self {
        IntervalSolution {
            alpha,
            beta,
            perimeter: dens.power(alpha.abs()) + dens.power(beta) + 2.0 * dens.a(),
            branch,
            lagrange_multiplier: Some(multiplier(dens, beta)),
        }
    }
}

/// `lambda = -p beta^{p-1} / (beta^p + a)` from stationarity in `beta`.
pub(crate) fn multiplier(dens: &Density, beta: f64) -> f64 {
    let p = dens.p();
    let bp = dens.power(beta);
    -p * bp / (beta * (bp + dens.a()))
}

/// Weighted perimeter `rho(lo) + rho(hi)`.
pub fn perimeter1d(dens: &Density, iv: &Interval) -> f64 {
    dens.at(iv.lo) + dens.at(iv.hi)
}

/// Weighted mass `int_lo^hi rho(|x|) dx`.
pub fn mass1d(dens: &Density, iv: &Interval) -> f64 {
    if iv.contains_origin() {
        dens.primitive_abs(iv.hi) + dens.primitive_abs(iv.lo)
    } else {
        (dens.primitive_abs(iv.hi) - dens.primitive_abs(iv.lo)).abs()
    }
}

/// Solves `F(beta) = target` for `beta >= 0`.
pub(crate) fn beta_for_mass(dens: &Density, target: f64) -> Result<f64> {
    if target <= 0.0 {
        return Ok(0.0);
    }
    let p = dens.p();
    let f = |b: f64| dens.primitive_abs(b) - target;
    let start = ((target * (p + 1.0)).powf(1.0 / (p + 1.0))).max(1.0);
    let (lo, hi) = expand_bracket(&f, 0.0, start, 200)?;
    bisect(f, lo, hi, &RootConfig::default())
}

pub(crate) fn check_mass(m0: f64) -> Result<()> {
    if !(m0.is_finite() && m0 > 0.0) {
        return domain(format!("target mass must be positive, got {m0}"));
    }
    Ok(())
}

/// Offset above which the optimal interval of mass `m0` is symmetric,
/// `((p+1)/(4p))^{p/(p+1)} (p-1)^{-1/(p+1)} m0^{p/(p+1)}`, for `p > 1`.
pub fn symmetric_threshold(p: f64, m0: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(crate::error::Error::Branch(format!(
            "intervals are never symmetric for p = {p}"
        )));
    }
    check_mass(m0)?;
    let e = p / (p + 1.0);
    Ok(((p + 1.0) / (4.0 * p)).powf(e) * (p - 1.0).powf(-1.0 / (p + 1.0)) * m0.powf(e))
}

/// Picks the exact solver for `p` when one exists, the numerical search
/// otherwise.
pub fn solve(dens: &Density, m0: f64) -> Result<IntervalSolution> {
    let p = dens.p();
    if p == 2.0 {
        solve_p2(dens.a(), m0)
    } else if p == 1.0 {
        solve_p1(dens.a(), m0)
    } else if p < 1.0 {
        solve_p_lt_1(dens, m0)
    } else {
        solve_general(dens, m0)
    }
}
