//! Circles and spheres: the origin-centred ball for any `p`, the
//! off-centre closed forms for `p = 2`, and the generalised curvature.

use std::f64::consts::PI;

use serde::Serialize;

use crate::density::{critical_offset, Density, Dimension};
use crate::error::{domain, Error, Result};
use crate::numerics::{bisect, expand_bracket, GaussLegendre, RootConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BallBranch {
    Centred,
    OffCentre,
}

impl BallBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            BallBranch::Centred => "Centred",
            BallBranch::OffCentre => "OffCentre",
        }
    }
}

/// A circle (2D) or sphere (3D) of radius `radius` whose centre sits at
/// distance `center_offset` from the origin. `perimeter` is the weighted
/// circumference in 2D and the weighted surface area in 3D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallSolution {
    pub dim: Dimension,
    pub radius: f64,
    pub center_offset: f64,
    pub perimeter: f64,
    pub mass: f64,
    pub branch: BallBranch,
    pub lagrange_multiplier: Option<f64>,
}

fn check_ball_dim(dim: Dimension) -> Result<()> {
    if dim == Dimension::One {
        return domain("balls are defined for d = 2 or 3; use interval1d for d = 1");
    }
    Ok(())
}

fn check_inputs(a: f64, m0: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return domain(format!("offset a must be non-negative, got {a}"));
    }
    if !(m0.is_finite() && m0 > 0.0) {
        return domain(format!("target mass must be positive, got {m0}"));
    }
    Ok(())
}

/// Weighted perimeter (or surface) and mass of the origin-centred ball of
/// radius `r`.
///
/// 2D: `P = 2 pi (R^{p+1} + R a)`, `M = 2 pi R^2 (R^p/(p+2) + a/2)`.
/// 3D: `S = 4 pi (R^{p+2} + R^2 a)`, `M = 4 pi R^3 (R^p/(p+3) + a/3)`.
pub fn centred_ball_measures(dens: &Density, dim: Dimension, r: f64) -> (f64, f64) {
    let (p, a) = (dens.p(), dens.a());
    let rp = dens.power(r);
    match dim {
        Dimension::One => (2.0 * (rp + a), 2.0 * (r * rp / (p + 1.0) + a * r)),
        Dimension::Two => (
            2.0 * PI * r * (rp + a),
            2.0 * PI * r * r * (rp / (p + 2.0) + 0.5 * a),
        ),
        Dimension::Three => (
            4.0 * PI * r * r * (rp + a),
            4.0 * PI * r * r * r * (rp / (p + 3.0) + a / 3.0),
        ),
    }
}

/// Multiplier `-(dP/dR)/(dM/dR)` of the centred ball.
fn centred_multiplier(dens: &Density, dim: Dimension, r: f64) -> f64 {
    let (p, a) = (dens.p(), dens.a());
    let rp = dens.power(r);
    let d = dim.d() as f64;
    -((p + d - 1.0) * rp + (d - 1.0) * a) / (r * (rp + a))
}

/// Origin-centred circle or sphere of weighted mass `m0`, radius found by
/// bisection on the mass equation.
pub fn symmetric_ball(dens: &Density, dim: Dimension, m0: f64) -> Result<BallSolution> {
    check_ball_dim(dim)?;
    check_inputs(dens.a(), m0)?;
    let f = |r: f64| centred_ball_measures(dens, dim, r).1 - m0;
    let (lo, hi) = expand_bracket(&f, 0.0, 1.0, 200)?;
    let radius = bisect(f, lo, hi, &RootConfig::default())?;
    let (perimeter, mass) = centred_ball_measures(dens, dim, radius);
    Ok(BallSolution {
        dim,
        radius,
        center_offset: 0.0,
        perimeter,
        mass,
        branch: BallBranch::Centred,
        lagrange_multiplier: Some(centred_multiplier(dens, dim, radius)),
    })
}

/// Exact `(P, M)` of a circle of radius `r` centred at distance `r0` from the
/// origin under `rho = r^2 + a`.
pub fn offcenter_p2_2d(r: f64, r0: f64, a: f64) -> (f64, f64) {
    let p = 2.0 * PI * (r * r * r + r * r0 * r0 + r * a);
    let m = 0.5 * PI * (r.powi(4) + 2.0 * r * r * r0 * r0 + 2.0 * r * r * a);
    (p, m)
}

/// Exact `(S, M)` of a sphere of radius `r` centred at distance `r0` from
/// the origin under `rho = r^2 + a`.
pub fn offcenter_p2_3d(r: f64, r0: f64, a: f64) -> (f64, f64) {
    let s = 4.0 * PI * (r.powi(4) + r * r * r0 * r0 + r * r * a);
    let m = 4.0 * PI / 15.0 * (3.0 * r.powi(5) + 5.0 * r.powi(3) * r0 * r0 + 5.0 * r.powi(3) * a);
    (s, m)
}

const QUAD_NODES: usize = 64;

/// `(P, M)` of an off-centre circle for any `p`, by tensor Gauss–Legendre
/// quadrature of the polar integrals.
pub fn offcenter_circle_quadrature(dens: &Density, r: f64, r0: f64) -> (f64, f64) {
    let gl = GaussLegendre::rule(QUAD_NODES).expect("64-node rule is supported");
    let a = dens.a();
    let radial = |q: f64, th: f64| {
        let s2 = (q * q + r0 * r0 + 2.0 * q * r0 * th.cos()).max(0.0);
        dens.power(s2.sqrt()) + a
    };
    let p = gl.integrate(-PI, PI, |th| r * radial(r, th));
    let m = gl.integrate(0.0, r, |q| gl.integrate(-PI, PI, |th| q * radial(q, th)));
    (p, m)
}

/// `(S, M)` of an off-centre sphere for any `p`, by tensor Gauss–Legendre
/// quadrature in `(q, theta, phi)`.
pub fn offcenter_sphere_quadrature(dens: &Density, r: f64, r0: f64) -> (f64, f64) {
    let gl = GaussLegendre::rule(QUAD_NODES).expect("64-node rule is supported");
    let a = dens.a();
    let shell = |q: f64| {
        gl.integrate(-PI, PI, |th| {
            gl.integrate(0.0, PI, |ph| {
                let s2 = (q * q + r0 * r0 + 2.0 * q * r0 * ph.sin() * th.cos()).max(0.0);
                q * q * ph.sin() * (dens.power(s2.sqrt()) + a)
            })
        })
    };
    (shell(r), gl.integrate(0.0, r, shell))
}

/// Conjectured 2D optimum for `p = 2`.
///
/// For `a <= a_crit = sqrt(2 M0 / (3 pi))` a circle of fixed radius
/// `(2 M0 / (3 pi))^{1/4}` centred at `r0 = sqrt(R^2 - a)`; above it the
/// origin-centred circle.
pub fn solve_2d_p2(a: f64, m0: f64) -> Result<BallSolution> {
    check_inputs(a, m0)?;
    let a_crit = critical_offset(2.0, Dimension::Two, m0)?;
    if a <= a_crit {
        let r2 = (2.0 * m0 / (3.0 * PI)).sqrt();
        let radius = r2.sqrt();
        let center_offset = (r2 - a).max(0.0).sqrt();
        let (perimeter, mass) = offcenter_p2_2d(radius, center_offset, a);
        Ok(BallSolution {
            dim: Dimension::Two,
            radius,
            center_offset,
            perimeter,
            mass,
            branch: BallBranch::OffCentre,
            lagrange_multiplier: Some(-2.0 / radius),
        })
    } else {
        let s = (a * a + 2.0 * m0 / PI).sqrt();
        // R^2 = s - a, written to avoid cancellation for large a
        let r2 = 2.0 * m0 / (PI * (s + a));
        let radius = r2.sqrt();
        let dens = Density::new(2.0, a)?;
        let (perimeter, mass) = centred_ball_measures(&dens, Dimension::Two, radius);
        Ok(BallSolution {
            dim: Dimension::Two,
            radius,
            center_offset: 0.0,
            perimeter,
            mass,
            branch: BallBranch::Centred,
            lagrange_multiplier: Some(centred_multiplier(&dens, Dimension::Two, radius)),
        })
    }
}

/// Conjectured 3D optimum for `p = 2`: radius `(15 M0 / (32 pi))^{1/5}` and
/// `S = 8 pi R^4` below `a_crit = (15 M0 / (32 pi))^{2/5}`, the centred
/// sphere above.
pub fn solve_3d_p2(a: f64, m0: f64) -> Result<BallSolution> {
    check_inputs(a, m0)?;
    let a_crit = critical_offset(2.0, Dimension::Three, m0)?;
    if a <= a_crit {
        let radius = (15.0 * m0 / (32.0 * PI)).powf(0.2);
        let center_offset = (radius * radius - a).max(0.0).sqrt();
        let (perimeter, mass) = offcenter_p2_3d(radius, center_offset, a);
        Ok(BallSolution {
            dim: Dimension::Three,
            radius,
            center_offset,
            perimeter,
            mass,
            branch: BallBranch::OffCentre,
            lagrange_multiplier: Some(-3.0 / radius),
        })
    } else {
        symmetric_ball(&Density::new(2.0, a)?, Dimension::Three, m0)
    }
}

/// Generalised curvature of a polar curve `r(theta)`:
/// `(r^2 + 2 r'^2 - r r'') / (r^2 + r'^2)^{3/2} + psi'(r) r / (r^2 + r'^2)^{1/2}`
/// with `psi' = p r^{p-1} / (r^p + a)`.
pub fn kappa_psi(dens: &Density, r: f64, r_dot: f64, r_ddot: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("generalised curvature needs r > 0, got {r}")));
    }
    let s2 = r * r + r_dot * r_dot;
    let classical = (r * r + 2.0 * r_dot * r_dot - r * r_ddot) / (s2 * s2.sqrt());
    Ok(classical + dens.psi_derivative(r)? * r / s2.sqrt())
}
