use super::{beta_for_mass, check_mass, Branch1d, IntervalSolution};
use crate::density::Density;
use crate::error::{domain, Error, Result};

fn check_offset(a: f64) -> Result<()> {
    if !(a.is_finite() && a >= 0.0) {
        return domain(format!("offset a must be non-negative, got {a}"));
    }
    Ok(())
}

/// Exact optimum for `rho = x^2 + a`.
///
/// Below `a_crit = (3 M0)^{2/3} / 4` the interval straddles the origin with
/// `alpha * beta = -a` and perimeter `(3 M0)^{2/3}` independent of `a`;
/// from `a_crit` on it is symmetric.
pub fn solve_p2(a: f64, m0: f64) -> Result<IntervalSolution> {
    check_offset(a)?;
    check_mass(m0)?;
    let dens = Density::new(2.0, a)?;
    let c = (3.0 * m0).cbrt();
    let a_crit = 0.25 * c * c;

    if a < a_crit {
        let beta = 0.5 * ((c * c - 4.0 * a).sqrt() + c);
        if a == 0.0 {
            return Ok(IntervalSolution::from_ends(&dens, 0.0, beta, Branch1d::AtOrigin));
        }
        let alpha = -a / beta;
        Ok(IntervalSolution::from_ends(&dens, alpha, beta, Branch1d::Asymmetric))
    } else {
        // beta = Z^{1/3} - a / Z^{1/3} with Z = 3M/4 + sqrt(9M^2 + 16a^3)/4.
        // The conjugate root Z' = a^3 / Z turns the difference into a
        // quotient that stays accurate for large a.
        let z = 0.75 * m0 + 0.25 * (9.0 * m0 * m0 + 16.0 * a * a * a).sqrt();
        let zc = a * a * a / z;
        let beta = 1.5 * m0 / (z.powf(2.0 / 3.0) + a + zc.powf(2.0 / 3.0));
        Ok(IntervalSolution::from_ends(&dens, -beta, beta, Branch1d::Symmetric))
    }
}

/// Exact optimum for `rho = |x| + a`: one end at the origin and
/// `beta = -a + sqrt(a^2 + 2 M0)`.
pub fn solve_p1(a: f64, m0: f64) -> Result<IntervalSolution> {
    check_offset(a)?;
    check_mass(m0)?;
    let dens = Density::new(1.0, a)?;
    let beta = 2.0 * m0 / (a + (a * a + 2.0 * m0).sqrt());
    Ok(IntervalSolution::from_ends(&dens, 0.0, beta, Branch1d::AtOrigin))
}

/// Optimum for `0 < p < 1`: one end at the origin, the other at the root of
/// `beta^{p+1} = (p+1)(M0 - a beta)`.
///
/// For `p = 1/2` the root is also computed from the cubic in `sqrt(beta)`
/// and the two must agree.
pub fn solve_p_lt_1(dens: &Density, m0: f64) -> Result<IntervalSolution> {
    let p = dens.p();
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Branch(format!("solver needs 0 < p < 1, got p = {p}")));
    }
    check_mass(m0)?;
    let beta = beta_for_mass(dens, m0)?;
    if p == 0.5 {
        if let Some(closed) = half_power_closed_form(dens.a(), m0) {
            if (closed - beta).abs() > 1e-6 * beta.max(1.0) {
                return Err(Error::Numeric(format!(
                    "p = 1/2 closed form {closed} disagrees with bisection {beta}"
                )));
            }
        }
    }
    Ok(IntervalSolution::from_ends(dens, 0.0, beta, Branch1d::AtOrigin))
}

/// Closed-form end point for `p = 1/2`, or `None` once the discriminant
/// turns negative at `a = (3 M0)^{1/3}`.
///
/// Cardano's formula for `u = sqrt(beta)` has the form
/// `u = Z+^{1/3} + Z-^{1/3} - a/2` with `Z+- = X +- sqrt(X^2 - Y^2)`,
/// `X = 3M/4 - a^3/8`, `Y = a^3/8`. `Z-` is formed as `Y^2 / Z+` to avoid
/// subtracting nearly equal numbers when `a` is small.
pub fn half_power_closed_form(a: f64, m0: f64) -> Option<f64> {
    if !(a >= 0.0 && m0 > 0.0) {
        return None;
    }
    let y = a * a * a / 8.0;
    let x = 0.75 * m0 - y;
    let disc = x * x - y * y;
    if disc < 0.0 || x <= 0.0 {
        return None;
    }
    let z_plus = x + disc.sqrt();
    let z_minus = y * y / z_plus;
    let u = z_plus.cbrt() + z_minus.cbrt() - 0.5 * a;
    Some(u * u)
}

/// Symmetric interval `[-beta, beta]` of mass `M0`, valid as the optimum
/// above the critical offset when `p > 1`.
pub fn solve_symmetric(dens: &Density, m0: f64) -> Result<IntervalSolution> {
    if dens.p() <= 1.0 {
        return Err(Error::Branch(format!(
            "symmetric branch needs p > 1, got p = {}",
            dens.p()
        )));
    }
    check_mass(m0)?;
    let beta = beta_for_mass(dens, 0.5 * m0)?;
    Ok(IntervalSolution::from_ends(dens, -beta, beta, Branch1d::Symmetric))
}
