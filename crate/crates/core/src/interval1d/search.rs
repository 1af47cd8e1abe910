use super::{beta_for_mass, check_mass, Branch1d, IntervalSolution};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::numerics::golden_min;

/// Relative tolerance used to snap a numerical optimum onto the
/// `AtOrigin` or `Symmetric` family.
const BRANCH_TOL: f64 = 1e-6;

const COARSE_SCAN: usize = 64;

/// The mass constraint restricted to `alpha <= 0 < beta`, parametrised by
/// `x = |alpha|` on `[0, x_sym]` where `x_sym` is the symmetric end.
struct Constraint<'a> {
    dens: &'a Density,
    m0: f64,
    x_sym: f64,
}

impl<'a> Constraint<'a> {
    fn new(dens: &'a Density, m0: f64) -> Result<Self> {
        let x_sym = beta_for_mass(dens, 0.5 * m0)?;
        Ok(Constraint { dens, m0, x_sym })
    }

    fn beta(&self, x: f64) -> Result<f64> {
        if x >= self.x_sym {
            return Ok(self.x_sym);
        }
        beta_for_mass(self.dens, self.m0 - self.dens.primitive_abs(x))
    }

    fn perimeter(&self, x: f64) -> f64 {
        match self.beta(x) {
            Ok(b) => self.dens.power(x) + self.dens.power(b) + 2.0 * self.dens.a(),
            Err(_) => f64::INFINITY,
        }
    }

    fn solution(&self, x: f64, branch: Branch1d) -> Result<IntervalSolution> {
        let (alpha, beta) = match branch {
            Branch1d::AtOrigin => (0.0, self.beta(0.0)?),
            Branch1d::Symmetric => (-self.x_sym, self.x_sym),
            Branch1d::Asymmetric => (-x, self.beta(x)?),
        };
        Ok(IntervalSolution::from_ends(self.dens, alpha, beta, branch))
    }
}

/// Numerical optimum for any `p > 0`.
///
/// Walks the mass constraint in `|alpha|`, recovering `beta` by bisection,
/// brackets the minimum with a coarse scan and refines it by golden-section
/// search. The end candidates (one end at the origin, symmetric) are always
/// compared, and an interior optimum within `1e-6` of an end is snapped to
/// it.
pub fn solve_general(dens: &Density, m0: f64) -> Result<IntervalSolution> {
    check_mass(m0)?;
    let c = Constraint::new(dens, m0)?;
    let x_sym = c.x_sym;

    let step = x_sym / COARSE_SCAN as f64;
    let (mut best_i, mut best_p) = (0, f64::INFINITY);
    for i in 0..=COARSE_SCAN {
        let p = c.perimeter(i as f64 * step);
        if p < best_p {
            best_i = i;
            best_p = p;
        }
    }
    let lo = best_i.saturating_sub(1) as f64 * step;
    let hi = ((best_i + 1).min(COARSE_SCAN)) as f64 * step;
    let (x_int, p_int) = golden_min(|x| c.perimeter(x), lo, hi, 1e-12 * x_sym.max(1e-300));

    let p_origin = c.perimeter(0.0);
    let p_sym = c.perimeter(x_sym);
    let beta_int = c.beta(x_int)?;

    let branch = if p_int < p_origin.min(p_sym) {
        if x_int < BRANCH_TOL * beta_int {
            Branch1d::AtOrigin
        } else if (beta_int - x_int).abs() < BRANCH_TOL * beta_int {
            Branch1d::Symmetric
        } else {
            Branch1d::Asymmetric
        }
    } else if p_origin <= p_sym {
        Branch1d::AtOrigin
    } else {
        Branch1d::Symmetric
    };
    c.solution(x_int, branch)
}

/// Exhaustive oracle: evaluates the constrained perimeter at `grid_n`
/// equally spaced `|alpha|` in `[0, x_sym]` and returns the best grid point.
/// No local search, so its accuracy is limited by the grid spacing.
pub fn brute_force_oracle(dens: &Density, m0: f64, grid_n: usize) -> Result<IntervalSolution> {
    if grid_n < 100 {
        return Err(Error::Config(format!("brute force grid needs >= 100 points, got {grid_n}")));
    }
    check_mass(m0)?;
    let c = Constraint::new(dens, m0)?;
    let h = c.x_sym / (grid_n - 1) as f64;
    let (mut best_i, mut best_p) = (0, f64::INFINITY);
    for i in 0..grid_n {
        let p = c.perimeter(i as f64 * h);
        if p < best_p {
            best_i = i;
            best_p = p;
        }
    }
    let branch = if best_i == 0 {
        Branch1d::AtOrigin
    } else if best_i == grid_n - 1 {
        Branch1d::Symmetric
    } else {
        Branch1d::Asymmetric
    };
    c.solution(best_i as f64 * h, branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval1d::{mass1d, solve_p1, solve_p2, solve_symmetric};

    fn dens(p: f64, a: f64) -> Density {
        Density::new(p, a).unwrap()
    }

    #[test]
    fn general_matches_p2_closed_form() {
        let s = solve_general(&dens(2.0, 0.25), 1.0).unwrap();
        let exact = solve_p2(0.25, 1.0).unwrap();
        assert_eq!(s.branch, Branch1d::Asymmetric);
        assert!((s.perimeter - exact.perimeter).abs() < 1e-6);
        assert!((s.alpha - exact.alpha).abs() < 1e-4);
    }

    #[test]
    fn general_matches_p1_closed_form() {
        let s = solve_general(&dens(1.0, 0.5), 1.0).unwrap();
        let exact = solve_p1(0.5, 1.0).unwrap();
        assert_eq!(s.branch, Branch1d::AtOrigin);
        assert_eq!(s.alpha, 0.0);
        assert!((s.perimeter - exact.perimeter).abs() < 1e-6);
    }

    #[test]
    fn general_symmetric_above_critical_offset() {
        let s = solve_general(&dens(2.0, 1.0), 1.0).unwrap();
        assert_eq!(s.branch, Branch1d::Symmetric);
        assert!((s.perimeter - solve_p2(1.0, 1.0).unwrap().perimeter).abs() < 1e-9);
    }

    #[test]
    fn p4_is_asymmetric_and_beats_both_ends() {
        let d = dens(4.0, 0.2);
        let s = solve_general(&d, 1.0).unwrap();
        assert_eq!(s.branch, Branch1d::Asymmetric);
        let sym = solve_symmetric(&d, 1.0).unwrap();
        let origin_beta = crate::interval1d::beta_for_mass(&d, 1.0).unwrap();
        let p_origin = origin_beta.powi(4) + 0.4;
        assert!(s.perimeter < sym.perimeter - 1e-6);
        assert!(s.perimeter < p_origin - 1e-6);
        // perimeter decreases with a on the asymmetric branch
        let lo = solve_general(&dens(4.0, 0.19), 1.0).unwrap().perimeter;
        let hi = solve_general(&dens(4.0, 0.21), 1.0).unwrap().perimeter;
        assert!(lo > s.perimeter && s.perimeter > hi);
    }

    #[test]
    fn general_solutions_carry_the_target_mass() {
        for &(p, a) in &[(0.5, 0.3), (1.5, 0.1), (3.0, 0.05), (4.0, 2.0)] {
            let d = dens(p, a);
            let s = solve_general(&d, 1.7).unwrap();
            assert!((mass1d(&d, &s.interval()) - 1.7).abs() < 1e-9 * 1.7);
            assert!(s.alpha <= 0.0 && s.beta > 0.0);
        }
    }

    #[test]
    fn oracle_examples() {
        let s = brute_force_oracle(&dens(2.0, 0.25), 1.0, 10_000).unwrap();
        assert!((s.perimeter - 3f64.powf(2.0 / 3.0)).abs() < 1e-4);
        let s = brute_force_oracle(&dens(1.0, 2.0), 1.0, 10_000).unwrap();
        assert_eq!(s.branch, Branch1d::AtOrigin);
        let s = brute_force_oracle(&dens(2.0, 1.0), 1.0, 10_000).unwrap();
        assert_eq!(s.branch, Branch1d::Symmetric);
        assert!(brute_force_oracle(&dens(2.0, 1.0), 1.0, 99).is_err());
    }
}
