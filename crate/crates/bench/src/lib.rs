//! Fixed workloads shared by the criterion benchmarks.

use isodense_core::interval1d::{self, Interval};
use isodense_core::{evolve_2d, Density, EvolveConfig};

/// `(p, a)` pairs covering every 1D solver path.
pub const INTERVAL_CASES: &[(f64, f64)] = &[(2.0, 0.5), (1.0, 0.5), (0.5, 0.5), (4.0, 0.2), (3.0, 1.0)];

pub fn solve_interval(p: f64, a: f64) -> f64 {
    let dens = Density::new(p, a).expect("valid density");
    interval1d::solve(&dens, 1.0).expect("solvable").perimeter
}

/// Ten disjoint unit-width intervals spread over `[-20, 20]`.
pub fn scattered_intervals() -> Vec<Interval> {
    (0..10)
        .map(|k| {
            let lo = -20.0 + 4.0 * k as f64;
            Interval::new(lo, lo + 1.0).expect("ordered")
        })
        .collect()
}

pub fn short_evolve(vertices: usize) -> f64 {
    let dens = Density::new(2.0, 0.1).expect("valid density");
    let cfg = EvolveConfig { vertices, max_iters: 50, tol: 1e-12 };
    evolve_2d(&dens, 1.0, &cfg).expect("evolves").weighted_perimeter
}
