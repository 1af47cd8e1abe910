use std::f64::consts::PI;

use isodense_core::evolver::isoperimetric_quotient;
use isodense_core::interval1d::{
    brute_force_oracle, mass1d, perimeter1d, reduce_intervals_traced, solve, solve_symmetric,
};
use isodense_core::radial::{
    offcenter_circle_quadrature, offcenter_p2_2d, offcenter_p2_3d, offcenter_sphere_quadrature,
    solve_2d_p2, solve_3d_p2,
};
use isodense_core::{critical_offset, evolve_2d, evolve_3d_axisym, Density, Dimension, EvolveConfig, Interval};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::args::Suite;
use crate::error::CliError;

struct Checks {
    failed: usize,
    total: usize,
}

impl Checks {
    fn new() -> Self {
        Self { failed: 0, total: 0 }
    }

    /// Passes when `value <= limit`.
    fn check(&mut self, name: &str, value: f64, limit: f64) {
        let ok = value <= limit;
        self.total += 1;
        if !ok {
            self.failed += 1;
        }
        println!("{} {name}: {value:.3e} (limit {limit:.1e})", if ok { "PASS" } else { "FAIL" });
    }
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn oracle1d(c: &mut Checks) -> Result<(), CliError> {
    for p in [0.5, 1.0, 1.5, 2.0, 3.0, 4.0] {
        for a in [0.0, 0.1, 0.3, 0.6, 1.0, 2.0] {
            let d = Density::new(p, a)?;
            let s = solve(&d, 1.0)?;
            let o = brute_force_oracle(&d, 1.0, 10_000)?;
            // the scan can only be worse than the true optimum
            let gap = (s.perimeter - o.perimeter) / o.perimeter;
            c.check(&format!("p={p} a={a} solver vs scan"), gap.max(0.0).max(-gap), 1e-4);
        }
    }
    Ok(())
}

fn branch_continuity(c: &mut Checks) -> Result<(), CliError> {
    for m in [0.5f64, 1.0, 3.0] {
        let flat = (3.0 * m).powf(2.0 / 3.0);
        let a1 = critical_offset(2.0, Dimension::One, m)?;
        let sym = solve_symmetric(&Density::new(2.0, a1)?, m)?.perimeter;
        c.check(&format!("1D M={m} asymmetric vs symmetric at a_crit"), rel(sym, flat), 1e-9);

        for (dim, f) in [
            (Dimension::Two, solve_2d_p2 as fn(f64, f64) -> isodense_core::Result<_>),
            (Dimension::Three, solve_3d_p2),
        ] {
            let ac = critical_offset(2.0, dim, m)?;
            let below = f(ac, m)?.perimeter;
            let above = f(ac * (1.0 + 1e-12), m)?.perimeter;
            c.check(&format!("{}D M={m} off-centre vs centred at a_crit", dim.d()), rel(above, below), 1e-9);
        }
    }
    Ok(())
}

fn reduction(c: &mut Checks) -> Result<(), CliError> {
    let mut rng = StdRng::seed_from_u64(11);
    let ps = [0.5, 1.0, 2.0, 4.0];
    let (mut dm, mut grow, mut dmerge) = (0.0f64, 0.0f64, 0.0f64);
    for case in 0..200 {
        let p = ps[case % 4];
        let a = rng.gen_range(0.05..2.0);
        let d = Density::new(p, a)?;
        let k = rng.gen_range(1..=6);
        let mut cuts: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(-3.0..3.0)).collect();
        cuts.sort_by(f64::total_cmp);
        let ivs = cuts
            .chunks_exact(2)
            .filter(|w| w[1] > w[0])
            .map(|w| Interval::new(w[0], w[1]))
            .collect::<Result<Vec<_>, _>>()?;
        let r = reduce_intervals_traced(&d, &ivs)?;
        let m_in: f64 = ivs.iter().map(|iv| mass1d(&d, iv)).sum();
        let p_in: f64 = ivs.iter().map(|iv| perimeter1d(&d, iv)).sum();
        dm = dm.max(rel(mass1d(&d, &r.interval), m_in));
        grow = grow.max((r.final_perimeter - p_in) / p_in);
        if let Some(drop) = r.merge_reduction {
            dmerge = dmerge.max((drop - 2.0 * a).abs());
        }
    }
    c.check("200 cases: relative mass change", dm, 1e-10);
    c.check("200 cases: relative perimeter growth", grow, 0.0);
    c.check("200 cases: merge step minus 2a", dmerge, 1e-12);
    Ok(())
}

fn radial_quadrature(c: &mut Checks) -> Result<(), CliError> {
    let mut rng = StdRng::seed_from_u64(13);
    let (mut w2, mut w3) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let r = rng.gen_range(0.1..2.0);
        let r0 = rng.gen_range(0.0..1.0) * r;
        let a = rng.gen_range(0.0..2.0);
        let d = Density::new(2.0, a)?;
        let (p, m) = offcenter_p2_2d(r, r0, a);
        let (qp, qm) = offcenter_circle_quadrature(&d, r, r0);
        w2 = w2.max(rel(qp, p)).max(rel(qm, m));
        let (s, m) = offcenter_p2_3d(r, r0, a);
        let (qs, qm) = offcenter_sphere_quadrature(&d, r, r0);
        w3 = w3.max(rel(qs, s)).max(rel(qm, m));
    }
    c.check("circle: closed form vs quadrature", w2, 1e-8);
    c.check("sphere: closed form vs quadrature", w3, 1e-8);
    Ok(())
}

fn evolver_p2(c: &mut Checks) -> Result<(), CliError> {
    let a_crit = critical_offset(2.0, Dimension::Two, 1.0)?;
    for a in [0.1, 0.2, 0.4, 0.6, 1.0] {
        let d = Density::new(2.0, a)?;
        let r = evolve_2d(&d, 1.0, &EvolveConfig::default())?;
        let e = solve_2d_p2(a, 1.0)?;
        c.check(&format!("2D a={a} perimeter"), rel(r.weighted_perimeter, e.perimeter), 5e-3);
        c.check(&format!("2D a={a} radius"), rel(r.radius, e.radius), 5e-3);
        if a < a_crit {
            c.check(&format!("2D a={a} centre offset"), rel(r.center_offset, e.center_offset), 2e-2);
        } else {
            c.check(&format!("2D a={a} centre offset / R"), r.center_offset / e.radius, 1e-2);
        }
        c.check(
            &format!("2D a={a} |quotient - 1|"),
            (isoperimetric_quotient(&r.final_curve) - 1.0).abs(),
            1e-3,
        );
    }
    let d = Density::new(2.0, 0.3)?;
    let r = evolve_3d_axisym(&d, 1.0, &EvolveConfig { vertices: 128, ..EvolveConfig::default() })?;
    let e = solve_3d_p2(0.3, 1.0)?;
    c.check("3D a=0.3 surface", rel(r.weighted_perimeter, e.perimeter), 1e-2);
    c.check("3D a=0.3 centre offset", rel(r.center_offset, e.center_offset), 3e-2);
    c.check("3D flat surface value", (e.perimeter - 8.0 * PI * (15.0 / (32.0 * PI)).powf(0.8)).abs(), 1e-12);
    Ok(())
}

/// Runs a suite, printing one line per check. `Ok(false)` if any check failed.
pub fn run(suite: Suite) -> Result<bool, CliError> {
    let mut c = Checks::new();
    match suite {
        Suite::Oracle1d => oracle1d(&mut c)?,
        Suite::BranchContinuity => branch_continuity(&mut c)?,
        Suite::Reduction => reduction(&mut c)?,
        Suite::RadialQuadrature => radial_quadrature(&mut c)?,
        Suite::EvolverP2 => evolver_p2(&mut c)?,
    }
    println!("{} of {} checks passed", c.total - c.failed, c.total);
    Ok(c.failed == 0)
}
