use isodense_core::interval1d::{
    brute_force_oracle, mass1d, perimeter1d, reduce_intervals_traced, solve, solve_general,
    solve_p2, solve_symmetric, symmetric_threshold,
};
use isodense_core::{Branch1d, Density, Interval};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `beta` with `F(beta) - F(-alpha_abs) = m`, found by plain doubling and
/// halving so it shares no code with the library.
fn beta_on_constraint(p: f64, a: f64, alpha_abs: f64, m: f64) -> f64 {
    let prim = |x: f64| x.powf(p + 1.0) / (p + 1.0) + a * x;
    let need = m - prim(alpha_abs);
    let mut hi = 1.0;
    while prim(hi) < need {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if prim(mid) < need {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn random_intervals(rng: &mut StdRng) -> Vec<Interval> {
    let k = rng.gen_range(1..=6);
    let mut cuts: Vec<f64> = (0..2 * k).map(|_| rng.gen_range(-3.0..3.0)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.chunks_exact(2)
        .filter(|c| c[1] > c[0])
        .map(|c| Interval::new(c[0], c[1]).unwrap())
        .collect()
}

#[test]
fn quadratic_branch_is_flat_below_threshold() {
    let target = 3f64.powf(2.0 / 3.0);
    let a_crit = target / 4.0;
    for k in 0..=50 {
        let a = a_crit * k as f64 / 50.0;
        let s = solve_p2(a, 1.0).unwrap();
        assert!((s.perimeter - target).abs() < 1e-12, "a={a}");
        assert!((s.alpha * s.beta + a).abs() < 1e-12);
    }
    let below = solve_p2(a_crit * (1.0 - 1e-12), 1.0).unwrap();
    let at = solve_p2(a_crit, 1.0).unwrap();
    assert_eq!(at.branch, Branch1d::Symmetric);
    assert!((below.perimeter - at.perimeter).abs() < 1e-9);
}

#[test]
fn symmetric_threshold_matches_quadratic_case() {
    let t = symmetric_threshold(2.0, 1.0).unwrap();
    assert!((t - 3f64.powf(2.0 / 3.0) / 4.0).abs() < 1e-14);
    assert!(symmetric_threshold(1.0, 1.0).is_err());
}

#[test]
fn symmetric_solver_for_quartic() {
    let d = Density::new(4.0, 1.0).unwrap();
    let s = solve_symmetric(&d, 1.0).unwrap();
    assert!((0.4 * s.beta.powi(5) + 2.0 * s.beta - 1.0).abs() < 1e-12);
    let oracle = beta_on_constraint(4.0, 1.0, s.beta, 1.0);
    assert!((oracle - s.beta).abs() < 1e-9);
}

#[test]
fn quartic_small_offset_is_asymmetric_near_origin() {
    let d = Density::new(4.0, 0.2).unwrap();
    let s = solve(&d, 1.0).unwrap();
    assert_ne!(s.branch, Branch1d::Symmetric);
    assert!(s.alpha.abs() < s.beta);
}

#[test]
fn oracle_rejects_coarse_grid() {
    let d = Density::new(3.0, 0.2).unwrap();
    assert!(brute_force_oracle(&d, 1.0, 50).is_err());
}

#[test]
fn reduction_suite() {
    let mut rng = StdRng::seed_from_u64(7);
    let ps = [0.5, 1.0, 2.0, 4.0];
    let mut merged = 0;
    for case in 0..200 {
        let p = ps[case % 4];
        let a = rng.gen_range(0.05..2.0);
        let d = Density::new(p, a).unwrap();
        let ivs = random_intervals(&mut rng);
        let r = reduce_intervals_traced(&d, &ivs).unwrap();
        let m_in: f64 = ivs.iter().map(|iv| mass1d(&d, iv)).sum();
        let p_in: f64 = ivs.iter().map(|iv| perimeter1d(&d, iv)).sum();
        assert!(((mass1d(&d, &r.interval) - m_in) / m_in).abs() < 1e-10);
        assert!(r.final_perimeter <= p_in * (1.0 + 1e-12));
        assert!((r.final_perimeter - perimeter1d(&d, &r.interval)).abs() < 1e-12 * p_in);
        if let Some(drop) = r.merge_reduction {
            assert!((drop - 2.0 * a).abs() < 1e-12);
            merged += 1;
        }
    }
    assert!(merged > 50);
}

#[test]
fn reduction_rejects_bad_input() {
    let d = Density::new(2.0, 0.5).unwrap();
    assert!(reduce_intervals_traced(&d, &[]).is_err());
    let ivs = [Interval::new(0.0, 1.0).unwrap(), Interval::new(0.5, 2.0).unwrap()];
    assert!(reduce_intervals_traced(&d, &ivs).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solutions_carry_requested_mass(
        p in prop::sample::select(vec![0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0]),
        a in 0.0f64..2.0,
        m in 0.1f64..5.0,
    ) {
        let d = Density::new(p, a).unwrap();
        let s = solve(&d, m).unwrap();
        prop_assert!((s.mass(&d) - m).abs() <= 1e-9 * m);
        prop_assert!(s.alpha <= 0.0 && s.beta > 0.0);
    }

    #[test]
    fn numeric_search_agrees_with_exhaustive_scan(
        p in 1.2f64..5.0,
        a in 0.02f64..1.5,
        m in 0.3f64..3.0,
    ) {
        let d = Density::new(p, a).unwrap();
        let s = solve_general(&d, m).unwrap();
        let o = brute_force_oracle(&d, m, 4000).unwrap();
        prop_assert!(((s.perimeter - o.perimeter) / o.perimeter).abs() < 1e-4);
        prop_assert!(s.perimeter <= o.perimeter * (1.0 + 1e-10));
    }

    #[test]
    fn optimum_survives_perturbation_along_constraint(
        p in prop::sample::select(vec![0.5, 1.0, 1.5, 2.0, 3.0, 4.0]),
        a in 0.05f64..1.5,
        sign in prop::bool::ANY,
    ) {
        let m = 1.0;
        let d = Density::new(p, a).unwrap();
        let s = solve(&d, m).unwrap();
        let step = if sign { 1e-3 } else { -1e-3 };
        let alpha_abs = (-s.alpha + step).max(0.0);
        let beta = beta_on_constraint(p, a, alpha_abs, m);
        let iv = Interval::new(-alpha_abs, beta).unwrap();
        prop_assert!(perimeter1d(&d, &iv) >= s.perimeter - 1e-8);
    }
}
