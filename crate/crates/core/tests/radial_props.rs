use std::f64::consts::PI;

use isodense_core::radial::{
    centred_ball_measures, kappa_psi, offcenter_circle_quadrature, offcenter_p2_2d,
    offcenter_p2_3d, offcenter_sphere_quadrature, solve_2d_p2, solve_3d_p2, symmetric_ball,
};
use isodense_core::{critical_offset, BallBranch, Density, Dimension};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_match_quadrature(
        r in 0.1f64..2.0,
        frac in 0.0f64..1.0,
        a in 0.0f64..2.0,
    ) {
        let r0 = frac * r;
        let d = Density::new(2.0, a).unwrap();
        let (p2, m2) = offcenter_p2_2d(r, r0, a);
        let (q2, n2) = offcenter_circle_quadrature(&d, r, r0);
        prop_assert!(((p2 - q2) / p2).abs() < 1e-8 && ((m2 - n2) / m2).abs() < 1e-8);
        let (s3, m3) = offcenter_p2_3d(r, r0, a);
        let (t3, n3) = offcenter_sphere_quadrature(&d, r, r0);
        prop_assert!(((s3 - t3) / s3).abs() < 1e-8 && ((m3 - n3) / m3).abs() < 1e-8);
    }

    #[test]
    fn centred_ball_hits_mass(
        p in 0.2f64..5.0,
        a in 0.0f64..3.0,
        m in 0.05f64..10.0,
        three in prop::bool::ANY,
    ) {
        let dim = if three { Dimension::Three } else { Dimension::Two };
        let d = Density::new(p, a).unwrap();
        let s = symmetric_ball(&d, dim, m).unwrap();
        let (_, mass) = centred_ball_measures(&d, dim, s.radius);
        prop_assert!((mass - m).abs() <= 1e-12 * m);
    }

    #[test]
    fn offcentre_branch_exists_exactly_below_threshold(
        m in 0.1f64..5.0,
        t in 0.0f64..2.0,
    ) {
        for (dim, solve) in [
            (Dimension::Two, solve_2d_p2 as fn(f64, f64) -> _),
            (Dimension::Three, solve_3d_p2),
        ] {
            let a_crit = critical_offset(2.0, dim, m).unwrap();
            let a = t * a_crit;
            let s = solve(a, m).unwrap();
            let disc = s.radius * s.radius - a;
            if t <= 1.0 {
                prop_assert_eq!(s.branch, BallBranch::OffCentre);
                prop_assert!(disc >= -1e-12);
            } else {
                prop_assert_eq!(s.branch, BallBranch::Centred);
                // the off-centre radius would need r0^2 < 0 here
                let r_off2 = match dim {
                    Dimension::Two => (2.0 * m / (3.0 * PI)).sqrt(),
                    _ => (15.0 * m / (32.0 * PI)).powf(0.4),
                };
                prop_assert!(r_off2 - a < 0.0);
            }
        }
    }
}

#[test]
fn quadratic_branches_are_flat_and_meet() {
    for m in [0.5, 1.0, 3.0] {
        let a2 = critical_offset(2.0, Dimension::Two, m).unwrap();
        let p_flat = 4.0 * PI * (2.0 * m / (3.0 * PI)).powf(0.75);
        for k in 0..=20 {
            let s = solve_2d_p2(a2 * k as f64 / 20.0, m).unwrap();
            assert!((s.perimeter - p_flat).abs() < 1e-12 * p_flat);
            assert!((s.mass - m).abs() < 1e-12 * m);
        }
        let above = solve_2d_p2(a2 * (1.0 + 1e-12), m).unwrap();
        assert_eq!(above.branch, BallBranch::Centred);
        assert!(((above.perimeter - p_flat) / p_flat).abs() < 1e-9);

        let a3 = critical_offset(2.0, Dimension::Three, m).unwrap();
        let s_flat = 8.0 * PI * (15.0 * m / (32.0 * PI)).powf(0.8);
        for k in 0..=20 {
            let s = solve_3d_p2(a3 * k as f64 / 20.0, m).unwrap();
            assert!((s.perimeter - s_flat).abs() < 1e-12 * s_flat);
        }
        let above = solve_3d_p2(a3 * (1.0 + 1e-12), m).unwrap();
        assert!(((above.perimeter - s_flat) / s_flat).abs() < 1e-9);
    }
}

#[test]
fn centred_circle_example() {
    let s = solve_2d_p2(1.0, 1.0).unwrap();
    let r2 = -1.0 + (1.0 + 2.0 / PI).sqrt();
    assert!((s.radius * s.radius - r2).abs() < 1e-14);
    assert!((s.perimeter - 2.0 * PI * s.radius * (r2 + 1.0)).abs() < 1e-13);
}

#[test]
fn multiplier_is_stationary_for_offcentre_circle() {
    let (a, m) = (0.2, 1.0);
    let s = solve_2d_p2(a, m).unwrap();
    let lam = s.lagrange_multiplier.unwrap();
    // vary the radius at fixed centre: dP + lam dM = 0 for an optimum
    let h = 1e-6;
    let (pp, mp) = offcenter_p2_2d(s.radius + h, s.center_offset, a);
    let (pm, mm) = offcenter_p2_2d(s.radius - h, s.center_offset, a);
    let ratio = (pp - pm) / (mp - mm);
    assert!((ratio + lam).abs() < 1e-6, "{ratio} {lam}");
}

#[test]
fn generalised_curvature_of_offcentre_circle_is_constant() {
    let (a, m) = (0.2, 1.0);
    let s = solve_2d_p2(a, m).unwrap();
    let d = Density::new(2.0, a).unwrap();
    let (big_r, c) = (s.radius, s.center_offset);
    // polar form of the circle about the origin: r^2 - 2 r c cos t + c^2 = R^2
    let polar = |t: f64| c * t.cos() + (big_r * big_r - c * c * t.sin().powi(2)).sqrt();
    let h = 1e-4;
    let values: Vec<f64> = (0..64)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 64.0;
            let r = polar(t);
            let rd = (polar(t + h) - polar(t - h)) / (2.0 * h);
            let rdd = (polar(t + h) - 2.0 * r + polar(t - h)) / (h * h);
            kappa_psi(&d, r, rd, rdd).unwrap()
        })
        .collect();
    for v in &values {
        assert!((v - 2.0 / big_r).abs() < 1e-5);
    }
}

#[test]
fn bad_inputs() {
    assert!(solve_2d_p2(-0.1, 1.0).is_err());
    assert!(solve_3d_p2(0.1, 0.0).is_err());
    let d = Density::new(2.0, 0.1).unwrap();
    assert!(symmetric_ball(&d, Dimension::One, 1.0).is_err());
    assert!(kappa_psi(&d, 0.0, 0.0, 0.0).is_err());
}
