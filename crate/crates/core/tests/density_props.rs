use isodense_core::numerics::central_difference;
use isodense_core::{critical_offset, Density, Dimension};
use proptest::prelude::*;

const DIMS: [Dimension; 3] = [Dimension::One, Dimension::Two, Dimension::Three];

proptest! {
    #[test]
    fn primitive_is_strictly_increasing(
        p in 0.1f64..6.0,
        a in 0.0f64..3.0,
        q1 in 0.0f64..4.0,
        dq in 1e-6f64..2.0,
    ) {
        let d = Density::new(p, a).unwrap();
        prop_assert!(d.primitive(q1 + dq).unwrap() > d.primitive(q1).unwrap());
    }

    #[test]
    fn primitive_differentiates_to_density(
        p in 0.1f64..6.0,
        a in 0.0f64..3.0,
        q in 0.05f64..3.0,
    ) {
        let d = Density::new(p, a).unwrap();
        let fd = central_difference(|x| d.primitive(x).unwrap(), q, 1e-5);
        let rho = d.eval(q).unwrap();
        prop_assert!(((fd - rho) / rho).abs() < 1e-6, "fd={fd} rho={rho}");
    }

    #[test]
    fn log_density_derivative_matches_finite_difference(
        p in 0.1f64..6.0,
        a in 0.01f64..3.0,
        r in 0.05f64..3.0,
    ) {
        let d = Density::new(p, a).unwrap();
        let fd = central_difference(|x| d.eval(x).unwrap().ln(), r, 1e-5);
        let psi = d.psi_derivative(r).unwrap();
        prop_assert!((fd - psi).abs() < 1e-6 * psi.abs().max(1.0));
    }

    #[test]
    fn log_concave_for_small_exponents(
        p in 0.05f64..=1.0,
        a in 0.0f64..3.0,
        r in 1e-3f64..10.0,
    ) {
        let d = Density::new(p, a).unwrap();
        prop_assert!(d.psi_second_derivative(r).unwrap() <= 0.0);
        prop_assert!(d.log_convex_radius().is_none());
    }

    #[test]
    fn convexity_switches_once_at_the_log_convex_radius(
        p in 1.05f64..6.0,
        a in 0.05f64..3.0,
    ) {
        let d = Density::new(p, a).unwrap();
        let rc = d.log_convex_radius().unwrap();
        let rs: Vec<f64> = (1..400).map(|k| rc * 4.0 * k as f64 / 400.0).collect();
        let signs: Vec<bool> = rs.iter().map(|&r| d.psi_second_derivative(r).unwrap() > 0.0).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        prop_assert_eq!(changes, 1);
        prop_assert!(d.psi_second_derivative(0.99 * rc).unwrap() > 0.0);
        prop_assert!(d.psi_second_derivative(1.01 * rc).unwrap() < 0.0);
    }

    #[test]
    fn critical_offset_and_mass_are_inverse(
        p in 1.1f64..6.0,
        m in 0.01f64..20.0,
        k in 0usize..3,
    ) {
        let dim = DIMS[k];
        let a = critical_offset(p, dim, m).unwrap();
        let back = Density::new(p, a).unwrap().critical_mass(dim).unwrap();
        prop_assert!(((back - m) / m).abs() < 1e-10);
    }
}

#[test]
fn critical_values_for_quadratic_density() {
    let a1 = critical_offset(2.0, Dimension::One, 1.0).unwrap();
    assert!((a1 - 3f64.powf(2.0 / 3.0) / 4.0).abs() < 1e-12);
    let a2 = critical_offset(2.0, Dimension::Two, 1.0).unwrap();
    assert!((a2 - (2.0 / (3.0 * std::f64::consts::PI)).sqrt()).abs() < 1e-12);
    let a3 = critical_offset(2.0, Dimension::Three, 1.0).unwrap();
    assert!((a3 - (15.0 / (32.0 * std::f64::consts::PI)).powf(0.4)).abs() < 1e-12);
}

#[test]
fn invalid_densities_are_rejected() {
    assert!(Density::new(0.0, 1.0).is_err());
    assert!(Density::new(-1.0, 1.0).is_err());
    assert!(Density::new(2.0, -0.1).is_err());
    assert!(Density::new(f64::NAN, 1.0).is_err());
    assert!(critical_offset(1.0, Dimension::Two, 1.0).is_err());
    assert!(Density::new(0.5, 1.0).unwrap().critical_mass(Dimension::One).is_err());
}
