use std::f64::consts::PI;

use proptest::prelude::*;

use photonfield_core::classical::{
    boost, build_tensor, extract_fields, kinematics, null_invariants, rotating_vectors,
    ClassicalPhoton,
};
use photonfield_core::polarization::Direction;
use photonfield_core::units::Units;
use photonfield_core::vector::{cross, dot, norm, scale, sub};

fn direction() -> impl Strategy<Value = Direction> {
    (-1.0f64..=1.0, 0.0..2.0 * PI).prop_map(|(cos_theta, phi)| {
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        Direction::from_vector([sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta]).unwrap()
    })
}

fn photon() -> impl Strategy<Value = ClassicalPhoton> {
    (0.1f64..5.0, direction(), prop_oneof![Just(1), Just(-1)], -PI..PI)
        .prop_map(|(omega, k, s, theta)| ClassicalPhoton::new(omega, k, s, theta).unwrap())
}

fn velocity() -> impl Strategy<Value = [f64; 3]> {
    (direction(), 0.0f64..0.95).prop_map(|(d, speed)| scale(speed, d.as_array()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn boosts_keep_the_photon_null(p in photon(), t in -5.0f64..5.0, beta in velocity()) {
        let (e, b) = rotating_vectors(&p, t);
        let f = build_tensor(&e, &b);
        let g = boost(&f, &beta).unwrap();
        let (e2, b2) = extract_fields(&g).unwrap();
        let scale2 = dot(&e2, &e2).max(1.0);
        prop_assert!(g.antisymmetry_residual() < 1e-9 * scale2.sqrt());
        let (eb, diff) = null_invariants(&g);
        prop_assert!(eb.abs() < 1e-9 * scale2);
        prop_assert!(diff.abs() < 1e-9 * scale2);
        // the boosted pair is again a transverse plane-wave configuration
        let k2 = scale(1.0 / norm(&cross(&e2, &b2)), &cross(&e2, &b2));
        prop_assert!(norm(&sub(&b2, &cross(&k2, &e2))) < 1e-9 * scale2.sqrt());
    }

    #[test]
    fn rotating_vectors_are_transverse_and_steady(p in photon(), t in -5.0f64..5.0) {
        let (e, b) = rotating_vectors(&p, t);
        let k = p.k.as_array();
        prop_assert!(dot(&e, k).abs() < 1e-12 * p.omega);
        prop_assert!(dot(&e, &b).abs() < 1e-12 * p.omega * p.omega);
        prop_assert!((norm(&e) - p.omega).abs() < 1e-12 * p.omega);
        let (eb, diff) = null_invariants(&build_tensor(&e, &b));
        prop_assert!(eb.abs() < 1e-12 && diff.abs() < 1e-12 * p.omega * p.omega);
    }

    #[test]
    fn parallel_doppler_factor(p in photon(), t in -5.0f64..5.0, beta in -0.95f64..0.95) {
        let (e, b) = rotating_vectors(&p, t);
        let v = scale(beta, p.k.as_array());
        let (e2, _) = extract_fields(&boost(&build_tensor(&e, &b), &v).unwrap()).unwrap();
        let gamma = 1.0 / (1.0 - beta * beta).sqrt();
        prop_assert!((norm(&e2) / norm(&e) - gamma * (1.0 - beta)).abs() < 1e-10 * gamma);
    }

    #[test]
    fn massless_kinematics(p in photon(), hbar in 0.1f64..3.0, c in 0.1f64..3.0) {
        let k = kinematics(&p, &Units { hbar, c });
        prop_assert!((k.energy - c * norm(&k.momentum)).abs() < 1e-12 * k.energy);
        prop_assert!(norm(&cross(&k.spin, &k.momentum)) < 1e-12 * k.energy);
        prop_assert!((dot(&k.spin, p.k.as_array()) - p.helicity as f64 * hbar).abs() < 1e-12);
    }
}

#[test]
fn doppler_reference_point() {
    let p = ClassicalPhoton::new(1.0, Direction::z(), 1, 0.0).unwrap();
    let (e, b) = rotating_vectors(&p, 0.0);
    let (e2, _) = extract_fields(&boost(&build_tensor(&e, &b), &[0.0, 0.0, 0.6]).unwrap()).unwrap();
    assert!((norm(&e2) - 0.5).abs() < 1e-15);
}
