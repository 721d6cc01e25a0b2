use std::f64::consts::PI;

use proptest::prelude::*;

use photonfield_core::polarization::{
    check_relations, completeness_matrix, completeness_matrix_complex, make_triad,
    make_triad_with_gauge, phase_shift, Direction, TransverseGauge,
};
use photonfield_core::vector::{self, cdot};

fn direction() -> impl Strategy<Value = Direction> {
    (-1.0f64..=1.0, 0.0..2.0 * PI).prop_map(|(cos_theta, phi)| {
        let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
        Direction::from_vector([sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta]).unwrap()
    })
}

fn gauge() -> impl Strategy<Value = TransverseGauge> {
    prop_oneof![Just(TransverseGauge::default()), Just(TransverseGauge::alternate())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relations_hold_everywhere(k in direction(), g in gauge()) {
        let triad = make_triad_with_gauge(k, &g);
        let report = check_relations(&triad);
        prop_assert_eq!(report.entries.len(), 7);
        prop_assert!(report.max_residual() < 1e-12, "{:?}", report);
    }

    #[test]
    fn completeness_is_transverse_projector(k in direction()) {
        let triad = make_triad(k);
        let m = completeness_matrix(&triad);
        let full = completeness_matrix_complex(&triad);
        let kv = k.as_array();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 } - kv[i] * kv[j];
                prop_assert!((m[i][j] - expected).abs() < 1e-12);
                prop_assert!(full[i][j].im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_shift_preserves_relations(k in direction(), theta in -10.0f64..10.0) {
        let triad = make_triad(k);
        let (plus, minus) = phase_shift(&triad, theta);
        let kv = vector::complexify(k.as_array());
        prop_assert!(cdot(&plus, &kv).norm() < 1e-12);
        prop_assert!((vector::inner(&plus, &plus).re - 1.0).abs() < 1e-12);
        prop_assert!(vector::inner(&plus, &minus).norm() < 1e-12);
        prop_assert!(cdot(&plus, &plus).norm() < 1e-12);
        prop_assert!(cdot(&minus, &minus).norm() < 1e-12);
    }
}

#[test]
fn gauge_switch_boundary() {
    // either side of the reference-axis switch keeps every relation
    for x in [0.899_999_999, 0.9, 0.900_000_001, 0.999_999, 1.0] {
        let k = Direction::from_vector([x, (1.0 - x * x).max(0.0).sqrt(), 0.0]).unwrap();
        assert!(check_relations(&make_triad(k)).max_residual() < 1e-12);
    }
}
