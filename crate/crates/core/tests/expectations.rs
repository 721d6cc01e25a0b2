use std::f64::consts::PI;

use proptest::prelude::*;

use photonfield_core::ensembles::{
    amplitude_profile, coherent_product, coherent_state, expectation, expectation_grid,
    field_expectation_closed_form, field_expectation_matrix, number_state, second_moment,
    superposition, vacuum, vacuum_e2_lattice_sum, vacuum_e2_matrix, FockState,
};
use photonfield_core::fields::{field, FieldKind, SpacetimePoint};
use photonfield_core::fock::{annihilation, build_basis, FockBasis, LatticeConfig, ModeSpec};
use photonfield_core::units::Units;
use photonfield_core::Complex64;

fn mixed_basis() -> FockBasis {
    let modes = vec![
        ModeSpec::new(1, [0, 0, 1]),
        ModeSpec::new(-1, [0, 0, 1]),
        ModeSpec::new(1, [1, -1, 0]),
        ModeSpec::new(-1, [0, 2, 1]),
    ];
    build_basis(&LatticeConfig::new(2.0 * PI, Units { hbar: 1.0, c: 1.0 }, modes, 2)).unwrap()
}

fn state(dim: usize) -> impl Strategy<Value = FockState> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter_map("zero vector", |v| {
            FockState::from_vector(v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(), 0.0).ok()
        })
}

fn point() -> impl Strategy<Value = SpacetimePoint> {
    ([-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0], -5.0f64..5.0).prop_map(|(r, t)| SpacetimePoint::new(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn closed_form_matches_matrix_path(
        psi in state(81),
        points in proptest::collection::vec(point(), 10),
    ) {
        let basis = mixed_basis();
        for x in &points {
            for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
                let closed = field_expectation_closed_form(&basis, &psi, kind, x).unwrap();
                let matrix = field_expectation_matrix(&basis, &psi, kind, x).unwrap();
                for i in 0..3 {
                    prop_assert!((closed[i] - matrix[i]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn ladder_sums_match_matrix_amplitudes(psi in state(81)) {
        let basis = mixed_basis();
        let profile = amplitude_profile(&basis, &psi).unwrap();
        for m in 0..basis.mode_count() {
            let a = annihilation(&basis, m).unwrap();
            prop_assert!((expectation(&a, &psi).unwrap() - profile.amplitudes[m]).norm() < 1e-12);
        }
    }

    #[test]
    fn variances_are_nonnegative(psi in state(81), x in point()) {
        let basis = mixed_basis();
        for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
            let ops = field(kind, &basis, &x);
            for op in &ops {
                let mean = expectation(op, &psi).unwrap().re;
                prop_assert!(second_moment(op, &psi).unwrap() - mean * mean >= -1e-12);
            }
        }
    }

    #[test]
    fn coherent_phase_is_a_time_shift(delta in 0.0f64..(2.0 * PI), t in -3.0f64..3.0) {
        let cfg = LatticeConfig::new(2.0 * PI, Units::default(), vec![ModeSpec::new(1, [0, 0, 2])], 10);
        let basis = build_basis(&cfg).unwrap();
        let omega = basis.modes()[0].omega;
        let alpha = Complex64::new(0.5, 0.0);
        let plain = coherent_state(&basis, 0, alpha, 10).unwrap();
        let rotated = coherent_state(&basis, 0, alpha * Complex64::from_polar(1.0, delta), 10).unwrap();
        let shifted = field_expectation_matrix(&basis, &rotated, FieldKind::E, &SpacetimePoint::new([0.0; 3], t)).unwrap();
        let reference = field_expectation_matrix(
            &basis, &plain, FieldKind::E, &SpacetimePoint::new([0.0; 3], t - delta / omega),
        ).unwrap();
        for i in 0..3 {
            prop_assert!((shifted[i] - reference[i]).abs() < 1e-9);
        }
    }
}

#[test]
fn product_coherent_states_agree_across_paths() {
    let basis = mixed_basis();
    let alphas = [
        Complex64::new(0.2, 0.1),
        Complex64::new(-0.1, 0.15),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.05, -0.2),
    ];
    let psi = superposition(&basis, &coherent_product(&basis, &alphas, 2).unwrap()).unwrap();
    assert!(psi.norm_deficit > 0.0 && psi.norm_deficit < 1e-3);
    let x = SpacetimePoint::new([0.4, 1.0, -0.3], 0.8);
    let closed = field_expectation_closed_form(&basis, &psi, FieldKind::E, &x).unwrap();
    let matrix = field_expectation_matrix(&basis, &psi, FieldKind::E, &x).unwrap();
    for i in 0..3 {
        assert!((closed[i] - matrix[i]).abs() < 1e-12);
    }
}

#[test]
fn exact_number_states_have_no_mean_field() {
    let basis = mixed_basis();
    for occ in [[1, 0, 0, 0], [2, 1, 0, 2], [0, 0, 2, 0]] {
        let psi = number_state(&basis, &occ).unwrap();
        let rows = expectation_grid(
            &basis,
            &psi,
            FieldKind::E,
            &[SpacetimePoint::ORIGIN, SpacetimePoint::new([1.0, 2.0, 3.0], 0.5)],
        )
        .unwrap();
        for row in rows {
            assert_eq!(row.value, [0.0; 3]);
        }
        let m = field_expectation_matrix(&basis, &psi, FieldKind::B, &SpacetimePoint::ORIGIN).unwrap();
        assert_eq!(m, [0.0; 3]);
    }
}

#[test]
fn coherent_trace_is_circular() {
    let cfg = LatticeConfig::new(2.0 * PI, Units::default(), vec![ModeSpec::new(1, [0, 0, 1])], 8);
    let basis = build_basis(&cfg).unwrap();
    let psi = coherent_state(&basis, 0, Complex64::new(0.5, 0.0), 8).unwrap();
    let points: Vec<_> = (0..16)
        .map(|i| SpacetimePoint::new([0.0; 3], 2.0 * PI * i as f64 / 16.0))
        .collect();
    let rows = expectation_grid(&basis, &psi, FieldKind::E, &points).unwrap();
    let radius = 0.5 / (2f64.sqrt() * PI);
    for row in &rows {
        let [fx, fy, fz] = row.value;
        assert_eq!(fz, 0.0);
        assert!(((fx * fx + fy * fy).sqrt() - radius).abs() < 1e-10);
    }
    // positive helicity along +z turns counter-clockwise seen from +z
    let cross = rows[0].value[0] * rows[1].value[1] - rows[0].value[1] * rows[1].value[0];
    assert!(cross > 0.0);
}

#[test]
fn vacuum_fluctuations_grow_with_the_cutoff() {
    let mut previous = 0.0;
    for cutoff in 1..=4 {
        let momenta: Vec<[i32; 3]> = (1..=cutoff).flat_map(|j| [[0, 0, j], [0, 0, -j]]).collect();
        let cfg = LatticeConfig::both_helicities(2.0 * PI, Units::default(), &momenta, 1);
        let basis = build_basis(&cfg).unwrap();
        let sum = vacuum_e2_lattice_sum(&basis);
        let matrix = vacuum_e2_matrix(&basis, &SpacetimePoint::new([0.3, 0.2, 0.1], 0.7)).unwrap();
        assert!((matrix - sum).abs() < 1e-12 * sum);
        assert!(sum > previous);
        previous = sum;
        let e = field_expectation_matrix(&basis, &vacuum(&basis), FieldKind::E, &SpacetimePoint::ORIGIN).unwrap();
        assert_eq!(e, [0.0; 3]);
    }
}
