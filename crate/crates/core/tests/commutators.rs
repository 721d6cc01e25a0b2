use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use photonfield_core::fields::{
    field, field_commutator_closed_form, field_commutator_matrix, field_commutator_symmetric_form,
    field_number_commutator, field_number_commutator_closed_form, FieldKind, SpacetimePoint,
};
use photonfield_core::fock::{build_basis, FockBasis, LatticeConfig};
use photonfield_core::operator::Symmetry;
use photonfield_core::units::Units;
use photonfield_core::Complex64;

fn symmetric_basis(n_max: u32) -> FockBasis {
    let cfg = LatticeConfig::both_helicities(
        2.0 * PI,
        Units::default(),
        &[[0, 0, 1], [0, 0, -1], [1, 1, 0], [-1, -1, 0]],
        n_max,
    );
    build_basis(&cfg).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng) -> SpacetimePoint {
    SpacetimePoint::new(
        [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)],
        rng.gen_range(-3.0..3.0),
    )
}

fn assert_matrix_matches_closed_form(
    basis: &FockBasis,
    kind1: FieldKind,
    kind2: FieldKind,
    x1: &SpacetimePoint,
    x2: &SpacetimePoint,
) {
    let mask = basis.safe_mask(1).unwrap();
    let closed = field_commutator_closed_form(basis, kind1, kind2, x1, x2).unwrap();
    let matrix = field_commutator_matrix(basis, kind1, kind2, x1, x2).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let dev = matrix[i][j].restrict(&mask).max_deviation_from_scalar(closed[i][j]);
            assert!(dev < 1e-10, "[{kind1:?}{i},{kind2:?}{j}] off by {dev}");
        }
    }
}

#[test]
fn matrix_path_matches_closed_form() {
    let basis = symmetric_basis(1);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        assert_matrix_matches_closed_form(&basis, FieldKind::E, FieldKind::E, &x1, &x2);
    }
    for _ in 0..4 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        assert_matrix_matches_closed_form(&basis, FieldKind::B, FieldKind::B, &x1, &x2);
        assert_matrix_matches_closed_form(&basis, FieldKind::E, FieldKind::B, &x1, &x2);
        assert_matrix_matches_closed_form(&basis, FieldKind::B, FieldKind::E, &x1, &x2);
    }
}

#[test]
fn matrix_path_with_excited_safe_states() {
    let cfg = LatticeConfig::both_helicities(2.0 * PI, Units::default(), &[[0, 0, 1], [0, 0, -1]], 2);
    let basis = build_basis(&cfg).unwrap();
    assert_eq!(basis.safe_mask(1).unwrap().iter().filter(|&&k| k).count(), 16);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        assert_matrix_matches_closed_form(&basis, FieldKind::E, FieldKind::E, &x1, &x2);
    }
}

#[test]
fn asymmetric_complete_set_uses_general_form() {
    let cfg = LatticeConfig::both_helicities(4.0, Units { hbar: 1.3, c: 0.8 }, &[[1, 2, 0], [0, 0, 1]], 1);
    let basis = build_basis(&cfg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        assert_matrix_matches_closed_form(&basis, FieldKind::E, FieldKind::E, &x1, &x2);
        assert_matrix_matches_closed_form(&basis, FieldKind::E, FieldKind::B, &x1, &x2);
    }
    let x = SpacetimePoint::ORIGIN;
    assert!(field_commutator_symmetric_form(&basis, &x, &x).is_err());
}

#[test]
fn symmetric_form_agrees_on_symmetric_sets() {
    let basis = symmetric_basis(1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        let a = field_commutator_closed_form(&basis, FieldKind::E, FieldKind::E, &x1, &x2).unwrap();
        let b = field_commutator_symmetric_form(&basis, &x1, &x2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - b[i][j]).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn equal_times() {
    let basis = symmetric_basis(1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut eb_nonzero = false;
    for _ in 0..10 {
        let mut x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        x1.t = x2.t;
        let mask = basis.safe_mask(1).unwrap();
        for kind in [FieldKind::E, FieldKind::B] {
            let closed = field_commutator_closed_form(&basis, kind, kind, &x1, &x2).unwrap();
            let matrix = field_commutator_matrix(&basis, kind, kind, &x1, &x2).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    assert!(closed[i][j].norm() < 1e-12);
                    assert!(matrix[i][j].compress(&mask).max_abs() < 1e-12);
                }
            }
        }
        let eb = field_commutator_closed_form(&basis, FieldKind::E, FieldKind::B, &x1, &x2).unwrap();
        eb_nonzero |= eb[0][1].norm() > 1e-3;
    }
    assert!(eb_nonzero);
}

#[test]
fn electric_and_magnetic_commutators_coincide() {
    let basis = symmetric_basis(1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let x1 = random_point(&mut rng);
        let x2 = random_point(&mut rng);
        let ee = field_commutator_closed_form(&basis, FieldKind::E, FieldKind::E, &x1, &x2).unwrap();
        let bb = field_commutator_closed_form(&basis, FieldKind::B, FieldKind::B, &x1, &x2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((ee[i][j] - bb[i][j]).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn vector_potential_has_no_closed_form() {
    let basis = symmetric_basis(1);
    let x = SpacetimePoint::ORIGIN;
    assert!(field_commutator_closed_form(&basis, FieldKind::A, FieldKind::E, &x, &x).is_err());
}

#[test]
fn number_commutator_closed_forms() {
    let basis = symmetric_basis(1);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..5 {
        let x = random_point(&mut rng);
        for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
            let matrix = field_number_commutator(&basis, kind, &x).unwrap();
            let closed = field_number_commutator_closed_form(&basis, kind, &x);
            for i in 0..3 {
                assert!(matrix[i].sub(&closed[i]).unwrap().max_abs() < 1e-12);
                assert_eq!(closed[i].symmetry(), Symmetry::AntiHermitian);
                assert!(matrix[i].verify_symmetry(1e-12));
            }
        }
    }
}

#[test]
fn potential_number_commutator_is_real_where_field_is_imaginary() {
    // single mode at the origin: A carries no factor i, E does
    let cfg = LatticeConfig::both_helicities(2.0 * PI, Units::default(), &[[1, 0, 0]], 1);
    let basis = build_basis(&cfg).unwrap();
    let x = SpacetimePoint::ORIGIN;
    let e = field(FieldKind::E, &basis, &x);
    let a = field(FieldKind::A, &basis, &x);
    let ea = field_number_commutator_closed_form(&basis, FieldKind::E, &x);
    let aa = field_number_commutator_closed_form(&basis, FieldKind::A, &x);
    let i = Complex64::new(0.0, 1.0);
    for (r, c) in e[1].triplets().filter(|(r, c, _)| r < c).map(|(r, c, _)| (r, c)) {
        let ratio = ea[1].get(r, c) / (aa[1].get(r, c) * (e[1].get(r, c) / (a[1].get(r, c) * i)));
        assert!((ratio - i).norm() < 1e-12);
    }
}
