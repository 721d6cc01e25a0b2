//! Circular polarization vectors for a propagation direction.
//!
//! A direction `k` gets a right-handed orthonormal frame `(ê, b̂, k)` with
//! `b̂ = k × ê`, and the complex vectors
//!
//! ```text
//! ε₊ = (ê + i b̂)/√2        ε₋ = (i ê + b̂)/√2
//! ```
//!
//! The choice of `ê` inside the plane orthogonal to `k` is a gauge: every
//! relation checked here holds for any choice, and the default is fixed by a
//! reference axis so the construction is deterministic.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vector::{
    self, cdot, ccross, conj, cross, cscale, csub, inner, CVec3, Mat3, Vec3,
};

/// Tolerance on `|k| = 1` and on the triad invariants.
pub const UNIT_TOLERANCE: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A unit propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction(Vec3);

impl Direction {
    pub fn new(k: Vec3) -> Result<Self> {
        let norm = vector::norm(&k);
        if (norm - 1.0).abs() > UNIT_TOLERANCE || !norm.is_finite() {
            return Err(Error::NonUnitDirection { norm });
        }
        Ok(Self(k))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn from_vector(v: Vec3) -> Result<Self> {
        let norm = vector::norm(&v);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NonUnitDirection { norm });
        }
        Ok(Self(vector::scale(1.0 / norm, &v)))
    }

    pub fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn as_array(&self) -> &Vec3 {
        &self.0
    }

    pub fn reversed(&self) -> Self {
        Self(vector::scale(-1.0, &self.0))
    }
}

/// Reference-axis rule that fixes `ê` in the transverse plane.
///
/// `ê = normalize(a − (a·k)k)` with `a = primary`, or `a = fallback` when
/// `|k·primary|` exceeds `switch_above`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseGauge {
    pub primary: Vec3,
    pub fallback: Vec3,
    pub switch_above: f64,
}

impl Default for TransverseGauge {
    fn default() -> Self {
        Self {
            primary: [1.0, 0.0, 0.0],
            fallback: [0.0, 1.0, 0.0],
            switch_above: 0.9,
        }
    }
}

impl TransverseGauge {
    /// An alternative gauge used to demonstrate that observables do not
    /// depend on the transverse frame.
    pub fn alternate() -> Self {
        Self {
            primary: [0.0, 0.6, 0.8],
            fallback: [0.8, 0.0, -0.6],
            switch_above: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationTriad {
    pub k: Direction,
    pub e_hat: Vec3,
    pub b_hat: Vec3,
    pub eps_plus: CVec3,
    pub eps_minus: CVec3,
}

impl PolarizationTriad {
    /// `ε_s` for helicity `s = ±1`.
    pub fn eps(&self, helicity: i32) -> CVec3 {
        if helicity >= 0 {
            self.eps_plus
        } else {
            self.eps_minus
        }
    }
}

pub fn make_triad(k: Direction) -> PolarizationTriad {
    make_triad_with_gauge(k, &TransverseGauge::default())
}

pub fn make_triad_with_gauge(k: Direction, gauge: &TransverseGauge) -> PolarizationTriad {
    let kv = *k.as_array();
    let reference = if vector::dot(&kv, &gauge.primary).abs() > gauge.switch_above {
        gauge.fallback
    } else {
        gauge.primary
    };
    let projected = vector::sub(&reference, &vector::scale(vector::dot(&reference, &kv), &kv));
    let e_hat = vector::scale(1.0 / vector::norm(&projected), &projected);
    let b_hat = cross(&kv, &e_hat);

    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let mut eps_plus = [Complex64::new(0.0, 0.0); 3];
    let mut eps_minus = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        eps_plus[i] = s * Complex64::new(e_hat[i], b_hat[i]);
        eps_minus[i] = s * Complex64::new(b_hat[i], e_hat[i]);
    }
    PolarizationTriad {
        k,
        e_hat,
        b_hat,
        eps_plus,
        eps_minus,
    }
}

/// Rotates the initial position of the field vector: returns
/// `(e^{−iθ} ε₊, e^{−iθ} ε₋)`.
pub fn phase_shift(triad: &PolarizationTriad, theta: f64) -> (CVec3, CVec3) {
    let phase = Complex64::from_polar(1.0, -theta);
    (cscale(phase, &triad.eps_plus), cscale(phase, &triad.eps_minus))
}

/// Maximum residual of every named polarization identity.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub entries: Vec<(&'static str, f64)>,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, (_, r)| m.max(*r))
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| *n == name).map(|(_, r)| *r)
    }
}

fn delta(a: i32, b: i32) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

pub fn check_relations(triad: &PolarizationTriad) -> RelationReport {
    let k = vector::complexify(triad.k.as_array());
    let helicities = [1, -1];

    let mut transverse = 0.0_f64;
    let mut orthonormal = 0.0_f64;
    let mut conj_cross = 0.0_f64;
    let mut k_cross = 0.0_f64;
    let mut bilinear_dot = 0.0_f64;
    let mut bilinear_cross = 0.0_f64;

    for &s in &helicities {
        let eps_s = triad.eps(s);
        let eps_s_conj = conj(&eps_s);
        transverse = transverse.max(cdot(&eps_s_conj, &k).norm());

        // k × ε_s = s ε*_{−s}
        let lhs = ccross(&k, &eps_s);
        let rhs = cscale(Complex64::new(s as f64, 0.0), &conj(&triad.eps(-s)));
        k_cross = k_cross.max(vector::cmax_abs(&csub(&lhs, &rhs)));

        for &t in &helicities {
            let eps_t = triad.eps(t);
            let d = delta(s, t);

            let ip = inner(&eps_s, &eps_t) - Complex64::new(d, 0.0);
            orthonormal = orthonormal.max(ip.norm());

            // ε*_s × ε_t = s i k δ_st
            let expected = cscale(I * (s as f64 * d), &k);
            let lhs = ccross(&eps_s_conj, &eps_t);
            conj_cross = conj_cross.max(vector::cmax_abs(&csub(&lhs, &expected)));

            // ε_s · ε_t = i δ_{s,−t}
            let anti = delta(s, -t);
            bilinear_dot = bilinear_dot.max((cdot(&eps_s, &eps_t) - I * anti).norm());

            // ε_s × ε_t = s k δ_{s,−t}
            let expected = cscale(Complex64::new(s as f64 * anti, 0.0), &k);
            let lhs = ccross(&eps_s, &eps_t);
            bilinear_cross = bilinear_cross.max(vector::cmax_abs(&csub(&lhs, &expected)));
        }
    }

    // ε₋ = i ε*₊
    let minus_from_plus = vector::cmax_abs(&csub(
        &triad.eps_minus,
        &cscale(I, &conj(&triad.eps_plus)),
    ));

    RelationReport {
        entries: alloc::vec![
            ("conj_eps_dot_k", transverse),
            ("conj_eps_dot_eps", orthonormal),
            ("conj_eps_cross_eps", conj_cross),
            ("k_cross_eps", k_cross),
            ("eps_minus_from_plus", minus_from_plus),
            ("eps_dot_eps", bilinear_dot),
            ("eps_cross_eps", bilinear_cross),
        ],
    }
}

/// `Σ_s (ε*_s)_i (ε_s)_j`, which equals the transverse projector
/// `δ_ij − k_i k_j`. The imaginary parts cancel between helicities; only the
/// real part is returned.
pub fn completeness_matrix(triad: &PolarizationTriad) -> Mat3 {
    let full = completeness_matrix_complex(triad);
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = full[i][j].re;
        }
    }
    out
}

pub fn completeness_matrix_complex(triad: &PolarizationTriad) -> [[Complex64; 3]; 3] {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for s in [1, -1] {
        let eps = triad.eps(s);
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += eps[i].conj() * eps[j];
            }
        }
    }
    out
}

/// `δ_ij − k_i k_j`.
pub fn transverse_projector(k: &Direction) -> Mat3 {
    let kv = k.as_array();
    let mut out = vector::identity3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= kv[i] * kv[j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &CVec3, b: &CVec3, tol: f64) -> bool {
        vector::cmax_abs(&csub(a, b)) < tol
    }

    #[test]
    fn z_axis_triad_is_axis_aligned() {
        let t = make_triad(Direction::z());
        assert_eq!(t.e_hat, [1.0, 0.0, 0.0]);
        assert_eq!(t.b_hat, [0.0, 1.0, 0.0]);
        let r = FRAC_1_SQRT_2;
        assert!(close(&t.eps_plus, &[c(r, 0.0), c(0.0, r), c(0.0, 0.0)], 1e-15));
        // ε₋ = i ε*₊ = (i, 1, 0)/√2
        assert!(close(&t.eps_minus, &[c(0.0, r), c(r, 0.0), c(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn x_axis_triad_satisfies_invariants() {
        let t = make_triad(Direction::x());
        let k = t.k.as_array();
        assert!(vector::dot(&t.e_hat, k).abs() < 1e-12);
        assert!(vector::dot(&t.b_hat, k).abs() < 1e-12);
        assert!(vector::dot(&t.e_hat, &t.b_hat).abs() < 1e-12);
        let diff = vector::sub(&cross(k, &t.e_hat), &t.b_hat);
        assert_eq!(vector::max_abs(&diff), 0.0);
    }

    #[test]
    fn rejects_non_unit_direction() {
        assert!(matches!(
            Direction::new([1.0, 1.0, 0.0]),
            Err(Error::NonUnitDirection { .. })
        ));
        assert!(Direction::from_vector([0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn phase_shift_cases() {
        let t = make_triad(Direction::z());
        let (p, m) = phase_shift(&t, 0.0);
        assert_eq!((p, m), (t.eps_plus, t.eps_minus));

        let (p, m) = phase_shift(&t, PI);
        assert!(close(&p, &cscale(c(-1.0, 0.0), &t.eps_plus), 1e-15));
        assert!(close(&m, &cscale(c(-1.0, 0.0), &t.eps_minus), 1e-15));

        let (p, _) = phase_shift(&t, FRAC_PI_4);
        // e^{−iπ/4}(1, i, 0)/√2 = ((1−i)/2, (1+i)/2, 0)
        assert!(close(&p, &[c(0.5, -0.5), c(0.5, 0.5), c(0.0, 0.0)], 1e-15));
        for i in 0..3 {
            assert!((p[i].norm() - t.eps_plus[i].norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn z_axis_cross_products() {
        let t = make_triad(Direction::z());
        let cross = ccross(&t.eps_plus, &t.eps_minus);
        assert!(close(&cross, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 1e-15));
        let report = check_relations(&t);
        assert!(report.max_residual() < 1e-15, "{report:?}");
        assert!((inner(&t.eps_plus, &t.eps_plus) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn completeness_examples() {
        let m = completeness_matrix(&make_triad(Direction::z()));
        let expected = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[i][j] - expected[i][j]).abs() < 1e-15);
            }
        }

        let m = completeness_matrix(&make_triad(Direction::x()));
        let expected = [[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((m[i][j] - expected[i][j]).abs() < 1e-15);
            }
        }

        let d = Direction::from_vector([1.0, 1.0, 1.0]).unwrap();
        let m = completeness_matrix(&make_triad(d));
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 - 1.0 / 3.0 } else { -1.0 / 3.0 };
                assert!((m[i][j] - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gauge_switch_near_reference_axis() {
        let t = make_triad(Direction::x());
        // |k·x̂| = 1 > 0.9 so the fallback ŷ axis is used
        assert_eq!(t.e_hat, [0.0, 1.0, 0.0]);
        assert_eq!(t.b_hat, [0.0, 0.0, 1.0]);
    }
}
