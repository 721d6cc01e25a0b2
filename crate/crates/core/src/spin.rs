//! Spin-1 matrices, helicity eigenvectors and plane-wave momentum
//! eigenfunctions.

use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::polarization::{make_triad, Direction};
use crate::vector::{self, cscale, CMat3, CVec3, Vec3};

/// Below this value of `√(1 − kₓk_y − k_yk_z − k_zkₓ)` the closed-form helicity
/// vectors are replaced by the polarization-triad construction.
pub const SINGULAR_THRESHOLD: f64 = 1e-6;

/// `(S_j)_{kl} = −iħ ε_{jkl}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMatrices {
    pub sx: CMat3,
    pub sy: CMat3,
    pub sz: CMat3,
}

impl SpinMatrices {
    pub fn component(&self, j: usize) -> &CMat3 {
        match j {
            0 => &self.sx,
            1 => &self.sy,
            _ => &self.sz,
        }
    }

    /// `S·k`.
    pub fn along(&self, k: &Vec3) -> CMat3 {
        let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
        for j in 0..3 {
            let s = self.component(j);
            for a in 0..3 {
                for b in 0..3 {
                    out[a][b] += s[a][b] * k[j];
                }
            }
        }
        out
    }
}

pub fn spin_matrices(hbar: f64) -> SpinMatrices {
    let build = |j: usize| {
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for k in 0..3 {
            for l in 0..3 {
                m[k][l] = Complex64::new(0.0, -hbar * vector::levi_civita(j, k, l));
            }
        }
        m
    };
    SpinMatrices {
        sx: build(0),
        sy: build(1),
        sz: build(2),
    }
}

/// Which construction produced a [`HelicityPair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelicityBranch {
    ClosedForm,
    TriadFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelicityPair {
    pub chi_plus: CVec3,
    pub chi_minus: CVec3,
    pub branch: HelicityBranch,
}

impl HelicityPair {
    pub fn chi(&self, helicity: i32) -> CVec3 {
        if helicity >= 0 {
            self.chi_plus
        } else {
            self.chi_minus
        }
    }
}

/// `√(1 − kₓk_y − k_yk_z − k_zkₓ)`, evaluated as
/// `√(½[(kₓ−k_y)² + (k_y−k_z)² + (k_z−kₓ)²])`, which is the same quantity on
/// the unit sphere without the cancellation near `(1,1,1)/√3`.
pub fn helicity_denominator(k: &Direction) -> f64 {
    let [x, y, z] = *k.as_array();
    (0.5 * ((x - y) * (x - y) + (y - z) * (y - z) + (z - x) * (z - x))).sqrt()
}

/// Eigenvectors of `S·k` with eigenvalues `±ħ`.
///
/// Away from the two singular directions `±(1,1,1)/√3` this is the closed form
///
/// ```text
/// χ± = [1 − k_j(kₓ+k_y+k_z) ± i(k_{j+1} − k_{j+2})]_j / (2√(1 − kₓk_y − k_yk_z − k_zkₓ))
/// ```
///
/// with no phase adjustment. On the singular set the circular polarization
/// vectors are used instead, with the phase fixed so that the first component
/// of largest modulus is real and positive.
pub fn helicity_states(k: &Direction) -> HelicityPair {
    let denom = helicity_denominator(k);
    if denom > SINGULAR_THRESHOLD {
        let [x, y, z] = *k.as_array();
        let kv = [x, y, z];
        // 1 − k_j Σk_i rewritten as Σ_i k_i (k_i − k_j) using |k| = 1.
        let real: [f64; 3] = core::array::from_fn(|j| (0..3).map(|i| kv[i] * (kv[i] - kv[j])).sum());
        let imag = [y - z, z - x, x - y];
        let scale = 1.0 / (2.0 * denom);
        let plus = core::array::from_fn(|j| Complex64::new(real[j], imag[j]) * scale);
        let minus = core::array::from_fn(|j| Complex64::new(real[j], -imag[j]) * scale);
        HelicityPair {
            chi_plus: plus,
            chi_minus: minus,
            branch: HelicityBranch::ClosedForm,
        }
    } else {
        let triad = make_triad(*k);
        HelicityPair {
            chi_plus: normalize_phase(&triad.eps_plus),
            chi_minus: normalize_phase(&triad.eps_minus),
            branch: HelicityBranch::TriadFallback,
        }
    }
}

fn normalize_phase(v: &CVec3) -> CVec3 {
    let largest = vector::cmax_abs(v);
    let pivot = v
        .iter()
        .find(|c| c.norm() >= largest * (1.0 - 1e-12))
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = pivot.conj() / pivot.norm();
    cscale(phase, v)
}

/// `φ_p(r) = (2πħ)^{−3/2} exp(i p·r/ħ)`.
pub fn momentum_wavefunction(p: &Vec3, r: &Vec3, hbar: f64) -> Complex64 {
    let norm = (2.0 * PI * hbar).powf(-1.5);
    Complex64::from_polar(norm, vector::dot(p, r) / hbar)
}
