//! Classical single-photon layer: rotating field vectors, the antisymmetric
//! photon tensor, pure Lorentz boosts and the massless kinematics.

use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::polarization::{make_triad, Direction, PolarizationTriad};
use crate::units::Units;
use crate::vector::{self, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalPhoton {
    pub omega: f64,
    pub k: Direction,
    pub helicity: i32,
    pub theta: f64,
    pub triad: PolarizationTriad,
}

impl ClassicalPhoton {
    pub fn new(omega: f64, k: Direction, helicity: i32, theta: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::NonPositiveFrequency(omega));
        }
        if helicity != 1 && helicity != -1 {
            return Err(Error::InvalidHelicity(helicity));
        }
        Ok(Self {
            omega,
            k,
            helicity,
            theta,
            triad: make_triad(k),
        })
    }
}

/// `(e, b)` at time `t`: `e = (ω/√2)(e^{−iθ} ε_s e^{−iωt} + c.c.)`, `b = k × e`.
pub fn rotating_vectors(p: &ClassicalPhoton, t: f64) -> (Vec3, Vec3) {
    let eps = p.triad.eps(p.helicity);
    let phase = Complex64::from_polar(1.0, -(p.omega * t + p.theta));
    let amplitude = p.omega * FRAC_1_SQRT_2;
    let mut e = [0.0; 3];
    for i in 0..3 {
        // z + z* = 2 Re z
        e[i] = 2.0 * amplitude * (eps[i] * phase).re;
    }
    let b = vector::cross(p.k.as_array(), &e);
    (e, b)
}

/// Antisymmetric 4×4 tensor with `f^{0i} = e_i`, `f^{12} = b_3`,
/// `f^{13} = −b_2`, `f^{23} = b_1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonTensor {
    pub f: [[f64; 4]; 4],
}

impl PhotonTensor {
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.f[i][j] + self.f[j][i]).abs());
            }
        }
        worst
    }

    fn max_abs(&self) -> f64 {
        self.f
            .iter()
            .flat_map(|row| row.iter())
            .fold(0.0, |m, x| m.max(x.abs()))
    }
}

pub fn build_tensor(e: &Vec3, b: &Vec3) -> PhotonTensor {
    let mut f = [[0.0; 4]; 4];
    f[0][1] = e[0];
    f[0][2] = e[1];
    f[0][3] = e[2];
    f[1][2] = b[2];
    f[1][3] = -b[1];
    f[2][3] = b[0];
    for i in 0..4 {
        for j in (i + 1)..4 {
            f[j][i] = -f[i][j];
        }
    }
    PhotonTensor { f }
}

/// Inverse of [`build_tensor`]; rejects tensors that are not antisymmetric
/// to `1e-12` relative to their largest entry.
pub fn extract_fields(t: &PhotonTensor) -> Result<(Vec3, Vec3)> {
    let residual = t.antisymmetry_residual();
    if residual > 1e-12 * t.max_abs().max(1.0) {
        return Err(Error::NotAntisymmetric { residual });
    }
    let f = &t.f;
    Ok(([f[0][1], f[0][2], f[0][3]], [f[2][3], -f[1][3], f[1][2]]))
}

/// Pure boost matrix `Λ^μ_ν` for velocity `β` (units of c).
pub fn boost_matrix(beta: &Vec3) -> Result<[[f64; 4]; 4]> {
    let speed = vector::norm(beta);
    if !(speed < 1.0 - 1e-9) {
        return Err(Error::Superluminal { speed });
    }
    let gamma = 1.0 / (1.0 - speed * speed).sqrt();
    let mut lambda = [[0.0; 4]; 4];
    lambda[0][0] = gamma;
    for i in 0..3 {
        lambda[0][i + 1] = -gamma * beta[i];
        lambda[i + 1][0] = -gamma * beta[i];
        for j in 0..3 {
            let identity = if i == j { 1.0 } else { 0.0 };
            let along = if speed > 0.0 {
                (gamma - 1.0) * beta[i] * beta[j] / (speed * speed)
            } else {
                0.0
            };
            lambda[i + 1][j + 1] = identity + along;
        }
    }
    Ok(lambda)
}

/// `f' = Λ f Λᵀ` for the pure boost with velocity `β`.
pub fn boost(t: &PhotonTensor, beta: &Vec3) -> Result<PhotonTensor> {
    let lambda = boost_matrix(beta)?;
    let mut tmp = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            tmp[mu][nu] = (0..4).map(|a| lambda[mu][a] * t.f[a][nu]).sum();
        }
    }
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = (0..4).map(|b| tmp[mu][b] * lambda[nu][b]).sum();
        }
    }
    Ok(PhotonTensor { f: out })
}

/// The two Lorentz invariants `(e·b, |e|² − |b|²)`; both vanish for a photon.
pub fn null_invariants(t: &PhotonTensor) -> (f64, f64) {
    let f = &t.f;
    let e = [f[0][1], f[0][2], f[0][3]];
    let b = [f[2][3], -f[1][3], f[1][2]];
    (vector::dot(&e, &b), vector::dot(&e, &e) - vector::dot(&b, &b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub energy: f64,
    pub momentum: Vec3,
    pub spin: Vec3,
}

pub fn kinematics(p: &ClassicalPhoton, units: &Units) -> Kinematics {
    let energy = units.hbar * p.omega;
    let k = p.k.as_array();
    Kinematics {
        energy,
        momentum: vector::scale(energy / units.c, k),
        spin: vector::scale(p.helicity as f64 * units.hbar, k),
    }
}
