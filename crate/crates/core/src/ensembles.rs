//! States on the truncated Fock space and field expectation values.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fields::{field, field_form, FieldKind, SpacetimePoint};
use crate::fock::FockBasis;
use crate::operator::{SparseOperator, Symmetry};
use crate::vector::Vec3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A normalized state vector. `norm_deficit` is the probability mass lost to
/// truncation before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub coefficients: Vec<Complex64>,
    pub norm_deficit: f64,
}

impl FockState {
    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).fold(0.0, |acc, x| acc + x).sqrt()
    }

    /// Normalizes an arbitrary vector, keeping the supplied deficit.
    pub fn from_vector(mut coefficients: Vec<Complex64>, norm_deficit: f64) -> Result<Self> {
        let norm = coefficients.iter().map(|c| c.norm_sqr()).fold(0.0, |acc, x| acc + x).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        for c in &mut coefficients {
            *c /= norm;
        }
        Ok(Self {
            coefficients,
            norm_deficit,
        })
    }
}

fn check_dim(basis: &FockBasis, state: &FockState) -> Result<()> {
    if basis.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: basis.dim(),
            right: state.dim(),
        });
    }
    Ok(())
}

pub fn vacuum(basis: &FockBasis) -> FockState {
    let mut coefficients = vec![ZERO; basis.dim()];
    coefficients[0] = Complex64::new(1.0, 0.0);
    FockState {
        coefficients,
        norm_deficit: 0.0,
    }
}

pub fn number_state(basis: &FockBasis, occupancies: &[u32]) -> Result<FockState> {
    let index = basis.index_of(occupancies)?;
    let mut coefficients = vec![ZERO; basis.dim()];
    coefficients[index] = Complex64::new(1.0, 0.0);
    Ok(FockState {
        coefficients,
        norm_deficit: 0.0,
    })
}

/// Sparse map from occupancy tuples to amplitudes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoefficientMap {
    pub entries: Vec<(Vec<u32>, Complex64)>,
    pub norm_deficit: f64,
}

impl CoefficientMap {
    pub fn new(entries: Vec<(Vec<u32>, Complex64)>) -> Self {
        Self {
            entries,
            norm_deficit: 0.0,
        }
    }
}

/// `Σ C_n |n⟩`, normalized. Repeated occupancies add.
pub fn superposition(basis: &FockBasis, map: &CoefficientMap) -> Result<FockState> {
    let mut coefficients = vec![ZERO; basis.dim()];
    for (occupancy, c) in &map.entries {
        coefficients[basis.index_of(occupancy)?] += *c;
    }
    FockState::from_vector(coefficients, map.norm_deficit)
}

/// Coherent amplitudes `C_n = e^{−|α|²/2} αⁿ/√n!` for `n ≤ cap`, together
/// with the Poisson tail beyond the cap.
pub fn coherent_amplitudes(alpha: Complex64, cap: u32) -> (Vec<Complex64>, f64) {
    let mut c = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    let mut out = Vec::with_capacity(cap as usize + 1);
    out.push(c);
    for n in 1..=cap {
        c = c * alpha / (n as f64).sqrt();
        out.push(c);
    }
    let mut tail = 0.0;
    let mut p = c.norm_sqr();
    let mut n = cap + 1;
    loop {
        p *= alpha.norm_sqr() / n as f64;
        tail += p;
        if p <= tail * 1e-17 || p == 0.0 || n > cap + 100_000 {
            break;
        }
        n += 1;
    }
    (out, tail)
}

/// Product of coherent profiles, one amplitude per mode (zero for modes left
/// in vacuum), each truncated at `cap`.
pub fn coherent_product(basis: &FockBasis, alphas: &[Complex64], cap: u32) -> Result<CoefficientMap> {
    if alphas.len() != basis.mode_count() {
        return Err(Error::OccupancyLength {
            got: alphas.len(),
            expected: basis.mode_count(),
        });
    }
    if cap > basis.n_max() {
        return Err(Error::OccupancyOverCap {
            occupancy: cap,
            n_max: basis.n_max(),
        });
    }
    let profiles: Vec<_> = alphas.iter().map(|&a| coherent_amplitudes(a, cap)).collect();
    let mut kept = 1.0;
    for (_, tail) in &profiles {
        kept *= 1.0 - tail;
    }
    let mut entries = Vec::new();
    for i in 0..basis.dim() {
        let occ = basis.occupancy(i);
        if occ.iter().any(|&o| o > cap) {
            continue;
        }
        let mut c = Complex64::new(1.0, 0.0);
        for (m, &o) in occ.iter().enumerate() {
            c *= profiles[m].0[o as usize];
        }
        if c != ZERO {
            entries.push((occ, c));
        }
    }
    Ok(CoefficientMap {
        entries,
        norm_deficit: 1.0 - kept,
    })
}

/// Coherent profile in a single mode, every other mode in vacuum.
pub fn coherent_profile(
    basis: &FockBasis,
    mode: usize,
    alpha: Complex64,
    cap: u32,
) -> Result<CoefficientMap> {
    basis.mode(mode)?;
    let mut alphas = vec![ZERO; basis.mode_count()];
    alphas[mode] = alpha;
    coherent_product(basis, &alphas, cap)
}

pub fn coherent_state(basis: &FockBasis, mode: usize, alpha: Complex64, cap: u32) -> Result<FockState> {
    superposition(basis, &coherent_profile(basis, mode, alpha, cap)?)
}

/// `⟨ψ, Op ψ⟩`. Hermitian-flagged operators return a real value.
pub fn expectation(op: &SparseOperator, state: &FockState) -> Result<Complex64> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: state.dim(),
        });
    }
    let value = op.expectation(&state.coefficients);
    Ok(match op.symmetry() {
        Symmetry::Hermitian => Complex64::new(value.re, 0.0),
        _ => value,
    })
}

/// `⟨ψ, Op² ψ⟩ = ‖Op ψ‖²` for a hermitian operator.
pub fn second_moment(op: &SparseOperator, state: &FockState) -> Result<f64> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: state.dim(),
        });
    }
    Ok(op.apply(&state.coefficients).iter().map(|c| c.norm_sqr()).fold(0.0, |acc, x| acc + x))
}

/// Per-mode `⟨a_m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile {
    pub amplitudes: Vec<Complex64>,
}

/// `⟨a_m⟩ = Σ C*_{…n−1…} C_{…n…} √n` for every mode.
pub fn amplitude_profile(basis: &FockBasis, state: &FockState) -> Result<AmplitudeProfile> {
    check_dim(basis, state)?;
    let c = &state.coefficients;
    let amplitudes = (0..basis.mode_count())
        .map(|m| {
            let stride = basis.stride(m);
            let mut sum = ZERO;
            for (i, ci) in c.iter().enumerate() {
                let n = basis.occupancy_of(i, m);
                if n > 0 {
                    sum += c[i - stride].conj() * ci * (n as f64).sqrt();
                }
            }
            sum
        })
        .collect();
    Ok(AmplitudeProfile { amplitudes })
}

/// `⟨F(x)⟩ = Σ_m (f_m(x) ⟨a_m⟩ + c.c.)` from the amplitude profile.
pub fn field_expectation_from_profile(
    basis: &FockBasis,
    profile: &AmplitudeProfile,
    kind: FieldKind,
    x: &SpacetimePoint,
) -> Vec3 {
    let form = field_form(kind, basis, x);
    let mut out = [0.0; 3];
    for (f, a) in form.coeffs.iter().zip(&profile.amplitudes) {
        for i in 0..3 {
            out[i] += 2.0 * (f[i] * a).re;
        }
    }
    out
}

pub fn field_expectation_closed_form(
    basis: &FockBasis,
    state: &FockState,
    kind: FieldKind,
    x: &SpacetimePoint,
) -> Result<Vec3> {
    let profile = amplitude_profile(basis, state)?;
    Ok(field_expectation_from_profile(basis, &profile, kind, x))
}

/// Matrix-path `⟨F(x)⟩` from the assembled field operators.
pub fn field_expectation_matrix(
    basis: &FockBasis,
    state: &FockState,
    kind: FieldKind,
    x: &SpacetimePoint,
) -> Result<Vec3> {
    check_dim(basis, state)?;
    let ops = field(kind, basis, x);
    Ok([
        expectation(&ops[0], state)?.re,
        expectation(&ops[1], state)?.re,
        expectation(&ops[2], state)?.re,
    ])
}

/// `⟨0|E²|0⟩ = Σ_m Δ³p ω_m / (2πħ)²`, one term per mode (helicities counted
/// separately).
pub fn vacuum_e2_lattice_sum(basis: &FockBasis) -> f64 {
    let hbar = basis.units().hbar;
    let pref = basis.cell_volume() / (2.0 * core::f64::consts::PI * hbar).powi(2);
    basis.modes().iter().map(|m| pref * m.omega).sum()
}

/// The same sum over every lattice momentum with `max |n_i| ≤ cutoff`, both
/// helicities, without building a Fock space.
pub fn vacuum_e2_cube_sum(box_length: f64, units: &crate::units::Units, cutoff: u32) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let step = two_pi * units.hbar / box_length;
    let pref = 2.0 * step.powi(3) / (two_pi * units.hbar).powi(2);
    let k = cutoff as i64;
    let mut total = 0.0;
    for x in -k..=k {
        for y in -k..=k {
            for z in -k..=k {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let n = ((x * x + y * y + z * z) as f64).sqrt();
                total += pref * units.c * step * n / units.hbar;
            }
        }
    }
    total
}

/// `⟨0|E(x)²|0⟩` from the field matrices.
pub fn vacuum_e2_matrix(basis: &FockBasis, x: &SpacetimePoint) -> Result<f64> {
    let state = vacuum(basis);
    let ops = field(FieldKind::E, basis, x);
    let mut total = 0.0;
    for op in &ops {
        total += second_moment(op, &state)?;
    }
    Ok(total)
}

/// One row `(t, x, y, z, Fx, Fy, Fz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub point: SpacetimePoint,
    pub value: Vec3,
}

impl GridRow {
    pub fn columns(&self) -> [f64; 7] {
        let r = self.point.r;
        let v = self.value;
        [self.point.t, r[0], r[1], r[2], v[0], v[1], v[2]]
    }
}

/// Closed-form field expectation at each point, in the given order.
pub fn expectation_grid(
    basis: &FockBasis,
    state: &FockState,
    kind: FieldKind,
    points: &[SpacetimePoint],
) -> Result<Vec<GridRow>> {
    let profile = amplitude_profile(basis, state)?;
    Ok(points
        .iter()
        .map(|p| GridRow {
            point: *p,
            value: field_expectation_from_profile(basis, &profile, kind, p),
        })
        .collect())
}
