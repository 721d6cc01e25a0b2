//! Periodic-box mode lattice and the truncated multi-mode bosonic Fock space.
//!
//! Momenta live on `p = (2πħ/L) n` with `n ∈ ℤ³ \ {0}`. Each mode (a helicity
//! and a lattice momentum) carries an occupation number in `0..=n_max`. Basis
//! states are ordered lexicographically by occupancy tuple in mode order, so
//! with two modes and `n_max = 1` the order is `(0,0), (0,1), (1,0), (1,1)`.
//!
//! Continuum expressions map onto the lattice through
//!
//! ```text
//! ∫d³p → Σ_n Δ³p,   a_s(p) → a_{s,n}/√Δ³p,   δ³(p−p') → δ_{nn'}/Δ³p,
//! Δ³p = (2πħ/L)³
//! ```
//!
//! Truncation: `a†` annihilates states already at `n_max`, so `[a, a†] = 1`
//! holds only on states whose occupancy in that mode is below the cap.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::operator::{SparseOperator, Symmetry};
use crate::polarization::{make_triad_with_gauge, Direction, PolarizationTriad, TransverseGauge};
use crate::units::Units;
use crate::vector::{self, CVec3, Vec3};

pub const DEFAULT_DIMENSION_LIMIT: usize = 65_536;

/// A requested mode: helicity `±1` and integer lattice momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeSpec {
    pub helicity: i32,
    pub n: [i32; 3],
}

impl ModeSpec {
    pub const fn new(helicity: i32, n: [i32; 3]) -> Self {
        Self { helicity, n }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeConfig {
    pub box_length: f64,
    pub units: Units,
    pub modes: Vec<ModeSpec>,
    pub n_max: u32,
    pub gauge: TransverseGauge,
    pub dimension_limit: usize,
}

impl LatticeConfig {
    pub fn new(box_length: f64, units: Units, modes: Vec<ModeSpec>, n_max: u32) -> Self {
        Self {
            box_length,
            units,
            modes,
            n_max,
            gauge: TransverseGauge::default(),
            dimension_limit: DEFAULT_DIMENSION_LIMIT,
        }
    }

    /// Both helicities for every listed momentum, helicity-major within a
    /// momentum: `(+, n₀), (−, n₀), (+, n₁), …`.
    pub fn both_helicities(
        box_length: f64,
        units: Units,
        momenta: &[[i32; 3]],
        n_max: u32,
    ) -> Self {
        let modes = momenta
            .iter()
            .flat_map(|&n| [ModeSpec::new(1, n), ModeSpec::new(-1, n)])
            .collect();
        Self::new(box_length, units, modes, n_max)
    }

    pub fn with_gauge(mut self, gauge: TransverseGauge) -> Self {
        self.gauge = gauge;
        self
    }

    /// Momentum cell volume `Δ³p = (2πħ/L)³`.
    pub fn cell_volume(&self) -> f64 {
        (2.0 * PI * self.units.hbar / self.box_length).powi(3)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: alloc::string::String| Err(Error::InvalidLattice(msg));
        if !(self.box_length > 0.0) || !self.box_length.is_finite() {
            return invalid(format!("box_length must be positive, got {}", self.box_length));
        }
        if !(self.units.hbar > 0.0) || !(self.units.c > 0.0) {
            return invalid(format!(
                "hbar and c must be positive, got hbar = {}, c = {}",
                self.units.hbar, self.units.c
            ));
        }
        if self.n_max < 1 {
            return invalid("n_max must be at least 1".into());
        }
        if self.modes.is_empty() {
            return invalid("mode list is empty".into());
        }
        let mut seen = BTreeSet::new();
        for m in &self.modes {
            if m.helicity != 1 && m.helicity != -1 {
                return Err(Error::InvalidHelicity(m.helicity));
            }
            if m.n == [0, 0, 0] {
                return invalid("the zero-momentum mode n = (0,0,0) is excluded".into());
            }
            if !seen.insert(*m) {
                return invalid(format!(
                    "duplicate mode (helicity {}, n = {:?})",
                    m.helicity, m.n
                ));
            }
        }
        Ok(())
    }
}

/// One lattice mode with its derived kinematics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub helicity: i32,
    pub n: [i32; 3],
    pub p: Vec3,
    pub omega: f64,
    pub k: Direction,
    pub triad: PolarizationTriad,
    /// `ε_s(k)`.
    pub eps: CVec3,
    /// `k × ε_s(k)`.
    pub k_cross_eps: CVec3,
}

impl Mode {
    pub fn new(spec: ModeSpec, config: &LatticeConfig) -> Result<Self> {
        let step = 2.0 * PI * config.units.hbar / config.box_length;
        let p = [
            step * spec.n[0] as f64,
            step * spec.n[1] as f64,
            step * spec.n[2] as f64,
        ];
        let pn = vector::norm(&p);
        if !(pn > 0.0) {
            return Err(Error::InvalidLattice("zero momentum".into()));
        }
        let omega = config.units.c * pn / config.units.hbar;
        let k = Direction::from_vector(p)?;
        let triad = make_triad_with_gauge(k, &config.gauge);
        let eps = triad.eps(spec.helicity);
        let k_cross_eps = vector::real_cross(k.as_array(), &eps);
        Ok(Self {
            helicity: spec.helicity,
            n: spec.n,
            p,
            omega,
            k,
            triad,
            eps,
            k_cross_eps,
        })
    }

    pub fn spec(&self) -> ModeSpec {
        ModeSpec::new(self.helicity, self.n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockBasis {
    config: LatticeConfig,
    modes: Vec<Mode>,
    dim: usize,
    strides: Vec<usize>,
}

/// Enumerates the truncated Fock basis for a lattice.
pub fn build_basis(config: &LatticeConfig) -> Result<FockBasis> {
    config.validate()?;
    let levels = config.n_max as u128 + 1;
    let mut required: u128 = 1;
    for _ in &config.modes {
        required = required.saturating_mul(levels);
        if required > config.dimension_limit as u128 {
            let full = levels.checked_pow(config.modes.len() as u32).unwrap_or(u128::MAX);
            return Err(Error::DimensionGuard {
                required: full,
                limit: config.dimension_limit,
            });
        }
    }
    let dim = required as usize;
    let modes = config
        .modes
        .iter()
        .map(|&spec| Mode::new(spec, config))
        .collect::<Result<Vec<_>>>()?;
    let count = modes.len();
    let mut strides = alloc::vec![1usize; count];
    for m in (0..count.saturating_sub(1)).rev() {
        strides[m] = strides[m + 1] * (config.n_max as usize + 1);
    }
    Ok(FockBasis {
        config: config.clone(),
        modes,
        dim,
        strides,
    })
}

impl FockBasis {
    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn mode(&self, index: usize) -> Result<&Mode> {
        self.modes.get(index).ok_or(Error::UnknownMode {
            index,
            modes: self.modes.len(),
        })
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> u32 {
        self.config.n_max
    }

    pub fn units(&self) -> &Units {
        &self.config.units
    }

    pub fn cell_volume(&self) -> f64 {
        self.config.cell_volume()
    }

    pub fn box_length(&self) -> f64 {
        self.config.box_length
    }

    pub fn find_mode(&self, spec: ModeSpec) -> Option<usize> {
        self.modes.iter().position(|m| m.spec() == spec)
    }

    /// Occupancy of `mode` in basis state `index`.
    pub fn occupancy_of(&self, index: usize, mode: usize) -> u32 {
        ((index / self.strides[mode]) % (self.config.n_max as usize + 1)) as u32
    }

    pub fn occupancy(&self, index: usize) -> Vec<u32> {
        (0..self.modes.len())
            .map(|m| self.occupancy_of(index, m))
            .collect()
    }

    pub fn index_of(&self, occupancy: &[u32]) -> Result<usize> {
        if occupancy.len() != self.modes.len() {
            return Err(Error::OccupancyLength {
                got: occupancy.len(),
                expected: self.modes.len(),
            });
        }
        let mut index = 0;
        for (m, &o) in occupancy.iter().enumerate() {
            if o > self.config.n_max {
                return Err(Error::OccupancyOverCap {
                    occupancy: o,
                    n_max: self.config.n_max,
                });
            }
            index += o as usize * self.strides[m];
        }
        Ok(index)
    }

    pub(crate) fn stride(&self, mode: usize) -> usize {
        self.strides[mode]
    }

    /// Keeps basis states whose every occupancy is `≤ n_max − margin`.
    pub fn safe_mask(&self, margin: u32) -> Result<Vec<bool>> {
        if margin > self.config.n_max {
            return Err(Error::MarginTooLarge {
                margin,
                n_max: self.config.n_max,
            });
        }
        let top = self.config.n_max - margin;
        Ok((0..self.dim)
            .map(|i| (0..self.modes.len()).all(|m| self.occupancy_of(i, m) <= top))
            .collect())
    }

    /// True if every momentum appears with both helicities.
    pub fn helicity_complete(&self) -> Result<()> {
        for m in &self.modes {
            if self.find_mode(ModeSpec::new(-m.helicity, m.n)).is_none() {
                return Err(Error::IncompleteHelicities {
                    n: m.n,
                    missing: -m.helicity,
                });
            }
        }
        Ok(())
    }

    /// True if the mode set is closed under `n → −n` (same helicity).
    pub fn momentum_symmetric(&self) -> Result<()> {
        for m in &self.modes {
            let reflected = [-m.n[0], -m.n[1], -m.n[2]];
            if self.find_mode(ModeSpec::new(m.helicity, reflected)).is_none() {
                return Err(Error::AsymmetricModeSet { n: m.n });
            }
        }
        Ok(())
    }

    /// Distinct lattice momenta in first-appearance order.
    pub fn distinct_momenta(&self) -> Vec<&Mode> {
        let mut seen = BTreeSet::new();
        self.modes.iter().filter(|m| seen.insert(m.n)).collect()
    }
}

/// `a†_m`: raises the occupancy of `mode` by one with amplitude `√(n+1)`;
/// states at the cap map to zero.
pub fn creation(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    Ok(annihilation(basis, mode)?.adjoint().with_symmetry(Symmetry::General))
}

/// `a_m`: lowers the occupancy of `mode` by one with amplitude `√n`.
pub fn annihilation(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    basis.mode(mode)?;
    let stride = basis.stride(mode);
    let triplets = (0..basis.dim()).filter_map(|i| {
        let n = basis.occupancy_of(i, mode);
        (n > 0).then(|| (i - stride, i, Complex64::new((n as f64).sqrt(), 0.0)))
    });
    Ok(SparseOperator::from_triplets(basis.dim(), triplets))
}

/// `N_m = a†_m a_m`, diagonal with the occupancy of `mode`.
pub fn number_operator(basis: &FockBasis, mode: usize) -> Result<SparseOperator> {
    basis.mode(mode)?;
    let diag: Vec<f64> = (0..basis.dim())
        .map(|i| basis.occupancy_of(i, mode) as f64)
        .collect();
    Ok(SparseOperator::diagonal(&diag))
}

/// `N = Σ_m N_m`.
pub fn total_number(basis: &FockBasis) -> SparseOperator {
    let diag: Vec<f64> = (0..basis.dim())
        .map(|i| {
            (0..basis.mode_count())
                .map(|m| basis.occupancy_of(i, m) as f64)
                .sum()
        })
        .collect();
    SparseOperator::diagonal(&diag)
}

/// Orthogonal projector onto states with every occupancy `≤ n_max − margin`.
pub fn safe_projector(basis: &FockBasis, margin: u32) -> Result<SparseOperator> {
    let mask = basis.safe_mask(margin)?;
    let diag: Vec<f64> = mask.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
    Ok(SparseOperator::diagonal(&diag))
}
