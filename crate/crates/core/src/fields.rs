//! Field operators on the Fock lattice and the identities they satisfy.
//!
//! Every field component is a ladder-linear form
//! `F(r,t) = Σ_m (f_m(r,t) a_m + f_m(r,t)* a†_m)` with plane-wave mode
//! functions `f_m ∝ e^{i(p·r/ħ − ωt)}`:
//!
//! ```text
//! E:  f_m = (1/2πħ) √Δ³p √ω  i ε_s
//! B:  f_m = (1/2πħ) √Δ³p √ω  i (k × ε_s)
//! A:  f_m = (c/2πħ) √Δ³p /√ω   ε_s
//! ```
//!
//! Because the forms are linear, derivatives act on the per-mode
//! coefficients, and the spatial integrals of bilinears reduce to Kronecker
//! deltas through `∫_box d³r e^{i(p−p')·r/ħ} = L³ δ_{nn'}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fock::{annihilation, creation, number_operator, FockBasis};
use crate::operator::{SparseOperator, Symmetry};
use crate::polarization::transverse_projector;
use crate::vector::{self, levi_civita, CMat3, CVec3, Vec3};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub r: Vec3,
    pub t: f64,
}

impl SpacetimePoint {
    pub const ORIGIN: Self = Self { r: [0.0; 3], t: 0.0 };

    pub fn new(r: Vec3, t: f64) -> Self {
        Self { r, t }
    }

    pub fn shifted(&self, axis: usize, h: f64) -> Self {
        let mut r = self.r;
        r[axis] += h;
        Self { r, t: self.t }
    }

    pub fn delayed(&self, h: f64) -> Self {
        Self {
            r: self.r,
            t: self.t + h,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    E,
    B,
    A,
}

impl FieldKind {
    pub fn name(&self) -> &'static str {
        match self {
            FieldKind::E => "E",
            FieldKind::B => "B",
            FieldKind::A => "A",
        }
    }
}

/// Per-mode coefficient of `a_m` in each Cartesian component of a
/// ladder-linear vector operator.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderForm {
    pub coeffs: Vec<CVec3>,
}

impl LadderForm {
    fn map(&self, basis: &FockBasis, f: impl Fn(&crate::fock::Mode, &CVec3) -> CVec3) -> Self {
        Self {
            coeffs: basis
                .modes()
                .iter()
                .zip(&self.coeffs)
                .map(|(m, c)| f(m, c))
                .collect(),
        }
    }

    /// Exact `∂_t`: each coefficient picks up `−iω_m`.
    pub fn time_derivative(&self, basis: &FockBasis) -> Self {
        self.map(basis, |m, c| vector::cscale(Complex64::new(0.0, -m.omega), c))
    }

    /// Exact `∂/∂r_axis`: each coefficient picks up `i p_axis/ħ`.
    pub fn spatial_derivative(&self, basis: &FockBasis, axis: usize) -> Self {
        let hbar = basis.units().hbar;
        self.map(basis, |m, c| vector::cscale(Complex64::new(0.0, m.p[axis] / hbar), c))
    }

    /// Exact `∇ ×`.
    pub fn curl(&self, basis: &FockBasis) -> Self {
        let hbar = basis.units().hbar;
        self.map(basis, |m, c| {
            let ip = vector::cscale(I, &vector::complexify(&vector::scale(1.0 / hbar, &m.p)));
            vector::ccross(&ip, c)
        })
    }

    /// Exact `∇ ·`, one scalar coefficient per mode.
    pub fn divergence(&self, basis: &FockBasis) -> Vec<Complex64> {
        let hbar = basis.units().hbar;
        basis
            .modes()
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| I * vector::cdot(&vector::complexify(&vector::scale(1.0 / hbar, &m.p)), c))
            .collect()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| vector::cscale(s, c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| vector::csub(a, b))
                .collect(),
        }
    }

    pub fn component(&self, axis: usize) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c[axis]).collect()
    }

    /// Hermitian component operators `Σ_m (f a + f* a†)`.
    pub fn operators(&self, basis: &FockBasis) -> [SparseOperator; 3] {
        core::array::from_fn(|axis| linear_functional(basis, &self.component(axis)))
    }

    /// Antihermitian component operators `Σ_m (f a − f* a†)`.
    pub fn antihermitian_operators(&self, basis: &FockBasis) -> [SparseOperator; 3] {
        core::array::from_fn(|axis| ladder_combination(basis, &self.component(axis), -1.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(vector::cmax_abs(c)))
    }
}

/// Mode-function coefficients of the requested field at `x`.
pub fn field_form(kind: FieldKind, basis: &FockBasis, x: &SpacetimePoint) -> LadderForm {
    let units = *basis.units();
    let root_cell = basis.cell_volume().sqrt();
    let norm = 1.0 / (2.0 * PI * units.hbar);
    let coeffs = basis
        .modes()
        .iter()
        .map(|m| {
            let phase =
                Complex64::from_polar(1.0, vector::dot(&m.p, &x.r) / units.hbar - m.omega * x.t);
            match kind {
                FieldKind::E => {
                    vector::cscale(I * phase * (norm * root_cell * m.omega.sqrt()), &m.eps)
                }
                FieldKind::B => vector::cscale(
                    I * phase * (norm * root_cell * m.omega.sqrt()),
                    &m.k_cross_eps,
                ),
                FieldKind::A => vector::cscale(
                    phase * (units.c * norm * root_cell / m.omega.sqrt()),
                    &m.eps,
                ),
            }
        })
        .collect();
    LadderForm { coeffs }
}

/// The three hermitian component operators of `E`, `B` or `A` at `x`.
pub fn field(kind: FieldKind, basis: &FockBasis, x: &SpacetimePoint) -> [SparseOperator; 3] {
    field_form(kind, basis, x).operators(basis)
}

/// `Σ_m (f_m a_m + conj(f_m) a†_m)`, flagged hermitian.
pub fn linear_functional(basis: &FockBasis, coeffs: &[Complex64]) -> SparseOperator {
    ladder_combination(basis, coeffs, 1.0)
}

fn ladder_combination(basis: &FockBasis, coeffs: &[Complex64], sign: f64) -> SparseOperator {
    assert_eq!(coeffs.len(), basis.mode_count(), "one coefficient per mode");
    let mut triplets = Vec::new();
    for i in 0..basis.dim() {
        for (m, &f) in coeffs.iter().enumerate() {
            if f == ZERO {
                continue;
            }
            let n = basis.occupancy_of(i, m);
            if n == 0 {
                continue;
            }
            let lower = i - basis.stride(m);
            let amp = (n as f64).sqrt();
            // a: |n⟩ → √n |n−1⟩ ; a†: |n−1⟩ → √n |n⟩
            triplets.push((lower, i, f * amp));
            triplets.push((i, lower, f.conj() * (sign * amp)));
        }
    }
    let symmetry = if sign > 0.0 {
        Symmetry::Hermitian
    } else {
        Symmetry::AntiHermitian
    };
    SparseOperator::from_triplets(basis.dim(), triplets).with_symmetry(symmetry)
}

fn weighted_number_sum(basis: &FockBasis, weight: impl Fn(&crate::fock::Mode) -> f64) -> SparseOperator {
    let weights: Vec<f64> = basis.modes().iter().map(weight).collect();
    let diag: Vec<f64> = (0..basis.dim())
        .map(|i| {
            weights
                .iter()
                .enumerate()
                .map(|(m, w)| w * basis.occupancy_of(i, m) as f64)
                .sum()
        })
        .collect();
    SparseOperator::diagonal(&diag)
}

/// `H = Σ_m ħω_m N_m`.
pub fn observable_h(basis: &FockBasis) -> SparseOperator {
    let hbar = basis.units().hbar;
    weighted_number_sum(basis, |m| hbar * m.omega)
}

/// `P = Σ_m p_m N_m`.
pub fn observable_p(basis: &FockBasis) -> [SparseOperator; 3] {
    core::array::from_fn(|j| weighted_number_sum(basis, |m| m.p[j]))
}

/// `S = Σ_m s_m ħ k_m N_m`.
pub fn observable_s(basis: &FockBasis) -> [SparseOperator; 3] {
    let hbar = basis.units().hbar;
    core::array::from_fn(|j| {
        weighted_number_sum(basis, |m| m.helicity as f64 * hbar * m.k.as_array()[j])
    })
}

/// Finite remnants of `½[a, a†]` summed over the configured modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPointConstants {
    pub energy: f64,
    pub momentum: Vec3,
    pub spin: Vec3,
}

pub fn zero_point_constants(basis: &FockBasis) -> ZeroPointConstants {
    let hbar = basis.units().hbar;
    let mut energy = 0.0;
    let mut momentum = [0.0; 3];
    let mut spin = [0.0; 3];
    for m in basis.modes() {
        energy += 0.5 * hbar * m.omega;
        momentum = vector::add(&momentum, &vector::scale(0.5, &m.p));
        spin = vector::add(
            &spin,
            &vector::scale(0.5 * m.helicity as f64 * hbar, m.k.as_array()),
        );
    }
    ZeroPointConstants {
        energy,
        momentum,
        spin,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ladder {
    Lower,
    Raise,
}

/// Accumulates `Σ c · X_m Y_m'` with `X, Y ∈ {a, a†}` before forming any
/// matrix products.
#[derive(Debug, Default)]
struct QuadraticForm {
    terms: BTreeMap<(usize, Ladder, usize, Ladder), Complex64>,
}

impl QuadraticForm {
    /// Adds `weight · ∫_box d³r F(r,t) G(r,t)` for ladder-linear scalars whose
    /// coefficients at `r = 0` are `f` and `g`.
    fn add_box_integral(&mut self, basis: &FockBasis, f: &[Complex64], g: &[Complex64], weight: f64) {
        let volume = basis.box_length().powi(3);
        let w = weight * volume;
        let modes = basis.modes();
        for (m, mode) in modes.iter().enumerate() {
            for (mp, other) in modes.iter().enumerate() {
                let same = mode.n == other.n;
                let opposite = mode.n == [-other.n[0], -other.n[1], -other.n[2]];
                if opposite {
                    *self.terms.entry((m, Ladder::Lower, mp, Ladder::Lower)).or_insert(ZERO) +=
                        f[m] * g[mp] * w;
                    *self.terms.entry((m, Ladder::Raise, mp, Ladder::Raise)).or_insert(ZERO) +=
                        f[m].conj() * g[mp].conj() * w;
                }
                if same {
                    *self.terms.entry((m, Ladder::Lower, mp, Ladder::Raise)).or_insert(ZERO) +=
                        f[m] * g[mp].conj() * w;
                    *self.terms.entry((m, Ladder::Raise, mp, Ladder::Lower)).or_insert(ZERO) +=
                        f[m].conj() * g[mp] * w;
                }
            }
        }
    }

    fn into_operator(self, basis: &FockBasis) -> Result<SparseOperator> {
        let lowers = (0..basis.mode_count())
            .map(|m| annihilation(basis, m))
            .collect::<Result<Vec<_>>>()?;
        let raises = (0..basis.mode_count())
            .map(|m| creation(basis, m))
            .collect::<Result<Vec<_>>>()?;
        let pick = |m: usize, l: Ladder| match l {
            Ladder::Lower => &lowers[m],
            Ladder::Raise => &raises[m],
        };
        let mut total = SparseOperator::zero(basis.dim());
        for ((m, x, mp, y), c) in self.terms {
            if c == ZERO {
                continue;
            }
            let product = pick(m, x).mul(pick(mp, y))?;
            total = total.add_scaled(&product, c)?;
        }
        Ok(total.with_symmetry(Symmetry::Hermitian))
    }
}

/// `(1/8π) ∫d³r (E² + B²)` at time `t`.
pub fn quadratic_h_from_fields(basis: &FockBasis, t: f64) -> Result<SparseOperator> {
    let x = SpacetimePoint::new([0.0; 3], t);
    let e = field_form(FieldKind::E, basis, &x);
    let b = field_form(FieldKind::B, basis, &x);
    let mut form = QuadraticForm::default();
    let weight = 1.0 / (8.0 * PI);
    for i in 0..3 {
        form.add_box_integral(basis, &e.component(i), &e.component(i), weight);
        form.add_box_integral(basis, &b.component(i), &b.component(i), weight);
    }
    form.into_operator(basis)
}

/// `(1/8πc) ∫d³r (F × G − G × F)` keeping the operator order of each product.
fn antisymmetrized_cross(
    basis: &FockBasis,
    f: &LadderForm,
    g: &LadderForm,
) -> Result<[SparseOperator; 3]> {
    let weight = 1.0 / (8.0 * PI * basis.units().c);
    let mut out = Vec::with_capacity(3);
    for j in 0..3 {
        let mut form = QuadraticForm::default();
        for k in 0..3 {
            for l in 0..3 {
                let eps = levi_civita(j, k, l);
                if eps == 0.0 {
                    continue;
                }
                form.add_box_integral(basis, &f.component(k), &g.component(l), weight * eps);
                form.add_box_integral(basis, &g.component(k), &f.component(l), -weight * eps);
            }
        }
        out.push(form.into_operator(basis)?);
    }
    let mut it = out.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// `(1/8πc) ∫d³r (E × B − B × E)` at time `t`.
pub fn quadratic_p_from_fields(basis: &FockBasis, t: f64) -> Result<[SparseOperator; 3]> {
    let x = SpacetimePoint::new([0.0; 3], t);
    antisymmetrized_cross(
        basis,
        &field_form(FieldKind::E, basis, &x),
        &field_form(FieldKind::B, basis, &x),
    )
}

/// `(1/8πc) ∫d³r (E × A − A × E)` at time `t`.
pub fn quadratic_s_from_fields(basis: &FockBasis, t: f64) -> Result<[SparseOperator; 3]> {
    let x = SpacetimePoint::new([0.0; 3], t);
    antisymmetrized_cross(
        basis,
        &field_form(FieldKind::E, basis, &x),
        &field_form(FieldKind::A, basis, &x),
    )
}

/// One named residual, absolute and relative to a reference magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub absolute: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.absolute / self.scale
        } else {
            self.absolute
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub entries: Vec<Residual>,
}

impl ResidualReport {
    pub fn max_relative(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, r| m.max(r.relative()))
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.entries.iter().find(|r| r.name == name)
    }

    /// Entry-wise ratio `self / finer`, the Richardson ratio when `finer`
    /// used half the step.
    pub fn ratios(&self, finer: &ResidualReport) -> Vec<(&'static str, f64)> {
        self.entries
            .iter()
            .zip(&finer.entries)
            .map(|(a, b)| (a.name, a.absolute / b.absolute))
            .collect()
    }
}

fn vector_norm(ops: &[SparseOperator; 3]) -> f64 {
    ops.iter().map(|o| o.frobenius_norm().powi(2)).fold(0.0, |acc, x| acc + x).sqrt()
}

fn vector_diff_norm(a: &[SparseOperator; 3], b: &[SparseOperator; 3]) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..3 {
        total += a[i].sub(&b[i])?.frobenius_norm().powi(2);
    }
    Ok(total.sqrt())
}

fn combine(
    a: &[SparseOperator; 3],
    b: &[SparseOperator; 3],
    s: f64,
) -> Result<[SparseOperator; 3]> {
    Ok([
        a[0].add_scaled(&b[0], Complex64::new(s, 0.0))?,
        a[1].add_scaled(&b[1], Complex64::new(s, 0.0))?,
        a[2].add_scaled(&b[2], Complex64::new(s, 0.0))?,
    ])
}

fn scale_all(a: &[SparseOperator; 3], s: f64) -> [SparseOperator; 3] {
    [a[0].scale_real(s), a[1].scale_real(s), a[2].scale_real(s)]
}

fn largest_wavenumber(basis: &FockBasis) -> f64 {
    let c = basis.units().c;
    basis.modes().iter().fold(0.0, |m, mode| m.max(mode.omega / c))
}

/// Central-difference derivatives of a field sampled around `x`.
struct Stencil {
    dt: [SparseOperator; 3],
    /// `d[axis][component]`
    d: [[SparseOperator; 3]; 3],
}

impl Stencil {
    fn new(kind: FieldKind, basis: &FockBasis, x: &SpacetimePoint, h: f64) -> Result<Self> {
        let inv = 1.0 / (2.0 * h);
        let diff = |plus: SpacetimePoint, minus: SpacetimePoint| -> Result<[SparseOperator; 3]> {
            let fp = field(kind, basis, &plus);
            let fm = field(kind, basis, &minus);
            Ok(scale_all(&combine(&fp, &fm, -1.0)?, inv))
        };
        let dt = diff(x.delayed(h), x.delayed(-h))?;
        let d0 = diff(x.shifted(0, h), x.shifted(0, -h))?;
        let d1 = diff(x.shifted(1, h), x.shifted(1, -h))?;
        let d2 = diff(x.shifted(2, h), x.shifted(2, -h))?;
        Ok(Self { dt, d: [d0, d1, d2] })
    }

    fn curl(&self) -> Result<[SparseOperator; 3]> {
        let d = &self.d;
        Ok([
            d[1][2].sub(&d[2][1])?,
            d[2][0].sub(&d[0][2])?,
            d[0][1].sub(&d[1][0])?,
        ])
    }

    fn divergence(&self) -> Result<SparseOperator> {
        self.d[0][0].add(&self.d[1][1])?.add(&self.d[2][2])
    }
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    Ok(())
}

/// Central-difference check of `E = −(1/c)∂_t A` and `B = ∇ × A` at `x`.
///
/// Residuals are Frobenius norms relative to `‖E(x)‖` (resp. `‖B(x)‖`) and
/// scale as `O(h²)`.
pub fn check_derivative_relations(
    basis: &FockBasis,
    x: &SpacetimePoint,
    h: f64,
) -> Result<ResidualReport> {
    check_step(h)?;
    let c = basis.units().c;
    let e = field(FieldKind::E, basis, x);
    let b = field(FieldKind::B, basis, x);
    let a = Stencil::new(FieldKind::A, basis, x, h)?;
    let e_from_a = scale_all(&a.dt, -1.0 / c);
    let b_from_a = a.curl()?;
    Ok(ResidualReport {
        entries: alloc::vec![
            Residual {
                name: "E = -(1/c) dA/dt",
                absolute: vector_diff_norm(&e, &e_from_a)?,
                scale: vector_norm(&e),
            },
            Residual {
                name: "B = curl A",
                absolute: vector_diff_norm(&b, &b_from_a)?,
                scale: vector_norm(&b),
            },
        ],
    })
}

/// The same relations with exact per-mode derivatives.
pub fn check_derivative_relations_analytic(
    basis: &FockBasis,
    x: &SpacetimePoint,
) -> Result<ResidualReport> {
    let c = basis.units().c;
    let e = field_form(FieldKind::E, basis, x);
    let b = field_form(FieldKind::B, basis, x);
    let a = field_form(FieldKind::A, basis, x);
    let e_from_a = a.time_derivative(basis).scaled(Complex64::new(-1.0 / c, 0.0));
    let b_from_a = a.curl(basis);
    let e_ops = e.operators(basis);
    let b_ops = b.operators(basis);
    Ok(ResidualReport {
        entries: alloc::vec![
            Residual {
                name: "E = -(1/c) dA/dt",
                absolute: vector_norm(&e.sub(&e_from_a).operators(basis)),
                scale: vector_norm(&e_ops),
            },
            Residual {
                name: "B = curl A",
                absolute: vector_norm(&b.sub(&b_from_a).operators(basis)),
                scale: vector_norm(&b_ops),
            },
        ],
    })
}

pub const MAXWELL_NAMES: [&str; 4] = [
    "-curl E - (1/c) dB/dt",
    "curl B - (1/c) dE/dt",
    "div E",
    "div B",
];

/// Central-difference residuals of the four free Maxwell equations at `x`,
/// relative to `k_max ‖E(x)‖` with `k_max = max ω/c`.
pub fn check_maxwell(basis: &FockBasis, x: &SpacetimePoint, h: f64) -> Result<ResidualReport> {
    check_step(h)?;
    let c = basis.units().c;
    let e = Stencil::new(FieldKind::E, basis, x, h)?;
    let b = Stencil::new(FieldKind::B, basis, x, h)?;
    let scale_e = vector_norm(&field(FieldKind::E, basis, x)) * largest_wavenumber(basis);
    let scale_b = vector_norm(&field(FieldKind::B, basis, x)) * largest_wavenumber(basis);

    let faraday = combine(&scale_all(&e.curl()?, -1.0), &b.dt, -1.0 / c)?;
    let ampere = combine(&b.curl()?, &e.dt, -1.0 / c)?;
    Ok(ResidualReport {
        entries: alloc::vec![
            Residual { name: MAXWELL_NAMES[0], absolute: vector_norm(&faraday), scale: scale_b },
            Residual { name: MAXWELL_NAMES[1], absolute: vector_norm(&ampere), scale: scale_e },
            Residual { name: MAXWELL_NAMES[2], absolute: e.divergence()?.frobenius_norm(), scale: scale_e },
            Residual { name: MAXWELL_NAMES[3], absolute: b.divergence()?.frobenius_norm(), scale: scale_b },
        ],
    })
}

/// Maxwell residuals with exact per-mode derivatives.
pub fn check_maxwell_analytic(basis: &FockBasis, x: &SpacetimePoint) -> Result<ResidualReport> {
    let c = basis.units().c;
    let e = field_form(FieldKind::E, basis, x);
    let b = field_form(FieldKind::B, basis, x);
    let k = largest_wavenumber(basis);
    let scale_e = vector_norm(&e.operators(basis)) * k;
    let scale_b = vector_norm(&b.operators(basis)) * k;
    let inv_c = Complex64::new(1.0 / c, 0.0);

    let faraday = e
        .curl(basis)
        .scaled(Complex64::new(-1.0, 0.0))
        .sub(&b.time_derivative(basis).scaled(inv_c));
    let ampere = b.curl(basis).sub(&e.time_derivative(basis).scaled(inv_c));
    let div_e = linear_functional(basis, &e.divergence(basis));
    let div_b = linear_functional(basis, &b.divergence(basis));
    Ok(ResidualReport {
        entries: alloc::vec![
            Residual { name: MAXWELL_NAMES[0], absolute: vector_norm(&faraday.operators(basis)), scale: scale_b },
            Residual { name: MAXWELL_NAMES[1], absolute: vector_norm(&ampere.operators(basis)), scale: scale_e },
            Residual { name: MAXWELL_NAMES[2], absolute: div_e.frobenius_norm(), scale: scale_e },
            Residual { name: MAXWELL_NAMES[3], absolute: div_b.frobenius_norm(), scale: scale_b },
        ],
    })
}

/// Polarization tensor `Σ_s F_i(ε_s) F_j(ε_s)*` for the commutator of two
/// field kinds, per momentum.
fn polarization_tensor(kind1: FieldKind, kind2: FieldKind, k: &crate::polarization::Direction) -> Result<[[f64; 3]; 3]> {
    let kv = k.as_array();
    let antisym = |sign: f64| {
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                t[i][j] = sign * (0..3).map(|l| levi_civita(i, j, l) * kv[l]).sum::<f64>();
            }
        }
        t
    };
    match (kind1, kind2) {
        (FieldKind::E, FieldKind::E) | (FieldKind::B, FieldKind::B) => Ok(transverse_projector(k)),
        (FieldKind::E, FieldKind::B) => Ok(antisym(1.0)),
        (FieldKind::B, FieldKind::E) => Ok(antisym(-1.0)),
        (FieldKind::A, _) | (_, FieldKind::A) => Err(Error::UnsupportedFieldKind("A")),
    }
}

/// Scalar value of `[F_i(x1), G_j(x2)]` on the safe subspace, summed with the
/// helicity completeness relation:
///
/// ```text
/// (1/(2πħ)²) Σ_n Δ³p ω T_ij(k) (e^{iθ} − e^{−iθ}),  θ = p·(r1−r2)/ħ − ω(t1−t2)
/// ```
///
/// with `T = δ − kk` for `[E,E]` and `[B,B]`, and `T_ij = ε_ijl k_l` for
/// `[E,B]`. Every momentum must carry both helicities.
pub fn field_commutator_closed_form(
    basis: &FockBasis,
    kind1: FieldKind,
    kind2: FieldKind,
    x1: &SpacetimePoint,
    x2: &SpacetimePoint,
) -> Result<CMat3> {
    basis.helicity_complete()?;
    let hbar = basis.units().hbar;
    let rho = vector::sub(&x1.r, &x2.r);
    let tau = x1.t - x2.t;
    let pref = basis.cell_volume() / (2.0 * PI * hbar).powi(2);
    let mut out = [[ZERO; 3]; 3];
    for mode in basis.distinct_momenta() {
        let tensor = polarization_tensor(kind1, kind2, &mode.k)?;
        let theta = vector::dot(&mode.p, &rho) / hbar - mode.omega * tau;
        let bracket = Complex64::new(0.0, 2.0 * theta.sin());
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += bracket * (pref * mode.omega * tensor[i][j]);
            }
        }
    }
    Ok(out)
}

/// The form obtained after pairing `p` with `−p`, valid for mode sets closed
/// under `n → −n`:
/// `[E_i, E_j] = (−2i/(2πħ)²) Σ_n Δ³p ω (δ_ij − k_i k_j) e^{ip·ρ/ħ} sin(ωτ)`.
pub fn field_commutator_symmetric_form(
    basis: &FockBasis,
    x1: &SpacetimePoint,
    x2: &SpacetimePoint,
) -> Result<CMat3> {
    basis.helicity_complete()?;
    momenta_symmetric(basis)?;
    let hbar = basis.units().hbar;
    let rho = vector::sub(&x1.r, &x2.r);
    let tau = x1.t - x2.t;
    let pref = Complex64::new(0.0, -2.0) * (basis.cell_volume() / (2.0 * PI * hbar).powi(2));
    let mut out = [[ZERO; 3]; 3];
    for mode in basis.distinct_momenta() {
        let tensor = transverse_projector(&mode.k);
        let wave = Complex64::from_polar(1.0, vector::dot(&mode.p, &rho) / hbar);
        let factor = pref * wave * (mode.omega * (mode.omega * tau).sin());
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += factor * tensor[i][j];
            }
        }
    }
    Ok(out)
}

fn momenta_symmetric(basis: &FockBasis) -> Result<()> {
    let momenta = basis.distinct_momenta();
    for m in &momenta {
        let reflected = [-m.n[0], -m.n[1], -m.n[2]];
        if !momenta.iter().any(|o| o.n == reflected) {
            return Err(Error::AsymmetricModeSet { n: m.n });
        }
    }
    Ok(())
}

/// Matrix-path commutator `[F_i(x1), G_j(x2)]` for all nine component pairs.
pub fn field_commutator_matrix(
    basis: &FockBasis,
    kind1: FieldKind,
    kind2: FieldKind,
    x1: &SpacetimePoint,
    x2: &SpacetimePoint,
) -> Result<[[SparseOperator; 3]; 3]> {
    let f = field(kind1, basis, x1);
    let g = field(kind2, basis, x2);
    let mut rows = Vec::with_capacity(3);
    for fi in &f {
        let mut row = Vec::with_capacity(3);
        for gj in &g {
            row.push(crate::operator::commutator(fi, gj)?);
        }
        let mut it = row.into_iter();
        rows.push([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]);
    }
    let mut it = rows.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// Lattice sum of the odd commutator kernel
/// `D(ρ,τ) = (−1/(2πħ)³) Σ_n Δ³p e^{ip·ρ/ħ} sin(ωτ)/ω` over distinct momenta.
/// Requires a momentum set closed under `n → −n`, which makes `D` real.
pub fn discrete_pauli_jordan(basis: &FockBasis, rho: &Vec3, tau: f64) -> Result<f64> {
    momenta_symmetric(basis)?;
    let hbar = basis.units().hbar;
    let pref = -basis.cell_volume() / (2.0 * PI * hbar).powi(3);
    let mut sum = ZERO;
    for mode in basis.distinct_momenta() {
        let wave = Complex64::from_polar(1.0, vector::dot(&mode.p, rho) / hbar);
        sum += wave * ((mode.omega * tau).sin() / mode.omega);
    }
    let value = sum * pref;
    debug_assert!(value.im.abs() <= 1e-12 * (1.0 + value.re.abs()));
    Ok(value.re)
}

/// `[F(x), N]` from the matrix path, one antihermitian operator per component.
pub fn field_number_commutator(
    basis: &FockBasis,
    kind: FieldKind,
    x: &SpacetimePoint,
) -> Result<[SparseOperator; 3]> {
    let n = crate::fock::total_number(basis);
    let f = field(kind, basis, x);
    Ok([
        crate::operator::commutator(&f[0], &n)?,
        crate::operator::commutator(&f[1], &n)?,
        crate::operator::commutator(&f[2], &n)?,
    ])
}

/// Closed form of `[F(x), N]`: the field's mode sum with the hermitian
/// conjugate term sign-flipped.
pub fn field_number_commutator_closed_form(
    basis: &FockBasis,
    kind: FieldKind,
    x: &SpacetimePoint,
) -> [SparseOperator; 3] {
    field_form(kind, basis, x).antihermitian_operators(basis)
}

/// Per-mode number operators, cached for callers that need many of them.
pub fn number_operators(basis: &FockBasis) -> Result<Vec<SparseOperator>> {
    (0..basis.mode_count()).map(|m| number_operator(basis, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_basis, LatticeConfig, ModeSpec};
    use crate::units::Units;
    use alloc::vec;

    fn single_plus(n_max: u32) -> FockBasis {
        let cfg = LatticeConfig::new(2.0 * PI, Units::default(), vec![ModeSpec::new(1, [0, 0, 1])], n_max);
        build_basis(&cfg).unwrap()
    }

    #[test]
    fn single_mode_e_y_vacuum_column() {
        let basis = single_plus(3);
        let e = field(FieldKind::E, &basis, &SpacetimePoint::ORIGIN);
        let expected = 1.0 / (2.0 * PI) / 2f64.sqrt();
        assert!((e[1].get(1, 0).norm() - expected).abs() < 1e-15);
        assert!((e[1].get(0, 1).norm() - expected).abs() < 1e-15);
        for i in 2..4 {
            assert_eq!(e[1].get(i, 0), ZERO);
        }
        for op in &e {
            assert!(op.verify_symmetry(1e-12));
        }
    }

    #[test]
    fn linear_functional_of_unit_coefficient_is_a_plus_adag() {
        let basis = single_plus(3);
        let op = linear_functional(&basis, &[Complex64::new(1.0, 0.0)]);
        for n in 0..3 {
            assert!((op.get(n, n + 1).re - ((n + 1) as f64).sqrt()).abs() < 1e-15);
            assert!((op.get(n + 1, n).re - ((n + 1) as f64).sqrt()).abs() < 1e-15);
        }
        assert_eq!(linear_functional(&basis, &[ZERO]).nnz(), 0);
    }

    #[test]
    fn observables_single_mode() {
        let basis = single_plus(3);
        let h = observable_h(&basis);
        let p = observable_p(&basis);
        for n in 0..4 {
            assert!((h.get(n, n).re - n as f64).abs() < 1e-15);
            assert!((p[2].get(n, n).re - n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn helicity_pair_spin() {
        let cfg = LatticeConfig::both_helicities(2.0 * PI, Units::default(), &[[0, 0, 1]], 1);
        let basis = build_basis(&cfg).unwrap();
        let s = observable_s(&basis);
        for i in 0..basis.dim() {
            let occ = basis.occupancy(i);
            let expected = occ[0] as f64 - occ[1] as f64;
            assert!((s[2].get(i, i).re - expected).abs() < 1e-15);
        }
        let zp = zero_point_constants(&basis);
        assert!(vector::max_abs(&zp.spin) < 1e-15);
    }

    #[test]
    fn single_mode_quadratic_energy() {
        let basis = single_plus(3);
        let mask = basis.safe_mask(1).unwrap();
        let q = quadratic_h_from_fields(&basis, 0.0).unwrap().compress(&mask);
        for (n, expected) in [0.5, 1.5, 2.5].iter().enumerate() {
            assert!((q.get(n, n).re - expected).abs() < 1e-12, "{:?}", q.get(n, n));
        }
        assert!(q.max_deviation_from_scalar(ZERO) <= 2.5 + 1e-12);
    }

    #[test]
    fn pauli_jordan_two_mode_sum() {
        let cfg = LatticeConfig::new(
            2.0 * PI,
            Units::default(),
            vec![ModeSpec::new(1, [0, 0, 1]), ModeSpec::new(1, [0, 0, -1])],
            1,
        );
        let basis = build_basis(&cfg).unwrap();
        let d = discrete_pauli_jordan(&basis, &[0.0; 3], PI / 2.0).unwrap();
        assert!((d + 2.0 / (2.0 * PI).powi(3)).abs() < 1e-15);
        assert!((d + 0.008_062_883_608_299_874).abs() < 1e-12);
        assert_eq!(discrete_pauli_jordan(&basis, &[0.3, 0.1, 0.2], 0.0).unwrap(), 0.0);
        let rho = [0.3, -0.2, 1.1];
        let fwd = discrete_pauli_jordan(&basis, &rho, 0.7).unwrap();
        let back = discrete_pauli_jordan(&basis, &rho, -0.7).unwrap();
        assert!((fwd + back).abs() < 1e-15);
        assert!(matches!(
            discrete_pauli_jordan(&single_plus(1), &rho, 0.7),
            Err(Error::AsymmetricModeSet { .. })
        ));
    }

    #[test]
    fn closed_form_needs_both_helicities() {
        let basis = single_plus(2);
        let x = SpacetimePoint::ORIGIN;
        assert!(matches!(
            field_commutator_closed_form(&basis, FieldKind::E, FieldKind::E, &x, &x),
            Err(Error::IncompleteHelicities { .. })
        ));
    }

    #[test]
    fn number_commutator_keeps_annihilation_sign() {
        let basis = single_plus(3);
        let x = SpacetimePoint::ORIGIN;
        let comm = field_number_commutator(&basis, FieldKind::E, &x).unwrap();
        let e = field(FieldKind::E, &basis, &x);
        assert!((comm[0].get(0, 1) - e[0].get(0, 1)).norm() < 1e-15);
        assert!((comm[0].get(1, 0) + e[0].get(1, 0)).norm() < 1e-15);
        assert_eq!(comm[0].symmetry(), Symmetry::AntiHermitian);
        assert!(comm[0].verify_symmetry(1e-14));
    }

    #[test]
    fn rejects_non_positive_step() {
        let basis = single_plus(1);
        assert!(matches!(
            check_maxwell(&basis, &SpacetimePoint::ORIGIN, 0.0),
            Err(Error::InvalidStep(_))
        ));
    }
}
