//! Named verification checks. Each returns its worst residual together with
//! the tolerance it must stay strictly below.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use photonfield_core::ensembles::{
    field_expectation_closed_form, field_expectation_matrix, vacuum, vacuum_e2_lattice_sum,
    vacuum_e2_matrix, FockState,
};
use photonfield_core::fields::{
    self, field, field_commutator_closed_form, field_commutator_matrix,
    field_number_commutator, field_number_commutator_closed_form, observable_h, observable_p,
    observable_s, quadratic_h_from_fields, quadratic_p_from_fields, quadratic_s_from_fields,
    zero_point_constants, FieldKind, ResidualReport, SpacetimePoint,
};
use photonfield_core::fock::{annihilation, creation, total_number, FockBasis};
use photonfield_core::operator::{commutator, SparseOperator};
use photonfield_core::polarization::{check_relations, completeness_matrix, make_triad, Direction};
use photonfield_core::spin::{helicity_states, spin_matrices};
use photonfield_core::vector::{self, cmat_vec, cnorm, cscale, csub};
use photonfield_core::Complex64;

use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    CommutatorClosedForm,
    Conservation,
    EnergyIdentity,
    EqualTimeCommutators,
    ExpectationTwoPath,
    HelicityEigenvalues,
    Hermiticity,
    LadderAlgebra,
    MaxwellAnalytic,
    MaxwellFd,
    MomentumIdentity,
    NumberCommutator,
    PolarizationRelations,
    PotentialRelations,
    SpinIdentity,
    VacuumFluctuations,
}

impl CheckName {
    pub const ALL: [CheckName; 16] = [
        CheckName::CommutatorClosedForm,
        CheckName::Conservation,
        CheckName::EnergyIdentity,
        CheckName::EqualTimeCommutators,
        CheckName::ExpectationTwoPath,
        CheckName::HelicityEigenvalues,
        CheckName::Hermiticity,
        CheckName::LadderAlgebra,
        CheckName::MaxwellAnalytic,
        CheckName::MaxwellFd,
        CheckName::MomentumIdentity,
        CheckName::NumberCommutator,
        CheckName::PolarizationRelations,
        CheckName::PotentialRelations,
        CheckName::SpinIdentity,
        CheckName::VacuumFluctuations,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::CommutatorClosedForm => "commutator_closed_form",
            CheckName::Conservation => "conservation",
            CheckName::EnergyIdentity => "energy_identity",
            CheckName::EqualTimeCommutators => "equal_time_commutators",
            CheckName::ExpectationTwoPath => "expectation_two_path",
            CheckName::HelicityEigenvalues => "helicity_eigenvalues",
            CheckName::Hermiticity => "hermiticity",
            CheckName::LadderAlgebra => "ladder_algebra",
            CheckName::MaxwellAnalytic => "maxwell_analytic",
            CheckName::MaxwellFd => "maxwell_fd",
            CheckName::MomentumIdentity => "momentum_identity",
            CheckName::NumberCommutator => "number_commutator",
            CheckName::PolarizationRelations => "polarization_relations",
            CheckName::PotentialRelations => "potential_relations",
            CheckName::SpinIdentity => "spin_identity",
            CheckName::VacuumFluctuations => "vacuum_fluctuations",
        }
    }

    /// Stream index for the per-check random generator, so adding or
    /// reordering checks never changes another check's samples.
    fn stream(&self) -> u64 {
        CheckName::ALL.iter().position(|c| c == self).unwrap() as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub params: Value,
    pub residual: f64,
    pub tolerance: f64,
}

pub struct Context<'a> {
    pub basis: &'a FockBasis,
    pub state: &'a FockState,
    pub seed: u64,
}

impl Context<'_> {
    fn rng(&self, check: CheckName) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(check.stream());
        rng
    }
}

pub const DIRECTION_SAMPLES: usize = 1000;
pub const NEAR_SINGULAR_SAMPLES: usize = 10;
pub const COMMUTATOR_PAIRS: usize = 20;
pub const FD_STEP: f64 = 1e-3;
pub const LATE_TIME: f64 = 0.37;

pub fn random_direction<R: Rng>(rng: &mut R) -> Direction {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    Direction::from_vector([sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta])
        .expect("sampled direction is nonzero")
}

/// A direction within `10^{-(4+i)}` of `±(1,1,1)/√3`.
pub fn near_singular_direction<R: Rng>(rng: &mut R, i: usize) -> Direction {
    let eps = 10f64.powi(-(4 + i as i32));
    let s = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    let base = s / 3f64.sqrt();
    let v: [f64; 3] = std::array::from_fn(|_| base + eps * rng.gen_range(-1.0..1.0));
    Direction::from_vector(v).expect("perturbation is small")
}

pub fn random_point<R: Rng>(rng: &mut R, extent: f64) -> SpacetimePoint {
    SpacetimePoint::new(
        std::array::from_fn(|_| rng.gen_range(-extent..extent)),
        rng.gen_range(-extent..extent),
    )
}

pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> FockState {
    let v = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    FockState::from_vector(v, 0.0).expect("random vector is nonzero")
}

pub fn run(check: CheckName, ctx: &Context) -> Result<Outcome, LabError> {
    match check {
        CheckName::PolarizationRelations => Ok(polarization_relations(ctx)),
        CheckName::HelicityEigenvalues => Ok(helicity_eigenvalues(ctx)),
        CheckName::LadderAlgebra => ladder_algebra(ctx),
        CheckName::EnergyIdentity => energy_identity(ctx),
        CheckName::MomentumIdentity => vector_identity(ctx, Which::Momentum),
        CheckName::SpinIdentity => vector_identity(ctx, Which::Spin),
        CheckName::Conservation => conservation(ctx),
        CheckName::MaxwellFd => maxwell_fd(ctx),
        CheckName::MaxwellAnalytic => maxwell_analytic(ctx),
        CheckName::PotentialRelations => potential_relations(ctx),
        CheckName::CommutatorClosedForm => commutator_closed_form(ctx),
        CheckName::EqualTimeCommutators => equal_time_commutators(ctx),
        CheckName::NumberCommutator => number_commutator(ctx),
        CheckName::Hermiticity => hermiticity(ctx),
        CheckName::ExpectationTwoPath => expectation_two_path(ctx),
        CheckName::VacuumFluctuations => vacuum_fluctuations(ctx),
    }
}

fn polarization_relations(ctx: &Context) -> Outcome {
    let mut rng = ctx.rng(CheckName::PolarizationRelations);
    let mut worst = 0.0f64;
    for _ in 0..DIRECTION_SAMPLES {
        let k = random_direction(&mut rng);
        let triad = make_triad(k);
        worst = worst.max(check_relations(&triad).max_residual());
        let m = completeness_matrix(&triad);
        let kv = k.as_array();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 1.0 } else { 0.0 } - kv[i] * kv[j];
                worst = worst.max((m[i][j] - expected).abs());
            }
        }
    }
    Outcome {
        params: json!({ "directions": DIRECTION_SAMPLES }),
        residual: worst,
        tolerance: 1e-12,
    }
}

fn helicity_eigenvalues(ctx: &Context) -> Outcome {
    let mut rng = ctx.rng(CheckName::HelicityEigenvalues);
    let s = spin_matrices(1.0);
    let mut worst = 0.0f64;
    let mut check = |k: &Direction| {
        let pair = helicity_states(k);
        let sk = s.along(k.as_array());
        for h in [1, -1] {
            let chi = pair.chi(h);
            let r = cnorm(&csub(&cmat_vec(&sk, &chi), &cscale(Complex64::new(h as f64, 0.0), &chi)));
            worst = worst.max(r).max((cnorm(&chi) - 1.0).abs());
        }
    };
    for _ in 0..DIRECTION_SAMPLES - NEAR_SINGULAR_SAMPLES {
        check(&random_direction(&mut rng));
    }
    for i in 0..NEAR_SINGULAR_SAMPLES {
        check(&near_singular_direction(&mut rng, i));
    }
    Outcome {
        params: json!({
            "directions": DIRECTION_SAMPLES,
            "near_singular": NEAR_SINGULAR_SAMPLES,
        }),
        residual: worst,
        tolerance: 1e-10,
    }
}

fn ladder_algebra(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let mask = basis.safe_mask(1)?;
    let lowers = (0..basis.mode_count())
        .map(|m| annihilation(basis, m))
        .collect::<Result<Vec<_>, _>>()?;
    let raises = (0..basis.mode_count())
        .map(|m| creation(basis, m))
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst = 0.0f64;
    for m in 0..basis.mode_count() {
        for mp in 0..basis.mode_count() {
            let delta = if m == mp { 1.0 } else { 0.0 };
            let c = commutator(&lowers[m], &raises[mp])?.restrict(&mask);
            worst = worst.max(c.max_deviation_from_scalar(Complex64::new(delta, 0.0)));
            worst = worst.max(commutator(&lowers[m], &lowers[mp])?.max_abs());
        }
    }
    Ok(Outcome {
        params: json!({ "modes": basis.mode_count(), "margin": 1 }),
        residual: worst,
        tolerance: 1e-12,
    })
}

fn largest_diagonal(op: &SparseOperator) -> f64 {
    (0..op.dim()).fold(0.0, |m, i| m.max(op.get(i, i).norm()))
}

/// `max |Q − (O + z·I)|` on the margin-1 subspace over the largest diagonal
/// entry of `O + z·I` (at least 1).
fn identity_residual(
    basis: &FockBasis,
    quadratic: &SparseOperator,
    reference: &SparseOperator,
    constant: f64,
) -> Result<f64, LabError> {
    let mask = basis.safe_mask(1)?;
    let shifted = reference.add_scaled(&SparseOperator::identity(basis.dim()), Complex64::new(constant, 0.0))?;
    let diff = quadratic.sub(&shifted)?.restrict(&mask);
    Ok(diff.max_abs() / largest_diagonal(&shifted.restrict(&mask)).max(1.0))
}

fn energy_identity(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let zp = zero_point_constants(basis);
    let h = observable_h(basis);
    let mut worst = 0.0f64;
    for t in [0.0, LATE_TIME] {
        worst = worst.max(identity_residual(basis, &quadratic_h_from_fields(basis, t)?, &h, zp.energy)?);
    }
    Ok(Outcome {
        params: json!({ "times": [0.0, LATE_TIME], "zero_point": zp.energy, "margin": 1 }),
        residual: worst,
        tolerance: 1e-10,
    })
}

#[derive(Clone, Copy)]
enum Which {
    Momentum,
    Spin,
}

fn vector_identity(ctx: &Context, which: Which) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let zp = zero_point_constants(basis);
    let (reference, constant) = match which {
        Which::Momentum => (observable_p(basis), zp.momentum),
        Which::Spin => (observable_s(basis), zp.spin),
    };
    let mut worst = 0.0f64;
    for t in [0.0, LATE_TIME] {
        let q = match which {
            Which::Momentum => quadratic_p_from_fields(basis, t)?,
            Which::Spin => quadratic_s_from_fields(basis, t)?,
        };
        for j in 0..3 {
            worst = worst.max(identity_residual(basis, &q[j], &reference[j], constant[j])?);
        }
    }
    Ok(Outcome {
        params: json!({ "times": [0.0, LATE_TIME], "zero_point": constant, "margin": 1 }),
        residual: worst,
        tolerance: 1e-10,
    })
}

fn conservation(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let mask = basis.safe_mask(1)?;
    let rel = |a: &SparseOperator, b: &SparseOperator| -> Result<f64, LabError> {
        let scale = largest_diagonal(&a.restrict(&mask)).max(1.0);
        Ok(a.sub(b)?.restrict(&mask).max_abs() / scale)
    };
    let mut worst = rel(&quadratic_h_from_fields(basis, 0.0)?, &quadratic_h_from_fields(basis, LATE_TIME)?)?;
    let p0 = quadratic_p_from_fields(basis, 0.0)?;
    let p1 = quadratic_p_from_fields(basis, LATE_TIME)?;
    let s0 = quadratic_s_from_fields(basis, 0.0)?;
    let s1 = quadratic_s_from_fields(basis, LATE_TIME)?;
    for j in 0..3 {
        worst = worst.max(rel(&p0[j], &p1[j])?).max(rel(&s0[j], &s1[j])?);
    }
    Ok(Outcome {
        params: json!({ "times": [0.0, LATE_TIME] }),
        residual: worst,
        tolerance: 1e-10,
    })
}

fn report_params(report: &ResidualReport) -> Value {
    let mut map = serde_json::Map::new();
    for r in &report.entries {
        map.insert(r.name.to_string(), json!(r.relative()));
    }
    Value::Object(map)
}

/// Relative residuals below this are roundoff and carry no convergence order.
const ROUNDOFF_FLOOR: f64 = 1e-11;

fn fd_outcome(coarse: &ResidualReport, fine: &ResidualReport, x: &SpacetimePoint) -> Outcome {
    let mut ratios = serde_json::Map::new();
    for ((name, ratio), r) in coarse.ratios(fine).into_iter().zip(&coarse.entries) {
        if r.relative() > ROUNDOFF_FLOOR {
            ratios.insert(name.to_string(), json!(ratio));
        }
    }
    Outcome {
        params: json!({
            "h": FD_STEP,
            "point": [x.r[0], x.r[1], x.r[2], x.t],
            "relative": report_params(coarse),
            "richardson": Value::Object(ratios),
        }),
        residual: coarse.max_relative(),
        tolerance: 1e-6,
    }
}

fn maxwell_fd(ctx: &Context) -> Result<Outcome, LabError> {
    let x = random_point(&mut ctx.rng(CheckName::MaxwellFd), 1.0);
    let coarse = fields::check_maxwell(ctx.basis, &x, FD_STEP)?;
    let fine = fields::check_maxwell(ctx.basis, &x, FD_STEP / 2.0)?;
    Ok(fd_outcome(&coarse, &fine, &x))
}

fn potential_relations(ctx: &Context) -> Result<Outcome, LabError> {
    let x = random_point(&mut ctx.rng(CheckName::PotentialRelations), 1.0);
    let coarse = fields::check_derivative_relations(ctx.basis, &x, FD_STEP)?;
    let fine = fields::check_derivative_relations(ctx.basis, &x, FD_STEP / 2.0)?;
    Ok(fd_outcome(&coarse, &fine, &x))
}

fn maxwell_analytic(ctx: &Context) -> Result<Outcome, LabError> {
    let x = random_point(&mut ctx.rng(CheckName::MaxwellAnalytic), 1.0);
    let maxwell = fields::check_maxwell_analytic(ctx.basis, &x)?;
    let potential = fields::check_derivative_relations_analytic(ctx.basis, &x)?;
    Ok(Outcome {
        params: json!({
            "point": [x.r[0], x.r[1], x.r[2], x.t],
            "maxwell": report_params(&maxwell),
            "potential": report_params(&potential),
        }),
        residual: maxwell.max_relative().max(potential.max_relative()),
        tolerance: 1e-12,
    })
}

fn commutator_closed_form(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    basis.helicity_complete()?;
    let mask = basis.safe_mask(1)?;
    let mut rng = ctx.rng(CheckName::CommutatorClosedForm);
    let mut worst = 0.0f64;
    for _ in 0..COMMUTATOR_PAIRS {
        let x1 = random_point(&mut rng, basis.box_length());
        let x2 = random_point(&mut rng, basis.box_length());
        let closed = field_commutator_closed_form(basis, FieldKind::E, FieldKind::E, &x1, &x2)?;
        let matrix = field_commutator_matrix(basis, FieldKind::E, FieldKind::E, &x1, &x2)?;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max(matrix[i][j].restrict(&mask).max_deviation_from_scalar(closed[i][j]));
            }
        }
    }
    Ok(Outcome {
        params: json!({ "pairs": COMMUTATOR_PAIRS, "fields": "E,E", "margin": 1 }),
        residual: worst,
        tolerance: 1e-10,
    })
}

fn equal_time_commutators(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    basis.helicity_complete()?;
    let mask = basis.safe_mask(1)?;
    let mut rng = ctx.rng(CheckName::EqualTimeCommutators);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let x1 = random_point(&mut rng, basis.box_length());
        let mut x2 = random_point(&mut rng, basis.box_length());
        x2.t = x1.t;
        for kind in [FieldKind::E, FieldKind::B] {
            let closed = field_commutator_closed_form(basis, kind, kind, &x1, &x2)?;
            let matrix = field_commutator_matrix(basis, kind, kind, &x1, &x2)?;
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max(closed[i][j].norm()).max(matrix[i][j].restrict(&mask).max_abs());
                }
            }
        }
        let ee = field_commutator_closed_form(basis, FieldKind::E, FieldKind::E, &x1, &x2)?;
        let bb = field_commutator_closed_form(basis, FieldKind::B, FieldKind::B, &x1, &x2)?;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((ee[i][j] - bb[i][j]).norm());
            }
        }
    }
    Ok(Outcome {
        params: json!({ "pairs": 5, "fields": ["E,E", "B,B"] }),
        residual: worst,
        tolerance: 1e-12,
    })
}

fn number_commutator(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let mut rng = ctx.rng(CheckName::NumberCommutator);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let x = random_point(&mut rng, basis.box_length());
        for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
            let matrix = field_number_commutator(basis, kind, &x)?;
            let closed = field_number_commutator_closed_form(basis, kind, &x);
            for i in 0..3 {
                worst = worst
                    .max(matrix[i].sub(&closed[i])?.max_abs())
                    .max(closed[i].symmetry_residual());
            }
        }
    }
    Ok(Outcome {
        params: json!({ "points": 3, "fields": ["A", "B", "E"] }),
        residual: worst,
        tolerance: 1e-12,
    })
}

fn hermiticity(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let x = random_point(&mut ctx.rng(CheckName::Hermiticity), basis.box_length());
    let mut worst = 0.0f64;
    for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
        for op in field(kind, basis, &x) {
            worst = worst.max(op.symmetry_residual());
        }
    }
    let mut diagonal = vec![observable_h(basis), total_number(basis)];
    diagonal.extend(observable_p(basis));
    diagonal.extend(observable_s(basis));
    for op in &diagonal {
        for (i, j, v) in op.triplets() {
            if i != j {
                worst = worst.max(v.norm());
            } else {
                worst = worst.max(v.im.abs());
            }
        }
    }
    Ok(Outcome {
        params: json!({ "point": [x.r[0], x.r[1], x.r[2], x.t] }),
        residual: worst,
        tolerance: 1e-12,
    })
}

fn expectation_two_path(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let mut rng = ctx.rng(CheckName::ExpectationTwoPath);
    let mut states = vec![ctx.state.clone()];
    for _ in 0..4 {
        states.push(random_state(&mut rng, basis.dim()));
    }
    let points: Vec<_> = (0..10).map(|_| random_point(&mut rng, basis.box_length())).collect();
    let mut worst = 0.0f64;
    for psi in &states {
        for x in &points {
            for kind in [FieldKind::E, FieldKind::B, FieldKind::A] {
                let closed = field_expectation_closed_form(basis, psi, kind, x)?;
                let matrix = field_expectation_matrix(basis, psi, kind, x)?;
                worst = worst.max(vector::max_abs(&vector::sub(&closed, &matrix)));
            }
        }
    }
    Ok(Outcome {
        params: json!({ "states": states.len(), "points": points.len(), "norm_deficit": ctx.state.norm_deficit }),
        residual: worst,
        tolerance: 1e-10,
    })
}

fn vacuum_fluctuations(ctx: &Context) -> Result<Outcome, LabError> {
    let basis = ctx.basis;
    let x = random_point(&mut ctx.rng(CheckName::VacuumFluctuations), basis.box_length());
    let sum = vacuum_e2_lattice_sum(basis);
    let matrix = vacuum_e2_matrix(basis, &x)?;
    let mean = field_expectation_matrix(basis, &vacuum(basis), FieldKind::E, &x)?;
    let residual = ((matrix - sum) / sum).abs().max(vector::max_abs(&mean));
    Ok(Outcome {
        params: json!({ "lattice_sum": sum, "matrix": matrix }),
        residual,
        tolerance: 1e-12,
    })
}
