use std::collections::BTreeSet;

use photonfield_core::ensembles::{
    coherent_profile, expectation_grid, number_state, superposition, vacuum, vacuum_e2_cube_sum,
    CoefficientMap, FockState, GridRow,
};
use photonfield_core::fields::{
    field, observable_h, observable_p, observable_s, quadratic_h_from_fields,
    quadratic_p_from_fields, quadratic_s_from_fields, SpacetimePoint,
};
use photonfield_core::fock::{annihilation, build_basis, creation, number_operator, total_number, FockBasis};
use photonfield_core::operator::SparseOperator;

use crate::checks::{self, CheckName, Context};
use crate::error::LabError;
use crate::report::{CheckRecord, Report};
use crate::scenario::{Scenario, StateSpec};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_CUTOFFS: [u32; 4] = [1, 2, 3, 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub tolerance_scale: f64,
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            tolerance_scale: 1.0,
            seed: None,
        }
    }
}

impl RunOptions {
    fn validate(&self) -> Result<(), LabError> {
        if !(self.tolerance_scale >= 0.0 && self.tolerance_scale.is_finite()) {
            return Err(LabError::ToleranceScale(self.tolerance_scale));
        }
        Ok(())
    }
}

pub fn basis_for(scenario: &Scenario) -> Result<FockBasis, LabError> {
    Ok(build_basis(&scenario.lattice.config())?)
}

pub fn state_for(scenario: &Scenario, basis: &FockBasis) -> Result<FockState, LabError> {
    Ok(match &scenario.state {
        StateSpec::Vacuum => vacuum(basis),
        StateSpec::Number { occupancies } => number_state(basis, occupancies)?,
        StateSpec::Coherent { mode, alpha, cap } => {
            let index = basis.find_mode(mode.spec()).ok_or_else(|| LabError::Config {
                path: "state.mode".into(),
                message: "mode is not part of the lattice".into(),
            })?;
            superposition(basis, &coherent_profile(basis, index, (*alpha).into(), *cap)?)?
        }
        StateSpec::Coefficients { entries } => {
            let map = CoefficientMap::new(
                entries
                    .iter()
                    .map(|e| (e.occupancy.clone(), e.amplitude.into()))
                    .collect(),
            );
            superposition(basis, &map)?
        }
    })
}

/// Runs the selected checks (all of them when the scenario lists none).
pub fn run_verify(scenario: &Scenario, options: &RunOptions) -> Result<Report, LabError> {
    options.validate()?;
    let seed = options.seed.or(scenario.seed).unwrap_or(DEFAULT_SEED);
    let basis = basis_for(scenario)?;
    let state = state_for(scenario, &basis)?;
    let selected: BTreeSet<CheckName> = if scenario.checks.is_empty() {
        CheckName::ALL.into_iter().collect()
    } else {
        scenario.checks.iter().copied().collect()
    };
    let ctx = Context {
        basis: &basis,
        state: &state,
        seed,
    };
    let mut records = Vec::with_capacity(selected.len());
    for check in selected {
        let outcome = checks::run(check, &ctx)?;
        records.push(CheckRecord::new(
            check.as_str(),
            outcome.params,
            outcome.residual,
            outcome.tolerance * options.tolerance_scale,
        ));
    }
    Ok(Report::new(scenario.name.clone(), seed, options.tolerance_scale, records))
}

pub fn run_expect(scenario: &Scenario) -> Result<Vec<GridRow>, LabError> {
    let grid = scenario.grid.as_ref().ok_or(LabError::MissingSection("grid"))?;
    let basis = basis_for(scenario)?;
    let state = state_for(scenario, &basis)?;
    Ok(expectation_grid(&basis, &state, grid.field.into(), &grid.points())?)
}

/// `(cutoff, ⟨0|E²|0⟩)` for every momentum in the cube `max |n_i| ≤ cutoff`
/// with both helicities. Only the box length and units of the lattice are used.
pub fn run_vacuum_scan(scenario: &Scenario) -> Result<Vec<(u32, f64)>, LabError> {
    let cutoffs = scenario
        .vacuum_scan
        .as_ref()
        .map(|s| s.cutoffs.clone())
        .unwrap_or_else(|| DEFAULT_CUTOFFS.to_vec());
    if cutoffs.is_empty() || cutoffs[0] == 0 || cutoffs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::Config {
            path: "vacuum_scan.cutoffs".into(),
            message: "cutoffs must be positive and strictly increasing".into(),
        });
    }
    let lattice = &scenario.lattice;
    Ok(cutoffs
        .into_iter()
        .map(|k| (k, vacuum_e2_cube_sum(lattice.box_length, &lattice.units(), k)))
        .collect())
}

pub const OPERATOR_NAMES: &str = "H, N, P_x|y|z, S_x|y|z, quadratic_H, quadratic_P_x|y|z, \
quadratic_S_x|y|z, E_x|y|z, B_x|y|z, A_x|y|z, a[m], adag[m], N[m]";

fn axis(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        _ => None,
    }
}

fn mode_index(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_prefix('[')?.strip_suffix(']')?.parse().ok()
}

/// Builds a named operator. Field and quadratic operators are evaluated at
/// the scenario's dump point (origin when absent).
pub fn named_operator(scenario: &Scenario, basis: &FockBasis, name: &str) -> Result<SparseOperator, LabError> {
    let point = scenario
        .dump
        .as_ref()
        .and_then(|d| d.point)
        .map(|p| SpacetimePoint::new([p[0], p[1], p[2]], p[3]))
        .unwrap_or(SpacetimePoint::ORIGIN);
    let unknown = || LabError::UnknownOperator(name.to_string());
    if let Some(m) = mode_index(name, "adag") {
        return Ok(creation(basis, m)?);
    }
    if let Some(m) = mode_index(name, "a") {
        return Ok(annihilation(basis, m)?);
    }
    if let Some(m) = mode_index(name, "N") {
        return Ok(number_operator(basis, m)?);
    }
    match name {
        "H" => return Ok(observable_h(basis)),
        "N" => return Ok(total_number(basis)),
        "quadratic_H" => return Ok(quadratic_h_from_fields(basis, point.t)?),
        _ => {}
    }
    let (head, tail) = name.rsplit_once('_').ok_or_else(unknown)?;
    let j = axis(tail).ok_or_else(unknown)?;
    let [x, y, z] = match head {
        "P" => observable_p(basis),
        "S" => observable_s(basis),
        "quadratic_P" => quadratic_p_from_fields(basis, point.t)?,
        "quadratic_S" => quadratic_s_from_fields(basis, point.t)?,
        "E" => field(photonfield_core::fields::FieldKind::E, basis, &point),
        "B" => field(photonfield_core::fields::FieldKind::B, basis, &point),
        "A" => field(photonfield_core::fields::FieldKind::A, basis, &point),
        _ => return Err(unknown()),
    };
    Ok([x, y, z].into_iter().nth(j).expect("axis below 3"))
}
