use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("direction is not a unit vector: |k| = {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("tensor is not antisymmetric (max |f + fᵀ| = {residual:e})")]
    NotAntisymmetric { residual: f64 },

    #[error("boost speed |β| = {speed} must be below 1 − 1e-9")]
    Superluminal { speed: f64 },

    #[error("angular frequency must be positive, got {0}")]
    NonPositiveFrequency(f64),

    #[error("helicity must be +1 or -1, got {0}")]
    InvalidHelicity(i32),

    #[error("invalid lattice configuration: {0}")]
    InvalidLattice(String),

    #[error(
        "Fock space dimension (n_max + 1)^modes = {required} exceeds the guard of {limit}; \
         reduce the mode count or n_max"
    )]
    DimensionGuard { required: u128, limit: usize },

    #[error("mode index {index} out of range for a basis with {modes} modes")]
    UnknownMode { index: usize, modes: usize },

    #[error("operator dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("occupancy {occupancy} exceeds the cap n_max = {n_max}")]
    OccupancyOverCap { occupancy: u32, n_max: u32 },

    #[error("occupancy tuple has {got} entries, basis has {expected} modes")]
    OccupancyLength { got: usize, expected: usize },

    #[error("margin {margin} exceeds n_max = {n_max}")]
    MarginTooLarge { margin: u32, n_max: u32 },

    #[error(
        "completeness requirement violated: lattice momentum {n:?} lacks helicity {missing}; \
         the commutator closed form needs both helicities for every momentum"
    )]
    IncompleteHelicities { n: [i32; 3], missing: i32 },

    #[error("mode set is not symmetric under n → -n: {n:?} has no partner")]
    AsymmetricModeSet { n: [i32; 3] },

    #[error("field kind {0} is not allowed here")]
    UnsupportedFieldKind(&'static str),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),
}

pub type Result<T> = core::result::Result<T, Error>;
