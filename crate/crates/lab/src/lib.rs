//! Scenario-driven runner for the photon field lattice: verification
//! reports, expectation grids, vacuum scans and operator export.

pub mod checks;
pub mod error;
pub mod export;
pub mod report;
pub mod run;
pub mod scenario;
pub mod tables;

pub use error::LabError;
pub use report::{CheckRecord, Report};
pub use run::{run_expect, run_vacuum_scan, run_verify, RunOptions};
pub use scenario::Scenario;
