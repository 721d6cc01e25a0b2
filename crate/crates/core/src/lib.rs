//! Operator laboratory for the free electromagnetic field assembled from an
//! ensemble of photons.
//!
//! Photons live on a periodic-box momentum lattice with a truncated Fock space
//! per mode. Electric, magnetic and vector-potential operators are linear in
//! the ladder operators; energy, momentum and spin are quadratic. Every
//! identity among them is checked here as a finite matrix statement.

#![cfg_attr(not(feature = "std"), no_std)]
// Index loops mirror the tensor notation; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod classical;
pub mod ensembles;
pub mod error;
pub mod fields;
pub mod fock;
pub mod operator;
pub mod polarization;
pub mod spin;
pub mod units;
pub mod vector;

pub use error::{Error, Result};
pub use num_complex::Complex64;
