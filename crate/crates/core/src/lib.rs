//! Exact simulation of kernel-based binary classifiers built on the
//! Hadamard test and the swap test, with measurement statistics, shot
//! budgeting, Pauli-noise analysis and interference-angle optimality
//! checks.

mod error;

pub mod circuits;
pub mod dataset;
pub mod kernels;
pub mod moments;
pub mod noise;
pub mod optim;
pub mod qstate;
pub mod sampling;

pub use error::{Error, Result};
