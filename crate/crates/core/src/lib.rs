// SPDX-License-Identifier: Apache-2.0

//! Remote-state-preparation fidelity and geometric quantum discord of
//! two-qubit states, local qubit channels, and the enhancement of the
//! fidelity by symmetric local amplitude damping.
//!
//! Module map:
//! - [`linalg`]: fixed-size complex and real matrices, Jacobi eigensolvers
//! - [`qstate`]: density matrices, Pauli decomposition, Bell-diagonal family
//! - [`qchannel`]: Kraus/affine channels, Choi test, SVD factorization
//! - [`measures`]: closed-form RSP fidelity and normalized geometric discord
//! - [`enhancement`]: amplitude damping of Bell-diagonal states, criterion,
//!   optimal damping, traces and scans
//! - [`oracles`]: brute-force verifiers for the closed forms

pub mod enhancement;
pub mod error;
pub mod format;
pub mod linalg;
pub mod measures;
pub mod oracles;
pub mod qchannel;
pub mod qstate;
pub mod random;

pub use error::{Error, Result};
pub use linalg::{Mat2, Mat3, Mat4, Vec3};
pub use measures::{gmqd, measure_pair, rsp_fidelity, MeasureReport};
pub use qchannel::{AffineRep, ChannelFactorization, ChannelSpec, QubitChannel};
pub use qstate::{BellDiagonalParams, PauliDecomposition, StateSpec, TwoQubitState};
