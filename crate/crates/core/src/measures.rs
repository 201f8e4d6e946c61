// SPDX-License-Identifier: Apache-2.0

//! Closed-form RSP fidelity and normalized geometric discord.
//!
//! Both read only the cached [`PauliDecomposition`]:
//!
//! ```text
//! F_RSP = ½ (E₂² + E₃²)                     E₁² ≥ E₂² ≥ E₃² = spec(EᵀE)
//! D_G   = ½ (|a|² + tr EEᵀ − λ_max)         λ_max = max spec(aaᵀ + EEᵀ)
//! ```
//!
//! `D_G ≥ F_RSP` for every state, with equality e.g. on Bell-diagonal states.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{sym3_eigs, Mat3};
use crate::qstate::{PauliDecomposition, TwoQubitState};

/// Slack allowed on `d_g ≥ f_rsp` before it is reported as a bug.
pub const ORDERING_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub f_rsp: f64,
    pub d_g: f64,
    /// Largest eigenvalue of `aaᵀ + EEᵀ`.
    pub lambda_max: f64,
    /// Eigenvalues of `EᵀE`, descending.
    pub e_sq: [f64; 3],
}

fn symmetric_spectrum(m: &Mat3) -> [f64; 3] {
    sym3_eigs(m, 1e-9)
        .expect("Gram matrices are symmetric")
        .values
        .map(|v| v.max(0.0))
}

/// Eigenvalues of `EᵀE`, descending.
pub fn correlation_spectrum(d: &PauliDecomposition) -> [f64; 3] {
    symmetric_spectrum(&(d.e.transpose() * d.e))
}

pub fn rsp_fidelity_of(d: &PauliDecomposition) -> f64 {
    let e_sq = correlation_spectrum(d);
    (0.5 * (e_sq[1] + e_sq[2])).clamp(0.0, 1.0)
}

pub fn gmqd_of(d: &PauliDecomposition) -> f64 {
    gmqd_parts(d).0
}

fn gmqd_parts(d: &PauliDecomposition) -> (f64, f64) {
    let m = Mat3::outer(d.a, d.a) + d.e * d.e.transpose();
    let lambda_max = symmetric_spectrum(&m)[0];
    let value = 0.5 * (d.a.norm_sq() + d.e.frobenius_sq() - lambda_max);
    (value.clamp(0.0, 1.0), lambda_max)
}

/// RSP fidelity `½(E₂² + E₃²)`.
pub fn rsp_fidelity(s: &TwoQubitState) -> f64 {
    rsp_fidelity_of(s.decomposition())
}

/// Normalized geometric discord (measured on Alice's side).
pub fn gmqd(s: &TwoQubitState) -> f64 {
    gmqd_of(s.decomposition())
}

/// Both measures with their intermediate spectra.
///
/// Fails only if `d_g < f_rsp − 1e-9`, which indicates a numerical bug.
pub fn measure_pair(s: &TwoQubitState) -> Result<MeasureReport> {
    let d = s.decomposition();
    let e_sq = correlation_spectrum(d);
    let f_rsp = (0.5 * (e_sq[1] + e_sq[2])).clamp(0.0, 1.0);
    let (d_g, lambda_max) = gmqd_parts(d);
    if d_g < f_rsp - ORDERING_TOL {
        return Err(Error::OrderingViolated { f_rsp, d_g });
    }
    Ok(MeasureReport {
        f_rsp,
        d_g,
        lambda_max,
        e_sq,
    })
}
