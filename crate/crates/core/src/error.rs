// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by state, channel and analysis constructors.
///
/// Every variant names the invariant that was violated so that front ends can
/// report it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (max deviation of U†U from I is {0:e})")]
    NotUnitary(f64),

    #[error("rotation axis must be a unit vector (norm {0})")]
    InvalidAxis(f64),

    #[error("matrix is not a proper rotation")]
    NotRotation,

    #[error("density matrix trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPositive(f64),

    #[error(
        "Bell-diagonal point ({c1}, {c2}, {c3}) lies outside the tetrahedron \
         (Bell-basis eigenvalue #{index} = {value:e})"
    )]
    OutsideTetrahedron {
        c1: f64,
        c2: f64,
        c3: f64,
        index: usize,
        value: f64,
    },

    #[error("Kraus operators are not trace preserving (max deviation of ΣE†E from I is {0:e})")]
    NotTracePreserving(f64),

    #[error("map is not completely positive (smallest Choi eigenvalue {0:e})")]
    NotCompletelyPositive(f64),

    #[error("channel has no Kraus representation")]
    MissingKraus,

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("requires |c3| <= max(|c1|, |c2|), got max(|c1|, |c2|) = {c_max}, c3 = {c3}")]
    OutsideBranchDomain { c_max: f64, c3: f64 },

    #[error("no branch crossing: max(|c1|, |c2|) is zero")]
    DegenerateCrossing,

    #[error("q = {q} outside the branch domain [{q1}, 1]")]
    OutsideDerivativeDomain { q: f64, q1: f64 },

    #[error(
        "Bell-diagonal state ({0}, {1}, {2}) is not enhancible by symmetric amplitude damping"
    )]
    NotEnhancible(f64, f64, f64),

    #[error("measure ordering violated: d_g = {d_g} < f_rsp = {f_rsp}")]
    OrderingViolated { f_rsp: f64, d_g: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
