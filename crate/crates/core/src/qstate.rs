// SPDX-License-Identifier: Apache-2.0

//! Two-qubit density matrices and their Pauli (Bloch) decomposition
//!
//! ```text
//! ρ = ¼ [ I⊗I + a·σ⊗I + I⊗b·σ + Σ_kl E_kl σ_k⊗σ_l ]
//! ```
//!
//! A [`TwoQubitState`] is validated once at construction and carries its
//! decomposition, which every measure reads instead of the raw matrix.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, kron, pauli, unitary_to_rotation, Mat2, Mat3, Mat4, Vec3, DEFAULT_TOL,
};

/// Slack on Bell-basis eigenvalues when testing tetrahedron membership.
pub const TETRAHEDRON_TOL: f64 = 1e-12;

/// Local Bloch vectors and correlation matrix of a two-qubit operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliDecomposition {
    /// Alice's Bloch vector, `a_k = tr(ρ σ_k⊗I)`.
    pub a: Vec3,
    /// Bob's Bloch vector, `b_l = tr(ρ I⊗σ_l)`.
    pub b: Vec3,
    /// Correlation matrix, `E_kl = tr(ρ σ_k⊗σ_l)`.
    pub e: Mat3,
}

impl PauliDecomposition {
    pub fn new(a: Vec3, b: Vec3, e: Mat3) -> Self {
        PauliDecomposition { a, b, e }
    }

    /// Operator assembled from the Pauli expansion, without validation.
    pub fn to_matrix(&self) -> Mat4 {
        let mut rho = Mat4::identity();
        for k in 0..3 {
            let sk = pauli(k + 1);
            rho = rho + kron(&sk, &pauli(0)).scale_re(self.a[k]);
            rho = rho + kron(&pauli(0), &sk).scale_re(self.b[k]);
            for l in 0..3 {
                let ekl = self.e.0[k][l];
                if ekl != 0.0 {
                    rho = rho + kron(&sk, &pauli(l + 1)).scale_re(ekl);
                }
            }
        }
        rho.scale_re(0.25)
    }

    pub fn max_abs_diff(&self, other: &PauliDecomposition) -> f64 {
        self.a
            .max_abs_diff(other.a)
            .max(self.b.max_abs_diff(other.b))
            .max(self.e.max_abs_diff(&other.e))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.e.is_finite()
    }
}

/// Coefficients `(c₁, c₂, c₃)` of a Bell-diagonal state
/// `¼(I + Σ c_i σ_i⊗σ_i)`, guaranteed to lie in the Bell tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellDiagonalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        if !(c1.is_finite() && c2.is_finite() && c3.is_finite()) {
            return Err(Error::NonFinite);
        }
        let eig = bell_eigenvalues(c1, c2, c3);
        if let Some((index, &value)) = eig.iter().enumerate().find(|(_, &v)| v < -TETRAHEDRON_TOL) {
            return Err(Error::OutsideTetrahedron {
                c1,
                c2,
                c3,
                index,
                value,
            });
        }
        Ok(BellDiagonalParams { c1, c2, c3 })
    }

    pub fn from_array(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// `max(|c₁|, |c₂|)`
    pub fn c_max(&self) -> f64 {
        self.c1.abs().max(self.c2.abs())
    }

    /// Weights of the four Bell states.
    pub fn eigenvalues(&self) -> [f64; 4] {
        bell_eigenvalues(self.c1, self.c2, self.c3)
    }
}

impl<'de> Deserialize<'de> for BellDiagonalParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = <[f64; 3]>::deserialize(d)?;
        BellDiagonalParams::from_array(c).map_err(serde::de::Error::custom)
    }
}

impl FromStr for BellDiagonalParams {
    type Err = Error;

    /// Parses `c1,c2,c3`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("`{}`: {e}", t.trim())))
            })
            .collect::<Result<_>>()?;
        match parts[..] {
            [c1, c2, c3] => BellDiagonalParams::new(c1, c2, c3),
            _ => Err(Error::Parse(format!(
                "expected three comma-separated coefficients, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for BellDiagonalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

/// The four Bell-basis eigenvalues of `¼(I + Σ c_i σ_i⊗σ_i)`.
pub fn bell_eigenvalues(c1: f64, c2: f64, c3: f64) -> [f64; 4] {
    [
        (1.0 - c1 - c2 - c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
    ]
}

/// Whether `(c₁, c₂, c₃)` lies in the Bell tetrahedron.
pub fn in_tetrahedron(c1: f64, c2: f64, c3: f64) -> bool {
    bell_eigenvalues(c1, c2, c3)
        .iter()
        .all(|&v| v >= -TETRAHEDRON_TOL)
}

/// A validated two-qubit density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    rho: Mat4,
    decomposition: PauliDecomposition,
}

impl TwoQubitState {
    /// Validates `rho` (Hermitian, unit trace, PSD) and decomposes it.
    pub fn from_density(rho: Mat4) -> Result<Self> {
        let decomposition = decompose(&rho)?;
        Ok(TwoQubitState { rho, decomposition })
    }

    /// `|ψ⟩⟨ψ|` for a normalised pure state in the basis |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn from_pure(psi: [Complex64; 4]) -> Result<Self> {
        Self::from_density(Mat4::outer(&psi))
    }

    pub fn maximally_mixed() -> Self {
        bell_diagonal(BellDiagonalParams {
            c1: 0.0,
            c2: 0.0,
            c3: 0.0,
        })
    }

    /// `|Ψ⁻⟩ = (|01⟩ − |10⟩)/√2`
    pub fn singlet() -> Self {
        bell_diagonal(BellDiagonalParams {
            c1: -1.0,
            c2: -1.0,
            c3: -1.0,
        })
    }

    pub fn rho(&self) -> &Mat4 {
        &self.rho
    }

    pub fn decomposition(&self) -> &PauliDecomposition {
        &self.decomposition
    }

    pub fn a(&self) -> Vec3 {
        self.decomposition.a
    }

    pub fn b(&self) -> Vec3 {
        self.decomposition.b
    }

    pub fn correlation(&self) -> &Mat3 {
        &self.decomposition.e
    }

    /// `tr ρ²`
    pub fn purity(&self) -> f64 {
        // ρ is Hermitian, so tr ρ² = Σ |ρ_ij|²
        self.rho.frobenius_sq()
    }

    /// `(U₁⊗U₂) ρ (U₁⊗U₂)†`
    pub fn local_unitary(&self, u1: &Mat2, u2: &Mat2) -> Result<Self> {
        local_unitary(self, u1, u2)
    }
}

fn validate_density(rho: &Mat4) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = rho.hermiticity_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DEFAULT_TOL || tr.im.abs() > DEFAULT_TOL {
        return Err(Error::TraceNotOne(tr.re));
    }
    let min_eig = hermitian_eigenvalues(rho, DEFAULT_TOL)?[3];
    if min_eig < -DEFAULT_TOL {
        return Err(Error::NotPositive(min_eig));
    }
    Ok(())
}

/// Pauli decomposition of a density matrix.
///
/// Fails unless `rho` is Hermitian, has unit trace and is positive
/// semidefinite (all within 1e-10).
pub fn decompose(rho: &Mat4) -> Result<PauliDecomposition> {
    validate_density(rho)?;
    let coeff = |k: usize, l: usize| -> Result<f64> {
        let z = (*rho * kron(&pauli(k), &pauli(l))).trace();
        if z.im.abs() > DEFAULT_TOL {
            return Err(Error::NotHermitian(z.im.abs()));
        }
        Ok(z.re)
    };
    let mut d = PauliDecomposition::new(Vec3::zero(), Vec3::zero(), Mat3::zeros());
    for k in 0..3 {
        d.a[k] = coeff(k + 1, 0)?;
        d.b[k] = coeff(0, k + 1)?;
        for l in 0..3 {
            d.e.0[k][l] = coeff(k + 1, l + 1)?;
        }
    }
    Ok(d)
}

/// Inverse of [`decompose`]; fails if the result is not a density matrix.
pub fn compose(d: &PauliDecomposition) -> Result<TwoQubitState> {
    if !d.is_finite() {
        return Err(Error::NonFinite);
    }
    let rho = d.to_matrix();
    let min_eig = hermitian_eigenvalues(&rho, DEFAULT_TOL)?[3];
    if min_eig < -DEFAULT_TOL {
        return Err(Error::NotPositive(min_eig));
    }
    Ok(TwoQubitState {
        rho,
        decomposition: *d,
    })
}

/// The Bell-diagonal state `¼(I + Σ c_i σ_i⊗σ_i)`.
pub fn bell_diagonal(c: BellDiagonalParams) -> TwoQubitState {
    let decomposition =
        PauliDecomposition::new(Vec3::zero(), Vec3::zero(), Mat3::diag([c.c1, c.c2, c.c3]));
    TwoQubitState {
        rho: decomposition.to_matrix(),
        decomposition,
    }
}

/// Applies `U₁⊗U₂`. The decomposition transforms as `a → R₁a`, `b → R₂b`,
/// `E → R₁ E R₂ᵀ`.
pub fn local_unitary(s: &TwoQubitState, u1: &Mat2, u2: &Mat2) -> Result<TwoQubitState> {
    let r1 = unitary_to_rotation(u1)?;
    let r2 = unitary_to_rotation(u2)?;
    let u = kron(u1, u2);
    let rho = u.conjugate(&s.rho);
    let d = s.decomposition;
    let decomposition = PauliDecomposition::new(r1 * d.a, r2 * d.b, r1 * d.e * r2.transpose());
    Ok(TwoQubitState { rho, decomposition })
}

/// Serialized state description.
///
/// `{"type":"bell_diagonal","c":[c1,c2,c3]}` or
/// `{"type":"dense","re":[[..4x4..]],"im":[[..4x4..]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum StateSpec {
    BellDiagonal {
        c: [f64; 3],
    },
    Dense {
        re: [[f64; 4]; 4],
        im: [[f64; 4]; 4],
    },
}

impl StateSpec {
    pub fn build(&self) -> Result<TwoQubitState> {
        match self {
            StateSpec::BellDiagonal { c } => Ok(bell_diagonal(BellDiagonalParams::from_array(*c)?)),
            StateSpec::Dense { re, im } => TwoQubitState::from_density(Mat4::from_parts(*re, *im)),
        }
    }

    pub fn dense(state: &TwoQubitState) -> Self {
        StateSpec::Dense {
            re: state.rho().real_parts(),
            im: state.rho().imag_parts(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn singlet_projector() -> Mat4 {
        let h = FRAC_1_SQRT_2;
        Mat4::outer(&[c(0.0), c(h), c(-h), c(0.0)])
    }

    #[test]
    fn decompose_maximally_mixed() {
        let d = decompose(&Mat4::identity().scale_re(0.25)).unwrap();
        assert_eq!(d.a, Vec3::zero());
        assert_eq!(d.b, Vec3::zero());
        assert_eq!(d.e, Mat3::zeros());
    }

    #[test]
    fn decompose_singlet() {
        let d = decompose(&singlet_projector()).unwrap();
        assert!(d.a.norm() < 1e-15 && d.b.norm() < 1e-15);
        assert!(d.e.max_abs_diff(&Mat3::diag([-1.0, -1.0, -1.0])) < 1e-15);
    }

    #[test]
    fn decompose_classical_mixture() {
        let rho = Mat4::diag_real([0.5, 0.0, 0.0, 0.5]);
        let d = decompose(&rho).unwrap();
        assert_eq!(d.a, Vec3::zero());
        assert_eq!(d.b, Vec3::zero());
        assert_eq!(d.e, Mat3::diag([0.0, 0.0, 1.0]));
    }

    #[test]
    fn decompose_rejects_invalid() {
        let rho = Mat4::identity().scale_re(0.3);
        assert!(matches!(decompose(&rho), Err(Error::TraceNotOne(_))));
        let mut rho = Mat4::identity().scale_re(0.25);
        rho.0[0][1] = Complex64::new(0.0, 0.1);
        assert!(matches!(decompose(&rho), Err(Error::NotHermitian(_))));
        let rho = Mat4::diag_real([1.2, -0.2, 0.0, 0.0]);
        assert!(matches!(decompose(&rho), Err(Error::NotPositive(_))));
    }

    #[test]
    fn compose_examples() {
        let zero = PauliDecomposition::new(Vec3::zero(), Vec3::zero(), Mat3::zeros());
        let s = compose(&zero).unwrap();
        assert_eq!(*s.rho(), Mat4::identity().scale_re(0.25));

        let singlet = PauliDecomposition::new(Vec3::zero(), Vec3::zero(), Mat3::diag([-1.0; 3]));
        assert!(
            compose(&singlet)
                .unwrap()
                .rho()
                .max_abs_diff(&singlet_projector())
                < 1e-15
        );

        // (c, p) = ((0.5, 0, −0.5), 0.3): a damped Bell-diagonal state
        let (p, q) = (0.3, 0.7);
        let d = PauliDecomposition::new(
            Vec3::new(0.0, 0.0, p),
            Vec3::new(0.0, 0.0, p),
            Mat3::diag([q * 0.5, 0.0, -0.5 * q * q + p * p]),
        );
        assert!(compose(&d).is_ok());
    }

    #[test]
    fn compose_rejects_non_state() {
        let d = PauliDecomposition::new(Vec3::zero(), Vec3::zero(), Mat3::diag([1.0; 3]));
        assert!(matches!(compose(&d), Err(Error::NotPositive(_))));
    }

    #[test]
    fn bell_diagonal_examples() {
        let mixed = bell_diagonal(BellDiagonalParams::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(*mixed.rho(), Mat4::identity().scale_re(0.25));
        let singlet = bell_diagonal(BellDiagonalParams::new(-1.0, -1.0, -1.0).unwrap());
        assert!(singlet.rho().max_abs_diff(&singlet_projector()) < 1e-15);
        assert!(BellDiagonalParams::new(0.5, 0.0, -0.5).is_ok());
    }

    #[test]
    fn bell_diagonal_rejects_outside_with_eigenvalue() {
        match BellDiagonalParams::new(1.0, 1.0, 1.0) {
            Err(Error::OutsideTetrahedron { index, value, .. }) => {
                assert_eq!(index, 0);
                assert!((value + 0.5).abs() < 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bell_params_parse() {
        let c: BellDiagonalParams = "0.5, 0,-0.5".parse().unwrap();
        assert_eq!(c.as_array(), [0.5, 0.0, -0.5]);
        assert!("1,2".parse::<BellDiagonalParams>().is_err());
        assert!("a,b,c".parse::<BellDiagonalParams>().is_err());
        assert!("1,1,1".parse::<BellDiagonalParams>().is_err());
    }

    #[test]
    fn local_unitary_identity_and_flip() {
        let s = bell_diagonal(BellDiagonalParams::new(0.5, 0.0, -0.5).unwrap());
        let same = s
            .local_unitary(&Mat2::identity(), &Mat2::identity())
            .unwrap();
        assert!(same.rho().max_abs_diff(s.rho()) < 1e-15);

        // σ₁ on Alice maps σ₂, σ₃ to their negatives: E → diag(0.5, 0, 0.5)
        let flipped = s.local_unitary(&pauli(1), &Mat2::identity()).unwrap();
        assert!(
            flipped
                .correlation()
                .max_abs_diff(&Mat3::diag([0.5, 0.0, 0.5]))
                < 1e-15
        );
        let direct = decompose(flipped.rho()).unwrap();
        assert!(direct.max_abs_diff(flipped.decomposition()) < 1e-12);
    }

    #[test]
    fn local_unitary_rejects_non_unitary() {
        let s = TwoQubitState::singlet();
        let m = Mat2::identity().scale_re(2.0);
        assert!(matches!(
            s.local_unitary(&m, &Mat2::identity()),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn state_spec_json() {
        let spec: StateSpec =
            serde_json::from_str(r#"{"type":"bell_diagonal","c":[0.5,0,-0.5]}"#).unwrap();
        let s = spec.build().unwrap();
        assert_eq!(s.correlation().0[2][2], -0.5);

        let dense = StateSpec::dense(&s);
        let text = serde_json::to_string(&dense).unwrap();
        assert!(text.starts_with(r#"{"type":"dense","re":"#));
        let back: StateSpec = serde_json::from_str(&text).unwrap();
        assert!(back.build().unwrap().rho().max_abs_diff(s.rho()) < 1e-15);

        let bad: StateSpec =
            serde_json::from_str(r#"{"type":"bell_diagonal","c":[1,1,1]}"#).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn purity_bounds() {
        assert!((TwoQubitState::maximally_mixed().purity() - 0.25).abs() < 1e-15);
        assert!((TwoQubitState::singlet().purity() - 1.0).abs() < 1e-15);
    }
}
