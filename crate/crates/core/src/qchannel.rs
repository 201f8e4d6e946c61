// SPDX-License-Identifier: Apache-2.0

//! Single-qubit channels.
//!
//! A [`QubitChannel`] always carries its affine Bloch-ball action
//! `r ↦ t + T r` and, when built from Kraus operators, the Kraus set itself.
//! Channels defined only by an affine map are allowed as data (for example to
//! study factorizations or non-CP maps); anything that acts on two-qubit states
//! needs Kraus form, see [`QubitChannel::to_kraus_form`].

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    bloch_to_density, density_to_bloch, hermitian_eigen, kron, pauli, rotation_to_unitary,
    unitary_to_rotation, CMat, Mat2, Mat3, Mat4, Vec3, DEFAULT_TOL,
};
use crate::qstate::TwoQubitState;
use crate::random::random_unitary;

/// Tolerance for the Choi positivity test.
pub const CHOI_TOL: f64 = 1e-9;

/// Affine action of a qubit channel on Bloch vectors, `r ↦ t + T r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineRep {
    /// Translation `t`; zero exactly for unital channels.
    pub translation: Vec3,
    /// Linear part `T`.
    pub linear: Mat3,
}

impl AffineRep {
    pub fn identity() -> Self {
        AffineRep {
            translation: Vec3::zero(),
            linear: Mat3::identity(),
        }
    }

    pub fn apply(&self, r: Vec3) -> Vec3 {
        self.translation + self.linear * r
    }

    pub fn max_abs_diff(&self, other: &AffineRep) -> f64 {
        self.translation
            .max_abs_diff(other.translation)
            .max(self.linear.max_abs_diff(&other.linear))
    }

    /// Image of an arbitrary operator `X = ½(x₀ I + x·σ)` under the linear
    /// extension of the map: `½(x₀ I + (x₀ t + T x)·σ)`.
    fn apply_operator(&self, x: &Mat2) -> Mat2 {
        let x0 = x.trace();
        let xs: [Complex64; 3] = std::array::from_fn(|k| (pauli(k + 1) * *x).trace());
        let mut out = Mat2::identity().scale(x0);
        for i in 0..3 {
            let mut yi = x0 * self.translation[i];
            for (j, xj) in xs.iter().enumerate() {
                yi += xj * self.linear.0[i][j];
            }
            out = out + pauli(i + 1).scale(yi);
        }
        out.scale_re(0.5)
    }
}

/// A single-qubit quantum operation.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitChannel {
    kraus: Vec<Mat2>,
    affine: AffineRep,
}

impl QubitChannel {
    /// Channel from a trace-preserving Kraus set.
    pub fn from_kraus(kraus: Vec<Mat2>) -> Result<Self> {
        let affine = kraus_to_affine(&kraus)?;
        Ok(QubitChannel { kraus, affine })
    }

    /// Affine-only map. No positivity is required here; use
    /// [`QubitChannel::is_completely_positive`] to check.
    pub fn from_affine(affine: AffineRep) -> Self {
        QubitChannel {
            kraus: Vec::new(),
            affine,
        }
    }

    pub fn identity() -> Self {
        QubitChannel {
            kraus: vec![Mat2::identity()],
            affine: AffineRep::identity(),
        }
    }

    /// `ρ ↦ U ρ U†`
    pub fn unitary(u: Mat2) -> Result<Self> {
        let r = unitary_to_rotation(&u)?;
        Ok(QubitChannel {
            kraus: vec![u],
            affine: AffineRep {
                translation: Vec3::zero(),
                linear: r,
            },
        })
    }

    pub fn kraus(&self) -> &[Mat2] {
        &self.kraus
    }

    pub fn has_kraus(&self) -> bool {
        !self.kraus.is_empty()
    }

    pub fn affine(&self) -> &AffineRep {
        &self.affine
    }

    /// Linear extension of the channel to arbitrary 2×2 operators.
    pub fn apply_operator(&self, x: &Mat2) -> Mat2 {
        if self.has_kraus() {
            self.kraus
                .iter()
                .fold(Mat2::zeros(), |acc, k| acc + k.conjugate(x))
        } else {
            self.affine.apply_operator(x)
        }
    }

    /// `Φ(ρ)` for a single-qubit density matrix.
    pub fn apply_single(&self, rho: &Mat2) -> Result<Mat2> {
        validate_qubit_density(rho)?;
        Ok(self.apply_operator(rho))
    }

    /// `Σ_ij |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)`
    pub fn choi(&self) -> Mat4 {
        let mut c = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = Mat2::zeros();
                unit.0[i][j] = Complex64::new(1.0, 0.0);
                let block = self.apply_operator(&unit);
                for a in 0..2 {
                    for b in 0..2 {
                        c.0[2 * i + a][2 * j + b] = block.0[a][b];
                    }
                }
            }
        }
        c
    }

    pub fn min_choi_eigenvalue(&self) -> f64 {
        hermitian_eigen(&self.choi(), 1e-9)
            .map(|e| e.values[3])
            .unwrap_or(f64::NEG_INFINITY)
    }

    pub fn is_completely_positive(&self, tol: f64) -> bool {
        self.min_choi_eigenvalue() >= -tol
    }

    /// `Φ(I) = I`, i.e. `|t| ≤ tol`.
    pub fn is_unital(&self, tol: f64) -> bool {
        is_unital(self, tol)
    }

    /// The same channel with a Kraus set, recovered from the Choi
    /// eigendecomposition when only the affine form is known.
    pub fn to_kraus_form(&self) -> Result<Self> {
        if self.has_kraus() {
            return Ok(self.clone());
        }
        let eig = hermitian_eigen(&self.choi(), 1e-9)?;
        if eig.values[3] < -CHOI_TOL {
            return Err(Error::NotCompletelyPositive(eig.values[3]));
        }
        let mut kraus = Vec::new();
        for (k, &lambda) in eig.values.iter().enumerate() {
            if lambda <= 1e-14 {
                continue;
            }
            let v = eig.column(k);
            let s = lambda.sqrt();
            // C[(i,a),(j,b)] = Σ_k K_k[a][i] conj(K_k[b][j])
            kraus.push(Mat2::from_fn(|a, i| v[2 * i + a] * s));
        }
        let ch = QubitChannel::from_kraus(kraus)?;
        Ok(QubitChannel {
            kraus: ch.kraus,
            affine: self.affine,
        })
    }
}

fn validate_qubit_density(rho: &Mat2) -> Result<()> {
    if !rho.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = rho.hermiticity_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::TraceNotOne(tr.re));
    }
    let r = density_to_bloch(rho).norm();
    if r > 1.0 + DEFAULT_TOL {
        // eigenvalues are (1 ± |r|)/2
        return Err(Error::NotPositive((1.0 - r) / 2.0));
    }
    Ok(())
}

/// Affine representation of a Kraus set:
/// `t_i = ½ tr(σ_i Φ(I))`, `T_ij = ½ tr(σ_i Φ(σ_j))`.
pub fn kraus_to_affine(kraus: &[Mat2]) -> Result<AffineRep> {
    if kraus.is_empty() {
        return Err(Error::MissingKraus);
    }
    if kraus.iter().any(|k| !k.is_finite()) {
        return Err(Error::NonFinite);
    }
    let sum = kraus
        .iter()
        .fold(Mat2::zeros(), |acc, k| acc + k.adjoint() * *k);
    let defect = sum.max_abs_diff(&Mat2::identity());
    if defect > DEFAULT_TOL {
        return Err(Error::NotTracePreserving(defect));
    }
    let apply = |x: &Mat2| {
        kraus
            .iter()
            .fold(Mat2::zeros(), |acc, k| acc + k.conjugate(x))
    };
    let image_of_identity = apply(&Mat2::identity());
    let mut affine = AffineRep {
        translation: Vec3::zero(),
        linear: Mat3::zeros(),
    };
    for i in 0..3 {
        affine.translation[i] = 0.5 * (pauli(i + 1) * image_of_identity).trace().re;
    }
    for j in 0..3 {
        let image = apply(&pauli(j + 1));
        for i in 0..3 {
            affine.linear.0[i][j] = 0.5 * (pauli(i + 1) * image).trace().re;
        }
    }
    Ok(affine)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Amplitude damping with decay probability `p`:
/// `E₀ = [[1, 0], [0, √(1−p)]]`, `E₁ = [[0, √p], [0, 0]]`.
pub fn amplitude_damping(p: f64) -> Result<QubitChannel> {
    check_probability(p)?;
    let q = 1.0 - p;
    let e0 = CMat([[re(1.0), re(0.0)], [re(0.0), re(q.sqrt())]]);
    let e1 = CMat([[re(0.0), re(p.sqrt())], [re(0.0), re(0.0)]]);
    QubitChannel::from_kraus(vec![e0, e1])
}

/// Pauli channel `ρ ↦ Σ_k w_k σ_k ρ σ_k` with `T = diag(λ)`.
///
/// `λ` must satisfy `1 ± λ₁ ± λ₂ ± λ₃ ≥ 0` with an even number of minus signs.
pub fn pauli_channel(lambda: [f64; 3]) -> Result<QubitChannel> {
    let [l1, l2, l3] = lambda;
    let w = [
        (1.0 + l1 + l2 + l3) / 4.0,
        (1.0 + l1 - l2 - l3) / 4.0,
        (1.0 - l1 + l2 - l3) / 4.0,
        (1.0 - l1 - l2 + l3) / 4.0,
    ];
    if let Some(&bad) = w.iter().find(|&&x| x < -1e-12) {
        return Err(Error::NotCompletelyPositive(bad));
    }
    let kraus = w
        .iter()
        .enumerate()
        .filter(|(_, &wk)| wk > 0.0)
        .map(|(k, &wk)| pauli(k).scale_re(wk.sqrt()))
        .collect();
    QubitChannel::from_kraus(kraus)
}

/// Depolarizing channel with `T = (1−p) I`:
/// Kraus `{√(1−3p/4) I, √(p/4) σ₁, √(p/4) σ₂, √(p/4) σ₃}`.
pub fn depolarizing(p: f64) -> Result<QubitChannel> {
    check_probability(p)?;
    let mut kraus = vec![Mat2::identity().scale_re((1.0 - 0.75 * p).sqrt())];
    kraus.extend((1..=3).map(|k| pauli(k).scale_re((0.25 * p).sqrt())));
    QubitChannel::from_kraus(kraus)
}

fn pauli_flip(k: usize, p: f64) -> Result<QubitChannel> {
    check_probability(p)?;
    QubitChannel::from_kraus(vec![
        Mat2::identity().scale_re((1.0 - p).sqrt()),
        pauli(k).scale_re(p.sqrt()),
    ])
}

/// `{√(1−p) I, √p σ₁}`
pub fn bit_flip(p: f64) -> Result<QubitChannel> {
    pauli_flip(1, p)
}

/// `{√(1−p) I, √p σ₃}`
pub fn phase_flip(p: f64) -> Result<QubitChannel> {
    pauli_flip(3, p)
}

/// `{√(1−p) I, √p σ₂}`
pub fn bit_phase_flip(p: f64) -> Result<QubitChannel> {
    pauli_flip(2, p)
}

/// Built-in unital channel by name: `depolarizing`, `bit_flip`, `phase_flip`
/// or `bit_phase_flip`.
pub fn unital_builtin(name: &str, p: f64) -> Result<QubitChannel> {
    match name {
        "depolarizing" => depolarizing(p),
        "bit_flip" => bit_flip(p),
        "phase_flip" => phase_flip(p),
        "bit_phase_flip" => bit_phase_flip(p),
        other => Err(Error::UnknownChannel(other.to_string())),
    }
}

/// The map `|0⟩⟨0| ↦ |0⟩⟨0|`, `|1⟩⟨1| ↦ |+⟩⟨+|`, Kraus `{|0⟩⟨0|, |+⟩⟨1|}`.
///
/// Nonunital; it turns the zero-discord state `½(|00⟩⟨00| + |11⟩⟨11|)` into
/// one with nonzero discord when applied to the first qubit.
pub fn discord_raising() -> QubitChannel {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let k0 = CMat([[re(1.0), re(0.0)], [re(0.0), re(0.0)]]);
    let k1 = CMat([[re(0.0), re(h)], [re(0.0), re(h)]]);
    QubitChannel::from_kraus(vec![k0, k1]).expect("discord-raising Kraus set is trace preserving")
}

pub fn is_unital(ch: &QubitChannel, tol: f64) -> bool {
    ch.affine.translation.norm() <= tol
}

pub fn choi(ch: &QubitChannel) -> Mat4 {
    ch.choi()
}

/// `T = R₁ (sign·diag(D)) R₂ᵀ` with proper rotations `R₁`, `R₂`, `D` descending
/// and nonnegative, plus the translation `d` of the reduced map
/// `Φ_D : r ↦ d + sign·D r`.
///
/// The channel factorizes as `Φ(ρ) = U Φ_D(V ρ V†) U†`, where `U` rotates Bloch
/// vectors by `R₁` and `V` by `R₂ᵀ`; consistency of the translations then
/// forces `d = R₁ᵀ t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelFactorization {
    pub r1: Mat3,
    pub r2: Mat3,
    pub d_diag: [f64; 3],
    pub sign: f64,
    pub d: Vec3,
}

impl ChannelFactorization {
    /// `R₁ (sign·D) R₂ᵀ`
    pub fn linear(&self) -> Mat3 {
        self.r1 * self.signed_diag() * self.r2.transpose()
    }

    pub fn signed_diag(&self) -> Mat3 {
        Mat3::diag(self.d_diag.map(|x| self.sign * x))
    }

    /// The reduced map `Φ_D` as an affine representation.
    pub fn reduced(&self) -> AffineRep {
        AffineRep {
            translation: self.d,
            linear: self.signed_diag(),
        }
    }

    /// Unitary `U` implementing `R₁`.
    pub fn u(&self) -> Mat2 {
        rotation_to_unitary(&self.r1).expect("R1 is a proper rotation")
    }

    /// Unitary `V` implementing `R₂ᵀ`.
    pub fn v(&self) -> Mat2 {
        rotation_to_unitary(&self.r2.transpose()).expect("R2 is a proper rotation")
    }

    /// `U Φ_D(V ρ V†) U†`
    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        let inner = self.v().conjugate(rho);
        let reduced = self.reduced().apply_operator(&inner);
        self.u().conjugate(&reduced)
    }

    /// Largest deviation between `ch` and the factorized form over the
    /// 26-direction probe set of pure states.
    pub fn max_probe_deviation(&self, ch: &QubitChannel) -> f64 {
        bloch_probe_directions()
            .into_iter()
            .map(|r| {
                let rho = bloch_to_density(r);
                self.apply(&rho).max_abs_diff(&ch.apply_operator(&rho))
            })
            .fold(0.0, f64::max)
    }
}

/// The 26 unit directions through faces, edges and corners of a cube.
pub fn bloch_probe_directions() -> Vec<Vec3> {
    let mut out = Vec::with_capacity(26);
    for x in -1..=1 {
        for y in -1..=1 {
            for z in -1..=1 {
                if (x, y, z) != (0, 0, 0) {
                    let v = Vec3::new(x as f64, y as f64, z as f64);
                    out.push(v.normalized().expect("nonzero"));
                }
            }
        }
    }
    out
}

/// Singular-value factorization of the channel's linear part.
pub fn factorize(ch: &QubitChannel) -> ChannelFactorization {
    let t = ch.affine.linear;
    let eig = crate::linalg::sym3_eigs(&(t.transpose() * t), 1e-9)
        .expect("TᵀT is symmetric by construction");
    let mut v = eig.vectors;
    if v.det() < 0.0 {
        for row in 0..3 {
            v.0[row][2] = -v.0[row][2];
        }
    }
    let b: [Vec3; 3] = std::array::from_fn(|i| t * v.col(i));

    let u1 = b[0].normalized().unwrap_or(Vec3::new(1.0, 0.0, 0.0));
    let u2 = (b[1] - u1 * u1.dot(b[1]))
        .normalized()
        .filter(|_| b[1].norm() > 1e-13 * (1.0 + b[0].norm()))
        .unwrap_or_else(|| u1.any_orthogonal());
    let u3 = u1.cross(u2);
    let u = Mat3::from_cols(u1, u2, u3);

    let mut d_diag = [u1.dot(b[0]), u2.dot(b[1]), u3.dot(b[2])];
    let (r1, sign) = if d_diag[2] < 0.0 {
        d_diag[2] = -d_diag[2];
        (u * Mat3::diag([-1.0, -1.0, 1.0]), -1.0)
    } else {
        (u, 1.0)
    };
    ChannelFactorization {
        r1,
        r2: v,
        d_diag,
        sign,
        d: r1.transpose() * ch.affine.translation,
    }
}

/// `Φ(ρ)` for a single-qubit density matrix.
pub fn apply_single(ch: &QubitChannel, rho: &Mat2) -> Result<Mat2> {
    ch.apply_single(rho)
}

/// `(Φ_A ⊗ Φ_B)(ρ) = Σ_ij (A_i⊗B_j) ρ (A_i⊗B_j)†`
pub fn apply_local(
    ch_a: &QubitChannel,
    ch_b: &QubitChannel,
    s: &TwoQubitState,
) -> Result<TwoQubitState> {
    if !ch_a.has_kraus() || !ch_b.has_kraus() {
        return Err(Error::MissingKraus);
    }
    let mut out = Mat4::zeros();
    for ka in ch_a.kraus() {
        for kb in ch_b.kraus() {
            out = out + kron(ka, kb).conjugate(s.rho());
        }
    }
    TwoQubitState::from_density(out)
}

/// Random unital channel `U·Pauli(λ)·V` with `λ` drawn uniformly from the
/// CP tetrahedron by rejection.
pub fn sample_unital_channel<R: Rng + ?Sized>(rng: &mut R) -> QubitChannel {
    loop {
        let lambda: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        let Ok(core) = pauli_channel(lambda) else {
            continue;
        };
        let u = random_unitary(rng);
        let v = random_unitary(rng);
        let kraus: Vec<Mat2> = core.kraus().iter().map(|k| u * *k * v).collect();
        let ch = QubitChannel::from_kraus(kraus).expect("unitary dressing preserves trace");
        if ch.is_completely_positive(CHOI_TOL) {
            return ch;
        }
    }
}

/// Independent random unital channels for Alice and Bob.
pub fn sample_unital_local<R: Rng + ?Sized>(rng: &mut R) -> (QubitChannel, QubitChannel) {
    let a = sample_unital_channel(rng);
    let b = sample_unital_channel(rng);
    (a, b)
}

/// Serialized 2×2 complex matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub re: [[f64; 2]; 2],
    pub im: [[f64; 2]; 2],
}

/// Serialized channel description, e.g. `{"type":"amplitude_damping","p":0.3}`
/// or `{"type":"kraus","ops":[{"re":[[..]],"im":[[..]]},...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ChannelSpec {
    Identity,
    AmplitudeDamping { p: f64 },
    Depolarizing { p: f64 },
    BitFlip { p: f64 },
    PhaseFlip { p: f64 },
    BitPhaseFlip { p: f64 },
    DiscordRaising,
    Kraus { ops: Vec<MatrixSpec> },
}

impl ChannelSpec {
    pub fn build(&self) -> Result<QubitChannel> {
        match self {
            ChannelSpec::Identity => Ok(QubitChannel::identity()),
            ChannelSpec::AmplitudeDamping { p } => amplitude_damping(*p),
            ChannelSpec::Depolarizing { p } => depolarizing(*p),
            ChannelSpec::BitFlip { p } => bit_flip(*p),
            ChannelSpec::PhaseFlip { p } => phase_flip(*p),
            ChannelSpec::BitPhaseFlip { p } => bit_phase_flip(*p),
            ChannelSpec::DiscordRaising => Ok(discord_raising()),
            ChannelSpec::Kraus { ops } => {
                QubitChannel::from_kraus(ops.iter().map(|m| Mat2::from_parts(m.re, m.im)).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rotation_axis_angle, Vec3};
    use crate::qstate::{bell_diagonal, BellDiagonalParams, TwoQubitState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ket_density(r: Vec3) -> Mat2 {
        bloch_to_density(r)
    }

    #[test]
    fn identity_affine() {
        let a = kraus_to_affine(&[Mat2::identity()]).unwrap();
        assert_eq!(a, AffineRep::identity());
    }

    #[test]
    fn amplitude_damping_affine() {
        let p = 0.3;
        let q: f64 = 0.7;
        let a = *amplitude_damping(p).unwrap().affine();
        assert!(a.translation.max_abs_diff(Vec3::new(0.0, 0.0, p)) < 1e-15);
        assert!(a.linear.max_abs_diff(&Mat3::diag([q.sqrt(), q.sqrt(), q])) < 1e-15);
    }

    #[test]
    fn amplitude_damping_limits() {
        let id = amplitude_damping(0.0).unwrap();
        assert!(id.affine().max_abs_diff(&AffineRep::identity()) < 1e-15);
        let full = amplitude_damping(1.0).unwrap();
        let ground = ket_density(Vec3::new(0.0, 0.0, 1.0));
        for r in bloch_probe_directions() {
            let out = full.apply_single(&ket_density(r)).unwrap();
            assert!(out.max_abs_diff(&ground) < 1e-15);
        }
        let half = amplitude_damping(0.5).unwrap();
        let excited = ket_density(Vec3::new(0.0, 0.0, -1.0));
        let out = half.apply_single(&excited).unwrap();
        assert!(out.max_abs_diff(&Mat2::diag_real([0.5, 0.5])) < 1e-15);
        assert!(matches!(
            amplitude_damping(1.5),
            Err(Error::InvalidProbability(_))
        ));
        assert!(matches!(
            amplitude_damping(-0.1),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn unital_builtin_affines() {
        let p = 0.3;
        let cases = [
            ("depolarizing", [1.0 - p, 1.0 - p, 1.0 - p]),
            ("bit_flip", [1.0, 1.0 - 2.0 * p, 1.0 - 2.0 * p]),
            ("phase_flip", [1.0 - 2.0 * p, 1.0 - 2.0 * p, 1.0]),
            ("bit_phase_flip", [1.0 - 2.0 * p, 1.0, 1.0 - 2.0 * p]),
        ];
        for (name, diag) in cases {
            let ch = unital_builtin(name, p).unwrap();
            assert!(
                ch.affine().linear.max_abs_diff(&Mat3::diag(diag)) < 1e-15,
                "{name}"
            );
            assert!(ch.is_unital(1e-15));
            let half = Mat2::identity().scale_re(0.5);
            assert!(ch.apply_single(&half).unwrap().max_abs_diff(&half) < 1e-15);
        }
        assert!(matches!(
            unital_builtin("teleport", 0.1),
            Err(Error::UnknownChannel(_))
        ));
    }

    #[test]
    fn discord_raising_mapping() {
        let ch = discord_raising();
        let zero = ket_density(Vec3::new(0.0, 0.0, 1.0));
        let one = ket_density(Vec3::new(0.0, 0.0, -1.0));
        let plus = ket_density(Vec3::new(1.0, 0.0, 0.0));
        assert!(ch.apply_single(&zero).unwrap().max_abs_diff(&zero) < 1e-15);
        assert!(ch.apply_single(&one).unwrap().max_abs_diff(&plus) < 1e-15);
        let half = Mat2::identity().scale_re(0.5);
        let out = ch.apply_single(&half).unwrap();
        let want = (zero + plus).scale_re(0.5);
        assert!(out.max_abs_diff(&want) < 1e-15);
        assert!(out.max_abs_diff(&half) > 0.1);
        assert!(!ch.is_unital(1e-10));
        assert!(ch.is_completely_positive(CHOI_TOL));
    }

    #[test]
    fn unitality_examples() {
        assert!(phase_flip(0.3).unwrap().is_unital(1e-12));
        let ad = amplitude_damping(0.3).unwrap();
        assert!(!ad.is_unital(1e-12));
        assert!(QubitChannel::identity().is_unital(0.0));
    }

    #[test]
    fn choi_examples() {
        let c = choi(&QubitChannel::identity());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = [re(h), re(0.0), re(0.0), re(h)];
        assert!(c.max_abs_diff(&Mat4::outer(&phi_plus).scale_re(2.0)) < 1e-15);

        let e = hermitian_eigen(&choi(&amplitude_damping(1.0).unwrap()), 1e-12).unwrap();
        for (got, want) in e.values.iter().zip([1.0, 1.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }

        let transpose = QubitChannel::from_affine(AffineRep {
            translation: Vec3::zero(),
            linear: Mat3::diag([1.0, 1.0, -1.0]),
        });
        assert!(!transpose.is_completely_positive(CHOI_TOL));
        assert!((transpose.choi().trace().re - 2.0).abs() < 1e-15);
        assert!(matches!(
            transpose.to_kraus_form(),
            Err(Error::NotCompletelyPositive(_))
        ));
    }

    #[test]
    fn affine_only_channel_matches_kraus_route() {
        let ad = amplitude_damping(0.37).unwrap();
        let affine_only = QubitChannel::from_affine(*ad.affine());
        assert!(affine_only.choi().max_abs_diff(&ad.choi()) < 1e-14);
        let rebuilt = affine_only.to_kraus_form().unwrap();
        assert!(rebuilt.has_kraus());
        assert!(
            kraus_to_affine(rebuilt.kraus())
                .unwrap()
                .max_abs_diff(ad.affine())
                < 1e-12
        );
    }

    #[test]
    fn kraus_rejects_non_trace_preserving() {
        // E₁ = [[1, √p], [0, 0]] breaks trace preservation
        let p: f64 = 0.3;
        let e0 = CMat([[re(1.0), re(0.0)], [re(0.0), re((1.0 - p).sqrt())]]);
        let e1 = CMat([[re(1.0), re(p.sqrt())], [re(0.0), re(0.0)]]);
        assert!(matches!(
            QubitChannel::from_kraus(vec![e0, e1]),
            Err(Error::NotTracePreserving(_))
        ));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&phase_flip(0.0).unwrap());
        assert_eq!(f.d_diag, [1.0, 1.0, 1.0]);

        let ch = QubitChannel::from_affine(AffineRep {
            translation: Vec3::zero(),
            linear: Mat3::diag([0.9, 0.5, 0.2]),
        });
        let f = factorize(&ch);
        assert!(f.r1.max_abs_diff(&Mat3::identity()) < 1e-15);
        assert!(f.r2.max_abs_diff(&Mat3::identity()) < 1e-15);
        assert_eq!(f.sign, 1.0);
        assert_eq!(f.d, Vec3::zero());

        let axis = Vec3::new(0.0, 0.6, 0.8);
        let u = crate::linalg::axis_angle_unitary(axis, 1.1).unwrap();
        let f = factorize(&QubitChannel::unitary(u).unwrap());
        for x in f.d_diag {
            assert!((x - 1.0).abs() < 1e-12);
        }
        assert_eq!(f.sign, 1.0);
        assert!(f.d.norm() < 1e-15);

        let p = 0.4;
        let q: f64 = 0.6;
        let ad = amplitude_damping(p).unwrap();
        let f = factorize(&ad);
        let want = [q.sqrt(), q.sqrt(), q];
        for (got, w) in f.d_diag.iter().zip(want) {
            assert!((got - w).abs() < 1e-14);
        }
        assert!(f.r1.max_abs_diff(&Mat3::identity()) < 1e-14);
        assert!(f.r2.max_abs_diff(&Mat3::identity()) < 1e-14);
        assert!(f.d.max_abs_diff(Vec3::new(0.0, 0.0, p)) < 1e-14);
        assert!(f.max_probe_deviation(&ad) < 1e-12);
    }

    #[test]
    fn factorize_negative_determinant() {
        // unital, not CP, but factorization only looks at T
        let r = rotation_axis_angle(Vec3::new(0.0, 0.0, 1.0), 0.7).unwrap();
        let t = r * Mat3::diag([0.5, -0.3, 0.2]);
        let ch = QubitChannel::from_affine(AffineRep {
            translation: Vec3::new(0.1, -0.2, 0.05),
            linear: t,
        });
        let f = factorize(&ch);
        assert_eq!(f.sign, -1.0);
        assert!(f.r1.is_rotation(1e-12) && f.r2.is_rotation(1e-12));
        assert!(f.linear().max_abs_diff(&t) < 1e-12);
        assert!(f.d_diag[0] >= f.d_diag[1] && f.d_diag[1] >= f.d_diag[2] && f.d_diag[2] >= 0.0);
        assert!(f.max_probe_deviation(&ch) < 1e-12);
    }

    #[test]
    fn apply_single_tracks_affine() {
        let ch = amplitude_damping(0.25).unwrap();
        let r = Vec3::new(0.3, -0.4, 0.5);
        let out = ch.apply_single(&bloch_to_density(r)).unwrap();
        assert!(density_to_bloch(&out).max_abs_diff(ch.affine().apply(r)) < 1e-15);
        let bad = Mat2::diag_real([1.5, -0.5]);
        assert!(matches!(ch.apply_single(&bad), Err(Error::NotPositive(_))));
    }

    #[test]
    fn apply_local_identity_and_discord_example() {
        let s = bell_diagonal(BellDiagonalParams::new(0.5, 0.0, -0.5).unwrap());
        let id = QubitChannel::identity();
        let out = apply_local(&id, &id, &s).unwrap();
        assert!(out.rho().max_abs_diff(s.rho()) < 1e-15);

        let classical = TwoQubitState::from_density(Mat4::diag_real([0.5, 0.0, 0.0, 0.5])).unwrap();
        let out = apply_local(&discord_raising(), &id, &classical).unwrap();
        let zero = ket_density(Vec3::new(0.0, 0.0, 1.0));
        let one = ket_density(Vec3::new(0.0, 0.0, -1.0));
        let plus = ket_density(Vec3::new(1.0, 0.0, 0.0));
        let want = (kron(&zero, &zero) + kron(&plus, &one)).scale_re(0.5);
        assert!(out.rho().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn apply_local_requires_kraus() {
        let s = TwoQubitState::singlet();
        let affine_only = QubitChannel::from_affine(AffineRep::identity());
        assert!(matches!(
            apply_local(&affine_only, &QubitChannel::identity(), &s),
            Err(Error::MissingKraus)
        ));
    }

    #[test]
    fn sampler_corners() {
        let unitary = pauli_channel([1.0, 1.0, 1.0]).unwrap();
        assert_eq!(unitary.kraus().len(), 1);
        let flip = pauli_channel([1.0, -1.0, -1.0]).unwrap();
        assert_eq!(flip.kraus().len(), 1);
        assert!(flip.kraus()[0].max_abs_diff(&pauli(1)) < 1e-15);
        assert!(pauli_channel([1.0, 1.0, -1.0]).is_err());
    }

    #[test]
    fn sampled_channels_are_unital_cptp() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b) = sample_unital_local(&mut rng);
            for ch in [a, b] {
                assert!(ch.affine().translation.norm() <= 1e-12);
                assert!(ch.is_completely_positive(CHOI_TOL));
                assert!((ch.choi().trace().re - 2.0).abs() < 1e-10);
                let sum = ch
                    .kraus()
                    .iter()
                    .fold(Mat2::zeros(), |acc, k| acc + k.adjoint() * *k);
                assert!(sum.max_abs_diff(&Mat2::identity()) < 1e-10);
            }
        }
    }

    #[test]
    fn channel_spec_json() {
        let ch: ChannelSpec =
            serde_json::from_str(r#"{"type":"amplitude_damping","p":0.3}"#).unwrap();
        assert!(!ch.build().unwrap().is_unital(1e-12));
        let ch: ChannelSpec = serde_json::from_str(r#"{"type":"discord_raising"}"#).unwrap();
        assert!(ch.build().is_ok());
        let ch: ChannelSpec = serde_json::from_str(
            r#"{"type":"kraus","ops":[{"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}]}"#,
        )
        .unwrap();
        assert_eq!(ch.build().unwrap().affine(), &AffineRep::identity());
        let bad: ChannelSpec = serde_json::from_str(r#"{"type":"bit_flip","p":2}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
