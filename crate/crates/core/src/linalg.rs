// SPDX-License-Identifier: Apache-2.0

#![allow(clippy::needless_range_loop)]

//! Exact small dense linear algebra.
//!
//! Everything here is fixed-size: complex 2×2 and 4×4 matrices for operators
//! and density matrices, real 3-vectors and 3×3 matrices for Bloch vectors,
//! correlation matrices and rotations. Eigenproblems are solved with cyclic
//! Jacobi sweeps, real for symmetric 3×3 and unitary two-sided for Hermitian
//! complex matrices.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// (relative to the matrix norm when that exceeds one).
const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 50;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix of fixed dimension `N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<const N: usize>(pub [[Complex64; N]; N]);

pub type Mat2 = CMat<2>;
pub type Mat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        CMat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: [[f64; N]; N], im: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex64::new(re[i][j], im[i][j]))
    }

    pub fn from_real(re: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex64::new(re[i][j], 0.0))
    }

    pub fn diag_real(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = Complex64::new(d[i], 0.0);
        }
        m
    }

    /// `|v⟩⟨v|` for a (not necessarily normalised) column vector.
    pub fn outer(v: &[Complex64; N]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    /// `self · other · self†`
    pub fn conjugate(&self, other: &Self) -> Self {
        *self * *other * self.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entry of `|H − H†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Squared Hilbert–Schmidt norm `tr(A†A)`.
    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn real_parts(&self) -> [[f64; N]; N] {
        let mut out = [[0.0; N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.0[i][j].re;
            }
        }
        out
    }

    pub fn imag_parts(&self) -> [[f64; N]; N] {
        let mut out = [[0.0; N]; N];
        for i in 0..N {
            for j in 0..N {
                out[i][j] = self.0[i][j].im;
            }
        }
        out
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

/// Pauli matrix `σ_k`; index 0 is the identity, 1..=3 are σ₁, σ₂, σ₃.
pub fn pauli(k: usize) -> Mat2 {
    match k {
        0 => Mat2::identity(),
        1 => CMat([[ZERO, ONE], [ONE, ZERO]]),
        2 => CMat([[ZERO, -I], [I, ZERO]]),
        3 => CMat([[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {k} out of range 0..=3"),
    }
}

/// Single-qubit operator `½(I + r·σ)` for a real Bloch vector.
pub fn bloch_to_density(r: Vec3) -> Mat2 {
    CMat([
        [
            Complex64::new(0.5 * (1.0 + r.z), 0.0),
            Complex64::new(0.5 * r.x, -0.5 * r.y),
        ],
        [
            Complex64::new(0.5 * r.x, 0.5 * r.y),
            Complex64::new(0.5 * (1.0 - r.z), 0.0),
        ],
    ])
}

/// Real Bloch components `r_k = Re tr(σ_k ρ)` of a single-qubit operator.
pub fn density_to_bloch(rho: &Mat2) -> Vec3 {
    Vec3::new(
        2.0 * rho.0[1][0].re,
        2.0 * rho.0[1][0].im,
        (rho.0[0][0] - rho.0[1][1]).re,
    )
}

/// Kronecker product of two 2×2 matrices; block `(i, j)` is `A_ij · B`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// Real 3-vector (Bloch vectors, translations, axes). Serialized as `[x, y, z]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub const fn zero() -> Self {
        Vec3::new(0.0, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Unit vector along `self`, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > f64::MIN_POSITIVE && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn max_abs_diff(self, o: Vec3) -> f64 {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(self) -> Vec3 {
        let (ax, ay, az) = (self.x.abs(), self.y.abs(), self.z.abs());
        let helper = if ax <= ay && ax <= az {
            Vec3::new(1.0, 0.0, 0.0)
        } else if ay <= az {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        self.cross(helper)
            .normalized()
            .expect("cross product with a non-parallel axis is nonzero")
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::from_array(a)
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        v.to_array()
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        match i {
            0 => &mut self.x,
            1 => &mut self.y,
            2 => &mut self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Real 3×3 matrix, row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub fn zeros() -> Self {
        Mat3([[0.0; 3]; 3])
    }

    pub fn identity() -> Self {
        Mat3::diag([1.0, 1.0, 1.0])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Mat3::zeros();
        for i in 0..3 {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_cols(c0: Vec3, c1: Vec3, c2: Vec3) -> Self {
        Mat3([[c0.x, c1.x, c2.x], [c0.y, c1.y, c2.y], [c0.z, c1.z, c2.z]])
    }

    /// `u vᵀ`
    pub fn outer(u: Vec3, v: Vec3) -> Self {
        let mut m = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec3 {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |a, x| a.max(x.abs()))
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        (*self - *o).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// `RᵀR = I` and `det R = +1` within `tol`.
    pub fn is_rotation(&self, tol: f64) -> bool {
        (self.transpose() * *self).max_abs_diff(&Mat3::identity()) <= tol
            && (self.det() - 1.0).abs() <= tol
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, rhs: Mat3) -> Mat3 {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, rhs: Mat3) -> Mat3 {
        self + rhs.scale(-1.0)
    }
}

/// Eigen-decomposition of a real symmetric 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymEigen3 {
    /// Eigenvalues in descending order.
    pub values: [f64; 3],
    /// Orthogonal matrix whose columns are the matching eigenvectors.
    pub vectors: Mat3,
}

/// Eigenvalues and eigenvectors of a symmetric 3×3 matrix by cyclic Jacobi.
pub fn sym3_eigs(m: &Mat3, tol: f64) -> Result<SymEigen3> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let asym = m.max_abs_diff(&m.transpose());
    if asym > tol {
        return Err(Error::NotSymmetric(asym));
    }
    let sym = (*m + m.transpose()).scale(0.5);
    let (values, vectors) = jacobi_real(sym.0);

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut out = SymEigen3 {
        values: [0.0; 3],
        vectors: Mat3::zeros(),
    };
    for (dst, &src) in order.iter().enumerate() {
        out.values[dst] = values[src];
        for row in 0..3 {
            out.vectors.0[row][dst] = vectors[row][src];
        }
    }
    Ok(out)
}

fn jacobi_rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    (c, t * c)
}

fn jacobi_real<const N: usize>(mut a: [[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let scale = a
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a[p][q] * a[p][q])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                if a[p][q] == 0.0 {
                    continue;
                }
                let (c, s) = jacobi_rotation(a[p][p], a[q][q], a[p][q]);
                for row in a.iter_mut() {
                    let (akp, akq) = (row[p], row[q]);
                    row[p] = c * akp - s * akq;
                    row[q] = s * akp + c * akq;
                }
                for k in 0..N {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut values = [0.0; N];
    for (i, val) in values.iter_mut().enumerate() {
        *val = a[i][i];
    }
    (values, v)
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues in descending order.
    pub values: [f64; N],
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMat<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn column(&self, j: usize) -> [Complex64; N] {
        std::array::from_fn(|i| self.vectors.0[i][j])
    }
}

/// Hermitian eigenproblem by complex cyclic Jacobi.
///
/// Each step first removes the phase of the pivot with a diagonal unitary and
/// then applies a real plane rotation, so the accumulated transformation stays
/// unitary.
pub fn hermitian_eigen<const N: usize>(h: &CMat<N>, tol: f64) -> Result<HermitianEigen<N>> {
    if !h.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = h.hermiticity_defect();
    if defect > tol {
        return Err(Error::NotHermitian(defect));
    }
    let mut a = (*h + h.adjoint()).scale_re(0.5);
    let mut v = CMat::<N>::identity();
    let scale = a.frobenius_sq().sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|p| (p + 1..N).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a.0[p][q].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let z = a.0[p][q];
                let mag = z.norm();
                if mag == 0.0 {
                    continue;
                }
                // column q times e^{-iφ}, row q times e^{iφ}
                let phase = z / mag;
                let phase_conj = phase.conj();
                for k in 0..N {
                    a.0[k][q] *= phase_conj;
                    v.0[k][q] *= phase_conj;
                }
                for k in 0..N {
                    a.0[q][k] *= phase;
                }
                let (c, s) = jacobi_rotation(a.0[p][p].re, a.0[q][q].re, mag);
                for k in 0..N {
                    let (akp, akq) = (a.0[k][p], a.0[k][q]);
                    a.0[k][p] = akp * c - akq * s;
                    a.0[k][q] = akp * s + akq * c;
                }
                for k in 0..N {
                    let (apk, aqk) = (a.0[p][k], a.0[q][k]);
                    a.0[p][k] = apk * c - aqk * s;
                    a.0[q][k] = apk * s + aqk * c;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
                for k in 0..N {
                    let (vkp, vkq) = (v.0[k][p], v.0[k][q]);
                    v.0[k][p] = vkp * c - vkq * s;
                    v.0[k][q] = vkp * s + vkq * c;
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a.0[j][j].re.total_cmp(&a.0[i][i].re));
    let values = std::array::from_fn(|i| a.0[order[i]][order[i]].re);
    let vectors = CMat::from_fn(|row, col| v.0[row][order[col]]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues<const N: usize>(h: &CMat<N>, tol: f64) -> Result<[f64; N]> {
    hermitian_eigen(h, tol).map(|e| e.values)
}

/// `true` iff every eigenvalue of the Hermitian matrix is `≥ −tol`.
pub fn psd_check<const N: usize>(h: &CMat<N>, tol: f64) -> Result<bool> {
    let values = hermitian_eigenvalues(h, tol)?;
    Ok(values[N - 1] >= -tol)
}

/// Proper rotation by `angle` radians about a unit `axis` (Rodrigues).
pub fn rotation_axis_angle(axis: Vec3, angle: f64) -> Result<Mat3> {
    let n = axis.norm();
    if !(n.is_finite() && angle.is_finite()) || (n - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidAxis(n));
    }
    let (s, c) = angle.sin_cos();
    let k = Mat3([
        [0.0, -axis.z, axis.y],
        [axis.z, 0.0, -axis.x],
        [-axis.y, axis.x, 0.0],
    ]);
    Ok(Mat3::identity() + k.scale(s) + (k * k).scale(1.0 - c))
}

/// Bloch-sphere rotation induced by a qubit unitary:
/// `R_ij = ½ tr(σ_i U σ_j U†)`.
pub fn unitary_to_rotation(u: &Mat2) -> Result<Mat3> {
    if !u.is_finite() {
        return Err(Error::NonFinite);
    }
    let defect = u.unitarity_defect();
    if defect > DEFAULT_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let u_dag = u.adjoint();
    let mut r = Mat3::zeros();
    for j in 0..3 {
        let image = *u * pauli(j + 1) * u_dag;
        for i in 0..3 {
            r.0[i][j] = 0.5 * (pauli(i + 1) * image).trace().re;
        }
    }
    Ok(r)
}

/// A qubit unitary implementing the rotation `r` on Bloch vectors (defined up
/// to a global sign).
pub fn rotation_to_unitary(r: &Mat3) -> Result<Mat2> {
    if !r.is_rotation(1e-9) {
        return Err(Error::NotRotation);
    }
    let [w, x, y, z] = rotation_quaternion(r);
    // U = w·I − i(x σ₁ + y σ₂ + z σ₃)
    Ok(CMat([
        [Complex64::new(w, -z), Complex64::new(-y, -x)],
        [Complex64::new(y, -x), Complex64::new(w, z)],
    ]))
}

/// Unit quaternion `(w, x, y, z)` of a proper rotation (Shepperd's method).
fn rotation_quaternion(r: &Mat3) -> [f64; 4] {
    let m = &r.0;
    let tr = r.trace();
    let q = if tr >= m[0][0] && tr >= m[1][1] && tr >= m[2][2] {
        let s = (1.0 + tr).sqrt() * 2.0;
        [
            0.25 * s,
            (m[2][1] - m[1][2]) / s,
            (m[0][2] - m[2][0]) / s,
            (m[1][0] - m[0][1]) / s,
        ]
    } else if m[0][0] >= m[1][1] && m[0][0] >= m[2][2] {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
        [
            (m[2][1] - m[1][2]) / s,
            0.25 * s,
            (m[0][1] + m[1][0]) / s,
            (m[0][2] + m[2][0]) / s,
        ]
    } else if m[1][1] >= m[2][2] {
        let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
        [
            (m[0][2] - m[2][0]) / s,
            (m[0][1] + m[1][0]) / s,
            0.25 * s,
            (m[1][2] + m[2][1]) / s,
        ]
    } else {
        let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
        [
            (m[1][0] - m[0][1]) / s,
            (m[0][2] + m[2][0]) / s,
            (m[1][2] + m[2][1]) / s,
            0.25 * s,
        ]
    };
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.map(|x| x / n)
}

/// `exp(−iθ n·σ / 2)` for a unit axis `n`.
pub fn axis_angle_unitary(axis: Vec3, angle: f64) -> Result<Mat2> {
    let n = axis.norm();
    if !(n.is_finite() && angle.is_finite()) || (n - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidAxis(n));
    }
    let (s, c) = (0.5 * angle).sin_cos();
    let mut u = Mat2::identity().scale_re(c);
    for k in 0..3 {
        u = u + pauli(k + 1).scale(Complex64::new(0.0, -s * axis[k]));
    }
    Ok(u)
}
