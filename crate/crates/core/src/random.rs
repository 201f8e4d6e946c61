// SPDX-License-Identifier: Apache-2.0

//! Random states, unitaries and directions for property tests and oracles.
//!
//! Random unitaries use a uniform axis and a uniform angle in `[0, 2π)`. That
//! is not Haar measure, which none of the checks here rely on.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{axis_angle_unitary, Mat2, Mat4, Vec3};
use crate::qstate::{BellDiagonalParams, TwoQubitState};

/// Deterministic generator for trial `index` of a run seeded with `seed`.
///
/// Each trial gets its own ChaCha stream, so serial and parallel runs see the
/// same numbers.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let axis = random_unit_vector(rng);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    axis_angle_unitary(axis, angle).expect("unit axis")
}

/// Ginibre state `G G† / tr(G G†)` with standard complex normal `G`.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    loop {
        let g = Mat4::from_fn(|_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let w = g * g.adjoint();
        let tr = w.trace().re;
        if tr > 1e-12 {
            let mut rho = w.scale_re(1.0 / tr);
            // exact Hermiticity
            rho = (rho + rho.adjoint()).scale_re(0.5);
            if let Ok(s) = TwoQubitState::from_density(rho) {
                return s;
            }
        }
    }
}

/// Uniform point of the Bell tetrahedron by rejection from `[−1, 1]³`.
pub fn random_bell_params<R: Rng + ?Sized>(rng: &mut R) -> BellDiagonalParams {
    loop {
        let c: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..=1.0));
        if let Ok(p) = BellDiagonalParams::from_array(c) {
            return p;
        }
    }
}
