// SPDX-License-Identifier: Apache-2.0

//! Brute-force cross-checks of the closed-form measures.
//!
//! The protocol oracle simulates remote state preparation directly from the
//! density matrix: Alice measures along `α̂`, Bob's conditional states come
//! from partial traces, Bob applies a π rotation about `β̂` on one outcome,
//! and the payoff `(r·s)²` is maximized over `α̂`, averaged over targets
//! `s ⊥ β̂` and minimized over `β̂`. Nothing here reads the correlation matrix.
//!
//! The discord oracle searches classical-quantum states
//! `χ = p |e⟩⟨e| ⊗ ρ₁ + (1 − p) |e⊥⟩⟨e⊥| ⊗ ρ₂` and measures Hilbert–Schmidt
//! distances between 4×4 matrices.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enhancement;
use crate::error::{Error, Result};
use crate::linalg::{
    bloch_to_density, density_to_bloch, kron, rotation_axis_angle, Mat2, Mat3, Mat4, Vec3,
};
use crate::measures::{gmqd, rsp_fidelity};
use crate::qchannel::{
    amplitude_damping, apply_local, discord_raising, sample_unital_local, QubitChannel,
};
use crate::qstate::{bell_diagonal, BellDiagonalParams, TwoQubitState};
use crate::random::{random_state, random_unit_vector, trial_rng};

/// Protocol oracle contract at default grids.
pub const PROTOCOL_TOL: f64 = 5e-3;
/// Discord search may not undercut the closed form by more than this.
pub const GMQD_LOWER_TOL: f64 = 1e-9;
/// Discord search contract for Bell-diagonal states at default settings.
pub const GMQD_UPPER_TOL: f64 = 1e-3;
/// Largest allowed fidelity increase under local unital channels.
pub const MONOTONICITY_TOL: f64 = 1e-9;
pub const WITNESS_TOL: f64 = 1e-9;
pub const RAISING_TOL: f64 = 1e-10;

const REFINE_SHRINK: f64 = 0.2;
const REFINE_POINTS: usize = 16;
const REFINE_MAX_MOVES: usize = 32;
const GMQD_RESTARTS: usize = 6;
const GMQD_KEEP: usize = 4;
const PATTERN_MIN_STEP: f64 = 1e-11;
const PATTERN_MAX_ITERS: usize = 20_000;

/// How Bob's corrected outcomes are scored against the target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayoffConvention {
    /// Payoff of Bob's averaged post-correction state, `(Σ_ε p_ε r′_ε · s)²`.
    #[default]
    Ensemble,
    /// Average of per-outcome payoffs, `Σ_ε p_ε (r′_ε · s)²`. Agrees with the
    /// closed form only when both local Bloch vectors vanish.
    PerOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub seed: u64,
    /// Axis-grid size (correction axes `β̂`, discord axes `e`).
    pub n_beta: usize,
    /// Targets per great circle.
    pub n_target: usize,
    /// Measurement-direction grid size.
    pub n_alpha: usize,
    /// Local refinement rounds.
    pub refine_iters: usize,
    #[serde(default)]
    pub payoff: PayoffConvention,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            seed: 0x5eed,
            n_beta: 400,
            n_target: 16,
            n_alpha: 200,
            refine_iters: 4,
            payoff: PayoffConvention::Ensemble,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("n_beta", self.n_beta),
            ("n_target", self.n_target),
            ("n_alpha", self.n_alpha),
            ("refine_iters", self.refine_iters),
        ] {
            if n < 4 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be at least 4, got {n}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub estimate: f64,
    pub reference: f64,
    /// `|estimate − reference|`
    pub abs_err: f64,
    /// Correction axes, candidate states or random trials evaluated.
    pub trials: u64,
    pub seed: Option<u64>,
    pub config: Option<OracleConfig>,
    pub worst_case: String,
    pub passed: bool,
}

impl OracleReport {
    fn new(estimate: f64, reference: f64, trials: u64, worst_case: String, passed: bool) -> Self {
        OracleReport {
            estimate,
            reference,
            abs_err: (estimate - reference).abs(),
            trials,
            seed: None,
            config: None,
            worst_case,
            passed,
        }
    }

    fn with_config(mut self, cfg: OracleConfig) -> Self {
        self.seed = Some(cfg.seed);
        self.config = Some(cfg);
        self
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

fn golden_angle() -> f64 {
    PI * (3.0 - 5f64.sqrt())
}

/// `n` near-uniform unit vectors on a Fibonacci spiral, rotated by `rot`.
pub fn fibonacci_sphere(n: usize, rot: &Mat3) -> Vec<Vec3> {
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = i as f64 * golden_angle();
            *rot * Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

fn orthonormal_pair(d: Vec3) -> (Vec3, Vec3) {
    let u = d.any_orthogonal();
    (u, d.cross(u))
}

/// Golden-spiral points in the spherical cap of angular radius `radius` about `d`.
fn cap_points(d: Vec3, radius: f64) -> impl Iterator<Item = Vec3> {
    let (u, v) = orthonormal_pair(d);
    (1..=REFINE_POINTS).map(move |k| {
        let theta = radius * (k as f64 / REFINE_POINTS as f64).sqrt();
        let phi = k as f64 * golden_angle();
        d * theta.cos() + (u * phi.cos() + v * phi.sin()) * theta.sin()
    })
}

/// Mean spacing of an `n`-point grid on the sphere.
fn grid_spacing(n: usize) -> f64 {
    (4.0 * PI / n as f64).sqrt()
}

/// Refines `start` by repeatedly sampling a shrinking cap around the best
/// point; `better(new, old)` decides acceptance.
fn refine_direction(
    start: Vec3,
    start_val: f64,
    spacing: f64,
    rounds: usize,
    f: impl Fn(Vec3) -> f64,
    better: impl Fn(f64, f64) -> bool,
) -> (Vec3, f64) {
    let (mut best, mut best_val) = (start, start_val);
    let mut radius = spacing;
    for _ in 0..rounds {
        // recentre at this radius until the cap holds nothing better
        for _ in 0..REFINE_MAX_MOVES {
            let center = best;
            for cand in cap_points(center, radius) {
                let val = f(cand);
                if better(val, best_val) {
                    best = cand;
                    best_val = val;
                }
            }
            if best == center {
                break;
            }
        }
        radius *= REFINE_SHRINK;
    }
    (best, best_val)
}

fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let axis = random_unit_vector(rng);
    let angle = rng.random_range(0.0..TAU);
    rotation_axis_angle(axis, angle).expect("unit axis")
}

/// `tr_A[(X ⊗ I) ρ]`
fn partial_trace_a(x: &Mat2, rho: &Mat4) -> Mat2 {
    Mat2::from_fn(|b, bp| {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += x.0[j][i] * rho.0[2 * i + b][2 * j + bp];
            }
        }
        acc
    })
}

/// Bob's conditional outcomes `(p_ε, r_ε)` for Alice measuring along `α̂`;
/// outcomes with zero probability are dropped.
fn conditional_outcomes(rho: &Mat4, alpha: Vec3) -> Outcomes {
    [1.0, -1.0].map(|eps| {
        let proj = bloch_to_density(alpha * eps);
        let x = partial_trace_a(&proj, rho);
        let p = x.trace().re;
        (p > 1e-15).then(|| (p, density_to_bloch(&x) * (1.0 / p)))
    })
}

/// Probability and Bloch vector of each measurement outcome.
type Outcomes = [Option<(f64, Vec3)>; 2];

/// π rotation about `β̂` on a Bloch vector.
fn pi_flip(r: Vec3, beta: Vec3) -> Vec3 {
    beta * (2.0 * r.dot(beta)) - r
}

fn payoff(outcomes: &Outcomes, beta: Vec3, s: Vec3, convention: PayoffConvention) -> f64 {
    // either outcome may be the one Bob corrects
    (0..2)
        .map(|flipped| {
            let corrected = outcomes.iter().enumerate().filter_map(|(k, o)| {
                o.map(|(p, r)| (p, if k == flipped { pi_flip(r, beta) } else { r }))
            });
            match convention {
                PayoffConvention::Ensemble => {
                    let r = corrected.fold(Vec3::zero(), |acc, (p, r)| acc + r * p);
                    r.dot(s).powi(2)
                }
                PayoffConvention::PerOutcome => corrected.map(|(p, r)| p * r.dot(s).powi(2)).sum(),
            }
        })
        .fold(0.0, f64::max)
}

struct ProtocolGrid<'a> {
    rho: &'a Mat4,
    cfg: OracleConfig,
    alphas: Vec<(Vec3, Outcomes)>,
    spacing: f64,
}

impl ProtocolGrid<'_> {
    /// Best payoff for target `s` given correction axis `β̂`.
    fn best_payoff(&self, beta: Vec3, s: Vec3) -> f64 {
        let (start, start_val) = self
            .alphas
            .iter()
            .map(|(a, o)| (*a, payoff(o, beta, s, self.cfg.payoff)))
            .fold((self.alphas[0].0, f64::NEG_INFINITY), |b, c| {
                if c.1 > b.1 {
                    c
                } else {
                    b
                }
            });
        refine_direction(
            start,
            start_val,
            self.spacing,
            self.cfg.refine_iters,
            |a| payoff(&conditional_outcomes(self.rho, a), beta, s, self.cfg.payoff),
            |new, old| new > old,
        )
        .1
    }

    /// Target-averaged optimized payoff for correction axis `β̂`.
    fn averaged(&self, beta: Vec3) -> f64 {
        let (u, v) = orthonormal_pair(beta);
        let n = self.cfg.n_target;
        (0..n)
            .map(|j| {
                let t = TAU * j as f64 / n as f64;
                self.best_payoff(beta, u * t.cos() + v * t.sin())
            })
            .sum::<f64>()
            / n as f64
    }
}

/// Estimates the RSP fidelity by simulating the protocol.
pub fn protocol_fidelity_oracle(s: &TwoQubitState, cfg: OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let mut rng = trial_rng(cfg.seed, 0);
    let beta_rot = random_rotation(&mut rng);
    let alpha_rot = random_rotation(&mut rng);
    let rho = s.rho();
    let grid = ProtocolGrid {
        rho,
        cfg,
        alphas: fibonacci_sphere(cfg.n_alpha, &alpha_rot)
            .into_iter()
            .map(|a| (a, conditional_outcomes(rho, a)))
            .collect(),
        spacing: grid_spacing(cfg.n_alpha),
    };

    let betas = fibonacci_sphere(cfg.n_beta, &beta_rot);
    let values: Vec<f64> = betas.par_iter().map(|&b| grid.averaged(b)).collect();
    let (idx, &grid_min) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("n_beta >= 4");
    let refined = std::cell::Cell::new(0u64);
    let (beta, estimate) = refine_direction(
        betas[idx],
        grid_min,
        grid_spacing(cfg.n_beta),
        cfg.refine_iters,
        |b| {
            refined.set(refined.get() + 1);
            grid.averaged(b)
        },
        |new, old| new < old,
    );

    let reference = rsp_fidelity(s);
    let trials = cfg.n_beta as u64 + refined.get();
    let worst_case = format!(
        "minimizing beta = [{:.6}, {:.6}, {:.6}], grid minimum {grid_min:.9}",
        beta.x, beta.y, beta.z
    );
    let passed = (estimate - reference).abs() <= PROTOCOL_TOL;
    Ok(OracleReport::new(estimate, reference, trials, worst_case, passed).with_config(cfg))
}

/// One classical-quantum candidate: axis angles, weight, conditional Bloch vectors.
#[derive(Clone, Copy, Debug)]
struct CqParams([f64; 9]);

impl CqParams {
    fn axis(&self) -> Vec3 {
        let [theta, phi, ..] = self.0;
        Vec3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )
    }

    fn weight(&self) -> f64 {
        self.0[2]
    }

    fn bloch(&self, k: usize) -> Vec3 {
        let o = 3 + 3 * k;
        Vec3::new(self.0[o], self.0[o + 1], self.0[o + 2])
    }

    fn is_valid(&self) -> bool {
        let p = self.weight();
        self.0.iter().all(|x| x.is_finite())
            && (0.0..=1.0).contains(&p)
            && self.bloch(0).norm() <= 1.0
            && self.bloch(1).norm() <= 1.0
    }

    fn chi(&self) -> Mat4 {
        let e = self.axis();
        let p = self.weight();
        kron(&bloch_to_density(e), &bloch_to_density(self.bloch(0))).scale_re(p)
            + kron(&bloch_to_density(-e), &bloch_to_density(self.bloch(1))).scale_re(1.0 - p)
    }

    /// Best conditional states for a fixed axis: `X_k = tr_A[(Π_k ⊗ I) ρ]`.
    fn inner_optimum(rho: &Mat4, theta: f64, phi: f64) -> Self {
        let mut out = [theta, phi, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let e = CqParams(out).axis();
        let mut p = [0.0; 2];
        for (k, sign) in [1.0, -1.0].into_iter().enumerate() {
            let x = partial_trace_a(&bloch_to_density(e * sign), rho);
            p[k] = x.trace().re.max(0.0);
            if p[k] > 1e-15 {
                let r = density_to_bloch(&x) * (1.0 / p[k]);
                // clip rounding excursions outside the ball
                let r = if r.norm() > 1.0 {
                    r * (1.0 / r.norm())
                } else {
                    r
                };
                out[3 + 3 * k..6 + 3 * k].copy_from_slice(&r.to_array());
            }
        }
        out[2] = (p[0] / (p[0] + p[1])).clamp(0.0, 1.0);
        CqParams(out)
    }
}

fn to_angles(e: Vec3) -> (f64, f64) {
    (e.z.clamp(-1.0, 1.0).acos(), e.y.atan2(e.x))
}

/// `‖ρ − χ‖²_HS`, or `None` for an invalid candidate.
fn cq_distance(rho: &Mat4, c: &CqParams) -> Option<f64> {
    c.is_valid().then(|| (*rho - c.chi()).frobenius_sq())
}

/// Coordinate-wise pattern search over the given coordinates of `x`.
fn pattern_search(
    mut x: CqParams,
    coords: &[usize],
    step0: f64,
    mut objective: impl FnMut(&CqParams) -> Option<f64>,
) -> (CqParams, f64, u64) {
    let mut best = objective(&x).unwrap_or(f64::INFINITY);
    let mut step = step0;
    let mut evals = 1u64;
    for _ in 0..PATTERN_MAX_ITERS {
        if step < PATTERN_MIN_STEP {
            break;
        }
        let mut improved = false;
        for &i in coords {
            for dir in [1.0, -1.0] {
                let mut cand = x;
                cand.0[i] += dir * step;
                evals += 1;
                if let Some(val) = objective(&cand) {
                    if val < best {
                        best = val;
                        x = cand;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best, evals)
}

/// Upper-bounds the geometric discord by searching classical-quantum states.
pub fn gmqd_search_oracle(s: &TwoQubitState, cfg: OracleConfig) -> Result<OracleReport> {
    cfg.validate()?;
    let rho = s.rho();
    let mut rng = trial_rng(cfg.seed, 1);
    let rot = random_rotation(&mut rng);

    let axis_objective = |c: &CqParams| {
        let inner = CqParams::inner_optimum(rho, c.0[0], c.0[1]);
        cq_distance(rho, &inner)
    };

    let mut seeds: Vec<(f64, CqParams)> = fibonacci_sphere(cfg.n_beta, &rot)
        .into_iter()
        .map(|e| {
            let (theta, phi) = to_angles(e);
            let c = CqParams::inner_optimum(rho, theta, phi);
            (cq_distance(rho, &c).unwrap_or(f64::INFINITY), c)
        })
        .collect();
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut starts: Vec<CqParams> = seeds.iter().take(GMQD_KEEP).map(|s| s.1).collect();
    for _ in 0..GMQD_RESTARTS {
        let (theta, phi) = to_angles(random_unit_vector(&mut rng));
        let w = rng.random_range(0.0..=1.0);
        let r1 = random_unit_vector(&mut rng) * rng.random_range(0.0..1.0);
        let r2 = random_unit_vector(&mut rng) * rng.random_range(0.0..1.0);
        let mut x = [theta, phi, w, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        x[3..6].copy_from_slice(&r1.to_array());
        x[6..9].copy_from_slice(&r2.to_array());
        starts.push(CqParams(x));
    }

    let spacing = grid_spacing(cfg.n_beta);
    let results: Vec<(f64, CqParams, u64)> = starts
        .into_par_iter()
        .map(|start| {
            // axis first with optimal conditional states, then all nine coordinates
            let (axis, _, n1) = pattern_search(start, &[0, 1], spacing, axis_objective);
            let polished = CqParams::inner_optimum(rho, axis.0[0], axis.0[1]);
            let (x, val, n2) = pattern_search(polished, &[0, 1, 2, 3, 4, 5, 6, 7, 8], 0.05, |c| {
                cq_distance(rho, c)
            });
            // random starts polish their own conditional states too
            let (y, val_raw, n3) = pattern_search(start, &[0, 1, 2, 3, 4, 5, 6, 7, 8], 0.1, |c| {
                cq_distance(rho, c)
            });
            if val <= val_raw {
                (val, x, n1 + n2 + n3)
            } else {
                (val_raw, y, n1 + n2 + n3)
            }
        })
        .collect();
    let trials = cfg.n_beta as u64 + results.iter().map(|r| r.2).sum::<u64>();
    let (dist, best, _) = results
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one start");

    let estimate = 2.0 * dist;
    let reference = gmqd(s);
    let e = best.axis();
    let worst_case = format!(
        "best axis e = [{:.6}, {:.6}, {:.6}], weight {:.6}",
        e.x,
        e.y,
        e.z,
        best.weight()
    );
    let passed = estimate >= reference - GMQD_LOWER_TOL && estimate - reference <= GMQD_UPPER_TOL;
    Ok(OracleReport::new(estimate, reference, trials, worst_case, passed).with_config(cfg))
}

/// Random states under random local unital channel pairs; reports the largest
/// fidelity increase seen.
pub fn unital_monotonicity_suite(n_trials: usize, seed: u64) -> Result<OracleReport> {
    if n_trials < 1 {
        return Err(Error::InvalidArgument("n_trials must be at least 1".into()));
    }
    let outcomes: Vec<(f64, f64, f64)> = (0..n_trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let state = random_state(&mut rng);
            let (ch_a, ch_b) = sample_unital_local(&mut rng);
            let out = apply_local(&ch_a, &ch_b, &state)?;
            let before = rsp_fidelity(&state);
            let after = rsp_fidelity(&out);
            Ok((after - before, before, after))
        })
        .collect::<Result<_>>()?;
    let (worst, &(increase, before, after)) = outcomes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(b.0.cmp(&a.0)))
        .expect("n_trials >= 1");
    let worst_case = format!("trial {worst}: f_rsp {before:.12} -> {after:.12}");
    Ok(OracleReport::new(
        increase,
        0.0,
        n_trials as u64,
        worst_case,
        increase <= MONOTONICITY_TOL,
    )
    .with_seed(seed))
}

fn damped_pair(p: f64, s: &TwoQubitState) -> Result<TwoQubitState> {
    let ad = amplitude_damping(p)?;
    apply_local(&ad, &ad, s)
}

/// Symmetric amplitude damping lifts the zero-fidelity state `(−1, 0, 0)` to
/// positive fidelity.
pub fn nonunital_increase_witness() -> Result<OracleReport> {
    let c = BellDiagonalParams::new(-1.0, 0.0, 0.0)?;
    let s = bell_diagonal(c);
    let p_opt = enhancement::p_opt(c)?;

    let at = |p: f64| -> Result<(f64, f64)> {
        let out = damped_pair(p, &s)?;
        Ok((rsp_fidelity(&out), gmqd(&out)))
    };
    let (f0, d0) = (rsp_fidelity(&s), gmqd(&s));
    let (f_zero, d_zero) = at(0.0)?;
    let (f_opt, d_opt) = at(p_opt)?;
    let (f_lo, _) = at(p_opt - 0.05)?;
    let (f_hi, _) = at(p_opt + 0.05)?;

    // crossing of q c = (1 − q)² at c = 1
    let q = 2.0 / (3.0 + 5f64.sqrt());
    let reference = 0.5 * q * q;

    let checks = [
        ("f_after", (f_opt - reference).abs() <= WITNESS_TOL),
        ("d_g increases", d_opt > d0),
        (
            "p = 0 unchanged",
            (f_zero - f0).abs() <= WITNESS_TOL && (d_zero - d0).abs() <= WITNESS_TOL,
        ),
        ("local maximum", f_lo < f_opt && f_hi < f_opt),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    let worst_case = format!(
        "p_opt {p_opt:.12}: f {f0:.3e} -> {f_opt:.12}, d_g {d0:.12} -> {d_opt:.12}, \
         f(p_opt-0.05) {f_lo:.12}, f(p_opt+0.05) {f_hi:.12}{}",
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failed: {}", failed.join(", "))
        }
    );
    Ok(OracleReport::new(
        f_opt,
        reference,
        4,
        worst_case,
        failed.is_empty(),
    ))
}

/// A nonunital map on Alice's qubit creates discord but no fidelity.
pub fn discord_raising_check() -> Result<OracleReport> {
    let mut rho = Mat4::zeros();
    rho.0[0][0].re = 0.5;
    rho.0[3][3].re = 0.5;
    let s = TwoQubitState::from_density(rho)?;
    let out = apply_local(&discord_raising(), &QubitChannel::identity(), &s)?;
    let (d_before, d_after) = (gmqd(&s), gmqd(&out));
    let (f_before, f_after) = (rsp_fidelity(&s), rsp_fidelity(&out));
    let reference = 0.25;
    let passed = d_before.abs() <= RAISING_TOL
        && (d_after - reference).abs() <= RAISING_TOL
        && f_before.abs() <= RAISING_TOL
        && f_after.abs() <= RAISING_TOL;
    let worst_case =
        format!("d_g {d_before:.3e} -> {d_after:.12}, f_rsp {f_before:.3e} -> {f_after:.3e}");
    Ok(OracleReport::new(d_after, reference, 1, worst_case, passed))
}

/// Random states for the protocol suite are redrawn above this purity.
pub const MAX_SUITE_PURITY: f64 = 0.99;

/// One labelled oracle run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteCase {
    pub case: String,
    #[serde(flatten)]
    pub report: OracleReport,
}

/// Named states shared by the protocol and discord suites.
pub fn named_states() -> Vec<(&'static str, TwoQubitState)> {
    let bell = |c1, c2, c3| {
        bell_diagonal(BellDiagonalParams::new(c1, c2, c3).expect("inside tetrahedron"))
    };
    vec![
        ("singlet", TwoQubitState::singlet()),
        ("maximally_mixed", TwoQubitState::maximally_mixed()),
        ("bell(0.5,0,-0.5)", bell(0.5, 0.0, -0.5)),
        ("bell(-1,0,0)", bell(-1.0, 0.0, 0.0)),
    ]
}

/// Protocol oracle on the named states plus `n_random` random states of
/// purity at most 0.99; random state `i` comes from stream `i` of `cfg.seed`.
pub fn protocol_suite(n_random: usize, cfg: OracleConfig) -> Result<Vec<SuiteCase>> {
    let mut cases: Vec<(String, TwoQubitState)> = named_states()
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    for i in 0..n_random {
        let mut rng = trial_rng(cfg.seed, 1000 + i as u64);
        let state = loop {
            let s = random_state(&mut rng);
            if s.purity() <= MAX_SUITE_PURITY {
                break s;
            }
        };
        cases.push((format!("random #{i}"), state));
    }
    cases
        .into_iter()
        .map(|(case, s)| {
            Ok(SuiteCase {
                case,
                report: protocol_fidelity_oracle(&s, cfg)?,
            })
        })
        .collect()
}

/// Discord search on `n` random Bell-diagonal states.
pub fn gmqd_suite(n: usize, cfg: OracleConfig) -> Result<Vec<SuiteCase>> {
    (0..n)
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, 2000 + i as u64);
            let c = crate::random::random_bell_params(&mut rng);
            let report = gmqd_search_oracle(&bell_diagonal(c), cfg)?;
            Ok(SuiteCase {
                case: format!("bell({:.6},{:.6},{:.6})", c.c1, c.c2, c.c3),
                report,
            })
        })
        .collect()
}
