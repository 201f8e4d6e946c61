// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rsplab::enhancement::{
    analyze, criterion_margin, evolve_closed_form, f_under_damping, is_enhancible, p_opt,
    trace_evolution, TracedMeasure,
};
use rsplab::measures::{gmqd, rsp_fidelity};
use rsplab::oracles::{
    discord_raising_check, gmqd_suite, protocol_suite, unital_monotonicity_suite, OracleConfig,
};
use rsplab::qchannel::{amplitude_damping, apply_local};
use rsplab::qstate::bell_diagonal;
use rsplab::random::{random_bell_params, random_state, random_unitary, trial_rng};
use rsplab::{BellDiagonalParams, TwoQubitState};

// Tolerances and sizes, pinned.
const EXACT_TOL: f64 = 1e-12;
const EXTREMAL_RUNTIME: Duration = Duration::from_millis(1);
const EVENT_TOL: f64 = 1e-6;
const TOUCH_DG: f64 = 0.0429;
const TOUCH_DG_TOL: f64 = 1e-4;
const TRACE_GAMMA_T_MAX: f64 = 3.0;
const TRACE_STEPS: usize = 2001;
const MONOTONICITY_TRIALS: usize = 10_000;
const MONOTONICITY_TOL: f64 = 1e-9;
const MONOTONICITY_RUNTIME: Duration = Duration::from_secs(30);
const ORDERING_TRIALS: usize = 10_000;
const ORDERING_TOL: f64 = 1e-9;
const KRAUS_TRIALS: usize = 1_000;
const KRAUS_TOL: f64 = 1e-12;
const WITNESS_F_AFTER: f64 = 0.072949;
const WITNESS_F_TOL: f64 = 1e-6;
const WITNESS_SWEEP: usize = 10_000;
const WITNESS_SWEEP_TOL: f64 = 1e-3;
const CRITERION_TRIALS: usize = 1_000;
const CRITERION_MARGIN_FLOOR: f64 = 1e-6;
const PROTOCOL_RANDOM_STATES: usize = 50;
const PROTOCOL_TOL: f64 = 5e-3;
const PROTOCOL_RUNTIME: Duration = Duration::from_secs(60);
const GMQD_STATES: usize = 20;
const GMQD_ABOVE_TOL: f64 = 1e-3;
const GMQD_BELOW_TOL: f64 = 1e-9;
const RAISING_TOL: f64 = 1e-10;
const INVARIANCE_TRIALS: usize = 1_000;
const INVARIANCE_TOL: f64 = 1e-9;

const SEED: u64 = 20_240_611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bell(c1: f64, c2: f64, c3: f64) -> BellDiagonalParams {
    BellDiagonalParams::new(c1, c2, c3).expect("inside tetrahedron")
}

fn c01_extremal() -> Outcome {
    let start = Instant::now();
    let singlet = TwoQubitState::singlet();
    let mixed = TwoQubitState::maximally_mixed();
    let values = [
        rsp_fidelity(&singlet),
        gmqd(&singlet),
        rsp_fidelity(&mixed),
        gmqd(&mixed),
    ];
    let elapsed = start.elapsed();
    let want = [1.0, 1.0, 0.0, 0.0];
    let err = values
        .iter()
        .zip(want)
        .map(|(v, w)| (v - w).abs())
        .fold(0.0, f64::max);
    ensure(err <= EXACT_TOL, || format!("max error {err:e}"))?;
    ensure(elapsed < EXTREMAL_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!("max error {err:e}, {elapsed:?}"))
}

fn c02_half_correlated_initial() -> Outcome {
    let s = bell_diagonal(bell(0.5, 0.0, -0.5));
    let (f, d) = (rsp_fidelity(&s), gmqd(&s));
    ensure(
        (f - 0.125).abs() <= EXACT_TOL && (d - 0.125).abs() <= EXACT_TOL,
        || format!("f_rsp {f}, d_g {d}"),
    )?;
    Ok(format!("f_rsp {f}, d_g {d}"))
}

fn half_correlated_trace() -> rsplab::enhancement::EvolutionTrace {
    trace_evolution(bell(0.5, 0.0, -0.5), TRACE_GAMMA_T_MAX, TRACE_STEPS)
        .expect("valid trace input")
}

fn c03_vanish_at_instant() -> Outcome {
    let trace = half_correlated_trace();
    let want = -(2.0 - 2f64.sqrt()).ln();
    ensure(trace.zero_touches.len() == 1, || {
        format!("{} zero touches recorded", trace.zero_touches.len())
    })?;
    let touch = trace.zero_touches[0];
    ensure((touch.gamma_t - want).abs() <= EVENT_TOL, || {
        format!("touch at {} vs {want}", touch.gamma_t)
    })?;
    ensure((touch.d_g - TOUCH_DG).abs() <= TOUCH_DG_TOL, || {
        format!("d_g {} at touch", touch.d_g)
    })?;
    // the nearest grid points on either side
    let left = trace
        .points
        .iter()
        .rev()
        .find(|p| p.gamma_t < touch.gamma_t)
        .unwrap();
    let right = trace
        .points
        .iter()
        .find(|p| p.gamma_t > touch.gamma_t)
        .unwrap();
    ensure(left.f_rsp > 0.0 && right.f_rsp > 0.0, || {
        format!("f {} / {} beside the touch", left.f_rsp, right.f_rsp)
    })?;
    Ok(format!(
        "touch at {:.9} (|Δ| {:.1e}), d_g {:.6}",
        touch.gamma_t,
        (touch.gamma_t - want).abs(),
        touch.d_g
    ))
}

fn c04_sudden_change() -> Outcome {
    let trace = half_correlated_trace();
    let want = -((5.0 - 17f64.sqrt()) / 2.0).ln();
    let best = trace
        .sudden_changes
        .iter()
        .filter(|s| s.measure == TracedMeasure::F)
        .map(|s| s.gamma_t)
        .min_by(|a, b| (a - want).abs().total_cmp(&(b - want).abs()))
        .ok_or("no fidelity branch switch recorded")?;
    ensure((best - want).abs() <= EVENT_TOL, || {
        format!("switch at {best} vs {want}")
    })?;
    Ok(format!(
        "switch at {best:.9} (|Δ| {:.1e})",
        (best - want).abs()
    ))
}

fn c05_proposition() -> Outcome {
    let start = Instant::now();
    let report = unital_monotonicity_suite(MONOTONICITY_TRIALS, SEED).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.estimate <= MONOTONICITY_TOL, || {
        format!("max increase {:e} ({})", report.estimate, report.worst_case)
    })?;
    ensure(elapsed < MONOTONICITY_RUNTIME, || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max increase {:.3e} over {} trials, {elapsed:.2?}",
        report.estimate, report.trials
    ))
}

fn c06_ordering() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for i in 0..ORDERING_TRIALS {
        let mut rng = trial_rng(SEED, i as u64);
        let s = random_state(&mut rng);
        let gap = rsp_fidelity(&s) - gmqd(&s);
        worst = worst.max(gap);
        ensure(gap <= ORDERING_TOL, || {
            format!("trial {i}: f_rsp − d_g = {gap:e}")
        })?;
    }
    Ok(format!("max f_rsp − d_g {worst:.3e}"))
}

fn c07_closed_form_vs_kraus() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..KRAUS_TRIALS {
        let mut rng = trial_rng(SEED + 7, i as u64);
        let c = random_bell_params(&mut rng);
        let p: f64 = rand::Rng::random_range(&mut rng, 0.0..=1.0);
        let closed = evolve_closed_form(c, p).map_err(|e| e.to_string())?;
        let ad = amplitude_damping(p).map_err(|e| e.to_string())?;
        let kraus = apply_local(&ad, &ad, &bell_diagonal(c)).map_err(|e| e.to_string())?;
        let diff = closed.rho().max_abs_diff(kraus.rho());
        worst = worst.max(diff);
        ensure(diff <= KRAUS_TOL, || {
            format!("c {:?}, p {p}: {diff:e}", c.as_array())
        })?;
    }
    Ok(format!("max entry difference {worst:.3e}"))
}

fn c08_witness() -> Outcome {
    let c = bell(-1.0, 0.0, 0.0);
    let want = (1.0 + 5f64.sqrt()) / (3.0 + 5f64.sqrt());
    let got = p_opt(c).map_err(|e| e.to_string())?;
    ensure((got - want).abs() <= EXACT_TOL, || {
        format!("p_opt {got} vs {want}")
    })?;
    let report = analyze(c);
    ensure(
        (report.f_after - WITNESS_F_AFTER).abs() <= WITNESS_F_TOL,
        || format!("f_after {}", report.f_after),
    )?;
    // global maximum of a uniform sweep, evaluated on the Kraus-evolved state
    let (p_best, f_best) = (0..WITNESS_SWEEP)
        .map(|i| {
            let p = i as f64 / (WITNESS_SWEEP - 1) as f64;
            let ad = amplitude_damping(p).expect("p in range");
            let s = apply_local(&ad, &ad, &bell_diagonal(c)).expect("Kraus channel");
            (p, rsp_fidelity(&s))
        })
        .fold(
            (0.0, f64::NEG_INFINITY),
            |b, x| if x.1 > b.1 { x } else { b },
        );
    ensure((p_best - got).abs() <= WITNESS_SWEEP_TOL, || {
        format!("sweep argmax {p_best}")
    })?;
    ensure(f_best <= report.f_after + EXACT_TOL, || {
        format!("sweep max {f_best} exceeds f_after {}", report.f_after)
    })?;
    Ok(format!(
        "p_opt {got:.12}, f_after {:.9}, sweep argmax {p_best:.4}",
        report.f_after
    ))
}

/// Largest damped fidelity found by a uniform sweep plus golden-section
/// polishing around the best grid point.
fn brute_force_best(c: BellDiagonalParams) -> f64 {
    let n = 10_000;
    let f = |p: f64| f_under_damping(c, p);
    let step = 1.0 / (n - 1) as f64;
    let (i_best, mut best) = (0..n)
        .map(|i| (i, f(i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |b, x| if x.1 > b.1 { x } else { b });
    let (mut a, mut b) = (
        (i_best as f64 - 1.0).max(0.0) * step,
        ((i_best + 1) as f64 * step).min(1.0),
    );
    let r = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let (x1, x2) = (b - r * (b - a), a + r * (b - a));
        if f(x1) >= f(x2) {
            b = x2;
        } else {
            a = x1;
        }
        best = best.max(f(x1)).max(f(x2));
    }
    best
}

fn c09_criterion_vs_sweep() -> Outcome {
    let mut checked = 0;
    let mut enhancible = 0;
    let mut index = 0u64;
    while checked < CRITERION_TRIALS {
        let mut rng = trial_rng(SEED + 9, index);
        index += 1;
        let c = random_bell_params(&mut rng);
        if c.c3.abs() > c.c_max() {
            continue;
        }
        let Some(margin) = criterion_margin(c) else {
            continue;
        };
        if margin.abs() <= CRITERION_MARGIN_FLOOR {
            continue;
        }
        checked += 1;
        let gain = brute_force_best(c) - f_under_damping(c, 0.0);
        let sweep_says = gain > 0.0;
        enhancible += usize::from(sweep_says);
        ensure(sweep_says == is_enhancible(c), || {
            format!(
                "c {:?}: criterion margin {margin:e}, sweep gain {gain:e}",
                c.as_array()
            )
        })?;
    }
    Ok(format!(
        "{checked} points agree ({enhancible} enhancible), {index} drawn"
    ))
}

fn c10_protocol_oracle() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig {
        seed: SEED,
        ..OracleConfig::default()
    };
    let cases = protocol_suite(PROTOCOL_RANDOM_STATES, cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let worst = cases
        .iter()
        .max_by(|a, b| a.report.abs_err.total_cmp(&b.report.abs_err))
        .expect("nonempty suite");
    ensure(cases.len() == PROTOCOL_RANDOM_STATES + 4, || {
        format!("{} cases", cases.len())
    })?;
    ensure(worst.report.abs_err <= PROTOCOL_TOL, || {
        format!("{}: |err| {:e}", worst.case, worst.report.abs_err)
    })?;
    ensure(elapsed < PROTOCOL_RUNTIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} states, max |err| {:.3e} ({}), {elapsed:.2?}",
        cases.len(),
        worst.report.abs_err,
        worst.case
    ))
}

fn c11_gmqd_oracle() -> Outcome {
    let cfg = OracleConfig {
        seed: SEED,
        ..OracleConfig::default()
    };
    let cases = gmqd_suite(GMQD_STATES, cfg).map_err(|e| e.to_string())?;
    let mut above = 0.0f64;
    let mut below = 0.0f64;
    for case in &cases {
        let diff = case.report.estimate - case.report.reference;
        above = above.max(diff);
        below = below.max(-diff);
        ensure(diff >= -GMQD_BELOW_TOL, || {
            format!("{} undercuts by {:e}", case.case, -diff)
        })?;
        ensure(diff <= GMQD_ABOVE_TOL, || {
            format!("{} exceeds by {diff:e}", case.case)
        })?;
    }
    Ok(format!(
        "{} states, max above {above:.3e}, max below {below:.3e}",
        cases.len()
    ))
}

fn c12_discord_raising() -> Outcome {
    let report = discord_raising_check().map_err(|e| e.to_string())?;
    ensure((report.estimate - 0.25).abs() <= RAISING_TOL, || {
        report.worst_case.clone()
    })?;
    ensure(report.passed, || report.worst_case.clone())?;
    Ok(report.worst_case)
}

fn c13_local_unitary_invariance() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..INVARIANCE_TRIALS {
        let mut rng = trial_rng(SEED + 13, i as u64);
        let s = random_state(&mut rng);
        let (u1, u2) = (random_unitary(&mut rng), random_unitary(&mut rng));
        let t = s.local_unitary(&u1, &u2).map_err(|e| e.to_string())?;
        let shift = (rsp_fidelity(&t) - rsp_fidelity(&s))
            .abs()
            .max((gmqd(&t) - gmqd(&s)).abs());
        worst = worst.max(shift);
        ensure(shift <= INVARIANCE_TOL, || {
            format!("trial {i}: shift {shift:e}")
        })?;
    }
    Ok(format!("max shift {worst:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("extremal values", c01_extremal),
        ("initial point of the damped trace", c02_half_correlated_initial),
        ("fidelity vanishes at an instant", c03_vanish_at_instant),
        ("sudden change", c04_sudden_change),
        ("unital monotonicity", c05_proposition),
        ("discord bounds fidelity", c06_ordering),
        (
            "closed form equals Kraus evolution",
            c07_closed_form_vs_kraus,
        ),
        ("enhancement witness", c08_witness),
        ("criterion agrees with sweep", c09_criterion_vs_sweep),
        ("protocol oracle", c10_protocol_oracle),
        ("discord search oracle", c11_gmqd_oracle),
        ("discord raising", c12_discord_raising),
        ("local-unitary invariance", c13_local_unitary_invariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
