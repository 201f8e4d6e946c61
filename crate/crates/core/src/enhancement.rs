// SPDX-License-Identifier: Apache-2.0

//! Bell-diagonal states under symmetric local amplitude damping.
//!
//! With damping probability `p` on both qubits (`q = 1 − p`) the Bell-diagonal
//! state `(c₁, c₂, c₃)` evolves to
//!
//! ```text
//! a = b = (0, 0, p),   E = diag(q c₁, q c₂, c₃ q² + p²)
//! ```
//!
//! so both measures reduce to "half the sum of the two smaller of three
//! candidate terms". Which term is largest can switch during a decay, which is
//! where the measures kink (sudden change). The fidelity can also touch zero
//! at an isolated instant while the discord stays positive.
//!
//! For `|c₃| ≤ c = max(|c₁|, |c₂|)` the fidelity as a function of `q` has a
//! single candidate interior maximum at
//!
//! ```text
//! q₁ = 2 / (2 + c + √(c² + 4(c − c₃)))
//! ```
//!
//! and the state is enhancible iff `F(q₁) > F(1)`.

use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::linalg::{Mat3, Vec3};
use crate::qstate::{
    compose, in_tetrahedron, BellDiagonalParams, PauliDecomposition, TwoQubitState,
};

/// Sudden-change locations are refined to this width in `Γt`.
const BISECTION_WIDTH: f64 = 1e-12;
/// A refined fidelity minimum at or below this counts as touching zero.
pub const ZERO_TOUCH_TOL: f64 = 1e-10;
/// Discord must stay at least this large at a recorded zero touch.
pub const ZERO_TOUCH_MIN_DG: f64 = 1e-6;
/// Branch switches where the competing terms are (numerically) zero produce
/// no kink and are not recorded.
const SWITCH_FLOOR: f64 = 1e-12;

pub const DEFAULT_TRACE_STEPS: usize = 2001;
pub const DEFAULT_SCAN_RESOLUTION: usize = 81;

/// A damping strength, optionally tied to a point in time via
/// `p = 1 − e^{−Γt}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DampingPoint {
    pub p: f64,
    pub q: f64,
    pub gamma_t: Option<f64>,
}

impl DampingPoint {
    pub fn from_p(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(DampingPoint {
            p,
            q: 1.0 - p,
            gamma_t: None,
        })
    }

    pub fn from_q(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidProbability(q));
        }
        Ok(DampingPoint {
            p: 1.0 - q,
            q,
            gamma_t: None,
        })
    }

    pub fn from_gamma_t(gamma_t: f64) -> Result<Self> {
        if !(gamma_t >= 0.0 && gamma_t.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "Γt must be finite and nonnegative, got {gamma_t}"
            )));
        }
        Ok(DampingPoint {
            p: -(-gamma_t).exp_m1(),
            q: (-gamma_t).exp(),
            gamma_t: Some(gamma_t),
        })
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// `c₃ q² + p²`, the σ₃⊗σ₃ coefficient after damping.
fn damped_zz(c3: f64, p: f64) -> f64 {
    let q = 1.0 - p;
    c3 * q * q + p * p
}

/// Pauli decomposition of the damped Bell-diagonal state.
pub fn damped_decomposition(c: BellDiagonalParams, p: f64) -> PauliDecomposition {
    let q = 1.0 - p;
    let local = Vec3::new(0.0, 0.0, p);
    PauliDecomposition::new(
        local,
        local,
        Mat3::diag([q * c.c1, q * c.c2, damped_zz(c.c3, p)]),
    )
}

/// The damped state in closed form.
pub fn evolve_closed_form(c: BellDiagonalParams, p: f64) -> Result<TwoQubitState> {
    check_p(p)?;
    compose(&damped_decomposition(c, p))
}

/// Candidate terms inside the fidelity's max: `(q c₁)², (q c₂)², (c₃q² + p²)²`.
pub fn f_terms(c: BellDiagonalParams, p: f64) -> [f64; 3] {
    let q = 1.0 - p;
    let zz = damped_zz(c.c3, p);
    [(q * c.c1).powi(2), (q * c.c2).powi(2), zz * zz]
}

/// Candidate terms inside the discord's max: `(q c₁)², (q c₂)², (c₃q² + p²)² + p²`.
pub fn dg_terms(c: BellDiagonalParams, p: f64) -> [f64; 3] {
    let [t1, t2, t3] = f_terms(c, p);
    [t1, t2, t3 + p * p]
}

/// Index of the largest term, ties going to the lowest index.
pub fn branch_index(terms: &[f64; 3]) -> usize {
    let mut best = 0;
    for i in 1..3 {
        if terms[i] > terms[best] {
            best = i;
        }
    }
    best
}

/// Half the sum of all terms but the largest.
fn half_sum_without_max(terms: &[f64; 3]) -> f64 {
    let skip = branch_index(terms);
    0.5 * (0..3).filter(|&i| i != skip).map(|i| terms[i]).sum::<f64>()
}

/// RSP fidelity of the damped state.
pub fn f_under_damping(c: BellDiagonalParams, p: f64) -> f64 {
    half_sum_without_max(&f_terms(c, p))
}

/// Normalized geometric discord of the damped state.
pub fn dg_under_damping(c: BellDiagonalParams, p: f64) -> f64 {
    half_sum_without_max(&dg_terms(c, p))
}

fn check_branch_domain(c: BellDiagonalParams) -> Result<f64> {
    let c_max = c.c_max();
    if c.c3.abs() > c_max {
        return Err(Error::OutsideBranchDomain { c_max, c3: c.c3 });
    }
    Ok(c_max)
}

/// Smaller root of `q c = c₃ q² + (1 − q)²`.
pub fn q1(c_max: f64, c3: f64) -> Result<f64> {
    if c_max == 0.0 {
        return Err(Error::DegenerateCrossing);
    }
    if !(c_max > 0.0 && c_max <= 1.0) || c3.abs() > c_max {
        return Err(Error::OutsideBranchDomain { c_max, c3 });
    }
    Ok(2.0 / (2.0 + c_max + disc_root(c_max, c3)))
}

/// `√(c² + 4(c − c₃))`
fn disc_root(c_max: f64, c3: f64) -> f64 {
    (c_max * c_max + 4.0 * (c_max - c3)).sqrt()
}

/// Fidelity after damping in piecewise form (valid for `|c₃| ≤ c`):
///
/// ```text
/// F = ½[q²(c₁² + c₂² − c²) + (c₃q² + p²)²]   q₁ ≤ q ≤ 1
/// F = ½ q²(c₁² + c₂²)                        0 ≤ q < q₁
/// ```
pub fn f_piecewise(c: BellDiagonalParams, q: f64) -> Result<f64> {
    let c_max = check_branch_domain(c)?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidProbability(q));
    }
    let root = q1(c_max, c.c3)?;
    let s12 = c.c1 * c.c1 + c.c2 * c.c2;
    if q >= root {
        let zz = c.c3 * q * q + (1.0 - q) * (1.0 - q);
        Ok(0.5 * (q * q * (s12 - c_max * c_max) + zz * zz))
    } else {
        Ok(0.5 * q * q * s12)
    }
}

/// `dF/dq` on the upper branch `q ∈ [q₁, 1]`.
pub fn f_derivative(c: BellDiagonalParams, q: f64) -> Result<f64> {
    let c_max = check_branch_domain(c)?;
    let root = q1(c_max, c.c3)?;
    if !(q >= root - 1e-12 && q <= 1.0 + 1e-12) {
        return Err(Error::OutsideDerivativeDomain { q, q1: root });
    }
    let s12 = c.c1 * c.c1 + c.c2 * c.c2;
    let zz = (1.0 - q) * (1.0 - q) + c.c3 * q * q;
    Ok((s12 - c_max * c_max) * q + zz * (2.0 * (c.c3 + 1.0) * q - 2.0))
}

/// Left minus right side of the enhancibility inequality
///
/// ```text
/// (c₁² + c₂²) / (c₁² + c₂² + c₃² − c²)  >  (2 + c + √(c² + 4(c − c₃)))² / 4
/// ```
///
/// `None` when the inequality does not apply (`|c₃| > c` or the maximally
/// mixed state); `+∞` when the left denominator vanishes.
pub fn criterion_margin(c: BellDiagonalParams) -> Option<f64> {
    let c_max = c.c_max();
    if c_max < c.c3.abs() || c_max == 0.0 {
        return None;
    }
    let num = c.c1 * c.c1 + c.c2 * c.c2;
    let den = num + c.c3 * c.c3 - c_max * c_max;
    let rhs = (2.0 + c_max + disc_root(c_max, c.c3)).powi(2) / 4.0;
    if den <= 0.0 {
        return Some(f64::INFINITY);
    }
    Some(num / den - rhs)
}

/// Whether some symmetric amplitude damping strictly raises the fidelity.
pub fn is_enhancible(c: BellDiagonalParams) -> bool {
    criterion_margin(c).is_some_and(|m| m > 0.0)
}

/// Optimal damping probability `1 − q₁` for an enhancible state.
pub fn p_opt(c: BellDiagonalParams) -> Result<f64> {
    if !is_enhancible(c) {
        return Err(Error::NotEnhancible(c.c1, c.c2, c.c3));
    }
    let c_max = c.c_max();
    let root = disc_root(c_max, c.c3);
    Ok((c_max + root) / (2.0 + c_max + root))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EnhanceReport {
    pub c: [f64; 3],
    /// `max(|c₁|, |c₂|)`
    pub c_max: f64,
    pub enhancible: bool,
    /// Branch crossing, when `0 < c` and `|c₃| ≤ c`.
    pub q1: Option<f64>,
    /// `1 − q₁`, only for enhancible states.
    pub p_opt: Option<f64>,
    pub f_before: f64,
    /// Fidelity at `p_opt`, or `f_before` when not enhancible.
    pub f_after: f64,
    /// Serialized as `"inf"` when the left-hand denominator vanishes.
    #[serde(serialize_with = "serialize_margin")]
    pub criterion_margin: Option<f64>,
}

fn serialize_margin<S: serde::Serializer>(
    m: &Option<f64>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(x) if x.is_infinite() => ser.serialize_str(if *x > 0.0 { "inf" } else { "-inf" }),
        Some(x) => ser.serialize_f64(*x),
        None => ser.serialize_none(),
    }
}

/// Full enhancement analysis of a Bell-diagonal state.
pub fn analyze(c: BellDiagonalParams) -> EnhanceReport {
    let c_max = c.c_max();
    let q1 = q1(c_max, c.c3).ok();
    let p_opt = p_opt(c).ok();
    let f_before = f_under_damping(c, 0.0);
    let f_after = p_opt.map_or(f_before, |p| f_under_damping(c, p));
    EnhanceReport {
        c: c.as_array(),
        c_max,
        enhancible: p_opt.is_some(),
        q1,
        p_opt,
        f_before,
        f_after,
        criterion_margin: criterion_margin(c),
    }
}

/// Best fidelity over a uniform grid of `points` damping probabilities in
/// `[0, 1]`, as `(p, f)`.
pub fn sweep_f_max(c: BellDiagonalParams, points: usize) -> (f64, f64) {
    let n = points.max(2);
    (0..n)
        .map(|i| {
            let p = i as f64 / (n - 1) as f64;
            (p, f_under_damping(c, p))
        })
        .fold((0.0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TracedMeasure {
    F,
    Dg,
}

impl TracedMeasure {
    pub fn tag(self) -> &'static str {
        match self {
            TracedMeasure::F => "f",
            TracedMeasure::Dg => "dg",
        }
    }

    fn terms(self, c: BellDiagonalParams, p: f64) -> [f64; 3] {
        match self {
            TracedMeasure::F => f_terms(c, p),
            TracedMeasure::Dg => dg_terms(c, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub gamma_t: f64,
    pub p: f64,
    pub f_rsp: f64,
    pub d_g: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuddenChange {
    pub gamma_t: f64,
    pub measure: TracedMeasure,
    pub from_branch: usize,
    pub to_branch: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroTouch {
    pub gamma_t: f64,
    pub d_g: f64,
}

/// Time series of both measures under symmetric damping `p = 1 − e^{−Γt}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvolutionTrace {
    pub points: Vec<TracePoint>,
    pub sudden_changes: Vec<SuddenChange>,
    pub zero_touches: Vec<ZeroTouch>,
}

fn p_at(gamma_t: f64) -> f64 {
    -(-gamma_t).exp_m1()
}

/// Samples both measures on a uniform `Γt` grid of `steps` points over
/// `[0, gamma_t_max]` and locates the events between grid points.
pub fn trace_evolution(
    c: BellDiagonalParams,
    gamma_t_max: f64,
    steps: usize,
) -> Result<EvolutionTrace> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 steps, got {steps}"
        )));
    }
    if !(gamma_t_max > 0.0 && gamma_t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Γt range must be positive and finite, got {gamma_t_max}"
        )));
    }
    let last = (steps - 1) as f64;
    let points: Vec<TracePoint> = (0..steps)
        .into_par_iter()
        .map(|i| {
            let gamma_t = gamma_t_max * i as f64 / last;
            let p = p_at(gamma_t);
            TracePoint {
                gamma_t,
                p,
                f_rsp: f_under_damping(c, p),
                d_g: dg_under_damping(c, p),
            }
        })
        .collect();

    let mut sudden_changes = Vec::new();
    for measure in [TracedMeasure::F, TracedMeasure::Dg] {
        sudden_changes.extend(find_branch_switches(c, measure, &points));
    }
    sudden_changes.sort_by(|a, b| a.gamma_t.total_cmp(&b.gamma_t));

    let zero_touches = find_zero_touches(c, &points);
    Ok(EvolutionTrace {
        points,
        sudden_changes,
        zero_touches,
    })
}

fn find_branch_switches(
    c: BellDiagonalParams,
    measure: TracedMeasure,
    points: &[TracePoint],
) -> Vec<SuddenChange> {
    let branch = |p: f64| branch_index(&measure.terms(c, p));
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (from, to) = (branch(w[0].p), branch(w[1].p));
        if from == to {
            continue;
        }
        let gap = |gt: f64| {
            let t = measure.terms(c, p_at(gt));
            t[to] - t[from]
        };
        let (mut lo, mut hi) = (w[0].gamma_t, w[1].gamma_t);
        let lo_sign = gap(lo) > 0.0;
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            if (gap(mid) > 0.0) == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let gamma_t = 0.5 * (lo + hi);
        if measure.terms(c, p_at(gamma_t))[from] <= SWITCH_FLOOR {
            continue;
        }
        out.push(SuddenChange {
            gamma_t,
            measure,
            from_branch: from,
            to_branch: to,
        });
    }
    out
}

fn find_zero_touches(c: BellDiagonalParams, points: &[TracePoint]) -> Vec<ZeroTouch> {
    let f_at = |gt: f64| f_under_damping(c, p_at(gt));
    let mut out = Vec::new();
    for w in points.windows(3) {
        let (left, mid, right) = (w[0].f_rsp, w[1].f_rsp, w[2].f_rsp);
        if !(left > mid && mid <= right && left > ZERO_TOUCH_TOL && right > ZERO_TOUCH_TOL) {
            continue;
        }
        let gamma_t = golden_section_min(f_at, w[0].gamma_t, w[2].gamma_t);
        let p = p_at(gamma_t);
        let f = f_under_damping(c, p);
        let d_g = dg_under_damping(c, p);
        if f <= ZERO_TOUCH_TOL && d_g >= ZERO_TOUCH_MIN_DG {
            out.push(ZeroTouch { gamma_t, d_g });
        }
    }
    out
}

fn golden_section_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > BISECTION_WIDTH {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

pub const TRACE_CSV_HEADER: [&str; 4] = ["gamma_t", "p", "f_rsp", "d_g"];

impl EvolutionTrace {
    /// CSV with header `gamma_t,p,f_rsp,d_g`, followed by one comment line per
    /// event: `# sudden_change gamma_t=<v> measure=<f|dg>` and
    /// `# zero_touch gamma_t=<v>`.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_CSV_HEADER)?;
        for pt in &self.points {
            w.write_record([
                fmt_sig(pt.gamma_t),
                fmt_sig(pt.p),
                fmt_sig(pt.f_rsp),
                fmt_sig(pt.d_g),
            ])?;
        }
        w.flush()?;
        let mut out = w.into_inner().map_err(|e| e.into_error())?;
        for ev in &self.sudden_changes {
            writeln!(
                out,
                "# sudden_change gamma_t={} measure={}",
                fmt_sig(ev.gamma_t),
                ev.measure.tag()
            )?;
        }
        for ev in &self.zero_touches {
            writeln!(out, "# zero_touch gamma_t={}", fmt_sig(ev.gamma_t))?;
        }
        Ok(())
    }
}

/// Trace data parsed back from [`EvolutionTrace::write_csv`] output.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedTrace {
    pub points: Vec<TracePoint>,
    pub sudden_changes: Vec<(f64, TracedMeasure)>,
    pub zero_touches: Vec<f64>,
}

/// Reads the trace CSV schema, including event comment lines.
pub fn read_trace_csv<R: BufRead>(input: R) -> Result<ParsedTrace> {
    let mut data = String::new();
    let mut parsed = ParsedTrace::default();
    for line in input.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        match line.strip_prefix('#') {
            Some(comment) => parse_event(comment.trim(), &mut parsed)?,
            None => {
                data.push_str(&line);
                data.push('\n');
            }
        }
    }
    let mut rdr = csv::Reader::from_reader(data.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(TRACE_CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let v: Vec<f64> = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
            })
            .collect::<Result<_>>()?;
        parsed.points.push(TracePoint {
            gamma_t: v[0],
            p: v[1],
            f_rsp: v[2],
            d_g: v[3],
        });
    }
    Ok(parsed)
}

fn parse_event(comment: &str, parsed: &mut ParsedTrace) -> Result<()> {
    let mut words = comment.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let mut gamma_t = None;
    let mut measure = None;
    for word in words {
        match word.split_once('=') {
            Some(("gamma_t", v)) => {
                gamma_t = Some(v.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))?)
            }
            Some(("measure", "f")) => measure = Some(TracedMeasure::F),
            Some(("measure", "dg")) => measure = Some(TracedMeasure::Dg),
            _ => return Err(Error::Parse(format!("unrecognized event field `{word}`"))),
        }
    }
    let gamma_t =
        gamma_t.ok_or_else(|| Error::Parse(format!("event without gamma_t: `{comment}`")))?;
    match (kind, measure) {
        ("sudden_change", Some(m)) => parsed.sudden_changes.push((gamma_t, m)),
        ("zero_touch", None) => parsed.zero_touches.push(gamma_t),
        _ => return Err(Error::Parse(format!("unrecognized event `{comment}`"))),
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub c: [f64; 3],
    pub enhancible: bool,
}

/// Whether enhancibility is invariant under one symmetry of the tetrahedron.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryCheck {
    pub name: &'static str,
    pub mismatches: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TetrahedronScan {
    pub resolution: usize,
    pub points: Vec<ScanPoint>,
    pub enhancible_count: usize,
    pub enhancible_fraction: f64,
    pub symmetries: Vec<SymmetryCheck>,
}

/// Lattice coordinate `i` of `resolution` points on `[−1, 1]`; exact mirror
/// images map to exact negatives.
fn lattice_coord(i: usize, resolution: usize) -> f64 {
    let last = (resolution - 1) as f64;
    (2.0 * i as f64 - last) / last
}

type IndexMap = fn([usize; 3], usize) -> [usize; 3];

const SCAN_SYMMETRIES: [(&str, IndexMap); 4] = [
    ("(-c1,-c2,c3)", |[i, j, k], n| [n - 1 - i, n - 1 - j, k]),
    ("(-c1,c2,-c3)", |[i, j, k], n| [n - 1 - i, j, n - 1 - k]),
    ("(c1,-c2,-c3)", |[i, j, k], n| [i, n - 1 - j, n - 1 - k]),
    ("(c2,c1,c3)", |[i, j, k], _| [j, i, k]),
];

/// Tags every lattice point of `[−1, 1]³` inside the tetrahedron with its
/// enhancibility and checks the result against the tetrahedron's symmetries.
pub fn scan_tetrahedron(resolution: usize) -> Result<TetrahedronScan> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let n = resolution;
    let tags: Vec<Option<bool>> = (0..n * n * n)
        .into_par_iter()
        .map(|flat| {
            let [i, j, k] = [flat / (n * n), (flat / n) % n, flat % n];
            let c = [i, j, k].map(|x| lattice_coord(x, n));
            in_tetrahedron(c[0], c[1], c[2]).then(|| {
                BellDiagonalParams::from_array(c)
                    .map(is_enhancible)
                    .unwrap_or(false)
            })
        })
        .collect();

    let flat = |[i, j, k]: [usize; 3]| (i * n + j) * n + k;
    let symmetries = SCAN_SYMMETRIES
        .iter()
        .map(|&(name, map)| {
            let mismatches = (0..n * n * n)
                .filter(|&idx| {
                    let ijk = [idx / (n * n), (idx / n) % n, idx % n];
                    match (tags[idx], tags[flat(map(ijk, n))]) {
                        (Some(a), Some(b)) => a != b,
                        (None, None) => false,
                        _ => true,
                    }
                })
                .count();
            SymmetryCheck {
                name,
                mismatches,
                holds: mismatches == 0,
            }
        })
        .collect();

    let points: Vec<ScanPoint> = tags
        .iter()
        .enumerate()
        .filter_map(|(idx, tag)| {
            tag.map(|enhancible| ScanPoint {
                c: [idx / (n * n), (idx / n) % n, idx % n].map(|x| lattice_coord(x, n)),
                enhancible,
            })
        })
        .collect();
    let enhancible_count = points.iter().filter(|p| p.enhancible).count();
    Ok(TetrahedronScan {
        resolution,
        enhancible_fraction: enhancible_count as f64 / points.len() as f64,
        enhancible_count,
        points,
        symmetries,
    })
}

impl TetrahedronScan {
    /// CSV with header `c1,c2,c3,enhancible`.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["c1", "c2", "c3", "enhancible"])?;
        for pt in &self.points {
            w.write_record([
                fmt_sig(pt.c[0]),
                fmt_sig(pt.c[1]),
                fmt_sig(pt.c[2]),
                pt.enhancible.to_string(),
            ])?;
        }
        w.flush()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub c1: f64,
    pub enhancible: bool,
    pub f_before: f64,
    pub f_after: f64,
}

/// Fidelity before and after optimal damping along the line
/// `(c₁, −1, c₁)`, `c₁ ∈ [−1, 1]`.
pub fn profile_line(n: usize) -> Result<Vec<ProfilePoint>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 points, got {n}"
        )));
    }
    (0..n)
        .into_par_iter()
        .map(|i| {
            let c1 = lattice_coord(i, n);
            let c = BellDiagonalParams::new(c1, -1.0, c1)?;
            let report = analyze(c);
            Ok(ProfilePoint {
                c1,
                enhancible: report.enhancible,
                f_before: report.f_before,
                f_after: report.f_after,
            })
        })
        .collect()
}

/// CSV with header `c1,f_before,f_after`.
pub fn write_profile_csv<W: Write>(points: &[ProfilePoint], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["c1", "f_before", "f_after"])?;
    for pt in points {
        w.write_record([fmt_sig(pt.c1), fmt_sig(pt.f_before), fmt_sig(pt.f_after)])?;
    }
    w.flush()
}
