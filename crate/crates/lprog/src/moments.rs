//! Moments of mollified L-values along the vertical progression
//! s_k = 1/2 + 2πi(α + kβ), the nonvanishing scan driven by the error-radius
//! policy, geometric progression sums with their nearest-integer bound, the
//! first-nonzero-index search, and the well-spaced large-sieve check.
//!
//! Concurrency: per-k evaluations are pure and run in parallel; the reduction
//! over k is always a sequential compensated sum in ascending k, so reports
//! are bit-identical across runs and thread counts.  Negative β is handled at
//! the boundary by conjugation (flip α and conjugate χ); the functions here
//! require β > 0.

use crate::characters::DirichletCharacter;
use crate::constants::FrozenConstants;
use crate::error::{Error, Result};
use crate::kahan::{ComplexKahan, KahanSum};
use crate::lfunc::{self, ComplexPoint, EvaluatedValue, TruncationPlan};
use crate::mollifier::{eval_mollifier, MollifierSpec, PolyLabel};
use crate::quadrature;
use crate::sieve::SieveTable;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// The progression parameters: t_k = 2π(α + kβ).  External offsets a, b with
/// t_k = a + kb convert via α = a/2π, β = b/2π.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProgressionSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl ProgressionSpec {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "progression needs finite alpha and beta > 0, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(ProgressionSpec { alpha, beta })
    }

    /// From external units t_k = a + kb.  b < 0 flips to an equivalent
    /// positive-β progression; the caller must then conjugate the character
    /// and the first moment.
    pub fn from_offsets(a: f64, b: f64) -> Result<(Self, bool)> {
        let flipped = b < 0.0;
        let (a, b) = if flipped { (-a, -b) } else { (a, b) };
        Ok((Self::new(a / (2.0 * PI), b / (2.0 * PI))?, flipped))
    }
}

pub fn point_of_progression(spec: ProgressionSpec, k: i64) -> ComplexPoint {
    ComplexPoint::new(0.5, 2.0 * PI * (spec.alpha + k as f64 * spec.beta))
}

/// How L(s_k) gets evaluated.  `Hybrid` runs the truncated series and lets
/// the scan confirm undetermined points against the oracle; moments treat it
/// like `Truncated`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalPlan {
    Oracle,
    Truncated { c: f64 },
    Hybrid { c: f64 },
}

impl EvalPlan {
    pub(crate) fn describe(self) -> &'static str {
        match self {
            EvalPlan::Oracle => "oracle",
            EvalPlan::Truncated { .. } => "truncated",
            EvalPlan::Hybrid { .. } => "hybrid",
        }
    }

    pub(crate) fn c(self) -> Option<f64> {
        match self {
            EvalPlan::Oracle => None,
            EvalPlan::Truncated { c } | EvalPlan::Hybrid { c } => Some(c),
        }
    }
}

/// The resolved evaluation settings a report embeds.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlanRecord {
    pub method: &'static str,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub constant_factor: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MollifierSummary {
    pub label: &'static str,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(rename = "polyCoeffs")]
    pub poly: Vec<f64>,
}

fn label_str(label: PolyLabel) -> &'static str {
    match label {
        PolyLabel::P1 => "P1",
        PolyLabel::P2 => "P2",
        PolyLabel::Custom => "custom",
    }
}

/// One moment run: S₁ = Σ L(s_k)M(s_k), S₂ = Σ |L(s_k)M(s_k)|², the
/// Cauchy-Schwarz count bound |S₁|²/S₂, and strict per-point verdict counts.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MomentReport {
    #[serde(rename = "T")]
    pub t_count: u64,
    pub alpha: f64,
    pub beta: f64,
    pub mollifier: MollifierSummary,
    pub s1: [f64; 2],
    pub s2: f64,
    pub cs_lower_bound: f64,
    pub nonzero_count: u64,
    pub undetermined_count: u64,
    pub per_point_error_budget: f64,
    pub plan: PlanRecord,
}

impl MomentReport {
    pub fn s1_complex(&self) -> Complex64 {
        Complex64::new(self.s1[0], self.s1[1])
    }
}

/// The mollifier length each proof instantiates: X = T^θ for P1 and
/// X = √(βT/q) for P2.
pub fn mollifier_for_run(
    label: PolyLabel,
    t_count: u64,
    theta: Option<f64>,
    spec: ProgressionSpec,
    q: u32,
) -> Result<MollifierSpec> {
    match label {
        PolyLabel::P1 => {
            let theta = theta.ok_or_else(|| {
                Error::InvalidArgument("the P1 run needs theta to set X = T^theta".into())
            })?;
            MollifierSpec::p1((t_count as f64).powf(theta).max(1.0))
        }
        PolyLabel::P2 => MollifierSpec::p2((spec.beta * t_count as f64 / q as f64).sqrt().max(1.0)),
        PolyLabel::Custom => Err(Error::InvalidArgument(
            "moment U-rules are defined for the P1 and P2 mollifiers only".into(),
        )),
    }
}

/// U-rule for the truncation length: q·x = q·U with U = 3(|α|+β)T for P1 and
/// U = 4βT for P2.
fn truncation_length(label: PolyLabel, t_count: u64, spec: ProgressionSpec) -> Result<f64> {
    match label {
        PolyLabel::P1 => Ok(3.0 * (spec.alpha.abs() + spec.beta) * t_count as f64),
        PolyLabel::P2 => Ok(4.0 * spec.beta * t_count as f64),
        PolyLabel::Custom => Err(Error::InvalidArgument(
            "moment U-rules are defined for the P1 and P2 mollifiers only".into(),
        )),
    }
}

fn check_mollifier_matches_rule(
    mollifier: &MollifierSpec,
    t_count: u64,
    theta: Option<f64>,
    spec: ProgressionSpec,
    q: u32,
) -> Result<()> {
    let expected = mollifier_for_run(mollifier.label, t_count, theta, spec, q)?;
    let scale = expected.x.max(1.0);
    if (mollifier.x - expected.x).abs() > 1e-9 * scale {
        return Err(Error::InvalidArgument(format!(
            "mollifier X = {} does not match the {} rule value {}",
            mollifier.x,
            label_str(mollifier.label),
            expected.x
        )));
    }
    Ok(())
}

pub(crate) fn eval_l_at(
    s: ComplexPoint,
    chi: &DirichletCharacter,
    plan: EvalPlan,
    x: f64,
    constants: &FrozenConstants,
) -> Result<EvaluatedValue> {
    match plan {
        EvalPlan::Oracle => lfunc::l_via_hurwitz(s, chi),
        EvalPlan::Truncated { c } | EvalPlan::Hybrid { c } => {
            let plan = TruncationPlan::new(c, x, constants.truncation_constant_factor)?;
            lfunc::l_truncated(s, chi, &plan)
        }
    }
}

fn moment_pass(
    t_count: u64,
    spec: ProgressionSpec,
    chi: &DirichletCharacter,
    mollifier: &MollifierSpec,
    plan: EvalPlan,
    sieve: &SieveTable,
    constants: &FrozenConstants,
) -> Result<MomentReport> {
    if chi.is_principal {
        return Err(Error::InvalidArgument(
            "moments are defined for non-principal characters".into(),
        ));
    }
    if t_count == 0 {
        return Err(Error::InvalidArgument("T must be positive".into()));
    }
    let x_trunc = truncation_length(mollifier.label, t_count, spec)?;

    let evals: Vec<(EvaluatedValue, Complex64)> = (1..=t_count as i64)
        .into_par_iter()
        .map(|k| {
            let s_k = point_of_progression(spec, k);
            let l_k = eval_l_at(s_k, chi, plan, x_trunc, constants)?;
            let m_k = eval_mollifier(s_k, chi, mollifier, sieve)?;
            Ok((l_k, m_k))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut s1 = ComplexKahan::new();
    let mut s2 = KahanSum::new();
    let mut budget = KahanSum::new();
    let mut nonzero = 0u64;
    let mut undetermined = 0u64;
    for (l_k, m_k) in &evals {
        let product = l_k.value * m_k;
        s1.add(product);
        s2.add(product.norm_sqr());
        budget.add(m_k.norm() * l_k.error_radius);
        if l_k.value.norm() > l_k.error_radius {
            nonzero += 1;
        } else {
            undetermined += 1;
        }
    }
    let s1 = s1.total();
    let s2 = s2.total();
    Ok(MomentReport {
        t_count,
        alpha: spec.alpha,
        beta: spec.beta,
        mollifier: MollifierSummary {
            label: label_str(mollifier.label),
            x: mollifier.x,
            theta: None,
            poly: mollifier.poly_coeffs.clone(),
        },
        s1: [s1.re, s1.im],
        s2,
        cs_lower_bound: if s2 > 0.0 { s1.norm_sqr() / s2 } else { 0.0 },
        nonzero_count: nonzero,
        undetermined_count: undetermined,
        per_point_error_budget: budget.total(),
        plan: PlanRecord {
            method: plan.describe(),
            c: plan.c(),
            x: plan.c().map(|_| x_trunc),
            constant_factor: constants.truncation_constant_factor,
        },
    })
}

/// S₁(T,P) with the proof's U- and X-rules.  For P1 any θ in (0,1) is
/// admissible; the mollifier must have been built by the matching rule.
#[allow(clippy::too_many_arguments)]
pub fn first_moment(
    t_count: u64,
    spec: ProgressionSpec,
    chi: &DirichletCharacter,
    mollifier: &MollifierSpec,
    theta: Option<f64>,
    plan: EvalPlan,
    sieve: &SieveTable,
    constants: &FrozenConstants,
) -> Result<MomentReport> {
    if mollifier.label == PolyLabel::P1 {
        let theta = theta
            .ok_or_else(|| Error::InvalidArgument("the P1 run needs theta in (0, 1)".into()))?;
        if !(0.0 < theta && theta < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "first-moment theta must lie in (0, 1), got {theta}"
            )));
        }
    }
    check_mollifier_matches_rule(mollifier, t_count, theta, spec, chi.modulus)?;
    let mut report = moment_pass(t_count, spec, chi, mollifier, plan, sieve, constants)?;
    report.mollifier.theta = theta.filter(|_| mollifier.label == PolyLabel::P1);
    Ok(report)
}

/// S₂(T,P); the second-moment bound for P1 needs the tighter θ ∈ (0, 1/2).
#[allow(clippy::too_many_arguments)]
pub fn second_moment(
    t_count: u64,
    spec: ProgressionSpec,
    chi: &DirichletCharacter,
    mollifier: &MollifierSpec,
    theta: Option<f64>,
    plan: EvalPlan,
    sieve: &SieveTable,
    constants: &FrozenConstants,
) -> Result<MomentReport> {
    if mollifier.label == PolyLabel::P1 {
        let theta = theta
            .ok_or_else(|| Error::InvalidArgument("the P1 run needs theta in (0, 1/2)".into()))?;
        if !(0.0 < theta && theta < 0.5) {
            return Err(Error::InvalidArgument(format!(
                "second-moment theta must lie in (0, 1/2), got {theta}"
            )));
        }
    }
    check_mollifier_matches_rule(mollifier, t_count, theta, spec, chi.modulus)?;
    let mut report = moment_pass(t_count, spec, chi, mollifier, plan, sieve, constants)?;
    report.mollifier.theta = theta.filter(|_| mollifier.label == PolyLabel::P1);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nonzero,
    Undetermined,
}

/// Numeric stand-in for "L(s_k,χ) ≠ 0": nonzero exactly when the value
/// clears its own error radius.
#[derive(Debug, Clone, Copy)]
pub struct NonvanishingVerdict {
    pub k: u64,
    pub t: f64,
    pub value: Complex64,
    pub error_radius: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanSummary {
    #[serde(rename = "T")]
    pub t_count: u64,
    pub alpha: f64,
    pub beta: f64,
    pub nonzero_count: u64,
    pub undetermined_count: u64,
    /// nonzeroCount / (T / log T).
    #[serde(rename = "ratio")]
    pub ratio_vs_t_over_log_t: f64,
    pub retry_cap: u32,
    pub x_base: f64,
    pub plan: PlanRecord,
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub verdicts: Vec<NonvanishingVerdict>,
    pub summary: ScanSummary,
}

fn verdict_for(value: &EvaluatedValue) -> Verdict {
    if value.value.norm() > value.error_radius {
        Verdict::Nonzero
    } else {
        Verdict::Undetermined
    }
}

/// Decide one point under the scan policy: truncated evaluation with x
/// doubling while undetermined, then (for hybrid plans) one oracle pass.
fn scan_point(
    s: ComplexPoint,
    chi: &DirichletCharacter,
    plan: EvalPlan,
    constants: &FrozenConstants,
) -> Result<EvaluatedValue> {
    let c = match plan {
        EvalPlan::Oracle => return lfunc::l_via_hurwitz(s, chi),
        EvalPlan::Truncated { c } | EvalPlan::Hybrid { c } => c,
    };
    // Start above the admissibility threshold so every retry is legal.
    let mut x = constants.scan_x_base.max(1.25 * c * s.t.abs() / (2.0 * PI));
    let mut best: Option<EvaluatedValue> = None;
    for _ in 0..=constants.scan_retry_cap {
        let attempt = lfunc::l_truncated(
            s,
            chi,
            &TruncationPlan::new(c, x, constants.truncation_constant_factor)?,
        )?;
        let decided = verdict_for(&attempt) == Verdict::Nonzero;
        best = Some(attempt);
        if decided {
            break;
        }
        x *= 2.0;
    }
    let best = best.expect("at least one attempt runs");
    if verdict_for(&best) == Verdict::Undetermined && matches!(plan, EvalPlan::Hybrid { .. }) {
        return lfunc::l_via_hurwitz(s, chi);
    }
    Ok(best)
}

/// Per-k nonvanishing verdicts along the progression, plus the summary with
/// the count ratio against T/log T.  Undetermined is an outcome, not an error.
pub fn nonvanishing_scan(
    t_count: u64,
    spec: ProgressionSpec,
    chi: &DirichletCharacter,
    plan: EvalPlan,
    constants: &FrozenConstants,
) -> Result<ScanOutcome> {
    if chi.is_principal {
        return Err(Error::InvalidArgument(
            "the scan is defined for non-principal characters".into(),
        ));
    }
    if t_count == 0 {
        return Err(Error::InvalidArgument("T must be positive".into()));
    }
    let verdicts: Vec<NonvanishingVerdict> = (1..=t_count as i64)
        .into_par_iter()
        .map(|k| {
            let s_k = point_of_progression(spec, k);
            let ev = scan_point(s_k, chi, plan, constants)?;
            Ok(NonvanishingVerdict {
                k: k as u64,
                t: s_k.t,
                value: ev.value,
                error_radius: ev.error_radius,
                verdict: verdict_for(&ev),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let nonzero = verdicts
        .iter()
        .filter(|v| v.verdict == Verdict::Nonzero)
        .count() as u64;
    let undetermined = t_count - nonzero;
    let t_over_log_t = t_count as f64 / (t_count as f64).ln().max(1e-300);
    let summary = ScanSummary {
        t_count,
        alpha: spec.alpha,
        beta: spec.beta,
        nonzero_count: nonzero,
        undetermined_count: undetermined,
        ratio_vs_t_over_log_t: if t_count > 1 {
            nonzero as f64 / t_over_log_t
        } else {
            nonzero as f64
        },
        retry_cap: constants.scan_retry_cap,
        x_base: constants.scan_x_base,
        plan: PlanRecord {
            method: plan.describe(),
            c: plan.c(),
            x: None,
            constant_factor: constants.truncation_constant_factor,
        },
    };
    Ok(ScanOutcome { verdicts, summary })
}

/// Distance from x to the nearest integer; exactly 1/2 at half-integers.
pub fn nearest_integer_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Σ_{k=1}^T n^{-2πikβ} in closed form.  The phase per step is β log n; only
/// its fractional part matters, and the reduction keeps that part exact:
/// the product β·log n is split with an FMA into head and rounding residue,
/// and k·u is reduced modulo 2 by integer-exact subtraction.
pub fn geometric_progression_sum(n: u64, beta: f64, t_count: u64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if !(beta > 0.0) || t_count == 0 {
        return Err(Error::InvalidArgument(format!(
            "need beta > 0 and T >= 1, got beta = {beta}, T = {t_count}"
        )));
    }
    let t_f = t_count as f64;
    if n == 1 {
        return Ok(Complex64::new(t_f, 0.0));
    }
    let log_n = (n as f64).ln();
    let phi_hi = beta * log_n;
    let phi_lo = beta.mul_add(log_n, -phi_hi);
    let u = (phi_hi - phi_hi.round()) + phi_lo;
    if u == 0.0 {
        return Ok(Complex64::new(t_f, 0.0));
    }
    // sin(π·ku) for k = T and T+1 with ku reduced mod 2: the head product is
    // below 2^53 so subtracting the rounded even part is exact.
    let reduce_mod_two = |k: f64| -> f64 {
        let hi = k * u;
        let lo = k.mul_add(u, -hi);
        (hi - 2.0 * (hi / 2.0).round()) + lo
    };
    let tu = reduce_mod_two(t_f);
    let t1u = reduce_mod_two(t_f + 1.0);
    let magnitude = (PI * tu).sin() / (PI * u).sin();
    Ok(Complex64::from_polar(1.0, -PI * t1u) * magnitude)
}

/// min{T, 1/(2‖β log n‖)}, the envelope the geometric sum must respect.
pub fn geometric_sum_bound(n: u64, beta: f64, t_count: u64) -> f64 {
    if n <= 1 {
        return t_count as f64;
    }
    let dist = nearest_integer_distance(beta * (n as f64).ln());
    if dist == 0.0 {
        return t_count as f64;
    }
    (t_count as f64).min(1.0 / (2.0 * dist))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FirstNonzeroReport {
    pub k: u64,
    pub t: f64,
    pub theorem_bound: f64,
    pub bound_case: &'static str,
    pub safety_factor: f64,
    pub value: [f64; 2],
    pub error_radius: f64,
}

/// The case formulas for the guaranteed first-nonzero range, evaluated bare
/// (the unspecified proportionality constant is not invented here):
/// b ≥ 2π uses b³q·exp(D·log(b³q)/loglog(b³q)); 0 < b ≤ 2π uses
/// b⁻¹q·exp(D·log q/loglog q).
pub fn first_nonzero_theorem_bound(q: u32, b: f64, d: f64) -> Result<(f64, &'static str)> {
    if !(b > 0.0) {
        return Err(Error::InvalidArgument(format!("need b > 0, got {b}")));
    }
    if b >= 2.0 * PI {
        let v = b.powi(3) * q as f64;
        let ll = v.ln().ln();
        if ll <= 0.0 {
            return Err(Error::Domain(format!(
                "loglog({v}) is not positive; the bound formula needs b^3 q > e"
            )));
        }
        Ok((v * (d * v.ln() / ll).exp(), "b >= 2pi"))
    } else {
        let lq = (q as f64).ln();
        if lq <= 1.0 {
            return Err(Error::Domain(format!(
                "loglog(q) is not positive for q = {q}; the bound formula needs q >= 3"
            )));
        }
        Ok((
            (1.0 / b) * q as f64 * (d * lq / lq.ln()).exp(),
            "0 < b <= 2pi",
        ))
    }
}

/// Walks k = 1, 2, ... along t_k = a + kb until the scan policy certifies a
/// nonzero value; reports the index together with the bare theorem bound.
pub fn first_nonzero_index(
    chi: &DirichletCharacter,
    a: f64,
    b: f64,
    d: f64,
    plan: EvalPlan,
    constants: &FrozenConstants,
) -> Result<FirstNonzeroReport> {
    if chi.is_principal {
        return Err(Error::InvalidArgument(
            "the search is defined for non-principal characters".into(),
        ));
    }
    if !(0.0 <= a && a < b) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= a < b, got a = {a}, b = {b}"
        )));
    }
    if !(d > 8.0 * (2.0f64).ln()) {
        return Err(Error::InvalidArgument(format!(
            "need D > 8 log 2 = {:.6}, got {d}",
            8.0 * (2.0f64).ln()
        )));
    }
    let (bound, case) = first_nonzero_theorem_bound(chi.modulus, b, d)?;
    let cap = (constants.first_nonzero_safety_factor * bound)
        .min(constants.first_nonzero_scan_cap as f64)
        .floor()
        .max(1.0) as u64;
    let (spec, _) = ProgressionSpec::from_offsets(a, b)?;
    for k in 1..=cap {
        let s_k = point_of_progression(spec, k as i64);
        let ev = scan_point(s_k, chi, plan, constants)?;
        if verdict_for(&ev) == Verdict::Nonzero {
            return Ok(FirstNonzeroReport {
                k,
                t: s_k.t,
                theorem_bound: bound,
                bound_case: case,
                safety_factor: constants.first_nonzero_safety_factor,
                value: [ev.value.re, ev.value.im],
                error_radius: ev.error_radius,
            });
        }
    }
    Err(Error::Exhausted(format!(
        "no certified nonzero value for k <= {cap} (theorem bound {bound:.6e})"
    )))
}

/// Large-sieve style check over a κ-well-spaced grid:
/// Σ_u |F(u)G(u)|² ≤ (1/κ)·I_FG + 2·√I_FG·√I_FG' + 2·√I_FG·√I_F'G,
/// with F the truncated L series at a fixed length, G the mollifier, and the
/// derivatives taken term-wise in t (factor -i·log n per term).
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GallagherReport {
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    pub kappa: f64,
    pub grid_len: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs/lhs; at least 1 when the inequality holds.
    pub margin: f64,
    pub integral_fg: f64,
    pub integral_fg_prime: f64,
    pub integral_f_prime_g: f64,
    pub x_truncation: f64,
    pub holds: bool,
}

struct PolyEvaluators<'a> {
    chi: &'a DirichletCharacter,
    mollifier: &'a MollifierSpec,
    deriv_spec: MollifierSpec,
    sieve: &'a SieveTable,
    x: f64,
    constants: &'a FrozenConstants,
    c: f64,
}

impl<'a> PolyEvaluators<'a> {
    fn f(&self, t: f64) -> Complex64 {
        let plan = TruncationPlan {
            c: self.c,
            x: self.x,
            constant_factor: self.constants.truncation_constant_factor,
        };
        lfunc::l_truncated(ComplexPoint::new(0.5, t), self.chi, &plan)
            .map(|e| e.value)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// dF/dt = Σ χ(n)(-i log n) n^{-1/2-it}, same truncation length.
    fn f_prime(&self, t: f64) -> Complex64 {
        let sc = Complex64::new(0.5, t);
        let cutoff = (self.chi.modulus as f64 * self.x).floor() as u64;
        let mut acc = ComplexKahan::new();
        for n in 1..=cutoff {
            if self.chi.exponent(n as i64).is_none() {
                continue;
            }
            let ln_n = (n as f64).ln();
            acc.add(self.chi.eval(n as i64) * Complex64::new(0.0, -ln_n) * (-sc * ln_n).exp());
        }
        acc.total()
    }

    fn g(&self, t: f64) -> Complex64 {
        eval_mollifier(
            ComplexPoint::new(0.5, t),
            self.chi,
            self.mollifier,
            self.sieve,
        )
        .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// dG/dt term-wise: log m = log X·(1 - y) folds into the polynomial, so
    /// G' = -i·log X · M(s, (1-y)P(y)).
    fn g_prime(&self, t: f64) -> Complex64 {
        let v = eval_mollifier(
            ComplexPoint::new(0.5, t),
            self.chi,
            &self.deriv_spec,
            self.sieve,
        )
        .unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        Complex64::new(0.0, -self.mollifier.x.ln()) * v
    }
}

/// Coefficients of (1 - y)·P(y).
fn one_minus_y_times(poly: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; poly.len() + 1];
    for (j, &c) in poly.iter().enumerate() {
        out[j] += c;
        out[j + 1] -= c;
    }
    out
}

const GALLAGHER_QUAD_TOLERANCE: f64 = 1e-6;

#[allow(clippy::too_many_arguments)]
pub fn gallagher_inequality_check(
    t1: f64,
    t2: f64,
    kappa: f64,
    grid: &[f64],
    chi: &DirichletCharacter,
    mollifier: &MollifierSpec,
    plan: EvalPlan,
    sieve: &SieveTable,
    constants: &FrozenConstants,
) -> Result<GallagherReport> {
    if chi.is_principal {
        return Err(Error::InvalidArgument(
            "the check is defined for non-principal characters".into(),
        ));
    }
    if !(kappa > 0.0) || !(t2 > t1) {
        return Err(Error::InvalidArgument(format!(
            "need kappa > 0 and T2 > T1, got kappa = {kappa}, [{t1}, {t2}]"
        )));
    }
    // Relative slack of a few ulps: grids built as k·kappa land one rounding
    // error under the exact spacing.
    let spacing_floor = kappa * (1.0 - 1e-12);
    for w in grid.windows(2) {
        if w[1] - w[0] < spacing_floor {
            return Err(Error::InvalidArgument(format!(
                "grid is not kappa-well-spaced: gap {} < {kappa}",
                w[1] - w[0]
            )));
        }
    }
    if let (Some(&lo), Some(&hi)) = (grid.first(), grid.last()) {
        if lo < t1 + kappa / 2.0 || hi > t2 - kappa / 2.0 {
            return Err(Error::InvalidArgument(format!(
                "grid must lie inside [T1 + kappa/2, T2 - kappa/2] = [{}, {}]",
                t1 + kappa / 2.0,
                t2 - kappa / 2.0
            )));
        }
    }
    let c = plan.c().unwrap_or(2.0);
    // One truncation length for the whole t-range keeps F a single Dirichlet
    // polynomial, so the integrands are smooth and the derivative is exact.
    let t_max = t1.abs().max(t2.abs());
    let x = constants.scan_x_base.max(1.25 * c * t_max / (2.0 * PI));
    let evals = PolyEvaluators {
        chi,
        mollifier,
        deriv_spec: MollifierSpec::custom(mollifier.x, one_minus_y_times(&mollifier.poly_coeffs))?,
        sieve,
        x,
        constants,
        c,
    };

    let mut lhs = KahanSum::new();
    for &u in grid {
        lhs.add((evals.f(u) * evals.g(u)).norm_sqr());
    }

    // Panel width tied to the top frequency log(qx) of |F|², so the adaptive
    // pass starts above the Nyquist density and cannot alias.
    let top_freq = (chi.modulus as f64 * x).ln().max(mollifier.x.ln().max(1.0));
    let step = (PI / top_freq).min(t2 - t1);
    let panels = ((t2 - t1) / step).ceil() as usize;
    let cuts: Vec<f64> = (1..panels)
        .map(|i| t1 + (t2 - t1) * i as f64 / panels as f64)
        .collect();
    let integral = |f: &dyn Fn(f64) -> Complex64| -> Result<f64> {
        quadrature::integrate_piecewise(
            |t| Complex64::new(f(t).norm_sqr(), 0.0),
            t1,
            t2,
            &cuts,
            GALLAGHER_QUAD_TOLERANCE,
        )
        .map(|v| v.re)
    };
    let i_fg = integral(&|t| evals.f(t) * evals.g(t))?;
    let i_fg_prime = integral(&|t| evals.f(t) * evals.g_prime(t))?;
    let i_f_prime_g = integral(&|t| evals.f_prime(t) * evals.g(t))?;

    let rhs = i_fg / kappa
        + 2.0 * i_fg.sqrt() * i_fg_prime.sqrt()
        + 2.0 * i_fg.sqrt() * i_f_prime_g.sqrt();
    let lhs = lhs.total();
    Ok(GallagherReport {
        t1,
        t2,
        kappa,
        grid_len: grid.len(),
        lhs,
        rhs,
        margin: if lhs > 0.0 { rhs / lhs } else { f64::INFINITY },
        integral_fg: i_fg,
        integral_fg_prime: i_fg_prime,
        integral_f_prime_g: i_f_prime_g,
        x_truncation: x,
        holds: lhs <= rhs * (1.0 + GALLAGHER_QUAD_TOLERANCE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;
    use crate::sieve::build_sieve;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn chi3() -> DirichletCharacter {
        DirichletCharacter::from_conrey(3, 2).unwrap()
    }

    fn test_constants() -> FrozenConstants {
        constants::load().unwrap().constants
    }

    #[test]
    fn progression_points_match_hand_values() {
        let spec = ProgressionSpec::new(0.0, 1.0).unwrap();
        let p = point_of_progression(spec, 1);
        assert_eq!(p.sigma, 0.5);
        assert!((p.t - 2.0 * PI).abs() <= 1e-15);

        let spec = ProgressionSpec::new(0.5, 2.0).unwrap();
        let p = point_of_progression(spec, 3);
        assert!((p.t - 13.0 * PI).abs() <= 1e-12);

        let (spec, flipped) = ProgressionSpec::from_offsets(1.0, 2.0).unwrap();
        assert!(!flipped);
        assert!((spec.alpha - 1.0 / (2.0 * PI)).abs() <= 1e-15);
        assert!((spec.beta - 1.0 / PI).abs() <= 1e-15);
        let p = point_of_progression(spec, 5);
        assert!((p.t - 11.0).abs() <= 1e-12);
    }

    #[test]
    fn negative_offset_flips() {
        let (spec, flipped) = ProgressionSpec::from_offsets(-1.0, -2.0).unwrap();
        assert!(flipped);
        assert!(spec.beta > 0.0);
        assert!((point_of_progression(spec, 5).t - 11.0).abs() <= 1e-12);
    }

    #[test]
    fn single_point_moment_is_the_direct_product() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let spec = ProgressionSpec::new(0.0, 1.0).unwrap();
        let chi = chi3();
        let mollifier = mollifier_for_run(PolyLabel::P2, 1, None, spec, 3).unwrap();
        let report = first_moment(
            1,
            spec,
            &chi,
            &mollifier,
            None,
            EvalPlan::Oracle,
            &sieve,
            &consts,
        )
        .unwrap();
        let s_1 = point_of_progression(spec, 1);
        let l = lfunc::l_via_hurwitz(s_1, &chi).unwrap().value;
        let m = eval_mollifier(s_1, &chi, &mollifier, &sieve).unwrap();
        let direct = l * m;
        assert!((report.s1_complex() - direct).norm() <= 1e-12);
        assert!((report.s2 - direct.norm_sqr()).abs() <= 1e-12);
    }

    #[test]
    fn truncated_moment_matches_oracle_brute_force() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let spec = ProgressionSpec::new(0.0, 1.0).unwrap();
        let chi = chi3();
        let t_count = 50u64;
        let mollifier = mollifier_for_run(PolyLabel::P2, t_count, None, spec, 3).unwrap();
        let report = first_moment(
            t_count,
            spec,
            &chi,
            &mollifier,
            None,
            EvalPlan::Truncated { c: 2.0 },
            &sieve,
            &consts,
        )
        .unwrap();

        // Brute force with the independent oracle evaluator.
        let mut s1 = ComplexKahan::new();
        for k in 1..=t_count as i64 {
            let s_k = point_of_progression(spec, k);
            let l = lfunc::l_via_hurwitz(s_k, &chi).unwrap();
            let m = eval_mollifier(s_k, &chi, &mollifier, &sieve).unwrap();
            s1.add(l.value * m);
        }
        let gap = (report.s1_complex() - s1.total()).norm();
        assert!(
            gap <= report.per_point_error_budget + 1e-8,
            "gap {gap:e} vs budget {:e}",
            report.per_point_error_budget
        );
    }

    #[test]
    fn cauchy_schwarz_holds_on_reports() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let spec = ProgressionSpec::new(0.25, 0.75).unwrap();
        let chi = DirichletCharacter::from_conrey(5, 2).unwrap();
        for t_count in [5u64, 40] {
            let mollifier = mollifier_for_run(PolyLabel::P2, t_count, None, spec, 5).unwrap();
            let report = second_moment(
                t_count,
                spec,
                &chi,
                &mollifier,
                None,
                EvalPlan::Truncated { c: 2.0 },
                &sieve,
                &consts,
            )
            .unwrap();
            assert!(report.s1_complex().norm_sqr() <= t_count as f64 * report.s2 * (1.0 + 1e-9));
            assert!(
                report.cs_lower_bound
                    <= (report.nonzero_count + report.undetermined_count) as f64 + 1e-9
            );
        }
    }

    #[test]
    fn moment_reports_are_bit_identical_across_runs() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let spec = ProgressionSpec::new(0.0, 1.0).unwrap();
        let chi = chi3();
        let mollifier = mollifier_for_run(PolyLabel::P2, 30, None, spec, 3).unwrap();
        let run = || {
            first_moment(
                30,
                spec,
                &chi,
                &mollifier,
                None,
                EvalPlan::Truncated { c: 2.0 },
                &sieve,
                &consts,
            )
            .unwrap()
        };
        let a = run();
        let b = run();
        assert_eq!(a.s1[0].to_bits(), b.s1[0].to_bits());
        assert_eq!(a.s1[1].to_bits(), b.s1[1].to_bits());
        assert_eq!(a.s2.to_bits(), b.s2.to_bits());
    }

    #[test]
    fn scan_counts_and_policy() {
        let consts = test_constants();
        let spec = ProgressionSpec::new(0.0, 1.0).unwrap();
        let outcome =
            nonvanishing_scan(25, spec, &chi3(), EvalPlan::Hybrid { c: 2.0 }, &consts).unwrap();
        assert_eq!(outcome.verdicts.len(), 25);
        for v in &outcome.verdicts {
            match v.verdict {
                Verdict::Nonzero => assert!(v.value.norm() > v.error_radius),
                Verdict::Undetermined => assert!(v.value.norm() <= v.error_radius),
            }
        }
        assert_eq!(
            outcome.summary.nonzero_count + outcome.summary.undetermined_count,
            25
        );
    }

    #[test]
    fn geometric_sum_trivial_cases() {
        assert_eq!(
            geometric_progression_sum(1, 0.7, 100).unwrap(),
            Complex64::new(100.0, 0.0)
        );
        // β·log n exactly integral: n = e^{k/β} is not representable, but a
        // direct construction with u = 0 goes through the n = 1 path; the
        // closed form must also survive tiny |u| without blowup.
        let v = geometric_progression_sum(2, 1.0 / (2.0f64).ln(), 10).unwrap();
        assert!((v - Complex64::new(10.0, 0.0)).norm() <= 1e-6);
    }

    #[test]
    fn geometric_sum_matches_direct_summation() {
        let v = geometric_progression_sum(2, 1.0, 100).unwrap();
        let mut direct = Complex64::new(0.0, 0.0);
        let phase = -2.0 * PI * (2.0f64).ln();
        for k in 1..=100 {
            direct += Complex64::from_polar(1.0, phase * k as f64);
        }
        assert!((v - direct).norm() <= 1e-10);
        assert!(v.norm() <= geometric_sum_bound(2, 1.0, 100) + 1e-9);
    }

    #[test]
    fn geometric_sum_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut checked = 0u32;
        while checked < 2000 {
            let n = rng.gen_range(2u64..=10_000);
            let beta = rng.gen_range(0.01f64..5.0);
            let t_count = rng.gen_range(1u64..=500);
            let dist = nearest_integer_distance(beta * (n as f64).ln());
            let v = geometric_progression_sum(n, beta, t_count).unwrap();
            assert!(
                v.norm() <= geometric_sum_bound(n, beta, t_count) * (1.0 + 1e-9),
                "bound breach at n={n} beta={beta} T={t_count}"
            );
            if dist < 1e-4 {
                continue; // bound-only check near resonance
            }
            let step = Complex64::from_polar(1.0, -2.0 * PI * (beta * (n as f64).ln() % 1.0));
            let mut direct = Complex64::new(0.0, 0.0);
            let mut pow = Complex64::new(1.0, 0.0);
            for _ in 0..t_count {
                pow *= step;
                direct += pow;
            }
            assert!(
                (v - direct).norm() <= 1e-9 * (1.0 + direct.norm()),
                "n={n} beta={beta} T={t_count}: {v} vs {direct}"
            );
            checked += 1;
        }
    }

    #[test]
    fn half_integer_distance_is_half() {
        assert_eq!(nearest_integer_distance(2.5), 0.5);
        assert_eq!(nearest_integer_distance(-0.5), 0.5);
        assert_eq!(nearest_integer_distance(3.0), 0.0);
    }

    #[test]
    fn first_nonzero_at_k_equals_one() {
        let consts = test_constants();
        let report = first_nonzero_index(
            &chi3(),
            0.0,
            2.0 * PI,
            6.0,
            EvalPlan::Hybrid { c: 2.0 },
            &consts,
        )
        .unwrap();
        assert_eq!(report.k, 1);
        assert!((report.t - 2.0 * PI).abs() <= 1e-12);
        let v = (2.0 * PI).powi(3) * 3.0;
        let expected = v * (6.0 * v.ln() / v.ln().ln()).exp();
        assert!((report.theorem_bound - expected).abs() <= 1e-6 * expected);
    }

    #[test]
    fn first_nonzero_validations() {
        let consts = test_constants();
        let chi = chi3();
        assert!(first_nonzero_index(&chi, 1.0, 0.5, 6.0, EvalPlan::Oracle, &consts).is_err());
        assert!(first_nonzero_index(&chi, 0.0, 1.0, 5.0, EvalPlan::Oracle, &consts).is_err());
    }

    #[test]
    fn small_bound_case_uses_reciprocal_formula() {
        let (bound, case) = first_nonzero_theorem_bound(5, 1.0, 6.0).unwrap();
        assert_eq!(case, "0 < b <= 2pi");
        let lq = 5.0f64.ln();
        let expected = 5.0 * (6.0 * lq / lq.ln()).exp();
        assert!((bound - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn gallagher_inequality_small_case() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let chi = chi3();
        let mollifier = MollifierSpec::p1(4.8).unwrap();
        // Empty grid: LHS = 0.
        let report = gallagher_inequality_check(
            40.0,
            60.0,
            2.0 * PI,
            &[],
            &chi,
            &mollifier,
            EvalPlan::Truncated { c: 2.0 },
            &sieve,
            &consts,
        )
        .unwrap();
        assert_eq!(report.lhs, 0.0);
        assert!(report.holds);

        // Single progression point.
        let report = gallagher_inequality_check(
            40.0,
            60.0,
            2.0 * PI,
            &[8.0 * 2.0 * PI],
            &chi,
            &mollifier,
            EvalPlan::Truncated { c: 2.0 },
            &sieve,
            &consts,
        )
        .unwrap();
        assert!(report.lhs > 0.0);
        assert!(report.holds, "margin {}", report.margin);
    }

    #[test]
    fn gallagher_rejects_tight_grids() {
        let sieve = build_sieve(100).unwrap();
        let consts = test_constants();
        let r = gallagher_inequality_check(
            40.0,
            60.0,
            2.0 * PI,
            &[50.0, 51.0],
            &chi3(),
            &MollifierSpec::p1(4.8).unwrap(),
            EvalPlan::Truncated { c: 2.0 },
            &sieve,
            &consts,
        );
        assert!(r.is_err());
    }
}
