//! Explicit-bound ledger: exact min-sum evaluations against their bound
//! shapes, the interval boundaries E_j = ⌊e^{j/β}⌋, the slow-growth weight
//! w_L(x) = exp(L·log x/log log x), and the mollified second-moment main
//! terms with a quadrature cross-check.
//!
//! Every bound here is an asymptotic with an unnamed absolute constant.  The
//! ledger evaluates each bound shape with constant 1 and records the observed
//! exact/bound ratio; the ceilings stored in the frozen-constants file are
//! empirical, not derived.

use crate::characters::DirichletCharacter;
use crate::constants::FrozenConstants;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::lfunc::{self, ComplexPoint};
use crate::mollifier::{eval_mollifier, MollifierSpec};
use crate::moments::{self, nearest_integer_distance, EvalPlan, PlanRecord};
use crate::quadrature;
use crate::sieve::SieveTable;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Largest admissible B in `min_sum_exact`; direct summation only.
pub const MIN_SUM_CAP: f64 = 1.0e8;

/// Boundary E_j = ⌊e^{j/β}⌋ of the j-th resonance interval.  Above 2⁵³ the
/// result is the floor of the rounded exponential, not the exact integer
/// part.
pub fn ej_boundary(beta: f64, j: u32) -> Result<u64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    let v = (j as f64 / beta).exp();
    if !v.is_finite() || v >= u64::MAX as f64 {
        return Err(Error::Range(format!(
            "e^(j/beta) = e^({j}/{beta}) exceeds the integer range"
        )));
    }
    Ok(v as u64)
}

/// Σ_{A < n ≤ B} w(n)·min{T, ‖β log n‖⁻¹} summed directly, where w(n) is
/// n^{-1/2} when `weighted` and 1 otherwise.  ‖·‖ is the distance to the
/// nearest integer; a vanishing distance contributes the cap T through the
/// IEEE min against +∞.
pub fn min_sum_exact(a: f64, b: f64, beta: f64, t: f64, weighted: bool) -> Result<f64> {
    validate_min_sum_domain(a, b, beta, t)?;
    if b > MIN_SUM_CAP {
        return Err(Error::InvalidArgument(format!(
            "B = {b} exceeds the direct-summation cap {MIN_SUM_CAP:e}"
        )));
    }
    let lo = a.floor() as u64 + 1;
    let hi = b.floor() as u64;
    let mut acc = KahanSum::new();
    for n in lo..=hi {
        let nf = n as f64;
        let term = t.min(1.0 / nearest_integer_distance(beta * nf.ln()));
        acc.add(if weighted { term / nf.sqrt() } else { term });
    }
    Ok(acc.total())
}

/// Which bound shape to evaluate against the exact sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinSumVariant {
    /// Weighted sum over (A, B], any β > 0:
    /// (e^{1/β}/(e^{1/2β}-1))·(T·A^{-1/2} + (e^{1/β}/β)·B^{1/2}(log B + 1/β)).
    General,
    /// Weighted sum, β ≥ 1: βT·A^{-1/2} + B^{1/2}·log B.
    BetaGe1,
    /// Unweighted sum over one resonance interval [E_j, E_{j+1}]:
    /// T + (e^{1/β}/β)·((j+1)/β)·e^{j/β}.
    IntervalLemma { j: u32 },
}

impl MinSumVariant {
    pub fn label(self) -> String {
        match self {
            MinSumVariant::General => "general".into(),
            MinSumVariant::BetaGe1 => "beta-ge-1".into(),
            MinSumVariant::IntervalLemma { j } => format!("interval-lemma-j{j}"),
        }
    }

    /// Whether the matching exact sum carries the n^{-1/2} weight.
    pub fn weighted(self) -> bool {
        !matches!(self, MinSumVariant::IntervalLemma { .. })
    }
}

/// The bound shape evaluated with absolute constant 1.
pub fn min_sum_bound_shape(
    a: f64,
    b: f64,
    beta: f64,
    t: f64,
    variant: MinSumVariant,
) -> Result<f64> {
    validate_min_sum_domain(a, b, beta, t)?;
    match variant {
        MinSumVariant::General => {
            let e1b = (1.0 / beta).exp();
            let pre = e1b / ((0.5 / beta).exp() - 1.0);
            Ok(pre * (t / a.sqrt() + (e1b / beta) * b.sqrt() * (b.ln() + 1.0 / beta)))
        }
        MinSumVariant::BetaGe1 => {
            if beta < 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "this shape needs beta >= 1, got {beta}"
                )));
            }
            Ok(beta * t / a.sqrt() + b.sqrt() * b.ln())
        }
        MinSumVariant::IntervalLemma { j } => {
            let j1 = j
                .checked_add(1)
                .ok_or_else(|| Error::Range("interval index overflow".into()))?;
            let ej = ej_boundary(beta, j)?;
            let ej1 = ej_boundary(beta, j1)?;
            if a != ej as f64 || b != ej1 as f64 {
                return Err(Error::InvalidArgument(format!(
                    "interval shape needs A = E_{j} = {ej} and B = E_{j1} = {ej1}, got A = {a}, B = {b}"
                )));
            }
            let jf = j as f64;
            Ok(t + ((1.0 / beta).exp() / beta) * ((jf + 1.0) / beta) * (jf / beta).exp())
        }
    }
}

/// One ledger row: the exact sum, the shape, and their ratio.
#[derive(Debug, Clone, Serialize)]
pub struct MinSumRecord {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub beta: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub variant: String,
    pub weighted: bool,
    #[serde(rename = "exactValue")]
    pub exact: f64,
    #[serde(rename = "boundValue")]
    pub bound: f64,
    pub ratio: f64,
}

pub fn min_sum_record(
    a: f64,
    b: f64,
    beta: f64,
    t: f64,
    variant: MinSumVariant,
) -> Result<MinSumRecord> {
    let weighted = variant.weighted();
    let exact = min_sum_exact(a, b, beta, t, weighted)?;
    let bound = min_sum_bound_shape(a, b, beta, t, variant)?;
    Ok(MinSumRecord {
        a,
        b,
        beta,
        t,
        variant: variant.label(),
        weighted,
        exact,
        bound,
        ratio: exact / bound,
    })
}

fn validate_min_sum_domain(a: f64, b: f64, beta: f64, t: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || !(1.0 <= a) || !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= A < B, got A = {a}, B = {b}"
        )));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "T must be finite and at least 1, got {t}"
        )));
    }
    Ok(())
}

/// Weighted-sum ledger grid: β ∈ {0.5, 1, 2, 5}, T ∈ {10, 10³},
/// (A, B) ∈ {(1, 10³), (10², 10⁵)}; the general shape everywhere and the
/// β ≥ 1 shape where it applies.  Parallel over tuples, collated in grid
/// order.
pub fn prop42_grid() -> Result<Vec<MinSumRecord>> {
    use rayon::prelude::*;
    let mut tuples = Vec::new();
    for beta in [0.5, 1.0, 2.0, 5.0] {
        for t in [10.0, 1000.0] {
            for (a, b) in [(1.0, 1000.0), (100.0, 100000.0)] {
                tuples.push((a, b, beta, t, MinSumVariant::General));
                if beta >= 1.0 {
                    tuples.push((a, b, beta, t, MinSumVariant::BetaGe1));
                }
            }
        }
    }
    tuples
        .into_par_iter()
        .map(|(a, b, beta, t, v)| min_sum_record(a, b, beta, t, v))
        .collect()
}

/// Per-interval ledger grid: β ∈ {0.5, 1, 2}, j ≤ 20, unweighted sums over
/// [E_j, E_{j+1}], kept inside the direct-summation cap E_{j+1} ≤ 10⁸.
/// Degenerate intervals with E_j = E_{j+1} are skipped.
pub fn lemma41_grid() -> Result<Vec<MinSumRecord>> {
    use rayon::prelude::*;
    let mut tuples = Vec::new();
    for beta in [0.5, 1.0, 2.0] {
        for j in 0..=20u32 {
            let Ok(ej) = ej_boundary(beta, j) else { break };
            let Ok(ej1) = ej_boundary(beta, j + 1) else {
                break;
            };
            if ej1 as f64 > MIN_SUM_CAP {
                break;
            }
            if ej1 <= ej {
                continue;
            }
            for t in [10.0, 1000.0] {
                tuples.push((
                    ej as f64,
                    ej1 as f64,
                    beta,
                    t,
                    MinSumVariant::IntervalLemma { j },
                ));
            }
        }
    }
    tuples
        .into_par_iter()
        .map(|(a, b, beta, t, v)| min_sum_record(a, b, beta, t, v))
        .collect()
}

/// One growth-gauge comparison row.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma61cRecord {
    #[serde(rename = "L")]
    pub l: f64,
    pub eps: f64,
    pub x: f64,
    pub y: f64,
    pub ratio: f64,
}

/// Grid for the inversion check x ≤ C·y/w_{L-ε}(y): L ∈ {0.5, 1, 2} with
/// ε = L/10, x from 10³ to 10⁶, y at several multiples of the hypothesis
/// threshold x·w_L(x).
pub fn lemma61c_grid() -> Result<Vec<Lemma61cRecord>> {
    let mut rows = Vec::new();
    for l in [0.5, 1.0, 2.0] {
        let eps = l / 10.0;
        for x in [1.0e3, 1.0e4, 1.0e5, 1.0e6] {
            let threshold = x * w_function(l, x)?;
            for mult in [1.5, 10.0, 1000.0] {
                let y = threshold * mult;
                rows.push(Lemma61cRecord {
                    l,
                    eps,
                    x,
                    y,
                    ratio: lemma61c_ratio(l, eps, x, y)?,
                });
            }
        }
    }
    Ok(rows)
}

/// w_L(x) = exp(L·log x / log log x), defined for x > e.
pub fn w_function(l: f64, x: f64) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "L must be positive and finite, got {l}"
        )));
    }
    if !(x > std::f64::consts::E) {
        return Err(Error::Domain(format!(
            "w_L needs x > e so that log log x > 0, got {x}"
        )));
    }
    Ok((l * x.ln() / x.ln().ln()).exp())
}

/// Observed constant in the inversion x ≪ y/w_{L-ε}(y), valid under the
/// hypothesis y > x·w_L(x).  Returns x·w_{L-ε}(y)/y, which stays bounded as
/// the grid grows.
pub fn lemma61c_ratio(l: f64, eps: f64, x: f64, y: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < l) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < eps < L, got eps = {eps}, L = {l}"
        )));
    }
    let wx = w_function(l, x)?;
    if !(y > x * wx) {
        return Err(Error::InvalidArgument(format!(
            "hypothesis y > x*w_L(x) fails: y = {y}, x*w_L(x) = {}",
            x * wx
        )));
    }
    Ok(x * w_function(l - eps, y)? / y)
}

/// Polynomial coefficients are in ascending degree order throughout.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc.mul_add(x, c))
}

pub fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &c)| m as f64 * c)
        .collect()
}

pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// ∫₀¹ of the polynomial, exactly: Σ c_m/(m+1).
pub fn poly_integral_unit(coeffs: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    for (m, &c) in coeffs.iter().enumerate() {
        acc.add(c / (m as f64 + 1.0));
    }
    acc.total()
}

/// Shift pair for the off-diagonal main term; both moduli at most 1 and
/// a ≠ b.  Omit the pair to take the a,b → 0 limit.
#[derive(Debug, Clone, Copy)]
pub struct BauerShifts {
    pub a: Complex64,
    pub b: Complex64,
}

/// The X-range flag below uses this fixed ε in T^ε ≤ X ≤ T^{1/2-ε}.
pub const BAUER_RANGE_EPSILON: f64 = 0.05;

/// Main terms of the mollified second moments, by exact monomial
/// integration.  `main_term` is T(Q₁(1)Q₂(1) + ((e^{b-a}-1)/(b-a))E) in the
/// shifted form and T(Q₁(1)Q₂(1) + (log T/log X)∫Q₁'Q₂') in the limit form;
/// `e_tilde` and `i3_main_term` = Ẽ·T·𝓛² belong to the derivative moment and
/// use Q₁ alone.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BauerMainTerm {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub q: u32,
    /// 𝓛 = log(qT/2π).
    #[serde(rename = "L")]
    pub big_l: f64,
    #[serde(rename = "Q1")]
    pub q1: Vec<f64>,
    #[serde(rename = "Q2")]
    pub q2: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<[f64; 2]>,
    pub main_term: [f64; 2],
    #[serde(rename = "Eterm")]
    pub e_term: [f64; 2],
    #[serde(rename = "EtildeTerm")]
    pub e_tilde: f64,
    pub i3_main_term: f64,
    /// Whether X lies inside (T^ε, T^{1/2-ε}) with ε = `BAUER_RANGE_EPSILON`;
    /// outside is flagged, not rejected.
    pub x_within_range: bool,
}

impl BauerMainTerm {
    pub fn main_term_complex(&self) -> Complex64 {
        Complex64::new(self.main_term[0], self.main_term[1])
    }

    pub fn e_term_complex(&self) -> Complex64 {
        Complex64::new(self.e_term[0], self.e_term[1])
    }
}

fn validate_bauer_poly(name: &str, coeffs: &[f64]) -> Result<()> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "{name} has a non-finite coefficient"
        )));
    }
    if coeffs.first().is_some_and(|&c0| c0 != 0.0) {
        return Err(Error::InvalidArgument(format!(
            "{name}(0) must vanish, got constant term {}",
            coeffs[0]
        )));
    }
    Ok(())
}

pub fn bauer_main_term(
    t: f64,
    x: f64,
    q: u32,
    q1: &[f64],
    q2: &[f64],
    shifts: Option<BauerShifts>,
) -> Result<BauerMainTerm> {
    if !(t > 1.0) || !t.is_finite() || !(x > 1.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need T > 1 and X > 1, got T = {t}, X = {x}"
        )));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    validate_bauer_poly("Q1", q1)?;
    validate_bauer_poly("Q2", q2)?;

    let r = t.ln() / x.ln();
    let d1 = poly_derivative(q1);
    let d2 = poly_derivative(q2);
    let i_dd = poly_integral_unit(&poly_mul(&d1, &d2));
    let (e_term, factor, rec_a, rec_b) = match shifts {
        None => (
            Complex64::new(r * i_dd, 0.0),
            Complex64::new(1.0, 0.0),
            None,
            None,
        ),
        Some(BauerShifts { a, b }) => {
            if a == b {
                return Err(Error::InvalidArgument(
                    "equal shifts; use the a,b -> 0 limit form".into(),
                ));
            }
            if a.norm() > 1.0 || b.norm() > 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "shift moduli must be at most 1, got |a| = {}, |b| = {}",
                    a.norm(),
                    b.norm()
                )));
            }
            let i_dq = poly_integral_unit(&poly_mul(&d1, q2));
            let i_qd = poly_integral_unit(&poly_mul(q1, &d2));
            let i_qq = poly_integral_unit(&poly_mul(q1, q2));
            let e = Complex64::new(r * i_dd, 0.0) + b * i_dq - a * i_qd - a * b * (i_qq / r);
            (e, lfunc::em1(b - a), Some([a.re, a.im]), Some([b.re, b.im]))
        }
    };
    let main = (Complex64::new(poly_eval(q1, 1.0) * poly_eval(q2, 1.0), 0.0) + factor * e_term) * t;

    let e_tilde = (r / 3.0) * poly_integral_unit(&poly_mul(&d1, &d1))
        + poly_integral_unit(&poly_mul(q1, &d1))
        + poly_integral_unit(&poly_mul(q1, q1)) / r;
    let big_l = (q as f64 * t / (2.0 * PI)).ln();

    Ok(BauerMainTerm {
        t,
        x,
        q,
        big_l,
        q1: q1.to_vec(),
        q2: q2.to_vec(),
        a: rec_a,
        b: rec_b,
        main_term: [main.re, main.im],
        e_term: [e_term.re, e_term.im],
        e_tilde,
        i3_main_term: e_tilde * t * big_l * big_l,
        x_within_range: x > t.powf(BAUER_RANGE_EPSILON) && x < t.powf(0.5 - BAUER_RANGE_EPSILON),
    })
}

/// Absolute quadrature budget for the second-moment cross-check; the
/// integrals compared are of size T, so this contributes well below the
/// deviation being measured.
pub const BAUER_QUAD_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BauerQuadReport {
    #[serde(rename = "T")]
    pub t: f64,
    pub theta: f64,
    #[serde(rename = "X")]
    pub x: f64,
    pub q: u32,
    pub integral: f64,
    pub main_term: f64,
    /// |integral - main|/main; absolute when the main term vanishes.
    pub relative_deviation: f64,
    pub plan: PlanRecord,
}

/// ∫₁^T |L(1/2+it,χ)·M(1/2+it,χ,Q₁)|² dt with X = T^θ, integrated over
/// unit-length panels, against the main term T(Q₁(1)² + (log T/log X)∫Q₁'²).
pub fn bauer_quadrature_check(
    t: f64,
    theta: f64,
    chi: &DirichletCharacter,
    q1: &[f64],
    plan: EvalPlan,
    sieve: &SieveTable,
    constants: &FrozenConstants,
) -> Result<BauerQuadReport> {
    if chi.is_principal {
        return Err(Error::Unsupported(
            "the moment check is defined for non-principal characters".into(),
        ));
    }
    if !(t >= 2.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "T must be finite and at least 2, got {t}"
        )));
    }
    if !(theta > 0.0 && theta < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, 1/2), got {theta}"
        )));
    }
    validate_bauer_poly("Q1", q1)?;
    let x_moll = t.powf(theta);
    let coeffs = if q1.is_empty() {
        vec![0.0]
    } else {
        q1.to_vec()
    };
    let spec = MollifierSpec::custom(x_moll, coeffs)?;

    let d1 = poly_derivative(q1);
    let main = t
        * (poly_eval(q1, 1.0).powi(2)
            + (t.ln() / x_moll.ln()) * poly_integral_unit(&poly_mul(&d1, &d1)));

    let x_trunc = constants
        .scan_x_base
        .max(1.25 * plan.c().unwrap_or(2.0) * t / (2.0 * PI));
    let integrand = |u: f64| -> Complex64 {
        let s = ComplexPoint::new(0.5, u);
        let prod = moments::eval_l_at(s, chi, plan, x_trunc, constants)
            .map(|e| e.value)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            * eval_mollifier(s, chi, &spec, sieve).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        Complex64::new(prod.norm_sqr(), 0.0)
    };

    let cuts: Vec<f64> = (2..t.ceil() as u64).map(|k| k as f64).collect();
    let integral =
        quadrature::integrate_piecewise(integrand, 1.0, t, &cuts, BAUER_QUAD_TOLERANCE)?.re;
    let relative_deviation = if main == 0.0 {
        integral.abs()
    } else {
        ((integral - main) / main).abs()
    };

    Ok(BauerQuadReport {
        t,
        theta,
        x: x_moll,
        q: chi.modulus,
        integral,
        main_term: main,
        relative_deviation,
        plan: PlanRecord {
            method: plan.describe(),
            c: plan.c(),
            x: plan.c().map(|_| x_trunc),
            constant_factor: constants.truncation_constant_factor,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::DirichletCharacter;
    use crate::constants;
    use crate::sieve::build_sieve;
    use std::f64::consts::{E, LN_2};

    #[test]
    fn ej_boundary_small_cases() {
        assert_eq!(ej_boundary(1.0, 0).unwrap(), 1);
        assert_eq!(ej_boundary(1.0, 1).unwrap(), 2);
        assert_eq!(ej_boundary(2.0, 3).unwrap(), 4);
        assert_eq!(ej_boundary(0.5, 2).unwrap(), 54);
    }

    #[test]
    fn ej_boundary_rejects_overflow_and_bad_beta() {
        assert!(matches!(ej_boundary(1.0, 45), Err(Error::Range(_))));
        assert!(matches!(
            ej_boundary(0.0, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            ej_boundary(-1.0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn ej_boundary_monotone_in_j() {
        for beta in [0.5, 1.0, 2.0, 5.0] {
            let mut prev = 0u64;
            for j in 0..30 {
                let Ok(e) = ej_boundary(beta, j) else { break };
                assert!(e >= prev, "E_j dropped at beta = {beta}, j = {j}");
                prev = e;
            }
        }
    }

    #[test]
    fn min_sum_single_term_hand_value() {
        // Only n = 2 lies in (1, 2]; ||log 2|| = 1 - log 2 and 1/(1 - log 2)
        // is below T = 5.
        let got = min_sum_exact(1.0, 2.0, 1.0, 5.0, true).unwrap();
        let want = 0.5f64.sqrt() / (1.0 - LN_2);
        assert!((got - want).abs() < 1e-14 * want, "got {got}, want {want}");
    }

    #[test]
    fn min_sum_empty_range_is_zero() {
        assert_eq!(min_sum_exact(1.2, 1.9, 1.0, 5.0, true).unwrap(), 0.0);
    }

    #[test]
    fn min_sum_caps_at_t() {
        // 1/||log 2|| ~ 3.26 > T = 2, so the term is clamped to T.
        let got = min_sum_exact(1.0, 2.0, 1.0, 2.0, true).unwrap();
        let want = 2.0 / 2.0f64.sqrt();
        assert!((got - want).abs() < 1e-15);
        // A vanishing distance routes through 1/0 = inf and still caps at T.
        assert_eq!(2.0f64.min(1.0 / nearest_integer_distance(3.0)), 2.0);
    }

    #[test]
    fn min_sum_matches_plain_loop() {
        let (a, b, beta, t) = (3.0, 400.0, 0.7, 50.0);
        for weighted in [false, true] {
            let got = min_sum_exact(a, b, beta, t, weighted).unwrap();
            let mut want = 0.0;
            for n in 4..=400u64 {
                let nf = n as f64;
                let d = nearest_integer_distance(beta * nf.ln());
                let term = if d == 0.0 { t } else { t.min(1.0 / d) };
                want += if weighted { term / nf.sqrt() } else { term };
            }
            assert!(
                (got - want).abs() < 1e-9 * want.abs(),
                "weighted = {weighted}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn min_sum_rejects_bad_domains() {
        assert!(min_sum_exact(0.5, 2.0, 1.0, 5.0, true).is_err());
        assert!(min_sum_exact(3.0, 2.0, 1.0, 5.0, true).is_err());
        assert!(min_sum_exact(1.0, 2.0e8, 1.0, 5.0, true).is_err());
        assert!(min_sum_exact(1.0, 2.0, 1.0, 0.5, true).is_err());
    }

    #[test]
    fn bound_shape_beta_ge_1_instantiation() {
        let got = min_sum_bound_shape(1.0, 100.0, 1.0, 10.0, MinSumVariant::BetaGe1).unwrap();
        let want = 10.0 + 10.0 * 100.0f64.ln();
        assert!((got - want).abs() < 1e-12 * want);
        assert!(matches!(
            min_sum_bound_shape(1.0, 100.0, 0.9, 10.0, MinSumVariant::BetaGe1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn bound_shape_general_instantiation() {
        let got = min_sum_bound_shape(1.0, 100.0, 1.0, 10.0, MinSumVariant::General).unwrap();
        let want = (E / (0.5f64.exp() - 1.0)) * (10.0 + E * 10.0 * (100.0f64.ln() + 1.0));
        assert!((got - want).abs() < 1e-12 * want, "got {got}, want {want}");
    }

    #[test]
    fn bound_shape_interval_lemma() {
        // beta = 1, j = 2: [E_2, E_3] = [7, 20].
        let got = min_sum_bound_shape(7.0, 20.0, 1.0, 3.0, MinSumVariant::IntervalLemma { j: 2 })
            .unwrap();
        let want = 3.0 + E * 3.0 * 2.0f64.exp();
        assert!((got - want).abs() < 1e-12 * want);
        assert!(matches!(
            min_sum_bound_shape(8.0, 20.0, 1.0, 3.0, MinSumVariant::IntervalLemma { j: 2 }),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn min_sum_record_carries_ratio() {
        let rec = min_sum_record(1.0, 1000.0, 1.0, 10.0, MinSumVariant::BetaGe1).unwrap();
        assert!(rec.weighted);
        assert!(rec.exact > 0.0 && rec.bound > 0.0);
        assert!((rec.ratio - rec.exact / rec.bound).abs() < 1e-15);
        let rec =
            min_sum_record(7.0, 20.0, 1.0, 10.0, MinSumVariant::IntervalLemma { j: 2 }).unwrap();
        assert!(!rec.weighted);
        assert!(
            rec.ratio < 1.5,
            "interval ratio unexpectedly large: {}",
            rec.ratio
        );
    }

    #[test]
    fn prop42_grid_shape() {
        let rows = prop42_grid().unwrap();
        // 16 general tuples plus 12 beta >= 1 tuples.
        assert_eq!(rows.len(), 28);
        assert!(rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
        assert!(rows.iter().all(|r| r.weighted));
    }

    #[test]
    fn lemma61c_grid_shape() {
        let rows = lemma61c_grid().unwrap();
        assert_eq!(rows.len(), 36);
        assert!(rows.iter().all(|r| r.ratio > 0.0 && r.ratio.is_finite()));
    }

    #[test]
    fn w_function_closed_forms() {
        for l in [0.5, 1.0, 2.0] {
            let got = w_function(l, E.powf(E)).unwrap();
            let want = (l * E).exp();
            assert!((got - want).abs() < 1e-12 * want);
        }
        let got = w_function(1.0, 100.0).unwrap();
        let want = (100.0f64.ln() / 100.0f64.ln().ln()).exp();
        assert!((got - want).abs() < 1e-13 * want);
        assert!(matches!(w_function(1.0, E), Err(Error::Domain(_))));
        assert!(matches!(w_function(1.0, 2.0), Err(Error::Domain(_))));
        assert!(w_function(0.0, 10.0).is_err());
    }

    #[test]
    fn w_function_power_identity() {
        for (l, alpha, x) in [
            (1.0, 2.0, 10.0),
            (0.7, 3.5, 123.0),
            (2.5, 0.25, 1.0e6),
            (0.1, 10.0, 17.5),
        ] {
            let lhs = w_function(l, x).unwrap().powf(alpha);
            let rhs = w_function(alpha * l, x).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-12 * rhs.abs(),
                "identity fails at L = {l}, alpha = {alpha}, x = {x}"
            );
        }
    }

    #[test]
    fn lemma61c_ratio_behaves() {
        let x = 1.0e3;
        let y = x * w_function(1.0, x).unwrap() * 2.0;
        let r = lemma61c_ratio(1.0, 0.1, x, y).unwrap();
        assert!(r.is_finite() && r > 0.0);
        // y below the hypothesis threshold is rejected.
        assert!(lemma61c_ratio(1.0, 0.1, x, x).is_err());
        assert!(lemma61c_ratio(1.0, 1.0, x, y).is_err());
    }

    #[test]
    fn poly_helpers_agree_with_quadrature() {
        let p = [0.0, 1.5, -2.0, 0.75];
        let q = [0.0, -1.0, 3.0];
        let prod = poly_mul(&p, &q);
        let exact = poly_integral_unit(&prod);
        let numeric =
            quadrature::integrate_real(|u| poly_eval(&p, u) * poly_eval(&q, u), 0.0, 1.0, 1e-13)
                .unwrap();
        assert!((exact - numeric).abs() < 1e-12 * exact.abs().max(1.0));

        let dp = poly_derivative(&p);
        let numeric_d = quadrature::integrate_real(|u| poly_eval(&dp, u), 0.0, 1.0, 1e-13).unwrap();
        let exact_d = poly_eval(&p, 1.0) - poly_eval(&p, 0.0);
        assert!((numeric_d - exact_d).abs() < 1e-12);
    }

    #[test]
    fn bauer_limit_form_identity_polynomial() {
        // Q1 = Q2 = x: main term T(1 + log T/log X).
        let (t, x) = (1000.0, 10.0);
        let out = bauer_main_term(t, x, 3, &[0.0, 1.0], &[0.0, 1.0], None).unwrap();
        let want = t * (1.0 + t.ln() / x.ln());
        let got = out.main_term_complex();
        assert!(
            (got.re - want).abs() < 1e-12 * want,
            "got {got}, want {want}"
        );
        assert_eq!(got.im, 0.0);
        assert!(out.x_within_range);
    }

    #[test]
    fn bauer_limit_form_derivative_polynomial() {
        // Q1 = x(x-1)·log X kills Q1(1); main term (T/3)·log T·log X.
        let (t, x) = (500.0, 500.0f64.powf(0.3));
        let lx = x.ln();
        let q1 = [0.0, -lx, lx];
        let out = bauer_main_term(t, x, 3, &q1, &q1, None).unwrap();
        let want = (t / 3.0) * t.ln() * lx;
        let got = out.main_term_complex().re;
        assert!((got - want).abs() < 1e-12 * want, "got {got}, want {want}");
    }

    #[test]
    fn bauer_e_tilde_identity_polynomial() {
        let (t, x, q) = (2000.0, 12.0, 5u32);
        let out = bauer_main_term(t, x, q, &[0.0, 1.0], &[0.0, 1.0], None).unwrap();
        let (lt, lx) = (t.ln(), x.ln());
        let want = lt / (3.0 * lx) + 0.5 + lx / (3.0 * lt);
        assert!((out.e_tilde - want).abs() < 1e-12 * want);
        let big_l = (q as f64 * t / (2.0 * PI)).ln();
        let want_i3 = want * t * big_l * big_l;
        assert!((out.i3_main_term - want_i3).abs() < 1e-12 * want_i3);
        assert!((out.big_l - big_l).abs() < 1e-15 * big_l);
    }

    #[test]
    fn bauer_shifted_form_matches_direct_expression() {
        let (t, x) = (800.0, 6.0);
        let a = Complex64::new(0.0, 0.3);
        let b = Complex64::new(-0.2, 0.1);
        let out = bauer_main_term(
            t,
            x,
            4,
            &[0.0, 1.0],
            &[0.0, 1.0],
            Some(BauerShifts { a, b }),
        )
        .unwrap();
        let r = t.ln() / x.ln();
        // For Q1 = Q2 = x the four integrals are 1, 1/2, 1/2, 1/3.
        let e = Complex64::new(r, 0.0) + (b - a) * 0.5 - a * b / (3.0 * r);
        let factor = ((b - a).exp() - Complex64::new(1.0, 0.0)) / (b - a);
        let want = (Complex64::new(1.0, 0.0) + factor * e) * t;
        let got = out.main_term_complex();
        assert!(
            (got - want).norm() < 1e-12 * want.norm(),
            "got {got}, want {want}"
        );
        assert!((out.e_term_complex() - e).norm() < 1e-12 * e.norm());
    }

    #[test]
    fn bauer_rejects_bad_inputs() {
        let s = Some(BauerShifts {
            a: Complex64::new(0.1, 0.0),
            b: Complex64::new(0.1, 0.0),
        });
        assert!(matches!(
            bauer_main_term(100.0, 5.0, 3, &[0.0, 1.0], &[0.0, 1.0], s),
            Err(Error::InvalidArgument(_))
        ));
        let s = Some(BauerShifts {
            a: Complex64::new(1.5, 0.0),
            b: Complex64::new(0.1, 0.0),
        });
        assert!(bauer_main_term(100.0, 5.0, 3, &[0.0, 1.0], &[0.0, 1.0], s).is_err());
        assert!(bauer_main_term(100.0, 5.0, 3, &[0.5, 1.0], &[0.0, 1.0], None).is_err());
        assert!(bauer_main_term(0.5, 5.0, 3, &[0.0, 1.0], &[0.0, 1.0], None).is_err());
    }

    #[test]
    fn bauer_range_flag() {
        // T = 1000: the window is (T^0.05, T^0.45) ~ (1.41, 22.4).
        let inside = bauer_main_term(1000.0, 10.0, 3, &[0.0, 1.0], &[0.0, 1.0], None).unwrap();
        assert!(inside.x_within_range);
        let outside = bauer_main_term(1000.0, 500.0, 3, &[0.0, 1.0], &[0.0, 1.0], None).unwrap();
        assert!(!outside.x_within_range);
    }

    #[test]
    fn bauer_quadrature_zero_polynomial() {
        let chi = DirichletCharacter::from_conrey(3, 2).unwrap();
        let sieve = build_sieve(100).unwrap();
        let consts = constants::load().unwrap().constants;
        let rep =
            bauer_quadrature_check(20.0, 0.3, &chi, &[0.0], EvalPlan::Oracle, &sieve, &consts)
                .unwrap();
        assert_eq!(rep.integral, 0.0);
        assert_eq!(rep.main_term, 0.0);
        assert_eq!(rep.relative_deviation, 0.0);
    }

    #[test]
    fn bauer_quadrature_small_run_is_sane() {
        let chi = DirichletCharacter::from_conrey(3, 2).unwrap();
        let sieve = build_sieve(100).unwrap();
        let consts = constants::load().unwrap().constants;
        let rep = bauer_quadrature_check(
            40.0,
            0.3,
            &chi,
            &[0.0, 1.0],
            EvalPlan::Oracle,
            &sieve,
            &consts,
        )
        .unwrap();
        assert!(rep.integral > 0.0);
        assert!(rep.main_term > 0.0);
        assert!(rep.relative_deviation.is_finite());
        assert!(
            rep.relative_deviation < 1.0,
            "deviation {} out of scale; integral {}, main {}",
            rep.relative_deviation,
            rep.integral,
            rep.main_term
        );
        assert!(matches!(
            bauer_quadrature_check(
                40.0,
                0.6,
                &chi,
                &[0.0, 1.0],
                EvalPlan::Oracle,
                &sieve,
                &consts
            ),
            Err(Error::InvalidArgument(_))
        ));
    }
}
