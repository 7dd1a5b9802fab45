//! Two independent evaluators for Dirichlet L-functions in the critical
//! strip, plus the exact identities their error analysis leans on.
//!
//! The routes are deliberately separate and must stay that way:
//!
//! * [`l_via_hurwitz`] is the high-accuracy oracle.  It expands L(s,χ) =
//!   q^{-s} Σ_a χ(a) ζ(s, a/q) and evaluates each Hurwitz zeta by
//!   Euler-Maclaurin with an explicit remainder bound.  Internally it works
//!   with ζ(s,α) - 1/(s-1), so the character sum cancels the pole terms
//!   exactly and s = 1 is a regular point for non-principal χ.
//! * [`l_truncated`] is the object under study: the plain truncated Dirichlet
//!   series Σ_{n ≤ qx} χ(n) n^{-s} together with an error radius of the shape
//!   constantFactor · q^{1/2-σ} x^{-σ} log q · (1 + min{σ/(x log q), |t|/σ}).
//!   The constant factor is calibrated once against the oracle and frozen;
//!   nothing in this module feeds oracle results back into the radius.
//!
//! Every returned value carries an error radius that accounts for both the
//! mathematical tail and the accumulated floating-point budget.  Sums run in
//! ascending index order with Kahan-Neumaier compensation, so results are
//! reproducible bit for bit.

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::kahan::{ComplexKahan, KahanSum};
use crate::quadrature;
use num_complex::Complex64;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;

/// s = σ + it, kept as two reals so the critical line σ = 1/2 is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        ComplexPoint { sigma, t }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn abs(self) -> f64 {
        self.sigma.hypot(self.t)
    }

    pub fn conj(self) -> Self {
        ComplexPoint::new(self.sigma, -self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    HurwitzOracle,
    TruncatedSeries,
}

impl EvalMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMethod::HurwitzOracle => "hurwitz-oracle",
            EvalMethod::TruncatedSeries => "truncated-series",
        }
    }
}

/// A computed value with an honest error radius: the true value lies within
/// `error_radius` of `value` (mathematical tail plus float budget).
#[derive(Debug, Clone, Copy)]
pub struct EvaluatedValue {
    pub value: Complex64,
    pub error_radius: f64,
    pub method: EvalMethod,
    pub terms_used: u64,
}

/// Truncation recipe for [`l_truncated`]: sum n ≤ q·x, admissible only when
/// x > C|t|/2π.  `constant_factor` stands in for the inexplicit constant in
/// the tail estimate; it is fitted once on a calibration grid and then frozen.
#[derive(Debug, Clone, Copy)]
pub struct TruncationPlan {
    pub c: f64,
    pub x: f64,
    pub constant_factor: f64,
}

impl TruncationPlan {
    pub fn new(c: f64, x: f64, constant_factor: f64) -> Result<Self> {
        if !(c > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation plan needs C > 1, got C = {c}"
            )));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "truncation plan needs finite x > 0, got x = {x}"
            )));
        }
        if !(constant_factor > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation plan needs constantFactor > 0, got {constant_factor}"
            )));
        }
        Ok(TruncationPlan {
            c,
            x,
            constant_factor,
        })
    }

    /// True when x clears the oscillation threshold C|t|/2π at this point.
    pub fn admits(&self, t: f64) -> bool {
        self.x > self.c * t.abs() / (2.0 * PI)
    }

    /// The tail part of the error radius (no float budget):
    /// constantFactor · q^{1/2-σ} · x^{-σ} · log q · (1 + min{σ/(x log q), |t|/σ}).
    pub fn formula_radius(&self, s: ComplexPoint, q: u32) -> f64 {
        let lq = (q as f64).ln();
        let damp = (s.sigma / (self.x * lq)).min(s.t.abs() / s.sigma);
        self.constant_factor
            * (q as f64).powf(0.5 - s.sigma)
            * self.x.powf(-s.sigma)
            * lq
            * (1.0 + damp)
    }
}

/// b^{-s} as exp(-s ln b); the single shared primitive so both evaluators
/// round identically.
fn pow_neg(s: Complex64, base: f64) -> Complex64 {
    (-s * base.ln()).exp()
}

/// (e^w - 1)/w, stable near w = 0 where the direct quotient cancels.
pub(crate) fn em1(w: Complex64) -> Complex64 {
    if w.norm() >= 0.5 {
        return (w.exp() - 1.0) / w;
    }
    // Taylor series Σ w^j/(j+1)!; |w| < 1/2 gives machine precision by j = 16.
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for j in 1..=20 {
        term = term * w / ((j + 1) as f64);
        sum += term;
        if term.norm() <= sum.norm() * EPS {
            break;
        }
    }
    sum
}

// B_{2k} for k = 1..=16 as num/den, and (2k)!.  The last entry only ever
// feeds the first-omitted-term bound, so k_terms tops out at 15.
const BERNOULLI_NUM: [f64; 16] = [
    1.0,
    -1.0,
    1.0,
    -1.0,
    5.0,
    -691.0,
    7.0,
    -3617.0,
    43867.0,
    -174611.0,
    854513.0,
    -236364091.0,
    8553103.0,
    -23749461029.0,
    8615841276005.0,
    -7709321041217.0,
];
const BERNOULLI_DEN: [f64; 16] = [
    6.0, 30.0, 42.0, 30.0, 66.0, 2730.0, 6.0, 510.0, 798.0, 330.0, 138.0, 2730.0, 6.0, 870.0,
    14322.0, 510.0,
];
const EVEN_FACTORIAL: [f64; 16] = [
    2.0,
    24.0,
    720.0,
    40320.0,
    3628800.0,
    479001600.0,
    87178291200.0,
    20922789888000.0,
    6402373705728000.0,
    2432902008176640000.0,
    1124000727777607680000.0,
    620448401733239439360000.0,
    403291461126605635584000000.0,
    304888344611713860501504000000.0,
    265252859812191058636308480000000.0,
    263130836933693530167218012160000000.0,
];

/// B_{2k}/(2k)! for k in 1..=16.
fn bernoulli_over_factorial(k: usize) -> f64 {
    BERNOULLI_NUM[k - 1] / BERNOULLI_DEN[k - 1] / EVEN_FACTORIAL[k - 1]
}

struct EmCore {
    /// ζ(s,α) - 1/(s-1), which is entire in s.
    deflated: Complex64,
    tail_radius: f64,
    float_radius: f64,
    terms_used: u64,
}

/// Euler-Maclaurin with index shift N and K Bernoulli corrections:
///
///   ζ(s,α) = Σ_{n<N} (n+α)^{-s} + (N+α)^{1-s}/(s-1) + (N+α)^{-s}/2
///          + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)···(s+2k-2) · (N+α)^{-s-2k+1} + R_K,
///
/// computed in deflated form (the 1/(s-1) pole subtracted analytically) so the
/// expansion is usable at s = 1.  The remainder satisfies
/// |R_K| ≤ |first omitted term| · |s+2K+1|/(σ+2K+1); we take the max of that
/// rigorous factor and 4, so the radius never goes optimistic at large |t|.
fn em_core(s: ComplexPoint, alpha: f64, shift_n: u64, k_terms: u32) -> Result<EmCore> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "hurwitz zeta needs alpha in (0, 1], got {alpha}"
        )));
    }
    if shift_n == 0 {
        return Err(Error::InvalidArgument("shiftN must be positive".into()));
    }
    if !(1..=15).contains(&k_terms) {
        return Err(Error::InvalidArgument(format!(
            "bernoulliTerms must lie in 1..=15, got {k_terms}"
        )));
    }
    if s.sigma + 2.0 * k_terms as f64 + 1.0 <= 0.0 {
        return Err(Error::Domain(format!(
            "sigma = {} is below the Euler-Maclaurin validity range for {k_terms} correction terms",
            s.sigma
        )));
    }
    let sc = s.to_complex();

    let mut acc = ComplexKahan::new();
    let mut budget = KahanSum::new();
    for n in 0..shift_n {
        let base = n as f64 + alpha;
        let term = pow_neg(sc, base);
        acc.add(term);
        budget.add((4.0 + s.t.abs() * base.ln().abs()) * term.norm());
    }

    let big = shift_n as f64 + alpha;
    let l_big = big.ln();
    // ((N+α)^{1-s} - 1)/(s-1) = -ln(N+α) · em1((1-s)·ln(N+α)).
    let w = (Complex64::new(1.0, 0.0) - sc) * l_big;
    let deflate_piece = -l_big * em1(w);
    acc.add(deflate_piece);
    budget.add((8.0 + 2.0 * w.norm()) * deflate_piece.norm());

    let half_piece = 0.5 * pow_neg(sc, big);
    acc.add(half_piece);
    budget.add(8.0 * half_piece.norm());

    // rising = s(s+1)···(s+2k-2), power = (N+α)^{-s-2k+1}, advanced per k.
    let mut rising = sc;
    let mut power = pow_neg(sc, big) / big;
    for k in 1..=k_terms as usize {
        if k > 1 {
            let j = (2 * k - 3) as f64;
            rising *= (sc + j) * (sc + j + 1.0);
            power /= big * big;
        }
        let term = bernoulli_over_factorial(k) * rising * power;
        acc.add(term);
        budget.add(8.0 * term.norm());
    }

    let k1 = k_terms as usize + 1;
    let j = (2 * k1 - 3) as f64;
    let omitted = bernoulli_over_factorial(k1).abs()
        * (rising * (sc + j) * (sc + j + 1.0)).norm()
        * (power / (big * big)).norm();
    let two_k1 = 2.0 * k_terms as f64 + 1.0;
    let remainder_factor = ((sc + two_k1).norm() / (s.sigma + two_k1)).max(4.0);

    Ok(EmCore {
        deflated: acc.total(),
        tail_radius: remainder_factor * omitted,
        float_radius: EPS * budget.total(),
        terms_used: shift_n + k_terms as u64,
    })
}

/// Hurwitz zeta ζ(s,α) by Euler-Maclaurin.  The error radius is the rigorous
/// remainder bound plus the float budget; it is only small when shiftN is
/// large enough for the Bernoulli terms to decay (roughly shiftN ≳ 0.75|s|).
pub fn hurwitz_zeta(
    s: ComplexPoint,
    alpha: f64,
    shift_n: u64,
    bernoulli_terms: u32,
) -> Result<EvaluatedValue> {
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Pole("hurwitz zeta has a pole at s = 1".into()));
    }
    let core = em_core(s, alpha, shift_n, bernoulli_terms)?;
    let pole = 1.0 / (s.to_complex() - 1.0);
    Ok(EvaluatedValue {
        value: core.deflated + pole,
        error_radius: core.tail_radius + core.float_radius + 4.0 * EPS * pole.norm(),
        method: EvalMethod::HurwitzOracle,
        terms_used: core.terms_used,
    })
}

/// Index shift that keeps the Euler-Maclaurin correction terms decaying:
/// the term ratio is about (|s|/2πN)², so N proportional to |s| suffices.
fn oracle_shift(s: ComplexPoint) -> u64 {
    (30.0f64).max((0.75 * s.abs()).ceil()) as u64
}

const ORACLE_BERNOULLI_TERMS: u32 = 10;

/// Oracle route: L(s,χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q), with each zeta in
/// deflated form (Σ χ(a) kills the poles exactly for non-principal χ, so s = 1
/// is fine).  Error radius: q^{1-σ} × the worst per-term Hurwitz radius.
pub fn l_via_hurwitz(s: ComplexPoint, chi: &DirichletCharacter) -> Result<EvaluatedValue> {
    if chi.is_principal {
        return Err(Error::Unsupported(
            "principal character: the Hurwitz expansion hits the zeta pole".into(),
        ));
    }
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "oracle evaluation requires sigma > 0, got sigma = {}",
            s.sigma
        )));
    }
    let q = chi.modulus;
    let shift = oracle_shift(s);
    let mut acc = ComplexKahan::new();
    let mut worst_radius: f64 = 0.0;
    let mut terms: u64 = 0;
    for a in 1..=q {
        let value = chi.eval(a as i64);
        if chi.exponent(a as i64).is_none() {
            continue;
        }
        let core = em_core(s, a as f64 / q as f64, shift, ORACLE_BERNOULLI_TERMS)?;
        acc.add(value * core.deflated);
        worst_radius = worst_radius.max(core.tail_radius + core.float_radius);
        terms += core.terms_used;
    }
    let value = pow_neg(s.to_complex(), q as f64) * acc.total();
    Ok(EvaluatedValue {
        value,
        error_radius: (q as f64).powf(1.0 - s.sigma) * worst_radius,
        method: EvalMethod::HurwitzOracle,
        terms_used: terms,
    })
}

/// The truncated Dirichlet series Σ_{n ≤ q·x} χ(n) n^{-s} with its explicit
/// error radius.  This is the evaluator whose tail constant the calibration
/// run fits; it never consults the oracle.
pub fn l_truncated(
    s: ComplexPoint,
    chi: &DirichletCharacter,
    plan: &TruncationPlan,
) -> Result<EvaluatedValue> {
    if chi.is_principal {
        return Err(Error::Unsupported(
            "principal character: the truncated-series tail estimate assumes Σ χ(a) = 0".into(),
        ));
    }
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "truncated evaluation requires sigma > 0, got sigma = {}",
            s.sigma
        )));
    }
    if !plan.admits(s.t) {
        return Err(Error::Domain(format!(
            "truncation x = {} violates x > C|t|/2pi = {} (C = {}, t = {})",
            plan.x,
            plan.c * s.t.abs() / (2.0 * PI),
            plan.c,
            s.t
        )));
    }
    let q = chi.modulus;
    let sc = s.to_complex();
    let cutoff = (q as f64 * plan.x).floor() as u64;
    let mut acc = ComplexKahan::new();
    let mut budget = KahanSum::new();
    for n in 1..=cutoff {
        let value = chi.eval(n as i64);
        if chi.exponent(n as i64).is_none() {
            continue;
        }
        let nf = n as f64;
        let term = value * pow_neg(sc, nf);
        acc.add(term);
        budget.add((4.0 + s.t.abs() * nf.ln()) * term.norm());
    }
    Ok(EvaluatedValue {
        value: acc.total(),
        error_radius: plan.formula_radius(s, q) + EPS * budget.total(),
        method: EvalMethod::TruncatedSeries,
        terms_used: cutoff,
    })
}

/// Both sides of the exact identity
///
///   Σ_{a=1}^{q} χ(a)({x - a/q} - 1/2)
///     = -Σ_{a ≤ qx} χ(a) - (1/q) Σ_{a=1}^{q} a·χ(a),
///
/// for non-principal χ and x in [0,1), evaluated independently.  The count on
/// the right uses the same floating-point expression x - a/q as the left side,
/// so both sides move together when a boundary a/q rounds across x.
pub fn fractional_part_identity(
    chi: &DirichletCharacter,
    x: f64,
) -> Result<(Complex64, Complex64)> {
    if chi.is_principal {
        return Err(Error::Unsupported(
            "the fractional-part identity needs Σ χ(a) = 0, so χ must be non-principal".into(),
        ));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "x must lie in [0, 1), got {x}"
        )));
    }
    let q = chi.modulus;
    let qf = q as f64;
    let mut lhs = ComplexKahan::new();
    let mut head = ComplexKahan::new();
    let mut weighted = ComplexKahan::new();
    for a in 1..=q {
        if chi.exponent(a as i64).is_none() {
            continue;
        }
        let value = chi.eval(a as i64);
        let d = x - a as f64 / qf;
        lhs.add(value * (d - d.floor() - 0.5));
        if d >= 0.0 {
            head.add(value);
        }
        weighted.add(a as f64 * value);
    }
    let rhs = -head.total() - weighted.total() / qf;
    Ok((lhs.total(), rhs))
}

/// The bound 2(|s|/σ)N^{-σ} that [`hurwitz_partial_residual`] must meet.
pub fn hurwitz_residual_bound(s: ComplexPoint, big_n: f64) -> f64 {
    2.0 * (s.abs() / s.sigma) * big_n.powf(-s.sigma)
}

/// Residual of the partial-summation formula for ζ(s,α): evaluates
///
///   Σ_{0 ≤ n ≤ x-α} (n+α)^{-s} + ({x-α} - 1/2)/x^s - x^{1-s}/(1-s)
///     - s ∫_x^N ({u-α} - 1/2) u^{-s-1} du
///
/// against the Euler-Maclaurin reference and returns |difference|.  The
/// integrand's fractional part jumps at u = α + m, so the quadrature splits
/// there; with a finite N the residual is the neglected tail, bounded by
/// 2(|s|/σ)N^{-σ}.
pub fn hurwitz_partial_residual(s: ComplexPoint, alpha: f64, x: f64, big_n: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if !(x > alpha) || !(big_n > x) {
        return Err(Error::InvalidArgument(format!(
            "need N > x > alpha, got N = {big_n}, x = {x}, alpha = {alpha}"
        )));
    }
    if !(s.sigma > 0.0) {
        return Err(Error::Domain(format!(
            "the tail integral converges only for sigma > 0, got {}",
            s.sigma
        )));
    }
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Pole("formula undefined at s = 1".into()));
    }
    let sc = s.to_complex();
    let reference = hurwitz_zeta(s, alpha, oracle_shift(s).max(50), 12)?;

    let k = (x - alpha).floor() as u64;
    let mut acc = ComplexKahan::new();
    for n in 0..=k {
        acc.add(pow_neg(sc, n as f64 + alpha));
    }
    let frac = (x - alpha) - (x - alpha).floor();
    acc.add((frac - 0.5) * pow_neg(sc, x));
    // -x^{1-s}/(1-s) = x^{1-s}/(s-1)
    acc.add(pow_neg(sc - 1.0, x) / (sc - 1.0));

    // {u-α} jumps at u = α + m; between jumps it is u - α - m with m fixed,
    // so each panel gets a closed-form branch and a smooth integrand (panel
    // endpoints included, which adaptive Simpson needs).
    let m_first = (x - alpha).floor() as i64 + 1;
    let m_last = (big_n - alpha).ceil() as i64 - 1;
    let mut boundaries: Vec<f64> = Vec::with_capacity((m_last - m_first + 3).max(2) as usize);
    boundaries.push(x);
    boundaries.extend(
        (m_first..=m_last)
            .map(|m| alpha + m as f64)
            .filter(|&u| u > x && u < big_n),
    );
    boundaries.push(big_n);
    let mut integral = ComplexKahan::new();
    let span = big_n - x;
    for w in boundaries.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let m = (0.5 * (lo + hi) - alpha).floor();
        let branch = move |u: f64| (u - alpha - m - 0.5) * pow_neg(sc + 1.0, u);
        let tol = (1e-11 * (hi - lo) / span).max(1e-15);
        integral.add(quadrature::integrate_complex(branch, lo, hi, tol)?);
    }
    acc.add(-sc * integral.total());

    Ok((reference.value - acc.total()).norm())
}

/// One dual-route comparison: the truncated series against the oracle at the
/// same point, with the radius split into its calibratable analytic part
/// (constant factor 1) and the fixed float budget.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConformancePoint {
    pub q: u32,
    pub label: u32,
    pub sigma: f64,
    pub t: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub x: f64,
    pub delta: f64,
    pub radius: f64,
    pub unit_radius: f64,
    pub float_radius: f64,
}

/// The critical-line comparison grid: small moduli, every non-principal
/// character, |t| ≤ 50 in both directions, three admissibility constants,
/// three truncation offsets beyond the C|t|/2π threshold.
pub fn conformance_parameters() -> Vec<(u32, u32, f64, f64, f64)> {
    let mut points = Vec::new();
    for q in [3u32, 4, 5, 7, 8, 12] {
        let chars = DirichletCharacter::enumerate(q).expect("small modulus");
        for chi in chars.iter().filter(|c| !c.is_principal) {
            for t in [0.0, 5.0, -5.0, 10.0, -10.0, 25.0, -25.0, 50.0, -50.0] {
                for c in [1.5, 2.0, 4.0] {
                    for extra in [5.0, 20.0, 100.0] {
                        let x = c * f64::abs(t) / (2.0 * PI) + extra;
                        points.push((q, chi.label, t, c, x));
                    }
                }
            }
        }
    }
    points
}

/// Runs the whole grid with the given truncation constant factor.  Parallel
/// over points; the output order is the deterministic grid order.
pub fn run_conformance(constant_factor: f64) -> Result<Vec<ConformancePoint>> {
    use rayon::prelude::*;
    let params = conformance_parameters();
    params
        .into_par_iter()
        .map(|(q, label, t, c, x)| {
            let chi = DirichletCharacter::from_conrey(q, label)?;
            let s = ComplexPoint::new(0.5, t);
            let oracle = l_via_hurwitz(s, &chi)?;
            let plan = TruncationPlan::new(c, x, constant_factor)?;
            let trunc = l_truncated(s, &chi, &plan)?;
            let unit = TruncationPlan::new(c, x, 1.0)?.formula_radius(s, q);
            Ok(ConformancePoint {
                q,
                label,
                sigma: s.sigma,
                t,
                c,
                x,
                delta: (trunc.value - oracle.value).norm(),
                radius: trunc.error_radius,
                unit_radius: unit,
                float_radius: trunc.error_radius - plan.formula_radius(s, q),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chi4() -> DirichletCharacter {
        DirichletCharacter::from_conrey(4, 3).unwrap()
    }

    #[test]
    fn conformance_grid_within_radius_at_frozen_factor() {
        let factor = crate::constants::load()
            .unwrap()
            .constants
            .truncation_constant_factor;
        let pts = run_conformance(factor).unwrap();
        assert_eq!(pts.len(), 1296);
        let bad: Vec<_> = pts.iter().filter(|p| p.delta > p.radius).collect();
        assert!(
            bad.is_empty(),
            "{} of {} points exceed the radius; first: {:?}",
            bad.len(),
            pts.len(),
            bad.first()
        );
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let v = hurwitz_zeta(ComplexPoint::new(2.0, 0.0), 1.0, 30, 10).unwrap();
        assert!(v.error_radius <= 1e-10);
        assert!((v.value.re - PI * PI / 6.0).abs() <= 1e-10);
        assert!(v.value.im.abs() <= 1e-12);
    }

    #[test]
    fn zeta_at_half_alpha_matches_scaling_identity() {
        // ζ(s, 1/2) = (2^s - 1) ζ(s) at s = 2.
        let v = hurwitz_zeta(ComplexPoint::new(2.0, 0.0), 0.5, 30, 10).unwrap();
        assert!((v.value.re - PI * PI / 2.0).abs() <= 1e-10);
    }

    #[test]
    fn matches_brute_force_series_with_tail() {
        // Independent check at s = 1/2 + 10i, α = 1/3: a raw 10^6-term partial
        // sum plus the integral-and-correction tail of the same expansion
        // truncated at one Bernoulli term.
        let s = ComplexPoint::new(0.5, 10.0);
        let sc = s.to_complex();
        let alpha = 1.0 / 3.0;
        let big_m: u64 = 1_000_000;
        let mut acc = ComplexKahan::new();
        for n in 0..big_m {
            acc.add(pow_neg(sc, n as f64 + alpha));
        }
        let big = big_m as f64 + alpha;
        let tail = pow_neg(sc - 1.0, big) / (sc - 1.0)
            + 0.5 * pow_neg(sc, big)
            + (1.0 / 12.0) * sc * pow_neg(sc + 1.0, big);
        let oracle = acc.total() + tail;

        let v = hurwitz_zeta(s, alpha, 40, 10).unwrap();
        assert!(v.error_radius <= 1e-10);
        assert!((v.value - oracle).norm() <= 1e-8);
    }

    #[test]
    fn pole_and_argument_validation() {
        assert!(matches!(
            hurwitz_zeta(ComplexPoint::new(1.0, 0.0), 0.5, 30, 10),
            Err(Error::Pole(_))
        ));
        assert!(hurwitz_zeta(ComplexPoint::new(2.0, 0.0), 0.0, 30, 10).is_err());
        assert!(hurwitz_zeta(ComplexPoint::new(2.0, 0.0), 1.5, 30, 10).is_err());
        assert!(hurwitz_zeta(ComplexPoint::new(2.0, 0.0), 0.5, 30, 16).is_err());
    }

    #[test]
    fn leibniz_value_at_one() {
        // L(1, χ₄) = π/4; s = 1 exercises the deflated pole cancellation.
        let v = l_via_hurwitz(ComplexPoint::new(1.0, 0.0), &chi4()).unwrap();
        assert!(v.error_radius <= 1e-10);
        assert!((v.value.re - PI / 4.0).abs() <= 1e-10);
        assert!(v.value.im.abs() <= 1e-12);
    }

    #[test]
    fn catalan_constant_at_two() {
        // Independent oracle: Catalan = Σ (-1)^k/(2k+1)², summed directly to
        // 10^8 terms; averaging the last two partial sums removes the leading
        // alternation error entirely at this depth.
        let mut acc = KahanSum::new();
        let mut prev = 0.0;
        for k in 0..100_000_000u64 {
            let d = (2 * k + 1) as f64;
            let term = if k % 2 == 0 { 1.0 } else { -1.0 } / (d * d);
            prev = acc.total();
            acc.add(term);
        }
        let catalan = 0.5 * (acc.total() + prev);

        let v = l_via_hurwitz(ComplexPoint::new(2.0, 0.0), &chi4()).unwrap();
        assert!((v.value.re - catalan).abs() <= 1e-10);
    }

    #[test]
    fn quadratic_mod_five_critical_point_golden() {
        // Dual-route cross-check at s = 1/2 for the quadratic character mod 5,
        // plus a frozen golden so regressions show up as a value drift.
        let chi = DirichletCharacter::from_conrey(5, 4).unwrap();
        let s = ComplexPoint::new(0.5, 0.0);
        let oracle = l_via_hurwitz(s, &chi).unwrap();
        let plan = TruncationPlan::new(2.0, 2e4, 8.0).unwrap();
        let series = l_truncated(s, &chi, &plan).unwrap();
        assert!((oracle.value - series.value).norm() <= series.error_radius);
        assert!(oracle.value.im.abs() <= 1e-12);
        assert!((oracle.value.re - GOLDEN_L_HALF_QUADRATIC_MOD5).abs() <= 1e-10);
    }

    // Frozen from the oracle route (shift 30, 10 Bernoulli terms), confirmed
    // by the truncated series at x = 2·10^4.
    const GOLDEN_L_HALF_QUADRATIC_MOD5: f64 = 0.231750947504015;

    #[test]
    fn principal_character_is_rejected() {
        let principal = DirichletCharacter::from_conrey(4, 1).unwrap();
        assert!(matches!(
            l_via_hurwitz(ComplexPoint::new(0.5, 0.0), &principal),
            Err(Error::Unsupported(_))
        ));
        let plan = TruncationPlan::new(2.0, 100.0, 8.0).unwrap();
        assert!(l_truncated(ComplexPoint::new(0.5, 0.0), &principal, &plan).is_err());
    }

    #[test]
    fn truncated_agrees_with_oracle_spot_checks() {
        let s = ComplexPoint::new(0.5, 0.0);
        let plan = TruncationPlan::new(2.0, 1e4, 8.0).unwrap();
        let a = l_truncated(s, &chi4(), &plan).unwrap();
        let b = l_via_hurwitz(s, &chi4()).unwrap();
        assert!((a.value - b.value).norm() <= a.error_radius);

        let chi3 = DirichletCharacter::from_conrey(3, 2).unwrap();
        let s = ComplexPoint::new(0.5, 30.0);
        let plan = TruncationPlan::new(2.0, 40.0, 8.0).unwrap();
        let a = l_truncated(s, &chi3, &plan).unwrap();
        let b = l_via_hurwitz(s, &chi3).unwrap();
        assert!((a.value - b.value).norm() <= a.error_radius);
    }

    #[test]
    fn empty_truncation_sums_to_zero() {
        let chi3 = DirichletCharacter::from_conrey(3, 2).unwrap();
        let plan = TruncationPlan::new(2.0, 0.2, 8.0).unwrap();
        let v = l_truncated(ComplexPoint::new(0.5, 0.0), &chi3, &plan).unwrap();
        assert_eq!(v.terms_used, 0);
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
        assert!(v.error_radius > 0.0);
    }

    #[test]
    fn plan_violation_names_the_bound() {
        let chi3 = DirichletCharacter::from_conrey(3, 2).unwrap();
        let plan = TruncationPlan::new(2.0, 5.0, 8.0).unwrap();
        let err = l_truncated(ComplexPoint::new(0.5, 100.0), &chi3, &plan).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("x > C|t|/2pi"), "got: {msg}");
    }

    #[test]
    fn conjugation_symmetry() {
        for (q, label, sigma, t) in [(5u32, 2u32, 0.5f64, 7.0f64), (7, 3, 0.75, 12.5)] {
            let chi = DirichletCharacter::from_conrey(q, label).unwrap();
            let s = ComplexPoint::new(sigma, t);
            let lhs = l_via_hurwitz(s.conj(), &chi.conjugate()).unwrap();
            let rhs = l_via_hurwitz(s, &chi).unwrap();
            assert!((lhs.value - rhs.value.conj()).norm() <= lhs.error_radius + rhs.error_radius);
        }
    }

    #[test]
    fn radius_contracts_when_x_doubles() {
        for sigma in [0.25, 0.5, 0.9] {
            for t in [0.0, 5.0, 60.0] {
                for x in [7.0, 50.0, 400.0] {
                    let s = ComplexPoint::new(sigma, t);
                    let a = TruncationPlan::new(2.0, x, 8.0)
                        .unwrap()
                        .formula_radius(s, 5);
                    let b = TruncationPlan::new(2.0, 2.0 * x, 8.0)
                        .unwrap()
                        .formula_radius(s, 5);
                    assert!(b <= a * (0.5f64).powf(sigma) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn fractional_identity_at_zero_reduces_to_weighted_sum() {
        let chi = chi4();
        let (lhs, rhs) = fractional_part_identity(&chi, 0.0).unwrap();
        let mut weighted = ComplexKahan::new();
        for a in 1..=4i64 {
            weighted.add(chi.eval(a) * a as f64);
        }
        let expected = -weighted.total() / 4.0;
        assert!((lhs - expected).norm() <= 1e-14);
        assert!((rhs - expected).norm() <= 1e-14);
    }

    #[test]
    fn fractional_identity_spot_and_grid() {
        let (lhs, rhs) = fractional_part_identity(&chi4(), 0.6).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12);

        for label in 2..=6u32 {
            let chi = DirichletCharacter::from_conrey(7, label).unwrap();
            for i in 0..100 {
                let x = i as f64 / 100.0;
                let (lhs, rhs) = fractional_part_identity(&chi, x).unwrap();
                assert!(
                    (lhs - rhs).norm() <= 1e-12,
                    "q=7 label={label} x={x}: |lhs-rhs| = {:e}",
                    (lhs - rhs).norm()
                );
            }
        }
    }

    #[test]
    fn partial_formula_residual_within_bound() {
        let s = ComplexPoint::new(2.0, 0.0);
        let r = hurwitz_partial_residual(s, 0.5, 10.0, 1e4).unwrap();
        assert!(r <= 2e-8, "residual {r:e}");

        let s = ComplexPoint::new(0.5, 5.0);
        let r = hurwitz_partial_residual(s, 1.0 / 3.0, 20.0, 1e6).unwrap();
        assert!(r <= hurwitz_residual_bound(s, 1e6), "residual {r:e}");
    }

    #[test]
    fn residual_bound_scales_with_n() {
        let s = ComplexPoint::new(0.5, 5.0);
        let b1 = hurwitz_residual_bound(s, 1e4);
        let b2 = hurwitz_residual_bound(s, 1e5);
        assert!((b2 / b1 - 10f64.powf(-0.5)).abs() <= 1e-12);
    }

    #[test]
    fn em1_is_stable_near_zero() {
        assert!((em1(Complex64::new(0.0, 0.0)) - 1.0).norm() <= 1e-15);
        let w = Complex64::new(1e-9, -1e-9);
        let direct = (w.exp() - 1.0) / w;
        assert!((em1(w) - direct).norm() <= 1e-7);
        let w = Complex64::new(0.4, 0.3);
        let direct = (w.exp() - 1.0) / w;
        assert!((em1(w) - direct).norm() <= 1e-14);
    }
}
