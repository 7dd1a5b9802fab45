//! Mollifiers M(s,χ,P) = Σ_{m ≤ X} μ(m)χ(m) m^{-s} P(1 - log m/log X) and
//! the convolution coefficients of the mollified Dirichlet polynomial.
//!
//! The coefficient arrays realize the identity
//!
//!   (Σ_{ℓ ≤ qU} χ(ℓ) ℓ^{-s}) · M(s,χ,P) = Σ_{n ≤ qUX} χ(n) c_n n^{-s},
//!
//! where c_n convolves the box indicator with the mollifier weights; complete
//! multiplicativity of χ lets the character be applied after the purely
//! arithmetic convolution.  Two weightings appear downstream: the linear
//! weight 1 - log m/log X (a-coefficients, matching P(x) = x) and the flat
//! weight 1 (b-coefficients, matching P(x) = 1).

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::kahan::ComplexKahan;
use crate::lfunc::ComplexPoint;
use crate::sieve::SieveTable;
use num_complex::Complex64;

/// Shorthand for the polynomial in P(1 - log m/log X).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyLabel {
    /// P(x) = x.
    P1,
    /// P(x) = 1.
    P2,
    Custom,
}

/// Truncation length X plus the smoothing polynomial P, with coefficients in
/// ascending degree order.
#[derive(Debug, Clone)]
pub struct MollifierSpec {
    pub x: f64,
    pub poly_coeffs: Vec<f64>,
    pub label: PolyLabel,
}

impl MollifierSpec {
    pub fn p1(x: f64) -> Result<Self> {
        Self::validated(x, vec![0.0, 1.0], PolyLabel::P1)
    }

    pub fn p2(x: f64) -> Result<Self> {
        Self::validated(x, vec![1.0], PolyLabel::P2)
    }

    pub fn custom(x: f64, poly_coeffs: Vec<f64>) -> Result<Self> {
        Self::validated(x, poly_coeffs, PolyLabel::Custom)
    }

    fn validated(x: f64, poly_coeffs: Vec<f64>, label: PolyLabel) -> Result<Self> {
        if !(x >= 1.0) || !x.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "mollifier length X must be finite and >= 1, got {x}"
            )));
        }
        if poly_coeffs.is_empty() || poly_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "polynomial coefficients must be nonempty and finite".into(),
            ));
        }
        Ok(MollifierSpec {
            x,
            poly_coeffs,
            label,
        })
    }

    /// P(y) by Horner's rule.
    pub fn poly(&self, y: f64) -> f64 {
        self.poly_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c)
    }
}

/// M(s,χ,P), summed ascending in m with compensation.  X < 2 leaves only the
/// m = 1 term, returned as P(1) directly so log X never divides a zero.
pub fn eval_mollifier(
    s: ComplexPoint,
    chi: &DirichletCharacter,
    spec: &MollifierSpec,
    sieve: &SieveTable,
) -> Result<Complex64> {
    let cutoff = spec.x.floor() as u64;
    if spec.x < 2.0 {
        return Ok(Complex64::new(spec.poly(1.0), 0.0));
    }
    if (sieve.limit as u64) < cutoff {
        return Err(Error::InvalidArgument(format!(
            "sieve limit {} is below the mollifier length {}",
            sieve.limit, cutoff
        )));
    }
    let log_x = spec.x.ln();
    let sc = s.to_complex();
    let mut acc = ComplexKahan::new();
    for m in 1..=cutoff {
        let mu = sieve.mobius[m as usize];
        if mu == 0 {
            continue;
        }
        let chi_m = chi.eval(m as i64);
        if chi.exponent(m as i64).is_none() {
            continue;
        }
        let mf = m as f64;
        let weight = spec.poly(1.0 - mf.ln() / log_x);
        acc.add(chi_m * (mu as f64 * weight) * (-sc * mf.ln()).exp());
    }
    Ok(acc.total())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    /// Linear weight 1 - log m/log X on the μ factor.
    ACoeffs,
    /// Flat weight 1.
    BCoeffs,
}

/// Dense coefficients c_n for 1 ≤ n ≤ qUX of the product polynomial
/// (Σ_{ℓ ≤ qU} ℓ^{-s}) · (Σ_{m ≤ X} μ(m) w(m) m^{-s}).
#[derive(Debug, Clone)]
pub struct ConvolvedCoeffs {
    pub kind: CoeffKind,
    pub q: u32,
    pub u: f64,
    pub x: f64,
    /// values[n] = c_n; index 0 unused.
    pub values: Vec<f64>,
}

/// Largest n carried by the dense array; kept desk-scale.
pub const MAX_DENSE_COEFFS: u64 = 100_000_000;

/// c_n = Σ_{ℓm = n, ℓ ≤ qU, m ≤ X} μ(m)·w(m) by a divisor-lattice sweep:
/// deterministic, one float add per (ℓ, m) pair in ascending m then ℓ.
pub fn build_coeffs(
    kind: CoeffKind,
    q: u32,
    u: f64,
    x: f64,
    sieve: &SieveTable,
) -> Result<ConvolvedCoeffs> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus q must be >= 1".into()));
    }
    if !(u > 0.0) || !(x >= 1.0) || !u.is_finite() || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "need U > 0 and X >= 1, got U = {u}, X = {x}"
        )));
    }
    let ell_cap = (q as f64 * u).floor() as u64;
    if ell_cap == 0 {
        return Err(Error::InvalidArgument(format!(
            "qU = {} leaves no ℓ range, so c_1 = 1 cannot hold",
            q as f64 * u
        )));
    }
    let n_cap = (q as f64 * u * x).floor() as u64;
    if n_cap > MAX_DENSE_COEFFS {
        return Err(Error::Range(format!(
            "qUX = {n_cap} exceeds the dense-coefficient cap {MAX_DENSE_COEFFS}"
        )));
    }
    let m_cap = x.floor() as u64;
    if (sieve.limit as u64) < m_cap {
        return Err(Error::InvalidArgument(format!(
            "sieve limit {} is below X = {m_cap}",
            sieve.limit
        )));
    }
    let log_x = x.ln();
    let mut values = vec![0.0f64; n_cap as usize + 1];
    for m in 1..=m_cap {
        let mu = sieve.mobius[m as usize];
        if mu == 0 {
            continue;
        }
        let weight = match (kind, m) {
            (_, 1) => 1.0,
            (CoeffKind::ACoeffs, _) => 1.0 - (m as f64).ln() / log_x,
            (CoeffKind::BCoeffs, _) => 1.0,
        };
        let w = mu as f64 * weight;
        let mut n = m;
        let mut ell = 1;
        while ell <= ell_cap && n <= n_cap {
            values[n as usize] += w;
            ell += 1;
            n += m;
        }
    }
    Ok(ConvolvedCoeffs {
        kind,
        q,
        u,
        x,
        values,
    })
}

impl ConvolvedCoeffs {
    pub fn len(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
