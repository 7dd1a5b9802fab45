//! Dirichlet characters mod q: enumeration, Conrey labels, conductors,
//! Gauss sums, and partial character sums.
//!
//! Construction follows the Conrey parametrization.  (ℤ/q)* splits by CRT
//! into cyclic factors: one per odd prime power p^e with a fixed generator
//! (the smallest g that is a primitive root mod p^e for every e, i.e. the
//! smallest primitive root mod p that also generates mod p²), and for 2^e
//! with e ≥ 3 the pair {−1, 5}.  The character with label n sends m to
//!     χ_q(n, m) = ∏_i e(a_i(n)·a_i(m)/d_i),
//! where a_i is the discrete log in the i-th factor and d_i its order.  This
//! pairing is symmetric and makes the unit n ↦ χ_q(n,·) a group isomorphism,
//! so labels multiply, conjugate (label⁻¹ mod q), and reduce to conductors
//! deterministically.
//!
//! Values are carried two ways: as exact root-of-unity exponents num/den
//! (so algebraic identities can be tested with no rounding slack at all) and
//! as cached complex doubles for the numeric paths.

use crate::error::{Error, Result};
use crate::kahan::ComplexKahan;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Modular inverse by extended Euclid; None when gcd(a, m) > 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (s0, s1) = (s1, s0 - quot * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn prime_factorization(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factorization(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Smallest g generating (ℤ/p^e)* for every e ≥ 1: a primitive root mod p
/// with g^(p−1) ≢ 1 mod p².  (The two conditions together give all e.)
fn conrey_generator(p: u64) -> u64 {
    debug_assert!(p % 2 == 1 && p > 2);
    let factors: Vec<u64> = prime_factorization(p - 1).iter().map(|&(r, _)| r).collect();
    let p2 = p * p;
    let mut g = 2u64;
    loop {
        let primitive = factors.iter().all(|&r| mod_pow(g, (p - 1) / r, p) != 1);
        if primitive && mod_pow(g, p - 1, p2) != 1 {
            return g;
        }
        g += 1;
        assert!(g < p2, "no generator below p^2 for p = {p}");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactorKind {
    /// Odd p^e with stored generator g.
    OddPrime { p: u64, e: u32, g: u64 },
    /// The cyclic group mod 4 (order 2).
    FourPart,
    /// Sign component of 2^e, e ≥ 3 (order 2).
    TwoSign { e: u32 },
    /// ⟨5⟩ component of 2^e, e ≥ 3 (order 2^(e−2)).
    TwoFive { e: u32 },
}

#[derive(Debug, Clone)]
struct CyclicFactor {
    kind: FactorKind,
    order: u64,
    /// Discrete log of every residue mod q in this factor; u32::MAX off the units.
    idx: Vec<u32>,
}

#[derive(Debug, Clone)]
struct GroupStructure {
    q: u32,
    factors: Vec<CyclicFactor>,
    /// lcm of the factor orders: common denominator for value exponents.
    exponent: u64,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

impl GroupStructure {
    fn build(q: u32) -> GroupStructure {
        let qu = q as u64;
        let mut factors = Vec::new();
        for (p, e) in prime_factorization(qu) {
            if p == 2 {
                match e {
                    1 => {}
                    2 => {
                        let idx = Self::idx_table(q, 4, |r| u32::from(r % 4 == 3));
                        factors.push(CyclicFactor {
                            kind: FactorKind::FourPart,
                            order: 2,
                            idx,
                        });
                    }
                    _ => {
                        let pe = 1u64 << e;
                        let half = 1u64 << (e - 2);
                        let mut sign = vec![u32::MAX; pe as usize];
                        let mut five = vec![u32::MAX; pe as usize];
                        for j in 0..2u32 {
                            let mut acc = if j == 0 { 1 } else { pe - 1 };
                            for k in 0..half {
                                sign[acc as usize] = j;
                                five[acc as usize] = k as u32;
                                acc = acc * 5 % pe;
                            }
                        }
                        factors.push(CyclicFactor {
                            kind: FactorKind::TwoSign { e },
                            order: 2,
                            idx: Self::idx_table(q, pe, |r| sign[(r % pe) as usize]),
                        });
                        factors.push(CyclicFactor {
                            kind: FactorKind::TwoFive { e },
                            order: half,
                            idx: Self::idx_table(q, pe, |r| five[(r % pe) as usize]),
                        });
                    }
                }
            } else {
                let pe = p.pow(e);
                let phi_pe = pe / p * (p - 1);
                let g = conrey_generator(p);
                let mut dlog = vec![u32::MAX; pe as usize];
                let g_red = g % pe;
                let mut acc = 1u64;
                for k in 0..phi_pe {
                    dlog[acc as usize] = k as u32;
                    acc = acc * g_red % pe;
                }
                factors.push(CyclicFactor {
                    kind: FactorKind::OddPrime { p, e, g },
                    order: phi_pe,
                    idx: Self::idx_table(q, pe, |r| dlog[(r % pe) as usize]),
                });
            }
        }
        let exponent = factors.iter().fold(1u64, |acc, f| lcm(acc, f.order));
        GroupStructure {
            q,
            factors,
            exponent,
        }
    }

    /// Builds the per-residue index table over 0..q from a component lookup.
    fn idx_table(q: u32, _pe: u64, lookup: impl Fn(u64) -> u32) -> Vec<u32> {
        let qu = q as u64;
        (0..qu)
            .map(|r| {
                if gcd_u64(r, qu) == 1 {
                    lookup(r)
                } else {
                    u32::MAX
                }
            })
            .collect()
    }

    /// Component discrete logs of a unit residue.
    fn components(&self, r: u32) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| f.idx[r as usize] as u64)
            .collect()
    }
}

/// A Dirichlet character mod q, identified by its Conrey label.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    pub modulus: u32,
    pub label: u32,
    pub conductor: u32,
    pub is_principal: bool,
    pub is_primitive: bool,
    /// true when χ(−1) = 1.
    pub is_even: bool,
    /// Denominator of the exact value exponents; equals the character order.
    order: u64,
    /// χ(n) = e(exponents[n]/order); None exactly when gcd(n, q) > 1.
    exponents: Vec<Option<u64>>,
    values: Vec<Complex64>,
}

/// e(num/den) with quarter-turn angles made exact so real characters have
/// exactly real tables.
fn root_of_unity(num: u64, den: u64) -> Complex64 {
    debug_assert!(num < den);
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * num == den {
        return Complex64::new(0.0, 1.0);
    }
    if 2 * num == den {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * num == 3 * den {
        return Complex64::new(0.0, -1.0);
    }
    let theta = 2.0 * PI * (num as f64) / (den as f64);
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// JSON shape of one character, as emitted by the CLI.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterJson {
    pub modulus: u32,
    /// Conrey label.
    pub label: u32,
    pub conductor: u32,
    pub parity: &'static str,
    pub is_principal: bool,
    pub is_primitive: bool,
    #[serde(rename = "valueTable")]
    pub values: Vec<[f64; 2]>,
}

/// Partial sum S_χ(u) = Σ_{a ≤ u} χ(a).
#[derive(Debug, Clone)]
pub struct PartialCharSum {
    pub modulus: u32,
    pub conrey_label: u32,
    pub bound: f64,
    pub value: Complex64,
}

impl DirichletCharacter {
    /// The character mod `modulus` with the given Conrey label (reduced mod q;
    /// must be coprime to q).
    pub fn from_conrey(modulus: u32, label: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be >= 1".into()));
        }
        let structure = GroupStructure::build(modulus);
        let reduced = if modulus == 1 { 0 } else { label % modulus };
        if modulus > 1 && gcd_u64(reduced as u64, modulus as u64) != 1 {
            return Err(Error::InvalidArgument(format!(
                "Conrey label {label} is not coprime to modulus {modulus}"
            )));
        }
        Ok(Self::from_structure(&structure, reduced))
    }

    /// All φ(q) characters mod q, sorted by Conrey label, principal first
    /// (label 1 is always principal).
    pub fn enumerate(modulus: u32) -> Result<Vec<Self>> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be >= 1".into()));
        }
        let structure = GroupStructure::build(modulus);
        if modulus == 1 {
            return Ok(vec![Self::from_structure(&structure, 0)]);
        }
        Ok((1..modulus)
            .filter(|&n| gcd_u64(n as u64, modulus as u64) == 1)
            .map(|n| Self::from_structure(&structure, n))
            .collect())
    }

    /// `residue` is the canonical label residue: label mod q (0 only for q=1).
    fn from_structure(structure: &GroupStructure, residue: u32) -> Self {
        let q = structure.q;
        let qu = q as u64;
        debug_assert!(residue < q || (q == 1 && residue == 0));
        let label_components = structure.components(residue);
        let d = structure.exponent;

        // Raw exponents over the common denominator d = lcm of factor orders.
        let mut raw: Vec<Option<u64>> = Vec::with_capacity(q as usize);
        for m in 0..qu {
            if gcd_u64(m, qu) != 1 {
                raw.push(None);
                continue;
            }
            let mut num = 0u64;
            for (factor, &a) in structure.factors.iter().zip(&label_components) {
                let b = factor.idx[m as usize] as u64;
                num = (num + (a * b % factor.order) * (d / factor.order)) % d;
            }
            raw.push(Some(num));
        }

        // Normalize the denominator down to the character order.
        let common = raw
            .iter()
            .flatten()
            .fold(d, |acc, &e| if e == 0 { acc } else { gcd_u64(acc, e) });
        let order = d / common;
        let exponents: Vec<Option<u64>> = raw.into_iter().map(|o| o.map(|e| e / common)).collect();
        let values: Vec<Complex64> = exponents
            .iter()
            .map(|o| match o {
                Some(e) => root_of_unity(*e, order),
                None => Complex64::new(0.0, 0.0),
            })
            .collect();

        let conductor = Self::conductor_from_components(structure, &label_components);
        let is_principal = conductor == 1;
        let is_even = if q <= 2 {
            true
        } else {
            exponents[(q - 1) as usize] == Some(0)
        };
        let label = if q == 1 { 1 } else { residue };
        DirichletCharacter {
            modulus: q,
            label,
            conductor,
            is_principal,
            is_primitive: conductor == q,
            is_even,
            order,
            exponents,
            values,
        }
    }

    /// Conductor of the character with these component indices: product over
    /// factors of the smallest p-power modulus its p-component descends to.
    fn conductor_from_components(structure: &GroupStructure, comps: &[u64]) -> u32 {
        let mut conductor = 1u64;
        let mut two_sign: Option<u64> = None;
        for (factor, &a) in structure.factors.iter().zip(comps) {
            match factor.kind {
                FactorKind::OddPrime { p, e, .. } => {
                    if a != 0 {
                        let mut v = 0u32;
                        let mut aa = a;
                        while aa % p == 0 {
                            aa /= p;
                            v += 1;
                        }
                        conductor *= p.pow(e - v);
                    }
                }
                FactorKind::FourPart => {
                    if a != 0 {
                        conductor *= 4;
                    }
                }
                FactorKind::TwoSign { .. } => {
                    two_sign = Some(a);
                }
                FactorKind::TwoFive { e } => {
                    let sign = two_sign.take().unwrap_or(0);
                    if a != 0 {
                        let v = a.trailing_zeros();
                        conductor *= 1u64 << (e - v);
                    } else if sign != 0 {
                        conductor *= 4;
                    }
                }
            }
        }
        conductor as u32
    }

    /// χ(n) for any integer n, reduced mod q.
    pub fn eval(&self, n: i64) -> Complex64 {
        let q = self.modulus as i64;
        let r = n.rem_euclid(q) as usize;
        self.values[r]
    }

    /// Exact value exponent: χ(n) = e(num/den); None when χ(n) = 0.
    pub fn exponent(&self, n: i64) -> Option<(u64, u64)> {
        let q = self.modulus as i64;
        let r = n.rem_euclid(q) as usize;
        self.exponents[r].map(|e| (e, self.order))
    }

    /// Multiplicative order of χ in the dual group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Full value table χ(0..q−1).
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn parity(&self) -> &'static str {
        if self.is_even {
            "even"
        } else {
            "odd"
        }
    }

    /// The conjugate character; its Conrey label is label⁻¹ mod q.
    pub fn conjugate(&self) -> Self {
        let inv = if self.modulus <= 2 {
            1
        } else {
            mod_inverse(self.label as u64, self.modulus as u64).expect("label is a unit") as u32
        };
        Self::from_conrey(self.modulus, inv).expect("inverse label is a unit")
    }

    /// The primitive character mod conductor inducing χ: agrees with χ on all
    /// n coprime to q.  Constructed by dividing each component index down to
    /// the conductor's prime powers and CRT-combining the component residues
    /// back into a Conrey label.
    pub fn induced_primitive(&self) -> Result<Self> {
        if self.is_principal {
            return Err(Error::InvalidArgument(
                "principal character has conductor 1; no primitive non-principal inducer".into(),
            ));
        }
        if self.is_primitive {
            return Ok(self.clone());
        }
        let structure = GroupStructure::build(self.modulus);
        let comps = structure.components(self.label % self.modulus);
        let qstar = self.conductor as u64;

        // Component residues of the induced label mod each prime power of q*.
        let mut residues: Vec<(u64, u64)> = Vec::new(); // (p^f, residue)
        let mut two_sign = 0u64;
        for (factor, &a) in structure.factors.iter().zip(&comps) {
            match factor.kind {
                FactorKind::OddPrime { p, e, g } => {
                    if a == 0 || !qstar.is_multiple_of(p) {
                        continue;
                    }
                    let mut v = 0u32;
                    let mut aa = a;
                    while aa % p == 0 {
                        aa /= p;
                        v += 1;
                    }
                    let pf = p.pow(e - v);
                    residues.push((pf, mod_pow(g % pf, aa, pf)));
                }
                FactorKind::FourPart => {
                    if a != 0 {
                        residues.push((4, 3));
                    }
                }
                FactorKind::TwoSign { .. } => {
                    two_sign = a;
                }
                FactorKind::TwoFive { e } => {
                    if a != 0 {
                        let v = a.trailing_zeros();
                        let pf = 1u64 << (e - v);
                        let mut r = mod_pow(5, a >> v, pf);
                        if two_sign == 1 {
                            r = (pf - r) % pf;
                        }
                        residues.push((pf, r));
                    } else if two_sign == 1 {
                        residues.push((4, 3));
                    }
                }
            }
        }

        // CRT combination into the label mod q*.
        let mut label = 0u64;
        let mut modulus = 1u64;
        for &(m, r) in &residues {
            let minv = mod_inverse(modulus % m, m).expect("prime powers are coprime");
            let diff = (r + m - label % m) % m;
            label += modulus * ((diff as u128 * minv as u128 % m as u128) as u64);
            modulus *= m;
        }
        debug_assert_eq!(modulus, qstar);
        let induced = Self::from_conrey(self.conductor, label as u32)?;
        debug_assert!(induced.is_primitive);
        Ok(induced)
    }

    /// Gauss sum τ(χ) = Σ_{a=1}^q χ(a) e(a/q), by direct summation.
    pub fn gauss_sum(&self) -> Complex64 {
        let q = self.modulus as u64;
        let mut acc = ComplexKahan::new();
        for a in 1..=q {
            let chi = self.values[(a % q) as usize];
            if chi == Complex64::new(0.0, 0.0) {
                continue;
            }
            let theta = 2.0 * PI * (a as f64) / (q as f64);
            let (s, c) = theta.sin_cos();
            acc.add(chi * Complex64::new(c, s));
        }
        acc.total()
    }

    /// S_χ(u) = Σ_{a ≤ u} χ(a), exact finite sum using periodicity.
    pub fn partial_sum(&self, u: f64) -> PartialCharSum {
        assert!(u >= 0.0, "partial sum bound must be nonnegative");
        let q = self.modulus as u64;
        let m = u.floor() as u64;
        let full_periods = m / q;
        let remainder = m % q;
        let mut period = ComplexKahan::new();
        for a in 1..=q {
            period.add(self.values[(a % q) as usize]);
        }
        let mut acc = ComplexKahan::new();
        for a in 1..=remainder {
            acc.add(self.values[a as usize]);
        }
        let value = acc.total() + period.total() * (full_periods as f64);
        PartialCharSum {
            modulus: self.modulus,
            conrey_label: self.label,
            bound: u,
            value,
        }
    }

    pub fn json_record(&self) -> CharacterJson {
        CharacterJson {
            modulus: self.modulus,
            label: self.label,
            conductor: self.conductor,
            parity: self.parity(),
            is_principal: self.is_principal,
            is_primitive: self.is_primitive,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    /// Exact equality of χ(m) and other(m) as roots of unity.
    pub fn value_eq(&self, m: i64, other: &Self, n: i64) -> bool {
        match (self.exponent(m), other.exponent(n)) {
            (None, None) => true,
            (Some((a, da)), Some((b, db))) => {
                (a as u128) * (db as u128) == (b as u128) * (da as u128)
            }
            _ => false,
        }
    }
}
