//! Linear sieve for the arithmetic functions backing coefficient formulas:
//! Möbius μ(n), von Mangoldt Λ(n), distinct-prime-factor count ω(n), and
//! smallest prime factors.  All four arrays come out of one linear-sieve
//! pass, so every entry is produced by a single tested code path.

use crate::error::{Error, Result};

/// Immutable table of sieved arithmetic functions on 1..=limit.
///
/// Arrays are indexed directly by n; index 0 is padding.  Λ is stored in
/// natural-log units as f64 (downstream sums tolerate 1e-12 per-term error).
#[derive(Debug, Clone, PartialEq)]
pub struct SieveTable {
    pub limit: usize,
    pub mobius: Vec<i8>,
    pub von_mangoldt: Vec<f64>,
    pub omega_count: Vec<u8>,
    pub smallest_prime_factor: Vec<u32>,
    primes: Vec<u32>,
}

impl SieveTable {
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }
}

/// Builds the full table with a linear (Euler) sieve: each composite is
/// visited exactly once, as (smallest prime factor) x (cofactor).
pub fn build_sieve(limit: usize) -> Result<SieveTable> {
    if limit == 0 {
        return Err(Error::InvalidArgument("sieve limit must be >= 1".into()));
    }
    let n = limit;
    let mut mobius = vec![0i8; n + 1];
    let mut von_mangoldt = vec![0f64; n + 1];
    let mut omega_count = vec![0u8; n + 1];
    let mut spf = vec![0u32; n + 1];
    // True for n = p^k; carried through the sieve so Λ needs no refactoring pass.
    let mut prime_power = vec![false; n + 1];
    let mut primes: Vec<u32> = Vec::new();

    if n >= 1 {
        mobius[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mobius[i] = -1;
            omega_count[i] = 1;
            prime_power[i] = true;
            von_mangoldt[i] = (i as f64).ln();
            primes.push(i as u32);
        }
        for &p in &primes {
            let p_us = p as usize;
            if p > spf[i] || p_us > n / i {
                break;
            }
            let m = p_us * i;
            spf[m] = p;
            if p == spf[i] {
                // p divides i: m gains no new prime, squarefreeness is lost.
                mobius[m] = 0;
                omega_count[m] = omega_count[i];
                prime_power[m] = prime_power[i];
                if prime_power[m] {
                    von_mangoldt[m] = (p as f64).ln();
                }
                break;
            } else {
                mobius[m] = -mobius[i];
                omega_count[m] = omega_count[i] + 1;
            }
        }
    }

    Ok(SieveTable {
        limit,
        mobius,
        von_mangoldt,
        omega_count,
        smallest_prime_factor: spf,
        primes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division reference: (mobius, von_mangoldt, omega, spf) for one n.
    fn factor_oracle(n: usize) -> (i8, f64, u8, u32) {
        assert!(n >= 1);
        if n == 1 {
            return (1, 0.0, 0, 0);
        }
        let mut m = n;
        let mut distinct = 0u8;
        let mut squarefree = true;
        let mut spf = 0u32;
        let mut lambda = 0.0;
        let mut single_prime = true;
        let mut d = 2usize;
        while d * d <= m {
            if m.is_multiple_of(d) {
                if spf == 0 {
                    spf = d as u32;
                }
                distinct += 1;
                if distinct > 1 {
                    single_prime = false;
                }
                let mut e = 0;
                while m.is_multiple_of(d) {
                    m /= d;
                    e += 1;
                }
                if e > 1 {
                    squarefree = false;
                }
            }
            d += 1;
        }
        if m > 1 {
            if spf == 0 {
                spf = m as u32;
            }
            distinct += 1;
            if distinct > 1 {
                single_prime = false;
            }
        }
        if single_prime {
            let p = if m > 1 { m } else { spf as usize };
            lambda = (p as f64).ln();
        }
        let mu = if !squarefree {
            0
        } else if distinct.is_multiple_of(2) {
            1
        } else {
            -1
        };
        (mu, lambda, distinct, spf)
    }

    #[test]
    fn rejects_zero_limit() {
        assert!(build_sieve(0).is_err());
    }

    #[test]
    fn limit_one_table() {
        let t = build_sieve(1).unwrap();
        assert_eq!(t.mobius[1], 1);
        assert_eq!(t.von_mangoldt[1], 0.0);
        assert_eq!(t.omega_count[1], 0);
    }

    #[test]
    fn spot_values_to_twelve() {
        let t = build_sieve(12).unwrap();
        assert_eq!(t.mobius[6], 1);
        assert_eq!(t.omega_count[12], 2);
        assert_eq!(t.von_mangoldt[8], 2f64.ln());
        assert_eq!(t.von_mangoldt[6], 0.0);
        assert_eq!(t.mobius[4], 0);
        assert_eq!(t.smallest_prime_factor[9], 3);
    }

    #[test]
    fn matches_trial_division_exhaustively() {
        let n = 10_000;
        let t = build_sieve(n).unwrap();
        for m in 1..=n {
            let (mu, lambda, om, spf) = factor_oracle(m);
            assert_eq!(t.mobius[m], mu, "mobius at {m}");
            assert_eq!(t.omega_count[m], om, "omega at {m}");
            if m > 1 {
                assert_eq!(t.smallest_prime_factor[m], spf, "spf at {m}");
            }
            assert!(
                (t.von_mangoldt[m] - lambda).abs() < 1e-12,
                "von Mangoldt at {m}"
            );
        }
    }

    #[test]
    fn mobius_divisor_sums_detect_one() {
        let n = 10_000;
        let t = build_sieve(n).unwrap();
        // Sum over divisors via the lattice of multiples: one pass, exact ints.
        let mut sums = vec![0i64; n + 1];
        for d in 1..=n {
            if t.mobius[d] == 0 {
                continue;
            }
            let mut m = d;
            while m <= n {
                sums[m] += t.mobius[d] as i64;
                m += d;
            }
        }
        assert_eq!(sums[1], 1);
        for (m, s) in sums.iter().enumerate().skip(2) {
            assert_eq!(*s, 0, "sum_(d|{m}) mu(d)");
        }
    }

    #[test]
    fn von_mangoldt_divisor_sums_give_log() {
        let n = 10_000;
        let t = build_sieve(n).unwrap();
        let mut sums = vec![0f64; n + 1];
        for d in 2..=n {
            if t.von_mangoldt[d] == 0.0 {
                continue;
            }
            let mut m = d;
            while m <= n {
                sums[m] += t.von_mangoldt[d];
                m += d;
            }
        }
        for (m, s) in sums.iter().enumerate().skip(1) {
            assert!(
                (s - (m as f64).ln()).abs() < 1e-12,
                "sum_(d|{m}) Lambda(d) = log {m}"
            );
        }
    }

    #[test]
    fn million_limit_sampled_against_oracle() {
        use rand::{Rng, SeedableRng};
        let n = 1_000_000;
        let t = build_sieve(n).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut mertens = 0i64;
        for m in 1..=n {
            mertens += t.mobius[m] as i64;
        }
        for _ in 0..10_000 {
            let m = rng.gen_range(1..=n);
            let (mu, lambda, om, _) = factor_oracle(m);
            assert_eq!(t.mobius[m], mu);
            assert_eq!(t.omega_count[m], om);
            assert!((t.von_mangoldt[m] - lambda).abs() < 1e-12);
        }
        // Mertens sum at 10^6; the sampled oracle above guards the entries.
        assert_eq!(mertens, 212);
    }

    #[test]
    fn deterministic_rebuild() {
        let a = build_sieve(5_000).unwrap();
        let b = build_sieve(5_000).unwrap();
        assert_eq!(a, b);
    }
}
