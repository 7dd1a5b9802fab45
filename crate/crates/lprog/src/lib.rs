// Validation guards are written !(x >= k) on purpose: NaN fails the
// requirement and is rejected, where the suggested x < k would let it pass.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Numerical companion library for Dirichlet L-functions sampled along
//! vertical arithmetic progressions on the critical line.
//!
//! What lives where:
//!
//! - [`sieve`]: linear sieve for μ, Λ, ω, smallest prime factors.
//! - [`characters`]: the character group mod q with Conrey labels, conductors,
//!   Gauss sums, and partial character sums.
//! - [`lfunc`]: two independent evaluators for L(s,χ), a Hurwitz-zeta
//!   Euler-Maclaurin oracle and a truncated Dirichlet series carrying an
//!   explicit error radius, plus the exact fractional-part identity and the
//!   partial-formula residual check behind the truncation bound.
//! - [`mollifier`]: the mollifier M(s,χ,P) and the convolution coefficients
//!   a_n, b_n with their exact small-n identities.
//! - [`moments`]: the progression s_k = 1/2 + 2πi(α+kβ), first and second
//!   mollified moments, Cauchy-Schwarz nonvanishing counts, per-point
//!   nonvanishing verdicts, the first-nonzero-index search, and the discrete
//!   Gallagher inequality check.
//! - [`bounds`]: nearest-integer sum ledgers (exact value vs bound shape),
//!   the w_L growth gauge, and Bauer-type main-term calculators.
//! - [`constants`]: the frozen empirical constants file and its hash.
//! - [`cli`]: the `lprog` binary surface; every subcommand is a thin wrapper
//!   over library calls and emits JSON/CSV reports embedding the resolved
//!   configuration.
//!
//! Numerical ground rules, enforced throughout: long sums accumulate in
//! ascending term order through compensated (Kahan-Neumaier) adders, parallel
//! stages reduce sequentially in fixed order, and every truncated evaluation
//! carries an explicit error radius that downstream consumers must respect.
//! Run `cargo run --example tour` for a guided pass over the main surfaces,
//! or see the per-capability examples in `examples/`.

pub mod bounds;
pub mod characters;
pub mod cli;
pub mod constants;
pub mod error;
pub mod kahan;
pub mod lfunc;
pub mod mollifier;
pub mod moments;
pub mod quadrature;
pub mod report;
pub mod sieve;

pub use error::{Error, Result};
