//! The mollifier M(s, chi, P) and the convolved coefficients behind the
//! moment computations, with their exact small-n identities.
//!
//!     cargo run --release --example mollifier_coeffs

use lprog::characters::DirichletCharacter;
use lprog::lfunc::ComplexPoint;
use lprog::mollifier::{build_coeffs, eval_mollifier, CoeffKind, MollifierSpec};
use lprog::sieve::build_sieve;

fn main() -> lprog::Result<()> {
    let q = 3;
    let u = 400.0;
    let x = 1000.0;
    // Sieve must cover the full convolution range qUX for the divisor-count
    // checks below.
    let sieve = build_sieve((q as f64 * u * x) as usize + 2)?;

    // a_n comes from (sum over l <= qU of l^{-s}) * (sum over m <= X of
    // mu(m)(1 - log m/log X) m^{-s}).  For 1 < n <= min(X, qU) every divisor
    // pair is present and the weights telescope to Lambda(n)/log X; past
    // that the coefficients decay but stay bounded by the divisor count
    // 2^{omega(n)}.
    let a = build_coeffs(CoeffKind::ACoeffs, q, u, x, &sieve)?;
    let log_x = x.ln();
    println!("a_n identity check (1 < n <= X = {x}):");
    for n in [2usize, 3, 4, 8, 9, 97, 128, 625, 997] {
        let expect = sieve.von_mangoldt[n] / log_x;
        let got = a.values[n];
        println!(
            "  n={n:<5} a_n = {got:>12.9}  Lambda(n)/log X = {expect:>12.9}  |diff| = {:.1e}",
            (got - expect).abs()
        );
        assert!((got - expect).abs() < 1e-12);
    }

    // b_n uses the unweighted Mobius sum and vanishes identically on
    // 1 < n <= X.
    let b = build_coeffs(CoeffKind::BCoeffs, q, u, x, &sieve)?;
    let nonzero_small = (2..=x as usize).filter(|&n| b.values[n] != 0.0).count();
    println!("\nb_n = 0 for 1 < n <= X: {nonzero_small} exceptions");

    // Divisor-bound envelope over the whole table.
    let mut worst = (0usize, 0.0f64);
    for n in 1..=a.len() {
        let cap = 2f64.powi(sieve.omega_count[n] as i32);
        for table in [&a, &b] {
            let v = table.values[n].abs();
            assert!(v <= cap + 1e-9, "divisor bound failed at n = {n}");
            if v / cap > worst.1 {
                worst = (n, v / cap);
            }
        }
    }
    println!(
        "divisor bound |c_n| <= 2^omega(n) holds up to n = {}; tightest at n = {} ({:.3} of cap)",
        a.len(),
        worst.0,
        worst.1
    );

    // The mollifier values the moment pass actually uses.
    let spec = MollifierSpec::p1(x)?;
    let chi = DirichletCharacter::from_conrey(q, 2)?;
    println!("\nM(1/2 + it, chi_3, P1), X = {x}:");
    for t in [0.0, 7.5, 75.0] {
        let m = eval_mollifier(ComplexPoint::new(0.5, t), &chi, &spec, &sieve)?;
        println!("  t = {t:>6}  M = {:+.9} {:+.9}i", m.re, m.im);
    }
    Ok(())
}
