//! Geometric sums over the progression: sum over k <= T of n^{-2pi i k beta}
//! in closed form, bounded through the distance from beta log n to the
//! nearest integer.
//!
//!     cargo run --release --example geometric_sums

use lprog::moments::{geometric_progression_sum, geometric_sum_bound, nearest_integer_distance};

fn main() -> lprog::Result<()> {
    let t_count = 1000u64;
    let beta = 0.7;

    println!("T = {t_count}, beta = {beta}:");
    println!(
        "{:>6} {:>12} {:>14} {:>14} {:>12}",
        "n", "||b log n||", "|sum|", "bound", "slack"
    );
    for n in [2u64, 3, 7, 10, 100, 1024, 59049] {
        let dist = nearest_integer_distance(beta * (n as f64).ln());
        let sum = geometric_progression_sum(n, beta, t_count)?;
        let bound = geometric_sum_bound(n, beta, t_count);
        assert!(sum.norm() <= bound * (1.0 + 1e-9));
        println!(
            "{:>6} {:>12.6} {:>14.4} {:>14.4} {:>12.4}",
            n,
            dist,
            sum.norm(),
            bound,
            bound - sum.norm()
        );
    }

    // n = 1 is the resonant case: every term is 1, the sum is exactly T,
    // and the bound degrades to T as well.
    let resonant = geometric_progression_sum(1, beta, t_count)?;
    assert_eq!(resonant.re, t_count as f64);
    println!("\nresonance at n = 1: sum = {} (= T)", resonant.re);

    // Near-resonance: pick n with beta log n close to an integer and the
    // cancellation stalls, tracked by the 1/(2 dist) part of the bound.
    let near = (2..100_000u64)
        .min_by(|a, b| {
            nearest_integer_distance(beta * (*a as f64).ln())
                .partial_cmp(&nearest_integer_distance(beta * (*b as f64).ln()))
                .unwrap()
        })
        .unwrap();
    let dist = nearest_integer_distance(beta * (near as f64).ln());
    let sum = geometric_progression_sum(near, beta, t_count)?;
    println!(
        "worst n below 1e5: n = {near}, distance {dist:.3e}, |sum| = {:.1} of T = {t_count}",
        sum.norm()
    );
    Ok(())
}
