//! How the truncated-series error radius scales, and how the observed error
//! compares with it across the dual-route conformance grid.
//!
//!     cargo run --release --example truncation_error

use lprog::constants;
use lprog::lfunc::{run_conformance, ComplexPoint, TruncationPlan};

fn main() -> lprog::Result<()> {
    let cf = constants::load()?.constants.truncation_constant_factor;

    // Doubling x at sigma = 1/2 shrinks the radius by at least 2^{-1/2},
    // up to the small additive float budget.
    let s = ComplexPoint::new(0.5, 10.0);
    println!("radius scaling at s = 1/2 + 10i, q = 5, C = 2:");
    let mut x = 20.0;
    let mut prev = f64::NAN;
    for _ in 0..6 {
        let plan = TruncationPlan::new(2.0, x, cf)?;
        let r = plan.formula_radius(s, 5);
        let note = if prev.is_finite() {
            format!("shrink factor {:.4}", r / prev)
        } else {
            String::new()
        };
        println!("  x = {x:>6.0}  radius = {r:.4e}  {note}");
        prev = r;
        x *= 2.0;
    }

    // The full grid: every small modulus, every non-principal character,
    // both signs of t, three admissibility constants, three offsets.
    let points = run_conformance(cf)?;
    let worst = points
        .iter()
        .max_by(|a, b| {
            (a.delta / a.radius)
                .partial_cmp(&(b.delta / b.radius))
                .unwrap()
        })
        .unwrap();
    let covered = points.iter().filter(|p| p.delta <= p.radius).count();
    println!(
        "\nconformance grid: {}/{} points inside the radius (factor {cf})",
        covered,
        points.len()
    );
    println!(
        "tightest point: q={} label={} t={} C={} x={:.2}  delta/radius = {:.4}",
        worst.q,
        worst.label,
        worst.t,
        worst.c,
        worst.x,
        worst.delta / worst.radius
    );

    // Re-fit view: with the constant factor stripped to 1, the largest
    // observed need tells how much slack the frozen factor carries.
    let unit = run_conformance(1.0)?;
    let needed = unit
        .iter()
        .map(|p| (p.delta - p.float_radius).max(0.0) / p.unit_radius)
        .fold(0.0f64, f64::max);
    println!("factor needed on this grid: {needed:.4}  (frozen: {cf})");
    Ok(())
}
