//! Per-point nonvanishing verdicts along the progression, with the strict
//! error-radius policy: a point is certified nonzero only when |value|
//! strictly exceeds the evaluation radius; anything else stays undetermined.
//!
//!     cargo run --release --example nonvanishing_scan

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::moments::{nonvanishing_scan, EvalPlan, ProgressionSpec, Verdict};

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    let chi = DirichletCharacter::from_conrey(3, 2)?;
    let spec = ProgressionSpec::new(0.0, 1.0)?;

    let outcome = nonvanishing_scan(
        200,
        spec,
        &chi,
        EvalPlan::Hybrid { c: 2.0 },
        &consts.constants,
    )?;
    let s = &outcome.summary;
    println!(
        "T = {}: {} nonzero, {} undetermined; density vs T/log T = {:.4}",
        s.t_count, s.nonzero_count, s.undetermined_count, s.ratio_vs_t_over_log_t
    );
    println!(
        "frozen density floor: {:.4}",
        consts.constants.nonvanish_ratio_min
    );

    // The five smallest certified |L| values: these are the points where
    // retries (x doubling, then one oracle pass) earn their keep.
    let mut by_abs: Vec<_> = outcome
        .verdicts
        .iter()
        .filter(|v| v.verdict == Verdict::Nonzero)
        .collect();
    by_abs.sort_by(|a, b| a.value.norm().partial_cmp(&b.value.norm()).unwrap());
    println!("\nclosest certified calls:");
    for v in by_abs.iter().take(5) {
        println!(
            "  k = {:>3}  t = {:>9.4}  |L| = {:.6e}  radius = {:.2e}  headroom {:.1}x",
            v.k,
            v.t,
            v.value.norm(),
            v.error_radius,
            v.value.norm() / v.error_radius
        );
    }

    if s.undetermined_count > 0 {
        println!("\nundetermined points:");
        for v in outcome
            .verdicts
            .iter()
            .filter(|v| v.verdict == Verdict::Undetermined)
        {
            println!("  k = {} t = {:.4}", v.k, v.t);
        }
    }

    // A coarser plan on the same progression: pure truncated evaluation,
    // no oracle fallback, so borderline points may stay undetermined.
    let strict = nonvanishing_scan(
        200,
        spec,
        &chi,
        EvalPlan::Truncated { c: 2.0 },
        &consts.constants,
    )?;
    println!(
        "\nwithout the oracle fallback: {} nonzero, {} undetermined",
        strict.summary.nonzero_count, strict.summary.undetermined_count
    );
    Ok(())
}
