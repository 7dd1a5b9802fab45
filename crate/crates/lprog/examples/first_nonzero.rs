//! The first certified nonzero L-value along t_k = a + kb, against the
//! explicit theorem-shaped ceiling for where it must appear.
//!
//!     cargo run --release --example first_nonzero

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::moments::{first_nonzero_index, first_nonzero_theorem_bound, EvalPlan, ProgressionSpec};
use std::f64::consts::PI;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    let d = 6.0;

    println!("first certified nonzero along t_k = kb (D = {d}):");
    println!(
        "{:>4} {:>6} {:>10} {:>4} {:>12} {:>14} {:>12}",
        "q", "label", "b", "k", "|L|", "radius", "ceiling"
    );
    for q in [3u32, 4, 5] {
        for b_mult in [1.0, 2.0] {
            let b = 2.0 * PI * b_mult;
            let chi = DirichletCharacter::enumerate(q)?
                .into_iter()
                .find(|c| !c.is_principal)
                .unwrap();
            let rep = first_nonzero_index(
                &chi,
                0.0,
                b,
                d,
                EvalPlan::Hybrid { c: 2.0 },
                &consts.constants,
            )?;
            assert!((rep.k as f64) <= rep.theorem_bound);
            let abs = (rep.value[0].powi(2) + rep.value[1].powi(2)).sqrt();
            println!(
                "{:>4} {:>6} {:>10.4} {:>4} {:>12.6} {:>14.2e} {:>12.3e}",
                q, chi.label, b, rep.k, abs, rep.error_radius, rep.theorem_bound
            );
        }
    }

    // The two case formulas behind the ceiling: slow progressions pay in
    // 1/b, fast ones in b^3.
    println!("\nceiling shapes at q = 5, D = {d}:");
    for b in [0.5, 2.0, 2.0 * PI, 50.0] {
        let (bound, case) = first_nonzero_theorem_bound(5, b, d)?;
        println!("  b = {b:>8.4}  {case:<10}  ceiling = {bound:.3e}");
    }

    // Negative progressions work through conjugation: |L| at conjugate
    // points matches, so the index search is unchanged.
    let (spec, flipped) = ProgressionSpec::from_offsets(0.0, -2.0 * PI)?;
    println!(
        "\nb = -2pi maps to beta = {} with conjugation {}",
        spec.beta,
        if flipped { "applied" } else { "not applied" }
    );
    Ok(())
}
