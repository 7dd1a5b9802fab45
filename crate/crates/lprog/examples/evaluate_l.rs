//! Dual-route evaluation of L(s, chi): the Hurwitz-zeta oracle against the
//! truncated Dirichlet series with its explicit error radius.
//!
//!     cargo run --release --example evaluate_l

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::lfunc::{l_truncated, l_via_hurwitz, ComplexPoint, TruncationPlan};
use std::f64::consts::PI;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    let cf = consts.constants.truncation_constant_factor;

    // Closed-form anchor: L(1, chi_4) = pi/4 via the Leibniz series.
    let chi4 = DirichletCharacter::from_conrey(4, 3)?;
    let leibniz = l_via_hurwitz(ComplexPoint::new(1.0, 0.0), &chi4)?;
    println!(
        "L(1, chi_4) = {:.15}   pi/4 = {:.15}",
        leibniz.value.re,
        PI / 4.0
    );

    // A walk up the critical line.  The truncation length must satisfy the
    // admissibility condition x > C|t|/2pi before the radius formula holds.
    let chi = DirichletCharacter::from_conrey(7, 3)?;
    let c = 2.0;
    println!("\nL(1/2 + it, chi_7 label 3), truncation C = {c}:");
    println!(
        "{:>6} {:>9} {:>24} {:>24} {:>11} {:>11}",
        "t", "x", "oracle", "truncated", "|diff|", "radius"
    );
    for t in [0.0, 5.0, 15.0, 40.0, 80.0] {
        let x = 30.0f64.max(1.5 * c * t / (2.0 * PI));
        let plan = TruncationPlan::new(c, x, cf)?;
        let s = ComplexPoint::new(0.5, t);
        let oracle = l_via_hurwitz(s, &chi)?;
        let series = l_truncated(s, &chi, &plan)?;
        let diff = (oracle.value - series.value).norm();
        assert!(diff <= series.error_radius, "radius violated at t = {t}");
        println!(
            "{:>6.1} {:>9.2} {:>11.6}{:>+11.6}i {:>11.6}{:>+11.6}i {:>11.2e} {:>11.2e}",
            t,
            x,
            oracle.value.re,
            oracle.value.im,
            series.value.re,
            series.value.im,
            diff,
            series.error_radius
        );
    }

    // The radius is a pure function of the plan: it can be priced before
    // summing a single term.
    let plan = TruncationPlan::new(2.0, 50.0, cf)?;
    let s = ComplexPoint::new(0.5, 12.0);
    println!(
        "\npriced radius at x=50: {:.3e} (admits |t| up to {:.1})",
        plan.formula_radius(s, 7),
        2.0 * PI * 50.0 / 2.0
    );
    assert!(plan.admits(12.0) && !plan.admits(200.0));
    Ok(())
}
