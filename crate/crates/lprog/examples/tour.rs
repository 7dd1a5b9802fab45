//! A quick pass over the main surfaces: characters, the two L evaluators,
//! a small moment run, and one bound ledger row.
//!
//!     cargo run --release --example tour

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::lfunc::{l_truncated, l_via_hurwitz, ComplexPoint, TruncationPlan};
use lprog::mollifier::PolyLabel;
use lprog::moments::{first_moment, mollifier_for_run, EvalPlan, ProgressionSpec};
use lprog::sieve::build_sieve;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    println!("constants: {} ({})", consts.source, &consts.sha256[..12]);

    // The character group mod 5: four characters, one principal.
    let chars = DirichletCharacter::enumerate(5)?;
    println!("\ncharacters mod 5:");
    for chi in &chars {
        println!(
            "  label {}  conductor {}  {}  {}",
            chi.label,
            chi.conductor,
            chi.parity(),
            if chi.is_primitive {
                "primitive"
            } else {
                "imprimitive"
            }
        );
    }

    // One point, both routes.  The truncated route carries an explicit
    // error radius; the oracle is the independent reference.
    let chi = DirichletCharacter::from_conrey(3, 2)?;
    let s = ComplexPoint::new(0.5, 10.0);
    let oracle = l_via_hurwitz(s, &chi)?;
    let plan = TruncationPlan::new(2.0, 40.0, consts.constants.truncation_constant_factor)?;
    let series = l_truncated(s, &chi, &plan)?;
    println!("\nL(1/2 + 10i, chi_3):");
    println!(
        "  oracle    {:+.12}  radius {:.2e}",
        oracle.value, oracle.error_radius
    );
    println!(
        "  truncated {:+.12}  radius {:.2e}",
        series.value, series.error_radius
    );
    println!(
        "  |difference| = {:.2e}",
        (oracle.value - series.value).norm()
    );

    // First mollified moment over s_k = 1/2 + 2pi i k, k = 1..200.
    let spec = ProgressionSpec::new(0.0, 1.0)?;
    let mollifier = mollifier_for_run(PolyLabel::P1, 200, Some(0.4), spec, 3)?;
    let sieve = build_sieve(1000)?;
    let report = first_moment(
        200,
        spec,
        &chi,
        &mollifier,
        Some(0.4),
        EvalPlan::Truncated { c: 2.0 },
        &sieve,
        &consts.constants,
    )?;
    println!("\nfirst moment, T = 200:");
    println!(
        "  S1/T = {:+.6} {:+.6}i  (drifts toward 1)",
        report.s1[0] / 200.0,
        report.s1[1] / 200.0
    );
    println!(
        "  S2 = {:.3}, Cauchy-Schwarz count bound = {:.1}",
        report.s2, report.cs_lower_bound
    );
    println!(
        "  nonzero {} / undetermined {}",
        report.nonzero_count, report.undetermined_count
    );

    // One nearest-integer sum against its bound shape.
    let row = lprog::bounds::min_sum_record(
        1.0,
        1000.0,
        1.0,
        100.0,
        lprog::bounds::MinSumVariant::BetaGe1,
    )?;
    println!("\nmin-sum ledger row (A=1, B=1000, beta=1, T=100):");
    println!(
        "  exact {:.3}  bound shape {:.3}  ratio {:.3}",
        row.exact, row.bound, row.ratio
    );
    Ok(())
}
