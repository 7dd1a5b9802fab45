//! Nearest-integer min-sums: exact values of
//! sum over A < n <= B of n^{-1/2} min(T, 1/||beta log n||) against their
//! closed bound shapes, plus the per-interval unweighted variant and the
//! slow-growth gauge w_L.
//!
//!     cargo run --release --example min_sums

use lprog::bounds::{
    ej_boundary, lemma41_grid, lemma61c_grid, min_sum_record, prop42_grid, w_function,
    MinSumVariant,
};
use lprog::constants;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?.constants;

    // Single rows first: the ratio column is exact/bound, so anything below
    // the frozen ceiling means the shape explains the sum.
    println!("hand-picked rows:");
    for (a, b, beta, t, variant) in [
        (1.0, 1000.0, 0.5, 100.0, MinSumVariant::General),
        (1.0, 1000.0, 2.0, 100.0, MinSumVariant::General),
        (1.0, 1000.0, 2.0, 100.0, MinSumVariant::BetaGe1),
        (100.0, 100000.0, 1.0, 10.0, MinSumVariant::BetaGe1),
    ] {
        let r = min_sum_record(a, b, beta, t, variant)?;
        println!(
            "  A={:<7} B={:<8} beta={:<4} T={:<6} {:<10} exact {:>12.3} bound {:>12.3} ratio {:.4}",
            r.a, r.b, r.beta, r.t, r.variant, r.exact, r.bound, r.ratio
        );
    }

    // The interval variant works on the dyadic-in-exponent blocks
    // (E_j, E_{j+1}] with E_j = floor(e^{j/beta}).
    let beta = 1.0;
    println!("\ninterval rows, beta = {beta}:");
    for j in [2u32, 5, 8] {
        let a = ej_boundary(beta, j)? as f64;
        let b = ej_boundary(beta, j + 1)? as f64;
        let r = min_sum_record(a, b, beta, 50.0, MinSumVariant::IntervalLemma { j })?;
        println!(
            "  j={j}: ({a}, {b}]  exact {:>10.3}  bound {:>10.3}  ratio {:.4}",
            r.exact, r.bound, r.ratio
        );
    }

    // Ledger grids: the frozen ceilings are the observed maxima from the
    // calibration pass, so fresh runs must stay at or below them.
    let prop = prop42_grid()?;
    let worst_general = prop
        .iter()
        .filter(|r| r.variant == "general")
        .map(|r| r.ratio)
        .fold(0.0f64, f64::max);
    let worst_beta1 = prop
        .iter()
        .filter(|r| r.variant == "beta-ge-1")
        .map(|r| r.ratio)
        .fold(0.0f64, f64::max);
    println!(
        "\nweighted grid ({} rows): general max ratio {:.4} (ceiling {:.4}), beta>=1 max {:.4} (ceiling {:.4})",
        prop.len(),
        worst_general,
        consts.prop42_general_ratio_max,
        worst_beta1,
        consts.prop42_beta_ge1_ratio_max
    );
    assert!(worst_general <= consts.prop42_general_ratio_max);
    assert!(worst_beta1 <= consts.prop42_beta_ge1_ratio_max);

    let lemma = lemma41_grid()?;
    let worst = lemma.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    println!(
        "interval grid ({} rows): max ratio {:.4} (ceiling {:.4})",
        lemma.len(),
        worst,
        consts.lemma41_ratio_max
    );
    assert!(worst <= consts.lemma41_ratio_max);

    // w_L(x) = exp(L log x / loglog x): sub-polynomial growth with the
    // exact power identity w_L^alpha = w_{alpha L}.
    println!("\nslow-growth gauge:");
    for x in [1.0e3, 1.0e6, 1.0e9] {
        let w = w_function(1.0, x)?;
        println!("  w_1({x:>6.0e}) = {:>12.4}  x^0.5 = {:>12.0}", w, x.sqrt());
        let lhs = w_function(2.0, x)?;
        assert!((w.powi(2) - lhs).abs() <= 1e-12 * lhs);
    }
    let gauge = lemma61c_grid()?;
    let gmax = gauge.iter().map(|r| r.ratio).fold(0.0f64, f64::max);
    println!(
        "inversion grid ({} rows): max x*w/y ratio {:.3} (ceiling {:.3})",
        gauge.len(),
        gmax,
        consts.lemma61c_ratio_max
    );
    Ok(())
}
