//! Discrete-to-continuous comparison on a well-spaced grid:
//! sum over grid points u of |F(u)|^2 is controlled by the integral of
//! |F|^2 plus cross terms with the derivative, for F = (truncated L) * M.
//!
//!     cargo run --release --example gallagher

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::mollifier::PolyLabel;
use lprog::moments::{gallagher_inequality_check, mollifier_for_run, EvalPlan, ProgressionSpec};
use lprog::sieve::build_sieve;
use std::f64::consts::PI;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    let chi = DirichletCharacter::from_conrey(3, 2)?;
    let spec = ProgressionSpec::new(0.0, 1.0)?;

    // Grid t_k = 2pi k for k = 1..50, spacing kappa = 2pi, inside
    // [T1 + kappa/2, T2 - kappa/2].
    let kappa = 2.0 * PI;
    let t_count = 50u64;
    let t1 = PI;
    let t2 = 2.0 * PI * (0.5 + t_count as f64);
    let grid: Vec<f64> = (1..=t_count).map(|k| kappa * k as f64).collect();

    let mollifier = mollifier_for_run(PolyLabel::P1, t_count, Some(0.4), spec, 3)?;
    let sieve = build_sieve(mollifier.x.ceil() as usize + 2)?;
    let report = gallagher_inequality_check(
        t1,
        t2,
        kappa,
        &grid,
        &chi,
        &mollifier,
        EvalPlan::Truncated { c: 2.0 },
        &sieve,
        &consts.constants,
    )?;

    println!(
        "grid: {} points, kappa = {kappa:.4}, window [{t1:.2}, {t2:.2}]",
        report.grid_len
    );
    println!("discrete sum  {:>12.4}", report.lhs);
    println!("integral side {:>12.4}", report.rhs);
    println!(
        "margin rhs/lhs = {:.2} (frozen record {:.2}); inequality holds: {}",
        report.margin, consts.constants.gallagher_margin, report.holds
    );
    println!(
        "pieces: I_FG = {:.4}, I_FG' = {:.4}, I_F'G = {:.4}, series length x = {:.1}",
        report.integral_fg,
        report.integral_fg_prime,
        report.integral_f_prime_g,
        report.x_truncation
    );
    assert!(report.holds);

    // Doubling the spacing halves the discrete side while the integral
    // side barely moves, so the margin widens.
    let sparse: Vec<f64> = (1..=25u64).map(|k| 2.0 * kappa * k as f64).collect();
    let wide = gallagher_inequality_check(
        t1,
        2.0 * PI * 51.5,
        2.0 * kappa,
        &sparse,
        &chi,
        &mollifier,
        EvalPlan::Truncated { c: 2.0 },
        &sieve,
        &consts.constants,
    )?;
    println!(
        "\nsparse grid ({} points, kappa = {:.4}): margin {:.2}",
        wide.grid_len,
        2.0 * kappa,
        wide.margin
    );
    Ok(())
}
