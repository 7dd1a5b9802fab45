//! Mollified moments S1 and S2 along s_k = 1/2 + 2pi i(alpha + k beta):
//! the S1/T drift toward 1, the S2/(T log T) envelope, and the resulting
//! Cauchy-Schwarz nonvanishing count.
//!
//!     cargo run --release --example moments

use lprog::characters::DirichletCharacter;
use lprog::constants;
use lprog::mollifier::PolyLabel;
use lprog::moments::{first_moment, mollifier_for_run, EvalPlan, ProgressionSpec};
use lprog::sieve::build_sieve;

fn main() -> lprog::Result<()> {
    let consts = constants::load()?;
    let chi = DirichletCharacter::from_conrey(3, 2)?;
    let spec = ProgressionSpec::new(0.0, 1.0)?;
    let theta_value = consts.constants.theta_default;
    let theta = Some(theta_value);
    let plan = EvalPlan::Truncated { c: 2.0 };

    println!("q = 3, alpha = 0, beta = 1, theta = {theta_value}");
    println!(
        "{:>6} {:>22} {:>12} {:>14} {:>9} {:>8}",
        "T", "S1/T", "|S1/T - 1|", "S2/(T log T)", "CS bound", "nonzero"
    );
    for t_count in [100u64, 250, 500, 1000, 2000] {
        let mollifier = mollifier_for_run(PolyLabel::P1, t_count, theta, spec, 3)?;
        let sieve = build_sieve(mollifier.x.ceil() as usize + 2)?;
        let rep = first_moment(
            t_count,
            spec,
            &chi,
            &mollifier,
            theta,
            plan,
            &sieve,
            &consts.constants,
        )?;
        let tf = t_count as f64;
        let s1t = rep.s1_complex() / tf;
        let drift = (s1t - num_complex::Complex64::new(1.0, 0.0)).norm();

        // |S1|^2 <= T * S2 is Cauchy-Schwarz itself and must hold for every
        // run, up to float roundoff.
        assert!(rep.s1_complex().norm_sqr() <= tf * rep.s2 * (1.0 + 1e-9));

        println!(
            "{:>6} {:>+10.6} {:>+9.6}i {:>12.6} {:>14.6} {:>9.1} {:>8}",
            t_count,
            s1t.re,
            s1t.im,
            drift,
            rep.s2 / (tf * tf.ln()),
            rep.cs_lower_bound,
            rep.nonzero_count
        );
    }

    // The second mollifier shape drops the linear taper; its length rule
    // ties X to the progression rather than to a theta power.
    let t_count = 300u64;
    let m2 = mollifier_for_run(PolyLabel::P2, t_count, None, spec, 3)?;
    let sieve = build_sieve(m2.x.ceil() as usize + 2)?;
    let rep = first_moment(
        t_count,
        spec,
        &chi,
        &m2,
        None,
        plan,
        &sieve,
        &consts.constants,
    )?;
    println!(
        "\nflat mollifier, T = {t_count}: X = {:.2}, S1/T = {:+.6} {:+.6}i",
        m2.x,
        rep.s1[0] / t_count as f64,
        rep.s1[1] / t_count as f64
    );
    Ok(())
}
