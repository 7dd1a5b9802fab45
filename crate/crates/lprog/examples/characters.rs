//! Character-group arithmetic: enumeration, Conrey labels, conductors,
//! conjugates, Gauss sums, and the orthogonality relation.
//!
//!     cargo run --release --example characters

use lprog::characters::{euler_phi, DirichletCharacter};
use num_complex::Complex64;

fn main() -> lprog::Result<()> {
    let q = 12;
    let chars = DirichletCharacter::enumerate(q)?;
    assert_eq!(chars.len() as u64, euler_phi(q as u64));

    println!("characters mod {q}:");
    println!(
        "{:>6} {:>10} {:>6} {:>10} {:>11}",
        "label", "conductor", "order", "parity", "primitive"
    );
    for chi in &chars {
        println!(
            "{:>6} {:>10} {:>6} {:>10} {:>11}",
            chi.label,
            chi.conductor,
            chi.order(),
            chi.parity(),
            chi.is_primitive
        );
    }

    // chi(m)·chi(n) = chi(mn).
    let chi = &chars[2];
    for m in 1..q as i64 {
        for n in 1..q as i64 {
            let lhs = chi.eval(m) * chi.eval(n);
            let rhs = chi.eval(m * n);
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }
    println!("\nmultiplicativity checked on all pairs mod {q}");

    // Row orthogonality: summing chi(a) over a full period gives 0 for
    // non-principal chi and phi(q) for the principal one.
    for chi in &chars {
        let total: Complex64 = (0..q as i64).map(|a| chi.eval(a)).sum();
        let expect = if chi.is_principal {
            euler_phi(q as u64) as f64
        } else {
            0.0
        };
        assert!(
            (total - Complex64::new(expect, 0.0)).norm() < 1e-10,
            "orthogonality failed for label {}",
            chi.label
        );
    }
    println!("row orthogonality holds for all labels mod {q}");

    // |tau(chi)| = sqrt(q) exactly when chi is primitive.
    println!("\nGauss sums:");
    for q in [5u32, 7, 8, 11, 13] {
        for chi in DirichletCharacter::enumerate(q)? {
            if !chi.is_primitive {
                continue;
            }
            let tau = chi.gauss_sum();
            println!(
                "  q={q:<3} label {:<3} |tau| = {:.12}  sqrt(q) = {:.12}",
                chi.label,
                tau.norm(),
                (q as f64).sqrt()
            );
        }
    }

    // Conjugation inverts the label in (Z/q)*; the induced primitive
    // character lives at the conductor.
    let chi = DirichletCharacter::from_conrey(12, 7)?;
    let bar = chi.conjugate();
    println!("\nconjugate of label 7 mod 12 has label {}", bar.label);
    let lifted = chi.induced_primitive()?;
    println!(
        "label 7 mod 12 is induced by label {} mod {}",
        lifted.label, lifted.modulus
    );
    Ok(())
}
