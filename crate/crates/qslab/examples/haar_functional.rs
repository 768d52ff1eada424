//! The invariant functional: its values on low-degree words, the modular
//! property, orthogonality of the chiral modules and Gram positivity.

use qslab::haar;
use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::scalar::ScalarQ;
use qslab::spinors::{self, Chirality};

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let phi = haar::compute_phi(&lab, 4).expect("functional exists and is unique");
    let alg = &lab.s7q.algebra;

    println!("nonzero functional values on words of degree <= 2:");
    for w in lab.s7q.normal_words(2) {
        let v = phi
            .apply(&NCPoly::monomial(w.clone(), ScalarQ::one()))
            .unwrap();
        if !v.is_zero() {
            println!("  phi({}) = {}", w.display(alg), v);
        }
    }

    let fails = haar::verify_modular(&lab, &phi, 4).unwrap();
    println!(
        "modular property on pairs of total degree <= 4: {} failures",
        fails.len()
    );

    let plus = spinors::solve_basis(&lab, Chirality::Plus, 2).unwrap();
    let minus = spinors::solve_basis(&lab, Chirality::Minus, 2).unwrap();
    let cross = haar::cross_gram(&lab, &phi, &plus, &minus).unwrap();
    println!("cross Gram block vanishes identically: {}", cross.is_zero());

    for (name, basis) in [("plus", &plus), ("minus", &minus)] {
        let g = haar::gram(&lab, &phi, basis).unwrap();
        for q in [0.5, 0.9] {
            println!(
                "min eigenvalue of the {} Gram block at q = {}: {:.6e}",
                name,
                q,
                haar::gram_min_eigenvalue(&g, q).unwrap()
            );
        }
    }

    let fails = haar::verify_isometry_t(&lab, &phi, 2).unwrap();
    println!("antilinear flip isometry: {} failures", fails.len());
}
