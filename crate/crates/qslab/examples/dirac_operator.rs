//! The Dirac candidate: mapping properties of its three building blocks,
//! the commutation rules behind them, and one-forms computed two ways.

use qslab::dirac;
use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::scalar::ScalarQ;
use qslab::spinors::{self, Chirality, SpinorVec};

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let alg = &lab.s7q.algebra;
    let g = |n: &str| NCPoly::gen(alg.rank_of(n).unwrap());

    let v = SpinorVec::new(Chirality::Plus, g("z1"), g("z3").scale(&ScalarQ::q_pow(1)));
    for i in [1usize, 2, 3] {
        let img = dirac::apply_x(&lab, i, &v).unwrap();
        println!("X^{} (z1, q z3) = {}", i, img.display(&lab));
    }

    for i in [1usize, 2] {
        let fails = dirac::x_maps_membership(&lab, i, 0, 1, Chirality::Plus, 2).unwrap();
        println!(
            "X^{} maps degree-2 members into the other module: {} failures",
            i,
            fails.len()
        );
    }
    let verbatim = dirac::x_maps_membership(&lab, 3, 0, 1, Chirality::Plus, 2).unwrap();
    let corrected = dirac::x_maps_membership(&lab, 3, 1, 0, Chirality::Plus, 2).unwrap();
    println!(
        "X^3 mapping: verbatim scalars fail ({} counterexamples), corrected (1, 0) fail {}",
        verbatim.len(),
        corrected.len()
    );

    let fails = dirac::verify_lemma_commutations(&lab, 3);
    println!(
        "proof commutation rules to degree 3: {} failures",
        fails.len()
    );

    let fails = dirac::verify_subdelta(&lab, 2).unwrap();
    println!(
        "reduced coproducts on invariant elements: {} failures",
        fails.len()
    );

    let fails = dirac::verify_k_twist(&lab, 2).unwrap();
    println!(
        "twist preservation and conjugation: {} failures",
        fails.len()
    );

    let fails = dirac::verify_one_form(&lab, 2).unwrap();
    println!(
        "one-form definition vs closed form: {} failures",
        fails.len()
    );

    let fails = dirac::verify_leibniz(&lab, 1).unwrap();
    println!("twisted Leibniz rule: {} failures", fails.len());

    // show one concrete one-form image
    let params = dirac::DiracParams::new(ScalarQ::one(), ScalarQ::one(), ScalarQ::zero());
    let x0 = lab.embedded("x0").unwrap();
    let basis = spinors::solve_basis(&lab, Chirality::Plus, 1).unwrap();
    let img = dirac::one_form_def(&lab, &params, &x0, &basis.vectors[0]).unwrap();
    println!(
        "d(x0) applied to the first basis vector: {}",
        img.display(&lab)
    );
}
