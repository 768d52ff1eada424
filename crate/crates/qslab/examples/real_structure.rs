//! The real structure: the antilinear flip, its square, the conjugated
//! multiplication formula, operator exchange and commutation with the Dirac
//! candidate at conjugate parameters.

use qslab::dirac;
use qslab::haar;
use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::scalar::ScalarQ;
use qslab::spinors::{Chirality, SpinorVec};

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let alg = &lab.s7q.algebra;
    let g = |n: &str| NCPoly::gen(alg.rank_of(n).unwrap());

    let v = SpinorVec::new(Chirality::Plus, g("z1"), g("z3").scale(&ScalarQ::q_pow(1)));
    let jv = dirac::j_operator(&lab, &v).unwrap();
    println!("J (z1, q z3) = {}", jv.display(&lab));
    let jjv = dirac::j_operator(&lab, &jv).unwrap();
    println!("J^2 (z1, q z3) = {}  (minus the vector)", jjv.display(&lab));

    let tv = haar::t_operator(&lab, &v).unwrap();
    println!("T (z1, q z3) = {}", tv.display(&lab));

    let fails = dirac::verify_real_structure(&lab, 2).unwrap();
    println!(
        "real-structure claims (J^2 = -1, commutants, first order, exchange, J D+ = D+ J): {} failures",
        fails.len()
    );

    println!(
        "J X^3 J^-1 formula with verbatim third-operator scalars: {}",
        dirac::jx3_formula_holds(&lab, 1, 0, 1).unwrap()
    );
    println!(
        "J X^3 J^-1 formula with corrected scalars (1, 0): {}",
        dirac::jx3_formula_holds(&lab, 1, 1, 0).unwrap()
    );
}
