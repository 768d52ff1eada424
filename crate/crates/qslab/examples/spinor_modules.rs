//! The chiral module pair: exact truncated bases, membership, bimodule
//! closure over the 4-sphere, and the projective-module isomorphisms.

use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::spinors::{self, Chirality};

fn main() {
    let lab = Lab::builtin().expect("presets load");

    for ch in [Chirality::Plus, Chirality::Minus] {
        for n in 0..=2 {
            let basis = spinors::solve_basis(&lab, ch, n).unwrap();
            println!("dim M_{}^(<= {}) = {}", ch.name(), n, basis.dim());
        }
    }

    let basis = spinors::solve_basis(&lab, Chirality::Plus, 1).unwrap();
    println!("degree-1 plus basis:");
    for v in &basis.vectors {
        println!("  {}", v.display(&lab));
    }

    let fails = spinors::bimodule_check(&lab, &basis).unwrap();
    println!(
        "bimodule closure over the x generators: {} failures",
        fails.len()
    );

    // the projective-module round trip on a coordinate row
    let mut e2 = vec![NCPoly::zero(); 4];
    e2[1] = NCPoly::one();
    let v = spinors::rho_left_inv(&lab, &e2).unwrap();
    println!("rho^-1(e2) = {}", v.display(&lab));
    println!(
        "member of the plus module: {}",
        spinors::membership(&lab, &v).unwrap()
    );
    let fails = spinors::verify_rho(&lab, 1).unwrap();
    println!("module isomorphism checks: {} failures", fails.len());

    println!(
        "chiral truncations intersect trivially (degree 2): {}",
        spinors::chirality_intersection_trivial(&lab, 2).unwrap()
    );
}
