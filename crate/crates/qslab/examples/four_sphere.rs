//! The 4-sphere inside the 7-sphere: invariant generators, the frame matrix
//! and its projection, the abstract relations, and the quantum SU(2)
//! coaction.

use qslab::lab::Lab;
use qslab::ncpoly::NCPoly;
use qslab::spheres;

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let alg = &lab.s7q.algebra;

    for (name, x) in lab.x_generators() {
        println!(
            "{} = {}   (invariant: {})",
            name,
            x.display(alg),
            spheres::is_s4_invariant(&lab, &x).unwrap()
        );
    }
    let z1 = NCPoly::gen(alg.rank_of("z1").unwrap());
    println!(
        "z1 invariant: {}",
        spheres::is_s4_invariant(&lab, &z1).unwrap()
    );

    let fails = spheres::verify_psi_p(&lab).unwrap();
    println!("frame and projection identities: {} failures", fails.len());

    let (_, p) = spheres::build_psi_p(&lab).unwrap();
    println!("P(0,0) = {}", p.at(0, 0).display(alg));
    println!("P(1,2) = {}", p.at(1, 2).display(alg));

    let fails = spheres::verify_x_relations(&lab).unwrap();
    println!(
        "abstract relations under the embedding: {} failures",
        fails.len()
    );

    let fails = spheres::verify_coaction(&lab).unwrap();
    println!("coaction consistency: {} failures", fails.len());

    for k in 1..=2 {
        println!(
            "invariants at word degree {}: dimension {} (4-sphere basis: {})",
            2 * k,
            spheres::invariant_subspace_dimension(&lab, 2 * k).unwrap(),
            lab.s4q.basis_dimension(k)
        );
    }
}
