//! Normal forms in the 7-sphere algebra: reduce a few words, check the
//! sphere identity, audit confluence and compare dimensions with the
//! commutative count.

use qslab::lab::Lab;
use qslab::ncpoly::{classical_dimension, confluence_audit, NCPoly, Word};
use qslab::scalar::ScalarQ;

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let rs = &lab.s7q;
    let alg = &rs.algebra;
    let w = |names: &[&str]| Word(names.iter().map(|n| alg.rank_of(n).unwrap()).collect());

    println!("rewrite rules: {}", rs.rules.len());
    for (input, label) in [
        (w(&["z2", "z1"]), "z2 z1"),
        (w(&["z2", "z3"]), "z2 z3"),
        (w(&["z1*", "z1"]), "z1* z1"),
    ] {
        let nf = rs
            .normal_form(&NCPoly::monomial(input, ScalarQ::one()))
            .unwrap();
        println!("NF({}) = {}", label, nf.display(alg));
    }

    let mut sphere = NCPoly::zero();
    for i in ["z1", "z2", "z3", "z4"] {
        sphere.add_term(w(&[i, &format!("{}*", i)]), ScalarQ::one());
    }
    println!(
        "NF(z1 z1* + z2 z2* + z3 z3* + z4 z4*) = {}",
        rs.normal_form(&sphere).unwrap().display(alg)
    );

    let audit = confluence_audit(rs, 6);
    println!(
        "confluence audit to overlap degree 6: {} overlaps, {} unresolved",
        audit.overlaps_checked,
        audit.unresolved.len()
    );
    for n in 0..=4 {
        println!(
            "degree <= {}: {} normal words (classical count {})",
            n,
            rs.basis_dimension(n),
            classical_dimension(8, n)
        );
    }
}
