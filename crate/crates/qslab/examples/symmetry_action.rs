//! The quantum so(5) action on the 7-sphere: generator actions, coproduct
//! expansion on a product, highest-weight vectors and the module-algebra
//! verification at low degree.

use qslab::lab::Lab;
use qslab::ncpoly::{NCPoly, Word};
use qslab::qgroup::{self, UqGen};
use qslab::scalar::ScalarQ;

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let alg = &lab.s7q.algebra;
    let r = |n: &str| alg.rank_of(n).unwrap();

    for (h, z) in [
        (UqGen::E1, "z3"),
        (UqGen::F1, "z1"),
        (UqGen::E2, "z2"),
        (UqGen::K1, "z1"),
    ] {
        let img = lab.action.act_gen(h, &NCPoly::gen(r(z))).unwrap();
        println!("{} |> {} = {}", h.name(), z, img.display(alg));
    }

    let zz = NCPoly::monomial(Word(vec![r("z2"), r("z2")]), ScalarQ::one());
    println!(
        "E2 |> z2 z2 = {}",
        lab.action.act_gen(UqGen::E2, &zz).unwrap().display(alg)
    );

    println!(
        "kappa(z1) = {}",
        lab.action
            .modular_kappa(&NCPoly::gen(r("z1")), false)
            .display(alg)
    );

    let hw = qgroup::verify_highest_weights(&lab.action);
    println!("highest-weight checks: {} failures", hw.len());

    let ma = qgroup::verify_module_algebra(&lab.action, 2);
    println!("module-algebra axioms to degree 2: {} failures", ma.len());

    let serre = qgroup::verify_relations_as_operators(&lab.action, 2);
    println!(
        "defining and Serre relations as operators: {} failures",
        serre.len()
    );
}
