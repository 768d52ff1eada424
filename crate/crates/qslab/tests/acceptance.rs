//! Acceptance suite: the ten exit criteria, one test each, printing a
//! pass/fail line per criterion. Everything exact-symbolic runs over the
//! coefficient field; numeric claims state their tolerances inline.

use std::sync::OnceLock;

use num_complex::Complex64;
use qslab::claims::{self, Config, Context, SPECTRUM_FIXTURE};
use qslab::dirac;
use qslab::haar;
use qslab::lab::Lab;
use qslab::ncpoly::{classical_dimension, confluence_audit};
use qslab::preset::RawLab;
use qslab::qgroup;
use qslab::scalar::ScalarQ;
use qslab::spheres;
use qslab::spinors::{self, Chirality};

fn ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| {
        let lab = Lab::builtin().expect("presets load");
        Context::new(lab, Config::default()).expect("context builds")
    })
}

fn report(criterion: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("PASS {}", criterion);
    } else {
        println!("FAIL {}", criterion);
        for f in failures.iter().take(10) {
            println!("     {}", f);
        }
        panic!("criterion failed: {}", criterion);
    }
}

#[test]
fn criterion_01_confluence_and_flatness() {
    let ctx = ctx();
    let mut fails = Vec::new();
    let audit = confluence_audit(&ctx.lab.s7q, 6);
    if !audit.is_confluent() {
        fails.push(format!(
            "{} unresolved critical pairs",
            audit.unresolved.len()
        ));
    }
    for n in 0..=4 {
        let got = ctx.lab.s7q.basis_dimension(n);
        let want = classical_dimension(8, n);
        if got != want {
            fails.push(format!("dimension at degree {}: {} != {}", n, got, want));
        }
    }
    report(
        "criterion 1: confluence to overlap degree 6 and flat dimensions to degree 4",
        fails,
    );
}

#[test]
fn criterion_02_symmetry_axioms() {
    let ctx = ctx();
    let mut fails = Vec::new();
    fails.extend(qgroup::verify_module_algebra(&ctx.lab.action, 4));
    fails.extend(qgroup::verify_relations_as_operators(&ctx.lab.action, 4));
    fails.extend(qgroup::verify_hopf_axioms(&ctx.lab.action, 3));
    fails.extend(qgroup::verify_highest_weights(&ctx.lab.action));
    report(
        "criterion 2: module-algebra, crossed-product, Serre and Hopf axioms to degree 4",
        fails,
    );
}

#[test]
fn criterion_03_four_sphere_geometry() {
    let ctx = ctx();
    let mut fails = Vec::new();
    fails.extend(spheres::verify_psi_p(&ctx.lab).unwrap());
    fails.extend(spheres::verify_x_relations(&ctx.lab).unwrap());
    fails.extend(spheres::verify_coaction(&ctx.lab).unwrap());
    report(
        "criterion 3: frame isometry, projection identities, x-relations, coaction",
        fails,
    );
}

#[test]
fn criterion_04_spinor_modules() {
    let ctx = ctx();
    let mut fails = Vec::new();
    for ch in [Chirality::Plus, Chirality::Minus] {
        let dim = ctx.basis(ch, 1).dim();
        if dim != 4 {
            fails.push(format!("degree-1 {} dimension {} != 4", ch.name(), dim));
        }
        fails.extend(spinors::bimodule_check(&ctx.lab, ctx.basis(ch, 2)).unwrap());
    }
    fails.extend(spinors::verify_rho(&ctx.lab, 2).unwrap());
    for n in 1..=2 {
        let cross = haar::cross_gram(
            &ctx.lab,
            &ctx.phi,
            ctx.basis(Chirality::Plus, n),
            ctx.basis(Chirality::Minus, n),
        )
        .unwrap();
        if !cross.is_zero() {
            fails.push(format!("cross Gram at degree {} is nonzero", n));
        }
    }
    report(
        "criterion 4: basis dimensions, bimodule closure, module isomorphisms, orthogonality",
        fails,
    );
}

#[test]
fn criterion_05_haar() {
    let ctx = ctx();
    let mut fails = Vec::new();
    for d in 0..=4 {
        let dim = haar::joint_invariant_dimension(&ctx.lab, d).unwrap();
        if dim != 1 {
            fails.push(format!(
                "joint invariants at degree {} have dimension {}",
                d, dim
            ));
        }
    }
    // compute_phi re-verifies exact invariance internally
    fails.extend(haar::verify_modular(&ctx.lab, &ctx.phi, 4).unwrap());
    for n in 1..=2 {
        for ch in [Chirality::Plus, Chirality::Minus] {
            let g = haar::gram(&ctx.lab, &ctx.phi, ctx.basis(ch, n)).unwrap();
            for q in [0.5, 0.9] {
                let min = haar::gram_min_eigenvalue(&g, q).unwrap();
                if min <= 1e-10 {
                    fails.push(format!(
                        "Gram ({}, degree {}) min eigenvalue {} at q = {}",
                        ch.name(),
                        n,
                        min,
                        q
                    ));
                }
            }
        }
    }
    report(
        "criterion 5: invariant uniqueness, exact invariance, modular property, positivity",
        fails,
    );
}

#[test]
fn criterion_06_dirac_structure() {
    let ctx = ctx();
    let mut fails = Vec::new();
    for i in [1usize, 2] {
        for n in 1..=3 {
            fails.extend(dirac::x_maps_membership(&ctx.lab, i, 0, 1, Chirality::Plus, n).unwrap());
        }
    }
    fails.extend(dirac::verify_lemma_commutations(&ctx.lab, 3));
    fails.extend(dirac::verify_subdelta(&ctx.lab, 3).unwrap());
    fails.extend(dirac::verify_one_form(&ctx.lab, 2).unwrap());
    fails.extend(dirac::verify_leibniz(&ctx.lab, 2).unwrap());
    report(
        "criterion 6: membership mapping, proof commutations, reduced coproducts, one-forms, Leibniz",
        fails,
    );
}

#[test]
fn criterion_07_real_structure() {
    let ctx = ctx();
    let mut fails = Vec::new();
    fails.extend(dirac::verify_real_structure(&ctx.lab, 2).unwrap());
    fails.extend(haar::verify_isometry_t(&ctx.lab, &ctx.phi, 2).unwrap());
    report(
        "criterion 7: J^2 = -1, isometry, first-order condition, operator exchange, J D+ = D+ J",
        fails,
    );
}

#[test]
fn criterion_08_spectrum_harness() {
    let ctx = ctx();
    let mut fails = Vec::new();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let eig = dirac::finite_section_spectrum(
        &ctx.lab,
        &ctx.phi,
        1,
        dirac::NumericParams {
            lambda: one,
            mu: one,
            delta: zero,
        },
        0.9,
    )
    .unwrap();
    for k in 0..eig.len() {
        if (eig[k] + eig[eig.len() - 1 - k]).abs() > 1e-9 {
            fails.push("spectrum is not symmetric about zero to 1e-9".into());
            break;
        }
    }
    if eig.len() != SPECTRUM_FIXTURE.len()
        || eig
            .iter()
            .zip(SPECTRUM_FIXTURE.iter())
            .any(|(a, b)| (a - b).abs() > 1e-9)
    {
        fails.push(format!("fixture not reproduced: {:?}", eig));
    }
    let eig0 = dirac::finite_section_spectrum(
        &ctx.lab,
        &ctx.phi,
        1,
        dirac::NumericParams {
            lambda: zero,
            mu: zero,
            delta: zero,
        },
        0.9,
    )
    .unwrap();
    if !eig0.iter().all(|x| x.abs() < 1e-12) {
        fails.push("zero parameters gave a nonzero spectrum".into());
    }
    report(
        "criterion 8: spectrum symmetry (1e-9), frozen fixture (1e-9), zero case",
        fails,
    );
}

#[test]
fn criterion_09_convention_auditor() {
    let ctx = ctx();
    let mut fails = Vec::new();
    let strip = |mut r: claims::SuiteReport| {
        for c in r.claims.iter_mut() {
            c.millis = 0;
        }
        r.to_json()
    };
    let a = strip(claims::run_convention_audit(ctx));
    let b = strip(claims::run_convention_audit(ctx));
    if a != b {
        fails.push("convention audit is not stable across runs".into());
    }
    if !a.contains("verbatim (0, 1) maps members to members: false") {
        fails.push("baseline outcome for the third operator is missing".into());
    }
    if !a.contains("(1, 0)") {
        fails.push("the passing-correction set is missing".into());
    }
    if !a.contains("K1 E2 K1^-1 = q^-1 E2 as an operator identity: holds")
        || !a.contains("K1 E2 K1^-1 = q^-2 E2 as an operator identity: fails")
    {
        fails.push("the Cartan convention report is missing".into());
    }
    report(
        "criterion 9: convention audit reports baseline and passing sets, stable across runs",
        fails,
    );
}

#[test]
fn criterion_10_mutation_sensitivity() {
    let raw = RawLab::builtin().unwrap();
    let outcomes = claims::mutation_audit(&raw).unwrap();
    let mut fails = Vec::new();
    let undetected: Vec<_> = outcomes.iter().filter(|o| !o.detected).collect();
    for o in &undetected {
        fails.push(format!(
            "perturbing relation {} term {} by q^{} went undetected",
            o.relation, o.term, o.direction
        ));
    }
    println!(
        "     ({} of {} single-coefficient perturbations detected)",
        outcomes.len() - undetected.len(),
        outcomes.len()
    );
    report(
        "criterion 10: every single-coefficient perturbation trips at least one exact claim",
        fails,
    );
}

#[test]
fn default_suite_is_green() {
    let ctx = ctx();
    let report = claims::run_suite(ctx);
    let failing: Vec<String> = report
        .claims
        .iter()
        .filter(|c| c.status == claims::Status::Fail)
        .map(|c| {
            format!(
                "{}: {}",
                c.claim_id,
                c.counterexample.clone().unwrap_or_default()
            )
        })
        .collect();
    println!(
        "suite: {} passed, {} failed, {} recorded",
        report.pass, report.fail, report.recorded
    );
    assert!(failing.is_empty(), "{:#?}", failing);
    // scalar q-integer example doubles as an exactness smoke check here
    assert_eq!(ScalarQ::q_int(2), ScalarQ::s_pow(2) + ScalarQ::s_pow(-2));
}
