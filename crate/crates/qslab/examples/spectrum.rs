//! Finite-section spectra of the Dirac candidate across truncation degrees.
//! These are compressions to exhausting finite subspaces, not spectra of the
//! full operator.

use num_complex::Complex64;
use qslab::dirac::{finite_section_spectrum, NumericParams};
use qslab::haar::compute_phi;
use qslab::lab::Lab;

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let phi = compute_phi(&lab, 4).expect("functional");
    let one = Complex64::new(1.0, 0.0);
    let params = NumericParams {
        lambda: one,
        mu: one,
        delta: Complex64::new(0.0, 0.0),
    };
    for q in [0.5, 0.9] {
        for n in 1..=2 {
            let eig = finite_section_spectrum(&lab, &phi, n, params, q).unwrap();
            let min_nonzero = eig
                .iter()
                .map(|x| x.abs())
                .filter(|x| *x > 1e-9)
                .fold(f64::INFINITY, f64::min);
            println!(
                "q = {}, degree {}: {} eigenvalues, smallest nonzero |e| = {:.6}",
                q,
                n,
                eig.len(),
                min_nonzero
            );
            let shown: Vec<String> = eig.iter().map(|e| format!("{:+.6}", e)).collect();
            println!("  {}", shown.join(" "));
        }
    }
}
