//! The invariant functional on degree truncations of the 7-sphere, Gram
//! matrices of the spinor inner product, the modular property, and the
//! isometry property of the antilinear flip.
//!
//! The functional is computed intrinsically: on a completely reducible
//! truncation its kernel is spanned by the images of (h - eps(h)), so it is a
//! finite linear-algebra problem once the joint invariant subspace is known to
//! be one-dimensional (verified first, hard error otherwise).

use std::collections::BTreeMap;

use crate::error::QslabError;
use crate::lab::Lab;
use crate::linalg::{self, hermitian_eigenvalues, MatQ};
use crate::ncpoly::{NCPoly, Word};
use crate::qgroup::UqGen;
use crate::scalar::ScalarQ;
use crate::spinors::{solve_basis, Chirality, SpinorVec, TruncatedBasis};

/// The invariant functional on words of degree <= degree. Vanishes outside
/// the zero-weight block; `values` carries the zero-weight coefficients.
#[derive(Clone, Debug)]
pub struct HaarFunctional {
    pub degree: usize,
    values: BTreeMap<Word, ScalarQ>,
    /// per-rank Cartan weights, to recognize zero-weight words
    wk1: Vec<ScalarQ>,
    wk2: Vec<ScalarQ>,
}

impl HaarFunctional {
    fn word_is_weight_zero(&self, w: &Word) -> bool {
        let mut a = ScalarQ::one();
        let mut b = ScalarQ::one();
        for &r in &w.0 {
            a = a * self.wk1[r as usize].clone();
            b = b * self.wk2[r as usize].clone();
        }
        a.is_one() && b.is_one()
    }

    /// Evaluate on a normalized polynomial. Words of nontrivial weight map to
    /// zero at any degree (invariance forces it); zero-weight words beyond the
    /// computed degree are an error.
    pub fn apply(&self, p: &NCPoly) -> Result<ScalarQ, QslabError> {
        let mut acc = ScalarQ::zero();
        for (w, c) in &p.terms {
            if let Some(v) = self.values.get(w) {
                acc = acc + c * v;
            } else if w.degree() > self.degree && self.word_is_weight_zero(w) {
                return Err(QslabError::Other(format!(
                    "functional of degree {} applied to a zero-weight word of degree {}",
                    self.degree,
                    w.degree()
                )));
            }
        }
        Ok(acc)
    }

    pub fn value_table(&self) -> &BTreeMap<Word, ScalarQ> {
        &self.values
    }
}

fn is_weight_zero(lab: &Lab, w: &Word) -> bool {
    lab.action.word_weight(UqGen::K1, w).is_one() && lab.action.word_weight(UqGen::K2, w).is_one()
}

/// Dimension of the joint invariant subspace of the degree truncation under
/// all six symmetry generators.
pub fn joint_invariant_dimension(lab: &Lab, degree: usize) -> Result<usize, QslabError> {
    let words = lab.s7q.normal_words(degree);
    let w0: Vec<&Word> = words.iter().filter(|w| is_weight_zero(lab, w)).collect();
    let mut row_keys: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, ScalarQ)> = Vec::new();
    for (col, w) in w0.iter().enumerate() {
        for (hi, h) in [UqGen::E1, UqGen::E2, UqGen::F1, UqGen::F2]
            .into_iter()
            .enumerate()
        {
            let img = lab
                .action
                .act_gen(h, &NCPoly::monomial((*w).clone(), ScalarQ::one()))?;
            for (iw, c) in &img.terms {
                let next = row_keys.len();
                let r = *row_keys.entry((hi, iw.clone())).or_insert(next);
                entries.push((r, col, c.clone()));
            }
        }
    }
    let mut m = MatQ::zeros(row_keys.len(), w0.len());
    for (r, c, v) in entries {
        let cur = m.at(r, c).clone() + v;
        m.set(r, c, cur);
    }
    Ok(w0.len() - linalg::rank(m))
}

/// Compute the invariant functional on the degree truncation. Checks the
/// uniqueness precondition per degree first.
pub fn compute_phi(lab: &Lab, degree: usize) -> Result<HaarFunctional, QslabError> {
    for d in 0..=degree {
        let dim = joint_invariant_dimension(lab, d)?;
        if dim != 1 {
            return Err(QslabError::NonUniqueInvariant { degree: d, dim });
        }
    }

    let words = lab.s7q.normal_words(degree);
    let w0: Vec<Word> = words
        .iter()
        .filter(|w| is_weight_zero(lab, w))
        .cloned()
        .collect();
    let w0_index: BTreeMap<&Word, usize> = w0.iter().enumerate().map(|(i, w)| (w, i)).collect();

    // constraint rows: the zero-weight component of E/F images of every word
    let mut rows: Vec<Vec<ScalarQ>> = Vec::new();
    for w in &words {
        for h in [UqGen::E1, UqGen::E2, UqGen::F1, UqGen::F2] {
            let img = lab
                .action
                .act_gen(h, &NCPoly::monomial(w.clone(), ScalarQ::one()))?;
            let mut row = vec![ScalarQ::zero(); w0.len()];
            let mut nonzero = false;
            for (iw, c) in &img.terms {
                if let Some(&i) = w0_index.get(iw) {
                    row[i] = &row[i] + c;
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    // normalization phi(1) = 1 appended as the last row of an augmented solve
    let unit_col = w0_index[&Word::unit()];
    let mut m = MatQ::zeros(rows.len() + 1, w0.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m.set(rows.len(), unit_col, ScalarQ::one());
    let mut b = vec![ScalarQ::zero(); rows.len() + 1];
    b[rows.len()] = ScalarQ::one();

    // the solution must exist and be unique
    let null_dim = w0.len() - linalg::rank(m.clone());
    if null_dim != 0 {
        return Err(QslabError::NonUniqueInvariant {
            degree,
            dim: null_dim + 1,
        });
    }
    let x = linalg::solve(&m, &b).ok_or(QslabError::Other(
        "invariant functional constraints are inconsistent".to_string(),
    ))?;

    let mut values = BTreeMap::new();
    for (i, w) in w0.iter().enumerate() {
        if !x[i].is_zero() {
            values.insert(w.clone(), x[i].clone());
        }
    }
    let n_gens = lab.s7q.algebra.n_gens() as u8;
    let phi = HaarFunctional {
        degree,
        values,
        wk1: (0..n_gens)
            .map(|r| lab.action.word_weight(UqGen::K1, &Word::gen(r)))
            .collect(),
        wk2: (0..n_gens)
            .map(|r| lab.action.word_weight(UqGen::K2, &Word::gen(r)))
            .collect(),
    };

    // exact invariance check: phi(h |> a) = eps(h) phi(a) for all basis words
    for w in &words {
        let p = NCPoly::monomial(w.clone(), ScalarQ::one());
        for h in UqGen::ALL {
            let img = lab.action.act_gen(h, &p)?;
            let lhs = phi.apply(&img)?;
            let rhs = h.counit() * phi.apply(&p)?;
            if lhs != rhs {
                return Err(QslabError::Other(format!(
                    "computed functional is not invariant under {} on {}",
                    h.name(),
                    w.display(&lab.s7q.algebra)
                )));
            }
        }
    }
    Ok(phi)
}

/// The modular property: phi(a b) = phi(b kappa(a)) for all monomial pairs of
/// total degree <= n.
pub fn verify_modular(
    lab: &Lab,
    phi: &HaarFunctional,
    n: usize,
) -> Result<Vec<String>, QslabError> {
    let mut failures = Vec::new();
    let words = lab.s7q.normal_words(n);
    for a in &words {
        for b in &words {
            if a.degree() + b.degree() > n {
                continue;
            }
            let pa = NCPoly::monomial(a.clone(), ScalarQ::one());
            let pb = NCPoly::monomial(b.clone(), ScalarQ::one());
            let lhs = phi.apply(&lab.s7q.mul_nf(&pa, &pb)?)?;
            let ka = lab.action.modular_kappa(&pa, false);
            let rhs = phi.apply(&lab.s7q.mul_nf(&pb, &ka)?)?;
            if lhs != rhs {
                failures.push(format!(
                    "modular property fails on a = {}, b = {}",
                    a.display(&lab.s7q.algebra),
                    b.display(&lab.s7q.algebra)
                ));
            }
        }
    }
    Ok(failures)
}

/// The spinor inner product of two vectors: phi(v1* w1) + phi(v2* w2).
pub fn inner_product(
    lab: &Lab,
    phi: &HaarFunctional,
    v: &SpinorVec,
    w: &SpinorVec,
) -> Result<ScalarQ, QslabError> {
    let a = lab.s7q.mul_nf(&lab.s7q.star_nf(&v.c1)?, &w.c1)?;
    let b = lab.s7q.mul_nf(&lab.s7q.star_nf(&v.c2)?, &w.c2)?;
    Ok(phi.apply(&a)? + phi.apply(&b)?)
}

/// Exact Gram matrix of a truncated basis.
pub fn gram(lab: &Lab, phi: &HaarFunctional, basis: &TruncatedBasis) -> Result<MatQ, QslabError> {
    let n = basis.dim();
    let mut g = MatQ::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(
                i,
                j,
                inner_product(lab, phi, &basis.vectors[i], &basis.vectors[j])?,
            );
        }
    }
    Ok(g)
}

/// The cross block between the two chiralities; must vanish identically.
pub fn cross_gram(
    lab: &Lab,
    phi: &HaarFunctional,
    plus: &TruncatedBasis,
    minus: &TruncatedBasis,
) -> Result<MatQ, QslabError> {
    let mut g = MatQ::zeros(plus.dim(), minus.dim());
    for i in 0..plus.dim() {
        for j in 0..minus.dim() {
            g.set(
                i,
                j,
                inner_product(lab, phi, &plus.vectors[i], &minus.vectors[j])?,
            );
        }
    }
    Ok(g)
}

/// Minimal eigenvalue of the Gram matrix at a numeric q.
pub fn gram_min_eigenvalue(g: &MatQ, q: f64) -> Result<f64, QslabError> {
    let m = g.eval(q)?;
    let eig = hermitian_eigenvalues(&m);
    Ok(eig.first().copied().unwrap_or(0.0))
}

/// The antilinear flip v -> (kappa^{1/2}(v2*), -kappa^{1/2}(v1*)). The result
/// lives in the opposite chirality.
pub fn t_operator(lab: &Lab, v: &SpinorVec) -> Result<SpinorVec, QslabError> {
    let flip = match v.chirality {
        Chirality::Plus => Chirality::Minus,
        Chirality::Minus => Chirality::Plus,
    };
    let c1 = lab.action.modular_kappa(&lab.s7q.star_nf(&v.c2)?, true);
    let c2 = lab
        .action
        .modular_kappa(&lab.s7q.star_nf(&v.c1)?, true)
        .neg();
    Ok(SpinorVec::new(
        flip,
        lab.s7q.normal_form(&c1)?,
        lab.s7q.normal_form(&c2)?,
    ))
}

/// <Tv, Tw> = <w, v> for all basis pairs of both chiralities, exact.
pub fn verify_isometry_t(
    lab: &Lab,
    phi: &HaarFunctional,
    n: usize,
) -> Result<Vec<String>, QslabError> {
    let mut failures = Vec::new();
    for chirality in [Chirality::Plus, Chirality::Minus] {
        let basis = solve_basis(lab, chirality, n)?;
        for (i, v) in basis.vectors.iter().enumerate() {
            for (j, w) in basis.vectors.iter().enumerate() {
                let tv = t_operator(lab, v)?;
                let tw = t_operator(lab, w)?;
                let lhs = inner_product(lab, phi, &tv, &tw)?;
                let rhs = inner_product(lab, phi, w, v)?;
                if lhs != rhs {
                    failures.push(format!(
                        "isometry fails on {} basis pair ({}, {})",
                        chirality.name(),
                        i,
                        j
                    ));
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab() -> Lab {
        Lab::builtin().unwrap()
    }

    #[test]
    fn invariants_are_one_dimensional() {
        let lab = lab();
        for d in 0..=4 {
            assert_eq!(
                joint_invariant_dimension(&lab, d).unwrap(),
                1,
                "degree {}",
                d
            );
        }
    }

    #[test]
    fn phi_basics() {
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        assert_eq!(phi.apply(&NCPoly::one()).unwrap(), ScalarQ::one());
        let z1 = NCPoly::gen(lab.s7q.algebra.rank_of("z1").unwrap());
        assert!(phi.apply(&z1).unwrap().is_zero());
        // the sphere sum has functional value 1 by the relation
        let alg = &lab.s7q.algebra;
        let mut sphere = NCPoly::zero();
        for i in ["z1", "z2", "z3", "z4"] {
            let w = Word(vec![
                alg.rank_of(i).unwrap(),
                alg.rank_of(&format!("{}*", i)).unwrap(),
            ]);
            sphere.add_term(w, ScalarQ::one());
        }
        let nf = lab.s7q.normal_form(&sphere).unwrap();
        assert_eq!(phi.apply(&nf).unwrap(), ScalarQ::one());
    }

    #[test]
    fn modular_property_to_degree_two() {
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        let fails = verify_modular(&lab, &phi, 2).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn modular_example_z1() {
        // phi(z1 z1*) = phi(z1* kappa(z1)) with kappa(z1) = q^8 z1
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        let alg = &lab.s7q.algebra;
        let z1 = NCPoly::gen(alg.rank_of("z1").unwrap());
        let z1s = NCPoly::gen(alg.rank_of("z1*").unwrap());
        let lhs = phi.apply(&lab.s7q.mul_nf(&z1, &z1s).unwrap()).unwrap();
        let rhs = phi
            .apply(&lab.s7q.mul_nf(&z1s, &z1.scale(&ScalarQ::q_pow(8))).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
    }

    #[test]
    fn gram_orthogonality_and_positivity_degree_one() {
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        let plus = solve_basis(&lab, Chirality::Plus, 1).unwrap();
        let minus = solve_basis(&lab, Chirality::Minus, 1).unwrap();
        let cross = cross_gram(&lab, &phi, &plus, &minus).unwrap();
        assert!(cross.is_zero());
        for basis in [&plus, &minus] {
            let g = gram(&lab, &phi, basis).unwrap();
            // hermitian
            assert_eq!(g.dagger(), g.transpose());
            for &q in &[0.5, 0.9] {
                let min = gram_min_eigenvalue(&g, q).unwrap();
                assert!(min > 1e-10, "min eigenvalue {} at q = {}", min, q);
            }
        }
    }

    #[test]
    fn weight_orthogonal_pair() {
        // <(z1, q z3), (z3*, -z1*)> = 0 on distinct weights
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        let alg = &lab.s7q.algebra;
        let g = |n: &str| NCPoly::gen(alg.rank_of(n).unwrap());
        let v = SpinorVec::new(Chirality::Plus, g("z1"), g("z3").scale(&ScalarQ::q_pow(1)));
        let w = SpinorVec::new(Chirality::Plus, g("z3*"), g("z1*").scale(&-ScalarQ::one()));
        assert!(inner_product(&lab, &phi, &v, &w).unwrap().is_zero());
    }

    #[test]
    fn t_is_an_isometry_degree_one() {
        let lab = lab();
        let phi = compute_phi(&lab, 2).unwrap();
        let fails = verify_isometry_t(&lab, &phi, 1).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn phi_reality_and_positivity_samples() {
        use rand::Rng;
        use rand::SeedableRng;
        let lab = lab();
        let phi = compute_phi(&lab, 4).unwrap();
        let words = lab.s7q.normal_words(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            // random degree <= 2 element with small integer q-power coefficients
            let mut a = NCPoly::zero();
            for _ in 0..3 {
                let w = words[rng.gen_range(0..words.len())].clone();
                let c = ScalarQ::term(rng.gen_range(-3i64..4), rng.gen_range(-2i64..3));
                a.add_term(w, c);
            }
            let a = lab.s7q.normal_form(&a).unwrap();
            // reality: phi(a*) = conj(phi(a))
            let lhs = phi.apply(&lab.s7q.star_nf(&a).unwrap()).unwrap();
            let rhs = phi.apply(&a).unwrap().conj();
            assert_eq!(lhs, rhs);
            // positivity at sampled q
            let asa = lab.s7q.mul_nf(&lab.s7q.star_nf(&a).unwrap(), &a).unwrap();
            let val = phi.apply(&asa).unwrap().eval(0.9).unwrap().value;
            assert!(val.re > -1e-12, "phi(a* a) = {} < 0", val.re);
            assert!(val.im.abs() < 1e-12);
        }
    }
}
