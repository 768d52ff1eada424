//! The 4-sphere inside the 7-sphere: the 4x2 matrix of generators, the
//! projection it defines, the invariant-subalgebra characterization, the
//! abstract x-relations, and the quantum SU(2) coaction with its pairing.

use std::collections::BTreeMap;

use crate::error::QslabError;
use crate::lab::Lab;
use crate::ncpoly::{NCPoly, RewriteSystem, Word};
use crate::qgroup::UqGen;
use crate::scalar::ScalarQ;

// ---------------------------------------------------------------------------
// matrices over a quotient algebra
// ---------------------------------------------------------------------------

/// Rectangular matrix of normalized polynomials over one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixNC {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<NCPoly>,
}

impl MatrixNC {
    pub fn new(rows: usize, cols: usize) -> Self {
        MatrixNC {
            rows,
            cols,
            a: vec![NCPoly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<NCPoly>>) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        MatrixNC {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &NCPoly {
        &self.a[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: NCPoly) {
        self.a[r * self.cols + c] = v;
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, NCPoly::one());
        }
        m
    }

    pub fn dagger(&self, rs: &RewriteSystem) -> Result<MatrixNC, QslabError> {
        let mut t = MatrixNC::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, rs.star_nf(self.at(r, c))?);
            }
        }
        Ok(t)
    }

    pub fn matmul(&self, other: &MatrixNC, rs: &RewriteSystem) -> Result<MatrixNC, QslabError> {
        assert_eq!(self.cols, other.rows);
        let mut out = MatrixNC::new(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = NCPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&rs.mul_nf(self.at(r, k), other.at(k, c))?);
                }
                out.set(r, c, rs.normal_form(&acc)?);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MatrixNC) -> MatrixNC {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.a.len() {
            out.a[i] = self.a[i].sub(&other.a[i]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|p| p.is_zero())
    }
}

// ---------------------------------------------------------------------------
// Psi and the projection
// ---------------------------------------------------------------------------

/// The 4x2 matrix over the 7-sphere whose columns frame the 4-sphere
/// projection.
pub fn build_psi(lab: &Lab) -> MatrixNC {
    let alg = &lab.s7q.algebra;
    let g = |n: &str, c: ScalarQ| NCPoly::monomial(Word::gen(alg.rank_of(n).unwrap()), c);
    MatrixNC::from_rows(vec![
        vec![g("z3*", -ScalarQ::q_pow(1)), g("z1*", ScalarQ::one())],
        vec![g("z1", ScalarQ::one()), g("z3", ScalarQ::one())],
        vec![g("z2", ScalarQ::q_pow(1)), g("z4", ScalarQ::q_pow(1))],
        vec![g("z4*", -ScalarQ::q_pow(3)), g("z2*", ScalarQ::q_pow(2))],
    ])
}

/// Psi together with the projection P = Psi Psi^dagger.
pub fn build_psi_p(lab: &Lab) -> Result<(MatrixNC, MatrixNC), QslabError> {
    let psi = build_psi(lab);
    let p = psi.matmul(&psi.dagger(&lab.s7q)?, &lab.s7q)?;
    Ok((psi, p))
}

/// The projection written through the embedded 4-sphere generators.
pub fn p_in_x_form(lab: &Lab) -> Result<MatrixNC, QslabError> {
    let x0 = lab.embedded("x0")?;
    let x1 = lab.embedded("x1")?;
    let x2 = lab.embedded("x2")?;
    let x1s = lab.embedded("x1*")?;
    let x2s = lab.embedded("x2*")?;
    let one = NCPoly::one();
    let q2 = ScalarQ::q_pow(2);
    let m = MatrixNC::from_rows(vec![
        vec![
            one.sub(&x0.scale(&ScalarQ::q_pow(6))),
            NCPoly::zero(),
            x2s.scale(&-&q2),
            x1s.scale(&q2),
        ],
        vec![NCPoly::zero(), one.sub(&x0), x1.clone(), x2.clone()],
        vec![x2.scale(&-&q2), x1s.clone(), x0.scale(&q2), NCPoly::zero()],
        vec![
            x1.scale(&q2),
            x2s.clone(),
            NCPoly::zero(),
            x0.scale(&ScalarQ::q_pow(4)),
        ],
    ]);
    let mut out = MatrixNC::new(4, 4);
    for r in 0..4 {
        for c in 0..4 {
            out.set(r, c, lab.s7q.normal_form(m.at(r, c))?);
        }
    }
    Ok(out)
}

/// Psi^dagger Psi = 1, P = P* = P^2, and the entrywise match of P with its
/// x-generator form.
pub fn verify_psi_p(lab: &Lab) -> Result<Vec<String>, QslabError> {
    let mut failures = Vec::new();
    let rs = &lab.s7q;
    let (psi, p) = build_psi_p(lab)?;
    let psid = psi.dagger(rs)?;
    let unit2 = psid.matmul(&psi, rs)?;
    if unit2 != MatrixNC::identity(2) {
        failures.push("Psi^dagger Psi != 1".to_string());
    }
    let p2 = p.matmul(&p, rs)?;
    if !p2.sub(&p).is_zero() {
        failures.push("P^2 != P".to_string());
    }
    let pd = p.dagger(rs)?;
    if !pd.sub(&p).is_zero() {
        failures.push("P* != P".to_string());
    }
    let px = p_in_x_form(lab)?;
    if !px.sub(&p).is_zero() {
        for r in 0..4 {
            for c in 0..4 {
                if px.at(r, c) != p.at(r, c) {
                    failures.push(format!("P entry ({}, {}) differs from x-form", r, c));
                }
            }
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// invariance
// ---------------------------------------------------------------------------

/// True iff the element is fixed by the su(2) subalgebra: h |> p = eps(h) p
/// for h in {K1, E1, F1}.
pub fn is_s4_invariant(lab: &Lab, p: &NCPoly) -> Result<bool, QslabError> {
    for h in [UqGen::K1, UqGen::E1, UqGen::F1] {
        let img = lab.action.act_gen(h, p)?;
        let want = lab.s7q.normal_form(&p.scale(&h.counit()))?;
        if img != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the su(2)-invariant subspace of the degree truncation,
/// computed as an exact kernel.
pub fn invariant_subspace_dimension(lab: &Lab, max_degree: usize) -> Result<usize, QslabError> {
    use crate::linalg::{rank, MatQ};
    let rs = &lab.s7q;
    let words = rs.normal_words(max_degree);
    // K1-invariance forces weight zero, a diagonal constraint
    let zero_wt: Vec<&Word> = words
        .iter()
        .filter(|w| lab.action.word_weight(UqGen::K1, w).is_one())
        .collect();
    // remaining constraints: E1 and F1 kill the element
    let mut row_keys: BTreeMap<(usize, Word), usize> = BTreeMap::new();
    let mut entries: Vec<((usize, Word), usize, ScalarQ)> = Vec::new();
    for (col, w) in zero_wt.iter().enumerate() {
        for (hi, h) in [UqGen::E1, UqGen::F1].into_iter().enumerate() {
            let img = lab
                .action
                .act_gen(h, &NCPoly::monomial((*w).clone(), ScalarQ::one()))?;
            for (iw, c) in &img.terms {
                let key = (hi, iw.clone());
                let next = row_keys.len();
                let rid = *row_keys.entry(key.clone()).or_insert(next);
                let _ = rid;
                entries.push((key, col, c.clone()));
            }
        }
    }
    let mut m = MatQ::zeros(row_keys.len(), zero_wt.len());
    for (key, col, c) in entries {
        let r = row_keys[&key];
        let cur = m.at(r, col).clone() + c;
        m.set(r, col, cur);
    }
    Ok(zero_wt.len() - rank(m))
}

/// Every abstract 4-sphere relation, pushed through the embedding, reduces to
/// zero in the 7-sphere.
pub fn verify_x_relations(lab: &Lab) -> Result<Vec<String>, QslabError> {
    let mut failures = Vec::new();
    for (i, rel) in lab.s4q.relations.iter().enumerate() {
        // substitute embeddings
        let mut image = NCPoly::zero();
        for (w, c) in &rel.terms {
            let mut term = NCPoly::monomial(Word::unit(), c.clone());
            for &r in &w.0 {
                term = term.mul(&lab.embed[r as usize]);
            }
            image = image.add(&term);
        }
        let nf = lab.s7q.normal_form(&image)?;
        if !nf.is_zero() {
            failures.push(format!(
                "relation {} does not vanish under the embedding: {}",
                i,
                nf.display(&lab.s7q.algebra)
            ));
        }
    }
    // selfadjointness of x0
    let x0 = lab.embedded("x0")?;
    if lab.s7q.star_nf(&x0)? != x0 {
        failures.push("x0 is not selfadjoint".to_string());
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// coaction
// ---------------------------------------------------------------------------

/// Sum of two-leg tensors: left leg in the 7-sphere, right leg in quantum
/// SU(2), both normalized.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct TensorPoly {
    pub terms: BTreeMap<(Word, Word), ScalarQ>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Default::default()
    }

    pub fn monomial(l: Word, r: Word, c: ScalarQ) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((l, r), c);
        }
        TensorPoly { terms: t }
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let e = self.terms.entry(key.clone()).or_insert_with(ScalarQ::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut t = self.terms.clone();
        for ((l, r), c) in &other.terms {
            let e = t
                .entry((l.clone(), r.clone()))
                .or_insert_with(ScalarQ::zero);
            *e = &*e + c;
        }
        t.retain(|_, v| !v.is_zero());
        TensorPoly { terms: t }
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.scale(&-ScalarQ::one()))
    }

    pub fn scale(&self, c: &ScalarQ) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero();
        }
        TensorPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(
        &self,
        other: &TensorPoly,
        left_rs: &RewriteSystem,
        right_rs: &RewriteSystem,
    ) -> Result<TensorPoly, QslabError> {
        let mut out = TensorPoly::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let l = left_rs.normal_form(&NCPoly::monomial(l1.concat(l2), c1 * c2))?;
                let r = right_rs.normal_form(&NCPoly::monomial(r1.concat(r2), ScalarQ::one()))?;
                for (lw, lc) in &l.terms {
                    for (rw, rc) in &r.terms {
                        let e = out
                            .terms
                            .entry((lw.clone(), rw.clone()))
                            .or_insert_with(ScalarQ::zero);
                        *e = &*e + &(lc * rc);
                    }
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Coaction table on the 7-sphere generators, extended to adjoints by
/// star-compatibility and to words multiplicatively.
pub struct Coaction<'a> {
    lab: &'a Lab,
    table: Vec<TensorPoly>,
}

impl<'a> Coaction<'a> {
    pub fn new(lab: &'a Lab) -> Result<Self, QslabError> {
        let s7 = &lab.s7q.algebra;
        let su = &lab.suq2.algebra;
        let z = |n: &str| s7.rank_of(n).unwrap();
        let g = |n: &str| Word::gen(su.rank_of(n).unwrap());
        let mut table = vec![TensorPoly::zero(); s7.n_gens()];
        let mut set = |zn: &str, entries: Vec<(&str, &str, ScalarQ)>| {
            let mut t = TensorPoly::zero();
            for (zleg, aleg, c) in entries {
                t = t.add(&TensorPoly::monomial(Word::gen(z(zleg)), g(aleg), c));
            }
            table[z(zn) as usize] = t;
        };
        set(
            "z1",
            vec![
                ("z1", "alpha", ScalarQ::one()),
                ("z3", "beta*", -ScalarQ::q_pow(1)),
            ],
        );
        set(
            "z2",
            vec![
                ("z2", "alpha", ScalarQ::one()),
                ("z4", "beta*", -ScalarQ::q_pow(1)),
            ],
        );
        set(
            "z3",
            vec![
                ("z3", "alpha*", ScalarQ::one()),
                ("z1", "beta", ScalarQ::one()),
            ],
        );
        set(
            "z4",
            vec![
                ("z4", "alpha*", ScalarQ::one()),
                ("z2", "beta", ScalarQ::one()),
            ],
        );
        // adjoints: apply star to both legs
        for r in 0..s7.n_gens() {
            let rstar = s7.star[r] as usize;
            if table[rstar].is_zero() && !table[r].is_zero() {
                let mut t = TensorPoly::zero();
                for ((l, rr), c) in &table[r].terms {
                    let ls = NCPoly::monomial(l.clone(), ScalarQ::one()).star(s7);
                    let rs_ = NCPoly::monomial(rr.clone(), ScalarQ::one()).star(su);
                    for (lw, lc) in &ls.terms {
                        for (rw, rc) in &rs_.terms {
                            t = t.add(&TensorPoly::monomial(
                                lw.clone(),
                                rw.clone(),
                                &(&c.conj() * lc) * rc,
                            ));
                        }
                    }
                }
                table[rstar] = t;
            }
        }
        Ok(Coaction { lab, table })
    }

    /// Multiplicative extension to any polynomial.
    pub fn apply(&self, p: &NCPoly) -> Result<TensorPoly, QslabError> {
        let mut out = TensorPoly::zero();
        for (w, c) in &p.terms {
            let mut acc = TensorPoly::monomial(Word::unit(), Word::unit(), c.clone());
            for &r in &w.0 {
                acc = acc.mul(&self.table[r as usize], &self.lab.s7q, &self.lab.suq2)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Contract the right leg with the dual pairing for a given generator.
    /// Valid when every right leg is a single generator or the unit.
    pub fn contract(&self, t: &TensorPoly, h: UqGen) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((l, r), c) in &t.terms {
            let pair_val = if r.0.is_empty() {
                // <h, 1> = eps(h)
                h.counit()
            } else if r.0.len() == 1 {
                self.lab
                    .pairing
                    .iter()
                    .find(|(hh, g, _)| *hh == h && *g == r.0[0])
                    .map(|(_, _, v)| v.clone())
                    .unwrap_or_else(ScalarQ::zero)
            } else {
                ScalarQ::zero()
            };
            out.add_term(l.clone(), c * &pair_val);
        }
        out
    }
}

/// Coaction consistency: pairing duality on generators, the compact matrix
/// form on Psi, multiplicativity on the defining relations, and coinvariance
/// of the projection entries.
pub fn verify_coaction(lab: &Lab) -> Result<Vec<String>, QslabError> {
    let mut failures = Vec::new();
    let co = Coaction::new(lab)?;
    let s7 = &lab.s7q.algebra;

    // (i) duality with the pairing on every generator
    for r in 0..s7.n_gens() as u8 {
        let p = NCPoly::gen(r);
        let t = co.apply(&p)?;
        for h in [UqGen::K1, UqGen::E1, UqGen::F1] {
            let got = lab.s7q.normal_form(&co.contract(&t, h))?;
            let want = lab.action.act_gen(h, &p)?;
            if got != want {
                failures.push(format!(
                    "pairing contraction of {} mismatches action of {}",
                    s7.name(r),
                    h.name()
                ));
            }
        }
    }

    // (ii) compact form on Psi: coaction of Psi equals Psi (dot) U
    let psi = build_psi(lab);
    let su = &lab.suq2.algebra;
    let gu = |n: &str| Word::gen(su.rank_of(n).unwrap());
    let u_mat: Vec<Vec<TensorPoly>> = {
        let e = |n: &str, c: ScalarQ| TensorPoly::monomial(Word::unit(), gu(n), c);
        vec![
            vec![e("alpha", ScalarQ::one()), e("beta", ScalarQ::one())],
            vec![e("beta*", -ScalarQ::q_pow(1)), e("alpha*", ScalarQ::one())],
        ]
    };
    for i in 0..4 {
        for j in 0..2 {
            let lhs = co.apply(psi.at(i, j))?;
            let mut rhs = TensorPoly::zero();
            for k in 0..2 {
                // Psi_ik (x) U_kj
                let mut t = TensorPoly::zero();
                for (w, c) in &psi.at(i, k).terms {
                    for ((_, ur), uc) in &u_mat[k][j].terms {
                        t = t.add(&TensorPoly::monomial(w.clone(), ur.clone(), c * uc));
                    }
                }
                rhs = rhs.add(&t);
            }
            if lhs != rhs {
                failures.push(format!("coaction of Psi({}, {}) mismatch", i, j));
            }
        }
    }

    // (iii) the coaction is an algebra map: defining relations go to zero
    for (i, rel) in lab.s7q.relations.iter().enumerate() {
        let img = co.apply(rel)?;
        if !img.is_zero() {
            failures.push(format!("coaction does not kill relation {}", i));
        }
    }

    // unit is fixed
    let one = co.apply(&NCPoly::one())?;
    if one != TensorPoly::monomial(Word::unit(), Word::unit(), ScalarQ::one()) {
        failures.push("coaction of 1 is not 1 (x) 1".to_string());
    }

    // coinvariance of the projection entries: Delta_R(P_ij) = P_ij (x) 1
    let (_, p) = build_psi_p(lab)?;
    for i in 0..4 {
        for j in 0..4 {
            let t = co.apply(p.at(i, j))?;
            let mut want = TensorPoly::zero();
            for (w, c) in &p.at(i, j).terms {
                want = want.add(&TensorPoly::monomial(w.clone(), Word::unit(), c.clone()));
            }
            if t != want {
                failures.push(format!("P({}, {}) is not coinvariant", i, j));
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
    fn x0_is_invariant_z1_is_not() {
        let lab = lab();
        let x0 = lab.embedded("x0").unwrap();
        assert!(is_s4_invariant(&lab, &x0).unwrap());
        let z1 = NCPoly::gen(lab.s7q.algebra.rank_of("z1").unwrap());
        assert!(!is_s4_invariant(&lab, &z1).unwrap());
    }

    #[test]
    fn psi_p_identities() {
        let lab = lab();
        let fails = verify_psi_p(&lab).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn p_entries_are_invariant() {
        let lab = lab();
        let (_, p) = build_psi_p(&lab).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(is_s4_invariant(&lab, p.at(i, j)).unwrap(), "({},{})", i, j);
            }
        }
    }

    #[test]
    fn p11_matches_first_entry() {
        let lab = lab();
        let (_, p) = build_psi_p(&lab).unwrap();
        let x0 = lab.embedded("x0").unwrap();
        let want = lab
            .s7q
            .normal_form(&NCPoly::one().sub(&x0.scale(&ScalarQ::q_pow(6))))
            .unwrap();
        assert_eq!(p.at(0, 0), &want);
    }

    #[test]
    fn x_relations_vanish() {
        let lab = lab();
        let fails = verify_x_relations(&lab).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn coaction_checks() {
        let lab = lab();
        let fails = verify_coaction(&lab).unwrap();
        assert!(fails.is_empty(), "{:?}", fails);
    }

    #[test]
    fn coaction_of_z1() {
        let lab = lab();
        let co = Coaction::new(&lab).unwrap();
        let s7 = &lab.s7q.algebra;
        let su = &lab.suq2.algebra;
        let t = co.apply(&NCPoly::gen(s7.rank_of("z1").unwrap())).unwrap();
        let mut want = TensorPoly::monomial(
            Word::gen(s7.rank_of("z1").unwrap()),
            Word::gen(su.rank_of("alpha").unwrap()),
            ScalarQ::one(),
        );
        want = want.add(&TensorPoly::monomial(
            Word::gen(s7.rank_of("z3").unwrap()),
            Word::gen(su.rank_of("beta*").unwrap()),
            -ScalarQ::q_pow(1),
        ));
        assert_eq!(t, want);
    }

    #[test]
    fn invariant_dimensions_match_s4q() {
        let lab = lab();
        // z-degree 2k invariants correspond to x-degree k elements
        let d1 = invariant_subspace_dimension(&lab, 2).unwrap();
        assert_eq!(d1, lab.s4q.basis_dimension(1));
        let d2 = invariant_subspace_dimension(&lab, 4).unwrap();
        assert_eq!(d2, lab.s4q.basis_dimension(2));
    }
}
