//! Assembly of the shipped presets into one working context: the three
//! oriented algebras, the symmetry action, the dual pairing and the embedding
//! of the 4-sphere generators into the 7-sphere.

use std::sync::Arc;

use crate::error::QslabError;
use crate::ncpoly::{NCPoly, RewriteSystem};
use crate::preset::{build_rewrite_system, resolve_terms, RawLab};
use crate::qgroup::{UqAction, UqGen};
use crate::scalar::ScalarQ;

pub struct Lab {
    pub s7q: Arc<RewriteSystem>,
    pub suq2: Arc<RewriteSystem>,
    pub s4q: Arc<RewriteSystem>,
    pub action: UqAction,
    /// dual pairing values on quantum SU(2) generators, by (uq gen, rank)
    pub pairing: Vec<(UqGen, u8, ScalarQ)>,
    /// embedded image in the 7-sphere of each 4-sphere generator, by rank
    pub embed: Vec<NCPoly>,
}

impl Lab {
    pub fn from_raw(raw: &RawLab) -> Result<Self, QslabError> {
        let s7q = build_rewrite_system(&raw.s7q)?;
        let suq2 = build_rewrite_system(&raw.suq2)?;
        let s4q = build_rewrite_system(&raw.s4q)?;
        let action = UqAction::from_preset(&raw.uq, s7q.clone())?;

        let mut pairing = Vec::new();
        for (h, g, c) in &raw.suq2.pairing {
            let hu = UqGen::from_name(h).ok_or_else(|| QslabError::UnknownGenerator(h.clone()))?;
            pairing.push((hu, suq2.algebra.rank_of(g)?, c.clone()));
        }

        let mut embed = vec![NCPoly::zero(); s4q.algebra.n_gens()];
        for (g, terms) in &raw.s4q.embeds {
            let rank = s4q.algebra.rank_of(g)? as usize;
            embed[rank] = s7q.normal_form(&resolve_terms(&s7q.algebra, terms)?)?;
        }
        // embeddings of adjoint generators via the involution
        for r in 0..s4q.algebra.n_gens() {
            let rstar = s4q.algebra.star[r] as usize;
            if embed[rstar].is_zero() && !embed[r].is_zero() {
                embed[rstar] = s7q.star_nf(&embed[r])?;
            }
        }

        Ok(Lab {
            s7q,
            suq2,
            s4q,
            action,
            pairing,
            embed,
        })
    }

    pub fn builtin() -> Result<Self, QslabError> {
        Self::from_raw(&RawLab::builtin()?)
    }

    /// Embedded image of a named 4-sphere generator inside the 7-sphere.
    pub fn embedded(&self, name: &str) -> Result<NCPoly, QslabError> {
        let r = self.s4q.algebra.rank_of(name)? as usize;
        Ok(self.embed[r].clone())
    }

    /// The five embedded 4-sphere generators (x0, x1, x1*, x2, x2*) with
    /// their names, the standard loop set for bimodule and calculus claims.
    pub fn x_generators(&self) -> Vec<(String, NCPoly)> {
        (0..self.s4q.algebra.n_gens())
            .map(|r| {
                (
                    self.s4q.algebra.name(r as u8).to_string(),
                    self.embed[r].clone(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_lab_loads() {
        let lab = Lab::builtin().unwrap();
        assert_eq!(lab.s7q.algebra.n_gens(), 8);
        assert_eq!(lab.suq2.algebra.n_gens(), 4);
        assert_eq!(lab.s4q.algebra.n_gens(), 5);
        assert_eq!(lab.pairing.len(), 4);
        // every embedded generator is present and of degree 2
        for (name, img) in lab.x_generators() {
            assert!(!img.is_zero(), "{} missing", name);
            assert_eq!(img.degree(), 2);
        }
    }
}
