//! Structured text presets: generators, star pairs, symbol order, relations,
//! action/pairing tables and embeddings, all as coefficient/word lists.
//!
//! The files shipped under `presets/` transcribe the defining data of the
//! 7-sphere, quantum SU(2) and the 4-sphere; `RawPreset` keeps the parsed
//! term lists around so audits can rebuild systems with perturbed
//! coefficients.

use std::collections::HashMap;
use std::str::Chars;
use std::sync::Arc;

use crate::error::QslabError;
use crate::ncpoly::{Algebra, NCPoly, RewriteSystem, Word};
use crate::scalar::ScalarQ;

pub const S7Q_PRESET: &str = include_str!("../presets/s7q.preset");
pub const SUQ2_PRESET: &str = include_str!("../presets/suq2.preset");
pub const S4Q_PRESET: &str = include_str!("../presets/s4q.preset");
pub const UQ_SO5_PRESET: &str = include_str!("../presets/uq_so5.preset");

/// One additive term of a relation or table entry: coefficient times a word
/// spelled with generator names.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub coeff: ScalarQ,
    pub word: Vec<String>,
}

pub type RawRelation = Vec<RawTerm>;

/// A parsed preset file, before orientation.
#[derive(Clone, Debug, Default)]
pub struct RawPreset {
    pub id: String,
    pub target: Option<String>,
    pub generators: Vec<String>,
    pub star_pairs: Vec<(String, String)>,
    pub star_closure: bool,
    pub relations: Vec<RawRelation>,
    /// (uq generator name, algebra generator name, image terms)
    pub actions: Vec<(String, String, RawRelation)>,
    pub pairing: Vec<(String, String, ScalarQ)>,
    pub right_weight: Option<ScalarQ>,
    pub embeds: Vec<(String, RawRelation)>,
}

// ---------------------------------------------------------------------------
// coefficient expression parser
// ---------------------------------------------------------------------------

struct ExprParser<'a> {
    it: std::iter::Peekable<Chars<'a>>,
}

impl<'a> ExprParser<'a> {
    fn new(s: &'a str) -> Self {
        ExprParser {
            it: s.chars().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.it.peek(), Some(c) if c.is_whitespace()) {
            self.it.next();
        }
    }

    fn parse_expr(&mut self) -> Result<ScalarQ, String> {
        let mut acc = self.parse_product()?;
        loop {
            self.skip_ws();
            match self.it.peek() {
                Some('+') => {
                    self.it.next();
                    acc = acc + self.parse_product()?;
                }
                Some('-') => {
                    self.it.next();
                    acc = acc - self.parse_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_product(&mut self) -> Result<ScalarQ, String> {
        let mut acc = self.parse_factor()?;
        loop {
            self.skip_ws();
            match self.it.peek() {
                Some('*') => {
                    self.it.next();
                    acc = acc * self.parse_factor()?;
                }
                // implicit product before q, s, digits or parens
                Some(c) if *c == 'q' || *c == 's' || *c == '(' || c.is_ascii_digit() => {
                    acc = acc * self.parse_factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<ScalarQ, String> {
        self.skip_ws();
        let neg = if self.it.peek() == Some(&'-') {
            self.it.next();
            true
        } else {
            false
        };
        self.skip_ws();
        let base = match self.it.peek() {
            Some('(') => {
                self.it.next();
                let v = self.parse_expr()?;
                self.skip_ws();
                if self.it.next() != Some(')') {
                    return Err("expected )".into());
                }
                v
            }
            Some('q') => {
                self.it.next();
                ScalarQ::q_pow(1)
            }
            Some('s') => {
                self.it.next();
                ScalarQ::s_pow(1)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut n = 0i64;
                while matches!(self.it.peek(), Some(c) if c.is_ascii_digit()) {
                    n = n * 10 + (self.it.next().unwrap() as u8 - b'0') as i64;
                }
                ScalarQ::from_int(n)
            }
            Some('i') => {
                self.it.next();
                ScalarQ::i()
            }
            other => return Err(format!("unexpected character {:?}", other)),
        };
        let base = if self.it.peek() == Some(&'^') {
            self.it.next();
            let sign = if self.it.peek() == Some(&'-') {
                self.it.next();
                -1i64
            } else {
                1
            };
            let mut n = 0i64;
            while matches!(self.it.peek(), Some(c) if c.is_ascii_digit()) {
                n = n * 10 + (self.it.next().unwrap() as u8 - b'0') as i64;
            }
            base.pow(sign * n)
        } else {
            base
        };
        Ok(if neg { -base } else { base })
    }
}

/// Parse a coefficient expression like `-q+q^3` or `s^-1`.
pub fn parse_coeff(s: &str) -> Result<ScalarQ, String> {
    let mut p = ExprParser::new(s);
    let v = p.parse_expr()?;
    p.skip_ws();
    if p.it.peek().is_some() {
        return Err(format!("trailing input in coefficient `{}`", s));
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// line parser
// ---------------------------------------------------------------------------

/// Split a term list `"(c1) g g + (c2) g ..."` into raw terms.
fn parse_terms(rest: &str, line_no: usize) -> Result<Vec<RawTerm>, QslabError> {
    let err = |msg: String| QslabError::PresetParse { line: line_no, msg };
    let mut terms = Vec::new();
    let bytes: Vec<char> = rest.chars().collect();
    let mut i = 0;
    loop {
        while i < bytes.len() && (bytes[i].is_whitespace() || bytes[i] == '+') {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        if bytes[i] != '(' {
            return Err(err(format!(
                "expected ( to start a term, got `{}`",
                bytes[i]
            )));
        }
        // find matching paren
        let mut depth = 0;
        let start = i;
        let mut end = None;
        while i < bytes.len() {
            match bytes[i] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(i);
                        break;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        let end = end.ok_or_else(|| err("unbalanced parentheses".into()))?;
        let expr: String = bytes[start + 1..end].iter().collect();
        let coeff = parse_coeff(&expr).map_err(|m| err(m))?;
        i = end + 1;
        // generator names until next '(' or '+' at top level or EOL
        let mut word = Vec::new();
        loop {
            while i < bytes.len() && bytes[i].is_whitespace() {
                i += 1;
            }
            if i >= bytes.len() || bytes[i] == '(' || bytes[i] == '+' {
                break;
            }
            let mut name = String::new();
            while i < bytes.len() && !bytes[i].is_whitespace() && bytes[i] != '(' && bytes[i] != '+'
            {
                name.push(bytes[i]);
                i += 1;
            }
            word.push(name);
        }
        terms.push(RawTerm { coeff, word });
    }
    Ok(terms)
}

/// Parse one preset file.
pub fn parse_preset(text: &str) -> Result<RawPreset, QslabError> {
    let mut p = RawPreset {
        star_closure: false,
        ..Default::default()
    };
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| QslabError::PresetParse {
            line: line_no,
            msg: msg.to_string(),
        };
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        match head {
            "algebra" => p.id = rest.to_string(),
            "target" => p.target = Some(rest.to_string()),
            "generators" => p.generators = rest.split_whitespace().map(|s| s.to_string()).collect(),
            "star" => {
                let mut it = rest.split_whitespace();
                let a = it.next().ok_or_else(|| err("star needs two names"))?;
                let b = it.next().ok_or_else(|| err("star needs two names"))?;
                p.star_pairs.push((a.to_string(), b.to_string()));
            }
            "star_closure" => p.star_closure = rest == "on",
            "rel" => p.relations.push(parse_terms(rest, line_no)?),
            "action" => {
                let mut it = rest.splitn(3, char::is_whitespace);
                let h = it.next().ok_or_else(|| err("action needs a generator"))?;
                let g = it.next().ok_or_else(|| err("action needs a target"))?;
                let terms = match it.next() {
                    Some(t) => parse_terms(t.trim(), line_no)?,
                    None => Vec::new(),
                };
                p.actions.push((h.to_string(), g.to_string(), terms));
            }
            "pairing" => {
                let mut it = rest.splitn(3, char::is_whitespace);
                let h = it.next().ok_or_else(|| err("pairing needs a generator"))?;
                let g = it.next().ok_or_else(|| err("pairing needs a generator"))?;
                let c = it.next().ok_or_else(|| err("pairing needs a value"))?;
                let c = c.trim().trim_start_matches('(').trim_end_matches(')');
                p.pairing.push((
                    h.to_string(),
                    g.to_string(),
                    parse_coeff(c).map_err(|m| err(&m))?,
                ));
            }
            "right_weight" => {
                let c = rest.trim_start_matches('(').trim_end_matches(')');
                p.right_weight = Some(parse_coeff(c).map_err(|m| err(&m))?);
            }
            "embed" => {
                let mut it = rest.splitn(2, char::is_whitespace);
                let g = it.next().ok_or_else(|| err("embed needs a generator"))?;
                let terms = parse_terms(
                    it.next().ok_or_else(|| err("embed needs terms"))?.trim(),
                    line_no,
                )?;
                p.embeds.push((g.to_string(), terms));
            }
            other => return Err(err(&format!("unknown directive `{}`", other))),
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// oriented system construction
// ---------------------------------------------------------------------------

fn resolve_word(alg: &Algebra, names: &[String]) -> Result<Word, QslabError> {
    let mut ranks = Vec::with_capacity(names.len());
    for n in names {
        ranks.push(alg.rank_of(n)?);
    }
    Ok(Word(ranks))
}

pub fn resolve_terms(alg: &Algebra, terms: &RawRelation) -> Result<NCPoly, QslabError> {
    let mut p = NCPoly::zero();
    for t in terms {
        p.add_term(resolve_word(alg, &t.word)?, t.coeff.clone());
    }
    Ok(p)
}

/// Build the algebra descriptor from a raw preset.
pub fn build_algebra(raw: &RawPreset) -> Result<Arc<Algebra>, QslabError> {
    let names = raw.generators.clone();
    let mut star: Vec<u8> = (0..names.len() as u8).collect();
    let pos = |n: &str| -> Result<usize, QslabError> {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| QslabError::UnknownGenerator(format!("{}::{}", raw.id, n)))
    };
    for (a, b) in &raw.star_pairs {
        let (ia, ib) = (pos(a)?, pos(b)?);
        star[ia] = ib as u8;
        star[ib] = ia as u8;
    }
    Ok(Arc::new(Algebra {
        id: raw.id.clone(),
        names,
        star,
    }))
}

/// Orient a raw preset into a rewrite system, optionally closing the relation
/// list under the involution first.
pub fn build_rewrite_system(raw: &RawPreset) -> Result<Arc<RewriteSystem>, QslabError> {
    let alg = build_algebra(raw)?;
    let mut rels = Vec::new();
    for r in &raw.relations {
        let p = resolve_terms(&alg, r)?;
        rels.push(p.clone());
        if raw.star_closure {
            rels.push(p.star(&alg));
        }
    }
    Ok(Arc::new(RewriteSystem::from_relations(alg, rels)?))
}

// ---------------------------------------------------------------------------
// loading preset sets
// ---------------------------------------------------------------------------

/// The four shipped presets, parsed but not yet oriented.
#[derive(Clone)]
pub struct RawLab {
    pub s7q: RawPreset,
    pub suq2: RawPreset,
    pub s4q: RawPreset,
    pub uq: RawPreset,
}

impl RawLab {
    pub fn builtin() -> Result<Self, QslabError> {
        Ok(RawLab {
            s7q: parse_preset(S7Q_PRESET)?,
            suq2: parse_preset(SUQ2_PRESET)?,
            s4q: parse_preset(S4Q_PRESET)?,
            uq: parse_preset(UQ_SO5_PRESET)?,
        })
    }

    /// Load from a directory containing the four `.preset` files; falls back
    /// to nothing — all four must be present.
    pub fn from_dir(dir: &std::path::Path) -> Result<Self, QslabError> {
        let read = |name: &str| -> Result<RawPreset, QslabError> {
            let path = dir.join(format!("{}.preset", name));
            if !path.exists() {
                return Err(QslabError::PresetNotFound(path.display().to_string()));
            }
            parse_preset(&std::fs::read_to_string(path)?)
        };
        Ok(RawLab {
            s7q: read("s7q")?,
            suq2: read("suq2")?,
            s4q: read("s4q")?,
            uq: read("uq_so5")?,
        })
    }

    /// Multiply the coefficient of one (relation, term) slot of the 7-sphere
    /// preset by the given factor. Used by the mutation-sensitivity audit.
    pub fn mutate_s7q_relation(&mut self, rel: usize, term: usize, factor: &ScalarQ) {
        let t = &mut self.s7q.relations[rel][term];
        t.coeff = &t.coeff * factor;
    }

    /// Multiply one action-table coefficient by the given factor.
    pub fn mutate_action(&mut self, entry: usize, term: usize, factor: &ScalarQ) {
        let t = &mut self.uq.actions[entry].2[term];
        t.coeff = &t.coeff * factor;
    }
}

/// Convenience map from generator names to ranks for tests and displays.
pub fn rank_map(alg: &Algebra) -> HashMap<String, u8> {
    alg.names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i as u8))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::{classical_dimension, confluence_audit};

    #[test]
    fn coefficient_expressions_parse() {
        assert_eq!(parse_coeff("q^-1").unwrap(), ScalarQ::q_pow(-1));
        assert_eq!(
            parse_coeff("-q+q^3").unwrap(),
            ScalarQ::q_pow(3) - ScalarQ::q_pow(1)
        );
        assert_eq!(parse_coeff("s^-1").unwrap(), ScalarQ::s_pow(-1));
        assert_eq!(
            parse_coeff("q(1-q^2)").unwrap(),
            ScalarQ::q_pow(1) * (ScalarQ::one() - ScalarQ::q_pow(2))
        );
        assert_eq!(parse_coeff("2").unwrap(), ScalarQ::from_int(2));
    }

    #[test]
    fn s7q_loads_and_orients() {
        let raw = parse_preset(S7Q_PRESET).unwrap();
        assert_eq!(raw.relations.len(), 17);
        let rs = build_rewrite_system(&raw).unwrap();
        assert_eq!(rs.rules.len(), 29);
        // termination invariant: LHS strictly dominates every RHS word
        for rule in &rs.rules {
            for w in rule.rhs.terms.keys() {
                assert!(w < &rule.lhs);
            }
        }
    }

    #[test]
    fn s7q_is_confluent_and_flat() {
        let rs = build_rewrite_system(&parse_preset(S7Q_PRESET).unwrap()).unwrap();
        let rep = confluence_audit(&rs, 6);
        assert!(rep.is_confluent(), "unresolved: {:?}", rep.unresolved.len());
        for n in 0..=4 {
            assert_eq!(rs.basis_dimension(n), classical_dimension(8, n), "n={}", n);
        }
    }

    #[test]
    fn suq2_and_s4q_load() {
        let suq2 = build_rewrite_system(&parse_preset(SUQ2_PRESET).unwrap()).unwrap();
        assert!(confluence_audit(&suq2, 6).is_confluent());
        for n in 0..=4 {
            assert_eq!(suq2.basis_dimension(n), classical_dimension(4, n));
        }
        let s4q = build_rewrite_system(&parse_preset(S4Q_PRESET).unwrap()).unwrap();
        assert!(confluence_audit(&s4q, 6).is_confluent());
        for n in 0..=4 {
            assert_eq!(s4q.basis_dimension(n), classical_dimension(5, n));
        }
    }

    #[test]
    fn sphere_relation_normal_forms() {
        let raw = parse_preset(S7Q_PRESET).unwrap();
        let rs = build_rewrite_system(&raw).unwrap();
        let alg = &rs.algebra;
        let w = |names: &[&str]| -> Word {
            Word(names.iter().map(|n| alg.rank_of(n).unwrap()).collect())
        };
        // z2 z1 reduces to q z1 z2
        let nf = rs
            .normal_form(&NCPoly::monomial(w(&["z2", "z1"]), ScalarQ::one()))
            .unwrap();
        assert_eq!(nf, NCPoly::monomial(w(&["z1", "z2"]), ScalarQ::q_pow(1)));
        // z2 z3 reduces to q^2 z3 z2 + q(1-q^2) z1 z4
        let nf = rs
            .normal_form(&NCPoly::monomial(w(&["z2", "z3"]), ScalarQ::one()))
            .unwrap();
        let mut expect = NCPoly::monomial(w(&["z3", "z2"]), ScalarQ::q_pow(2));
        expect.add_term(
            w(&["z1", "z4"]),
            ScalarQ::q_pow(1) * (ScalarQ::one() - ScalarQ::q_pow(2)),
        );
        assert_eq!(nf, expect);
        // the sphere sum reduces to 1
        let mut sphere = NCPoly::zero();
        for i in ["z1", "z2", "z3", "z4"] {
            sphere.add_term(w(&[i, &format!("{}*", i)]), ScalarQ::one());
        }
        let nf = rs.normal_form(&sphere).unwrap();
        assert_eq!(nf, NCPoly::one());
    }

    #[test]
    fn star_descends_to_normal_forms() {
        // star commutes with reduction: NF(star(p)) = NF(star(NF(p)))
        let rs = build_rewrite_system(&parse_preset(S7Q_PRESET).unwrap()).unwrap();
        let alg = rs.algebra.clone();
        let words = rs.normal_words(2);
        for w in words.iter().filter(|w| w.degree() == 2).take(20) {
            let p = NCPoly::monomial(w.clone(), ScalarQ::q_pow(1));
            let a = rs.star_nf(&p).unwrap();
            let b = rs.star_nf(&rs.normal_form(&p).unwrap()).unwrap();
            assert_eq!(a, b, "word {}", w.display(&alg));
        }
    }

    #[test]
    fn mutated_preset_breaks_confluence_or_flatness() {
        let mut raw = RawLab::builtin().unwrap();
        // perturb the first sphere relation's first coefficient by q
        let idx = raw.s7q.relations.len() - 2;
        raw.mutate_s7q_relation(idx, 0, &ScalarQ::q_pow(1));
        let rs = build_rewrite_system(&raw.s7q).unwrap();
        let confluent = confluence_audit(&rs, 4).is_confluent();
        let flat = (0..=3).all(|n| rs.basis_dimension(n) == classical_dimension(8, n));
        assert!(!(confluent && flat));
    }

    #[test]
    fn dropping_a_sphere_term_leaves_unresolved_pairs() {
        // deleting one term from a sphere relation leaves an inconsistent
        // system that the audit reports rather than silently accepting
        let mut raw = RawLab::builtin().unwrap();
        let idx = raw.s7q.relations.len() - 2;
        raw.s7q.relations[idx].pop();
        let rs = build_rewrite_system(&raw.s7q).unwrap();
        let audit = confluence_audit(&rs, 4);
        let flat = (0..=3).all(|n| rs.basis_dimension(n) == classical_dimension(8, n));
        assert!(
            !audit.unresolved.is_empty() || !flat,
            "a truncated sphere relation must be detected"
        );
    }
}
