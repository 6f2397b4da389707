//! Random sentence corpora for the closure audits. Every constant lies in
//! the `f₁` image.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingId;
use crate::error::Error;
use crate::formula::{Atom, Formula, Term};
use crate::oag::{Construction, GroupElement};
use crate::sample::{case_rng, random_image_element, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    /// `∃x` over order, equality and congruence literals.
    Exists,
    /// `∃x` over literals that also include `psi`, which hides a `∀`.
    Ea,
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exists" => Ok(CorpusKind::Exists),
            "ea" => Ok(CorpusKind::Ea),
            other => Err(Error::Unsupported(format!("corpus kind {other}"))),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusKind::Exists => "exists",
            CorpusKind::Ea => "ea",
        })
    }
}

const SHAPE: Shape = Shape {
    g2_pairs: 2,
    g1_blocks: 2,
    squares_per_block: 2,
    inner_slots: 2,
    max_entries: 2,
    coeff: 3,
};

fn lit(a: Atom, negate: bool) -> Formula {
    let f = Formula::Atom(a);
    if negate {
        Formula::not(f)
    } else {
        f
    }
}

fn literal(rng: &mut impl Rng, kind: CorpusKind, params: &[GroupElement]) -> Formula {
    let x = Term::var("x");
    let n = if rng.random_bool(0.5) { 2 } else { 3 };
    let p1 = Term::constant(params[rng.random_range(0..params.len())].clone());
    let choices = if kind == CorpusKind::Ea { 7 } else { 5 };
    match rng.random_range(0..choices) {
        0 => lit(Atom::Lt(p1, x), false),
        1 => lit(Atom::Lt(x, p1), false),
        2 => lit(Atom::Cong(n, x, p1), rng.random_bool(0.5)),
        3 => lit(Atom::Eq(Term::zero().plus_var("x", n as i128), p1), false),
        4 => lit(Atom::Cong(n, x.plus_constant(&params[0]), p1), rng.random_bool(0.5)),
        5 => lit(Atom::Psi(n, p1, x), rng.random_bool(0.3)),
        _ => lit(Atom::Psi(n, x, p1), rng.random_bool(0.3)),
    }
}

/// Sentence `i` depends only on `(seed, i)`.
pub fn corpus_sentence(kind: CorpusKind, construction: Construction, seed: u64, index: u64) -> Formula {
    let mut rng = case_rng(seed, index);
    let e = EmbeddingId::f1(construction);
    let params: Vec<GroupElement> = (0..rng.random_range(1..=3))
        .map(|_| loop {
            let g = random_image_element(&mut rng, e, &SHAPE);
            if !g.is_zero() {
                break g;
            }
        })
        .collect();
    let count = rng.random_range(1..=3);
    let mut body = if kind == CorpusKind::Ea {
        Formula::Atom(Atom::Lt(Term::zero(), Term::var("x")))
    } else {
        Formula::True
    };
    for _ in 0..count {
        body = Formula::and(body, literal(&mut rng, kind, &params));
    }
    Formula::Exists("x".into(), Box::new(body))
}

pub fn generate_corpus(kind: CorpusKind, construction: Construction, count: usize, seed: u64) -> Vec<Formula> {
    (0..count as u64).map(|i| corpus_sentence(kind, construction, seed, i)).collect()
}

/// `∃x (0 < x ∧ I(c) < I(x) < I(b))` with `I(u) < I(v)` read as
/// `psi(2,u,v) ∨ psi(3,u,v)`, for `c = {G2[1].s: 1}` and `b = {G2[0].s: 1}`.
pub fn critical_circle_sentence(construction: Construction) -> Formula {
    use crate::oag::Position;
    let c = GroupElement::unit(construction, Position::g2_square(1));
    let b = GroupElement::unit(construction, Position::g2_square(0));
    let between = |u: Term, v: Term| {
        Formula::or(
            Formula::Atom(Atom::Psi(2, u.clone(), v.clone())),
            Formula::Atom(Atom::Psi(3, u, v)),
        )
    };
    let x = Term::var("x");
    Formula::Exists(
        "x".into(),
        Box::new(Formula::and_all([
            Formula::Atom(Atom::Lt(Term::zero(), x.clone())),
            between(Term::constant(c), x.clone()),
            between(x, Term::constant(b)),
        ])),
    )
}
