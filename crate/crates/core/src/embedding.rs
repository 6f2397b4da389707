//! The order embeddings `f₁`, `f₂` of the square/circle direct sums into
//! themselves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oag::divisibility::{check_modulus, lead_mod, LeadDescriptor};
use crate::oag::position::{G1Slot, G2Slot, Position};
use crate::oag::value::{SlotPoly, Value};
use crate::oag::{Construction, GroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Map {
    F1,
    F2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingId {
    pub which: Map,
    pub construction: Construction,
    /// Required for `F2` on Γ.
    pub experimental: bool,
}

impl EmbeddingId {
    pub const fn f1(construction: Construction) -> Self {
        EmbeddingId {
            which: Map::F1,
            construction,
            experimental: false,
        }
    }

    pub const fn f2(construction: Construction) -> Self {
        EmbeddingId {
            which: Map::F2,
            construction,
            experimental: false,
        }
    }

    pub const fn allow_experimental(mut self) -> Self {
        self.experimental = true;
        self
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        self.construction.check(a.construction())?;
        if self.which == Map::F2 && self.construction == Construction::Gamma && !self.experimental {
            return Err(Error::Experimental("f2 on the Gamma construction".into()));
        }
        Ok(())
    }
}

impl fmt::Display for EmbeddingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.which {
            Map::F1 => "f1",
            Map::F2 => "f2",
        };
        write!(f, "{name}/{}", self.construction)
    }
}

fn forward(which: Map, p: Position) -> Position {
    use Position::*;
    match which {
        Map::F1 => match p {
            G2 { pair, slot } => G2 { pair: pair + 1, slot },
            G1 { block: 0, slot: G1Slot::Square(0) } => Position::g2_square(0),
            G1 { block: 0, slot: G1Slot::Square(k) } => Position::g1_square(0, k - 1),
            other => other,
        },
        Map::F2 => match p {
            G2 { pair: 0, slot: G2Slot::Circle } => Position::g1_circle(0),
            G2 { pair: 0, slot: G2Slot::Square } => Position::g1_square(1, 0),
            G2 { pair, slot } => G2 { pair: pair - 1, slot },
            G1 { block: 0, slot: G1Slot::Square(k) } => Position::g1_square(1, k + 1),
            G1 { block, slot } => G1 { block: block + 1, slot },
        },
    }
}

fn backward(which: Map, p: Position) -> Option<Position> {
    use Position::*;
    Some(match which {
        Map::F1 => match p {
            G2 { pair: 0, slot: G2Slot::Circle } => return None,
            G2 { pair: 0, slot: G2Slot::Square } => Position::g1_square(0, 0),
            G2 { pair, slot } => G2 { pair: pair - 1, slot },
            G1 { block: 0, slot: G1Slot::Square(k) } => Position::g1_square(0, k + 1),
            other => other,
        },
        Map::F2 => match p {
            G2 { pair, slot } => G2 { pair: pair + 1, slot },
            G1 { block: 0, slot: G1Slot::Square(_) } => return None,
            G1 { block: 0, slot: G1Slot::Circle } => Position::g2_circle(0),
            G1 { block: 1, slot: G1Slot::Square(0) } => Position::g2_square(0),
            G1 { block: 1, slot: G1Slot::Square(k) } => Position::g1_square(0, k - 1),
            G1 { block, slot } => G1 { block: block - 1, slot },
        },
    })
}

pub fn apply(e: EmbeddingId, a: &GroupElement) -> Result<GroupElement> {
    e.check(a)?;
    Ok(a.map_positions(|p| forward(e.which, p)))
}

/// The unique `b` with `apply(e, b) = a`, if `a` lies in the image.
pub fn preimage(e: EmbeddingId, a: &GroupElement) -> Result<Option<GroupElement>> {
    e.check(a)?;
    if a.support().any(|p| backward(e.which, *p).is_none()) {
        return Ok(None);
    }
    Ok(Some(a.map_positions(|p| backward(e.which, p).expect("checked above"))))
}

pub fn in_image(e: EmbeddingId, a: &GroupElement) -> Result<bool> {
    e.check(a)?;
    Ok(a.support().all(|p| backward(e.which, *p).is_some()))
}

/// Moves `t` by less than `eps` inside the `f₁` image so that it avoids
/// every listed congruence class `r mod n`.
pub fn perturb_into_image(
    t: &GroupElement,
    eps: &GroupElement,
    constraints: &[(u64, GroupElement)],
) -> Result<GroupElement> {
    let lambda = Construction::Lambda;
    lambda.check(t.construction())?;
    lambda.check(eps.construction())?;
    if !eps.is_positive() {
        return Err(Error::Precondition("eps must be positive".into()));
    }
    let f1 = EmbeddingId::f1(lambda);
    if !in_image(f1, t)? {
        return Err(Error::NotInImage(format!("{t} under {f1}")));
    }
    for (n, r) in constraints {
        check_modulus(*n)?;
        lambda.check(r.construction())?;
    }
    let block = std::iter::once(t)
        .chain(std::iter::once(eps))
        .chain(constraints.iter().map(|(_, r)| r))
        .filter_map(GroupElement::max_g1_block)
        .max()
        .map_or(0, |b| b + 1);
    let out = t.add_unchecked(&GroupElement::unit(lambda, Position::g1_square(block, 0)));
    debug_assert!(in_image(f1, &out)?);
    Ok(out)
}

/// `c < d` inside the `f₁` image such that every `u` strictly between them
/// has `leadMod(u, n) = leadMod(a, n)`.
pub fn straddle_witnesses(a: &GroupElement, n: u64) -> Result<(GroupElement, GroupElement)> {
    Construction::Lambda.check(a.construction())?;
    let d = lead_mod(a, n)?.ok_or(Error::LeadAbsent(n))?;
    Ok(straddle_at(a, d))
}

/// Interval around `a`'s value at the descriptor's square, cut just below
/// the next inner slot. Every element strictly inside agrees with `a` at
/// that square on slots `≤ d.slot` and vanishes before it.
pub(crate) fn straddle_at(a: &GroupElement, d: LeadDescriptor) -> (GroupElement, GroupElement) {
    let w = match a.get(&d.position) {
        Some(Value::Poly(p)) => p.truncate_after(d.slot),
        _ => SlotPoly::zero(),
    };
    let delta = SlotPoly::monomial(d.slot + 1, 1);
    let at = |v: SlotPoly| {
        GroupElement::new(Construction::Lambda, [(d.position, Value::Poly(v))])
            .expect("square value")
    };
    (at(w.add(&delta.scale(-1))), at(w.add(&delta)))
}
