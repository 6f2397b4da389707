//! The sets `H′_a = ⋃_{0<b<a} H_b` (modulus 2) as cut descriptors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::divisibility::{lead, LeadDescriptor};
use super::element::{Construction, GroupElement};
use super::position::SlotKind;
use crate::error::Result;

/// A convex subgroup given by a cut: `{0} ∪ {b : lead(b) > cut}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailSet {
    Empty,
    After(LeadDescriptor),
}

impl TailSet {
    pub fn cut(&self) -> Option<LeadDescriptor> {
        match self {
            TailSet::Empty => None,
            TailSet::After(c) => Some(*c),
        }
    }

    pub fn contains(&self, b: &GroupElement) -> bool {
        match (self, lead(b)) {
            (TailSet::Empty, _) => false,
            (TailSet::After(_), None) => true,
            (TailSet::After(cut), Some(l)) => l > *cut,
        }
    }
}

impl fmt::Display for TailSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailSet::Empty => f.write_str("empty"),
            TailSet::After(c) => write!(f, "after {c}"),
        }
    }
}

/// Cut descriptor of `H′_a`.
///
/// Λ: a circle lead at `ι` gives the cut `(ι+1, 0)`, a square lead
/// `(ι, j)` gives `(ι, j)`. Γ: a circle lead gives `(ι, 0)`, a square lead
/// gives the next circle, since squares are 2-divisible there.
pub fn hprime_descriptor(a: &GroupElement) -> TailSet {
    if !a.is_positive() {
        return TailSet::Empty;
    }
    let l = lead(a).expect("positive elements have a lead");
    let cut = match (a.construction(), l.position.kind()) {
        (Construction::Lambda, SlotKind::Circle) => LeadDescriptor::at(l.position.successor()),
        (Construction::Lambda, SlotKind::Square) => l,
        (Construction::Gamma, SlotKind::Circle) => LeadDescriptor::at(l.position),
        (Construction::Gamma, SlotKind::Square) => LeadDescriptor::at(l.position.next_circle()),
    };
    TailSet::After(cut)
}

/// `b ∈ H′_a`. The union also holds every `b ≤ 0` once it is nonempty.
pub fn in_hprime(a: &GroupElement, b: &GroupElement) -> Result<bool> {
    a.construction().check(b.construction())?;
    Ok(match hprime_descriptor(a) {
        TailSet::Empty => false,
        set => !b.is_positive() || set.contains(b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::position::Position;
    use crate::oag::rational::rat;

    const L: Construction = Construction::Lambda;

    #[test]
    fn lambda_cuts() {
        let a = GroupElement::rational_at(L, Position::g2_circle(0), rat(5, 1)).unwrap();
        assert_eq!(
            hprime_descriptor(&a),
            TailSet::After(LeadDescriptor::at(Position::g2_square(0)))
        );
        let s0 = Position::g1_square(0, 0);
        let b = GroupElement::slot_unit(s0, 0, 1)
            .add(&GroupElement::slot_unit(s0, 1, 2))
            .unwrap();
        assert_eq!(hprime_descriptor(&b), TailSet::After(LeadDescriptor::at(s0)));
        assert_eq!(hprime_descriptor(&GroupElement::zero(L)), TailSet::Empty);
    }

    #[test]
    fn gamma_square_lead_skips_to_circle() {
        let g = Construction::Gamma;
        let a = GroupElement::unit(g, Position::g2_square(1));
        assert_eq!(
            hprime_descriptor(&a),
            TailSet::After(LeadDescriptor::at(Position::g2_circle(0)))
        );
        assert!(!in_hprime(&a, &GroupElement::unit(g, Position::g2_circle(0))).unwrap());
        assert!(in_hprime(&a, &GroupElement::unit(g, Position::g2_square(0))).unwrap());
    }
}
