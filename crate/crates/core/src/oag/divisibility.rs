//! Divisibility and the index functionals `I`, `J`, `Iₙ`, `Jₙ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::{Construction, GroupElement};
use super::position::{Position, SlotKind};
use super::rational::{int, localization_divisible, Rational};
use super::value::Value;
use crate::error::{Error, Result};

/// A position together with an inner slot. The slot is always 0 for
/// circles and Γ squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeadDescriptor {
    pub position: Position,
    pub slot: u32,
}

impl LeadDescriptor {
    pub const fn new(position: Position, slot: u32) -> Self {
        LeadDescriptor { position, slot }
    }

    pub const fn at(position: Position) -> Self {
        LeadDescriptor { position, slot: 0 }
    }
}

impl fmt::Display for LeadDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.position, self.slot)
    }
}

pub fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// Least inner slot of `value` that is not `n`-divisible in its component
/// group, if any.
pub(crate) fn nondivisible_slot(
    construction: Construction,
    pos: Position,
    value: &Value,
    n: u64,
) -> Option<u32> {
    match (construction, value) {
        (Construction::Lambda, Value::Poly(p)) => p.first_nondivisible(n).map(|t| t.0),
        (Construction::Lambda, Value::Rat(_)) => None,
        (Construction::Gamma, Value::Rat(q)) => {
            let p = Construction::gamma_prime(pos.kind());
            (!localization_divisible(q, n, p)).then_some(0)
        }
        (Construction::Gamma, Value::Poly(_)) => unreachable!("Gamma values are rational"),
    }
}

/// Whether `n·b = a` has a solution.
pub fn is_divisible(a: &GroupElement, n: u64) -> Result<bool> {
    check_modulus(n)?;
    Ok(lead_mod_unchecked(a, n).is_none())
}

/// `(I(a), J(a))`: the leading position and, for Λ squares, the least
/// nonzero inner slot there. `None` for zero.
pub fn lead(a: &GroupElement) -> Option<LeadDescriptor> {
    let (pos, value) = a.leading()?;
    let slot = match value {
        Value::Poly(p) => p.leading().map_or(0, |t| t.0),
        Value::Rat(_) => 0,
    };
    Some(LeadDescriptor::new(*pos, slot))
}

/// `(Iₙ(a), Jₙ(a))`: the least position whose value is not `n`-divisible
/// and the least non-divisible inner slot there; `None` when `a` is
/// `n`-divisible.
pub fn lead_mod(a: &GroupElement, n: u64) -> Result<Option<LeadDescriptor>> {
    check_modulus(n)?;
    Ok(lead_mod_unchecked(a, n))
}

pub(crate) fn lead_mod_unchecked(a: &GroupElement, n: u64) -> Option<LeadDescriptor> {
    a.entries().iter().find_map(|(pos, v)| {
        nondivisible_slot(a.construction(), *pos, v, n).map(|s| LeadDescriptor::new(*pos, s))
    })
}

/// Value of `a` at a descriptor: the integer coefficient of the inner slot
/// for Λ squares, the rational value elsewhere.
pub fn coefficient_at(a: &GroupElement, d: &LeadDescriptor) -> Rational {
    match a.get(&d.position) {
        None => int(0),
        Some(Value::Rat(q)) => *q,
        Some(Value::Poly(p)) => int(p.coeff(d.slot)),
    }
}

/// The `n`-divisible part of `a` strictly before `lead_mod(a, n)`
/// (all of `a` when `a` is `n`-divisible). Subtracting it keeps the class
/// of `a` modulo `n`.
pub fn divisible_prefix(a: &GroupElement, n: u64) -> Result<GroupElement> {
    let Some(d) = lead_mod(a, n)? else {
        return Ok(a.clone());
    };
    let mut parts = Vec::new();
    for (pos, v) in a.entries() {
        if *pos < d.position {
            parts.push((*pos, v.clone()));
        } else if *pos == d.position {
            if let Value::Poly(p) = v {
                let before = super::value::SlotPoly::from_terms(
                    p.terms().iter().copied().filter(|t| t.0 < d.slot),
                );
                parts.push((*pos, Value::Poly(before)));
            }
        }
    }
    GroupElement::new(a.construction(), parts)
}

/// Size of the residue ring `G_κ / N·G_κ` at one coordinate of a position
/// of the given kind.
pub(crate) fn coordinate_modulus(construction: Construction, kind: SlotKind, n: u64) -> u64 {
    match (construction, kind) {
        (Construction::Lambda, SlotKind::Square) => n,
        (Construction::Lambda, SlotKind::Circle) => 1,
        (Construction::Gamma, kind) => {
            let p = Construction::gamma_prime(kind) as u64;
            let mut m = 1;
            let mut rest = n;
            while rest % p == 0 {
                rest /= p;
                m *= p;
            }
            m
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::rational::rat;
    use crate::oag::value::SlotPoly;

    const L: Construction = Construction::Lambda;
    const G: Construction = Construction::Gamma;

    fn lsq(pos: Position, slots: &[(u32, i128)]) -> GroupElement {
        GroupElement::new(
            L,
            [(pos, Value::Poly(SlotPoly::from_terms(slots.iter().copied())))],
        )
        .unwrap()
    }

    #[test]
    fn divisibility_examples() {
        let a = lsq(Position::g1_square(0, 0), &[(0, 2), (1, 4)]);
        assert!(is_divisible(&a, 2).unwrap());
        let third = GroupElement::rational_at(L, Position::g2_circle(0), rat(1, 3)).unwrap();
        assert!(is_divisible(&third, 5).unwrap());
        let g = GroupElement::rational_at(G, Position::g2_circle(0), rat(1, 3)).unwrap();
        assert!(!is_divisible(&g, 2).unwrap());
        assert!(is_divisible(&g, 3).unwrap());
        assert_eq!(is_divisible(&g, 1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn lead_mod_examples() {
        let s0 = Position::g1_square(0, 0);
        let a = GroupElement::rational_at(L, Position::g2_circle(0), rat(1, 2))
            .unwrap()
            .add(&lsq(s0, &[(0, 3)]))
            .unwrap();
        assert_eq!(lead_mod(&a, 2).unwrap(), Some(LeadDescriptor::new(s0, 0)));
        let b = lsq(s0, &[(0, 2), (1, 1)]);
        assert_eq!(lead_mod(&b, 2).unwrap(), Some(LeadDescriptor::new(s0, 1)));
        let c = GroupElement::unit(L, Position::g2_circle(0));
        assert_eq!(lead_mod(&c, 2).unwrap(), None);
        assert_eq!(lead(&b), Some(LeadDescriptor::new(s0, 0)));
        assert_eq!(lead(&GroupElement::zero(L)), None);
    }

    #[test]
    fn prefix_is_divisible_and_keeps_class() {
        let s0 = Position::g1_square(0, 0);
        let a = GroupElement::unit(L, Position::g2_square(1))
            .scale(4)
            .add(&lsq(s0, &[(0, 2), (1, 3), (2, 5)]))
            .unwrap();
        let p = divisible_prefix(&a, 2).unwrap();
        assert!(is_divisible(&p, 2).unwrap());
        let rest = a.sub(&p).unwrap();
        assert_eq!(lead(&rest), lead_mod(&a, 2).unwrap());
    }

    #[test]
    fn coordinate_rings() {
        assert_eq!(coordinate_modulus(G, SlotKind::Circle, 12), 4);
        assert_eq!(coordinate_modulus(G, SlotKind::Square, 12), 3);
        assert_eq!(coordinate_modulus(L, SlotKind::Circle, 12), 1);
        assert_eq!(coordinate_modulus(L, SlotKind::Square, 12), 12);
    }
}
