//! Parameter-free definition of `Λ₁` inside `Λ₂⊕Λ₁`.
//!
//! Among the pairs `x, y` satisfying `ψ(x) ∧ ψ(y) ∧ H′_x ⊊ H′_y`, the
//! maximal subgroups are reached by `x` leading at `(G1[0].s[0], 0)` and
//! `y` at `(G2[0].s, 0)`. An element lies in `Λ₁` iff its absolute value
//! lies in `H′_x` or shares `x`'s tail set.

use super::divisibility::LeadDescriptor;
use super::element::{Construction, GroupElement};
use super::position::Position;
use super::tail::{hprime_descriptor, TailSet};
use crate::error::{Error, Result};

pub const X_LEAD: LeadDescriptor = LeadDescriptor::at(Position::g1_square(0, 0));
pub const Y_LEAD: LeadDescriptor = LeadDescriptor::at(Position::g2_square(0));

/// Tail sets of the pinned maximal pair.
pub fn pinned_pair() -> (TailSet, TailSet) {
    let x = GroupElement::unit(Construction::Lambda, X_LEAD.position);
    let y = GroupElement::unit(Construction::Lambda, Y_LEAD.position);
    (hprime_descriptor(&x), hprime_descriptor(&y))
}

pub fn lambda1_by_formula(a: &GroupElement) -> Result<bool> {
    if a.construction() != Construction::Lambda {
        return Err(Error::ConstructionMismatch {
            left: a.construction(),
            right: Construction::Lambda,
        });
    }
    let (hx, hy) = pinned_pair();
    debug_assert!(hx != hy);
    let t = a.abs();
    Ok(t.is_zero() || hx.contains(&t) || hprime_descriptor(&t) == hx)
}

/// Ground truth: support inside the `G1` blocks.
pub fn is_in_lambda1(a: &GroupElement) -> bool {
    a.is_in_g1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::rational::rat;

    const L: Construction = Construction::Lambda;

    #[test]
    fn examples() {
        let a = GroupElement::rational_at(L, Position::g1_circle(3), rat(7, 2)).unwrap();
        assert!(lambda1_by_formula(&a).unwrap());
        assert!(!lambda1_by_formula(&GroupElement::unit(L, Position::g2_square(0))).unwrap());
        assert!(lambda1_by_formula(&GroupElement::zero(L)).unwrap());
        let neg = GroupElement::slot_unit(Position::g1_square(0, 0), 4, -3);
        assert!(lambda1_by_formula(&neg).unwrap());
    }

    #[test]
    fn pinned_tails_are_nested() {
        let (hx, hy) = pinned_pair();
        let probe = GroupElement::slot_unit(Position::g1_square(0, 0), 0, 1);
        assert!(hy.contains(&probe) && !hx.contains(&probe));
    }
}
