//! `ψₙ(a, b)`: membership `b ∈ Hⁿ_a = { b : ∀y (0 < y < b → y ≢ₙ a) }`.
//!
//! Closed form. Let `D = (Iₙ(a), Jₙ(a))` and `L = (I(b), J(b))`.
//!
//! * `b ≤ 0`: true, the interval is empty.
//! * `a` is `n`-divisible: false, `n·ε` for a tiny positive `ε` lies below `b`.
//! * `D < L`: true. Every positive `y ≡ₙ a` is nonzero at `D`, so it leads
//!   at or before `D` and exceeds `b`.
//! * `L < D`: false.
//! * `L = D`: in Γ false (each residue class of ℤ₍ₚ₎ is dense). In Λ the
//!   candidates lead at `D` with coefficient `≥ r₀`, the least positive
//!   residue of `a` there, and their tail can be made arbitrarily negative,
//!   so ψ holds iff `b`'s coefficient at `D` is below `r₀`.

use std::cmp::Ordering;

use super::divisibility::{check_modulus, coefficient_at, lead, lead_mod_unchecked, LeadDescriptor};
use super::element::{Construction, GroupElement};
use super::position::Position;
use super::rational::{int, localization_residue, Rational};
use super::value::{SlotPoly, Value};
use crate::error::Result;

/// `x ≡ₙ y`, i.e. `n` divides `y − x`.
pub fn congruent(n: u64, x: &GroupElement, y: &GroupElement) -> Result<bool> {
    check_modulus(n)?;
    Ok(lead_mod_unchecked(&y.sub(x)?, n).is_none())
}

pub fn psi(n: u64, a: &GroupElement, b: &GroupElement) -> Result<bool> {
    check_modulus(n)?;
    a.construction().check(b.construction())?;
    Ok(classify(n, a, b).is_none())
}

/// Alias reading ψ as set membership `b ∈ Hⁿ_a`.
pub fn in_h(n: u64, a: &GroupElement, b: &GroupElement) -> Result<bool> {
    psi(n, a, b)
}

/// A `y` with `0 < y < b` and `y ≡ₙ a`, present exactly when ψₙ(a, b) fails.
pub fn psi_witness(n: u64, a: &GroupElement, b: &GroupElement) -> Result<Option<GroupElement>> {
    check_modulus(n)?;
    a.construction().check(b.construction())?;
    let Some(shape) = classify(n, a, b) else {
        return Ok(None);
    };
    let y = build_witness(n, a, b, shape);
    debug_assert!(y.is_positive() && y.try_cmp(b).unwrap() == Ordering::Less);
    debug_assert!(congruent(n, &y, a).unwrap());
    Ok(Some(y))
}

#[derive(Debug, Clone, Copy)]
enum WitnessShape {
    /// `a` divisible: `n·ε`.
    Divisible,
    /// `b` leads strictly before `D`.
    Below(LeadDescriptor),
    /// `b` leads at `D` with room for a smaller representative.
    Tied(LeadDescriptor),
}

/// `None` when ψ holds; otherwise the shape of a refuting witness.
fn classify(n: u64, a: &GroupElement, b: &GroupElement) -> Option<WitnessShape> {
    if !b.is_positive() {
        return None;
    }
    let Some(d) = lead_mod_unchecked(a, n) else {
        return Some(WitnessShape::Divisible);
    };
    let l = lead(b).expect("b is positive");
    match l.cmp(&d) {
        Ordering::Greater => None,
        Ordering::Less => Some(WitnessShape::Below(d)),
        Ordering::Equal => match a.construction() {
            Construction::Gamma => Some(WitnessShape::Tied(d)),
            Construction::Lambda => {
                let r0 = least_residue(a, &d, n);
                (coefficient_at(b, &d) >= int(r0)).then_some(WitnessShape::Tied(d))
            }
        },
    }
}

fn least_residue(a: &GroupElement, d: &LeadDescriptor, n: u64) -> i128 {
    let c = coefficient_at(a, d);
    debug_assert!(c.is_integer());
    c.numer().rem_euclid(n as i128)
}

/// A position after every support position of the given elements.
pub(crate) fn fresh_position(elems: &[&GroupElement]) -> Position {
    let block = elems
        .iter()
        .filter_map(|e| e.max_g1_block())
        .max()
        .map_or(0, |b| b + 1);
    Position::g1_square(block, 0)
}

fn build_witness(n: u64, a: &GroupElement, b: &GroupElement, shape: WitnessShape) -> GroupElement {
    let construction = a.construction();
    let d = match shape {
        WitnessShape::Divisible => {
            let eps = GroupElement::unit(construction, fresh_position(&[a, b]));
            return eps.scale(n as i128);
        }
        WitnessShape::Below(d) | WitnessShape::Tied(d) => d,
    };
    // keep a's class after D, replace its value at D
    let tail = a.restrict(|p| *p > d.position);
    let head = match construction {
        Construction::Lambda => {
            let Some(Value::Poly(poly)) = a.get(&d.position) else {
                unreachable!("Lambda lead_mod sits at a square")
            };
            let r0 = least_residue(a, &d, n);
            let mut terms: Vec<(u32, i128)> = vec![(d.slot, r0)];
            terms.extend(poly.terms().iter().copied().filter(|t| t.0 > d.slot));
            if let WitnessShape::Tied(_) = shape {
                if coefficient_at(b, &d) == int(r0) {
                    // push slot j+1 below b's
                    let next = d.slot + 1;
                    let ours = poly.coeff(next);
                    let theirs = coefficient_at(b, &LeadDescriptor::new(d.position, next));
                    let gap = ours - theirs.numer() + 1;
                    let steps = if gap > 0 { (gap + n as i128 - 1) / n as i128 } else { 0 };
                    terms.push((next, -steps * n as i128));
                }
            }
            Value::Poly(SlotPoly::from_terms(terms))
        }
        Construction::Gamma => {
            let p = Construction::gamma_prime(d.position.kind());
            let m = super::divisibility::coordinate_modulus(construction, d.position.kind(), n);
            let Some(Value::Rat(q)) = a.get(&d.position) else {
                unreachable!("Gamma values are rational")
            };
            let r = localization_residue(q, m) as i128;
            let value = match shape {
                WitnessShape::Tied(_) => {
                    // r/s with s ≡ 1 (mod m) large enough to fall below b there
                    let bound = coefficient_at(b, &d);
                    let m = m as i128;
                    let need = (Rational::from_integer(r) / (bound * Rational::from_integer(m)))
                        .ceil()
                        .to_integer();
                    let s = 1 + m * (need.max(0) + 1);
                    debug_assert!(s % p != 0);
                    Rational::new(r, s)
                }
                _ => int(r),
            };
            Value::Rat(value)
        }
    };
    GroupElement::new(construction, [(d.position, head)])
        .expect("witness value stays in its component group")
        .add_unchecked(&tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::rational::rat;

    const L: Construction = Construction::Lambda;
    const G: Construction = Construction::Gamma;

    fn s0(slot: u32, c: i128) -> GroupElement {
        GroupElement::slot_unit(Position::g1_square(0, 0), slot, c)
    }

    #[test]
    fn lower_descriptor_wins() {
        // (s[0], 0) < (s[0], 1)
        assert!(psi(2, &s0(0, 1), &s0(1, 1)).unwrap());
    }

    #[test]
    fn empty_interval_is_vacuous() {
        assert!(psi(2, &s0(0, 1), &s0(0, 1).neg()).unwrap());
        assert!(psi(3, &s0(0, 2), &GroupElement::zero(L)).unwrap());
    }

    #[test]
    fn equal_leads_refuted_by_explicit_witness() {
        let a = s0(0, 1);
        assert!(!psi(2, &a, &a).unwrap());
        // y = a − 2·{G1[5].s[0]: 1}
        let y = a
            .sub(&GroupElement::unit(L, Position::g1_square(5, 0)).scale(2))
            .unwrap();
        assert!(y.is_positive() && y < a && congruent(2, &y, &a).unwrap());
        let w = psi_witness(2, &a, &a).unwrap().unwrap();
        assert!(w.is_positive() && w < a && congruent(2, &w, &a).unwrap());
    }

    #[test]
    fn divisible_part_of_b_does_not_hide_small_witnesses() {
        // b = 2 at s[0] is 2-divisible there, yet y = 1 sits in (0, b)
        let a = s0(0, 1);
        let b = s0(0, 2);
        assert!(!psi(2, &a, &b).unwrap());
        let b = s0(0, 2).add(&s0(1, 1)).unwrap();
        assert!(!psi(2, &a, &b).unwrap());
        // but with modulus 3 and a ≡ 2, the least representative 2 does not fit below 1 + c1
        let a = s0(0, 2);
        let b = s0(0, 1).add(&s0(1, 1)).unwrap();
        assert!(psi(3, &a, &b).unwrap());
        assert!(!psi(3, &a, &s0(0, 2)).unwrap());
    }

    #[test]
    fn divisible_a_never_avoids() {
        let a = GroupElement::unit(L, Position::g2_circle(0));
        let b = s0(3, 1);
        assert!(!psi(2, &a, &b).unwrap());
        let w = psi_witness(2, &a, &b).unwrap().unwrap();
        assert!(w < b && w.is_positive());
    }

    #[test]
    fn gamma_dense_residues() {
        let c = Position::g2_circle(0);
        let a = GroupElement::rational_at(G, c, rat(1, 1)).unwrap();
        let b = GroupElement::rational_at(G, c, rat(1, 5)).unwrap();
        assert!(!psi(2, &a, &b).unwrap());
        let w = psi_witness(2, &a, &b).unwrap().unwrap();
        assert!(w < b && w.is_positive() && congruent(2, &w, &a).unwrap());
        let later = GroupElement::unit(G, Position::g2_square(0));
        assert!(psi(2, &a, &later).unwrap());
        // squares are 2-divisible in Γ
        assert!(!psi(2, &later, &later).unwrap());
    }
}
