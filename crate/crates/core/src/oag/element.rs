use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::position::{Position, SlotKind};
use super::rational::{in_localization, int, Rational};
use super::value::{SlotPoly, Value};
use crate::error::{Error, Result};

/// Which of the two group constructions an element lives in.
///
/// `Gamma`: squares ℤ₍₃₎, circles ℤ₍₂₎. `Lambda`: squares ℤ ⊕ ⊕ᵢ ℤcᵢ,
/// circles ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Gamma,
    Lambda,
}

impl Construction {
    pub fn check(self, other: Construction) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ConstructionMismatch {
                left: self,
                right: other,
            })
        }
    }

    /// The prime a Γ component at this kind of slot is localized at.
    pub fn gamma_prime(kind: SlotKind) -> i128 {
        match kind {
            SlotKind::Circle => 2,
            SlotKind::Square => 3,
        }
    }

    pub fn unit_value(self, pos: Position) -> Value {
        match (self, pos.kind()) {
            (Construction::Lambda, SlotKind::Square) => Value::Poly(SlotPoly::monomial(0, 1)),
            _ => Value::Rat(int(1)),
        }
    }

    pub fn validate(self, pos: Position, value: &Value) -> Result<()> {
        match (self, pos.kind(), value) {
            (Construction::Lambda, SlotKind::Square, Value::Poly(_)) => Ok(()),
            (Construction::Lambda, SlotKind::Circle, Value::Rat(_)) => Ok(()),
            (Construction::Gamma, kind, Value::Rat(q)) => {
                let p = Construction::gamma_prime(kind);
                if in_localization(q, p) {
                    Ok(())
                } else {
                    Err(Error::InvalidValue(format!(
                        "{q} at {pos} is not in Z_({p})"
                    )))
                }
            }
            (Construction::Lambda, SlotKind::Square, Value::Rat(_)) => Err(Error::InvalidValue(
                format!("Lambda square {pos} takes integer polynomial coefficients"),
            )),
            _ => Err(Error::InvalidValue(format!(
                "{self} value kind does not fit {pos}"
            ))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Gamma => "gamma",
            Construction::Lambda => "lambda",
        })
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" => Ok(Construction::Gamma),
            "lambda" => Ok(Construction::Lambda),
            other => Err(Error::InvalidValue(format!("unknown construction `{other}`"))),
        }
    }
}

/// A finitely supported element of Γ₂⊕Γ₁ or Λ₂⊕Λ₁.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    construction: Construction,
    entries: BTreeMap<Position, Value>,
}

impl GroupElement {
    pub fn zero(construction: Construction) -> Self {
        GroupElement {
            construction,
            entries: BTreeMap::new(),
        }
    }

    /// Builds an element, checking each value against its slot. Zero values
    /// are dropped; repeated positions are summed.
    pub fn new(
        construction: Construction,
        entries: impl IntoIterator<Item = (Position, Value)>,
    ) -> Result<Self> {
        let mut out = GroupElement::zero(construction);
        for (pos, value) in entries {
            construction.validate(pos, &value)?;
            out.add_at(pos, &value);
        }
        Ok(out)
    }

    /// Unit (value 1, or the integer 1 in slot 0) at `pos`.
    pub fn unit(construction: Construction, pos: Position) -> Self {
        Self::single(construction, pos, construction.unit_value(pos))
    }

    /// `coeff·c_slot` at a Λ square (slot 0 is the integer part).
    pub fn slot_unit(pos: Position, slot: u32, coeff: i128) -> Self {
        debug_assert!(pos.is_square());
        Self::single(
            Construction::Lambda,
            pos,
            Value::Poly(SlotPoly::monomial(slot, coeff)),
        )
    }

    /// Rational value at a circle (or Γ square).
    pub fn rational_at(construction: Construction, pos: Position, q: Rational) -> Result<Self> {
        Self::new(construction, [(pos, Value::Rat(q))])
    }

    fn single(construction: Construction, pos: Position, value: Value) -> Self {
        let mut out = GroupElement::zero(construction);
        out.add_at(pos, &value);
        out
    }

    fn add_at(&mut self, pos: Position, value: &Value) {
        if value.is_zero() {
            return;
        }
        match self.entries.get_mut(&pos) {
            Some(v) => {
                let sum = v.add(value);
                if sum.is_zero() {
                    self.entries.remove(&pos);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.entries.insert(pos, value.clone());
            }
        }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn entries(&self) -> &BTreeMap<Position, Value> {
        &self.entries
    }

    pub fn get(&self, pos: &Position) -> Option<&Value> {
        self.entries.get(pos)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Position> {
        self.entries.keys()
    }

    /// Leading (least) position and its value.
    pub fn leading(&self) -> Option<(&Position, &Value)> {
        self.entries.iter().next()
    }

    pub fn signum(&self) -> i32 {
        self.leading().map_or(0, |(_, v)| v.signum())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.construction.check(other.construction)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.construction.check(other.construction)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub(crate) fn add_unchecked(&self, other: &GroupElement) -> GroupElement {
        let (mut big, small) = if self.entries.len() >= other.entries.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (pos, v) in &small.entries {
            big.add_at(*pos, v);
        }
        big
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i128) -> GroupElement {
        if k == 0 {
            return GroupElement::zero(self.construction);
        }
        GroupElement {
            construction: self.construction,
            entries: self.entries.iter().map(|(p, v)| (*p, v.scale(k))).collect(),
        }
    }

    pub fn abs(&self) -> GroupElement {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Group order. Fails when the constructions differ.
    pub fn try_cmp(&self, other: &GroupElement) -> Result<Ordering> {
        self.construction.check(other.construction)?;
        Ok(self.group_cmp(other))
    }

    fn group_cmp(&self, other: &GroupElement) -> Ordering {
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, v)), None) => return v.signum().cmp(&0),
                (None, Some((_, w))) => return 0.cmp(&w.signum()),
                (Some((p, v)), Some((q, w))) => match p.cmp(q) {
                    Ordering::Less => return v.signum().cmp(&0),
                    Ordering::Greater => return 0.cmp(&w.signum()),
                    Ordering::Equal => {
                        let c = v.cmp_value(w);
                        if c != Ordering::Equal {
                            return c;
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }

    /// Restriction to the positions satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&Position) -> bool) -> GroupElement {
        GroupElement {
            construction: self.construction,
            entries: self
                .entries
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, v)| (*p, v.clone()))
                .collect(),
        }
    }

    /// The `G2` coordinates of the element.
    pub fn g2_part(&self) -> GroupElement {
        self.restrict(|p| !p.in_g1())
    }

    /// Ground truth for `Λ₁`/`Γ₁` membership: support inside the `G1` blocks.
    pub fn is_in_g1(&self) -> bool {
        self.entries.keys().all(Position::in_g1)
    }

    /// Largest `G1` block index in the support.
    pub fn max_g1_block(&self) -> Option<u32> {
        self.entries
            .keys()
            .filter_map(|p| match p {
                Position::G1 { block, .. } => Some(*block),
                _ => None,
            })
            .max()
    }

    /// Rebuilds the element with each position relabelled by `map`.
    pub(crate) fn map_positions(&self, map: impl Fn(Position) -> Position) -> GroupElement {
        GroupElement {
            construction: self.construction,
            entries: self.entries.iter().map(|(p, v)| (map(*p), v.clone())).collect(),
        }
    }
}

impl Ord for GroupElement {
    /// Constructions first, then the group order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.construction
            .cmp(&other.construction)
            .then_with(|| self.group_cmp(other))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        f.write_str("{")?;
        for (i, (p, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::rational::rat;

    const L: Construction = Construction::Lambda;

    fn sq(slots: &[(u32, i128)]) -> GroupElement {
        GroupElement::new(
            L,
            [(
                Position::g1_square(0, 0),
                Value::Poly(SlotPoly::from_terms(slots.iter().copied())),
            )],
        )
        .unwrap()
    }

    #[test]
    fn c1_beats_multiples_of_c2() {
        let a = GroupElement::slot_unit(Position::g1_square(0, 0), 1, 1);
        let b = GroupElement::slot_unit(Position::g1_square(0, 0), 2, 2);
        assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Greater);
    }

    #[test]
    fn g2_dominates_g1() {
        let a = GroupElement::unit(L, Position::g2_circle(0));
        let b = GroupElement::slot_unit(Position::g1_square(0, 0), 0, 1_000_000);
        assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Greater);
        let z = GroupElement::zero(L);
        assert_eq!(z.try_cmp(&z).unwrap(), Ordering::Equal);
    }

    #[test]
    fn addition_examples() {
        let a = sq(&[(0, 3), (2, -1)]);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let s = sq(&[(0, 1)]).add(&sq(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(s, sq(&[(0, 2), (1, 1)]));
        let h = GroupElement::rational_at(L, Position::g2_circle(0), rat(1, 2)).unwrap();
        assert_eq!(
            h.add(&h).unwrap(),
            GroupElement::unit(L, Position::g2_circle(0))
        );
    }

    #[test]
    fn mixing_constructions_is_rejected() {
        let a = GroupElement::unit(Construction::Gamma, Position::g2_circle(0));
        let b = GroupElement::unit(L, Position::g2_circle(0));
        assert!(matches!(
            a.add(&b),
            Err(Error::ConstructionMismatch { .. })
        ));
        assert!(a.try_cmp(&b).is_err());
    }

    #[test]
    fn gamma_localizations_enforced() {
        let g = Construction::Gamma;
        assert!(GroupElement::rational_at(g, Position::g2_circle(0), rat(1, 3)).is_ok());
        assert!(GroupElement::rational_at(g, Position::g2_circle(0), rat(1, 2)).is_err());
        assert!(GroupElement::rational_at(g, Position::g2_square(0), rat(1, 2)).is_ok());
        assert!(GroupElement::rational_at(g, Position::g2_square(0), rat(1, 3)).is_err());
        assert!(GroupElement::rational_at(L, Position::g2_square(0), rat(1, 1)).is_err());
    }
}
