use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::coeff::{CoeffField, Coefficient};
use crate::embedding::{apply, EmbeddingId};
use crate::error::{Error, Result};
use crate::oag::{Construction, GroupElement, Position};

/// Finite-support series `Σ a_γ t^γ`, exponents ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HahnSeries {
    construction: Construction,
    field: CoeffField,
    terms: BTreeMap<GroupElement, Coefficient>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    /// `k[[G]]`: every exponent `≥ 0`.
    pub in_val_ring: bool,
    /// `k((Λ₁))`: every exponent supported on `G1`.
    pub in_k_lambda1: bool,
    /// `k((Λ₁)) + k[[Λ₂⊕Λ₁]]`: every exponent has a non-negative `G2` part.
    pub in_a: bool,
}

/// Longest geometric expansion attempted by [`HahnSeries::truncated_inverse`].
pub const MAX_EXPANSION: usize = 256;

impl HahnSeries {
    pub fn zero(construction: Construction, field: CoeffField) -> Self {
        HahnSeries {
            construction,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(construction: Construction, field: CoeffField) -> Self {
        Self::zero(construction, field).with_term(GroupElement::zero(construction), Coefficient::one(field))
    }

    /// `c·t^γ`.
    pub fn monomial(c: Coefficient, exponent: GroupElement) -> Self {
        Self::zero(exponent.construction(), c.field()).with_term(exponent, c)
    }

    pub fn from_terms(
        construction: Construction,
        field: CoeffField,
        terms: impl IntoIterator<Item = (GroupElement, Coefficient)>,
    ) -> Result<Self> {
        let mut out = Self::zero(construction, field);
        for (e, c) in terms {
            construction.check(e.construction())?;
            if c.field() != field {
                return Err(Error::CoefficientMismatch(format!("{} vs {field}", c.field())));
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    fn with_term(mut self, e: GroupElement, c: Coefficient) -> Self {
        self.add_term(e, &c);
        self
    }

    fn add_term(&mut self, e: GroupElement, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(c).expect("fields checked by caller");
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, Coefficient> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &HahnSeries) -> Result<()> {
        self.construction.check(other.construction)?;
        if self.field != other.field {
            return Err(Error::CoefficientMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HahnSeries) -> Result<HahnSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> HahnSeries {
        HahnSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &HahnSeries) -> Result<HahnSeries> {
        self.add(&other.neg())
    }

    /// Convolution over exponent sums.
    pub fn mul(&self, other: &HahnSeries) -> Result<HahnSeries> {
        self.check(other)?;
        let mut out = Self::zero(self.construction, self.field);
        for (e, c) in &self.terms {
            for (f, d) in &other.terms {
                out.add_term(e.add_unchecked(f), &c.mul(d)?);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coefficient) -> Result<HahnSeries> {
        let mut out = Self::zero(self.construction, self.field);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), &d.mul(c)?);
        }
        Ok(out)
    }

    /// Multiplies by `t^γ`.
    pub fn shift(&self, gamma: &GroupElement) -> Result<HahnSeries> {
        self.construction.check(gamma.construction())?;
        Ok(HahnSeries {
            terms: self.terms.iter().map(|(e, c)| (e.add_unchecked(gamma), c.clone())).collect(),
            ..self.clone()
        })
    }

    /// Drops the terms with exponent `> bound`.
    pub fn truncate_above(&self, bound: &GroupElement) -> HahnSeries {
        HahnSeries {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| *e <= bound)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn leading(&self) -> Option<(&GroupElement, &Coefficient)> {
        self.terms.iter().next()
    }

    /// `t`-adic valuation: the least exponent.
    pub fn valuation(&self) -> Result<GroupElement> {
        self.leading().map(|(e, _)| e.clone()).ok_or(Error::ZeroSeries)
    }

    pub fn membership(&self) -> Membership {
        let exps = || self.terms.keys();
        Membership {
            in_val_ring: exps().all(|e| e.signum() >= 0),
            in_k_lambda1: exps().all(GroupElement::is_in_g1),
            in_a: exps().all(|e| e.g2_part().signum() >= 0),
        }
    }

    /// `g` with `v(f·g − 1) > precision`, by factoring out the leading
    /// monomial and expanding `1/(1 + r)` geometrically.
    pub fn truncated_inverse(&self, precision: &GroupElement) -> Result<HahnSeries> {
        self.construction.check(precision.construction())?;
        let (gamma, c) = self.leading().ok_or(Error::ZeroSeries)?;
        let c_inv = c.inv()?;
        let unit = self.shift(&gamma.neg())?.scale(&c_inv)?;
        let one = HahnSeries::one(self.construction, self.field);
        let r = unit.sub(&one)?;
        let tail = if r.is_zero() {
            one
        } else {
            let vr = r.valuation()?;
            let mut steps = None;
            let mut kv = vr.clone();
            for k in 0..MAX_EXPANSION {
                if kv > *precision {
                    steps = Some(k);
                    break;
                }
                kv = kv.add_unchecked(&vr);
            }
            let steps = steps.ok_or_else(|| {
                Error::PrecisionUnreachable(format!("{precision} with correction valuation {vr}"))
            })?;
            let minus_r = r.neg();
            let mut sum = one.clone();
            let mut power = one;
            for _ in 0..steps {
                power = power.mul(&minus_r)?.truncate_above(precision);
                sum = sum.add(&power)?;
            }
            sum
        };
        tail.scale(&c_inv)?.shift(&gamma.neg())
    }

    /// `Σ a_γ t^γ ↦ Σ a_γ t^{e(γ)}`.
    pub fn lift(&self, e: EmbeddingId) -> Result<HahnSeries> {
        let mut out = Self::zero(self.construction, self.field);
        for (g, c) in &self.terms {
            out.add_term(apply(e, g)?, c);
        }
        Ok(out)
    }
}

/// `x = t^γ` with `γ = −(unit at G1[0].s[0])` and `h(x)` under the lift of
/// `f₁`: `x ∈ A` while `h(x) ∉ A`.
pub fn witness_h_a_not_in_a() -> (HahnSeries, HahnSeries) {
    let lambda = Construction::Lambda;
    let gamma = GroupElement::unit(lambda, Position::g1_square(0, 0)).neg();
    let x = HahnSeries::monomial(Coefficient::one(CoeffField::Rational), gamma);
    let hx = x.lift(EmbeddingId::f1(lambda)).expect("Lambda series");
    (x, hx)
}

impl fmt::Display for HahnSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sep, c) = match (i, c.is_negative()) {
                (0, _) => ("", c.clone()),
                (_, true) => (" - ", c.neg()),
                (_, false) => (" + ", c.clone()),
            };
            write!(f, "{sep}{c} * t^{e}")?;
        }
        Ok(())
    }
}
