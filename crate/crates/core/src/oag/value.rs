//! Component values: rationals for circles and Γ squares, and the
//! polynomial groups ℤ ⊕ ⊕ᵢ ℤcᵢ for Λ squares.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use super::rational::{format_rational, Rational};

/// Inner slots a Λ square literal may use unless a larger cap is requested.
pub const DEFAULT_SLOT_CAP: u32 = 64;

/// An element of ℤ ⊕ ⊕ᵢ ℤcᵢ. Slot 0 is the integer part, slot `i ≥ 1` the
/// coefficient of `cᵢ`. Ordered lexicographically with smaller slots more
/// significant, so `n·cᵢ₊₁ < cᵢ` for every `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SlotPoly {
    // sorted by slot, no zero coefficients
    terms: Vec<(u32, i128)>,
}

impl SlotPoly {
    pub fn zero() -> Self {
        SlotPoly::default()
    }

    pub fn monomial(slot: u32, coeff: i128) -> Self {
        let mut p = SlotPoly::zero();
        if coeff != 0 {
            p.terms.push((slot, coeff));
        }
        p
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (u32, i128)>) -> Self {
        let mut terms: Vec<(u32, i128)> = Vec::new();
        let mut raw: Vec<(u32, i128)> = iter.into_iter().collect();
        raw.sort_by_key(|t| t.0);
        for (s, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == s => last.1 += c,
                _ => terms.push((s, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        SlotPoly { terms }
    }

    pub fn terms(&self) -> &[(u32, i128)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, slot: u32) -> i128 {
        self.terms
            .binary_search_by_key(&slot, |t| t.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(u32, i128)> {
        self.terms.first().copied()
    }

    pub fn max_slot(&self) -> Option<u32> {
        self.terms.last().map(|t| t.0)
    }

    pub fn signum(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) => c.signum() as i32,
        }
    }

    pub fn add(&self, other: &SlotPoly) -> SlotPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1 + other.terms[j].1;
                    if c != 0 {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SlotPoly { terms: out }
    }

    pub fn scale(&self, k: i128) -> SlotPoly {
        if k == 0 {
            return SlotPoly::zero();
        }
        SlotPoly {
            terms: self.terms.iter().map(|&(s, c)| (s, c * k)).collect(),
        }
    }

    /// Keeps the slots `≤ slot`.
    pub fn truncate_after(&self, slot: u32) -> SlotPoly {
        SlotPoly {
            terms: self.terms.iter().copied().filter(|t| t.0 <= slot).collect(),
        }
    }

    /// Least slot whose coefficient is not a multiple of `n`.
    pub fn first_nondivisible(&self, n: u64) -> Option<(u32, i128)> {
        let n = n as i128;
        self.terms.iter().copied().find(|t| t.1 % n != 0)
    }

    pub fn lex_cmp(&self, other: &SlotPoly) -> Ordering {
        self.add(&other.scale(-1)).signum().cmp(&0)
    }
}

impl fmt::Display for SlotPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(slot, c)) in self.terms.iter().enumerate() {
            let body = if slot == 0 {
                c.abs().to_string()
            } else if c.abs() == 1 {
                format!("c{slot}")
            } else {
                format!("{}*c{slot}", c.abs())
            };
            match (i, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// The value stored at one position of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Rat(Rational),
    Poly(SlotPoly),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rat(q) => q.is_zero(),
            Value::Poly(p) => p.is_zero(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Value::Rat(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Value::Poly(p) => p.signum(),
        }
    }

    /// Sum of two values of the same kind.
    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(b)),
            _ => unreachable!("values of one position always share a kind"),
        }
    }

    pub fn scale(&self, k: i128) -> Value {
        match self {
            Value::Rat(q) => Value::Rat(q * Rational::from_integer(k)),
            Value::Poly(p) => Value::Poly(p.scale(k)),
        }
    }

    pub fn neg(&self) -> Value {
        self.scale(-1)
    }

    pub fn cmp_value(&self, other: &Value) -> Ordering {
        self.add(&other.neg()).signum().cmp(&0)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rat(q) => write!(f, "{}", format_rational(q)),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_canonical() {
        let p = SlotPoly::from_terms([(1, 2), (0, 3), (1, -2)]);
        assert_eq!(p.terms(), &[(0, 3)]);
        assert_eq!(p.to_string(), "3");
        let q = SlotPoly::from_terms([(0, 2), (1, 4), (3, -1)]);
        assert_eq!(q.to_string(), "2 + 4*c1 - c3");
    }

    #[test]
    fn archimedean_separation() {
        for n in 1..=64i128 {
            for i in 0..63u32 {
                let small = SlotPoly::monomial(i + 1, n);
                let big = SlotPoly::monomial(i, 1);
                assert_eq!(small.lex_cmp(&big), Ordering::Less);
            }
        }
    }

    #[test]
    fn first_nondivisible_slot() {
        let p = SlotPoly::from_terms([(0, 2), (1, 1)]);
        assert_eq!(p.first_nondivisible(2), Some((1, 1)));
        assert_eq!(p.first_nondivisible(3), Some((0, 2)));
        assert_eq!(SlotPoly::monomial(0, 6).first_nondivisible(3), None);
    }
}
