//! Seeded random generators for the verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{apply, EmbeddingId};
use crate::hahn::{CoeffField, Coefficient, HahnSeries};
use crate::oag::position::{Position, SlotKind};
use crate::oag::rational::Rational;
use crate::oag::value::{SlotPoly, Value};
use crate::oag::{Construction, GroupElement};

/// Independent stream for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Window of positions and magnitudes the generators draw from.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub g2_pairs: u32,
    pub g1_blocks: u32,
    pub squares_per_block: u32,
    pub inner_slots: u32,
    pub max_entries: usize,
    pub coeff: i128,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            g2_pairs: 3,
            g1_blocks: 3,
            squares_per_block: 3,
            inner_slots: 3,
            max_entries: 3,
            coeff: 4,
        }
    }
}

pub fn random_position(rng: &mut impl Rng, shape: &Shape) -> Position {
    let g2 = 2 * shape.g2_pairs;
    let g1 = shape.g1_blocks * (shape.squares_per_block + 1);
    let k = rng.random_range(0..g2 + g1);
    if k < g2 {
        if k % 2 == 0 {
            Position::g2_circle(k / 2)
        } else {
            Position::g2_square(k / 2)
        }
    } else {
        let k = k - g2;
        let (block, slot) = (k / (shape.squares_per_block + 1), k % (shape.squares_per_block + 1));
        if slot == shape.squares_per_block {
            Position::g1_circle(block)
        } else {
            Position::g1_square(block, slot)
        }
    }
}

fn nonzero(rng: &mut impl Rng, bound: i128) -> i128 {
    let m = rng.random_range(1..=bound.max(1));
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A nonzero value valid at `pos`.
pub fn random_value(
    rng: &mut impl Rng,
    construction: Construction,
    pos: Position,
    shape: &Shape,
) -> Value {
    let dens: &[i128] = match (construction, pos.kind()) {
        (Construction::Lambda, SlotKind::Square) => {
            let count = rng.random_range(1..=2);
            let terms = (0..count)
                .map(|_| (rng.random_range(0..shape.inner_slots.max(1)), nonzero(rng, shape.coeff)))
                .collect::<Vec<_>>();
            let p = SlotPoly::from_terms(terms);
            return if p.is_zero() {
                Value::Poly(SlotPoly::monomial(0, 1))
            } else {
                Value::Poly(p)
            };
        }
        (Construction::Lambda, SlotKind::Circle) => &[1, 2, 3],
        (Construction::Gamma, SlotKind::Circle) => &[1, 3, 5],
        (Construction::Gamma, SlotKind::Square) => &[1, 2, 4, 5],
    };
    let d = dens[rng.random_range(0..dens.len())];
    Value::Rat(Rational::new(nonzero(rng, shape.coeff), d))
}

/// Up to `max_entries` entries; zero with small probability.
pub fn random_element(rng: &mut impl Rng, construction: Construction, shape: &Shape) -> GroupElement {
    let count = if rng.random_bool(0.05) {
        0
    } else {
        rng.random_range(1..=shape.max_entries.max(1))
    };
    let entries: Vec<_> = (0..count)
        .map(|_| {
            let pos = random_position(rng, shape);
            (pos, random_value(rng, construction, pos, shape))
        })
        .collect();
    GroupElement::new(construction, entries).expect("generated values fit their slots")
}

pub fn random_nonzero(rng: &mut impl Rng, construction: Construction, shape: &Shape) -> GroupElement {
    loop {
        let a = random_element(rng, construction, shape);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_positive(rng: &mut impl Rng, construction: Construction, shape: &Shape) -> GroupElement {
    random_nonzero(rng, construction, shape).abs()
}

pub fn random_image_element(rng: &mut impl Rng, e: EmbeddingId, shape: &Shape) -> GroupElement {
    let a = random_element(rng, e.construction, shape);
    apply(e, &a).expect("embedding accepts its own construction")
}

pub fn random_coefficient(rng: &mut impl Rng, field: CoeffField) -> Coefficient {
    loop {
        let c = match field {
            CoeffField::Rational => {
                let q = Rational::new(nonzero(rng, 5), rng.random_range(1..=3));
                Coefficient::from_rational(field, &q).expect("rational field")
            }
            CoeffField::Prime(p) => Coefficient::from_int(field, rng.random_range(1..p as i128)),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `max_terms` terms with exponents from [`random_element`].
pub fn random_series(
    rng: &mut impl Rng,
    construction: Construction,
    field: CoeffField,
    shape: &Shape,
    max_terms: usize,
) -> HahnSeries {
    let count = rng.random_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (random_element(rng, construction, shape), random_coefficient(rng, field)))
        .collect();
    HahnSeries::from_terms(construction, field, terms).expect("uniform construction and field")
}

pub fn random_nonzero_series(
    rng: &mut impl Rng,
    construction: Construction,
    field: CoeffField,
    shape: &Shape,
    max_terms: usize,
) -> HahnSeries {
    loop {
        let s = random_series(rng, construction, field, shape, max_terms.max(1));
        if !s.is_zero() {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = Shape::default();
        let a = random_element(&mut case_rng(7, 3), Construction::Lambda, &s);
        let b = random_element(&mut case_rng(7, 3), Construction::Lambda, &s);
        assert_eq!(a, b);
        let distinct = (0..20)
            .map(|i| random_element(&mut case_rng(7, i), Construction::Gamma, &s))
            .collect::<std::collections::HashSet<_>>();
        assert!(distinct.len() > 10);
    }
}
