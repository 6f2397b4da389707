//! Finite search fragments: small integer combinations of parameters and a
//! generator pool.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::element::{Construction, GroupElement};
use super::position::SlotKind;
use super::psi::fresh_position;
use super::rational::Rational;
use super::value::Value;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentConfig {
    /// Largest absolute coefficient `K` per generator.
    pub coeff_bound: u32,
    pub generator_pool: Vec<GroupElement>,
    pub size_cap: usize,
    /// Carried for reproducibility of the sampling that produced the pool.
    pub seed: u64,
}

impl FragmentConfig {
    pub fn new(coeff_bound: u32) -> Self {
        FragmentConfig {
            coeff_bound,
            generator_pool: Vec::new(),
            size_cap: 4096,
            seed: 0,
        }
    }

    pub fn with_pool(mut self, pool: Vec<GroupElement>) -> Self {
        self.generator_pool = pool;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for FragmentConfig {
    fn default() -> Self {
        FragmentConfig::new(2)
    }
}

/// Generators that tend to contain search witnesses near `params`: units
/// at each support position, at its neighbours and at the next circle,
/// the next inner slot of each Λ square coefficient, a fraction of each
/// rational entry, and a unit at a fresh position after everything.
pub fn probe_pool(construction: Construction, params: &[GroupElement]) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = Vec::new();
    let mut push = |g: GroupElement| {
        if !g.is_zero() && !out.contains(&g) {
            out.push(g);
        }
    };
    for p in params {
        for (pos, v) in p.entries() {
            push(GroupElement::unit(construction, *pos));
            match v {
                Value::Poly(poly) => {
                    for &(slot, _) in poly.terms() {
                        push(GroupElement::slot_unit(*pos, slot + 1, 1));
                    }
                }
                Value::Rat(q) => {
                    let k = match (construction, pos.kind()) {
                        (Construction::Gamma, SlotKind::Circle) => 3,
                        _ => 2,
                    };
                    if let Ok(g) = GroupElement::rational_at(construction, *pos, q / Rational::from_integer(k)) {
                        push(g);
                    }
                }
            }
            push(GroupElement::unit(construction, pos.successor()));
            push(GroupElement::unit(construction, pos.next_circle()));
            if let Some(prev) = pos.predecessor() {
                push(GroupElement::unit(construction, prev));
            }
        }
    }
    let refs: Vec<&GroupElement> = params.iter().collect();
    push(GroupElement::unit(construction, fresh_position(&refs)));
    out
}

/// All `Σ kᵢgᵢ` with `|kᵢ| ≤ K` over `params ++ pool`, in order of
/// increasing `Σ|kᵢ|` and then by coefficient vector (earlier generators
/// first, positive before negative, zero last), deduplicated and cut at
/// `size_cap`. Starts with `0` followed by the parameters.
pub fn fragment(
    construction: Construction,
    params: &[GroupElement],
    cfg: &FragmentConfig,
) -> Result<Vec<GroupElement>> {
    let mut gens: Vec<GroupElement> = Vec::new();
    for g in params.iter().chain(&cfg.generator_pool) {
        construction.check(g.construction())?;
        if !g.is_zero() && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    let cap = cfg.size_cap.max(1 + params.len());
    let mut out = vec![GroupElement::zero(construction)];
    let mut seen: HashSet<GroupElement> = out.iter().cloned().collect();
    for p in params {
        if seen.insert(p.clone()) {
            out.push(p.clone());
        }
    }
    let k = cfg.coeff_bound as i128;
    let max_norm = k * gens.len() as i128;
    let mut coeffs = vec![0i128; gens.len()];
    for norm in 1..=max_norm {
        if out.len() >= cap {
            break;
        }
        let mut emit = |c: &[i128]| {
            let mut e = GroupElement::zero(construction);
            for (g, &ci) in gens.iter().zip(c) {
                if ci != 0 {
                    e = e.add_unchecked(&g.scale(ci));
                }
            }
            if seen.insert(e.clone()) {
                out.push(e);
            }
            out.len() < cap
        };
        walk(&mut coeffs, 0, norm, k, &mut emit);
    }
    Ok(out)
}

/// Fills `coeffs[i..]` with vectors of exact norm `rest`; returns false to stop.
fn walk(
    coeffs: &mut [i128],
    i: usize,
    rest: i128,
    k: i128,
    emit: &mut impl FnMut(&[i128]) -> bool,
) -> bool {
    if i == coeffs.len() {
        return rest != 0 || emit(coeffs);
    }
    let remaining_slots = (coeffs.len() - i - 1) as i128;
    for m in 1..=k.min(rest) {
        for c in [m, -m] {
            if rest - m <= remaining_slots * k {
                coeffs[i] = c;
                if !walk(coeffs, i + 1, rest - m, k, emit) {
                    coeffs[i] = 0;
                    return false;
                }
            }
        }
    }
    coeffs[i] = 0;
    if rest <= remaining_slots * k && !walk(coeffs, i + 1, rest, k, emit) {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oag::position::Position;

    const L: Construction = Construction::Lambda;

    #[test]
    fn empty_params_give_zero() {
        let f = fragment(L, &[], &FragmentConfig::new(3)).unwrap();
        assert_eq!(f, vec![GroupElement::zero(L)]);
    }

    #[test]
    fn single_param_order() {
        let a = GroupElement::unit(L, Position::g2_square(0));
        let f = fragment(L, &[a.clone()], &FragmentConfig::new(1)).unwrap();
        assert_eq!(f, vec![GroupElement::zero(L), a.clone(), a.neg()]);
    }

    #[test]
    fn contains_mixed_combination() {
        let a = GroupElement::unit(L, Position::g2_square(0));
        let b = GroupElement::unit(L, Position::g1_circle(0));
        let g = GroupElement::unit(L, Position::g2_circle(4));
        let cfg = FragmentConfig::new(2).with_pool(vec![g.clone()]);
        let f = fragment(L, &[a.clone(), b.clone()], &cfg).unwrap();
        let want = a.scale(2).sub(&b).unwrap().add(&g).unwrap();
        assert!(f.contains(&want));
        assert_eq!(f.len(), 125);
    }

    #[test]
    fn cap_and_determinism() {
        let pool: Vec<_> = (0..6).map(|m| GroupElement::unit(L, Position::g2_square(m))).collect();
        let cfg = FragmentConfig::new(3).with_pool(pool).with_cap(500);
        let f = fragment(L, &[], &cfg).unwrap();
        assert_eq!(f.len(), 500);
        assert_eq!(f, fragment(L, &[], &cfg).unwrap());
    }
}
