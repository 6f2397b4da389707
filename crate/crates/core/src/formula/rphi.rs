//! Exact treatment of `R_φ` atoms.
//!
//! Modulo `N = lcm` of the moduli, a congruence system splits into one
//! finite problem per coordinate: an inner slot of a Λ square (ring ℤ/N),
//! or a Γ position (ring ℤ/p^k, the `p`-part of `N`). A variable bounded by
//! `0 < z < x` must vanish at coordinates before `lead(x)`, takes the
//! residues of `0..=x_D` at `D = lead(x)` in Λ (every residue in Γ), and is
//! free afterwards. Only coordinates where a parameter is nonzero can
//! obstruct a solution.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use super::ast::{Atom, Formula, RPhiSpec, Term};
use super::eval::Env;
use crate::embedding::straddle_at;
use crate::error::{Error, Result};
use crate::oag::divisibility::coordinate_modulus;
use crate::oag::position::SlotKind;
use crate::oag::rational::{localization_residue, Rational};
use crate::oag::{lead, Construction, GroupElement, LeadDescriptor, Value};

/// A congruence `Σ aᵥ·v + C ≡ 0 (mod n)` over the bound and inner variables.
struct Linear {
    modulus: u64,
    coeffs: Vec<i128>,
    constant: GroupElement,
}

struct System {
    /// Bound group of each variable; `None` for inner variables.
    group_of: Vec<Option<usize>>,
    rows: Vec<Linear>,
    lcm: u64,
}

fn build(construction: Construction, spec: &RPhiSpec, env: &Env) -> Result<System> {
    let mut index: BTreeMap<&String, usize> = BTreeMap::new();
    let mut group_of = Vec::new();
    for (g, group) in spec.groups.iter().enumerate() {
        for z in &group.vars {
            index.insert(z, group_of.len());
            group_of.push(Some(g));
        }
    }
    for u in &spec.inner {
        index.insert(u, group_of.len());
        group_of.push(None);
    }
    let mut rows = Vec::new();
    let mut lcm = 1u64;
    for c in &spec.system {
        crate::oag::divisibility::check_modulus(c.modulus)?;
        lcm = lcm.lcm(&c.modulus);
        let mut coeffs = vec![0i128; group_of.len()];
        let mut rest = Term::zero();
        for (side, sign) in [(&c.rhs, 1), (&c.lhs, -1)] {
            for (v, k) in &side.coeffs {
                match index.get(v) {
                    Some(&i) => coeffs[i] += sign * k,
                    None => rest = rest.plus_var(v, sign * k),
                }
            }
            if let Some(k) = &side.constant {
                rest = rest.plus_constant(&k.scale(sign));
            }
        }
        rows.push(Linear {
            modulus: c.modulus,
            coeffs,
            constant: rest.eval(construction, env)?,
        });
    }
    Ok(System {
        group_of,
        rows,
        lcm,
    })
}

/// Coordinates (square inner slots, or whole positions) carrying a nonzero
/// value of `e`.
fn coordinates(e: &GroupElement) -> Vec<LeadDescriptor> {
    let mut out = Vec::new();
    for (pos, v) in e.entries() {
        match v {
            Value::Poly(p) => out.extend(p.terms().iter().map(|t| LeadDescriptor::new(*pos, t.0))),
            Value::Rat(_) => out.push(LeadDescriptor::at(*pos)),
        }
    }
    out
}

fn residue(construction: Construction, e: &GroupElement, k: &LeadDescriptor, m: u64) -> u64 {
    match e.get(&k.position) {
        None => 0,
        Some(Value::Poly(p)) => p.coeff(k.slot).rem_euclid(m as i128) as u64,
        Some(Value::Rat(q)) => {
            debug_assert_eq!(construction, Construction::Gamma);
            localization_residue(q, m)
        }
    }
}

fn ring_size(construction: Construction, k: &LeadDescriptor, lcm: u64) -> u64 {
    coordinate_modulus(construction, k.position.kind(), lcm)
}

/// Residues allowed for a variable bounded by `x` at coordinate `k`.
fn allowed(construction: Construction, x: &GroupElement, k: &LeadDescriptor, m: u64) -> Vec<u64> {
    let d = lead(x).expect("bounds are positive here");
    match k.cmp(&d) {
        std::cmp::Ordering::Less => vec![0],
        std::cmp::Ordering::Greater => (0..m).collect(),
        std::cmp::Ordering::Equal => match construction {
            Construction::Gamma => (0..m).collect(),
            Construction::Lambda => {
                let top = crate::oag::coefficient_at(x, &d).to_integer();
                (0..m).filter(|r| (*r as i128) <= top).collect()
            }
        },
    }
}

/// Whether residues from `choices[v]` satisfy every row at one coordinate.
fn solvable(sys: &System, consts: &[u64], choices: &[Vec<u64>], m: u64) -> bool {
    let moduli: Vec<u64> = sys.rows.iter().map(|r| r.modulus.gcd(&m)).collect();
    let active: Vec<usize> = (0..choices.len())
        .filter(|&v| sys.rows.iter().zip(&moduli).any(|(r, g)| *g > 1 && r.coeffs[v] % *g as i128 != 0))
        .collect();
    let mut assign = vec![0u64; choices.len()];
    fn dfs(
        sys: &System,
        consts: &[u64],
        choices: &[Vec<u64>],
        moduli: &[u64],
        active: &[usize],
        depth: usize,
        assign: &mut [u64],
    ) -> bool {
        if depth == active.len() {
            return sys.rows.iter().zip(moduli).zip(consts).all(|((row, &g), &c)| {
                if g == 1 {
                    return true;
                }
                let g = g as i128;
                let s: i128 = row
                    .coeffs
                    .iter()
                    .zip(assign.iter())
                    .map(|(a, r)| a.rem_euclid(g) * (*r as i128 % g))
                    .sum::<i128>()
                    + c as i128;
                s.rem_euclid(g) == 0
            });
        }
        let v = active[depth];
        for &r in &choices[v] {
            assign[v] = r;
            if dfs(sys, consts, choices, moduli, active, depth + 1, assign) {
                return true;
            }
        }
        false
    }
    dfs(sys, consts, choices, &moduli, &active, 0, &mut assign)
}

fn relevant(construction: Construction, sys: &System) -> Vec<(LeadDescriptor, u64)> {
    let mut coords: BTreeSet<LeadDescriptor> = BTreeSet::new();
    for row in &sys.rows {
        coords.extend(coordinates(&row.constant));
    }
    coords
        .into_iter()
        .map(|k| (k, ring_size(construction, &k, sys.lcm)))
        .filter(|(_, m)| *m > 1)
        .collect()
}

/// Exact truth value of `R_φ` under `env`.
pub fn decide(construction: Construction, spec: &RPhiSpec, env: &Env) -> Result<bool> {
    let bounds: Vec<GroupElement> = spec
        .groups
        .iter()
        .map(|g| g.bound.eval(construction, env))
        .collect::<Result<_>>()?;
    if bounds.iter().any(|x| !x.is_positive()) {
        return Ok(false);
    }
    let sys = build(construction, spec, env)?;
    for (k, m) in relevant(construction, &sys) {
        let consts: Vec<u64> = sys.rows.iter().map(|r| residue(construction, &r.constant, &k, m)).collect();
        let choices: Vec<Vec<u64>> = sys
            .group_of
            .iter()
            .map(|g| match g {
                Some(i) => allowed(construction, &bounds[*i], &k, m),
                None => (0..m).collect(),
            })
            .collect();
        if !solvable(&sys, &consts, &choices, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest level a bound can reach at a coordinate: residues `0..=level`
/// are allowed in Λ, and level 1 means every residue in Γ.
fn top_level(construction: Construction, m: u64) -> u64 {
    match construction {
        Construction::Lambda => m - 1,
        Construction::Gamma => 1,
    }
}

fn level_choices(construction: Construction, level: u64, m: u64) -> Vec<u64> {
    match construction {
        Construction::Lambda => (0..=level).collect(),
        Construction::Gamma if level == 0 => vec![0],
        Construction::Gamma => (0..m).collect(),
    }
}

/// `[level(t) ≥ r]` at coordinate `k`, assuming `t > 0`.
fn level_at_least(construction: Construction, t: &Term, k: &LeadDescriptor, r: u64, m: u64) -> Formula {
    if r == 0 {
        return Formula::True;
    }
    if r > top_level(construction, m) {
        return Formula::False;
    }
    let probe = match construction {
        Construction::Lambda => GroupElement::slot_unit(k.position, k.slot, r as i128),
        Construction::Gamma => GroupElement::unit(construction, k.position),
    };
    Formula::not(Formula::Atom(Atom::Psi(m, Term::constant(probe), t.clone())))
}

/// A quantifier-free formula in the bound terms, equivalent to `¬R_φ`
/// once the other free variables take their values from `env`.
///
/// Shape: some bound is non-positive, or at some parameter coordinate the
/// bounds sit at a level combination for which the coordinate system has no
/// solution. Levels are read off with `psi` atoms against unit probes.
pub fn neg_rphi_normalize(construction: Construction, spec: &RPhiSpec, env: &Env) -> Result<Formula> {
    let sys = build(construction, spec, env)?;
    let mut cases: Vec<Formula> = spec
        .groups
        .iter()
        .map(|g| Formula::not(Formula::Atom(Atom::Lt(Term::zero(), g.bound.clone()))))
        .collect();
    if spec.groups.is_empty() {
        let trivially = relevant(construction, &sys).into_iter().all(|(k, m)| {
            let consts: Vec<u64> = sys.rows.iter().map(|r| residue(construction, &r.constant, &k, m)).collect();
            let choices = vec![(0..m).collect(); sys.group_of.len()];
            solvable(&sys, &consts, &choices, m)
        });
        return Ok(if trivially { Formula::False } else { Formula::True });
    }
    for (k, m) in relevant(construction, &sys) {
        let consts: Vec<u64> = sys.rows.iter().map(|r| residue(construction, &r.constant, &k, m)).collect();
        let top = top_level(construction, m);
        let g = spec.groups.len();
        let mut profile = vec![0u64; g];
        loop {
            let choices: Vec<Vec<u64>> = sys
                .group_of
                .iter()
                .map(|gi| match gi {
                    Some(i) => level_choices(construction, profile[*i], m),
                    None => (0..m).collect(),
                })
                .collect();
            if !solvable(&sys, &consts, &choices, m) {
                cases.push(Formula::and_all(spec.groups.iter().zip(&profile).map(|(grp, &s)| {
                    Formula::and(
                        level_at_least(construction, &grp.bound, &k, s, m),
                        Formula::not(level_at_least(construction, &grp.bound, &k, s + 1, m)),
                    )
                })));
            }
            // next profile in odometer order
            let mut i = 0;
            while i < g && profile[i] == top {
                profile[i] = 0;
                i += 1;
            }
            if i == g {
                break;
            }
            profile[i] += 1;
        }
    }
    Ok(simplify(Formula::or_all(cases)))
}

fn simplify(f: Formula) -> Formula {
    match f {
        Formula::Not(g) => match simplify(*g) {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(h) => *h,
            h => Formula::not(h),
        },
        Formula::And(a, b) => match (simplify(*a), simplify(*b)) {
            (Formula::False, _) | (_, Formula::False) => Formula::False,
            (a, b) => Formula::and(a, b),
        },
        Formula::Or(a, b) => match (simplify(*a), simplify(*b)) {
            (Formula::True, _) | (_, Formula::True) => Formula::True,
            (a, b) => Formula::or(a, b),
        },
        other => other,
    }
}

/// When `¬R_φ` holds under `env`, a conjunction of interval constraints
/// `c < t < d` on the bound terms (or a single `¬(0 < t)`) that forces
/// `¬R_φ` everywhere it holds. `None` when `R_φ` holds.
pub fn neg_rphi_localize(construction: Construction, spec: &RPhiSpec, env: &Env) -> Result<Option<Formula>> {
    if decide(construction, spec, env)? {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for g in &spec.groups {
        let x = g.bound.eval(construction, env)?;
        if !x.is_positive() {
            return Ok(Some(Formula::not(Formula::Atom(Atom::Lt(Term::zero(), g.bound.clone())))));
        }
        let d = lead(&x).expect("positive");
        let (lo, hi) = match (construction, d.position.kind()) {
            (Construction::Lambda, SlotKind::Square) => {
                let (lo, hi) = straddle_at(&x, d);
                let next = match x.get(&d.position) {
                    Some(Value::Poly(p)) => p.coeff(d.slot + 1).abs(),
                    _ => 0,
                };
                let spread = GroupElement::slot_unit(d.position, d.slot + 1, 1).scale(next);
                (lo.sub(&spread)?, hi.add(&spread)?)
            }
            _ => {
                let Some(Value::Rat(q)) = x.get(&d.position) else {
                    return Err(Error::InvalidValue(format!("unexpected value at {}", d.position)));
                };
                let at = |q: Rational| GroupElement::rational_at(construction, d.position, q);
                (at(q / Rational::from_integer(5))?, at(q * Rational::from_integer(5))?)
            }
        };
        parts.push(Formula::Atom(Atom::Lt(Term::constant(lo), g.bound.clone())));
        parts.push(Formula::Atom(Atom::Lt(g.bound.clone(), Term::constant(hi))));
    }
    Ok(Some(Formula::and_all(parts)))
}

