use std::cmp::Ordering;

use rand::Rng;

use super::{run_cases, Case, SuiteOptions};
use crate::error::Result;
use crate::oag::divisibility::lead;
use crate::oag::position::SlotKind;
use crate::oag::value::Value;
use crate::oag::{
    congruent, fragment, hprime_descriptor, in_hprime, is_in_lambda1, lambda1_by_formula, probe_pool, psi,
    psi_witness, Construction, FragmentConfig, GroupElement, Position,
};
use crate::report::{Outcome, SuiteReport};
use crate::sample::{random_element, random_positive, Shape};

const SEARCH_SHAPE: Shape = Shape {
    g2_pairs: 2,
    g1_blocks: 2,
    squares_per_block: 2,
    inner_slots: 3,
    max_entries: 2,
    coeff: 3,
};

fn lit(a: &GroupElement) -> String {
    a.to_string()
}

fn lt(a: &GroupElement, b: &GroupElement) -> bool {
    a.cmp(b) == Ordering::Less
}

/// Probe pool with the freshest (smallest) unit moved to the front.
fn search_pool(c: Construction, params: &[GroupElement], extra: Vec<GroupElement>) -> Vec<GroupElement> {
    let mut pool = probe_pool(c, params);
    if let Some(fresh) = pool.pop() {
        pool.insert(0, fresh);
    }
    for (i, g) in extra.into_iter().enumerate() {
        if !g.is_zero() && !pool.contains(&g) {
            pool.insert(i, g);
        }
    }
    pool
}

pub(super) fn psi_vs_search(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let k = opts.bound_or(3);
    let cases = run_cases(opts, 0, opts.samples_or(2000), |_, rng| {
        let n = if rng.random_bool(0.5) { 2 } else { 3 };
        let a = random_element(rng, c, &SEARCH_SHAPE);
        let b = random_element(rng, c, &SEARCH_SHAPE);
        let inputs = vec![format!("n={n}"), lit(&a), lit(&b)];
        let closed = psi(n, &a, &b)?;
        let zero = GroupElement::zero(c);
        let refutes = |y: &GroupElement| -> Result<bool> { Ok(lt(&zero, y) && lt(y, &b) && congruent(n, y, &a)?) };
        let mut notes = Vec::new();
        if c == Construction::Gamma && a.is_positive() && b.is_positive() && (closed || psi(5 - n, &a, &b)?) {
            let (ia, ib) = (lead(&a).map(|d| d.position), lead(&b).map(|d| d.position));
            if ia >= ib {
                return Ok(Case::new(inputs, Outcome::Fail, "psi holds but I(a) < I(b) fails"));
            }
            notes.push("I(a) < I(b)");
        }
        if !closed {
            if let Some(y) = psi_witness(n, &a, &b)? {
                if refutes(&y)? {
                    return Ok(Case::new(inputs, Outcome::Pass, format!("false, certified by y = {y}")));
                }
                notes.push("constructed certificate invalid");
            }
        }
        let cfg = FragmentConfig::new(k).with_pool(search_pool(c, &[a.clone(), b.clone()], Vec::new()));
        let domain = fragment(c, &[a.clone(), b.clone()], &cfg)?;
        let mut found = None;
        for y in &domain {
            if refutes(y)? {
                found = Some(y.clone());
                break;
            }
        }
        let notes = notes.join("; ");
        Ok(match (closed, found) {
            (true, Some(y)) => Case::new(inputs, Outcome::Fail, format!("closed form true, search found y = {y}")),
            (false, Some(y)) => Case::new(inputs, Outcome::Pass, format!("false, search found y = {y} {notes}")),
            (true, None) => Case::new(
                inputs,
                Outcome::Pass,
                format!("true, no counterexample among {} elements {notes}", domain.len()),
            ),
            (false, None) => Case::new(
                inputs,
                Outcome::Unknown,
                format!("closed form false, search exhausted {} elements {notes}", domain.len()),
            ),
        })
    });
    Ok(SuiteReport::new("psi-vs-search", c, opts.seed, cases))
}

/// Elements just below `a` that tend to witness `b ∈ H′_a`.
fn union_candidates(a: &GroupElement) -> Vec<GroupElement> {
    let c = a.construction();
    let Some(d) = lead(a) else { return Vec::new() };
    let mut out = vec![GroupElement::unit(c, d.position.successor())];
    match a.get(&d.position) {
        Some(Value::Poly(p)) => {
            let next = p.coeff(d.slot + 1).abs() + 1;
            out.push(
                GroupElement::slot_unit(d.position, d.slot, 1)
                    .add_unchecked(&GroupElement::slot_unit(d.position, d.slot + 1, -next)),
            );
            out.push(GroupElement::slot_unit(d.position, d.slot + 1, 1));
        }
        Some(Value::Rat(q)) => {
            for k in [2i128, 3, 4, 9] {
                if let Ok(g) = GroupElement::rational_at(c, d.position, q / k) {
                    out.push(g);
                }
            }
            if d.position.kind() == SlotKind::Circle {
                out.push(GroupElement::unit(c, d.position.next_square()));
            }
        }
        None => {}
    }
    out
}

pub(super) fn hprime_descriptor_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let k = opts.bound_or(2);
    let cases = run_cases(opts, 0, opts.samples_or(500), |_, rng| {
        let a = random_positive(rng, c, &SEARCH_SHAPE);
        let b = random_element(rng, c, &SEARCH_SHAPE);
        let inputs = vec![lit(&a), lit(&b)];
        let desc = in_hprime(&a, &b)?;
        let zero = GroupElement::zero(c);
        let pool = search_pool(c, &[a.clone(), b.clone()], union_candidates(&a));
        let cfg = FragmentConfig::new(k).with_pool(pool);
        let domain = fragment(c, &[a.clone(), b.clone()], &cfg)?;
        let mut found = None;
        for t in &domain {
            if lt(&zero, t) && lt(t, &a) && psi(2, t, &b)? {
                found = Some(t.clone());
                break;
            }
        }
        let shown = hprime_descriptor(&a);
        Ok(match (desc, found) {
            (true, Some(t)) => Case::new(inputs, Outcome::Pass, format!("member via t' = {t}, {shown}")),
            (false, Some(t)) => Case::new(
                inputs,
                Outcome::Fail,
                format!("descriptor {shown} excludes b, but t' = {t} witnesses membership"),
            ),
            (false, None) => Case::new(inputs, Outcome::Pass, format!("not a member, {shown}")),
            (true, None) => Case::new(
                inputs,
                Outcome::Unknown,
                format!("descriptor {shown} includes b, no t' among {} elements", domain.len()),
            ),
        })
    });
    Ok(SuiteReport::new("hprime-descriptor", c, opts.seed, cases))
}

pub(super) fn hprime_locality(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.construction_or(Construction::Lambda);
    let cases = run_cases(opts, 0, opts.samples_or(500), |_, rng| {
        let a = random_positive(rng, c, &SEARCH_SHAPE);
        let head = lead(&a).expect("positive").position;
        let noise = random_element(rng, c, &Shape::default()).restrict(|p| *p > head);
        let tail = GroupElement::unit(c, head.successor()).scale(rng.random_range(-3..=3));
        let moved = a.add(&noise)?.add(&tail)?;
        let mut inputs = vec![lit(&a), lit(&moved)];
        if hprime_descriptor(&a) != hprime_descriptor(&moved) {
            return Ok(Case::new(inputs, Outcome::Fail, "descriptor changed"));
        }
        for _ in 0..8 {
            let b = random_element(rng, c, &SEARCH_SHAPE);
            if in_hprime(&a, &b)? != in_hprime(&moved, &b)? {
                inputs.push(lit(&b));
                return Ok(Case::new(inputs, Outcome::Fail, "membership changed"));
            }
        }
        Ok(Case::new(inputs, Outcome::Pass, format!("stable, {}", hprime_descriptor(&a))))
    });
    Ok(SuiteReport::new("hprime-locality", c, opts.seed, cases))
}

/// Boundary elements: leads at `G2[0].s`, at `G1[0].s[0]` on slot 0 and on
/// later slots, at `G1[0].c`, deep in `G1`, and pure-circle supports.
pub fn lambda1_crafted() -> Vec<GroupElement> {
    let l = Construction::Lambda;
    let mut out = vec![GroupElement::zero(l)];
    let positions = [
        Position::g2_square(0),
        Position::g2_circle(0),
        Position::g2_square(1),
        Position::g1_square(0, 0),
        Position::g1_square(0, 1),
        Position::g1_square(0, 3),
        Position::g1_circle(0),
        Position::g1_square(1, 0),
        Position::g1_square(7, 2),
        Position::g1_circle(20),
    ];
    for pos in positions {
        for sign in [1, -1] {
            out.push(GroupElement::unit(l, pos).scale(sign));
            if pos.kind() == SlotKind::Square {
                for slot in [1, 2, 5] {
                    out.push(GroupElement::slot_unit(pos, slot, 3 * sign));
                }
            } else {
                out.push(GroupElement::unit(l, pos).scale(7 * sign));
            }
        }
    }
    let mixed = [
        (Position::g2_square(0), Position::g1_square(0, 0)),
        (Position::g2_circle(0), Position::g1_circle(0)),
        (Position::g1_square(0, 0), Position::g1_circle(3)),
        (Position::g1_circle(0), Position::g1_circle(5)),
        (Position::g2_square(2), Position::g2_circle(1)),
    ];
    for (p, q) in mixed {
        let u = GroupElement::unit(l, p);
        let v = GroupElement::unit(l, q);
        out.push(u.add_unchecked(&v));
        out.push(u.sub(&v.scale(5)).expect("same construction"));
        out.push(v.sub(&u).expect("same construction"));
    }
    out.push(
        GroupElement::slot_unit(Position::g1_square(0, 0), 0, 2)
            .add_unchecked(&GroupElement::slot_unit(Position::g1_square(0, 0), 1, -1)),
    );
    out
}

pub(super) fn lambda1_formula(opts: &SuiteOptions) -> Result<SuiteReport> {
    let c = opts.only(Construction::Lambda, "lambda1-formula")?;
    let n = opts.samples_or(1000);
    let crafted = lambda1_crafted();
    let check = |a: &GroupElement| -> Result<Case> {
        let got = lambda1_by_formula(a)?;
        let truth = is_in_lambda1(a);
        Ok(Case::check(
            vec![lit(a)],
            got == truth,
            format!("formula {got}, support check {truth}"),
        ))
    };
    let mut cases = run_cases(opts, 0, n, |_, rng| check(&random_element(rng, c, &Shape::default())));
    for (i, a) in crafted.iter().enumerate() {
        cases.push(super::record((n + i) as u64, opts.seed, check(a)));
    }
    Ok(SuiteReport::new("lambda1-formula", c, opts.seed, cases))
}
