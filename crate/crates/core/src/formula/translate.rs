//! Valuation statements over series and their ring-language translation.
//!
//! `v(f) ≥ v(g)` becomes `∃w (ValRing(w) ∧ f = w·g)`; strict comparisons
//! and sums of valuations are expressed through it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hahn::HahnSeries;
use crate::oag::GroupElement;

/// Product of series variables; the empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesTerm(pub Vec<String>);

impl SeriesTerm {
    pub fn var(v: &str) -> Self {
        SeriesTerm(vec![v.to_string()])
    }

    pub fn product(a: &SeriesTerm, b: &SeriesTerm) -> Self {
        SeriesTerm(a.0.iter().chain(&b.0).cloned().collect())
    }

    fn eval(&self, env: &BTreeMap<String, HahnSeries>, like: &HahnSeries) -> Result<HahnSeries> {
        let mut acc = HahnSeries::one(like.construction(), like.field());
        for v in &self.0 {
            let s = env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
            acc = acc.mul(s)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for SeriesTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.0.join("*"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValAtom {
    /// `v(a) ≥ v(b)`
    Ge(SeriesTerm, SeriesTerm),
    /// `v(a) > v(b)`
    Gt(SeriesTerm, SeriesTerm),
    /// `v(a) < v(b)`
    Lt(SeriesTerm, SeriesTerm),
    /// `v(a) = v(b)`
    Eq(SeriesTerm, SeriesTerm),
    /// `v(a) + v(b) = v(c)`
    SumEq(SeriesTerm, SeriesTerm, SeriesTerm),
}

impl fmt::Display for ValAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValAtom::Ge(a, b) => write!(f, "v({a}) >= v({b})"),
            ValAtom::Gt(a, b) => write!(f, "v({a}) > v({b})"),
            ValAtom::Lt(a, b) => write!(f, "v({a}) < v({b})"),
            ValAtom::Eq(a, b) => write!(f, "v({a}) = v({b})"),
            ValAtom::SumEq(a, b, c) => write!(f, "v({a}) + v({b}) = v({c})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ValFormula {
    Atom(ValAtom),
    Not(Box<ValFormula>),
    And(Box<ValFormula>, Box<ValFormula>),
    Or(Box<ValFormula>, Box<ValFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingTerm(pub Vec<String>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingAtom {
    ValRing(RingTerm),
    Eq(RingTerm, RingTerm),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingFormula {
    Atom(RingAtom),
    Not(Box<RingFormula>),
    And(Box<RingFormula>, Box<RingFormula>),
    Or(Box<RingFormula>, Box<RingFormula>),
    Exists(String, Box<RingFormula>),
}

impl fmt::Display for RingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.0.join("*"))
        }
    }
}

impl fmt::Display for RingFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingFormula::Atom(RingAtom::ValRing(t)) => write!(f, "ValRing({t})"),
            RingFormula::Atom(RingAtom::Eq(a, b)) => write!(f, "{a} = {b}"),
            RingFormula::Not(g) => write!(f, "~({g})"),
            RingFormula::And(a, b) => write!(f, "({a}) & ({b})"),
            RingFormula::Or(a, b) => write!(f, "({a}) | ({b})"),
            RingFormula::Exists(v, g) => write!(f, "E {v}. {g}"),
        }
    }
}

struct Fresh(usize);

impl Fresh {
    fn next(&mut self) -> String {
        self.0 += 1;
        format!("w#{}", self.0)
    }
}

fn ge(a: &SeriesTerm, b: &SeriesTerm, fresh: &mut Fresh) -> RingFormula {
    let w = fresh.next();
    let mut wb = vec![w.clone()];
    wb.extend(b.0.iter().cloned());
    RingFormula::Exists(
        w.clone(),
        Box::new(RingFormula::And(
            Box::new(RingFormula::Atom(RingAtom::ValRing(RingTerm(vec![w])))),
            Box::new(RingFormula::Atom(RingAtom::Eq(RingTerm(a.0.clone()), RingTerm(wb)))),
        )),
    )
}

fn not(f: RingFormula) -> RingFormula {
    RingFormula::Not(Box::new(f))
}

fn and(a: RingFormula, b: RingFormula) -> RingFormula {
    RingFormula::And(Box::new(a), Box::new(b))
}

fn translate_atom(a: &ValAtom, fresh: &mut Fresh) -> RingFormula {
    match a {
        ValAtom::Ge(x, y) => ge(x, y, fresh),
        ValAtom::Lt(x, y) => not(ge(x, y, fresh)),
        ValAtom::Gt(x, y) => not(ge(y, x, fresh)),
        ValAtom::Eq(x, y) => and(ge(x, y, fresh), ge(y, x, fresh)),
        ValAtom::SumEq(x, y, z) => {
            let xy = SeriesTerm::product(x, y);
            and(
                not(translate_atom(&ValAtom::Lt(xy.clone(), z.clone()), fresh)),
                not(translate_atom(&ValAtom::Gt(xy, z.clone()), fresh)),
            )
        }
    }
}

pub fn translate_to_ring(f: &ValFormula) -> RingFormula {
    fn go(f: &ValFormula, fresh: &mut Fresh) -> RingFormula {
        match f {
            ValFormula::Atom(a) => translate_atom(a, fresh),
            ValFormula::Not(g) => not(go(g, fresh)),
            ValFormula::And(a, b) => and(go(a, fresh), go(b, fresh)),
            ValFormula::Or(a, b) => RingFormula::Or(Box::new(go(a, fresh)), Box::new(go(b, fresh))),
        }
    }
    go(f, &mut Fresh(0))
}

/// `None` is the valuation of 0, above every group element.
fn val(s: &HahnSeries) -> Option<GroupElement> {
    s.valuation().ok()
}

fn val_ge(a: &Option<GroupElement>, b: &Option<GroupElement>) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(x), Some(y)) => x >= y,
    }
}

/// Group-side truth, computed from valuations.
pub fn eval_val_formula(f: &ValFormula, env: &BTreeMap<String, HahnSeries>) -> Result<bool> {
    let like = env
        .values()
        .next()
        .ok_or_else(|| Error::Unsupported("empty series environment".into()))?;
    let v = |t: &SeriesTerm| -> Result<Option<GroupElement>> { Ok(val(&t.eval(env, like)?)) };
    Ok(match f {
        ValFormula::Atom(a) => match a {
            ValAtom::Ge(x, y) => val_ge(&v(x)?, &v(y)?),
            ValAtom::Gt(x, y) => !val_ge(&v(y)?, &v(x)?),
            ValAtom::Lt(x, y) => !val_ge(&v(x)?, &v(y)?),
            ValAtom::Eq(x, y) => v(x)? == v(y)?,
            ValAtom::SumEq(x, y, z) => {
                let s = match (v(x)?, v(y)?) {
                    (Some(a), Some(b)) => Some(a.add(&b)?),
                    _ => None,
                };
                s == v(z)?
            }
        },
        ValFormula::Not(g) => !eval_val_formula(g, env)?,
        ValFormula::And(a, b) => eval_val_formula(a, env)? && eval_val_formula(b, env)?,
        ValFormula::Or(a, b) => eval_val_formula(a, env)? || eval_val_formula(b, env)?,
    })
}

#[derive(Clone)]
struct Binding {
    series: HahnSeries,
    /// Set for truncated quotients: equations involving them hold up to
    /// terms of valuation above this bound.
    tolerance: Option<GroupElement>,
}

fn product(t: &RingTerm, env: &BTreeMap<String, Binding>, like: &HahnSeries) -> Result<(HahnSeries, Option<GroupElement>)> {
    let mut acc = HahnSeries::one(like.construction(), like.field());
    let mut tol = None;
    for v in &t.0 {
        let b = env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
        acc = acc.mul(&b.series)?;
        if b.tolerance.is_some() {
            tol = b.tolerance.clone();
        }
    }
    Ok((acc, tol))
}

/// Ring-side truth. The only quantifier shape accepted is the one the
/// translation emits, `∃w (ValRing(w) ∧ a = w·b)`, whose witness is the
/// quotient `a/b`, computed through a truncated inverse of `b`.
pub fn eval_ring_formula(f: &RingFormula, env: &BTreeMap<String, HahnSeries>) -> Result<bool> {
    let bound: BTreeMap<String, Binding> = env
        .iter()
        .map(|(k, s)| {
            (
                k.clone(),
                Binding {
                    series: s.clone(),
                    tolerance: None,
                },
            )
        })
        .collect();
    let like = env
        .values()
        .next()
        .ok_or_else(|| Error::Unsupported("empty series environment".into()))?
        .clone();
    ring_eval(f, &bound, &like)
}

fn ring_eval(f: &RingFormula, env: &BTreeMap<String, Binding>, like: &HahnSeries) -> Result<bool> {
    Ok(match f {
        RingFormula::Atom(RingAtom::ValRing(t)) => product(t, env, like)?.0.membership().in_val_ring,
        RingFormula::Atom(RingAtom::Eq(a, b)) => {
            let (x, ta) = product(a, env, like)?;
            let (y, tb) = product(b, env, like)?;
            let diff = x.sub(&y)?;
            match (diff.valuation(), ta.or(tb)) {
                (Err(_), _) => true,
                (Ok(_), None) => false,
                (Ok(v), Some(tol)) => v > tol,
            }
        }
        RingFormula::Not(g) => !ring_eval(g, env, like)?,
        RingFormula::And(a, b) => ring_eval(a, env, like)? && ring_eval(b, env, like)?,
        RingFormula::Or(a, b) => ring_eval(a, env, like)? || ring_eval(b, env, like)?,
        RingFormula::Exists(w, body) => {
            let RingFormula::And(_, eq) = body.as_ref() else {
                return Err(Error::Unsupported(format!("quantifier shape {f}")));
            };
            let RingFormula::Atom(RingAtom::Eq(lhs, rhs)) = eq.as_ref() else {
                return Err(Error::Unsupported(format!("quantifier shape {f}")));
            };
            if rhs.0.first() != Some(w) {
                return Err(Error::Unsupported(format!("quantifier shape {f}")));
            }
            let (x, _) = product(lhs, env, like)?;
            let (y, _) = product(&RingTerm(rhs.0[1..].to_vec()), env, like)?;
            let binding = if y.is_zero() || x.is_zero() {
                Binding {
                    series: HahnSeries::zero(like.construction(), like.field()),
                    tolerance: None,
                }
            } else {
                let zero = GroupElement::zero(like.construction());
                let q = x.mul(&y.truncated_inverse(&zero)?)?;
                Binding {
                    series: q,
                    tolerance: Some(x.valuation()?),
                }
            };
            let mut local = env.clone();
            local.insert(w.clone(), binding);
            ring_eval(body, &local, like)?
        }
    })
}
