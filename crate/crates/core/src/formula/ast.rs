use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::oag::{Construction, GroupElement};

/// `Σ kᵥ·v + constant`, one coefficient per variable, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeffs: BTreeMap<String, i128>,
    pub constant: Option<GroupElement>,
}

impl Term {
    pub fn zero() -> Self {
        Term {
            coeffs: BTreeMap::new(),
            constant: None,
        }
    }

    pub fn var(name: &str) -> Self {
        Term::zero().plus_var(name, 1)
    }

    pub fn constant(c: GroupElement) -> Self {
        let mut t = Term::zero();
        t.add_constant(&c);
        t
    }

    pub fn plus_var(mut self, name: &str, k: i128) -> Self {
        let e = self.coeffs.entry(name.to_string()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.coeffs.remove(name);
        }
        self
    }

    pub fn plus_constant(mut self, c: &GroupElement) -> Self {
        self.add_constant(c);
        self
    }

    fn add_constant(&mut self, c: &GroupElement) {
        let sum = match &self.constant {
            Some(k) => k.add_unchecked(c),
            None => c.clone(),
        };
        self.constant = (!sum.is_zero()).then_some(sum);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_none()
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    pub fn eval(
        &self,
        construction: Construction,
        env: &BTreeMap<String, GroupElement>,
    ) -> Result<GroupElement> {
        let mut out = GroupElement::zero(construction);
        for (v, k) in &self.coeffs {
            let val = env
                .get(v)
                .ok_or_else(|| crate::error::Error::UnboundVariable(v.clone()))?;
            out = out.add(&val.scale(*k))?;
        }
        if let Some(c) = &self.constant {
            out = out.add(c)?;
        }
        Ok(out)
    }

    fn map_constant(&self, f: &impl Fn(&GroupElement) -> Result<GroupElement>) -> Result<Term> {
        Ok(Term {
            coeffs: self.coeffs.clone(),
            constant: self.constant.as_ref().map(f).transpose()?,
        })
    }
}

/// `n | rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub modulus: u64,
    pub lhs: Term,
    pub rhs: Term,
}

/// Variables `z̄` all bounded by `0 < z < bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundGroup {
    pub vars: Vec<String>,
    pub bound: Term,
}

/// `∃z̄₁…z̄ₖ (⋀ 0 < z̄ᵢ < xᵢ ∧ ∃ū ⋀ congruences)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RPhiSpec {
    pub groups: Vec<BoundGroup>,
    pub inner: Vec<String>,
    pub system: Vec<Congruence>,
}

impl RPhiSpec {
    pub fn bound_vars(&self) -> impl Iterator<Item = &String> {
        self.groups.iter().flat_map(|g| &g.vars)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let bound: BTreeSet<&String> = self.bound_vars().chain(&self.inner).collect();
        let mut out = BTreeSet::new();
        for g in &self.groups {
            out.extend(g.bound.vars().cloned());
        }
        for c in &self.system {
            out.extend(c.lhs.vars().chain(c.rhs.vars()).filter(|v| !bound.contains(v)).cloned());
        }
        out
    }

    /// The defining first-order formula.
    pub fn expand(&self) -> Formula {
        let mut body = Formula::True;
        for c in &self.system {
            body = Formula::and(body, Formula::Atom(Atom::Cong(c.modulus, c.lhs.clone(), c.rhs.clone())));
        }
        for u in self.inner.iter().rev() {
            body = Formula::Exists(u.clone(), Box::new(body));
        }
        let mut bounds = Formula::True;
        for g in &self.groups {
            for z in &g.vars {
                bounds = Formula::and(bounds, Formula::Atom(Atom::Lt(Term::zero(), Term::var(z))));
                bounds = Formula::and(bounds, Formula::Atom(Atom::Lt(Term::var(z), g.bound.clone())));
            }
        }
        let mut out = Formula::and(bounds, body);
        for z in self.bound_vars().collect::<Vec<_>>().into_iter().rev() {
            out = Formula::Exists(z.clone(), Box::new(out));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Lt(Term, Term),
    Eq(Term, Term),
    /// `cong(n, s, t)`: `s ≡ₙ t`.
    Cong(u64, Term, Term),
    /// `psi(n, a, b)`: `∀y (0 < y < b → y ≢ₙ a)`.
    Psi(u64, Term, Term),
    RPhi(RPhiSpec),
}

impl Atom {
    fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Lt(a, b) | Atom::Eq(a, b) | Atom::Cong(_, a, b) | Atom::Psi(_, a, b) => vec![a, b],
            Atom::RPhi(s) => s
                .groups
                .iter()
                .map(|g| &g.bound)
                .chain(s.system.iter().flat_map(|c| [&c.lhs, &c.rhs]))
                .collect(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Atom::RPhi(s) => s.free_vars(),
            _ => self.terms().into_iter().flat_map(|t| t.vars().cloned()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; `True` operands are absorbed.
    pub fn and(a: Formula, b: Formula) -> Self {
        match (a, b) {
            (Formula::True, f) | (f, Formula::True) => f,
            (a, b) => Formula::And(Box::new(a), Box::new(b)),
        }
    }

    /// Disjunction; `False` operands are absorbed.
    pub fn or(a: Formula, b: Formula) -> Self {
        match (a, b) {
            (Formula::False, f) | (f, Formula::False) => f,
            (a, b) => Formula::Or(Box::new(a), Box::new(b)),
        }
    }

    pub fn and_all(fs: impl IntoIterator<Item = Formula>) -> Self {
        fs.into_iter().fold(Formula::True, Formula::and)
    }

    pub fn or_all(fs: impl IntoIterator<Item = Formula>) -> Self {
        fs.into_iter().fold(Formula::False, Formula::or)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::True | Formula::False => BTreeSet::new(),
            Formula::Atom(a) => a.free_vars(),
            Formula::Not(f) => f.free_vars(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let mut s = a.free_vars();
                s.extend(b.free_vars());
                s
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    /// Every element literal occurring in the formula.
    pub fn constants(&self) -> Vec<GroupElement> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| {
            for t in a.terms() {
                if let Some(c) = &t.constant {
                    if !out.contains(c) {
                        out.push(c.clone());
                    }
                }
            }
        });
        out
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => false,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_quantifier() || b.has_quantifier()
            }
            Formula::Exists(..) | Formula::Forall(..) => true,
        }
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Rewrites every element literal, e.g. to pull it back along an embedding.
    pub fn map_constants(&self, f: &impl Fn(&GroupElement) -> Result<GroupElement>) -> Result<Formula> {
        let atom = |a: &Atom| -> Result<Atom> {
            Ok(match a {
                Atom::Lt(x, y) => Atom::Lt(x.map_constant(f)?, y.map_constant(f)?),
                Atom::Eq(x, y) => Atom::Eq(x.map_constant(f)?, y.map_constant(f)?),
                Atom::Cong(n, x, y) => Atom::Cong(*n, x.map_constant(f)?, y.map_constant(f)?),
                Atom::Psi(n, x, y) => Atom::Psi(*n, x.map_constant(f)?, y.map_constant(f)?),
                Atom::RPhi(s) => Atom::RPhi(RPhiSpec {
                    groups: s
                        .groups
                        .iter()
                        .map(|g| {
                            Ok(BoundGroup {
                                vars: g.vars.clone(),
                                bound: g.bound.map_constant(f)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                    inner: s.inner.clone(),
                    system: s
                        .system
                        .iter()
                        .map(|c| {
                            Ok(Congruence {
                                modulus: c.modulus,
                                lhs: c.lhs.map_constant(f)?,
                                rhs: c.rhs.map_constant(f)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                }),
            })
        };
        let rec = |g: &Formula| g.map_constants(f).map(Box::new);
        Ok(match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(atom(a)?),
            Formula::Not(g) => Formula::Not(rec(g)?),
            Formula::And(a, b) => Formula::And(rec(a)?, rec(b)?),
            Formula::Or(a, b) => Formula::Or(rec(a)?, rec(b)?),
            Formula::Implies(a, b) => Formula::Implies(rec(a)?, rec(b)?),
            Formula::Exists(v, g) => Formula::Exists(v.clone(), rec(g)?),
            Formula::Forall(v, g) => Formula::Forall(v.clone(), rec(g)?),
        })
    }
}
