//! Minimal quantifier prefix of a formula over all prenex forms.
//!
//! Congruences and `R_φ` count as one `∃` block, `psi` as one `∀` block;
//! negation swaps them.

use std::fmt;

use super::ast::{Atom, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

/// Alternating block string, e.g. `∃∀∃`. Length 0 means quantifier-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prefix {
    pub start: Quant,
    pub blocks: usize,
}

impl Prefix {
    pub fn blocks(&self) -> Vec<Quant> {
        (0..self.blocks)
            .map(|i| match (self.start, i % 2) {
                (q, 0) => q,
                (Quant::Exists, _) => Quant::Forall,
                (Quant::Forall, _) => Quant::Exists,
            })
            .collect()
    }

    pub fn ascii(&self) -> String {
        self.blocks()
            .iter()
            .map(|q| if *q == Quant::Exists { 'E' } else { 'A' })
            .collect()
    }
}

impl fmt::Display for Prefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks == 0 {
            return f.write_str("qf");
        }
        for q in self.blocks() {
            f.write_str(if q == Quant::Exists { "∃" } else { "∀" })?;
        }
        Ok(())
    }
}

/// Shortest prefix starting with `∃` and with `∀`.
#[derive(Debug, Clone, Copy)]
struct Lengths {
    e: usize,
    a: usize,
}

impl Lengths {
    fn norm(self) -> Self {
        Lengths {
            e: self.e.min(self.a + 1),
            a: self.a.min(self.e + 1),
        }
    }

    fn merge(self, o: Lengths) -> Self {
        Lengths {
            e: self.e.max(o.e),
            a: self.a.max(o.a),
        }
        .norm()
    }
}

const QF: Lengths = Lengths { e: 0, a: 0 };
const EXISTENTIAL: Lengths = Lengths { e: 1, a: 2 };
const UNIVERSAL: Lengths = Lengths { e: 2, a: 1 };

fn lengths(f: &Formula, positive: bool) -> Lengths {
    let flip = |l: Lengths| if positive { l } else { Lengths { e: l.a, a: l.e } };
    match f {
        Formula::True | Formula::False => QF,
        Formula::Atom(Atom::Lt(..) | Atom::Eq(..)) => QF,
        Formula::Atom(Atom::Cong(..) | Atom::RPhi(_)) => flip(EXISTENTIAL),
        Formula::Atom(Atom::Psi(..)) => flip(UNIVERSAL),
        Formula::Not(g) => lengths(g, !positive),
        Formula::And(a, b) | Formula::Or(a, b) => lengths(a, positive).merge(lengths(b, positive)),
        Formula::Implies(a, b) => lengths(a, !positive).merge(lengths(b, positive)),
        Formula::Exists(_, g) | Formula::Forall(_, g) => {
            let inner = lengths(g, positive);
            let existential = matches!(f, Formula::Exists(..)) == positive;
            if existential {
                let e = inner.e.max(1).min(inner.a + 1);
                Lengths { e, a: e + 1 }
            } else {
                let a = inner.a.max(1).min(inner.e + 1);
                Lengths { e: a + 1, a }
            }
        }
    }
}

/// Minimal prefix class; ties go to the `∃`-first string.
pub fn classify(f: &Formula) -> Prefix {
    let l = lengths(f, true);
    if l.e <= l.a {
        Prefix {
            start: Quant::Exists,
            blocks: l.e,
        }
    } else {
        Prefix {
            start: Quant::Forall,
            blocks: l.a,
        }
    }
}
