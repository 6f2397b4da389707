use std::fmt::{self, Write};

use super::ast::{Atom, Formula, RPhiSpec, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (v, &k) in &self.coeffs {
            let body = if k.abs() == 1 { v.clone() } else { format!("{}*{v}", k.abs()) };
            match (first, k < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if let Some(c) = &self.constant {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn write_rphi(out: &mut String, s: &RPhiSpec) {
    out.push_str("rphi(");
    for (i, g) in s.groups.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "[{}] < {}", g.vars.join(", "), g.bound);
    }
    let _ = write!(out, "; [{}]; ", s.inner.join(", "));
    if s.system.is_empty() {
        out.push_str("true");
    }
    for (i, c) in s.system.iter().enumerate() {
        if i > 0 {
            out.push_str(" & ");
        }
        let _ = write!(out, "cong({}, {}, {})", c.modulus, c.lhs, c.rhs);
    }
    out.push(')');
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Lt(a, b) => write!(f, "{a} < {b}"),
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Cong(n, a, b) => write!(f, "cong({n}, {a}, {b})"),
            Atom::Psi(n, a, b) => write!(f, "psi({n}, {a}, {b})"),
            Atom::RPhi(s) => {
                let mut out = String::new();
                write_rphi(&mut out, s);
                f.write_str(&out)
            }
        }
    }
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(_) => 4,
        _ => 5,
    }
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let paren = prec(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(a) => {
            let _ = write!(out, "{a}");
        }
        Formula::Not(g) => {
            out.push('~');
            write_formula(out, g, 4);
        }
        Formula::And(a, b) => binary(out, a, " & ", b, 3, 4),
        Formula::Or(a, b) => binary(out, a, " | ", b, 2, 3),
        Formula::Implies(a, b) => binary(out, a, " -> ", b, 2, 1),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            let q = if matches!(f, Formula::Exists(..)) { 'E' } else { 'A' };
            let _ = write!(out, "{q} {v}. ");
            write_formula(out, g, 0);
        }
    }
    if paren {
        out.push(')');
    }
}

fn binary(out: &mut String, a: &Formula, op: &str, b: &Formula, left: u8, right: u8) {
    // quantifiers under a binary operator are always parenthesized
    write_formula(out, a, left.max(1));
    out.push_str(op);
    write_formula(out, b, right.max(1));
}

pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
