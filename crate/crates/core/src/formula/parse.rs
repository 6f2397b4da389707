//! Recursive-descent parser for formulas.
//!
//! ```text
//! formula  := disj ('->' formula)?
//! disj     := conj ('|' conj)*
//! conj     := unary ('&' unary)*
//! unary    := '~' unary | ('E' | 'A') ident '.' formula | primary
//! primary  := '(' formula ')' | 'true' | 'false'
//!           | ('cong' | 'psi') '(' int ',' term ',' term ')'
//!           | 'rphi' '(' groups ';' '[' idents ']' ';' system ')'
//!           | term ('<' | '=') term
//! term     := '-'? summand (('+' | '-') summand)*
//! summand  := int '*' (ident | literal) | ident | literal | '0'
//! ```

use super::ast::{Atom, BoundGroup, Congruence, Formula, RPhiSpec, Term};
use crate::error::{Error, ParseError, Result};
use crate::oag::value::DEFAULT_SLOT_CAP;
use crate::oag::{parse_element_with, Construction, GroupElement};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i128),
    Lit(String),
    Sym(&'static str),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

const SYMBOLS: [&str; 15] = [
    "->", "(", ")", "[", "]", ",", ";", ".", "<", "=", "&", "|", "~", "+", "-",
];

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'{' {
            let close = text[i..]
                .find('}')
                .ok_or_else(|| ParseError::new(i, "unterminated element literal"))?;
            out.push(Token {
                tok: Tok::Lit(text[i..i + close + 1].to_string()),
                offset: start,
            });
            i += close + 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i]
                .parse()
                .map_err(|_| ParseError::new(start, "integer out of range"))?;
            out.push(Token {
                tok: Tok::Int(n),
                offset: start,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(text[start..i].to_string()),
                offset: start,
            });
        } else if c == b'*' {
            out.push(Token {
                tok: Tok::Sym("*"),
                offset: start,
            });
            i += 1;
        } else {
            let sym = SYMBOLS
                .iter()
                .find(|s| text[i..].starts_with(**s))
                .ok_or_else(|| ParseError::new(i, format!("unexpected character `{}`", c as char)))?;
            out.push(Token {
                tok: Tok::Sym(sym),
                offset: start,
            });
            i += sym.len();
        }
    }
    out.push(Token {
        tok: Tok::End,
        offset: text.len(),
    });
    Ok(out)
}

const KEYWORDS: [&str; 7] = ["E", "A", "true", "false", "cong", "psi", "rphi"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    construction: Construction,
}

pub fn parse_formula(text: &str, construction: Construction) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        construction,
    };
    let f = p.formula()?;
    if p.peek() != &Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str, construction: Construction) -> Result<Term> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        construction,
    };
    let t = p.term()?;
    if p.peek() != &Tok::End {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        ParseError::new(self.offset(), msg).into()
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{sym}`")))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err("expected a variable name")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        if self.eat("->") {
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut f = self.conj()?;
        while self.eat("|") {
            f = Formula::Or(Box::new(f), Box::new(self.conj()?));
        }
        Ok(f)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat("&") {
            f = Formula::And(Box::new(f), Box::new(self.unary()?));
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat("~") {
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        let quant = match self.peek() {
            Tok::Ident(s) if s == "E" || s == "A" => matches!(self.peek_at(1), Tok::Ident(_)),
            _ => false,
        };
        if quant {
            let Tok::Ident(q) = self.bump() else { unreachable!() };
            let v = self.ident()?;
            self.expect(".")?;
            let body = Box::new(self.formula()?);
            return Ok(if q == "E" {
                Formula::Exists(v, body)
            } else {
                Formula::Forall(v, body)
            });
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        if self.eat("(") {
            let f = self.formula()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.is_keyword("true") {
            self.bump();
            return Ok(Formula::True);
        }
        if self.is_keyword("false") {
            self.bump();
            return Ok(Formula::False);
        }
        if self.is_keyword("cong") || self.is_keyword("psi") {
            let is_cong = self.is_keyword("cong");
            self.bump();
            let (n, a, b) = self.modular_args()?;
            return Ok(Formula::Atom(if is_cong {
                Atom::Cong(n, a, b)
            } else {
                Atom::Psi(n, a, b)
            }));
        }
        if self.is_keyword("rphi") {
            self.bump();
            return Ok(Formula::Atom(Atom::RPhi(self.rphi()?)));
        }
        let lhs = self.term()?;
        if self.eat("<") {
            Ok(Formula::Atom(Atom::Lt(lhs, self.term()?)))
        } else if self.eat("=") {
            Ok(Formula::Atom(Atom::Eq(lhs, self.term()?)))
        } else {
            Err(self.err("expected `<` or `=`"))
        }
    }

    fn modulus(&mut self) -> Result<u64> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) if n >= 2 && n <= u32::MAX as i128 => Ok(n as u64),
            Tok::Int(n) => Err(ParseError::new(at, format!("modulus must be at least 2, got {n}")).into()),
            _ => Err(ParseError::new(at, "expected a modulus").into()),
        }
    }

    fn modular_args(&mut self) -> Result<(u64, Term, Term)> {
        self.expect("(")?;
        let n = self.modulus()?;
        self.expect(",")?;
        let a = self.term()?;
        self.expect(",")?;
        let b = self.term()?;
        self.expect(")")?;
        Ok((n, a, b))
    }

    fn var_list(&mut self) -> Result<Vec<String>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.ident()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn rphi(&mut self) -> Result<RPhiSpec> {
        self.expect("(")?;
        let mut groups = Vec::new();
        if !matches!(self.peek(), Tok::Sym(";")) {
            loop {
                let vars = self.var_list()?;
                if vars.is_empty() {
                    return Err(self.err("a bound group needs at least one variable"));
                }
                self.expect("<")?;
                groups.push(BoundGroup {
                    vars,
                    bound: self.term()?,
                });
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(";")?;
        let inner = self.var_list()?;
        self.expect(";")?;
        let mut system = Vec::new();
        if self.is_keyword("true") {
            self.bump();
        } else {
            loop {
                if !self.is_keyword("cong") {
                    return Err(self.err("rphi systems contain only `cong` atoms"));
                }
                self.bump();
                let (modulus, lhs, rhs) = self.modular_args()?;
                system.push(Congruence { modulus, lhs, rhs });
                if !self.eat("&") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(RPhiSpec {
            groups,
            inner,
            system,
        })
    }

    fn literal(&mut self, text: &str, offset: usize) -> Result<GroupElement> {
        parse_element_with(text, self.construction, DEFAULT_SLOT_CAP, offset)
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = Term::zero();
        let mut sign = if self.eat("-") { -1 } else { 1 };
        loop {
            self.summand(&mut t, sign)?;
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                return Ok(t);
            }
        }
    }

    fn summand(&mut self, t: &mut Term, sign: i128) -> Result<()> {
        let at = self.offset();
        let (k, target) = match self.bump() {
            Tok::Int(k) if self.eat("*") => (k, self.bump()),
            Tok::Int(0) => return Ok(()),
            Tok::Int(_) => {
                return Err(ParseError::new(at, "bare integers other than 0 are not terms").into())
            }
            other => (1, other),
        };
        let at = self.toks[self.pos.saturating_sub(1)].offset;
        match target {
            Tok::Ident(v) if !KEYWORDS.contains(&v.as_str()) => {
                *t = std::mem::replace(t, Term::zero()).plus_var(&v, sign * k);
                Ok(())
            }
            Tok::Lit(text) => {
                let c = self.literal(&text, at)?;
                *t = std::mem::replace(t, Term::zero()).plus_constant(&c.scale(sign * k));
                Ok(())
            }
            _ => Err(ParseError::new(at, "expected a variable or element literal").into()),
        }
    }
}
