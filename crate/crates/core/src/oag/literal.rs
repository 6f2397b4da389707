//! Element literals: `{G2[0].c: 1/2, G1[0].s[0]: 2 + 4*c1}` or `0`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{Construction, GroupElement};
use super::position::{Position, SlotKind};
use super::rational::parse_rational;
use super::value::{SlotPoly, Value, DEFAULT_SLOT_CAP};
use crate::error::{Error, ParseError, Result};

pub fn parse_element(text: &str, construction: Construction) -> Result<GroupElement> {
    parse_element_with(text, construction, DEFAULT_SLOT_CAP, 0)
}

/// Parses with an explicit inner-slot cap; `base` offsets reported errors.
pub fn parse_element_with(
    text: &str,
    construction: Construction,
    slot_cap: u32,
    base: usize,
) -> Result<GroupElement> {
    let lead_ws = text.len() - text.trim_start().len();
    let body = text.trim();
    let at = |i: usize| base + lead_ws + i;
    if body == "0" {
        return Ok(GroupElement::zero(construction));
    }
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| ParseError::new(at(0), "element literal must be `0` or `{...}`"))?;
    let mut entries: Vec<(Position, Value)> = Vec::new();
    if inner.trim().is_empty() {
        return Ok(GroupElement::zero(construction));
    }
    let mut cursor = 1;
    for piece in inner.split(',') {
        let (pos_text, value_text) = piece
            .split_once(':')
            .ok_or_else(|| ParseError::new(at(cursor), "expected `position: value`"))?;
        let pos = parse_position(pos_text.trim(), at(cursor))?;
        let value_off = at(cursor + pos_text.len() + 1);
        if entries.iter().any(|(p, _)| *p == pos) {
            return Err(ParseError::new(at(cursor), format!("duplicate position {pos}")).into());
        }
        let value = parse_value(value_text, construction, pos, slot_cap, value_off)?;
        entries.push((pos, value));
        cursor += piece.len() + 1;
    }
    GroupElement::new(construction, entries)
}

pub fn format_element(a: &GroupElement) -> String {
    a.to_string()
}

fn parse_index(text: &str, offset: usize) -> Result<(u32, &str), ParseError> {
    let rest = text
        .strip_prefix('[')
        .ok_or_else(|| ParseError::new(offset, "expected `[`"))?;
    let (num, rest) = rest
        .split_once(']')
        .ok_or_else(|| ParseError::new(offset, "expected `]`"))?;
    let n = num
        .trim()
        .parse()
        .map_err(|_| ParseError::new(offset, format!("invalid index `{num}`")))?;
    Ok((n, rest))
}

fn parse_position(text: &str, offset: usize) -> Result<Position, ParseError> {
    let bad = || ParseError::new(offset, format!("invalid position `{text}`"));
    if let Some(rest) = text.strip_prefix("G2") {
        let (m, rest) = parse_index(rest, offset)?;
        match rest {
            ".c" => Ok(Position::g2_circle(m)),
            ".s" => Ok(Position::g2_square(m)),
            _ => Err(bad()),
        }
    } else if let Some(rest) = text.strip_prefix("G1") {
        let (b, rest) = parse_index(rest, offset)?;
        if rest == ".c" {
            Ok(Position::g1_circle(b))
        } else if let Some(rest) = rest.strip_prefix(".s") {
            let (p, rest) = parse_index(rest, offset)?;
            if rest.is_empty() {
                Ok(Position::g1_square(b, p))
            } else {
                Err(bad())
            }
        } else {
            Err(bad())
        }
    } else {
        Err(bad())
    }
}

fn parse_value(
    text: &str,
    construction: Construction,
    pos: Position,
    slot_cap: u32,
    offset: usize,
) -> Result<Value> {
    match (construction, pos.kind()) {
        (Construction::Lambda, SlotKind::Square) => {
            if text.contains('/') {
                return Err(Error::InvalidValue(format!(
                    "Lambda square {pos} takes integer polynomial coefficients"
                )));
            }
            Ok(Value::Poly(parse_poly(text, slot_cap, offset)?))
        }
        _ => Ok(Value::Rat(parse_rational(text, offset)?)),
    }
}

/// `a0 ± k*cK ± cK ...`, terms in any order.
fn parse_poly(text: &str, slot_cap: u32, offset: usize) -> Result<SlotPoly, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError::new(offset, "empty value"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            terms.push(parse_term(&compact[start..i], slot_cap, offset)?);
            start = i;
        }
    }
    Ok(SlotPoly::from_terms(terms))
}

fn parse_term(term: &str, slot_cap: u32, offset: usize) -> Result<(u32, i128), ParseError> {
    let bad = || ParseError::new(offset, format!("invalid polynomial term `{term}`"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    let (coeff, slot) = match body.split_once('*') {
        Some((k, c)) => (k.parse::<i128>().map_err(|_| bad())?, Some(c)),
        None if body.starts_with('c') => (1, Some(body)),
        None => (body.parse::<i128>().map_err(|_| bad())?, None),
    };
    let slot = match slot {
        None => 0,
        Some(c) => c
            .strip_prefix('c')
            .and_then(|k| k.parse::<u32>().ok())
            .filter(|k| *k >= 1)
            .ok_or_else(bad)?,
    };
    if slot >= slot_cap {
        return Err(ParseError::new(
            offset,
            format!("inner slot {slot} exceeds the cap {slot_cap}"),
        ));
    }
    Ok((slot, sign * coeff))
}

#[derive(Serialize, Deserialize)]
struct Tagged {
    construction: Construction,
    value: String,
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Tagged {
            construction: self.construction(),
            value: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = Tagged::deserialize(d)?;
        parse_element(&t.value, t.construction).map_err(serde::de::Error::custom)
    }
}
