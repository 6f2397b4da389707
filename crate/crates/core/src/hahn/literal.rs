//! Series literals: `1/2 * t^{G1[0].s[0]: -1} + 3 * t^0`.

use super::coeff::{CoeffField, Coefficient};
use super::series::HahnSeries;
use crate::error::{ParseError, Result};
use crate::oag::rational::parse_rational;
use crate::oag::value::DEFAULT_SLOT_CAP;
use crate::oag::{parse_element_with, Construction, GroupElement};

pub fn parse_series(text: &str, construction: Construction, field: CoeffField) -> Result<HahnSeries> {
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let mut pieces: Vec<(usize, usize)> = Vec::new();
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'{' => depth += 1,
            b'}' => depth = depth.saturating_sub(1),
            b'+' | b'-' if depth == 0 && !text[start..i].trim().is_empty() => {
                // a sign right after `*` or `^` belongs to the term
                let prev = text[..i].trim_end().chars().last();
                if !matches!(prev, Some('*') | Some('^') | Some('/')) {
                    pieces.push((start, i));
                    start = i;
                }
            }
            _ => {}
        }
    }
    pieces.push((start, text.len()));
    if pieces.len() == 1 && text.trim() == "0" {
        return Ok(HahnSeries::zero(construction, field));
    }
    for (s, e) in pieces {
        terms.push(parse_term(&text[s..e], s, construction, field)?);
    }
    HahnSeries::from_terms(construction, field, terms)
}

fn parse_term(
    raw: &str,
    offset: usize,
    construction: Construction,
    field: CoeffField,
) -> Result<(GroupElement, Coefficient)> {
    let lead = raw.len() - raw.trim_start().len();
    let mut t = raw.trim();
    let off = offset + lead;
    let mut negative = false;
    if let Some(rest) = t.strip_prefix('+') {
        t = rest.trim_start();
    } else if let Some(rest) = t.strip_prefix('-') {
        negative = true;
        t = rest.trim_start();
    }
    if t.is_empty() {
        return Err(ParseError::new(off, "empty series term").into());
    }
    let (coeff_text, power) = match t.find("t^") {
        Some(i) => {
            let before = t[..i].trim_end();
            let coeff = before.strip_suffix('*').map(str::trim_end);
            match coeff {
                Some(c) => (c, Some((&t[i + 2..], off + (raw.trim().len() - t.len()) + i + 2))),
                None if before.is_empty() => ("1", Some((&t[i + 2..], off + i + 2))),
                None => return Err(ParseError::new(off, "expected `*` before `t^`").into()),
            }
        }
        None => (t, None),
    };
    let q = parse_rational(coeff_text, off)?;
    let mut c = Coefficient::from_rational(field, &q)?;
    if negative {
        c = c.neg();
    }
    let exponent = match power {
        None => GroupElement::zero(construction),
        Some((p, at)) => parse_element_with(p, construction, DEFAULT_SLOT_CAP, at)?,
    };
    Ok((exponent, c))
}
