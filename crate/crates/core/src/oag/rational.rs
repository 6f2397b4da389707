//! Exact rationals and the localizations ℤ₍ₚ₎ used as component groups.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::ParseError;

/// Canonical rational: lowest terms, positive denominator.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Exponent of the prime `p` in `n`; `n` must be nonzero.
pub fn prime_exponent(mut n: i128, p: i128) -> u32 {
    debug_assert!(n != 0);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `p`-adic valuation of a rational, `None` for zero.
pub fn valuation_at(q: &Rational, p: i128) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(prime_exponent(*q.numer(), p) as i64 - prime_exponent(*q.denom(), p) as i64)
}

/// Membership in ℤ₍ₚ₎: the reduced denominator is prime to `p`.
pub fn in_localization(q: &Rational, p: i128) -> bool {
    q.denom() % p != 0
}

/// `q ∈ n·ℤ₍ₚ₎` for `q ∈ ℤ₍ₚ₎`. Only the `p`-part of `n` matters.
pub fn localization_divisible(q: &Rational, n: u64, p: i128) -> bool {
    match valuation_at(q, p) {
        None => true,
        Some(v) => v >= prime_exponent(n as i128, p) as i64,
    }
}

/// Image of `q ∈ ℤ₍ₚ₎` in ℤ₍ₚ₎ / mℤ₍ₚ₎ ≅ ℤ/m, where `m` is a power of `p`.
pub fn localization_residue(q: &Rational, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m = m as i128;
    let num = q.numer().mod_floor(&m);
    let den = q.denom().mod_floor(&m);
    let inv = mod_inverse(den, m).expect("denominator is a unit modulo a power of p");
    ((num * inv) % m) as u64
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.mod_floor(&m))
}

/// Parses `-? digits ( / digits )?`.
pub fn parse_rational(text: &str, offset: usize) -> Result<Rational, ParseError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i128 = num
        .parse()
        .map_err(|_| ParseError::new(offset, format!("invalid integer `{num}`")))?;
    let d: i128 = den
        .parse()
        .map_err(|_| ParseError::new(offset, format!("invalid denominator `{den}`")))?;
    if d <= 0 || den.starts_with('+') {
        return Err(ParseError::new(offset, "denominator must be a positive integer"));
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(*rat(2, -4).denom(), 2);
    }

    #[test]
    fn localization_membership() {
        assert!(in_localization(&rat(1, 3), 2));
        assert!(!in_localization(&rat(1, 6), 2));
        assert!(!in_localization(&rat(5, 9), 3));
    }

    #[test]
    fn divisibility_in_z2() {
        // 1/3 = 2·b has b = 1/6, even denominator
        assert!(!localization_divisible(&rat(1, 3), 2, 2));
        assert!(localization_divisible(&rat(2, 3), 2, 2));
        assert!(localization_divisible(&rat(1, 3), 3, 2));
        assert!(localization_divisible(&rat(4, 5), 4, 2));
        assert!(!localization_divisible(&rat(4, 5), 8, 2));
    }

    #[test]
    fn residues() {
        // 1/3 mod 4: 3·3 = 9 ≡ 1, so 1/3 ≡ 3
        assert_eq!(localization_residue(&rat(1, 3), 4), 3);
        assert_eq!(localization_residue(&rat(-1, 1), 9), 8);
        assert_eq!(localization_residue(&rat(7, 2), 1), 0);
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("-3/6", 0).unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0", 0).is_err());
        assert!(parse_rational("x", 0).is_err());
    }
}
