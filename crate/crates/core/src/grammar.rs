//! Plain-text polynomial grammar shared by [`MultiPoly`](crate::symbolic::MultiPoly)
//! and [`Perturbation`](crate::functionals::Perturbation).
//!
//! ```text
//! poly    := ["-"] term (("+" | "-") term)*  |  "0"
//! term    := [coeff ["*"]] factor ("*" factor)*  |  coeff
//! factor  := VAR index ["^" exponent]
//! coeff   := integer ["/" integer]
//! ```
//!
//! `VAR` is a single letter (`b` for Σ-coefficients, `a` for S-coefficients).
//! Whitespace is ignored and `*` may be replaced by juxtaposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// One parsed term: coefficient and `index -> exponent`.
pub type ParsedTerm = (Rational, BTreeMap<usize, u32>);

pub fn parse_terms(input: &str, var: char) -> Result<Vec<ParsedTerm>> {
    let s: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str, at: usize| Error::Parse(format!("{msg} at position {at} in `{input}`"));
    if s.is_empty() {
        return Err(err("empty polynomial", 0));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    while pos < s.len() {
        let mut sign = Rational::one();
        if terms.is_empty() {
            if s[pos] == '-' {
                sign = -sign;
                pos += 1;
            } else if s[pos] == '+' {
                pos += 1;
            }
        } else {
            match s[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -sign;
                    pos += 1
                }
                _ => return Err(err("expected `+` or `-`", pos)),
            }
        }

        let mut coeff = Rational::one();
        let mut has_coeff = false;
        if pos < s.len() && s[pos].is_ascii_digit() {
            let num = read_digits(&s, &mut pos);
            let mut q = Rational::from_integer(num);
            if pos < s.len() && s[pos] == '/' {
                pos += 1;
                if pos >= s.len() || !s[pos].is_ascii_digit() {
                    return Err(err("expected denominator", pos));
                }
                let den = read_digits(&s, &mut pos);
                if den.is_zero() {
                    return Err(err("zero denominator", pos));
                }
                q /= Rational::from_integer(den);
            }
            coeff = q;
            has_coeff = true;
        }

        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        loop {
            if pos < s.len() && s[pos] == '*' {
                if !has_coeff && exps.is_empty() {
                    return Err(err("unexpected `*`", pos));
                }
                pos += 1;
            }
            if pos < s.len() && s[pos] == var {
                pos += 1;
                if pos >= s.len() || !s[pos].is_ascii_digit() {
                    return Err(err("expected variable index", pos));
                }
                let idx = read_digits(&s, &mut pos);
                let idx: usize = idx
                    .try_into()
                    .map_err(|_| err("variable index too large", pos))?;
                let mut e = 1u32;
                if pos < s.len() && s[pos] == '^' {
                    pos += 1;
                    if pos >= s.len() || !s[pos].is_ascii_digit() {
                        return Err(err("expected exponent", pos));
                    }
                    e = read_digits(&s, &mut pos)
                        .try_into()
                        .map_err(|_| err("exponent too large", pos))?;
                }
                *exps.entry(idx).or_insert(0) += e;
            } else {
                break;
            }
        }
        if !has_coeff && exps.is_empty() {
            return Err(err("expected a term", pos));
        }
        exps.retain(|_, e| *e > 0);
        terms.push((sign * coeff, exps));
    }
    Ok(terms)
}

fn read_digits(s: &[char], pos: &mut usize) -> BigInt {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    s[start..*pos]
        .iter()
        .collect::<String>()
        .parse()
        .expect("digits parse as an integer")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signed_terms() {
        let t = parse_terms("-b0^3 + 2*b0*b1 - b2", 'b').unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].0, -Rational::one());
        assert_eq!(t[0].1, BTreeMap::from([(0, 3)]));
        assert_eq!(t[1].1, BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(t[2].0, -Rational::one());
    }

    #[test]
    fn juxtaposition_and_fractions() {
        let t = parse_terms("1/10 a3^2 + 3a4a3", 'a').unwrap();
        assert_eq!(t[0].0, Rational::new(1.into(), 10.into()));
        assert_eq!(t[1].1, BTreeMap::from([(3, 1), (4, 1)]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("", 'b').is_err());
        assert!(parse_terms("b0 b", 'b').is_err());
        assert!(parse_terms("x1", 'b').is_err());
        assert!(parse_terms("b0 +", 'b').is_err());
    }
}
