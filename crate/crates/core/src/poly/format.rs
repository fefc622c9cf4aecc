//! Text and structured encodings of polynomials.
//!
//! Text: terms in descending graded-lex order joined by ` + `. Each term is
//! `c*x1^a1*x3` with the coefficient always present, zero exponents dropped
//! and `^1` omitted; a constant term is just `c` and the zero polynomial is
//! `0`. The parser also accepts omitted coefficients, `-` between terms and
//! repeated scalar factors, so hand-written input is convenient while
//! rendered output stays canonical.

use serde::{Deserialize, Serialize};

use super::{parse_factor, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// One term of the structured encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exps: Vec<u16>,
    pub coeff: String,
}

impl Polynomial {
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let coeff = self.field.render(c);
                if m.is_one() {
                    coeff
                } else {
                    format!("{}*{}", coeff, m.render())
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn parse(field: &Field, nvars: usize, s: &str) -> Result<Polynomial> {
        let mut terms = Vec::new();
        for (negate, body) in split_terms(s)? {
            let (m, mut c) = parse_term(field, nvars, &body)?;
            if negate {
                c = field.neg(&c);
            }
            terms.push((m, c));
        }
        Polynomial::from_terms(field, nvars, terms)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms.iter().map(|(m, c)| TermRecord { exps: m.exps().to_vec(), coeff: self.field.render(c) }).collect()
    }

    pub fn from_records(field: &Field, nvars: usize, records: &[TermRecord]) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            if r.exps.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: r.exps.len() });
            }
            terms.push((Monomial::from_slice(&r.exps), field.parse(&r.coeff)?));
        }
        Polynomial::from_terms(field, nvars, terms)
    }
}

/// Splits at top-level `+` and binary `-`, returning (negated, term text).
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut negate = false;
    let mut depth = 0i32;
    let flush = |cur: &mut String, negate: bool, out: &mut Vec<(bool, String)>| -> Result<()> {
        let t = cur.trim().to_string();
        if t.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        out.push((negate, t));
        cur.clear();
        Ok(())
    };
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' if depth == 0 => {
                flush(&mut cur, negate, &mut out)?;
                negate = false;
            }
            '-' if depth == 0 => {
                let last = cur.trim_end().chars().last();
                match last {
                    None => negate = !negate,
                    Some('*') | Some('/') | Some('^') => cur.push(ch),
                    Some(_) => {
                        flush(&mut cur, negate, &mut out)?;
                        negate = true;
                    }
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{s}`")));
    }
    flush(&mut cur, negate, &mut out)?;
    Ok(out)
}

fn split_factors(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_scalar(field: &Field, s: &str) -> Result<Elem> {
    if field.characteristic() != 0 {
        if let Some((n, d)) = s.split_once('/') {
            return field.div(&field.parse(n)?, &field.parse(d)?);
        }
    }
    field.parse(s)
}

fn parse_term(field: &Field, nvars: usize, s: &str) -> Result<(Monomial, Elem)> {
    let mut m = Monomial::one(nvars);
    let mut c = field.one();
    for factor in split_factors(s) {
        let factor = factor.trim();
        if factor.starts_with('x') {
            let (index, e) = parse_factor(factor)?;
            if index >= nvars {
                return Err(Error::IndexOutOfRange { index, nvars });
            }
            m = m.mul(&Monomial::var_pow(nvars, index, e))?;
        } else {
            let (neg, body) = match factor.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, factor),
            };
            let mut v = parse_scalar(field, body)?;
            if neg {
                v = field.neg(&v);
            }
            c = field.mul(&c, &v);
        }
    }
    Ok((m, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_render() {
        let k = Field::prime(5).unwrap();
        let p = Polynomial::parse(&k, 4, "x2*x3 + x1 + 3 + x3^2*x2").unwrap();
        assert_eq!(p.render(), "1*x2*x3^2 + 1*x2*x3 + 1*x1 + 3");
        assert_eq!(Polynomial::zero(&k, 4).render(), "0");
    }

    #[test]
    fn subtraction_and_signs() {
        let k = Field::prime(5).unwrap();
        let p = Polynomial::parse(&k, 4, "x1 - x2*x3").unwrap();
        assert_eq!(p.render(), "4*x2*x3 + 1*x1");
        let q = Polynomial::parse(&k, 4, "-x1 + 2*-1*x2").unwrap();
        assert_eq!(q.render(), "4*x1 + 3*x2");
        assert_eq!(Polynomial::parse(&k, 4, "x1 + x1 - 2*x1").unwrap().render(), "0");
    }

    #[test]
    fn extension_and_rational_coefficients() {
        let f9 = Field::extension(3, 2, &[1, 0, 1]).unwrap();
        let p = Polynomial::parse(&f9, 2, "[0,1]*x1 + [1,1]*x2^2").unwrap();
        assert_eq!(p.render(), "[1,1]*x2^2 + [0,1]*x1");
        let q = Field::rationals();
        let r = Polynomial::parse(&q, 2, "x1 - 3/2*x2 + -1/4").unwrap();
        assert_eq!(r.render(), "1*x1 + -3/2*x2 + -1/4");
        assert_eq!(Polynomial::parse(&q, 2, &r.render()).unwrap(), r);
    }

    #[test]
    fn records_round_trip() {
        let k = Field::prime(7).unwrap();
        let p = Polynomial::parse(&k, 3, "2*x1^2 + 5*x2*x3 + 1").unwrap();
        let recs = p.to_records();
        assert_eq!(recs[0], TermRecord { exps: vec![2, 0, 0], coeff: "2".into() });
        assert_eq!(Polynomial::from_records(&k, 3, &recs).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        let k = Field::prime(5).unwrap();
        assert!(Polynomial::parse(&k, 4, "x1 +").is_err());
        assert!(Polynomial::parse(&k, 4, "x7").is_err());
        assert!(Polynomial::parse(&k, 4, "[1,2").is_err());
        assert!(Polynomial::parse(&k, 4, "y1").is_err());
    }
}
