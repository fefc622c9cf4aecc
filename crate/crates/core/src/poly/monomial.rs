use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exp = u16;

/// Exponent vector of a monomial in a fixed number of generators.
///
/// Ordered graded-lexicographically with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[Exp; 6]>);

/// Alias used where the multi-index reading is clearer.
pub type ExponentVector = Monomial;

impl Monomial {
    pub fn new(exps: impl Into<Vec<Exp>>) -> Monomial {
        Monomial(SmallVec::from_vec(exps.into()))
    }

    pub fn from_slice(exps: &[Exp]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn var_pow(nvars: usize, index: usize, e: Exp) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[index] = e;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[Exp] {
        &self.0
    }

    pub fn get(&self, index: usize) -> Exp {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn involves(&self, index: usize) -> bool {
        self.0[index] > 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect()))
    }

    pub fn with_exp(&self, index: usize, e: Exp) -> Monomial {
        let mut m = self.clone();
        m.0[index] = e;
        m
    }

    /// Renames generators: the exponent of `x_i` moves to `x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut out = SmallVec::from_elem(0, self.0.len());
        for (i, &e) in self.0.iter().enumerate() {
            out[perm[i]] = e;
        }
        Monomial(out)
    }

    /// Canonical text `x1^2*x3`; the constant monomial renders as `1`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `x<i>^<e>` factors joined by `*`; `^1` may be omitted and a
    /// repeated generator accumulates. `1` is the constant monomial.
    pub fn parse(s: &str, nvars: usize) -> Result<Monomial> {
        let mut m = Monomial::one(nvars);
        let s = s.trim();
        if s == "1" {
            return Ok(m);
        }
        for factor in s.split('*') {
            let (index, e) = parse_factor(factor.trim())?;
            if index >= nvars {
                return Err(Error::IndexOutOfRange { index, nvars });
            }
            m.0[index] = m.0[index].checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(m)
    }
}

/// Parses `x<i>` or `x<i>^<e>` into a zero-based index and exponent.
pub(crate) fn parse_factor(factor: &str) -> Result<(usize, Exp)> {
    let bad = || Error::Parse(format!("bad monomial factor `{factor}`"));
    let body = factor.strip_prefix('x').ok_or_else(bad)?;
    let (idx, e) = match body.split_once('^') {
        Some((i, e)) => (i, e.trim().parse::<Exp>().map_err(|_| bad())?),
        None => (body, 1),
    };
    let idx: usize = idx.trim().parse().map_err(|_| bad())?;
    if idx == 0 {
        return Err(bad());
    }
    Ok((idx - 1, e))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(3, 0);
        let x2 = Monomial::var(3, 1);
        let x2x3 = Monomial::new(vec![0, 1, 1]);
        let x1x3 = Monomial::new(vec![1, 0, 1]);
        let x3sq = Monomial::new(vec![0, 0, 2]);
        assert!(x1 > x2);
        assert!(x2x3 > x1);
        assert!(x1x3 > x2x3);
        assert!(x2x3 > x3sq);
        assert!(Monomial::one(3) < x2);
    }

    #[test]
    fn parse_and_render() {
        let m = Monomial::parse("x2^2*x3^2", 4).unwrap();
        assert_eq!(m.exps(), &[0, 2, 2, 0]);
        assert_eq!(m.render(), "x2^2*x3^2");
        assert_eq!(Monomial::parse("x2*x2", 4).unwrap().exps(), &[0, 2, 0, 0]);
        assert!(matches!(Monomial::parse("x5", 4), Err(Error::IndexOutOfRange { .. })));
        assert!(Monomial::parse("y2", 4).is_err());
        assert!(Monomial::parse("x0", 4).is_err());
        assert_eq!(Monomial::parse("1", 2).unwrap(), Monomial::one(2));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Monomial::new(vec![u16::MAX, 0]);
        assert_eq!(big.mul(&Monomial::var(2, 0)).unwrap_err(), Error::ExponentOverflow);
    }
}
