//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a vector sorted strictly descending in graded-lex order
//! with no zero coefficients, so structural equality is polynomial equality
//! and the text and byte encodings are canonical.

mod format;
mod monomial;

use std::collections::HashMap;

pub use format::TermRecord;
pub(crate) use monomial::parse_factor;
pub use monomial::{Exp, ExponentVector, Monomial};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, Scalar};

/// Default hard cap on the total degree of substitution results.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Elem)>,
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

fn collect_sorted(field: &Field, acc: HashMap<Monomial, Elem>) -> Vec<(Monomial, Elem)> {
    let mut terms: Vec<(Monomial, Elem)> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
    terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    terms
}

impl Polynomial {
    pub fn zero(field: &Field, nvars: usize) -> Polynomial {
        Polynomial { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: Elem) -> Polynomial {
        Polynomial::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: &Field, nvars: usize) -> Polynomial {
        Polynomial::constant(field, nvars, field.one())
    }

    /// The generator `x_{index+1}`.
    pub fn var(field: &Field, nvars: usize, index: usize) -> Polynomial {
        Polynomial::term(field, Monomial::var(nvars, index), field.one())
    }

    pub fn term(field: &Field, monomial: Monomial, c: Elem) -> Polynomial {
        let nvars = monomial.nvars();
        let terms = if field.is_zero(&c) { Vec::new() } else { vec![(monomial, c)] };
        Polynomial { field: field.clone(), nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Result<Polynomial> {
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: m.nvars() });
            }
            if !field.check_kind(&c) {
                return Err(Error::FieldMismatch);
            }
            acc.entry(m).and_modify(|e| *e = field.add(e, &c)).or_insert(c);
        }
        Ok(Polynomial { field: field.clone(), nvars, terms: collect_sorted(field, acc) })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    /// Homogeneous of degree one (no constant term).
    pub fn is_linear(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 1)
    }

    pub fn constant_term(&self) -> Elem {
        self.coefficient_of(&Monomial::one(self.nvars))
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Elem {
        match self.terms.binary_search_by(|(t, _)| m.cmp(t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn coefficient_scalar(&self, m: &Monomial) -> Scalar {
        self.field.scalar(self.coefficient_of(m))
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.iter().map(|(m, _)| m.clone()).collect()
    }

    /// True if some term has a positive exponent of `x_{index+1}`.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.involves(index))
    }

    /// The single term, if the polynomial is a nonzero monomial.
    pub fn as_term(&self) -> Option<(&Monomial, &Elem)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    /// Merge of two sorted term lists.
    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&a[i].1, &b[j].1);
                    if !f.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { field: f.clone(), nvars: self.nvars, terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<Polynomial> {
        if *c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.scale(c.elem()))
    }

    pub(crate) fn scale(&self, c: &Elem) -> Polynomial {
        let f = &self.field;
        if f.is_zero(c) {
            return Polynomial::zero(f, self.nvars);
        }
        Polynomial {
            field: f.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        self.mul_unchecked(other)
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Result<Polynomial> {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(f, self.nvars));
        }
        // multiplying by a single term preserves the monomial order
        let single = |poly: &Polynomial, m: &Monomial, c: &Elem| -> Result<Polynomial> {
            let mut terms = Vec::with_capacity(poly.terms.len());
            for (pm, pc) in &poly.terms {
                terms.push((pm.mul(m)?, f.mul(pc, c)));
            }
            Ok(Polynomial { field: f.clone(), nvars: poly.nvars, terms })
        };
        if let Some((m, c)) = other.as_term() {
            return single(self, m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return single(other, m, c);
        }
        let mut acc: HashMap<Monomial, Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.mul(bm)?;
                let c = f.mul(ac, bc);
                acc.entry(m).and_modify(|e| *e = f.add(e, &c)).or_insert(c);
            }
        }
        Ok(Polynomial { field: f.clone(), nvars: self.nvars, terms: collect_sorted(f, acc) })
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut result = Polynomial::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base)?;
            }
        }
        Ok(result)
    }

    /// Evaluates `self` at `x_i -> images[i]` exactly, failing if any term of
    /// the result would exceed `cap` in total degree.
    pub fn substitute(&self, images: &[Polynomial], cap: u32) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let f = &self.field;
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        for img in images {
            if img.nvars != target_nvars {
                return Err(Error::ArityMismatch { expected: target_nvars, found: img.nvars });
            }
            if img.field != *f {
                return Err(Error::FieldMismatch);
            }
        }
        let degs: Vec<u32> = images.iter().map(|p| p.degree()).collect();
        for (m, _) in &self.terms {
            let d: u32 = m.exps().iter().zip(&degs).map(|(&e, &d)| e as u32 * d).sum();
            if d > cap {
                return Err(Error::DegreeCapExceeded { degree: d, cap });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![p.clone()]).collect();
        let mut result = Polynomial::zero(f, target_nvars);
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        let mut use_acc = false;
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(f, target_nvars, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() < e {
                    let next = powers[i].last().expect("nonempty").mul_unchecked(&images[i])?;
                    powers[i].push(next);
                }
                prod = prod.mul_unchecked(&powers[i][e - 1])?;
                if prod.is_zero() {
                    break;
                }
            }
            if self.terms.len() <= 2 {
                result = result.add_unchecked(&prod);
            } else {
                use_acc = true;
                for (pm, pc) in prod.terms {
                    acc.entry(pm).and_modify(|x| *x = f.add(x, &pc)).or_insert(pc);
                }
            }
        }
        if use_acc {
            result = Polynomial { field: f.clone(), nvars: target_nvars, terms: collect_sorted(f, acc) };
        }
        Ok(result)
    }

    /// Rewrites each coefficient from its monomial, dropping zeros. The
    /// support can only shrink.
    pub fn map_coefficients(&self, mut g: impl FnMut(&Monomial, &Elem) -> Elem) -> Polynomial {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let c = g(m, c);
                (!f.is_zero(&c)).then(|| (m.clone(), c))
            })
            .collect();
        Polynomial { field: f.clone(), nvars: self.nvars, terms }
    }

    /// Renames generators, `x_i -> x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone()));
        Polynomial::from_terms(&self.field, self.nvars, terms).expect("permutation keeps arity")
    }

    /// Splits into its terms as single-term polynomials.
    pub fn monomial_parts(&self) -> Vec<Polynomial> {
        self.terms
            .iter()
            .map(|(m, c)| Polynomial {
                field: self.field.clone(),
                nvars: self.nvars,
                terms: vec![(m.clone(), c.clone())],
            })
            .collect()
    }

    /// Appends a compact canonical byte encoding (used as a dedup key).
    pub fn write_key(&self, out: &mut Vec<u8>) {
        out.extend_from_slice(&(self.terms.len() as u32).to_le_bytes());
        for (m, c) in &self.terms {
            for &e in m.exps() {
                out.extend_from_slice(&e.to_le_bytes());
            }
            match c {
                Elem::Fin(v) => out.extend_from_slice(&v.to_le_bytes()),
                Elem::Rat(_) => {
                    let s = self.field.render(c);
                    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
                    out.extend_from_slice(s.as_bytes());
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn parse(field: &Field, n: usize, s: &str) -> Polynomial {
        Polynomial::parse(field, n, s).unwrap()
    }

    #[test]
    fn frobenius_binomial_over_f3() {
        let k = f(3);
        let p = parse(&k, 4, "x2 + x3");
        assert_eq!(p.pow(3).unwrap(), parse(&k, 4, "x2^3 + x3^3"));
    }

    #[test]
    fn square_over_f3() {
        let k = f(3);
        let p = parse(&k, 4, "x2 + x4");
        assert_eq!(p.pow(2).unwrap(), parse(&k, 4, "x2^2 + 2*x2*x4 + x4^2"));
    }

    #[test]
    fn times_zero_is_zero() {
        let k = f(5);
        let p = parse(&k, 4, "x1 + 3*x2*x3");
        assert!(p.mul(&Polynomial::zero(&k, 4)).unwrap().is_zero());
    }

    #[test]
    fn arity_and_field_mismatch() {
        let k = f(5);
        let a = Polynomial::var(&k, 4, 0);
        let b = Polynomial::var(&k, 3, 0);
        assert!(matches!(a.add(&b), Err(Error::ArityMismatch { .. })));
        let c = Polynomial::var(&f(7), 4, 0);
        assert_eq!(a.mul(&c).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn substitution_examples() {
        let k = f(5);
        let n = 4;
        let id: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&k, n, i)).collect();
        let p = parse(&k, n, "x1^2*x3 + 4*x2 + 1");
        assert_eq!(p.substitute(&id, DEFAULT_DEGREE_CAP).unwrap(), p);

        let images = vec![parse(&k, n, "x1 + x2*x3"), id[1].clone(), id[2].clone(), id[3].clone()];
        assert_eq!(id[0].substitute(&images, 64).unwrap(), parse(&k, n, "x1 + x2*x3"));

        let images = vec![id[0].clone(), parse(&k, n, "x2 + x3^2"), id[2].clone(), id[3].clone()];
        let x2x3 = parse(&k, n, "x2*x3");
        assert_eq!(x2x3.substitute(&images, 64).unwrap(), parse(&k, n, "x2*x3 + x3^3"));
    }

    #[test]
    fn degree_cap_is_loud() {
        let k = f(3);
        let n = 2;
        let p = parse(&k, n, "x1^10");
        let images = vec![parse(&k, n, "x1 + x2^7"), Polynomial::var(&k, n, 1)];
        assert_eq!(p.substitute(&images, 64).unwrap_err(), Error::DegreeCapExceeded { degree: 70, cap: 64 });
        assert!(p.substitute(&images, 70).is_ok());
    }

    #[test]
    fn inspection() {
        let k = f(7);
        let b = k.from_i64(3);
        let m = Monomial::parse("x2^2*x3^2", 4).unwrap();
        let p = Polynomial::term(&k, m.clone(), b.clone());
        assert_eq!(p.coefficient_of(&m), b);
        assert_eq!(p.coefficient_of(&Monomial::var(4, 0)), k.zero());
        let q = parse(&k, 4, "x2*x3");
        assert_eq!(q.degree(), 2);
        assert!(!parse(&k, 4, "x1 + x2*x3").is_linear());
        assert!(parse(&k, 4, "x1 + 3*x4").is_linear());
        assert!(!parse(&k, 4, "x1 + 1").is_linear());
        assert_eq!(parse(&k, 4, "x1 + 5").constant_term(), k.from_i64(5));
        assert_eq!(q.support(), vec![Monomial::parse("x2*x3", 4).unwrap()]);
    }
}
