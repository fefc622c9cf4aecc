//! Endomorphisms of `K[x1..xn]` as tuples of generator images.
//!
//! Composition convention: `(f ∘ g)(x_i) = f(g(x_i))`, computed by
//! substituting the images of `f` into `g(x_i)`. In a step-by-step trace of
//! `f1 ∘ f2 ∘ ... ∘ fk` acting on a generator, `fk` acts first.

mod format;
mod word;

use std::fmt;

pub use word::{eval_word, Generator, GeneratorSet, GeneratorWord, Letter};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::lingrp::Matrix;
use crate::poly::{Monomial, Polynomial, DEFAULT_DEGREE_CAP};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    field: Field,
    images: Vec<Polynomial>,
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().enumerate().map(|(i, p)| format!("x{} -> {}", i + 1, p)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Endomorphism {
    pub fn identity(field: &Field, nvars: usize) -> Endomorphism {
        Endomorphism { field: field.clone(), images: (0..nvars).map(|i| Polynomial::var(field, nvars, i)).collect() }
    }

    pub fn from_images(field: &Field, images: Vec<Polynomial>) -> Result<Endomorphism> {
        let n = images.len();
        for p in &images {
            if p.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: p.nvars() });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Endomorphism { field: field.clone(), images })
    }

    /// Parses one image per generator in the polynomial text format.
    pub fn parse_images(field: &Field, images: &[&str]) -> Result<Endomorphism> {
        let n = images.len();
        let polys = images.iter().map(|s| Polynomial::parse(field, n, s)).collect::<Result<Vec<_>>>()?;
        Endomorphism::from_images(field, polys)
    }

    /// `x_i -> x_i + P`, all other generators fixed. `P` must not involve
    /// `x_i`; with `origin_preserving` it must also have no constant term.
    pub fn elementary_with(i: usize, p: &Polynomial, origin_preserving: bool) -> Result<Endomorphism> {
        let (field, n) = (p.field(), p.nvars());
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, nvars: n });
        }
        if p.involves(i) {
            return Err(Error::SelfDependentP(i));
        }
        if origin_preserving && !field.is_zero(&p.constant_term()) {
            return Err(Error::ConstantTermPresent);
        }
        let mut e = Endomorphism::identity(field, n);
        e.images[i] = e.images[i].add(p)?;
        Ok(e)
    }

    /// Origin-preserving elementary map `x_i -> x_i + P`.
    pub fn elementary(i: usize, p: &Polynomial) -> Result<Endomorphism> {
        Endomorphism::elementary_with(i, p, true)
    }

    /// `x_i -> sum_j a_ij x_j`.
    pub fn linear(a: &Matrix) -> Result<Endomorphism> {
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(Endomorphism::linear_unchecked(a))
    }

    pub(crate) fn linear_unchecked(a: &Matrix) -> Endomorphism {
        let (field, n) = (a.field(), a.n());
        let images = (0..n)
            .map(|i| {
                let terms = (0..n).map(|j| (Monomial::var(n, j), a.get(i, j).clone()));
                Polynomial::from_terms(field, n, terms).expect("consistent arity")
            })
            .collect();
        Endomorphism { field: field.clone(), images }
    }

    /// `x_i -> lambdas[i] x_i`.
    pub fn diagonal(field: &Field, lambdas: &[Elem]) -> Result<Endomorphism> {
        if lambdas.iter().any(|l| field.is_zero(l)) {
            return Err(Error::ZeroEntry);
        }
        Ok(Endomorphism::linear_unchecked(&Matrix::diagonal(field, lambdas)))
    }

    /// Renaming `x_i -> x_{perm[i]}`.
    pub fn permutation(field: &Field, perm: &[usize]) -> Result<Endomorphism> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &j in perm {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(Endomorphism::linear_unchecked(&Matrix::permutation(field, perm)))
    }

    /// Exchanges `x_a` and `x_b`.
    pub fn swap(field: &Field, nvars: usize, a: usize, b: usize) -> Result<Endomorphism> {
        if a >= nvars || b >= nvars {
            return Err(Error::IndexOutOfRange { index: a.max(b), nvars });
        }
        let mut perm: Vec<usize> = (0..nvars).collect();
        perm.swap(a, b);
        Endomorphism::permutation(field, &perm)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn into_images(self) -> Vec<Polynomial> {
        self.images
    }

    /// Maximum total degree over the images.
    pub fn degree(&self) -> u32 {
        self.images.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        let n = self.nvars();
        self.images
            .iter()
            .enumerate()
            .all(|(i, p)| p.as_term().is_some_and(|(m, c)| *m == Monomial::var(n, i) && self.field.is_one(c)))
    }

    pub fn is_origin_preserving(&self) -> bool {
        self.images.iter().all(|p| self.field.is_zero(&p.constant_term()))
    }

    pub fn compose(&self, g: &Endomorphism) -> Result<Endomorphism> {
        self.compose_capped(g, DEFAULT_DEGREE_CAP)
    }

    /// `self ∘ g`, failing if any image would exceed `cap` in total degree.
    pub fn compose_capped(&self, g: &Endomorphism, cap: u32) -> Result<Endomorphism> {
        if self.nvars() != g.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), found: g.nvars() });
        }
        if self.field != g.field {
            return Err(Error::FieldMismatch);
        }
        let images = g.images.iter().map(|p| p.substitute(&self.images, cap)).collect::<Result<Vec<_>>>()?;
        Ok(Endomorphism { field: self.field.clone(), images })
    }

    /// `h ∘ self ∘ h_inv`.
    pub fn conjugate_by(&self, h: &Endomorphism, h_inv: &Endomorphism) -> Result<Endomorphism> {
        h.compose(&self.compose(h_inv)?)
    }

    /// Applies the map to a polynomial, i.e. substitutes the images.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.images, DEFAULT_DEGREE_CAP)
    }

    /// `Some(A)` with `x_i -> sum_j a_ij x_j` when every image is linear
    /// homogeneous.
    pub fn as_matrix(&self) -> Option<Matrix> {
        let n = self.nvars();
        let mut a = Matrix::zero(&self.field, n);
        for (i, p) in self.images.iter().enumerate() {
            if !p.is_linear() {
                return None;
            }
            for (m, c) in p.terms() {
                a.set(i, m.support()[0], c.clone());
            }
        }
        Some(a)
    }

    pub fn is_linear(&self) -> bool {
        self.images.iter().all(|p| p.is_linear())
    }

    /// The diagonal entries when the map is `x_i -> lambda_i x_i`.
    pub fn as_torus(&self) -> Option<Vec<Elem>> {
        let n = self.nvars();
        self.images
            .iter()
            .enumerate()
            .map(|(i, p)| match p.as_term() {
                Some((m, c)) if *m == Monomial::var(n, i) => Some(c.clone()),
                _ => None,
            })
            .collect()
    }

    /// `Some((i, P))` for a non-identity map `x_i -> x_i + P` fixing every
    /// other generator, with `P` free of `x_i`.
    pub fn as_elementary(&self) -> Option<(usize, Polynomial)> {
        let n = self.nvars();
        let mut moved = None;
        for (i, p) in self.images.iter().enumerate() {
            let xi = Polynomial::var(&self.field, n, i);
            if *p == xi {
                continue;
            }
            if moved.is_some() {
                return None;
            }
            let rest = p.sub(&xi).expect("same ring");
            if rest.involves(i) {
                return None;
            }
            moved = Some((i, rest));
        }
        moved
    }

    /// Exact inverse of an elementary, linear or torus map.
    pub fn invert(&self) -> Result<Endomorphism> {
        if self.is_identity() {
            return Ok(self.clone());
        }
        if let Some((i, p)) = self.as_elementary() {
            let mut e = Endomorphism::identity(&self.field, self.nvars());
            e.images[i] = e.images[i].sub(&p)?;
            return Ok(e);
        }
        if let Some(a) = self.as_matrix() {
            return Ok(Endomorphism::linear_unchecked(&a.inverse()?));
        }
        Err(Error::UnsupportedShape)
    }

    /// One elementary map per term of `P`; the pieces commute pairwise and
    /// compose to `self` in any order. The identity splits into nothing.
    pub fn split_elementary(&self) -> Result<Vec<Endomorphism>> {
        if self.is_identity() {
            return Ok(Vec::new());
        }
        let (i, p) = self.as_elementary().ok_or(Error::NotElementary)?;
        p.monomial_parts().iter().map(|part| Endomorphism::elementary_with(i, part, false)).collect()
    }

    /// Canonical byte encoding; equal keys iff equal maps over one field.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 * self.images.len());
        self.write_key(&mut out);
        out
    }

    pub fn write_key(&self, out: &mut Vec<u8>) {
        for p in &self.images {
            p.write_key(out);
        }
    }
}

/// True iff `f ∘ g` and `g ∘ f` are both the identity.
pub fn verify_inverse_pair(f: &Endomorphism, g: &Endomorphism) -> Result<bool> {
    Ok(f.compose(g)?.is_identity() && g.compose(f)?.is_identity())
}
