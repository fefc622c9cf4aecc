//! Seeded random generators for tests, property checks and the regression
//! suite. All draws go through a caller-supplied RNG.

use rand::Rng;

use crate::endo::Endomorphism;
use crate::field::{Elem, Field};
use crate::lingrp::Matrix;
use crate::poly::{Exp, Monomial, Polynomial};

/// Random monomial of total degree in `min_deg..=max_deg` supported on
/// `vars`.
pub fn monomial<R: Rng + ?Sized>(rng: &mut R, n: usize, vars: &[usize], min_deg: u32, max_deg: u32) -> Monomial {
    let d = rng.gen_range(min_deg..=max_deg);
    let mut e: Vec<Exp> = vec![0; n];
    for _ in 0..d {
        e[vars[rng.gen_range(0..vars.len())]] += 1;
    }
    Monomial::new(e)
}

/// Random polynomial with up to `terms` terms of degree at most `max_deg`
/// in `vars`, without constant term unless `allow_constant`.
pub fn polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    vars: &[usize],
    max_deg: u32,
    terms: usize,
    allow_constant: bool,
) -> Polynomial {
    let min = if allow_constant { 0 } else { 1 };
    let count = rng.gen_range(0..=terms);
    let ts: Vec<(Monomial, Elem)> =
        (0..count).map(|_| (monomial(rng, n, vars, min, max_deg), field.random_nonzero(rng))).collect();
    Polynomial::from_terms(field, n, ts).expect("consistent arity")
}

/// Random endomorphism with images of degree at most `max_deg`.
pub fn endomorphism<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, max_deg: u32, terms: usize) -> Endomorphism {
    let vars: Vec<usize> = (0..n).collect();
    let images = (0..n).map(|_| polynomial(rng, field, n, &vars, max_deg, terms, true)).collect();
    Endomorphism::from_images(field, images).expect("consistent arity")
}

/// Random origin-preserving elementary map `x_i -> x_i + P`.
pub fn elementary<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    n: usize,
    i: usize,
    max_deg: u32,
    terms: usize,
) -> Endomorphism {
    let vars: Vec<usize> = (0..n).filter(|&v| v != i).collect();
    let p = polynomial(rng, field, n, &vars, max_deg, terms, false);
    Endomorphism::elementary(i, &p).expect("valid by construction")
}

/// Random invertible linear map.
pub fn linear<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize) -> Endomorphism {
    Endomorphism::linear(&Matrix::random_invertible(field, n, rng)).expect("invertible")
}

/// Random invertible map of a shape [`Endomorphism::invert`] supports.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, max_deg: u32) -> Endomorphism {
    if rng.gen_bool(0.5) {
        linear(rng, field, n)
    } else {
        let i = rng.gen_range(0..n);
        elementary(rng, field, n, i, max_deg, 3)
    }
}
