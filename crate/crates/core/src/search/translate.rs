//! The default generator set and explicit words over it for linear maps,
//! elementary maps and certificates written over other generator sets.
//!
//! Words are assembled from the identities
//! `P_pi ∘ d^m t d^-m ∘ P_pi^-1 = (x_a -> x_a + g^-m x_b)` for a permutation
//! with `pi(0) = a`, `pi(1) = b`, and `L ∘ psi ∘ L^-1` for a monomial
//! matrix `L` carrying `x1, x2, x3` to `x_a, c x_b, x_d`. Higher monomials
//! go through the certificates of [`crate::gens`], translated letter by
//! letter.

use crate::endo::{Endomorphism, GeneratorSet, GeneratorWord};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gens::{build_phi_m_word, psi, Axes, Certificate};
use crate::lingrp::Matrix;
use crate::poly::{Monomial, Polynomial};

/// `s1..s(n-1)` (adjacent transpositions), `d: x1 -> g x1` for the least
/// primitive element `g`, `t: x1 -> x1 + x2` and `psi`, in that order.
pub fn default_generators(field: &Field, n: usize) -> Result<GeneratorSet> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("the default generators need n >= 4, got {n}")));
    }
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    let g = field.primitive_element().ok_or(Error::InfiniteField)?;
    if field.is_one(&g) {
        return Err(Error::FieldTooSmall("no primitive element distinct from 1".into()));
    }
    let mut set = GeneratorSet::new("default", field, n);
    for i in 0..n - 1 {
        set = set.with(&format!("s{}", i + 1), Endomorphism::swap(field, n, i, i + 1)?)?;
    }
    let mut diag = vec![field.one(); n];
    diag[0] = g;
    set = set.with("d", Endomorphism::diagonal(field, &diag)?)?;
    let t = Endomorphism::elementary(0, &Polynomial::var(field, n, 1))?;
    set = set.with("t", t)?;
    set.with("psi", psi(field, n)?)
}

/// Word builder over [`default_generators`].
#[derive(Clone, Debug)]
pub struct DefaultWords {
    gens: GeneratorSet,
    field: Field,
    n: usize,
    /// Powers `g^0 .. g^(q-2)` of the primitive element.
    powers: Vec<Elem>,
}

impl DefaultWords {
    pub fn new(field: &Field, n: usize) -> Result<DefaultWords> {
        let gens = default_generators(field, n)?;
        let g = field.primitive_element().expect("checked by default_generators");
        let q = field.order().expect("finite");
        let mut powers = Vec::with_capacity((q - 1) as usize);
        let mut acc = field.one();
        for _ in 0..q - 1 {
            powers.push(acc.clone());
            acc = field.mul(&acc, &g);
        }
        Ok(DefaultWords { gens, field: field.clone(), n, powers })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    fn log(&self, c: &Elem) -> Result<i64> {
        self.powers.iter().position(|p| p == c).map(|m| m as i64).ok_or(Error::ZeroElement)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.n });
        }
        Ok(())
    }

    fn finish(&self, w: GeneratorWord) -> GeneratorWord {
        w.simplify(Some(&self.gens))
    }

    /// Word for `x_k -> x_{perm[k]}`.
    pub fn perm_word(&self, perm: &[usize]) -> Result<GeneratorWord> {
        // Validates the permutation.
        Endomorphism::permutation(&self.field, perm)?;
        let mut arr = perm.to_vec();
        let mut swaps = Vec::new();
        // Right multiplication by (j j+1) swaps array positions j, j+1.
        for end in (1..arr.len()).rev() {
            for j in 0..end {
                if arr[j] > arr[j + 1] {
                    arr.swap(j, j + 1);
                    swaps.push(j);
                }
            }
        }
        let mut w = GeneratorWord::empty();
        for &j in swaps.iter().rev() {
            w.push(&format!("s{}", j + 1), 1);
        }
        Ok(self.finish(w))
    }

    /// A permutation with `pi(0) = a` and, if given, `pi(1) = b`; the rest
    /// in increasing order.
    fn placing(&self, first: &[usize]) -> Vec<usize> {
        let mut perm = first.to_vec();
        perm.extend((0..self.n).filter(|i| !first.contains(i)));
        perm
    }

    fn conjugate(&self, outer: &GeneratorWord, inner: &GeneratorWord) -> GeneratorWord {
        outer.concat(inner).concat(&outer.inverse())
    }

    /// Word for `x_a -> x_a + c x_b`.
    pub fn transvection_word(&self, a: usize, b: usize, c: &Elem) -> Result<GeneratorWord> {
        self.check_index(a)?;
        self.check_index(b)?;
        if a == b {
            return Err(Error::SelfTarget);
        }
        if self.field.is_zero(c) {
            return Ok(GeneratorWord::empty());
        }
        let m = -self.log(c)?;
        let mut core = GeneratorWord::empty();
        core.push("d", m);
        core.push("t", 1);
        core.push("d", -m);
        let outer = self.perm_word(&self.placing(&[a, b]))?;
        Ok(self.finish(self.conjugate(&outer, &core)))
    }

    /// Word for `x_a -> lambda x_a`.
    pub fn scaling_word(&self, a: usize, lambda: &Elem) -> Result<GeneratorWord> {
        self.check_index(a)?;
        let m = self.log(lambda)?;
        let outer = self.perm_word(&self.placing(&[a]))?;
        Ok(self.finish(self.conjugate(&outer, &GeneratorWord::single("d", m))))
    }

    /// Word for the invertible linear map `x_i -> sum_j a_ij x_j`.
    ///
    /// Gauss-Jordan reduction `E_r ... E_1 A = I` without row swaps gives
    /// `linear(A) = linear(E_r^-1) ∘ ... ∘ linear(E_1^-1)`.
    pub fn linear_word(&self, a: &Matrix) -> Result<GeneratorWord> {
        if a.n() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: a.n() });
        }
        let k = &self.field;
        let n = self.n;
        if a.is_monomial() {
            // x_i -> c_i x_{perm[i]} is P_perm ∘ diag(c).
            let perm: Vec<usize> =
                (0..n).map(|i| (0..n).find(|&j| !k.is_zero(a.get(i, j))).expect("monomial")).collect();
            let mut w = self.perm_word(&perm)?;
            for (i, &j) in perm.iter().enumerate() {
                if !k.is_one(a.get(i, j)) {
                    w.extend(&self.scaling_word(i, a.get(i, j))?);
                }
            }
            return Ok(self.finish(w));
        }
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && !k.is_zero(a.get(i, j)))
            .collect();
        if let [(i, j)] = off[..] {
            if (0..n).all(|l| k.is_one(a.get(l, l))) {
                return self.transvection_word(i, j, a.get(i, j));
            }
        }
        let mut rows: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j).clone()).collect()).collect();
        let mut ops = GeneratorWord::empty();
        let add_row = |rows: &mut Vec<Vec<Elem>>, dst: usize, src: usize, c: &Elem| {
            let src_row = rows[src].clone();
            for (d, s) in rows[dst].iter_mut().zip(&src_row) {
                *d = k.add(d, &k.mul(c, s));
            }
        };
        for col in 0..n {
            if k.is_zero(&rows[col][col]) {
                let r = (col + 1..n).find(|&r| !k.is_zero(&rows[r][col])).ok_or(Error::SingularMatrix)?;
                add_row(&mut rows, col, r, &k.one());
                ops.extend(&self.transvection_word(col, r, &k.one())?);
            }
            let inv = k.inv(&rows[col][col])?;
            for v in rows[col].iter_mut() {
                *v = k.mul(v, &inv);
            }
            ops.extend(&self.scaling_word(col, &inv)?);
            for r in 0..n {
                if r != col && !k.is_zero(&rows[r][col]) {
                    let c = k.neg(&rows[r][col]);
                    add_row(&mut rows, r, col, &c);
                    ops.extend(&self.transvection_word(r, col, &c)?);
                }
            }
        }
        Ok(self.finish(ops.inverse()))
    }

    /// Word for `x_a -> x_a + c x_b x_d` with `a, b, d` distinct.
    pub fn quad_word(&self, a: usize, b: usize, d: usize, c: &Elem) -> Result<GeneratorWord> {
        for i in [a, b, d] {
            self.check_index(i)?;
        }
        if a == b || a == d || b == d {
            return Err(Error::AxesCollision);
        }
        if self.field.is_zero(c) {
            return Ok(GeneratorWord::empty());
        }
        let perm = self.placing(&[a, b, d]);
        let mut m = Matrix::permutation(&self.field, &perm);
        m.set(1, b, c.clone());
        let outer = self.linear_word(&m)?;
        Ok(self.finish(self.conjugate(&outer, &GeneratorWord::single("psi", 1))))
    }

    /// Word for `x_a -> x_a + c M`, or `None` when the construction needs a
    /// generator outside `supp(M) ∪ {a}` and there is none.
    pub fn monomial_word(&self, a: usize, m: &Monomial, c: &Elem) -> Result<Option<GeneratorWord>> {
        self.check_index(a)?;
        if m.nvars() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: m.nvars() });
        }
        if m.is_one() {
            return Err(Error::ConstantMonomial);
        }
        if m.involves(a) {
            return Err(Error::InvolvesTarget);
        }
        if self.field.is_zero(c) {
            return Ok(Some(GeneratorWord::empty()));
        }
        let support = m.support();
        if support.len() == 1 {
            let b = support[0];
            let k = m.get(b);
            if k == 1 {
                return self.transvection_word(a, b, c).map(Some);
            }
            let y = (0..self.n).find(|&i| i != a && i != b).expect("n >= 4");
            let cert = build_phi_m_word(&self.field, self.n, c, k as u32, Axes::new(b, y, a))?;
            return self.translate_raw(&cert);
        }
        if m.degree() == 2 {
            return self.quad_word(a, support[0], support[1], c).map(Some);
        }
        let Some(u) = (0..self.n).find(|&i| i != a && !m.involves(i)) else {
            return Ok(None);
        };
        // M = x_v^k M' with M' nonconstant and free of x_a, x_u, x_v. The
        // relabelled composite alpha^-1 theta^-1 psi_r theta alpha adds
        // x_u x_v + x_v^k M' - x_v^(k+1) - x_u M' to x_a, and the relabelled
        // commutator adds -x_u M'.
        let v = support[0];
        let k = m.get(v);
        let mp = m.with_exp(v, 0);
        let one = self.field.one();
        let psi_r = self.quad_word(a, u, v, &one)?;
        let Some(alpha) = self.monomial_word(u, &Monomial::var_pow(self.n, v, k), &one)? else {
            return Ok(None);
        };
        let Some(theta) = self.monomial_word(v, &mp, &one)? else {
            return Ok(None);
        };
        let Some(top) = self.monomial_word(a, &Monomial::var_pow(self.n, v, k + 1), &one)? else {
            return Ok(None);
        };
        let composite = alpha.inverse().concat(&theta.inverse()).concat(&psi_r).concat(&theta).concat(&alpha);
        let phi1_inv = theta.inverse().concat(&psi_r.inverse()).concat(&theta).concat(&psi_r);
        let unit = composite.concat(&phi1_inv).concat(&top).concat(&psi_r.inverse());
        if self.field.is_one(c) {
            return Ok(Some(self.finish(unit)));
        }
        // D: x_a -> c^-1 x_a turns x_a += M into x_a += c M.
        let dw = self.scaling_word(a, &self.field.inv(c)?)?;
        Ok(Some(self.finish(self.conjugate(&dw, &unit))))
    }

    fn elementary_raw(&self, a: usize, p: &Polynomial) -> Result<Option<GeneratorWord>> {
        let mut w = GeneratorWord::empty();
        // The parts of an elementary map commute, so their order is free.
        for (m, c) in p.terms() {
            match self.monomial_word(a, m, c)? {
                Some(part) => w.extend(&part),
                None => return Ok(None),
            }
        }
        Ok(Some(self.finish(w)))
    }

    fn map_raw(&self, e: &Endomorphism) -> Result<Option<GeneratorWord>> {
        if e.nvars() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: e.nvars() });
        }
        if let Some(a) = e.as_matrix() {
            return self.linear_word(&a).map(Some);
        }
        match e.as_elementary() {
            Some((i, p)) => self.elementary_raw(i, &p),
            None => Err(Error::UnsupportedShape),
        }
    }

    fn translate_raw(&self, cert: &Certificate) -> Result<Option<GeneratorWord>> {
        let mut out = GeneratorWord::empty();
        for l in cert.word.letters() {
            let g = cert.generators.get(&l.tag).ok_or_else(|| Error::UnknownTag(l.tag.clone()))?;
            let Some(w) = self.map_raw(&g.forward)? else {
                return Ok(None);
            };
            let step = if l.exp >= 0 { w } else { w.inverse() };
            for _ in 0..l.exp.unsigned_abs() {
                out.extend(&step);
            }
        }
        Ok(Some(self.finish(out)))
    }

    fn verified(&self, w: Option<GeneratorWord>, target: &Endomorphism) -> Result<Option<GeneratorWord>> {
        if let Some(w) = &w {
            if self.gens.eval(w)? != *target {
                return Err(Error::Internal(format!("translated word does not evaluate to its target: {w}")));
            }
        }
        Ok(w)
    }

    /// Word for a linear or elementary map, checked by evaluation.
    pub fn word_for(&self, e: &Endomorphism) -> Result<Option<GeneratorWord>> {
        let w = self.map_raw(e)?;
        self.verified(w, e)
    }

    /// Rewrites a certificate over the default generators, translating
    /// each of its generators by shape. Checked by evaluation.
    pub fn translate(&self, cert: &Certificate) -> Result<Option<GeneratorWord>> {
        if cert.generators.nvars() != self.n {
            return Err(Error::ArityMismatch { expected: self.n, found: cert.generators.nvars() });
        }
        let w = self.translate_raw(cert)?;
        let target = cert.eval()?;
        self.verified(w, &target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gens::{good_special_composite, phi_ijk_certificate};
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn words(p: u64, n: usize) -> DefaultWords {
        DefaultWords::new(&Field::prime(p).unwrap(), n).unwrap()
    }

    #[test]
    fn generator_counts() {
        let k = Field::prime(3).unwrap();
        let g = default_generators(&k, 4).unwrap();
        assert_eq!(g.tags(), vec!["s1", "s2", "s3", "d", "t", "psi"]);
        assert!(default_generators(&k, 3).is_err());
        assert_eq!(default_generators(&Field::rationals(), 4).unwrap_err(), Error::InfiniteField);
    }

    #[test]
    fn permutations() {
        let w = words(5, 5);
        let perms: [&[usize]; 4] = [&[0, 1, 2, 3, 4], &[1, 0, 2, 3, 4], &[4, 3, 2, 1, 0], &[2, 0, 4, 1, 3]];
        for p in perms {
            let word = w.perm_word(p).unwrap();
            assert_eq!(w.generators().eval(&word).unwrap(), Endomorphism::permutation(&w.field, p).unwrap());
        }
    }

    #[test]
    fn linear_maps_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3, 5, 7] {
            let w = words(p, 4);
            for _ in 0..20 {
                let e = random::linear(&mut rng, &w.field, 4);
                assert!(w.word_for(&e).unwrap().is_some());
            }
        }
    }

    #[test]
    fn elementary_maps_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w = words(5, 4);
        for _ in 0..20 {
            let i = rand::Rng::gen_range(&mut rng, 0..4);
            let e = random::elementary(&mut rng, &w.field, 4, i, 3, 2);
            let Some(word) = w.word_for(&e).unwrap() else {
                // Only monomials in all three other generators lack a free one.
                continue;
            };
            assert_eq!(w.generators().eval(&word).unwrap(), e);
        }
    }

    #[test]
    fn full_support_has_no_word() {
        let w = words(3, 4);
        let m = Monomial::parse("x2*x3*x4", 4).unwrap();
        assert_eq!(w.monomial_word(0, &m, &w.field.one()).unwrap(), None);
    }

    #[test]
    fn certificates_translate() {
        let w = words(3, 4);
        let k = w.field.clone();
        let cert = phi_ijk_certificate(&k, 4, 0, 1, 2, &k.one()).unwrap();
        let word = w.translate(&cert).unwrap().unwrap();
        assert_eq!(word.length(), 16, "{word}");
        let (cert, expected) = good_special_composite(&k, 1, &Monomial::parse("x4", 4).unwrap()).unwrap();
        assert_eq!(w.generators().eval(&w.translate(&cert).unwrap().unwrap()).unwrap(), expected);
    }
}
