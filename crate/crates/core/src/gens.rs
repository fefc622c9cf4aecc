//! Named automorphisms and word certificates for the generator
//! constructions: the cubic-and-higher elementary maps built from a
//! quadratic one and linear maps, the composite and commutator identities
//! of the special good case, the conjugation `δ` of the general good case
//! and the triangular reduction of bad monomials.
//!
//! Generator indices are zero-based throughout (`0` is `x1`).

use serde::Serialize;

use crate::endo::{Endomorphism, GeneratorSet, GeneratorWord};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Scalar};
use crate::poly::{Monomial, Polynomial};

/// A word together with the generator set it is written over.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub generators: GeneratorSet,
    pub word: GeneratorWord,
}

impl Certificate {
    pub fn eval(&self) -> Result<Endomorphism> {
        self.generators.eval(&self.word)
    }

    /// Tag and generator-image table for reports.
    pub fn generator_table(&self) -> Vec<GeneratorRecord> {
        self.generators
            .generators()
            .iter()
            .map(|g| GeneratorRecord {
                tag: g.tag.clone(),
                images: g.forward.images().iter().map(|p| p.render()).collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub tag: String,
    pub images: Vec<String>,
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, nvars: n });
    }
    Ok(())
}

/// `x1 -> x1 + x2 x3`.
pub fn psi(field: &Field, n: usize) -> Result<Endomorphism> {
    psi_i(field, 0, n)
}

/// `x_i -> x_i + x_{i+1} x_{i+2}` with indices taken cyclically.
pub fn psi_i(field: &Field, i: usize, n: usize) -> Result<Endomorphism> {
    check_index(i, n)?;
    if n < 3 {
        return Err(Error::IndexOutOfRange { index: 2, nvars: n });
    }
    let m = Monomial::var(n, (i + 1) % n).mul(&Monomial::var(n, (i + 2) % n))?;
    Endomorphism::elementary(i, &Polynomial::term(field, m, field.one()))
}

/// `x_i -> x_i + beta x_j^k`.
pub fn phi_ijk(field: &Field, n: usize, i: usize, j: usize, k: u16, beta: &Elem) -> Result<Endomorphism> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::SelfTarget);
    }
    if k == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    Endomorphism::elementary(i, &Polynomial::term(field, Monomial::var_pow(n, j, k), beta.clone()))
}

/// Three distinct generators `(x, y, z)` for the cubic-and-higher
/// construction: the result adds `b x^m` to `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axes {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Axes {
    pub fn new(x: usize, y: usize, z: usize) -> Axes {
        Axes { x, y, z }
    }

    fn check(&self, n: usize) -> Result<()> {
        for i in [self.x, self.y, self.z] {
            check_index(i, n)?;
        }
        if self.x == self.y || self.y == self.z || self.x == self.z {
            return Err(Error::AxesCollision);
        }
        Ok(())
    }
}

/// Generators `tv: z -> z + b x`, `psi: z -> z + x y` and `swap: y <-> z`.
fn phi_m_generators(field: &Field, n: usize, b: &Elem, axes: Axes) -> Result<GeneratorSet> {
    axes.check(n)?;
    let tv = Endomorphism::elementary(axes.z, &Polynomial::term(field, Monomial::var(n, axes.x), b.clone()))?;
    let quad = Monomial::var(n, axes.x).mul(&Monomial::var(n, axes.y))?;
    let psi = Endomorphism::elementary(axes.z, &Polynomial::term(field, quad, field.one()))?;
    let swap = Endomorphism::swap(field, n, axes.y, axes.z)?;
    GeneratorSet::new("phi_m", field, n).with("tv", tv)?.with("psi", psi)?.with("swap", swap)
}

fn phi_m_letters(m: u32) -> GeneratorWord {
    if m == 1 {
        return GeneratorWord::single("tv", 1);
    }
    // psi^-1 ∘ theta ∘ psi ∘ theta^-1 with theta = swap ∘ W(m-1) ∘ swap.
    let prev = phi_m_letters(m - 1);
    let mut w = GeneratorWord::single("psi", -1);
    w.push("swap", 1);
    w.extend(&prev);
    w.push("swap", 1);
    w.push("psi", 1);
    w.push("swap", 1);
    w.extend(&prev.inverse());
    w.push("swap", 1);
    w
}

/// Word over `{tv, psi, swap}` evaluating to `z -> z + b x^m`.
pub fn build_phi_m_word(field: &Field, n: usize, b: &Elem, m: u32, axes: Axes) -> Result<Certificate> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let generators = phi_m_generators(field, n, b, axes)?;
    Ok(Certificate { generators, word: phi_m_letters(m) })
}

/// The intermediate `theta ∘ psi` of the recursion step for `m >= 2`,
/// mapping `y -> y + b x^(m-1)` and `z -> z + x y + b x^m`.
pub fn phi_m_intermediate(field: &Field, n: usize, b: &Elem, m: u32, axes: Axes) -> Result<Certificate> {
    if m < 2 {
        return Err(Error::InvalidArgument("the recursion step needs m >= 2".into()));
    }
    let generators = phi_m_generators(field, n, b, axes)?;
    let mut word = GeneratorWord::single("swap", 1);
    word.extend(&phi_m_letters(m - 1));
    word.push("swap", 1);
    word.push("psi", 1);
    Ok(Certificate { generators, word })
}

/// Certificate for `x_i -> x_i + beta x_j^k` in terms of a quadratic map
/// and linear maps, using the least free index as the auxiliary axis.
pub fn phi_ijk_certificate(field: &Field, n: usize, i: usize, j: usize, k: u16, beta: &Elem) -> Result<Certificate> {
    phi_ijk(field, n, i, j, k, beta)?;
    let y = (0..n).find(|&t| t != i && t != j).ok_or(Error::IndexOutOfRange { index: 2, nvars: n })?;
    build_phi_m_word(field, n, beta, k as u32, Axes::new(j, y, i))
}

/// Certificate for `psi_i` as `shift^i ∘ psi ∘ shift^-i`, where
/// `shift: x_l -> x_{l+1}` cyclically.
pub fn psi_i_certificate(field: &Field, i: usize, n: usize) -> Result<Certificate> {
    check_index(i, n)?;
    let perm: Vec<usize> = (0..n).map(|l| (l + 1) % n).collect();
    let generators = GeneratorSet::new("cyclic", field, n)
        .with("psi", psi(field, n)?)?
        .with("shift", Endomorphism::permutation(field, &perm)?)?;
    let mut word = GeneratorWord::empty();
    if i > 0 {
        word.push("shift", i as i64);
    }
    word.push("psi", 1);
    if i > 0 {
        word.push("shift", -(i as i64));
    }
    Ok(Certificate { generators, word })
}

fn check_support(mp: &Monomial, n: usize, first_allowed: usize) -> Result<()> {
    if mp.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: mp.nvars() });
    }
    if mp.is_one() {
        return Err(Error::BadMonomialSupport("M' must be nonconstant".into()));
    }
    if let Some(&bad) = mp.support().iter().find(|&&i| i < first_allowed) {
        return Err(Error::BadMonomialSupport(format!("M' involves x{}", bad + 1)));
    }
    Ok(())
}

fn unit_term(field: &Field, m: Monomial) -> Polynomial {
    Polynomial::term(field, m, field.one())
}

/// Generators `psi`, `alpha: x2 -> x2 + x3^k` and `theta: x3 -> x3 + M'`.
fn special_generators(field: &Field, k: u16, mp: &Monomial) -> Result<GeneratorSet> {
    let n = mp.nvars();
    let alpha = Endomorphism::elementary(1, &unit_term(field, Monomial::var_pow(n, 2, k)))?;
    let theta = Endomorphism::elementary(2, &unit_term(field, mp.clone()))?;
    GeneratorSet::new("good_special", field, n).with("psi", psi(field, n)?)?.with("alpha", alpha)?.with("theta", theta)
}

/// `alpha^-1 ∘ theta^-1 ∘ psi ∘ theta ∘ alpha` and its closed form
/// `x1 -> x1 + x2 x3 + x3^k M' - x3^(k+1) - x2 M'`. `M'` is a nonconstant
/// monomial in `x4..xn`.
pub fn good_special_composite(field: &Field, k: u16, mp: &Monomial) -> Result<(Certificate, Endomorphism)> {
    let n = mp.nvars();
    if n < 4 {
        return Err(Error::BadMonomialSupport("needs at least four generators".into()));
    }
    check_support(mp, n, 3)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let generators = special_generators(field, k, mp)?;
    let word = GeneratorWord::parse("alpha^-1 theta^-1 psi theta alpha")?;
    let x2 = Monomial::var(n, 1);
    let x3 = Monomial::var(n, 2);
    let minus = field.neg(&field.one());
    let added = Polynomial::from_terms(
        field,
        n,
        [
            (x2.mul(&x3)?, field.one()),
            (Monomial::var_pow(n, 2, k).mul(mp)?, field.one()),
            (Monomial::var_pow(n, 2, k + 1), minus.clone()),
            (x2.mul(mp)?, minus),
        ],
    )?;
    let expected = Endomorphism::elementary(0, &added)?;
    Ok((Certificate { generators, word }, expected))
}

/// `psi^-1 ∘ theta^-1 ∘ psi ∘ theta` and its closed form `x1 -> x1 - x2 M'`.
pub fn commutator_phi1(field: &Field, mp: &Monomial) -> Result<(Certificate, Endomorphism)> {
    let n = mp.nvars();
    if n < 4 {
        return Err(Error::BadMonomialSupport("needs at least four generators".into()));
    }
    check_support(mp, n, 3)?;
    let generators = special_generators(field, 1, mp)?;
    let word = GeneratorWord::parse("psi^-1 theta^-1 psi theta")?;
    let minus = field.neg(&field.one());
    let expected = Endomorphism::elementary(0, &Polynomial::term(field, Monomial::var(n, 1).mul(mp)?, minus))?;
    Ok((Certificate { generators, word }, expected))
}

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub certificate: Certificate,
    pub delta: Endomorphism,
    /// Coefficient of `x2^k M'` in the image of `x1`.
    pub coeff: Scalar,
}

/// `delta = phi1 ∘ alpha ∘ phi1^-1` with `alpha: x1 -> x1 + x2^(k+1)` and
/// `phi1: x2 -> x2 + M'`, `M'` a nonconstant monomial in `x3..xn`. Then
/// `delta` maps `x1 -> x1 + (x2 + M')^(k+1)`.
pub fn delta_conjugation(field: &Field, k: u16, mp: &Monomial) -> Result<DeltaResult> {
    let n = mp.nvars();
    if n < 3 {
        return Err(Error::BadMonomialSupport("needs at least three generators".into()));
    }
    check_support(mp, n, 2)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let kp1 = k.checked_add(1).ok_or(Error::ExponentOverflow)?;
    let alpha = Endomorphism::elementary(0, &unit_term(field, Monomial::var_pow(n, 1, kp1)))?;
    let phi1 = Endomorphism::elementary(1, &unit_term(field, mp.clone()))?;
    let generators = GeneratorSet::new("delta", field, n).with("alpha", alpha)?.with("phi1", phi1)?;
    let word = GeneratorWord::parse("phi1 alpha phi1^-1")?;
    let certificate = Certificate { generators, word };
    let delta = certificate.eval()?;
    let target = Monomial::var_pow(n, 1, k).mul(mp)?;
    let coeff = delta.image(0).coefficient_scalar(&target);
    Ok(DeltaResult { certificate, delta, coeff })
}

#[derive(Clone, Debug)]
pub struct BadToGood {
    pub conjugated: Endomorphism,
    /// The monomial with the pivot exponent lowered and the partner raised.
    pub good_monomial: Monomial,
    pub good_coeff: Scalar,
    pub pivot: (usize, usize),
    pub lambda_map: Endomorphism,
}

/// Default pivot for a bad monomial: the least `i` with positive exponent
/// and `j = i + 1` taken cyclically within `x2..xn`.
pub fn default_pivot(m: &Monomial) -> Option<(usize, usize)> {
    let n = m.nvars();
    let i = *m.support().first()?;
    let j = if i + 1 < n { i + 1 } else { 1 };
    Some((i, j))
}

/// `Lambda ∘ phi ∘ Lambda^-1` with `Lambda: x_i -> x_i + lambda x_j`, for
/// `phi: x1 -> x1 + b M` with `M` bad.
pub fn bad_to_good(phi: &Endomorphism, lambda: &Elem, pivot: Option<(usize, usize)>) -> Result<BadToGood> {
    let field = phi.field();
    let n = phi.nvars();
    let (target, added) = phi.as_elementary().ok_or(Error::NotElementary)?;
    if target != 0 {
        return Err(Error::NotElementary);
    }
    let (m, _b) = added.as_term().ok_or(Error::NotElementary)?;
    let m = m.clone();
    match classify_monomial(&m, field.characteristic())?.verdict {
        Verdict::Bad => {}
        Verdict::Good { .. } => return Err(Error::NotBad),
    }
    let (i, j) = match pivot {
        Some(p) => p,
        None => default_pivot(&m).expect("nonconstant"),
    };
    check_index(i, n)?;
    check_index(j, n)?;
    if i == 0 || j == 0 || i == j {
        return Err(Error::InvalidArgument(format!(
            "pivot ({}, {}) must use two distinct generators among x2..xn",
            i + 1,
            j + 1
        )));
    }
    if m.get(i) == 0 {
        return Err(Error::ZeroPivotExponent);
    }
    let lambda_map = Endomorphism::elementary(i, &Polynomial::term(field, Monomial::var(n, j), lambda.clone()))?;
    let conjugated = phi.conjugate_by(&lambda_map, &lambda_map.invert()?)?;
    let good_monomial = m.with_exp(i, m.get(i) - 1).mul(&Monomial::var(n, j))?;
    let good_coeff = conjugated.image(0).coefficient_scalar(&good_monomial);
    Ok(BadToGood { conjugated, good_monomial, good_coeff, pivot: (i, j), lambda_map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// `witness` is the zero-based generator index and `exponent` its power.
    Good {
        witness: usize,
        exponent: u16,
    },
    Bad,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialClass {
    pub verdict: Verdict,
    pub monomial: Monomial,
    pub characteristic: u64,
}

impl MonomialClass {
    pub fn is_good(&self) -> bool {
        matches!(self.verdict, Verdict::Good { .. })
    }
}

/// Good when some positive exponent `k` has `k + 1` nonzero mod `p`, with
/// the least such index as witness; Bad otherwise. `p = 0` means
/// characteristic zero, where every nonconstant monomial is good.
pub fn classify_monomial(m: &Monomial, p: u64) -> Result<MonomialClass> {
    if p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if m.is_one() {
        return Err(Error::ConstantMonomial);
    }
    if m.nvars() > 0 && m.involves(0) {
        return Err(Error::InvolvesTarget);
    }
    let witness = m.exps().iter().enumerate().find(|&(_, &e)| e > 0 && (p == 0 || !(e as u64 + 1).is_multiple_of(p)));
    let verdict = match witness {
        Some((i, &e)) => Verdict::Good { witness: i, exponent: e },
        None => Verdict::Bad,
    };
    Ok(MonomialClass { verdict, monomial: m.clone(), characteristic: p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(k: &Field, n: usize, s: &str) -> Polynomial {
        Polynomial::parse(k, n, s).unwrap()
    }

    fn mono(s: &str, n: usize) -> Monomial {
        Monomial::parse(s, n).unwrap()
    }

    #[test]
    fn named_maps() {
        let k = f(5);
        assert_eq!(psi(&k, 4).unwrap().image(0), &poly(&k, 4, "x1 + x2*x3"));
        assert_eq!(psi_i(&k, 3, 4).unwrap().image(3), &poly(&k, 4, "x4 + x1*x2"));
        let m1 = k.from_i64(-1);
        assert_eq!(phi_ijk(&k, 4, 0, 2, 2, &m1).unwrap().image(0), &poly(&k, 4, "x1 - x3^2"));
        assert_eq!(phi_ijk(&k, 4, 1, 1, 2, &m1).unwrap_err(), Error::SelfTarget);
        assert!(matches!(phi_ijk(&k, 4, 0, 4, 2, &m1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn phi_m_small_cases() {
        let k = f(5);
        let one = k.one();
        let axes = Axes::new(1, 2, 0);
        let c1 = build_phi_m_word(&k, 4, &one, 1, axes).unwrap();
        assert_eq!(c1.word.render(), "tv");
        let c2 = build_phi_m_word(&k, 4, &one, 2, axes).unwrap();
        assert_eq!(c2.word.length(), 8);
        assert_eq!(c2.eval().unwrap().image(0), &poly(&k, 4, "x1 + x2^2"));
        let mid = phi_m_intermediate(&k, 4, &one, 2, axes).unwrap().eval().unwrap();
        assert_eq!(mid.image(0), &poly(&k, 4, "x1 + x2*x3 + x2^2"));
        assert_eq!(mid.image(2), &poly(&k, 4, "x3 + x2"));
        assert_eq!(build_phi_m_word(&k, 4, &one, 2, Axes::new(1, 1, 0)).unwrap_err(), Error::AxesCollision);
    }

    #[test]
    fn phi_m_seven_over_f3() {
        let k = f(3);
        let b = k.from_i64(2);
        let cert = build_phi_m_word(&k, 4, &b, 7, Axes::new(0, 1, 2)).unwrap();
        assert_eq!(cert.eval().unwrap(), phi_ijk(&k, 4, 2, 0, 7, &b).unwrap());
    }

    #[test]
    fn cyclic_psi_certificate() {
        let k = f(3);
        for i in 0..5 {
            let c = psi_i_certificate(&k, i, 5).unwrap();
            assert_eq!(c.eval().unwrap(), psi_i(&k, i, 5).unwrap());
        }
    }

    #[test]
    fn composite_examples() {
        let k = f(5);
        let (cert, expected) = good_special_composite(&k, 1, &mono("x4", 4)).unwrap();
        let got = cert.eval().unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.image(0), &poly(&k, 4, "x1 + x2*x3 + x3*x4 - x3^2 - x2*x4"));
        assert_eq!(got.image(1), &poly(&k, 4, "x2"));
        let (cert, expected) = good_special_composite(&k, 2, &mono("x4*x5", 5)).unwrap();
        assert_eq!(cert.eval().unwrap(), expected);
        assert!(expected.image(0).terms().iter().any(|(m, _)| *m == mono("x3^2*x4*x5", 5)));
        assert!(matches!(good_special_composite(&k, 1, &mono("x3", 4)), Err(Error::BadMonomialSupport(_))));
    }

    #[test]
    fn commutator_examples() {
        let k = f(3);
        let (cert, expected) = commutator_phi1(&k, &mono("x4^2", 4)).unwrap();
        assert_eq!(cert.eval().unwrap(), expected);
        assert_eq!(expected.image(0), &poly(&k, 4, "x1 - x2*x4^2"));
        assert!(matches!(commutator_phi1(&k, &Monomial::one(4)), Err(Error::BadMonomialSupport(_))));
    }

    #[test]
    fn delta_examples() {
        let d = delta_conjugation(&f(3), 1, &mono("x4", 4)).unwrap();
        assert_eq!(d.coeff, Scalar::from_i64(&f(3), 2));
        assert_eq!(delta_conjugation(&f(3), 2, &mono("x4", 4)).unwrap().coeff, Scalar::from_i64(&f(3), 0));
        assert_eq!(delta_conjugation(&f(5), 1, &mono("x3*x4", 4)).unwrap().coeff, Scalar::from_i64(&f(5), 2));
        let d = delta_conjugation(&f(5), 2, &mono("x3", 4)).unwrap();
        assert_eq!(d.delta.image(0), &poly(&f(5), 4, "x1 + x2^3 + 3*x2^2*x3 + 3*x2*x3^2 + x3^3"));
    }

    #[test]
    fn bad_to_good_examples() {
        let k3 = f(3);
        let phi = Endomorphism::elementary(0, &poly(&k3, 4, "x2^2*x3^2")).unwrap();
        let r = bad_to_good(&phi, &k3.one(), Some((1, 2))).unwrap();
        assert_eq!(r.good_monomial, mono("x2*x3^3", 4));
        assert_eq!(r.good_coeff, Scalar::from_i64(&k3, -1));
        assert_eq!(bad_to_good(&phi, &k3.zero(), None).unwrap().conjugated, phi);
        let k5 = f(5);
        let phi = Endomorphism::elementary(0, &poly(&k5, 4, "2*x2^4*x3^4")).unwrap();
        let r = bad_to_good(&phi, &k5.one(), None).unwrap();
        assert_eq!(r.good_coeff, Scalar::from_i64(&k5, 3));
        let good = Endomorphism::elementary(0, &poly(&k5, 4, "x2*x3")).unwrap();
        assert_eq!(bad_to_good(&good, &k5.one(), None).unwrap_err(), Error::NotBad);
        let phi = Endomorphism::elementary(0, &poly(&k3, 4, "x2^2")).unwrap();
        assert_eq!(bad_to_good(&phi, &k3.one(), Some((2, 1))).unwrap_err(), Error::ZeroPivotExponent);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_monomial(&mono("x2^2*x3^2", 4), 3).unwrap().verdict, Verdict::Bad);
        assert_eq!(
            classify_monomial(&mono("x2^2*x3", 4), 3).unwrap().verdict,
            Verdict::Good { witness: 2, exponent: 1 }
        );
        assert!(classify_monomial(&mono("x2*x3", 4), 5).unwrap().is_good());
        assert_eq!(classify_monomial(&Monomial::one(4), 3).unwrap_err(), Error::ConstantMonomial);
        assert_eq!(classify_monomial(&mono("x1*x2", 4), 3).unwrap_err(), Error::InvolvesTarget);
        assert!(classify_monomial(&mono("x2^2", 4), 0).unwrap().is_good());
    }
}
