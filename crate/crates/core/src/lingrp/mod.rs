//! Matrices over a field, enumeration of small general linear groups, and a
//! finite model of the standard form `Ω ∘ Ad_S^θ ∘ P_χ` of automorphisms
//! of `GL_n`.
//!
//! `P_χ(A) = det(A)^c A`, `θ` raises every entry to the `p^e`-th power,
//! `Ad_S(X) = S X S^-1` and `Ω` is either the identity or `X -> (X^-1)^t`.
//! They are applied in that order.

mod matrix;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Default cap on enumeration sizes.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardAuto {
    omega: bool,
    s: Matrix,
    e: u32,
    c: u64,
}

fn finite_order(field: &Field) -> Result<u64> {
    field.order().ok_or(Error::InfiniteField)
}

impl StandardAuto {
    /// Validates and normalizes: `S` invertible and scaled so its first
    /// nonzero entry is one, `e` reduced mod the extension degree and `c`
    /// mod `q - 1`.
    pub fn new(omega: bool, s: Matrix, e: i64, c: i64) -> Result<StandardAuto> {
        let q = finite_order(s.field())?;
        if !s.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let k = s.field().extension_degree() as i64;
        Ok(StandardAuto {
            omega,
            s: s.projective_normal(),
            e: e.rem_euclid(k) as u32,
            c: c.rem_euclid(q as i64 - 1) as u64,
        })
    }

    pub fn identity(field: &Field, n: usize) -> Result<StandardAuto> {
        StandardAuto::new(false, Matrix::identity(field, n), 0, 0)
    }

    pub fn inner(s: Matrix) -> Result<StandardAuto> {
        StandardAuto::new(false, s, 0, 0)
    }

    pub fn transpose_inverse(field: &Field, n: usize) -> Result<StandardAuto> {
        StandardAuto::new(true, Matrix::identity(field, n), 0, 0)
    }

    pub fn radial(field: &Field, n: usize, c: i64) -> Result<StandardAuto> {
        StandardAuto::new(false, Matrix::identity(field, n), 0, c)
    }

    pub fn frobenius(field: &Field, n: usize, e: i64) -> Result<StandardAuto> {
        StandardAuto::new(false, Matrix::identity(field, n), e, 0)
    }

    pub fn omega(&self) -> bool {
        self.omega
    }

    pub fn conjugator(&self) -> &Matrix {
        &self.s
    }

    pub fn frobenius_exp(&self) -> u32 {
        self.e
    }

    pub fn char_exp(&self) -> u64 {
        self.c
    }

    pub fn field(&self) -> &Field {
        self.s.field()
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// Pure `Ad_S`.
    pub fn is_inner(&self) -> bool {
        !self.omega && self.e == 0 && self.c == 0
    }

    /// `A -> det(A)^c A` is a bijection of `GL_n(F_q)` iff
    /// `gcd(n c + 1, q - 1) = 1`.
    pub fn radial_is_bijective(&self) -> bool {
        let q = self.field().order().expect("finite by construction");
        radial_criterion(self.n(), self.c, q)
    }

    pub fn apply(&self, a: &Matrix) -> Result<Matrix> {
        apply_standard(self, a)
    }
}

pub fn radial_criterion(n: usize, c: u64, q: u64) -> bool {
    (n as u64 * c + 1).gcd(&(q - 1)) == 1
}

fn theta(m: &Matrix, e: u32) -> Matrix {
    if e == 0 {
        return m.clone();
    }
    let f = m.field().clone();
    m.map_entries(|x| f.frobenius(x, e))
}

/// `Ω(S θ^e(det(A)^c A) S^-1)`.
pub fn apply_standard(phi: &StandardAuto, a: &Matrix) -> Result<Matrix> {
    if a.n() != phi.n() {
        return Err(Error::ShapeMismatch);
    }
    if a.field() != phi.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let det = a.det();
    if f.is_zero(&det) {
        return Err(Error::SingularInput);
    }
    let radial = if phi.c == 0 { a.clone() } else { a.scale(&f.pow(&det, phi.c)) };
    let twisted = theta(&radial, phi.e);
    let s_inv = phi.s.inverse()?;
    let conj = phi.s.mul(&twisted)?.mul(&s_inv)?;
    if phi.omega {
        Ok(conj.inverse()?.transpose())
    } else {
        Ok(conj)
    }
}

/// Normal form of `A -> phi1(phi2(A))`.
pub fn compose_standard(phi1: &StandardAuto, phi2: &StandardAuto) -> Result<StandardAuto> {
    if phi1.field() != phi2.field() {
        return Err(Error::FieldMismatch);
    }
    if phi1.n() != phi2.n() {
        return Err(Error::ShapeMismatch);
    }
    let n = phi1.n() as i64;
    let q = finite_order(phi1.field())? as i64;
    let s1 = if phi2.omega { phi1.s.inverse()?.transpose() } else { phi1.s.clone() };
    let s = s1.mul(&theta(&phi2.s, phi1.e))?;
    let (c1, c2) = (phi1.c as i64, phi2.c as i64);
    let m = q - 1;
    let c = (c1 + c2 + (n % m) * c1 % m * c2) % m;
    StandardAuto::new(phi1.omega ^ phi2.omega, s, phi1.e as i64 + phi2.e as i64, c)
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`, saturating.
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    let Some(qn) = q.checked_pow(n as u32) else { return u128::MAX };
    let mut total: u128 = 1;
    for i in 0..n {
        let term = qn - q.pow(i as u32);
        total = match total.checked_mul(term) {
            Some(t) => t,
            None => return u128::MAX,
        };
    }
    total
}

/// Every `n x n` matrix over a finite field in odometer order, entry 0
/// varying fastest.
fn all_matrices(field: &Field, n: usize) -> impl Iterator<Item = Matrix> + '_ {
    let elems: Vec<Elem> = field.elements().collect();
    let q = elems.len();
    let total = (q as u128).pow((n * n) as u32);
    (0..total).map(move |mut code| {
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(elems[(code % q as u128) as usize].clone());
            code /= q as u128;
        }
        Matrix::from_entries(field, n, entries).expect("shape")
    })
}

/// All of `GL_n(F_q)` in odometer order.
pub fn enumerate_gl(field: &Field, n: usize, cap: u128) -> Result<Vec<Matrix>> {
    let q = finite_order(field)?;
    let size = gl_order(n, q);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let all = (q as u128).pow((n * n) as u32);
    if all > cap.saturating_mul(4) {
        return Err(Error::EnumerationTooLarge { size: all, cap });
    }
    Ok(all_matrices(field, n).filter(|m| m.is_invertible()).collect())
}

/// Monomial matrices of `GL_n(F_q)`: permutation matrices with nonzero
/// entries, in a fixed order.
pub fn enumerate_monomial(field: &Field, n: usize, cap: u128) -> Result<Vec<Matrix>> {
    let q = finite_order(field)?;
    let perms = permutations(n);
    let size = (perms.len() as u128).saturating_mul(((q - 1) as u128).saturating_pow(n as u32));
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let diags = enumerate_diagonals(field, n, cap)?;
    let mut out = Vec::with_capacity(size as usize);
    for p in &perms {
        let pm = Matrix::permutation(field, p);
        for d in &diags {
            out.push(d.mul(&pm)?);
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                prefix.push(j);
                rec(prefix, used, out);
                prefix.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Invertible diagonal matrices, odometer order with the first entry
/// varying fastest.
pub fn enumerate_diagonals(field: &Field, n: usize, cap: u128) -> Result<Vec<Matrix>> {
    let q = finite_order(field)?;
    let size = ((q - 1) as u128).saturating_pow(n as u32);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let units: Vec<Elem> = field.nonzero_elements().collect();
    let mut out = Vec::with_capacity(size as usize);
    for mut code in 0..size {
        let mut d = Vec::with_capacity(n);
        for _ in 0..n {
            d.push(units[(code % (q - 1) as u128) as usize].clone());
            code /= (q - 1) as u128;
        }
        out.push(Matrix::diagonal(field, &d));
    }
    Ok(out)
}

/// How radial bijectivity was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialCheck {
    /// Every element of the group was mapped and images compared.
    Exhaustive,
    /// Only the coset representatives `diag(t, 1, .., 1)` of `SL_n` were
    /// mapped. `P_χ(A M) = P_χ(A) M` for `M` in `SL_n`, so the map is a
    /// bijection iff it permutes the cosets, iff `t -> t^(nc+1)` is.
    CosetReduced,
}

/// Decides whether `A -> det(A)^c A` is a bijection of `GL_n(F_q)` by
/// direct computation. Groups within `cap` are checked exhaustively.
pub fn radial_bijective_by_enumeration(field: &Field, n: usize, c: u64, cap: u128) -> Result<(bool, RadialCheck)> {
    let q = finite_order(field)?;
    let phi = StandardAuto::radial(field, n, c as i64)?;
    if gl_order(n, q) <= cap {
        let group = enumerate_gl(field, n, cap)?;
        let codes: Vec<u128> =
            group.par_iter().map(|a| matrix_code(&apply_standard(&phi, a).expect("invertible input"), q)).collect();
        let mut seen = std::collections::HashSet::with_capacity(codes.len());
        let injective = codes.into_iter().all(|k| seen.insert(k));
        return Ok((injective, RadialCheck::Exhaustive));
    }
    let mut seen = std::collections::HashSet::new();
    for t in field.nonzero_elements() {
        let mut d = vec![field.one(); n];
        d[0] = t;
        let image = apply_standard(&phi, &Matrix::diagonal(field, &d))?;
        if !seen.insert(image.det()) {
            return Ok((false, RadialCheck::CosetReduced));
        }
    }
    Ok((true, RadialCheck::CosetReduced))
}

fn matrix_code(m: &Matrix, q: u64) -> u128 {
    m.entries().iter().rev().fold(0u128, |acc, e| match e {
        Elem::Fin(v) => acc * q as u128 + *v as u128,
        Elem::Rat(_) => unreachable!("finite field"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalFixingReport {
    pub fixes_all_diagonals: bool,
    /// First diagonal (enumeration order) that is moved.
    pub witness: Option<Vec<Vec<String>>>,
    pub omega_identity: bool,
    pub frobenius_trivial: bool,
    pub character_trivial: bool,
    pub diagonals_checked: u128,
}

/// Checks `Φ(D) = D` for every invertible diagonal `D`.
pub fn diagonal_fixing_analysis(phi: &StandardAuto, cap: u128) -> Result<DiagonalFixingReport> {
    let diags = enumerate_diagonals(phi.field(), phi.n(), cap)?;
    let mut witness = None;
    for d in &diags {
        if apply_standard(phi, d)? != *d {
            witness = Some(d.to_rows());
            break;
        }
    }
    Ok(DiagonalFixingReport {
        fixes_all_diagonals: witness.is_none(),
        witness,
        omega_identity: !phi.omega,
        frobenius_trivial: phi.e == 0,
        character_trivial: phi.c == 0,
        diagonals_checked: diags.len() as u128,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugatorSet {
    /// All of `GL_n` if it fits the cap, otherwise monomial matrices.
    Auto,
    General,
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fixer {
    pub omega: bool,
    pub e: u32,
    pub c: u64,
    pub s: Vec<Vec<String>>,
    pub inner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub n: usize,
    pub field: String,
    pub conjugators: ConjugatorSet,
    /// Conjugators up to scalars.
    pub conjugator_count: usize,
    pub combinations: u128,
    pub fixers: Vec<Fixer>,
    pub all_fixers_inner: bool,
    pub caveat: String,
}

/// Enumerates `(Ω, e, c, S)` with `S` from the chosen set (up to scalars)
/// and lists those fixing every invertible diagonal matrix.
pub fn survey_diagonal_fixers(field: &Field, n: usize, set: ConjugatorSet, cap: u128) -> Result<SurveyReport> {
    let q = finite_order(field)?;
    let resolved = match set {
        ConjugatorSet::Auto if gl_order(n, q) <= cap => ConjugatorSet::General,
        ConjugatorSet::Auto => ConjugatorSet::Monomial,
        other => other,
    };
    let raw = match resolved {
        ConjugatorSet::General => enumerate_gl(field, n, cap)?,
        _ => enumerate_monomial(field, n, cap)?,
    };
    let mut conjugators: Vec<Matrix> = raw.into_iter().filter(|m| m.projective_normal() == *m).collect();
    conjugators.dedup();
    let k = field.extension_degree() as u128;
    let combinations = 2 * k * (q as u128 - 1) * conjugators.len() as u128;
    if combinations > cap {
        return Err(Error::EnumerationTooLarge { size: combinations, cap });
    }
    let diags = enumerate_diagonals(field, n, cap)?;
    let fixers: Vec<Vec<Fixer>> = conjugators
        .par_iter()
        .map(|s| {
            let mut found = Vec::new();
            for omega in [false, true] {
                for e in 0..k as i64 {
                    for c in 0..q as i64 - 1 {
                        let phi = StandardAuto::new(omega, s.clone(), e, c).expect("invertible conjugator");
                        if diags.iter().all(|d| apply_standard(&phi, d).expect("invertible") == *d) {
                            found.push(Fixer {
                                omega,
                                e: e as u32,
                                c: c as u64,
                                s: s.to_rows(),
                                inner: phi.is_inner(),
                            });
                        }
                    }
                }
            }
            found
        })
        .collect();
    let fixers: Vec<Fixer> = fixers.into_iter().flatten().collect();
    Ok(SurveyReport {
        n,
        field: field.to_string(),
        conjugators: resolved,
        conjugator_count: conjugators.len(),
        combinations,
        all_fixers_inner: fixers.iter().all(|f| f.inner),
        fixers,
        caveat: crate::FINITE_FIELD_CAVEAT.to_string(),
    })
}
