//! Diagonal torus points, the closed-form torus conjugation law, weighted
//! one-parameter actions and their commutant, and homothety rescaling.
//!
//! For diagonal `α`, `β` and `φ(x_i) = Σ_J a_iJ x^J`, the composite
//! `α ∘ φ ∘ β` maps `x_i -> Σ_J β_i α^J a_iJ x^J`.

use serde::Serialize;

use crate::endo::Endomorphism;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    field: Field,
    lambdas: Vec<Elem>,
}

impl TorusPoint {
    pub fn new(field: &Field, lambdas: Vec<Elem>) -> Result<TorusPoint> {
        if lambdas.iter().any(|l| field.is_zero(l)) {
            return Err(Error::ZeroEntry);
        }
        if lambdas.iter().any(|l| !field.check_kind(l)) {
            return Err(Error::FieldMismatch);
        }
        Ok(TorusPoint { field: field.clone(), lambdas })
    }

    pub fn identity(field: &Field, n: usize) -> TorusPoint {
        TorusPoint { field: field.clone(), lambdas: vec![field.one(); n] }
    }

    /// `x_i -> h x_i` for all `i`.
    pub fn homothety(field: &Field, n: usize, h: &Elem) -> Result<TorusPoint> {
        TorusPoint::new(field, vec![h.clone(); n])
    }

    pub fn from_endomorphism(e: &Endomorphism) -> Option<TorusPoint> {
        e.as_torus().map(|lambdas| TorusPoint { field: e.field().clone(), lambdas })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Elem] {
        &self.lambdas
    }

    pub fn is_identity(&self) -> bool {
        self.lambdas.iter().all(|l| self.field.is_one(l))
    }

    /// Entrywise product; equals composition of the diagonal maps.
    pub fn compose(&self, other: &TorusPoint) -> Result<TorusPoint> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n() != other.n() {
            return Err(Error::ArityMismatch { expected: self.n(), found: other.n() });
        }
        let lambdas = self.lambdas.iter().zip(&other.lambdas).map(|(a, b)| self.field.mul(a, b)).collect();
        Ok(TorusPoint { field: self.field.clone(), lambdas })
    }

    pub fn inverse(&self) -> TorusPoint {
        let lambdas = self.lambdas.iter().map(|l| self.field.inv(l).expect("nonzero entries")).collect();
        TorusPoint { field: self.field.clone(), lambdas }
    }

    pub fn to_endomorphism(&self) -> Endomorphism {
        Endomorphism::diagonal(&self.field, &self.lambdas).expect("nonzero entries")
    }

    /// `λ^J = prod_l λ_l^(J_l)`.
    pub fn monomial_value(&self, m: &Monomial) -> Elem {
        let f = &self.field;
        m.exps().iter().zip(&self.lambdas).fold(f.one(), |acc, (&e, l)| f.mul(&acc, &f.pow(l, e as u64)))
    }

    pub fn render(&self) -> Vec<String> {
        self.lambdas.iter().map(|l| self.field.render(l)).collect()
    }
}

/// Closed-form `α ∘ φ ∘ β`; never calls general composition.
pub fn conjugation_formula(alpha: &TorusPoint, phi: &Endomorphism, beta: &TorusPoint) -> Result<Endomorphism> {
    let n = phi.nvars();
    for t in [alpha, beta] {
        if t.n() != n {
            return Err(Error::ArityMismatch { expected: n, found: t.n() });
        }
        if t.field() != phi.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let f = phi.field();
    let images = phi
        .images()
        .iter()
        .enumerate()
        .map(|(i, p)| p.map_coefficients(|m, c| f.mul(&f.mul(&beta.lambdas[i], &alpha.monomial_value(m)), c)))
        .collect();
    Endomorphism::from_images(f, images)
}

/// Exponents `i2..in` (stored for `x2..xn`) of a one-parameter family
/// acting by `x1 -> λ2^i2 .. λn^in x1`, `x_l -> λ_l x_l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightVector {
    weights: Vec<u16>,
}

impl WeightVector {
    /// Zero entries are allowed; the weights must sum to more than one.
    pub fn new(weights: Vec<u16>) -> Result<WeightVector> {
        if weights.iter().map(|&w| w as u32).sum::<u32>() <= 1 {
            return Err(Error::InvalidArgument("weights must sum to more than 1".into()));
        }
        Ok(WeightVector { weights })
    }

    /// Weights `(1, 1, 0, ..)` of the quadratic map `x1 -> x1 + x2 x3`.
    pub fn quadratic(n: usize) -> WeightVector {
        let mut w = vec![0; n - 1];
        w[0] = 1;
        w[1] = 1;
        WeightVector { weights: w }
    }

    pub fn weights(&self) -> &[u16] {
        &self.weights
    }

    /// Ambient generator count.
    pub fn n(&self) -> usize {
        self.weights.len() + 1
    }

    /// `x2^i2 .. xn^in` as a monomial in `n` generators.
    pub fn monomial(&self) -> Monomial {
        let mut e = vec![0; self.n()];
        e[1..].copy_from_slice(&self.weights);
        Monomial::new(e)
    }

    fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0) as u32
    }
}

/// The action point for `λ2..λn`: `x1` scaled by `prod λ_l^(i_l)`.
pub fn weighted_action_point(w: &WeightVector, lambdas: &[Elem], field: &Field) -> Result<TorusPoint> {
    if lambdas.len() != w.weights.len() {
        return Err(Error::ArityMismatch { expected: w.weights.len(), found: lambdas.len() });
    }
    if lambdas.iter().any(|l| field.is_zero(l)) {
        return Err(Error::ZeroEntry);
    }
    let mut all = Vec::with_capacity(w.n());
    all.push(field.one());
    all.extend(lambdas.iter().cloned());
    let x1 = TorusPoint { field: field.clone(), lambdas: all.clone() }.monomial_value(&w.monomial());
    all[0] = x1;
    TorusPoint::new(field, all)
}

/// Parts `(a, β)` of `x1 -> a1 x1 + β x^w`, `x_l -> a_l x_l` (`a` nonzero),
/// or `None` if `φ` has another shape.
pub fn commutant_parts(phi: &Endomorphism, w: &WeightVector) -> Option<(Vec<Elem>, Elem)> {
    let n = phi.nvars();
    if w.n() != n {
        return None;
    }
    let f = phi.field();
    let wm = w.monomial();
    let x1 = Monomial::var(n, 0);
    let mut a = Vec::with_capacity(n);
    let mut a1 = None;
    let mut beta = f.zero();
    for (m, c) in phi.image(0).terms() {
        if *m == x1 {
            a1 = Some(c.clone());
        } else if *m == wm {
            beta = c.clone();
        } else {
            return None;
        }
    }
    a.push(a1?);
    for l in 1..n {
        match phi.image(l).as_term() {
            Some((m, c)) if *m == Monomial::var(n, l) => a.push(c.clone()),
            _ => return None,
        }
    }
    Some((a, beta))
}

pub fn in_commutant_form(phi: &Endomorphism, w: &WeightVector) -> bool {
    commutant_parts(phi, w).is_some()
}

/// Inverse of a commutant-form map `E ∘ D`, where `D = diag(a)` and
/// `E: x1 -> x1 + (β / a1) x^w`, as `D^-1 ∘ E^-1`.
pub fn commutant_inverse(phi: &Endomorphism, w: &WeightVector) -> Result<Endomorphism> {
    let (a, beta) = commutant_parts(phi, w).ok_or(Error::NotInCommutant)?;
    let f = phi.field();
    let d_inv = Endomorphism::diagonal(f, &a)?.invert()?;
    let shift = f.neg(&f.div(&beta, &a[0])?);
    let e_inv = Endomorphism::elementary(0, &Polynomial::term(f, w.monomial(), shift))?;
    d_inv.compose(&e_inv)
}

/// Number of sample points along each coordinate that certifies
/// commutation: the discrepancy of one term is a Laurent monomial in the
/// coordinate whose exponent is bounded by `(deg + 1)(1 + max weight)`.
pub fn required_samples(phi: &Endomorphism, w: &WeightVector) -> usize {
    let bound = (phi.degree() + 1) * (1 + w.max_weight());
    8.max(bound as usize + 1)
}

/// Sample points along each coordinate `λ_l`: powers of the primitive
/// element over a finite field, `2, 3, ..` over the rationals.
fn coordinate_samples(field: &Field, count: usize) -> Result<Vec<Elem>> {
    match field.order() {
        Some(q) => {
            if ((q - 1) as usize) < count {
                return Err(Error::FieldTooSmall(format!(
                    "{field} has {} nonzero elements; {count} distinct sample points are needed",
                    q - 1
                )));
            }
            let g = field.primitive_element().expect("finite field");
            let mut out = Vec::with_capacity(count);
            let mut cur = field.one();
            for _ in 0..count {
                out.push(cur.clone());
                cur = field.mul(&cur, &g);
            }
            Ok(out)
        }
        None => Ok((0..count).map(|s| field.from_i64(s as i64 + 2)).collect()),
    }
}

/// First sampled action point `Λ` with `Λ ∘ φ ∘ Λ^-1 ≠ φ`, if any. At least
/// [`required_samples`] points per coordinate are used and at most
/// `max(samples, required)`.
pub fn commutation_witness(phi: &Endomorphism, w: &WeightVector, samples: usize) -> Result<Option<TorusPoint>> {
    let n = phi.nvars();
    if w.n() != n {
        return Err(Error::ArityMismatch { expected: n, found: w.n() });
    }
    let field = phi.field();
    let required = required_samples(phi, w);
    let budget = match field.order() {
        Some(q) => samples.min((q - 1) as usize),
        None => samples,
    };
    let points = coordinate_samples(field, required.max(budget))?;
    for l in 0..n - 1 {
        for t in &points {
            let mut lambdas = vec![field.one(); n - 1];
            lambdas[l] = t.clone();
            let pt = weighted_action_point(w, &lambdas, field)?;
            if conjugation_formula(&pt, phi, &pt.inverse())? != *phi {
                return Ok(Some(pt));
            }
        }
    }
    Ok(None)
}

pub fn commutes_with_action(phi: &Endomorphism, w: &WeightVector, samples: usize) -> Result<bool> {
    Ok(commutation_witness(phi, w, samples)?.is_none())
}

/// `f^-1 ∘ g^-1 ∘ f ∘ g` for `f`, `g` in the quadratic commutant form, and
/// whether it is `x1 -> x1 + β x2 x3` with every other generator fixed.
pub fn commutator_shape_check(f: &Endomorphism, g: &Endomorphism) -> Result<(Endomorphism, bool)> {
    let n = f.nvars();
    if n < 3 {
        return Err(Error::NotInCommutant);
    }
    let w = WeightVector::quadratic(n);
    let f_inv = commutant_inverse(f, &w)?;
    let g_inv = commutant_inverse(g, &w)?;
    let comm = f_inv.compose(&g_inv)?.compose(f)?.compose(g)?;
    let in_shape = match commutant_parts(&comm, &w) {
        Some((a, _)) => a.iter().all(|x| comm.field().is_one(x)),
        None => false,
    };
    Ok((comm, in_shape))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn discrete_log(field: &Field, g: &Elem, target: &Elem) -> Option<u64> {
    let q = field.order()?;
    let mut cur = field.one();
    for s in 0..q - 1 {
        if cur == *target {
            return Some(s);
        }
        cur = field.mul(&cur, g);
    }
    None
}

/// A torus point `Λ` with `Λ(x1) = x1` and `Λ ∘ (x1 -> x1 + M) ∘ Λ^-1 =
/// (x1 -> x1 + β M)`, i.e. `λ^M = β`. Uses `x_l -> β x_l` for the least
/// `x_l` of exponent one, otherwise solves `Σ J_l t_l ≡ s (mod q - 1)` for
/// `β = g^s` over a finite field.
pub fn torus_rescale_fixing_x1(field: &Field, beta: &Elem, m: &Monomial) -> Result<TorusPoint> {
    let n = m.nvars();
    if field.is_zero(beta) {
        return Err(Error::ZeroBeta);
    }
    if m.is_one() {
        return Err(Error::ConstantMonomial);
    }
    if m.involves(0) {
        return Err(Error::InvolvesTarget);
    }
    let mut lambdas = vec![field.one(); n];
    if field.is_one(beta) {
        return TorusPoint::new(field, lambdas);
    }
    if let Some(l) = (1..n).find(|&l| m.get(l) == 1) {
        lambdas[l] = beta.clone();
        return TorusPoint::new(field, lambdas);
    }
    let Some(q) = field.order() else {
        return Err(Error::NoSolution);
    };
    let g = field.primitive_element().expect("finite field");
    let s = discrete_log(field, &g, beta).expect("primitive element generates");
    let modulus = (q - 1) as i128;
    // Fold the gcd over the exponents, tracking Bezout coefficients.
    let mut gcd = modulus;
    let mut coeffs = vec![0i128; n];
    for l in 1..n {
        let j = m.get(l) as i128;
        if j == 0 {
            continue;
        }
        let (d, x, y) = ext_gcd(gcd, j);
        for c in coeffs.iter_mut() {
            *c *= x;
        }
        coeffs[l] += y;
        gcd = d;
    }
    if (s as i128) % gcd != 0 {
        return Err(Error::NoSolution);
    }
    let scale = s as i128 / gcd;
    for l in 1..n {
        let t = (coeffs[l] * scale).rem_euclid(modulus) as u64;
        lambdas[l] = field.pow(&g, t);
    }
    TorusPoint::new(field, lambdas)
}

/// Like [`torus_rescale_fixing_x1`], falling back to `x1 -> β^-1 x1` when
/// no point fixing `x1` exists.
pub fn torus_rescale_conjugacy(field: &Field, beta: &Elem, m: &Monomial) -> Result<TorusPoint> {
    match torus_rescale_fixing_x1(field, beta, m) {
        Err(Error::NoSolution) => {
            let mut lambdas = vec![field.one(); m.nvars()];
            lambdas[0] = field.inv(beta)?;
            TorusPoint::new(field, lambdas)
        }
        other => other,
    }
}

/// The homothety ratio used by [`linearity_via_homothety`].
pub fn homothety_ratio(field: &Field, degree: u32) -> Result<Elem> {
    match field.order() {
        Some(q) => {
            if q - 1 <= degree as u64 {
                return Err(Error::FieldTooSmall(format!(
                    "{field} has no element of multiplicative order above {degree}"
                )));
            }
            Ok(field.primitive_element().expect("finite field"))
        }
        None => Ok(field.from_i64(2)),
    }
}

/// True iff `φ` commutes with the homothety by an element of order above
/// `deg φ`; under that condition this is equivalent to `φ` being linear.
pub fn linearity_via_homothety(phi: &Endomorphism) -> Result<bool> {
    let h = homothety_ratio(phi.field(), phi.degree())?;
    let pt = TorusPoint::homothety(phi.field(), phi.nvars(), &h)?;
    Ok(conjugation_formula(&pt, phi, &pt.inverse())? == *phi)
}
