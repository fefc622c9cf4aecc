//! Exact coefficient fields.
//!
//! Three kinds of field are supported: prime fields `F_p` with `p` odd,
//! extensions `F_{p^k} = F_p[t]/(m(t))` for an irreducible monic modulus `m`,
//! and the rationals (characteristic 0, arbitrary precision).
//!
//! Field elements are stored as bare [`Elem`] values and all arithmetic goes
//! through the owning [`Field`]. Finite-field elements are encoded as a single
//! integer: the residue for prime fields and `c_0 + c_1 p + ... + c_{k-1}
//! p^{k-1}` for extensions, where `c_i` is the coefficient of `t^i`. This
//! keeps polynomial terms small, which matters for the word search.
//! [`Scalar`] pairs an element with its field for the public, checked API.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported finite field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;

/// A field element without its field. Only meaningful relative to a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Fin(u64),
    Rat(Box<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u64,
    degree: u32,
    /// Ascending coefficients of the monic modulus, length `degree + 1`.
    modulus: Option<Vec<u64>>,
    order: Option<u64>,
    primitive: Option<u64>,
}

/// Shared handle to a validated [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.characteristic.hash(state);
        self.0.degree.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.0.characteristic, self.0.degree) {
            (0, _) => write!(f, "Q"),
            (p, 1) => write!(f, "F_{p}"),
            (p, k) => write!(f, "F_{}^{}", p, k),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, ascending coefficients. Used for the
// irreducibility test of extension moduli only.
mod dense {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        super::pow_mod(a, p - 2, p)
    }

    /// Remainder of `a` by `m` (m nonzero).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            if c != 0 {
                for (j, &mj) in m.iter().enumerate() {
                    let idx = dr - dm + j;
                    r[idx] = (r[idx] + p - c * mj % p) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Ben-Or style test: a monic `m` of degree `k` over `F_p` is irreducible iff
/// `gcd(m, X^{p^i} - X) = 1` for every `1 <= i <= k/2`.
pub fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
    dense::trim(&mut m);
    if m.len() < 2 {
        return false;
    }
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = dense::powmod(&h, p, &m, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        dense::trim(&mut diff);
        let g = dense::gcd(&m, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// Validates field parameters. `characteristic` 0 selects the rationals.
    pub fn new(characteristic: u64, extension_degree: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if characteristic == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if extension_degree == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if characteristic == 0 {
            if extension_degree != 1 || modulus.is_some() {
                return Err(Error::InvalidField("extensions of Q are not supported".into()));
            }
            return Ok(Field(Arc::new(FieldSpec {
                characteristic: 0,
                degree: 1,
                modulus: None,
                order: None,
                primitive: None,
            })));
        }
        if !is_prime(characteristic) {
            return Err(Error::NotPrime(characteristic));
        }
        let p = characteristic;
        let order = (p as u128).pow(extension_degree);
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::InvalidField(format!("field order {order} is too large")));
        }
        let order = order as u64;
        let modulus = match (extension_degree, modulus) {
            (1, None) => None,
            (1, Some(_)) => {
                return Err(Error::InvalidField("modulus given for a prime field".into()));
            }
            (_, None) => return Err(Error::InvalidField("extension requires a modulus".into())),
            (k, Some(m)) => {
                let m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidField(format!("modulus must be monic of degree {k}")));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                Some(m)
            }
        };
        let mut spec =
            FieldSpec { characteristic: p, degree: extension_degree, modulus, order: Some(order), primitive: None };
        let field = Field(Arc::new(spec.clone()));
        spec.primitive = Some(field.find_primitive());
        Ok(Field(Arc::new(spec)))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn extension(p: u64, k: u32, modulus: &[u64]) -> Result<Field> {
        Field::new(p, k, Some(modulus))
    }

    pub fn rationals() -> Field {
        Field::new(0, 1, None).expect("Q is always valid")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.degree
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        self.0.order
    }

    pub fn is_finite(&self) -> bool {
        self.0.order.is_some()
    }

    /// Canonical one-line descriptor, e.g. `p=3 k=2 modulus=[1,0,1]`.
    pub fn descriptor(&self) -> String {
        match (self.0.characteristic, &self.0.modulus) {
            (0, _) => "p=0".to_string(),
            (p, None) => format!("p={p} k=1"),
            (p, Some(m)) => {
                let coeffs: Vec<String> = m.iter().map(|c| c.to_string()).collect();
                format!("p={} k={} modulus=[{}]", p, self.0.degree, coeffs.join(","))
            }
        }
    }

    pub fn parse_descriptor(s: &str) -> Result<Field> {
        let mut p = None;
        let mut k = 1u32;
        let mut modulus = None;
        for tok in s.split_whitespace() {
            let (key, val) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("bad field token `{tok}`")))?;
            match key {
                "p" => p = Some(val.parse::<u64>().map_err(|e| Error::Parse(e.to_string()))?),
                "k" => k = val.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?,
                "modulus" => modulus = Some(parse_u64_list(val)?),
                _ => return Err(Error::Parse(format!("unknown field key `{key}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("field descriptor lacks p".into()))?;
        Field::new(p, k, modulus.as_deref())
    }

    pub fn zero(&self) -> Elem {
        match self.0.characteristic {
            0 => Elem::Rat(Box::new(BigRational::zero())),
            _ => Elem::Fin(0),
        }
    }

    pub fn one(&self) -> Elem {
        match self.0.characteristic {
            0 => Elem::Rat(Box::new(BigRational::one())),
            _ => Elem::Fin(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self.0.characteristic {
            0 => Elem::Rat(Box::new(BigRational::from_integer(BigInt::from(v)))),
            p => Elem::Fin(v.rem_euclid(p as i64) as u64),
        }
    }

    pub fn from_rational(&self, num: i64, den: i64) -> Result<Elem> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(v) => *v == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(v) => *v == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    fn digits(&self, code: u64) -> Vec<u64> {
        let p = self.0.characteristic;
        let mut c = code;
        (0..self.0.degree)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, digits: &[u64]) -> u64 {
        let p = self.0.characteristic;
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.0.characteristic;
                if self.0.degree == 1 {
                    Elem::Fin((x + y) % p)
                } else {
                    let dx = self.digits(*x);
                    let dy = self.digits(*y);
                    let s: Vec<u64> = dx.iter().zip(&dy).map(|(u, v)| (u + v) % p).collect();
                    Elem::Fin(self.undigits(&s))
                }
            }
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x + &**y)),
            _ => panic!("element kinds do not match field"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => {
                let p = self.0.characteristic;
                if self.0.degree == 1 {
                    Elem::Fin((p - x) % p)
                } else {
                    let d: Vec<u64> = self.digits(*x).iter().map(|u| (p - u) % p).collect();
                    Elem::Fin(self.undigits(&d))
                }
            }
            Elem::Rat(x) => Elem::Rat(Box::new(-&**x)),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => {
                let p = self.0.characteristic;
                if self.0.degree == 1 {
                    return Elem::Fin(x * y % p);
                }
                let k = self.0.degree as usize;
                let dx = self.digits(*x);
                let dy = self.digits(*y);
                let mut prod = vec![0u64; 2 * k - 1];
                for (i, u) in dx.iter().enumerate() {
                    if *u == 0 {
                        continue;
                    }
                    for (j, v) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v) % p;
                    }
                }
                let m = self.0.modulus.as_ref().expect("extension has a modulus");
                for d in (k..2 * k - 1).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (j, mj) in m.iter().enumerate().take(k) {
                        let idx = d - k + j;
                        prod[idx] = (prod[idx] + p - c * mj % p) % p;
                    }
                }
                Elem::Fin(self.undigits(&prod[..k]))
            }
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x * &**y)),
            _ => panic!("element kinds do not match field"),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Integer power; negative exponents invert first.
    pub fn pow_i64(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match a {
            Elem::Fin(x) => {
                let p = self.0.characteristic;
                if self.0.degree == 1 {
                    Ok(Elem::Fin(pow_mod(*x, p - 2, p)))
                } else {
                    let q = self.0.order.expect("finite");
                    Ok(self.pow(a, q - 2))
                }
            }
            Elem::Rat(x) => Ok(Elem::Rat(Box::new(x.recip()))),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^{p^e}`, the `e`-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: &Elem, e: u32) -> Elem {
        let p = self.0.characteristic;
        if p == 0 || self.0.degree == 1 {
            return a.clone();
        }
        let mut out = a.clone();
        for _ in 0..(e % self.0.degree) {
            out = self.pow(&out, p);
        }
        out
    }

    fn order_of_code(&self, a: &Elem) -> u64 {
        let q = self.0.order.expect("finite");
        let mut ord = q - 1;
        for r in prime_factors(q - 1) {
            while ord.is_multiple_of(r) && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    fn find_primitive(&self) -> u64 {
        let q = self.0.order.expect("finite");
        (1..q).find(|&c| self.order_of_code(&Elem::Fin(c)) == q - 1).expect("finite fields have primitive elements")
    }

    /// The least (by code) generator of the multiplicative group.
    pub fn primitive_element(&self) -> Option<Elem> {
        self.0.primitive.map(Elem::Fin)
    }

    pub fn multiplicative_order(&self, a: &Elem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::ZeroElement);
        }
        if !self.is_finite() {
            return Err(Error::InfiniteField);
        }
        Ok(self.order_of_code(a))
    }

    /// All elements in code order. Panics for the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        let q = self.0.order.expect("enumeration requires a finite field");
        (0..q).map(Elem::Fin)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        let q = self.0.order.expect("enumeration requires a finite field");
        (1..q).map(Elem::Fin)
    }

    /// Uniform element for finite fields; small fractions for the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self.0.order {
            Some(q) => Elem::Fin(rng.gen_range(0..q)),
            None => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=5);
                self.from_rational(num, den).expect("nonzero denominator")
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let e = self.random(rng);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    /// Canonical text: residue, `[c0,..,c_{k-1}]` for extensions, `a/b` for Q.
    pub fn render(&self, a: &Elem) -> String {
        match a {
            Elem::Fin(x) if self.0.degree == 1 => x.to_string(),
            Elem::Fin(x) => {
                let d: Vec<String> = self.digits(*x).iter().map(|c| c.to_string()).collect();
                format!("[{}]", d.join(","))
            }
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar `{s}` for {self}"));
        match self.0.characteristic {
            0 => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::Rat(Box::new(BigRational::new(n, d))))
            }
            p => {
                if s.starts_with('[') {
                    let digits = parse_i64_list(s)?;
                    if digits.len() != self.0.degree as usize {
                        return Err(bad());
                    }
                    let d: Vec<u64> = digits.iter().map(|v| v.rem_euclid(p as i64) as u64).collect();
                    Ok(Elem::Fin(self.undigits(&d)))
                } else {
                    let v: BigInt = s.parse().map_err(|_| bad())?;
                    let r = ((v % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                    Ok(Elem::Fin(r.to_u64().ok_or_else(bad)?))
                }
            }
        }
    }

    /// True if the element is `-1`, used by the monomial sign handling in renderers.
    pub fn is_negative_one(&self, a: &Elem) -> bool {
        self.is_one(&self.neg(a))
    }

    /// Wraps an element into a checked [`Scalar`].
    pub fn scalar(&self, elem: Elem) -> Scalar {
        Scalar { field: self.clone(), elem }
    }

    pub(crate) fn check_kind(&self, a: &Elem) -> bool {
        match (a, self.0.order) {
            (Elem::Fin(x), Some(q)) => *x < q,
            (Elem::Rat(_), None) => true,
            _ => false,
        }
    }

    /// Absolute value of a rational element as an integer, used only in tests
    /// of overflow-freeness.
    pub fn rational_height(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Rat(r) => Some(r.numer().abs().max(r.denom().abs())),
            _ => None,
        }
    }
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    parse_i64_list(s)?
        .into_iter()
        .map(|v| u64::try_from(v).map_err(|_| Error::Parse(format!("negative entry in `{s}`"))))
        .collect()
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("`{t}`: {e}")))).collect()
}

/// A field element bound to its field. All operations reject mixed fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    elem: Elem,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.render(&self.elem), self.field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(&self.elem))
    }
}

impl Scalar {
    pub fn new(field: &Field, elem: Elem) -> Result<Scalar> {
        if !field.check_kind(&elem) {
            return Err(Error::FieldMismatch);
        }
        Ok(Scalar { field: field.clone(), elem })
    }

    pub fn from_i64(field: &Field, v: i64) -> Scalar {
        field.scalar(field.from_i64(v))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    fn same(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same(other)?;
        Ok(self.field.scalar(self.field.add(&self.elem, &other.elem)))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same(other)?;
        Ok(self.field.scalar(self.field.sub(&self.elem, &other.elem)))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same(other)?;
        Ok(self.field.scalar(self.field.mul(&self.elem, &other.elem)))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.same(other)?;
        Ok(self.field.scalar(self.field.div(&self.elem, &other.elem)?))
    }

    pub fn negate(&self) -> Scalar {
        self.field.scalar(self.field.neg(&self.elem))
    }

    pub fn inverse(&self) -> Result<Scalar> {
        Ok(self.field.scalar(self.field.inv(&self.elem)?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        Ok(self.field.scalar(self.field.pow_i64(&self.elem, e)?))
    }

    pub fn multiplicative_order(&self) -> Result<u64> {
        self.field.multiplicative_order(&self.elem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_has_root(m: &[u64], p: u64) -> bool {
        (0..p).any(|x| m.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
    }

    #[test]
    fn prime_field_construction() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.order(), Some(5));
        assert_eq!(f5.descriptor(), "p=5 k=1");
        assert_eq!(Field::prime(2).unwrap_err(), Error::CharacteristicTwo);
        assert_eq!(Field::prime(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(Field::prime(1).unwrap_err(), Error::NotPrime(1));
    }

    #[test]
    fn f9_from_t_squared_plus_one() {
        // t^2 + 1 has no root mod 3
        assert!(!brute_force_has_root(&[1, 0, 1], 3));
        let f9 = Field::extension(3, 2, &[1, 0, 1]).unwrap();
        assert_eq!(f9.order(), Some(9));
        let t = f9.parse("[0,1]").unwrap();
        let tt = f9.mul(&t, &t);
        assert_eq!(tt, f9.neg(&f9.one()));
        assert_eq!(f9.render(&tt), "[2,0]");
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t - 1)(t + 1) over F_3
        assert_eq!(Field::extension(3, 2, &[2, 0, 1]).unwrap_err(), Error::ReducibleModulus(3));
        // not monic
        assert!(matches!(Field::extension(3, 2, &[1, 0, 2]), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(3, 2, None), Err(Error::InvalidField(_))));
    }

    #[test]
    fn inverse_and_division() {
        let f5 = Field::prime(5).unwrap();
        let two = Scalar::from_i64(&f5, 2);
        assert_eq!(two.inverse().unwrap(), Scalar::from_i64(&f5, 3));
        let zero = Scalar::from_i64(&f5, 0);
        assert_eq!(two.div(&zero).unwrap_err(), Error::DivisionByZero);
        let x = Scalar::from_i64(&f5, 4);
        assert_eq!(x.add(&zero).unwrap(), x);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(x.add(&Scalar::from_i64(&f7, 1)).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn multiplicative_orders() {
        let f5 = Field::prime(5).unwrap();
        let ord = |v| Scalar::from_i64(&f5, v).multiplicative_order().unwrap();
        assert_eq!(ord(1), 1);
        assert_eq!(ord(2), 4);
        assert_eq!(ord(4), 2);
        assert_eq!(Scalar::from_i64(&f5, 0).multiplicative_order().unwrap_err(), Error::ZeroElement);
        let q = Field::rationals();
        assert_eq!(Scalar::from_i64(&q, 2).multiplicative_order().unwrap_err(), Error::InfiniteField);
        assert_eq!(f5.primitive_element(), Some(Elem::Fin(2)));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.primitive_element(), Some(Elem::Fin(2)));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::rationals();
        let a = q.from_rational(6, 4).unwrap();
        assert_eq!(q.render(&a), "3/2");
        let b = q.from_rational(-1, 2).unwrap();
        assert_eq!(q.render(&q.add(&a, &b)), "1");
        assert_eq!(q.parse("3/2").unwrap(), a);
        assert_eq!(q.parse("6/4").unwrap(), a);
    }

    #[test]
    fn fermat_exhaustive_small_fields() {
        let fields = vec![
            Field::prime(3).unwrap(),
            Field::prime(5).unwrap(),
            Field::prime(7).unwrap(),
            Field::prime(11).unwrap(),
            Field::prime(113).unwrap(),
            Field::extension(3, 2, &[1, 0, 1]).unwrap(),
            Field::extension(5, 2, &[2, 0, 1]).unwrap(),
            Field::extension(3, 3, &[1, 2, 0, 1]).unwrap(),
            Field::extension(11, 2, &[1, 0, 1]).unwrap(),
        ];
        for f in fields {
            let q = f.order().unwrap();
            assert!(q <= 121);
            for a in f.nonzero_elements() {
                assert!(f.is_one(&f.pow(&a, q - 1)), "{f}: {}", f.render(&a));
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }

    /// Exhaustive factor search: a monic polynomial of degree k <= 3 is
    /// reducible iff it has a monic factor of degree 1 (k <= 3 means any
    /// factorization has a linear factor).
    #[test]
    fn irreducibility_agrees_with_root_search() {
        for p in [3u64, 5, 7] {
            for k in 1..=3usize {
                let total = p.pow(k as u32);
                for code in 0..total {
                    let mut m: Vec<u64> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
                    m.push(1);
                    let expect = k == 1 || !brute_force_has_root(&m, p);
                    assert_eq!(is_irreducible(&m, p), expect, "p={p} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn degree_four_irreducibility_matches_quadratic_factor_search() {
        // (t^2+1)^2 over F_3 has no roots but is reducible
        let sq = dense::mul(&[1, 0, 1], &[1, 0, 1], 3);
        assert!(!brute_force_has_root(&sq, 3));
        assert!(!is_irreducible(&sq, 3));
        // t^4 + t + 2 is irreducible over F_3
        assert!(is_irreducible(&[2, 1, 0, 0, 1], 3));
    }

    #[test]
    fn frobenius_is_field_automorphism_on_f9() {
        let f9 = Field::extension(3, 2, &[1, 0, 1]).unwrap();
        let t = f9.parse("[0,1]").unwrap();
        assert_eq!(f9.frobenius(&t, 1), f9.neg(&t));
        assert_eq!(f9.frobenius(&t, 2), t);
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(f9.frobenius(&f9.mul(&a, &b), 1), f9.mul(&f9.frobenius(&a, 1), &f9.frobenius(&b, 1)));
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for f in [Field::prime(7).unwrap(), Field::extension(3, 2, &[1, 0, 1]).unwrap(), Field::rationals()] {
            assert_eq!(Field::parse_descriptor(&f.descriptor()).unwrap(), f);
        }
    }

    #[test]
    fn parse_reduces_residues() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), Elem::Fin(4));
        assert_eq!(f5.parse("12").unwrap(), Elem::Fin(2));
        assert!(f5.parse("x").is_err());
    }
}
