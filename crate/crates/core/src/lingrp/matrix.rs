use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Square matrix over a [`Field`], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Matrix {
    pub fn from_entries(field: &Field, n: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch);
        }
        if entries.iter().any(|e| !field.check_kind(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field: field.clone(), n, entries })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        Matrix::from_entries(field, n, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &Field, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn zero(field: &Field, n: usize) -> Matrix {
        Matrix { field: field.clone(), n, entries: vec![field.zero(); n * n] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::zero(field, n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Permutation matrix with a one at `(i, perm[i])`.
    pub fn permutation(field: &Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zero(field, n);
        for (i, &j) in perm.iter().enumerate() {
            m.entries[i * n + j] = field.one();
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    fn check(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check(other)?;
        let (f, n) = (&self.field, self.n);
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = f.zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if f.is_zero(a) {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                }
                out.push(acc);
            }
        }
        Ok(Matrix { field: f.clone(), n, entries: out })
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.get(j, i).clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            n: self.n,
            entries: self.entries.iter().map(|e| self.field.mul(e, c)).collect(),
        }
    }

    pub fn map_entries(&self, g: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix { field: self.field.clone(), n: self.n, entries: self.entries.iter().map(g).collect() }
    }

    pub fn det(&self) -> Elem {
        let (f, n) = (&self.field, self.n);
        let mut a = self.entries.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(&a[r * n + col])) else {
                return f.zero();
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(&det);
            }
            let pv = a[col * n + col].clone();
            det = f.mul(&det, &pv);
            let pinv = f.inv(&pv).expect("pivot nonzero");
            for r in col + 1..n {
                let factor = f.mul(&a[r * n + col], &pinv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(&a[r * n + j], &f.mul(&factor, &a[col * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        !self.field.is_zero(&self.det())
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let (f, n) = (&self.field, self.n);
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| !f.is_zero(&a[r * n + col])).ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(&a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(&a[col * n + j], &pinv);
                inv[col * n + j] = f.mul(&inv[col * n + j], &pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(&a[r * n + j], &f.mul(&factor, &a[col * n + j]));
                    inv[r * n + j] = f.sub(&inv[r * n + j], &f.mul(&factor, &inv[col * n + j]));
                }
            }
        }
        Ok(Matrix { field: f.clone(), n, entries: inv })
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| i == j || self.field.is_zero(self.get(i, j))))
    }

    /// Exactly one nonzero entry in each row and column.
    pub fn is_monomial(&self) -> bool {
        let n = self.n;
        let f = &self.field;
        let row_ok = (0..n).all(|i| (0..n).filter(|&j| !f.is_zero(self.get(i, j))).count() == 1);
        let col_ok = (0..n).all(|j| (0..n).filter(|&i| !f.is_zero(self.get(i, j))).count() == 1);
        row_ok && col_ok
    }

    /// Scales so the first nonzero entry (row-major) is one. Conjugation by
    /// a matrix depends only on this representative.
    pub fn projective_normal(&self) -> Matrix {
        let f = &self.field;
        match self.entries.iter().find(|e| !f.is_zero(e)) {
            Some(lead) => self.scale(&f.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        Matrix { field: field.clone(), n, entries: (0..n * n).map(|_| field.random(rng)).collect() }
    }

    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// Row-major scalar list, e.g. `[[1,0],[0,1]]`.
    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.field.render(self.get(i, j))).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    pub fn to_rows(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.field.render(self.get(i, j))).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_of_diagonal() {
        let f7 = Field::prime(7).unwrap();
        let d = Matrix::diagonal(&f7, &[f7.from_i64(2), f7.from_i64(3), f7.one()]);
        assert_eq!(d.det(), f7.from_i64(6));
    }

    #[test]
    fn inverse_identity_and_singular() {
        let f5 = Field::prime(5).unwrap();
        let id = Matrix::identity(&f5, 3);
        assert_eq!(id.inverse().unwrap(), id);
        let s = Matrix::from_i64_rows(&f5, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse().unwrap_err(), Error::SingularMatrix);
        assert!(!s.is_invertible());
    }

    #[test]
    fn random_inverses_and_det_multiplicativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::prime(5).unwrap(), Field::extension(3, 2, &[1, 0, 1]).unwrap(), Field::rationals()] {
            for _ in 0..30 {
                let a = Matrix::random_invertible(&field, 3, &mut rng);
                let b = Matrix::random(&field, 3, &mut rng);
                let ai = a.inverse().unwrap();
                assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(&field, 3));
                let ab = a.mul(&b).unwrap();
                assert_eq!(ab.det(), field.mul(&a.det(), &b.det()));
                assert_eq!(a.transpose().det(), a.det());
            }
        }
    }

    #[test]
    fn shape_checks() {
        let f3 = Field::prime(3).unwrap();
        let a = Matrix::identity(&f3, 2);
        let b = Matrix::identity(&f3, 3);
        assert_eq!(a.mul(&b).unwrap_err(), Error::ShapeMismatch);
        assert_eq!(Matrix::from_i64_rows(&f3, &[&[1, 2], &[1]]).unwrap_err(), Error::ShapeMismatch);
    }
}
