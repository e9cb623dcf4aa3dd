//! Square matrices over the exact rings used here.

use std::fmt;

use super::field::FieldElement;
use super::laurent::LaurentPoly;
use super::AlgebraError;

/// Commutative ring element that knows its own ring.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact quotient when `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inv().ok()?)
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.field())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, other)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    dim: usize,
    entries: Vec<R>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::Shape("matrix must be square and nonempty".into()));
        }
        Ok(Matrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize, sample: &R) -> Self {
        let mut entries = vec![sample.zero_like(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = sample.one_like();
        }
        Matrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.dim).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::Shape(format!("{} vs {}", self.dim, other.dim)));
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = self.get(r, c).zero_like();
                for k in 0..n {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(other.get(k, c)));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix { dim: n, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::Shape(format!("{} vs {}", self.dim, other.dim)));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { dim: self.dim, entries })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Matrix::identity(self.dim, &self.entries[0]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let v = self.get(r, c);
                if r == c {
                    *v == v.one_like()
                } else {
                    v.is_zero()
                }
            })
        })
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        (0..self.dim * self.dim)
            .find(|&i| self.entries[i] != other.entries[i])
            .map(|i| (i / self.dim, i % self.dim))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<R, AlgebraError> {
        let n = self.dim;
        let mut m = self.entries.clone();
        let mut prev = self.entries[0].one_like();
        let mut sign_neg = false;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&r| !m[r * n + k].is_zero()) else {
                return Ok(self.entries[0].zero_like());
            };
            if piv != k {
                for c in 0..n {
                    m.swap(piv * n + c, k * n + c);
                }
                sign_neg = !sign_neg;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k * n + k].mul(&m[i * n + j]).sub(&m[i * n + k].mul(&m[k * n + j]));
                    m[i * n + j] = num.div_exact(&prev).ok_or(AlgebraError::InexactDivision)?;
                }
            }
            prev = m[k * n + k].clone();
        }
        Ok(if sign_neg { prev.neg() } else { prev })
    }

    /// Inverse by fraction-free Gauss-Jordan on `[A | I]`; exists iff the
    /// determinant is a unit of the ring.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let n = self.dim;
        let w = 2 * n;
        let zero = self.entries[0].zero_like();
        let one = self.entries[0].one_like();
        let mut m = vec![zero.clone(); n * w];
        for r in 0..n {
            for c in 0..n {
                m[r * w + c] = self.get(r, c).clone();
            }
            m[r * w + n + r] = one.clone();
        }
        let mut prev = one.clone();
        for k in 0..n {
            let piv = (k..n).find(|&r| !m[r * w + k].is_zero()).ok_or(AlgebraError::NotInvertible)?;
            if piv != k {
                for c in 0..w {
                    m.swap(piv * w + c, k * w + c);
                }
            }
            let pivot = m[k * w + k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = m[i * w + k].clone();
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let num = pivot.mul(&m[i * w + j]).sub(&factor.mul(&m[k * w + j]));
                    m[i * w + j] = num.div_exact(&prev).ok_or(AlgebraError::InexactDivision)?;
                }
                m[i * w + k] = zero.clone();
            }
            prev = pivot;
        }
        // every diagonal entry now equals ±det; divide through
        let mut out = Matrix::identity(n, &one);
        for r in 0..n {
            let d = m[r * w + r].clone();
            for c in 0..n {
                let v = m[r * w + n + c].div_exact(&d).ok_or(AlgebraError::NotInvertible)?;
                out.set(r, c, v);
            }
        }
        if !self.mul(&out)?.is_identity() {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::GaloisField;

    fn lp(f: &GaloisField, t: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(f, t)
    }

    #[test]
    fn identity_is_neutral() {
        let f = GaloisField::prime(5).unwrap();
        let a = Matrix::from_rows(vec![
            vec![f.from_int(1), f.from_int(2)],
            vec![f.from_int(3), f.from_int(4)],
        ])
        .unwrap();
        let i = Matrix::identity(2, &f.one());
        assert_eq!(i.mul(&a).unwrap(), a);
        assert_eq!(a.determinant().unwrap(), f.from_int(-2));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn laurent_inverse() {
        let f = GaloisField::prime(3).unwrap();
        // [[1, 1/Y], [0, Y]] has det Y, a unit
        let a = Matrix::from_rows(vec![
            vec![lp(&f, &[(0, 1)]), lp(&f, &[(-1, 1)])],
            vec![lp(&f, &[]), lp(&f, &[(1, 1)])],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        // det Y + 1 is not a unit
        let b = Matrix::from_rows(vec![
            vec![lp(&f, &[(1, 1), (0, 1)]), lp(&f, &[])],
            vec![lp(&f, &[]), lp(&f, &[(0, 1)])],
        ])
        .unwrap();
        assert_eq!(b.inverse(), Err(AlgebraError::NotInvertible));
    }

    #[test]
    fn shape_errors() {
        let f = GaloisField::prime(2).unwrap();
        assert!(Matrix::<FieldElement>::from_rows(vec![]).is_err());
        assert!(Matrix::from_rows(vec![vec![f.one(), f.one()]]).is_err());
    }
}
