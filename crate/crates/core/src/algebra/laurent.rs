//! Laurent polynomials in one variable `Y` over a finite field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldElement, GaloisField};

/// Sparse Laurent polynomial `Σ c_e Y^e`; zero coefficients are never
/// stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: GaloisField,
    terms: BTreeMap<i32, u32>,
}

impl LaurentPoly {
    pub fn zero(field: &GaloisField) -> Self {
        LaurentPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn one(field: &GaloisField) -> Self {
        Self::monomial(&field.one(), 0)
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · Y^e`
    pub fn monomial(c: &FieldElement, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c.code());
        }
        LaurentPoly { field: c.field().clone(), terms }
    }

    /// `Y`
    pub fn y(field: &GaloisField) -> Self {
        Self::monomial(&field.one(), 1)
    }

    /// `1/Y`
    pub fn y_inv(field: &GaloisField) -> Self {
        Self::monomial(&field.one(), -1)
    }

    /// Builds from `(exponent, integer coefficient)` pairs in the prime
    /// subfield.
    pub fn from_int_terms(field: &GaloisField, terms: &[(i32, i64)]) -> Self {
        terms.iter().fold(Self::zero(field), |acc, &(e, c)| acc + Self::monomial(&field.from_int(c), e))
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn coeff(&self, e: i32) -> FieldElement {
        self.field.element(self.terms.get(&e).copied().unwrap_or(0))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, self.field.element(c)))
    }

    /// Lowest and highest exponent, or `None` for zero.
    pub fn degree_bounds(&self) -> Option<(i32, i32)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(self.field == *c.field(), "field mismatch");
        let mut out = Self::zero(&self.field);
        for (&e, &v) in &self.terms {
            let r = self.field.mul_raw(v, c.code());
            if r != 0 {
                out.terms.insert(e, r);
            }
        }
        out
    }

    /// Applies a map to every coefficient (e.g. Frobenius).
    pub fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        let mut out = Self::zero(&self.field);
        for (e, c) in self.terms() {
            let v = f(&c);
            if !v.is_zero() {
                out.terms.insert(e, v.code());
            }
        }
        out
    }

    /// A unit of `F[Y, 1/Y]` is exactly a nonzero monomial.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, &c) = self.terms.iter().next()?;
        let inv = self.field.inv_raw(c)?;
        Some(Self::monomial(&self.field.element(inv), -e))
    }

    /// Exact division; `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(self.field == other.field, "field mismatch");
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let (olo, ohi) = other.degree_bounds()?;
        let lead_inv = self.field.inv_raw(other.terms[&ohi])?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field);
        // long division from the top; terminates once the remainder span
        // is shorter than the divisor span
        loop {
            let Some((rlo, rhi)) = rem.degree_bounds() else { return Some(quot) };
            if rhi - rlo < ohi - olo {
                return None;
            }
            let c = self.field.mul_raw(rem.terms[&rhi], lead_inv);
            let shift = rhi - ohi;
            let term = Self::monomial(&self.field.element(c), shift);
            rem = &rem - &(&term * other);
            quot = &quot + &term;
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(e, c)| {
                let coef = if self.field.degree() == 1 { c.to_string() } else { format!("({c})") };
                match e {
                    0 => coef,
                    1 => format!("{coef}*Y"),
                    _ => format!("{coef}*Y^{e}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "field mismatch");
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            let v = self.field.add_raw(out.terms.get(&e).copied().unwrap_or(0), c);
            if v == 0 {
                out.terms.remove(&e);
            } else {
                out.terms.insert(e, v);
            }
        }
        out
    }
}

impl<'a> Neg for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.neg_raw(*v);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert!(self.field == rhs.field, "field mismatch");
        let mut acc: BTreeMap<i32, u32> = BTreeMap::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                let slot = acc.entry(e1 + e2).or_insert(0);
                *slot = self.field.add_raw(*slot, self.field.mul_raw(c1, c2));
            }
        }
        acc.retain(|_, v| *v != 0);
        LaurentPoly { field: self.field.clone(), terms: acc }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> GaloisField {
        GaloisField::prime(3).unwrap()
    }

    #[test]
    fn y_minus_one_over_y() {
        let f = f3();
        let y = LaurentPoly::y(&f);
        let yi = LaurentPoly::y_inv(&f);
        let one = LaurentPoly::one(&f);
        let lhs = &(&y - &one) * &yi;
        assert_eq!(lhs, &one - &yi);
        assert!((&yi * &y).is_one());
    }

    #[test]
    fn sum_reduces_to_one() {
        let f = f3();
        let yi = LaurentPoly::y_inv(&f);
        let ym1_over_y = LaurentPoly::from_int_terms(&f, &[(0, 1), (-1, -1)]);
        assert!((&ym1_over_y + &yi).is_one());
    }

    #[test]
    fn exact_division() {
        let f = f3();
        let a = LaurentPoly::from_int_terms(&f, &[(2, 1), (0, -1)]); // Y^2 - 1
        let b = LaurentPoly::from_int_terms(&f, &[(1, 1), (0, 1)]); // Y + 1
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, LaurentPoly::from_int_terms(&f, &[(1, 1), (0, -1)]));
        let c = LaurentPoly::from_int_terms(&f, &[(1, 1), (0, 2), (-3, 1)]);
        assert!(c.div_exact(&b).is_none() || &c.div_exact(&b).unwrap() * &b == c);
        assert!(LaurentPoly::y(&f).unit_inverse().unwrap() == LaurentPoly::y_inv(&f));
        assert!(b.unit_inverse().is_none());
    }
}
