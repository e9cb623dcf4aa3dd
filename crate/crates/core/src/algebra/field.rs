//! Small finite fields GF(p^n).
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
//! where `c_i` is the coefficient of `θ^i` and `θ` is the class of `x`
//! modulo the defining polynomial. Multiplication goes through log/exp
//! tables built from a primitive element found by search, so the modulus
//! itself does not have to be primitive (the GF(27) default is not).

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::AlgebraError;

/// Largest field size accepted.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Defining data of a finite field: characteristic, degree and a monic
/// modulus given by its low coefficients (`modulus[i]` is the
/// coefficient of `x^i`, the leading `x^n` is implicit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, n: 1, modulus: vec![0] }
    }

    /// GF(27) with `θ³ = θ + 1`, i.e. modulus `x³ - x - 1 = x³ + 2x + 2`.
    pub fn gf27() -> Self {
        FieldSpec { p: 3, n: 3, modulus: vec![2, 2, 0] }
    }

    /// Lexicographically smallest monic modulus of degree `n` over GF(p)
    /// for which `x` is a primitive element.
    pub fn conway_like(p: u32, n: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if n == 1 {
            return Ok(Self::prime(p));
        }
        let size = checked_size(p, n)?;
        for code in 0..size {
            let modulus = digits(code, p, n);
            if modulus[0] == 0 {
                continue;
            }
            let spec = FieldSpec { p, n, modulus };
            if spec.x_is_primitive() {
                return Ok(spec);
            }
        }
        Err(AlgebraError::Unsupported(format!("no primitive modulus for GF({p}^{n})")))
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.n)
    }

    fn x_is_primitive(&self) -> bool {
        if self.n == 1 {
            return false;
        }
        let order = self.size() - 1;
        let x = self.p;
        if slow_pow(self, x, order) != 1 {
            return false;
        }
        prime_factors(order).into_iter().all(|r| slow_pow(self, x, order / r) != 1)
    }

    fn is_irreducible(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        // trial division by every monic polynomial of degree 1..=n/2
        let p = self.p;
        let full: Vec<u32> = self.modulus.iter().copied().chain(std::iter::once(1)).collect();
        for deg in 1..=self.n / 2 {
            for code in 0..p.pow(deg) {
                let mut divisor = digits(code, p, deg);
                divisor.push(1);
                if poly_rem(&full, &divisor, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn checked_size(p: u32, n: u32) -> Result<u32, AlgebraError> {
    let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if n == 0 || size > MAX_FIELD_SIZE as u64 {
        return Err(AlgebraError::Unsupported(format!("GF({p}^{n}) outside supported range")));
    }
    Ok(size as u32)
}

fn digits(mut code: u32, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(crate) fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let f = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - f * bi % p) % p;
            }
        }
        r.pop();
    }
    r
}

pub(crate) fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a, p - 2, p)
}

pub(crate) fn mod_pow(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Schoolbook multiplication modulo the spec's modulus; used only to
/// build tables.
fn slow_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let (p, n) = (spec.p, spec.n as usize);
    let da = digits(a, p, n as u32);
    let db = digits(b, p, n as u32);
    let mut prod = vec![0u32; 2 * n - 1];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    // reduce x^n = -(modulus)
    for d in (n..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in spec.modulus.iter().enumerate() {
            let shift = d - n + i;
            prod[shift] = (prod[shift] + p - c * m % p) % p;
        }
    }
    prod.truncate(n);
    undigits(&prod, p)
}

fn slow_pow(spec: &FieldSpec, a: u32, mut e: u32) -> u32 {
    let (mut base, mut acc) = (a, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(spec, acc, base);
        }
        base = slow_mul(spec, base, base);
        e >>= 1;
    }
    acc
}

struct Tables {
    spec: FieldSpec,
    size: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field with precomputed tables. Cloning is cheap.
#[derive(Clone)]
pub struct GaloisField(Arc<Tables>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}
impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.spec.p, self.0.spec.n)
    }
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Result<Self, AlgebraError> {
        if !is_prime(spec.p) {
            return Err(AlgebraError::NotPrime(spec.p));
        }
        let size = checked_size(spec.p, spec.n)?;
        if spec.modulus.len() != spec.n as usize || spec.modulus.iter().any(|&c| c >= spec.p) {
            return Err(AlgebraError::BadModulus(format!("{:?}", spec.modulus)));
        }
        if !spec.is_irreducible() {
            return Err(AlgebraError::BadModulus(format!("{:?} is reducible", spec.modulus)));
        }
        let order = size - 1;
        let factors = prime_factors(order);
        let generator = (1..size)
            .find(|&g| factors.iter().all(|&r| slow_pow(&spec, g, order / r) != 1))
            .ok_or_else(|| AlgebraError::Unsupported("no primitive element".into()))?;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = k as u32;
            cur = slow_mul(&spec, cur, generator);
        }
        Ok(GaloisField(Arc::new(Tables { spec, size, generator, exp, log })))
    }

    pub fn prime(p: u32) -> Result<Self, AlgebraError> {
        Self::new(FieldSpec::prime(p))
    }

    pub fn gf27() -> Self {
        Self::new(FieldSpec::gf27()).expect("GF(27) modulus is irreducible")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.n
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: 1 }
    }

    /// The class of `x` (called θ for GF(27)). For prime fields this is 0.
    pub fn theta(&self) -> FieldElement {
        let code = if self.degree() == 1 { 0 } else { self.p() };
        FieldElement { field: self.clone(), code }
    }

    /// A fixed primitive element (smallest code of multiplicative order
    /// `size - 1`).
    pub fn primitive(&self) -> FieldElement {
        FieldElement { field: self.clone(), code: self.0.generator }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p() as i64;
        FieldElement { field: self.clone(), code: v.rem_euclid(p) as u32 }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, AlgebraError> {
        if coeffs.len() != self.degree() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(AlgebraError::BadCoefficients(coeffs.to_vec()));
        }
        Ok(FieldElement { field: self.clone(), code: undigits(coeffs, self.p()) })
    }

    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.size(), "element code out of range");
        FieldElement { field: self.clone(), code }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |c| self.element(c))
    }

    /// Elements of the subfield of order `q` (those with `x^q = x`).
    pub fn subfield(&self, q: u32) -> Vec<FieldElement> {
        self.elements().filter(|x| x.pow(q as u64) == *x).collect()
    }

    // raw code arithmetic

    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p();
        if self.degree() == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p();
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        let order = t.size - 1;
        let k = (t.log[a as usize] + t.log[b as usize]) % order;
        t.exp[k as usize]
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &self.0;
        let order = t.size - 1;
        Some(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub(crate) fn pow_raw(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let order = (t.size - 1) as u64;
        let k = (t.log[a as usize] as u64 * (e % order)) % order;
        t.exp[k as usize]
    }

    /// Discrete logarithm of a nonzero element to the base `base`, if it
    /// lies in the cyclic subgroup generated by `base`.
    pub fn log_base(&self, x: &FieldElement, base: &FieldElement) -> Option<u64> {
        if x.code == 0 || base.code == 0 {
            return None;
        }
        let order = (self.size() - 1) as u64;
        let lx = self.0.log[x.code as usize] as u64;
        let lb = self.0.log[base.code as usize] as u64;
        // solve lb * k = lx (mod order)
        let g = num_integer::gcd(lb, order);
        if lx % g != 0 {
            return None;
        }
        let m = order / g;
        let inv = mod_inverse_u64((lb / g) % m, m)?;
        Some((lx / g) % m * inv % m)
    }
}

fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// An element of a [`GaloisField`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: GaloisField,
    code: u32,
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.code);
        }
        let c = self.coeffs();
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.code, self.field.p(), self.field.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add_raw(self.code, other.code)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul_raw(self.code, other.code)))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        self.field.inv_raw(self.code).map(|c| self.with(c)).ok_or(AlgebraError::ZeroInverse)
    }

    /// `self^e` for any integer exponent; negative exponents need a
    /// nonzero base.
    pub fn pow_i(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow_raw(self.code, e))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = (self.field.size() - 1) as u64;
        let mut ord = n;
        for r in prime_factors(n as u32) {
            while ord % r as u64 == 0 && self.pow(ord / r as u64).is_one() {
                ord /= r as u64;
            }
        }
        Some(ord)
    }

    /// Frobenius `x ↦ x^p` computed coefficient-wise: `Σ c_i θ^{ip}`.
    pub fn frobenius_coeffwise(&self) -> Self {
        let p = self.field.p() as u64;
        let theta_p = self.field.theta().pow(p);
        let mut acc = self.field.zero();
        for (i, &c) in self.coeffs().iter().enumerate() {
            let term = theta_p.pow(i as u64) * self.field.from_int(c as i64);
            acc = acc + term;
        }
        acc
    }

    fn with(&self, code: u32) -> Self {
        FieldElement { field: self.field.clone(), code }
    }
}

macro_rules! field_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                assert!(self.field == rhs.field, "field mismatch: {:?} vs {:?}", self.field, rhs.field);
                let f: fn(&GaloisField, u32, u32) -> u32 = $body;
                self.with(f(&self.field, self.code, rhs.code))
            }
        }
    };
}

field_binop!(Add, add, |f, a, b| f.add_raw(a, b));
field_binop!(Sub, sub, |f, a, b| f.add_raw(a, f.neg_raw(b)));
field_binop!(Mul, mul, |f, a, b| f.mul_raw(a, b));

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg_raw(self.code))
    }
}

impl<'a> Neg for &'a FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg_raw(self.code))
    }
}

/// Number of distinct elements in a set of field elements.
pub fn distinct_count(xs: &[FieldElement]) -> usize {
    xs.iter().map(|x| x.code).collect::<BTreeSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_cubed_is_theta_plus_one() {
        let f = GaloisField::gf27();
        let t = f.theta();
        assert_eq!(&(&t * &t) * &t, t.clone() + f.one());
    }

    #[test]
    fn theta_has_order_thirteen() {
        let f = GaloisField::gf27();
        let t = f.theta();
        assert!(t.pow(13).is_one());
        assert_eq!(t.order(), Some(13));
        assert_eq!(f.primitive().order(), Some(26));
    }

    #[test]
    fn identity_and_inverse() {
        let f = GaloisField::gf27();
        for x in f.elements() {
            assert_eq!(&f.one() * &x, x);
            if !x.is_zero() {
                assert!((&x * &x.inv().unwrap()).is_one());
            }
        }
        assert_eq!(f.zero().inv(), Err(AlgebraError::ZeroInverse));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = GaloisField::gf27().one();
        let b = GaloisField::prime(3).unwrap().one();
        assert_eq!(a.checked_add(&b), Err(AlgebraError::FieldMismatch));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over GF(2)
        let spec = FieldSpec { p: 2, n: 2, modulus: vec![1, 0] };
        assert!(matches!(GaloisField::new(spec), Err(AlgebraError::BadModulus(_))));
    }

    #[test]
    fn primitive_moduli() {
        let s8 = FieldSpec::conway_like(2, 3).unwrap();
        assert_eq!(s8.modulus, vec![1, 1, 0]); // x^3 + x + 1
        let s64 = FieldSpec::conway_like(2, 6).unwrap();
        let f = GaloisField::new(s64).unwrap();
        assert_eq!(f.theta().order(), Some(63));
        assert_eq!(f.subfield(4).len(), 4);
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = GaloisField::gf27();
        for x in f.elements() {
            assert_eq!(x.pow(3), x.frobenius_coeffwise());
        }
    }

    #[test]
    fn discrete_log() {
        let f = GaloisField::gf27();
        let g = f.primitive();
        for k in 0..26u64 {
            assert_eq!(f.log_base(&g.pow(k), &g), Some(k));
        }
        // -1 is not a power of theta (order 13)
        assert_eq!(f.log_base(&f.from_int(-1), &f.theta()), None);
    }
}
