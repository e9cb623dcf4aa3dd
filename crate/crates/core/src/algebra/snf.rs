//! Smith normal form of integer matrices.
//!
//! Elimination runs on checked `i64` first; if any intermediate product
//! overflows the whole computation is redone over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Rectangular integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().copied().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }
}

/// Result of a Smith normal form computation: nonzero diagonal entries
/// `d_1 | d_2 | ... | d_r` (units included) and the number of zero
/// diagonal slots, i.e. `cols - r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn negate(&self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    /// floor quotient and remainder of `self / d`
    fn div_floor(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn divides(&self, b: &Self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn negate(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        if *self == i64::MIN && *d == -1 {
            return None;
        }
        Some(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn divides(&self, b: &Self) -> bool {
        *self != 0 && b % self == 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn negate(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn div_floor(&self, d: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, d))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn divides(&self, b: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(b % self))
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Work<T> {
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for c in 0..self.cols {
                self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + c1, r * self.cols + c2);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let v = self.at(dst, c).sub_mul(q, self.at(src, c))?;
            self.a[dst * self.cols + c] = v;
        }
        Some(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let v = self.at(r, dst).sub_mul(q, self.at(r, src))?;
            self.a[r * self.cols + dst] = v;
        }
        Some(())
    }

    fn row_add(&mut self, dst: usize, src: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = self.at(dst, c).add(self.at(src, c))?;
            self.a[dst * self.cols + c] = v;
        }
        Some(())
    }

    /// Smallest nonzero |entry| in the trailing block, first in row-major
    /// order on ties.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = self.at(r, c);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((br, bc)) if !v.abs_lt(self.at(br, bc)) => {}
                    _ => best = Some((r, c)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<(Vec<T>, usize)> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.smallest(t) else { break };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let p = self.at(t, t).clone();
                let mut dirty = false;
                for r in t + 1..self.rows {
                    if !self.at(r, t).is_zero() {
                        let q = self.at(r, t).div_floor(&p)?;
                        self.row_sub(r, t, &q)?;
                        if !self.at(r, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                for c in t + 1..self.cols {
                    if !self.at(t, c).is_zero() {
                        let q = self.at(t, c).div_floor(&p)?;
                        self.col_sub(c, t, &q)?;
                        if !self.at(t, c).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // a smaller remainder appeared in row/column t; move it to the pivot
                    let (br, bc) = self.smallest_in_cross(t);
                    self.swap_rows(t, br);
                    self.swap_cols(t, bc);
                    continue;
                }
                // divisibility of the remaining block
                let bad = (t + 1..self.rows)
                    .flat_map(|r| (t + 1..self.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !p.divides(self.at(r, c)));
                match bad {
                    Some((r, _)) => {
                        self.row_add(t, r)?;
                    }
                    None => break,
                }
            }
            let mut d = self.at(t, t).clone();
            if d.is_negative() {
                d = d.negate()?;
            }
            diag.push(d);
            t += 1;
        }
        let free = self.cols - diag.len();
        Some((diag, free))
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        for r in t..self.rows {
            let v = self.at(r, t);
            if !v.is_zero() && v.abs_lt(self.at(best.0, best.1)) {
                best = (r, t);
            }
        }
        for c in t..self.cols {
            let v = self.at(t, c);
            if !v.is_zero() && v.abs_lt(self.at(best.0, best.1)) {
                best = (t, c);
            }
        }
        best
    }
}

/// Smith normal form; deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let fast = Work { rows: m.rows, cols: m.cols, a: m.data.clone() }.run();
    let (factors, free_rank) = match fast {
        Some((d, free)) => (d.iter().map(Scalar::to_big).collect(), free),
        None => {
            let big = Work { rows: m.rows, cols: m.cols, a: m.data.iter().map(|&v| BigInt::from(v)).collect() };
            big.run().expect("bigint elimination cannot overflow")
        }
    };
    SmithForm { factors, free_rank }
}

/// Convenience: invariant factors as `u64` when they fit.
pub fn factors_u64(f: &[BigInt]) -> Option<Vec<u64>> {
    f.iter().map(|d| d.to_u64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> (Vec<u64>, usize) {
        let s = smith_normal_form(&IntMatrix::from_rows(rows));
        (factors_u64(&s.factors).unwrap(), s.free_rank)
    }

    #[test]
    fn diagonal_input() {
        assert_eq!(snf(&[vec![2, 0], vec![0, 6]]), (vec![2, 6], 0));
        assert_eq!(snf(&[vec![6, 0], vec![0, 2]]), (vec![2, 6], 0));
    }

    #[test]
    fn small_example() {
        assert_eq!(snf(&[vec![-4, -2], vec![3, 4]]), (vec![1, 10], 0));
    }

    #[test]
    fn zero_matrix_has_free_rank() {
        assert_eq!(snf(&[vec![0]]), (vec![], 1));
        let s = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(s.free_rank, 3);
    }

    #[test]
    fn overflow_escalates() {
        let big = i64::MAX / 3;
        let s = smith_normal_form(&IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big + 5]]));
        // det computed exactly in BigInt
        let det = BigInt::from(big) * BigInt::from(big + 5) - BigInt::from(big - 1) * BigInt::from(big - 7);
        let prod: BigInt = s.factors.iter().product();
        assert_eq!(prod, det.abs());
    }
}
