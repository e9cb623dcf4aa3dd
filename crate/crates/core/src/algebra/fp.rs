//! Linear algebra over a prime field GF(p) with `u32` entries.

use super::field::mod_inv;

/// Reduced row echelon form of a dense matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// RREF with the pivot of each row in the leftmost available column, rows
/// scanned from the lowest index. Zero rows are dropped.
pub fn rref(m: &[Vec<u32>], p: u32) -> Echelon {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, pr);
        let inv = mod_inv(rows[r][c], p);
        scale_row(&mut rows[r], inv, p);
        let piv = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                axpy(row, &piv, p - f, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank(m: &[Vec<u32>], p: u32) -> usize {
    rref(m, p).rank()
}

fn scale_row(row: &mut [u32], s: u32, p: u32) {
    for x in row.iter_mut() {
        *x = ((*x as u64 * s as u64) % p as u64) as u32;
    }
}

/// `dst += s * src`
pub fn axpy(dst: &mut [u32], src: &[u32], s: u32, p: u32) {
    if s == 0 {
        return;
    }
    for (d, &x) in dst.iter_mut().zip(src) {
        if x != 0 {
            *d = ((*d as u64 + s as u64 * x as u64) % p as u64) as u32;
        }
    }
}

/// Incrementally maintained echelon basis: rows are kept fully reduced
/// against each other, with pivots chosen by a caller-supplied column order.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    width: usize,
    order: Vec<usize>,
    /// pivot column -> normalized row
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBasis {
    /// `order` lists the columns from most to least preferred pivot.
    pub fn new(p: u32, width: usize, order: Vec<usize>) -> Self {
        debug_assert_eq!(order.len(), width);
        EchelonBasis { p, width, order, rows: Vec::new() }
    }

    pub fn with_natural_order(p: u32, width: usize) -> Self {
        Self::new(p, width, (0..width).collect())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce_vec(&self, v: &mut [u32]) {
        for (c, row) in &self.rows {
            let f = v[*c];
            if f != 0 {
                axpy(v, row, self.p - f, self.p);
            }
        }
    }

    /// Inserts `v`; returns `true` if the span grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        self.reduce_vec(&mut v);
        let Some(&c) = self.order.iter().find(|&&c| v[c] != 0) else { return false };
        let inv = mod_inv(v[c], self.p);
        scale_row(&mut v, inv, self.p);
        for (_, row) in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                axpy(row, &v, self.p - f, self.p);
            }
        }
        self.rows.push((c, v));
        true
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cs: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        cs.sort_unstable();
        cs
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.iter().any(|(pc, _)| *pc == c)
    }

    /// Row with pivot in column `c`.
    pub fn row_for(&self, c: usize) -> Option<&[u32]> {
        self.rows.iter().find(|(pc, _)| *pc == c).map(|(_, r)| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let e = rref(&id, 5);
        assert_eq!(e.rows, id);
        assert_eq!(e.pivots, vec![0, 1, 2]);
        let z = vec![vec![0, 0], vec![0, 0]];
        let e = rref(&z, 3);
        assert!(e.rows.is_empty() && e.pivots.is_empty());
    }

    #[test]
    fn all_ones_rank_one() {
        assert_eq!(rank(&[vec![1, 1], vec![1, 1]], 2), 1);
    }

    #[test]
    fn rank_matches_determinant_minors() {
        // det of [[1,2],[3,4]] = -2, zero mod 2 and nonzero mod 3
        let m = vec![vec![1, 2], vec![3, 4]];
        assert_eq!(rank(&m, 2), 1);
        assert_eq!(rank(&m, 3), 2);
    }

    #[test]
    fn incremental_basis_respects_order() {
        let mut b = EchelonBasis::new(3, 3, vec![2, 1, 0]);
        assert!(b.insert(vec![1, 1, 1]));
        assert!(!b.insert(vec![2, 2, 2]));
        assert!(b.insert(vec![1, 0, 0]));
        assert_eq!(b.pivot_columns(), vec![0, 2]);
        let mut v = vec![0, 1, 1];
        b.reduce_vec(&mut v);
        assert_eq!(v, vec![0, 0, 0]);
        let mut w = vec![0, 1, 0];
        b.reduce_vec(&mut w);
        assert_eq!(w, vec![0, 1, 0]);
    }
}
