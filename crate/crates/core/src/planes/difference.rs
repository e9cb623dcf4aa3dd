//! Perfect difference sets modulo `m = q² + q + 1`.

use serde::{Deserialize, Serialize};

use super::PlaneError;
use crate::algebra::field::{FieldSpec, GaloisField};

/// A set of residues mod `m` in which every nonzero residue is a
/// difference of two members in exactly one way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceSet {
    m: u32,
    residues: Vec<u32>,
}

/// Outcome of [`is_perfect_difference_set`]. `multiplicities[d]` counts
/// the ordered pairs `(a, b)` with `a - b = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceCheck {
    pub perfect: bool,
    pub multiplicities: Vec<u32>,
}

pub fn is_perfect_difference_set(residues: &[u32], m: u32) -> DifferenceCheck {
    let mut mult = vec![0u32; m as usize];
    for &a in residues {
        for &b in residues {
            if a != b {
                mult[((a + m - b % m) % m) as usize] += 1;
            }
        }
    }
    let distinct = {
        let mut r: Vec<u32> = residues.iter().map(|r| r % m).collect();
        r.sort_unstable();
        r.dedup();
        r.len() == residues.len()
    };
    let perfect = m >= 1 && distinct && mult.iter().skip(1).all(|&c| c == 1);
    DifferenceCheck { perfect, multiplicities: mult }
}

impl DifferenceSet {
    pub fn new(m: u32, residues: &[u32]) -> Result<Self, PlaneError> {
        let mut r: Vec<u32> = residues.iter().map(|x| x % m).collect();
        r.sort_unstable();
        if !is_perfect_difference_set(&r, m).perfect {
            return Err(PlaneError::NotPerfect(m));
        }
        Ok(DifferenceSet { m, residues: r })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Order `q` of the plane, from `|D| = q + 1`.
    pub fn order(&self) -> u32 {
        self.residues.len() as u32 - 1
    }

    pub fn translate(&self, t: u32) -> Self {
        let mut r: Vec<u32> = self.residues.iter().map(|x| (x + t) % self.m).collect();
        r.sort_unstable();
        DifferenceSet { m: self.m, residues: r }
    }

    /// Multiplies by `u`, which must be a unit mod `m`.
    pub fn scale(&self, u: u32) -> Option<Self> {
        if num_integer::gcd(u, self.m) != 1 {
            return None;
        }
        let mut r: Vec<u32> = self.residues.iter().map(|&x| ((x as u64 * u as u64) % self.m as u64) as u32).collect();
        r.sort_unstable();
        Some(DifferenceSet { m: self.m, residues: r })
    }

    /// Equivalence under `x ↦ u·x + t` with `u` a unit mod `m`.
    pub fn equivalent(&self, other: &Self) -> bool {
        if self.m != other.m || self.residues.len() != other.residues.len() {
            return false;
        }
        (1..self.m.max(2)).filter_map(|u| self.scale(u)).any(|s| (0..self.m).any(|t| s.translate(t) == *other))
    }

    /// Lexicographically smallest translate; display only.
    pub fn canonical_translate(&self) -> Self {
        (0..self.m).map(|t| self.translate(t)).min_by(|a, b| a.residues.cmp(&b.residues)).unwrap_or_else(|| self.clone())
    }
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Fields used for the Singer construction: `GF(q³)` with its subfield
/// `GF(q)`. GF(27) uses the default modulus, others the smallest modulus
/// with `x` primitive.
pub fn singer_field(q: u32) -> Result<GaloisField, PlaneError> {
    let (p, e) = prime_power(q).ok_or(PlaneError::Unsupported(q))?;
    let spec = if q == 3 { FieldSpec::gf27() } else { FieldSpec::conway_like(p, 3 * e).map_err(|_| PlaneError::Unsupported(q))? };
    GaloisField::new(spec).map_err(|_| PlaneError::Unsupported(q))
}

/// Discrete logs (base a fixed primitive element, reduced mod `m`) of the
/// nonzero points of the GF(q)-span of `{1, θ}` in GF(q³).
pub fn singer_difference_set(q: u32) -> Result<DifferenceSet, PlaneError> {
    let f = singer_field(q)?;
    let m = q * q + q + 1;
    let g = f.primitive();
    let theta = f.theta();
    let sub = f.subfield(q);
    let mut logs: Vec<u32> = Vec::new();
    for a in &sub {
        for b in &sub {
            let v = a + &(b * &theta);
            if v.is_zero() {
                continue;
            }
            let l = f.log_base(&v, &g).expect("primitive element generates") as u32;
            logs.push(l % m);
        }
    }
    logs.sort_unstable();
    logs.dedup();
    DifferenceSet::new(m, &logs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_sets_are_perfect() {
        assert!(is_perfect_difference_set(&[1, 2, 4], 7).perfect);
        assert!(is_perfect_difference_set(&[0, 1, 3, 9], 13).perfect);
        assert!(is_perfect_difference_set(&[3, 6, 7, 12, 14], 21).perfect);
    }

    #[test]
    fn non_perfect_reports_multiplicity() {
        let c = is_perfect_difference_set(&[0, 1, 2], 7);
        assert!(!c.perfect);
        assert_eq!(c.multiplicities[1], 2);
    }

    #[test]
    fn singer_sets() {
        for q in [2, 3, 4, 5] {
            let d = singer_difference_set(q).unwrap();
            assert_eq!(d.residues().len() as u32, q + 1);
            assert_eq!(d.modulus(), q * q + q + 1);
        }
        let d2 = singer_difference_set(2).unwrap();
        assert!(d2.equivalent(&DifferenceSet::new(7, &[1, 2, 4]).unwrap()));
        let d3 = singer_difference_set(3).unwrap();
        assert!(d3.equivalent(&DifferenceSet::new(13, &[0, 1, 3, 9]).unwrap()));
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(singer_difference_set(6), Err(PlaneError::Unsupported(6)));
        assert_eq!(singer_difference_set(1), Err(PlaneError::Unsupported(1)));
        assert_eq!(prime_power(8), Some((2, 3)));
    }
}
