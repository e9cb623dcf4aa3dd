//! Invariants of the surface `(C_1 × C_2)/G` attached to an unmixed
//! ramification structure, by exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("empty type")]
    EmptyType,
    #[error("type entry {0} is smaller than 2")]
    BadEntry(u64),
    #[error("genus {0} is not an integer although every entry divides the group order")]
    NonIntegralGenus(BigRational),
    #[error("curve {curve} has genus {genus}; a higher product needs genus at least 2")]
    GenusTooSmall { curve: usize, genus: BigRational },
    #[error("chi = {0} is not an integer")]
    NonIntegralChi(BigRational),
    #[error("value {0} does not fit in 64 bits")]
    Overflow(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub genus1: i64,
    pub genus2: i64,
    #[serde(with = "rational_text")]
    pub chi: BigRational,
    /// Topological Euler number, `4 chi`.
    pub euler: i64,
    /// `K²`, equal to `8 chi`.
    pub ksq: i64,
    pub pg: i64,
    pub q: i64,
}

/// Rationals as `"n"` or `"n/d"` strings in JSON.
mod rational_text {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `r - 2 - Σ 1/m_l`
fn defect(typ: &[u64]) -> Result<BigRational, SurfaceError> {
    if typ.is_empty() {
        return Err(SurfaceError::EmptyType);
    }
    let mut d = BigRational::from_integer(BigInt::from(typ.len() as i64 - 2));
    for &m in typ {
        if m < 2 {
            return Err(SurfaceError::BadEntry(m));
        }
        d -= ratio(1, m);
    }
    Ok(d)
}

/// Riemann–Hurwitz: `g = 1 + |G|/2 · (r - 2 - Σ 1/m_l)`.
pub fn curve_genus(order: u64, typ: &[u64]) -> Result<BigRational, SurfaceError> {
    if order == 0 {
        return Err(SurfaceError::ZeroOrder);
    }
    let g = BigRational::one() + ratio(order, 2) * defect(typ)?;
    if !g.is_integer() && typ.iter().all(|&m| order % m == 0) {
        return Err(SurfaceError::NonIntegralGenus(g));
    }
    Ok(g)
}

fn to_i64(x: &BigRational) -> Result<i64, SurfaceError> {
    if !x.is_integer() {
        return Err(SurfaceError::NonIntegralChi(x.clone()));
    }
    x.to_integer().to_i64().ok_or_else(|| SurfaceError::Overflow(x.clone()))
}

/// `chi = |G|/4 · (r-2-Σ1/m_l)(s-2-Σ1/n_l)`, and `e = 4 chi`, `K² = 8 chi`,
/// `q = 0`, `p_g = chi - 1` for the regular quotient.
pub fn surface_invariants(order: u64, a1: &[u64], a2: &[u64]) -> Result<SurfaceInvariants, SurfaceError> {
    let g1 = curve_genus(order, a1)?;
    let g2 = curve_genus(order, a2)?;
    let two = BigRational::from_integer(BigInt::from(2));
    for (curve, g) in [(1, &g1), (2, &g2)] {
        if *g < two {
            return Err(SurfaceError::GenusTooSmall { curve, genus: g.clone() });
        }
    }
    let chi = ratio(order, 4) * defect(a1)? * defect(a2)?;
    // the same number through the genera
    let via_genera = (&g1 - BigRational::one()) * (&g2 - BigRational::one()) / BigRational::from_integer(BigInt::from(order));
    debug_assert_eq!(chi, via_genera);
    let c = to_i64(&chi)?;
    Ok(SurfaceInvariants {
        genus1: to_i64(&g1)?,
        genus2: to_i64(&g2)?,
        chi,
        euler: 4 * c,
        ksq: 8 * c,
        pg: c - 1,
        q: 0,
    })
}

/// `chi` from the genera, `(g_1 - 1)(g_2 - 1)/|G|`.
pub fn chi_from_genera(order: u64, g1: i64, g2: i64) -> BigRational {
    BigRational::new(BigInt::from(g1 - 1) * BigInt::from(g2 - 1), BigInt::from(order))
}

impl SurfaceInvariants {
    pub fn chi_is_integral(&self) -> bool {
        self.chi.is_integer() && !self.chi.is_zero()
    }
}
