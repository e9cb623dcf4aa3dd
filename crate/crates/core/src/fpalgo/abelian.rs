//! Abelian invariants of finitely presented groups.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{smith_normal_form, IntMatrix};
use crate::presentations::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    /// `d_1 | d_2 | ...`, all greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn torsion_u64(&self) -> Vec<u64> {
        crate::algebra::snf::factors_u64(&self.torsion).expect("torsion fits in u64")
    }

    /// Order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        parts.extend(std::iter::repeat("Z".to_string()).take(self.free_rank));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.gen_count();
    if p.relators.is_empty() {
        return AbelianInvariants { torsion: Vec::new(), free_rank: n };
    }
    let m = IntMatrix::from_rows(&p.relation_matrix());
    let snf = smith_normal_form(&m);
    AbelianInvariants { torsion: snf.torsion(), free_rank: snf.free_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog;

    #[test]
    fn paper_abelianizations() {
        assert_eq!(abelianization(&catalog::g0()).torsion_u64(), vec![2, 2, 6]);
        assert_eq!(abelianization(&catalog::ghat()).torsion_u64(), vec![2, 2, 2, 2, 6, 6]);
        let f = abelianization(&Presentation::free(2));
        assert_eq!((f.torsion.len(), f.free_rank), (0, 2));
        assert_eq!(f.to_string(), "Z x Z");
    }
}
