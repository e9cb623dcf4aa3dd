//! Spherical systems of generators.

use serde::{Deserialize, Serialize};

use super::sigma::{certificate, sigma_set, sigma_set_bruteforce, Certificate, DenseGroup};
use super::RamificationError;
use crate::algebra::fp::rank;
use crate::pquotient::{Collector, PcElement, PcPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphericalSystem {
    pub elements: Vec<PcElement>,
    /// Orders sorted ascending.
    pub system_type: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphericalCheck {
    pub nontrivial: bool,
    pub product_one: bool,
    pub generates: bool,
}

impl SphericalCheck {
    pub fn ok(&self) -> bool {
        self.nontrivial && self.product_one && self.generates
    }
}

/// Generation test through the Frattini quotient: elements of a p-group
/// generate it iff their images span the first layer (Burnside basis
/// theorem).
pub fn generates(pc: &PcPresentation, elems: &[PcElement]) -> bool {
    let layer: Vec<usize> = (0..pc.gen_count()).filter(|&g| pc.weights[g] == 1).collect();
    if layer.is_empty() {
        return true;
    }
    let rows: Vec<Vec<u32>> = elems.iter().map(|e| layer.iter().map(|&g| e.0[g]).collect()).collect();
    !rows.is_empty() && rank(&rows, pc.p) == layer.len()
}

pub fn system_type(c: &Collector, elems: &[PcElement]) -> Vec<u64> {
    let mut t: Vec<u64> = elems.iter().map(|e| c.order(e)).collect();
    t.sort_unstable();
    t
}

pub fn is_spherical_system(pc: &PcPresentation, elems: &[PcElement]) -> Result<SphericalCheck, RamificationError> {
    if elems.is_empty() {
        return Err(RamificationError::EmptyTuple);
    }
    let c = pc.collector();
    let prod = elems.iter().fold(c.identity(), |acc, x| c.mul(&acc, x));
    Ok(SphericalCheck {
        nontrivial: elems.iter().all(|e| !e.is_identity()),
        product_one: prod.is_identity(),
        generates: generates(pc, elems),
    })
}

impl SphericalSystem {
    pub fn new(pc: &PcPresentation, elems: Vec<PcElement>) -> Result<Self, RamificationError> {
        let chk = is_spherical_system(pc, &elems)?;
        if !chk.ok() {
            return Err(RamificationError::NotAStructure(format!("{chk:?}")));
        }
        let system_type = system_type(&pc.collector(), &elems);
        Ok(SphericalSystem { elements: elems, system_type })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationStructure {
    pub t1: SphericalSystem,
    pub t2: SphericalSystem,
    pub certificate: Certificate,
}

/// Full verification of a candidate pair. Σ-sets are computed by brute
/// force over all conjugators when that is cheap, and by class orbits
/// otherwise.
pub fn verify_structure(g: &DenseGroup, t1: &[PcElement], t2: &[PcElement]) -> Result<RamificationStructure, RamificationError> {
    let s1 = SphericalSystem::new(&g.pc, t1.to_vec())?;
    let s2 = SphericalSystem::new(&g.pc, t2.to_vec())?;
    let work = g.size as u64 * (s1.system_type.iter().sum::<u64>() + s2.system_type.iter().sum::<u64>());
    let (a, b) = if work <= 50_000_000 {
        (sigma_set_bruteforce(g, t1), sigma_set_bruteforce(g, t2))
    } else {
        (sigma_set(g, t1), sigma_set(g, t2))
    };
    let certificate = certificate(&a, &b);
    if !certificate.disjoint() {
        return Err(RamificationError::NotAStructure(format!("Σ-sets meet in {} elements", certificate.intersection)));
    }
    Ok(RamificationStructure { t1: s1, t2: s2, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::pcp::tests::heisenberg;
    use crate::pquotient::elements::enumerate_elements;

    /// Closure of the subgroup generated by `elems`, by brute force.
    fn closure_size(pc: &PcPresentation, elems: &[PcElement]) -> usize {
        let c = pc.collector();
        let mut set = std::collections::BTreeSet::new();
        set.insert(c.identity());
        let mut frontier = vec![c.identity()];
        while let Some(x) = frontier.pop() {
            for e in elems {
                let y = c.mul(&x, e);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set.len()
    }

    #[test]
    fn generation_matches_closure() {
        let pc = heisenberg(3);
        let all: Vec<PcElement> = enumerate_elements(&pc, 1000).unwrap().collect();
        for a in &all {
            for b in all.iter().step_by(2) {
                let gen = generates(&pc, &[a.clone(), b.clone()]);
                assert_eq!(gen, closure_size(&pc, &[a.clone(), b.clone()]) == 27);
            }
        }
    }

    #[test]
    fn identity_entry_is_rejected() {
        let pc = heisenberg(3);
        let c = pc.collector();
        let chk = is_spherical_system(&pc, &[c.identity(), c.gen(0)]).unwrap();
        assert!(!chk.nontrivial);
        assert!(!chk.ok());
        assert!(is_spherical_system(&pc, &[]).is_err());
    }
}
