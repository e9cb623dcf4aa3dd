//! Σ-sets over a densely indexed p-group.

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use super::RamificationError;
use crate::pquotient::elements::{element_at, element_index, order_within};
use crate::pquotient::{Collector, PcElement, PcPresentation};

/// A pc group small enough to index every element by its lexicographic
/// rank.
#[derive(Clone, Debug)]
pub struct DenseGroup {
    pub pc: PcPresentation,
    pub collector: Collector,
    pub size: usize,
    /// The weight-one generators, which generate the group.
    pub generators: Vec<PcElement>,
}

impl DenseGroup {
    pub fn new(pc: &PcPresentation, cap: u64) -> Result<Self, RamificationError> {
        let size = order_within(pc, cap).map_err(|_| RamificationError::CapExceeded { exponent: pc.gen_count(), cap })? as usize;
        let collector = pc.collector();
        let generators = (0..pc.gen_count()).filter(|&g| pc.weights[g] == 1).map(|g| collector.gen(g)).collect();
        Ok(DenseGroup { pc: pc.clone(), collector, size, generators })
    }

    pub fn index(&self, e: &PcElement) -> usize {
        element_index(self.pc.p, e)
    }

    pub fn element(&self, i: usize) -> PcElement {
        element_at(self.pc.p, self.pc.gen_count(), i)
    }

    /// Conjugacy class of `x` as a list of indices.
    pub fn class_of(&self, x: &PcElement, seen: &mut BitVec) -> Vec<usize> {
        let mut out = Vec::new();
        let i = self.index(x);
        if seen[i] {
            return out;
        }
        seen.set(i, true);
        out.push(i);
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for g in &self.generators {
                let z = self.collector.conj(&y, g);
                let k = self.index(&z);
                if !seen[k] {
                    seen.set(k, true);
                    out.push(k);
                    stack.push(z);
                }
            }
        }
        out
    }
}

/// `Σ(T)`: all conjugates of all powers of the entries, identity included.
pub fn sigma_set(g: &DenseGroup, t: &[PcElement]) -> BitVec {
    let mut set = bitvec![0; g.size];
    set.set(0, true);
    let c = &g.collector;
    for x in t {
        let mut y = x.clone();
        while !y.is_identity() {
            if !set[g.index(&y)] {
                g.class_of(&y, &mut set);
            }
            y = c.mul(&y, x);
        }
    }
    set
}

/// `Σ(T)` by conjugating every power of every entry by every element.
pub fn sigma_set_bruteforce(g: &DenseGroup, t: &[PcElement]) -> BitVec {
    let c = &g.collector;
    let mut set = bitvec![0; g.size];
    set.set(0, true);
    let mut powers = Vec::new();
    for x in t {
        let mut y = x.clone();
        while !y.is_identity() {
            powers.push(y.clone());
            y = c.mul(&y, x);
        }
    }
    for h in 0..g.size {
        let h = g.element(h);
        let hi = c.inv(&h);
        for y in &powers {
            let z = c.mul(&c.mul(&h, y), &hi);
            set.set(g.index(&z), true);
        }
    }
    set
}

/// Sizes of the two Σ-sets and of their intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub sigma1: usize,
    pub sigma2: usize,
    pub intersection: usize,
}

impl Certificate {
    pub fn disjoint(&self) -> bool {
        self.intersection == 1
    }
}

pub fn certificate(s1: &BitVec, s2: &BitVec) -> Certificate {
    let inter = s1.as_raw_slice().iter().zip(s2.as_raw_slice()).map(|(a, b)| (a & b).count_ones() as usize).sum();
    Certificate { sigma1: s1.count_ones(), sigma2: s2.count_ones(), intersection: inter }
}

pub fn disjoint(g: &DenseGroup, t1: &[PcElement], t2: &[PcElement]) -> Certificate {
    certificate(&sigma_set(g, t1), &sigma_set(g, t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::pcp::tests::heisenberg;
    use crate::pquotient::{p_quotient, PqConfig};
    use crate::presentations::{Presentation, Word};

    fn cyclic_pc(p: u32, e: i64) -> PcPresentation {
        let pres = Presentation::new(vec!["g".into()], vec![Word::gen(0).pow(e)], Default::default()).unwrap();
        p_quotient(&pres, p, 8, &PqConfig::default()).unwrap().pc
    }

    #[test]
    fn cyclic_sigma_is_everything() {
        let pc = cyclic_pc(3, 9);
        let g = DenseGroup::new(&pc, 1 << 10).unwrap();
        let x = g.collector.gen(0);
        let t = vec![x.clone(), g.collector.inv(&x)];
        assert_eq!(sigma_set(&g, &t).count_ones(), 9);
    }

    #[test]
    fn central_and_bruteforce() {
        let pc = heisenberg(5);
        let g = DenseGroup::new(&pc, 1 << 10).unwrap();
        let z = g.collector.gen(2);
        // centre element: Σ is its cyclic subgroup
        assert_eq!(sigma_set(&g, &[z.clone()]).count_ones(), 5);
        let x = g.collector.collect(&[(0, 1), (1, 2)]);
        assert_eq!(sigma_set(&g, &[x.clone(), z.clone()]), sigma_set_bruteforce(&g, &[x, z]));
    }

    #[test]
    fn refuses_above_cap() {
        let pc = heisenberg(5);
        assert!(matches!(DenseGroup::new(&pc, 100), Err(RamificationError::CapExceeded { .. })));
    }
}
