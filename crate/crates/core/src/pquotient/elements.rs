//! Dense enumeration of a pc group.

use super::pcp::{PcElement, PcPresentation};
use super::PQuotientError;

pub const DEFAULT_ELEMENT_CAP: u64 = 1 << 24;

/// All elements in lexicographic order of exponent vectors.
#[derive(Clone, Debug)]
pub struct ElementIter {
    p: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for ElementIter {
    type Item = PcElement;

    fn next(&mut self) -> Option<PcElement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        let mut done = true;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.p {
                done = false;
                break;
            }
            succ[i] = 0;
        }
        if !done {
            self.next = Some(succ);
        }
        Some(PcElement(cur))
    }
}

/// `log_p` order must satisfy `p^n ≤ cap`.
pub fn order_within(pc: &PcPresentation, cap: u64) -> Result<u64, PQuotientError> {
    let n = pc.gen_count();
    let mut size = 1u64;
    for _ in 0..n {
        size = size.checked_mul(pc.p as u64).filter(|&s| s <= cap).ok_or(PQuotientError::CapExceeded { exponent: n, cap })?;
    }
    Ok(size)
}

pub fn enumerate_elements(pc: &PcPresentation, cap: u64) -> Result<ElementIter, PQuotientError> {
    order_within(pc, cap)?;
    Ok(ElementIter { p: pc.p, next: Some(vec![0; pc.gen_count()]) })
}

/// Position of an element in the enumeration order.
pub fn element_index(p: u32, e: &PcElement) -> usize {
    e.0.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn element_at(p: u32, n: usize, mut idx: usize) -> PcElement {
    let mut v = vec![0u32; n];
    for i in (0..n).rev() {
        v[i] = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    PcElement(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::pcp::tests::heisenberg;

    #[test]
    fn counts_and_order() {
        let pc = heisenberg(3);
        let all: Vec<PcElement> = enumerate_elements(&pc, 1000).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, e) in all.iter().enumerate() {
            assert_eq!(element_index(3, e), i);
            assert_eq!(&element_at(3, 3, i), e);
        }
        assert!(enumerate_elements(&pc, 26).is_err());
        assert_eq!(enumerate_elements(&PcPresentation::trivial(5), 10).unwrap().count(), 1);
    }
}
