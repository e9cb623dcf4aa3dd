//! Isomorphism invariants of pc groups.
//!
//! Equal fingerprints are necessary for isomorphism, not sufficient.

use serde::{Deserialize, Serialize};

use super::elements::{element_at, element_index, order_within};
use super::pcp::{PcElement, PcPresentation};
use crate::algebra::fp::rank;
use crate::algebra::{smith_normal_form, IntMatrix};

/// Groups up to this order also get an exponent and a class count.
pub const FINGERPRINT_DENSE_CAP: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub p: u32,
    pub order_exponent: usize,
    pub class: u32,
    /// `log_p |P_{w-1}/P_w|` for each weight `w`.
    pub layer_sizes: Vec<usize>,
    /// Invariant factors of the abelianization (factors `> 1`).
    pub abelian_invariants: Vec<u64>,
    /// Rank of the `p`-th power map from layer `w` to layer `w + 1`.
    pub power_ranks: Vec<usize>,
    /// Rank of the commutator map `layer w × layer 1 → layer w + 1`.
    pub commutator_ranks: Vec<usize>,
    pub exponent: Option<u64>,
    pub class_count: Option<usize>,
}

fn layer_projection(pc: &PcPresentation, e: &PcElement, w: u32) -> Vec<u32> {
    (0..pc.gen_count()).filter(|&g| pc.weights[g] == w).map(|g| e.0[g]).collect()
}

pub fn abelian_invariants(pc: &PcPresentation) -> Vec<u64> {
    let n = pc.gen_count();
    if n == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut r = vec![0i64; n];
        r[i] = pc.p as i64;
        for &(g, e) in &pc.powers[i] {
            r[g] -= e as i64;
        }
        rows.push(r);
    }
    for row in &pc.commutators {
        for c in row {
            if !c.is_empty() {
                let mut r = vec![0i64; n];
                for &(g, e) in c {
                    r[g] = e as i64;
                }
                rows.push(r);
            }
        }
    }
    let m = IntMatrix::from_rows(&rows);
    let snf = smith_normal_form(&m);
    crate::algebra::snf::factors_u64(&snf.torsion()).expect("p-group invariants fit in u64")
}

pub fn fingerprint(pc: &PcPresentation) -> Fingerprint {
    fingerprint_with_cap(pc, FINGERPRINT_DENSE_CAP)
}

pub fn fingerprint_with_cap(pc: &PcPresentation, cap: u64) -> Fingerprint {
    let c = pc.collector();
    let p = pc.p;
    let n = pc.gen_count();
    let gens_of = |w: u32| (0..n).filter(move |&g| pc.weights[g] == w);
    let mut power_ranks = Vec::new();
    let mut commutator_ranks = Vec::new();
    for w in 1..pc.class {
        let mut rows: Vec<Vec<u32>> = gens_of(w).map(|g| layer_projection(pc, &c.pow(&c.gen(g), p as i64), w + 1)).collect();
        if p == 2 && w == 1 {
            // squares of products contribute commutators of the first layer
            for j in gens_of(1) {
                for i in gens_of(1).filter(|&i| i < j) {
                    rows.push(layer_projection(pc, &c.comm(&c.gen(j), &c.gen(i)), 2));
                }
            }
        }
        power_ranks.push(if rows.is_empty() { 0 } else { rank(&rows, p) });
        let mut crow = Vec::new();
        for j in gens_of(w) {
            for i in gens_of(1) {
                crow.push(layer_projection(pc, &c.comm(&c.gen(j), &c.gen(i)), w + 1));
            }
        }
        commutator_ranks.push(if crow.is_empty() { 0 } else { rank(&crow, p) });
    }
    let (exponent, class_count) = match order_within(pc, cap) {
        Ok(size) => {
            let size = size as usize;
            let mut exp = 1u64;
            for idx in 0..size {
                exp = exp.max(c.order(&element_at(p, n, idx)));
            }
            (Some(exp), Some(class_count(pc, size)))
        }
        Err(_) => (None, None),
    };
    Fingerprint {
        p,
        order_exponent: n,
        class: pc.class,
        layer_sizes: pc.layer_sizes(),
        abelian_invariants: abelian_invariants(pc),
        power_ranks,
        commutator_ranks,
        exponent,
        class_count,
    }
}

/// Conjugacy classes counted as orbits under the weight-one generators.
fn class_count(pc: &PcPresentation, size: usize) -> usize {
    let c = pc.collector();
    let n = pc.gen_count();
    let gens: Vec<PcElement> = (0..n).filter(|&g| pc.weights[g] == 1).map(|g| c.gen(g)).collect();
    let mut seen = vec![false; size];
    let mut classes = 0;
    for start in 0..size {
        if seen[start] {
            continue;
        }
        classes += 1;
        seen[start] = true;
        let mut stack = vec![element_at(pc.p, n, start)];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = c.conj(&x, g);
                let k = element_index(pc.p, &y);
                if !seen[k] {
                    seen[k] = true;
                    stack.push(y);
                }
            }
        }
    }
    classes
}
