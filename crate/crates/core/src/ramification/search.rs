//! Search for unmixed ramification structures of given types.
//!
//! Σ-sets are unions of conjugacy classes, so systems are keyed by the set
//! of classes met by powers of their entries. Tuples are enumerated up to
//! simultaneous conjugation: the first entry runs over class
//! representatives and the second over orbits of the centralizer of the
//! first. Neither changes Σ, the type, product one or generation.

use std::collections::{BTreeSet, HashMap};

use bitvec::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sigma::DenseGroup;
use super::spherical::{generates, verify_structure, RamificationStructure};
use super::RamificationError;
use crate::algebra::fp::rank;
use crate::pquotient::PcElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// All tuples up to conjugation, in a fixed order, up to the budget.
    Exhaustive,
    /// Uniformly sampled tuples.
    Random { samples: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub strategy: Strategy,
    pub seed: u64,
    /// Maximal number of tuple prefixes examined for each type.
    pub budget: usize,
    pub max_results: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { strategy: Strategy::Exhaustive, seed: 0, budget: 1_000_000, max_results: 16 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub structures: Vec<RamificationStructure>,
    /// Every candidate of both types was examined.
    pub complete: bool,
    pub examined: usize,
    /// Spherical systems found of the first and second type, counted up
    /// to the symmetry reduction.
    pub systems: (usize, usize),
    /// Distinct Σ-sets among those systems.
    pub sigma_classes: (usize, usize),
    /// Pairs of disjoint Σ-sets met before `max_results` was reached.
    pub disjoint_pairs: usize,
}

/// Largest group for which a full multiplication table is built.
const TABLE_LIMIT: usize = 2048;

/// Element arithmetic on indices, with class data.
struct Arith<'a> {
    g: &'a DenseGroup,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    order: Vec<u64>,
    class: Vec<u32>,
    classes: usize,
    /// Layer-one coordinates.
    proj: Vec<Vec<u32>>,
}

impl<'a> Arith<'a> {
    fn new(g: &'a DenseGroup) -> Self {
        let n = g.size;
        let c = &g.collector;
        let elems: Vec<PcElement> = (0..n).map(|i| g.element(i)).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let rows: Vec<Vec<u32>> = elems.par_iter().map(|x| elems.iter().map(|y| g.index(&c.mul(x, y)) as u32).collect()).collect();
            rows.concat()
        });
        let inv = elems.par_iter().map(|x| g.index(&c.inv(x)) as u32).collect();
        let order = elems.par_iter().map(|x| c.order(x)).collect();
        let mut class = vec![u32::MAX; n];
        let mut classes = 0;
        let mut seen = bitvec![0; n];
        for i in 0..n {
            if class[i] == u32::MAX {
                for k in g.class_of(&elems[i], &mut seen) {
                    class[k] = classes as u32;
                }
                classes += 1;
            }
        }
        let layer: Vec<usize> = (0..g.pc.gen_count()).filter(|&i| g.pc.weights[i] == 1).collect();
        let proj = elems.iter().map(|e| layer.iter().map(|&k| e.0[k]).collect()).collect();
        Arith { g, table, inv, order, class, classes, proj }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.g.size + b] as usize,
            None => self.g.index(&self.g.collector.mul(&self.g.element(a), &self.g.element(b))),
        }
    }

    fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv[h] as usize, x), h)
    }

    /// Classes met by the powers of `x`, as a bit mask; bit 0 is the
    /// identity class.
    fn power_classes(&self, x: usize) -> Vec<u64> {
        let mut key = vec![0u64; self.classes.div_ceil(64)];
        key[0] = 1;
        let mut y = x;
        while y != 0 {
            let k = self.class[y] as usize;
            key[k / 64] |= 1 << (k % 64);
            y = self.mul(y, x);
        }
        key
    }
}

/// Spherical systems of one type, grouped by Σ-set. Only the first few
/// tuples of each group are retained.
struct Systems {
    keys: Vec<Vec<u64>>,
    members: Vec<Vec<Vec<usize>>>,
    count: usize,
    complete: bool,
    examined: usize,
}

struct Collect<'a, 'b> {
    ar: &'b Arith<'a>,
    typ: &'b [u64],
    keep: usize,
    limit: usize,
    out: Systems,
    index: HashMap<Vec<u64>, usize>,
    dedup: Option<BTreeSet<Vec<usize>>>,
}

impl Collect<'_, '_> {
    /// Completes a prefix with the forced last entry. Returns false once
    /// the budget is spent.
    fn leaf(&mut self, pre: &[usize]) -> bool {
        if self.out.examined >= self.limit {
            self.out.complete = false;
            return false;
        }
        self.out.examined += 1;
        let ar = self.ar;
        let prod = pre.iter().fold(0usize, |a, &x| ar.mul(a, x));
        let last = ar.inv[prod] as usize;
        if ar.order[last] != self.typ[self.typ.len() - 1] {
            return true;
        }
        let mut t = pre.to_vec();
        t.push(last);
        if let Some(d) = &mut self.dedup {
            if !d.insert(t.clone()) {
                return true;
            }
            let elems: Vec<PcElement> = t.iter().map(|&i| ar.g.element(i)).collect();
            if !generates(&ar.g.pc, &elems) {
                return true;
            }
        }
        let mut key = vec![0u64; ar.classes.div_ceil(64)];
        for &x in &t {
            for (k, w) in key.iter_mut().zip(ar.power_classes(x)) {
                *k |= w;
            }
        }
        self.out.count += 1;
        let out = &mut self.out;
        let k = *self.index.entry(key.clone()).or_insert_with(|| {
            out.keys.push(key);
            out.members.push(Vec::new());
            out.keys.len() - 1
        });
        if out.members[k].len() < self.keep {
            out.members[k].push(t);
        }
        true
    }
}

fn spans(ar: &Arith<'_>, rows: &[usize], extra: usize, dim: usize) -> bool {
    let m: Vec<Vec<u32>> = rows.iter().map(|&i| ar.proj[i].clone()).collect();
    rank(&m, ar.g.pc.p) + extra >= dim
}

/// Depth-first search over prefixes; a prefix must span the Frattini
/// quotient since the forced last entry lies in its span.
fn descend(col: &mut Collect<'_, '_>, pools: &[Vec<usize>], dim: usize, pre: &mut Vec<usize>) -> bool {
    let l = pre.len();
    if l == pools.len() {
        return col.leaf(pre);
    }
    let ar = col.ar;
    let remaining = pools.len() - 1 - l;
    let choices: Vec<usize> = if l == 1 {
        // orbit representatives of the centralizer of the first entry
        let x = pre[0];
        let cent: Vec<usize> = (0..ar.g.size).filter(|&h| ar.mul(x, h) == ar.mul(h, x)).collect();
        let mut seen = vec![false; ar.g.size];
        let mut reps = Vec::new();
        for &y in &pools[1] {
            if !seen[y] {
                reps.push(y);
                for &h in &cent {
                    seen[ar.conj(y, h)] = true;
                }
            }
        }
        reps
    } else {
        pools[l].clone()
    };
    for y in choices {
        pre.push(y);
        let ok = !spans(ar, pre, remaining, dim) || descend(col, pools, dim, pre);
        pre.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn systems_of_type(ar: &Arith<'_>, typ: &[u64], cfg: &SearchConfig) -> Systems {
    let r = typ.len();
    let g = ar.g;
    let mut col = Collect {
        ar,
        typ,
        keep: cfg.max_results.max(1),
        limit: 0,
        out: Systems { keys: Vec::new(), members: Vec::new(), count: 0, complete: true, examined: 0 },
        index: HashMap::new(),
        dedup: None,
    };
    if r < 2 {
        // a single entry with product one is trivial
        return col.out;
    }
    let pools: Vec<Vec<usize>> = typ[..r - 1].iter().map(|&m| (0..g.size).filter(|&i| ar.order[i] == m).collect()).collect();
    if pools.iter().any(Vec::is_empty) {
        return col.out;
    }
    let dim = ar.proj[0].len();
    match cfg.strategy {
        Strategy::Exhaustive => {
            col.limit = cfg.budget;
            let mut seen = vec![false; ar.classes];
            let mut reduced = pools.clone();
            reduced[0] = pools[0].iter().copied().filter(|&x| !std::mem::replace(&mut seen[ar.class[x] as usize], true)).collect();
            descend(&mut col, &reduced, dim, &mut Vec::new());
        }
        Strategy::Random { samples } => {
            col.limit = samples.min(cfg.budget);
            col.dedup = Some(BTreeSet::new());
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ typ.iter().fold(0u64, |a, &m| a.wrapping_mul(31).wrapping_add(m)));
            loop {
                let pre: Vec<usize> = pools.iter().map(|p| p[rng.gen_range(0..p.len())]).collect();
                if !col.leaf(&pre) {
                    break;
                }
            }
            col.out.complete = false;
        }
    }
    col.out
}

/// The distinct Σ-sets of spherical systems of type `typ`, with a flag
/// telling whether the enumeration was complete.
pub fn system_sigma_sets(g: &DenseGroup, typ: &[u64], cfg: &SearchConfig) -> Result<(Vec<BitVec>, bool), RamificationError> {
    if cfg.budget == 0 {
        return Err(RamificationError::ZeroBudget);
    }
    let ar = Arith::new(g);
    let mut t = typ.to_vec();
    t.sort_unstable();
    let s = systems_of_type(&ar, &t, cfg);
    let sets = s
        .keys
        .iter()
        .map(|key| {
            let mut set = bitvec![0; g.size];
            for (i, &c) in ar.class.iter().enumerate() {
                if key[c as usize / 64] >> (c % 64) & 1 == 1 {
                    set.set(i, true);
                }
            }
            set
        })
        .collect();
    Ok((sets, s.complete))
}

fn meet_trivially(a: &[u64], b: &[u64]) -> bool {
    // class 0 is the identity
    a.iter().zip(b).enumerate().all(|(k, (x, y))| if k == 0 { x & y & !1 == 0 } else { x & y == 0 })
}

/// Searches for structures whose tuples have the given types. Each
/// reported structure stands for its tuples up to conjugation of each
/// tuple; at most `max_results` are returned.
pub fn search_structures(g: &DenseGroup, type_a: &[u64], type_b: &[u64], cfg: &SearchConfig) -> Result<SearchOutcome, RamificationError> {
    if cfg.budget == 0 {
        return Err(RamificationError::ZeroBudget);
    }
    let ar = Arith::new(g);
    let mut ta = type_a.to_vec();
    ta.sort_unstable();
    let mut tb = type_b.to_vec();
    tb.sort_unstable();
    let a = systems_of_type(&ar, &ta, cfg);
    let same = tb == ta;
    let b_own;
    let b = if same {
        &a
    } else {
        b_own = systems_of_type(&ar, &tb, cfg);
        &b_own
    };
    let mut keys = BTreeSet::new();
    let mut chosen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut pairs = 0usize;
    'outer: for i in 0..a.keys.len() {
        for j in 0..b.keys.len() {
            if !meet_trivially(&a.keys[i], &b.keys[j]) {
                continue;
            }
            pairs += 1;
            for x in &a.members[i] {
                for y in &b.members[j] {
                    let mut k1 = x.clone();
                    k1.sort_unstable();
                    let mut k2 = y.clone();
                    k2.sort_unstable();
                    if keys.insert((k1, k2)) {
                        chosen.push((x.clone(), y.clone()));
                        if chosen.len() >= cfg.max_results {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let mut structures = Vec::new();
    for (x, y) in chosen {
        let t1: Vec<PcElement> = x.iter().map(|&i| g.element(i)).collect();
        let t2: Vec<PcElement> = y.iter().map(|&i| g.element(i)).collect();
        structures.push(verify_structure(g, &t1, &t2)?);
    }
    Ok(SearchOutcome {
        structures,
        complete: a.complete && b.complete,
        examined: a.examined + if same { 0 } else { b.examined },
        systems: (a.count, b.count),
        sigma_classes: (a.keys.len(), b.keys.len()),
        disjoint_pairs: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::{p_quotient, PqConfig};
    use crate::presentations::{Presentation, Word};

    fn elementary_abelian(p: u32) -> DenseGroup {
        let pres = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::gen(0).pow(p as i64), Word::gen(1).pow(p as i64), Word::commutator(&Word::gen(0), &Word::gen(1))],
            Default::default(),
        )
        .unwrap();
        let q = p_quotient(&pres, p, 2, &PqConfig::default()).unwrap();
        DenseGroup::new(&q.pc, 1 << 12).unwrap()
    }

    #[test]
    fn klein_four_has_none() {
        let g = elementary_abelian(2);
        for (ta, tb) in [(vec![2, 2, 2], vec![2, 2, 2]), (vec![2, 2, 2, 2], vec![2, 2, 2]), (vec![2, 2, 2, 2], vec![2, 2, 2, 2])] {
            let out = search_structures(&g, &ta, &tb, &SearchConfig::default()).unwrap();
            assert!(out.complete);
            assert!(out.structures.is_empty());
        }
    }

    #[test]
    fn z7_squared_beauville() {
        let g = elementary_abelian(7);
        let out = search_structures(&g, &[7, 7, 7], &[7, 7, 7], &SearchConfig::default()).unwrap();
        assert!(out.complete);
        assert!(!out.structures.is_empty());
        for s in &out.structures {
            assert_eq!(s.t1.system_type, vec![7, 7, 7]);
            assert!(s.certificate.disjoint());
        }
    }

    #[test]
    fn deterministic_random_mode() {
        let g = elementary_abelian(5);
        let cfg = SearchConfig { strategy: Strategy::Random { samples: 200 }, seed: 7, ..SearchConfig::default() };
        let a = search_structures(&g, &[5, 5, 5], &[5, 5, 5], &cfg).unwrap();
        let b = search_structures(&g, &[5, 5, 5], &[5, 5, 5], &cfg).unwrap();
        assert_eq!(a.structures, b.structures);
    }
}
