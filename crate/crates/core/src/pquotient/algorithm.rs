//! Lifting through the lower exponent-p central series.
//!
//! Each step builds the p-covering group of the current quotient by adding
//! a central tail of order `p` to every relation that is not a definition
//! and to the image of every source generator that does not define a pc
//! generator. Consistency tests and relator images give linear relations
//! among the tails; the surviving tails form the next layer.
//!
//! Consistency filter (weights `w`, target class `c + 1`):
//! `(a_k a_j) a_i` is tested when `w_i + w_j + w_k ≤ c + 1`,
//! `a_j^p a_i` and `a_j a_i^p` when `w_i + w_j ≤ c`, and `a_i^p a_i` always.
//! Commutators `[a_j, a_i]` with `w_i + w_j > c + 1` get no tail, since
//! they lie in a term of the series that vanishes in the cover.

use serde::{Deserialize, Serialize};

use super::pcp::{to_word, Check, Definition, PcElement, PcPresentation, PcWord, Rules};
use super::PQuotientError;
use crate::algebra::fp::EchelonBasis;
use crate::presentations::{Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqConfig {
    pub max_class: u32,
    pub max_gens: usize,
    /// Run every consistency test during lifting instead of the weighted set.
    pub full_checks: bool,
    /// Verify consistency of the final presentation on all triples.
    pub verify: bool,
}

impl Default for PqConfig {
    fn default() -> Self {
        PqConfig { max_class: 8, max_gens: 512, full_checks: false, verify: true }
    }
}

pub const MAX_PRIME: u32 = 1 << 15;

/// Images of the source generators in the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epimorphism {
    pub source: Presentation,
    pub images: Vec<PcElement>,
}

impl Epimorphism {
    /// Image of a word in the source generators.
    pub fn image(&self, pc: &PcPresentation, w: &Word) -> PcElement {
        let c = pc.collector();
        let mut e = c.identity();
        for &l in w.letters() {
            let g = (l.unsigned_abs() - 1) as usize;
            let x = if l > 0 { self.images[g].clone() } else { c.inv(&self.images[g]) };
            e = c.mul(&e, &x);
        }
        e
    }

    /// Indices of relators whose image is not trivial.
    pub fn failing_relators(&self, pc: &PcPresentation) -> Vec<usize> {
        (0..self.source.relators.len()).filter(|&i| !self.image(pc, &self.source.relators[i]).is_identity()).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PQuotient {
    pub pc: PcPresentation,
    pub epi: Epimorphism,
    /// `log_p |G/P_i|` for `i = 1..=class` reached.
    pub orders: Vec<usize>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Maximal p-quotient of class at most `k`.
pub fn p_quotient(pres: &Presentation, p: u32, k: u32, cfg: &PqConfig) -> Result<PQuotient, PQuotientError> {
    if !is_prime(p) {
        return Err(PQuotientError::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(PQuotientError::PrimeTooLarge(p));
    }
    if k > cfg.max_class {
        return Err(PQuotientError::ClassBound { class: k, bound: cfg.max_class });
    }
    let mut state = class_one(pres, p, cfg)?;
    let mut orders = Vec::new();
    if k == 0 {
        state = State { pc: PcPresentation::trivial(p), images: vec![Vec::new(); pres.gen_count()] };
    } else {
        orders.push(state.pc.gen_count());
    }
    for c in 1..k {
        if state.pc.class < c {
            // series has stabilised
            orders.push(state.pc.gen_count());
            continue;
        }
        state = lift(pres, &state, cfg)?;
        orders.push(state.pc.gen_count());
    }
    let pc = state.pc;
    pc.validate_shape()?;
    if cfg.verify {
        let bad = pc.consistency_failures();
        if let Some(first) = bad.first() {
            return Err(PQuotientError::Inconsistent(format!("{} failing consistency tests, first {first:?}", bad.len())));
        }
    }
    let epi = Epimorphism { source: pres.clone(), images: state.images.into_iter().map(PcElement).collect() };
    let failing = epi.failing_relators(&pc);
    if let Some(&r) = failing.first() {
        return Err(PQuotientError::Inconsistent(format!("relator {r} does not map to the identity")));
    }
    Ok(PQuotient { pc, epi, orders })
}

#[derive(Clone, Debug)]
struct State {
    pc: PcPresentation,
    images: Vec<Vec<u32>>,
}

fn class_one(pres: &Presentation, p: u32, cfg: &PqConfig) -> Result<State, PQuotientError> {
    let m = pres.gen_count();
    let mut eb = EchelonBasis::with_natural_order(p, m);
    for row in pres.relation_matrix() {
        eb.insert(row.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect());
    }
    let free: Vec<usize> = (0..m).filter(|&c| !eb.is_pivot(c)).collect();
    let d = free.len();
    if d > cfg.max_gens {
        return Err(PQuotientError::TooManyGenerators { count: d, limit: cfg.max_gens });
    }
    let mut images = vec![vec![0u32; d]; m];
    for (a, &s) in free.iter().enumerate() {
        images[s][a] = 1;
    }
    for s in 0..m {
        if let Some(row) = eb.row_for(s) {
            // x_s + Σ row[f] x_f = 0
            for (a, &f) in free.iter().enumerate() {
                images[s][a] = (p - row[f]) % p;
            }
        }
    }
    let pc = PcPresentation {
        p,
        weights: vec![1; d],
        definitions: free.iter().map(|&s| Definition::Image(s)).collect(),
        powers: vec![Vec::new(); d],
        commutators: (0..d).map(|j| vec![Vec::new(); j]).collect(),
        class: if d == 0 { 0 } else { 1 },
    };
    Ok(State { pc, images })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Power(usize),
    Commutator(usize, usize),
    Image(usize),
}

fn lift(pres: &Presentation, st: &State, cfg: &PqConfig) -> Result<State, PQuotientError> {
    let q = &st.pc;
    let p = q.p;
    let n = q.gen_count();
    let c = q.class;
    let w = &q.weights;
    let defined: std::collections::HashSet<Definition> = q.definitions.iter().copied().collect();

    let mut slots = Vec::new();
    for i in 0..n {
        if !defined.contains(&Definition::Power(i)) {
            slots.push(Slot::Power(i));
        }
    }
    for j in 0..n {
        for i in 0..j {
            if w[i] + w[j] <= c + 1 && !defined.contains(&Definition::Commutator(j, i)) {
                slots.push(Slot::Commutator(j, i));
            }
        }
    }
    for s in 0..pres.gen_count() {
        if !defined.contains(&Definition::Image(s)) {
            slots.push(Slot::Image(s));
        }
    }
    let t = slots.len();
    let width = n + t;

    // extended rules with tails at n..n+t
    let shift = |wd: &PcWord| wd.clone();
    let mut powers: Vec<PcWord> = q.powers.iter().map(shift).collect();
    let mut comms: Vec<Vec<PcWord>> = q.commutators.iter().map(|r| r.iter().map(shift).collect()).collect();
    let mut image_tail = vec![None; pres.gen_count()];
    for (x, s) in slots.iter().enumerate() {
        match *s {
            Slot::Power(i) => powers[i].push((n + x, 1)),
            Slot::Commutator(j, i) => comms[j][i].push((n + x, 1)),
            Slot::Image(g) => image_tail[g] = Some(n + x),
        }
    }
    powers.resize(width, Vec::new());
    comms.resize_with(width, Vec::new);
    for (j, row) in comms.iter_mut().enumerate().skip(n) {
        row.resize(j, Vec::new());
    }
    let rules = Rules { p, powers, commutators: comms, central_from: n };

    let mut rels: Vec<Vec<u32>> = Vec::new();
    let mut push_rel = |l: &[u32], r: &[u32]| -> Result<(), PQuotientError> {
        if l[..n] != r[..n] {
            return Err(PQuotientError::Inconsistent("quotient parts differ in a consistency test".into()));
        }
        let v: Vec<u32> = (n..width).map(|g| (l[g] + p - r[g]) % p).collect();
        if v.iter().any(|&x| x != 0) {
            rels.push(v);
        }
        Ok(())
    };
    let full = cfg.full_checks;
    let keep = |chk: Check| {
        full || match chk {
            Check::Associativity(k, j, i) => w[i] + w[j] + w[k] <= c + 1,
            Check::PowerLeft(j, i) | Check::PowerRight(j, i) => w[i] + w[j] <= c,
            Check::Power(_) => true,
        }
    };
    for (_, l, r) in rules.consistency_pairs(n, keep) {
        push_rel(&l, &r)?;
    }

    // relator images
    let ext_images: Vec<Vec<u32>> = st
        .images
        .iter()
        .enumerate()
        .map(|(g, im)| {
            let mut v = im.clone();
            v.resize(width, 0);
            if let Some(tg) = image_tail[g] {
                v[tg] = 1;
            }
            v
        })
        .collect();
    let ext_inverses: Vec<Vec<u32>> = ext_images.iter().map(|v| rules.inverse(v)).collect();
    for rel in &pres.relators {
        let mut e = vec![0u32; width];
        for &l in rel.letters() {
            let g = (l.unsigned_abs() - 1) as usize;
            let x = if l > 0 { &ext_images[g] } else { &ext_inverses[g] };
            rules.mul_word(&mut e, &to_word(x));
        }
        let id = vec![0u32; width];
        push_rel(&e, &id)?;
    }

    // candidates for new generators, kept at the end of the pivot order
    let is_candidate = |s: &Slot| match *s {
        Slot::Power(i) => w[i] == c,
        Slot::Commutator(j, i) => w[j] == c && w[i] == 1,
        Slot::Image(_) => false,
    };
    let mut order: Vec<usize> = (0..t).filter(|&x| !is_candidate(&slots[x])).collect();
    order.extend((0..t).rev().filter(|&x| is_candidate(&slots[x])));
    let mut eb = EchelonBasis::new(p, t, order);
    for v in rels {
        eb.insert(v);
    }
    let survivors: Vec<usize> = (0..t).filter(|&x| !eb.is_pivot(x)).collect();
    if let Some(&x) = survivors.iter().find(|&&x| !is_candidate(&slots[x])) {
        return Err(PQuotientError::Inconsistent(format!("tail {:?} survived elimination without defining a generator", slots[x])));
    }
    let s = survivors.len();
    if n + s > cfg.max_gens {
        return Err(PQuotientError::TooManyGenerators { count: n + s, limit: cfg.max_gens });
    }
    if s == 0 {
        let mut pc = q.clone();
        pc.class = c;
        return Ok(State { pc, images: st.images.clone() });
    }
    let new_index: std::collections::HashMap<usize, usize> = survivors.iter().enumerate().map(|(a, &x)| (x, n + a)).collect();
    // value of tail x as a word in the new generators
    let tail_value = |x: usize| -> PcWord {
        if let Some(&g) = new_index.get(&x) {
            return vec![(g, 1)];
        }
        let row = eb.row_for(x).expect("eliminated tail has a row");
        survivors.iter().filter(|&&f| row[f] != 0).map(|&f| (new_index[&f], (p - row[f]) % p)).collect()
    };

    let total = n + s;
    let mut powers: Vec<PcWord> = q.powers.clone();
    let mut comms: Vec<Vec<PcWord>> = q.commutators.clone();
    let mut images = st.images.clone();
    for im in images.iter_mut() {
        im.resize(total, 0);
    }
    for (x, sl) in slots.iter().enumerate() {
        let val = tail_value(x);
        match *sl {
            Slot::Power(i) => powers[i].extend(val),
            Slot::Commutator(j, i) => comms[j][i].extend(val),
            Slot::Image(g) => {
                for (h, e) in val {
                    images[g][h] = e;
                }
            }
        }
    }
    powers.resize(total, Vec::new());
    comms.resize_with(total, Vec::new);
    for (j, row) in comms.iter_mut().enumerate().skip(n) {
        row.resize(j, Vec::new());
    }
    let mut weights = q.weights.clone();
    weights.resize(total, c + 1);
    let mut definitions = q.definitions.clone();
    for &x in &survivors {
        definitions.push(match slots[x] {
            Slot::Power(i) => Definition::Power(i),
            Slot::Commutator(j, i) => Definition::Commutator(j, i),
            Slot::Image(g) => Definition::Image(g),
        });
    }
    let pc = PcPresentation { p, weights, definitions, powers, commutators: comms, class: c + 1 };
    Ok(State { pc, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog;

    fn cyclic(n: i64) -> Presentation {
        Presentation::new(vec!["x".into()], vec![Word::gen(0).pow(n)], Default::default()).unwrap()
    }

    #[test]
    fn cyclic_groups() {
        let q = p_quotient(&cyclic(3), 3, 5, &PqConfig::default()).unwrap();
        assert_eq!(q.pc.order_exponent(), 1);
        assert_eq!(q.orders, vec![1, 1, 1, 1, 1]);
        let q = p_quotient(&cyclic(27), 3, 5, &PqConfig::default()).unwrap();
        assert_eq!(q.orders, vec![1, 2, 3, 3, 3]);
        let q = p_quotient(&cyclic(12), 2, 4, &PqConfig::default()).unwrap();
        assert_eq!(q.orders, vec![1, 2, 2, 2]);
    }

    #[test]
    fn free_group_rank_two_mod_two() {
        // the p-cover of (Z/p)^2 has multiplicator of rank 3
        for p in [2, 3, 5] {
            let q = p_quotient(&Presentation::free(2), p, 2, &PqConfig::default()).unwrap();
            assert_eq!(q.pc.layer_sizes(), vec![2, 3]);
        }
    }

    #[test]
    fn weighted_and_full_checks_agree() {
        let full = PqConfig { full_checks: true, ..PqConfig::default() };
        for (pres, p, k) in [(Presentation::free(2), 3, 3), (Presentation::free(3), 2, 3), (catalog::g0(), 2, 4), (catalog::g(), 3, 3)] {
            let a = p_quotient(&pres, p, k, &PqConfig::default()).unwrap();
            let b = p_quotient(&pres, p, k, &full).unwrap();
            assert_eq!(a.orders, b.orders);
            assert_eq!(a.pc, b.pc);
        }
    }

    #[test]
    fn g0_class_one() {
        let q = p_quotient(&catalog::g0(), 2, 1, &PqConfig::default()).unwrap();
        assert_eq!(q.pc.order_exponent(), 3);
    }
}
