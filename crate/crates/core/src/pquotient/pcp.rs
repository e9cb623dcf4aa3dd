//! Power-commutator presentations of finite p-groups and collection.

use serde::{Deserialize, Serialize};

use super::PQuotientError;

/// Normal-form word: `(generator, exponent)` with increasing generators and
/// exponents in `1..p`.
pub type PcWord = Vec<(usize, u32)>;

/// How a pc generator was introduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definition {
    /// Image of a generator of the source presentation.
    Image(usize),
    /// `a_i^p`
    Power(usize),
    /// `[a_j, a_i]` with `j > i`
    Commutator(usize, usize),
}

/// Exponent vector of length `n`, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PcElement(pub Vec<u32>);

impl PcElement {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn as_word(&self) -> PcWord {
        to_word(&self.0)
    }

    /// Index of the first nonzero exponent.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }
}

pub(crate) fn to_word(e: &[u32]) -> PcWord {
    e.iter().enumerate().filter(|(_, &x)| x != 0).map(|(g, &x)| (g, x)).collect()
}

/// Relations `a_i^p = powers[i]` and `[a_j, a_i] = commutators[j][i]` for
/// `j > i`; an empty word means the trivial relation. Generators of
/// index `≥ central_from` are central with trivial `p`-th power, which lets
/// the collector skip them.
#[derive(Clone, Debug)]
pub(crate) struct Rules {
    pub p: u32,
    pub powers: Vec<PcWord>,
    pub commutators: Vec<Vec<PcWord>>,
    pub central_from: usize,
}

impl Rules {
    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn mul_word(&self, e: &mut [u32], w: &[(usize, u32)]) {
        for &(g, m) in w {
            self.mul_gen_pow(e, g, m);
        }
    }

    /// `e ← e · a_g^m` for `0 < m < p`.
    pub fn mul_gen_pow(&self, e: &mut [u32], g: usize, m: u32) {
        let p = self.p;
        if g >= self.central_from {
            e[g] = (e[g] + m) % p;
            return;
        }
        if e[g + 1..self.central_from].iter().all(|&x| x == 0) {
            let s = e[g] + m;
            if s >= p {
                e[g] = s - p;
                self.mul_word(e, &self.powers[g]);
            } else {
                e[g] = s;
            }
            return;
        }
        for _ in 0..m {
            self.mul_gen(e, g);
        }
    }

    fn mul_gen(&self, e: &mut [u32], g: usize) {
        let mut suffix = Vec::new();
        for (k, x) in e.iter_mut().enumerate().take(self.central_from).skip(g + 1) {
            if *x != 0 {
                suffix.push((k, *x));
                *x = 0;
            }
        }
        if e[g] + 1 == self.p {
            e[g] = 0;
            self.mul_word(e, &self.powers[g]);
        } else {
            e[g] += 1;
        }
        // a_k^{a_g} = a_k [a_k, a_g]
        for (k, ek) in suffix {
            let c = &self.commutators[k][g];
            if c.is_empty() {
                self.mul_gen_pow(e, k, ek);
            } else {
                for _ in 0..ek {
                    self.mul_gen_pow(e, k, 1);
                    self.mul_word(e, c);
                }
            }
        }
    }

    /// Multiplies by `a_g^m` for any integer `m`.
    pub fn mul_gen_int(&self, e: &mut [u32], g: usize, m: i64) {
        if m >= 0 {
            let mut left = m as u64;
            while left > 0 {
                let step = left.min(self.p as u64 - 1) as u32;
                self.mul_gen_pow(e, g, step);
                left -= step as u64;
            }
        } else {
            let mut unit = vec![0; self.len()];
            unit[g] = 1;
            let inv = self.inverse(&unit);
            for _ in 0..m.unsigned_abs() {
                self.mul_word(e, &to_word(&inv));
            }
        }
    }

    pub fn inverse(&self, e: &[u32]) -> Vec<u32> {
        let mut cur = e.to_vec();
        let mut inv = vec![0; e.len()];
        for i in 0..cur.len() {
            if cur[i] != 0 {
                let m = self.p - cur[i];
                self.mul_gen_pow(&mut cur, i, m);
                inv[i] = m;
            }
        }
        inv
    }

    /// The two sides of every consistency test selected by `keep`, as
    /// `(label, left, right)`.
    pub fn consistency_pairs(&self, n: usize, mut keep: impl FnMut(Check) -> bool) -> Vec<(Check, Vec<u32>, Vec<u32>)> {
        let p = self.p;
        let width = self.len();
        let unit = |g: usize, m: u32| {
            let mut v = vec![0; width];
            v[g] = m;
            v
        };
        // normal form of a_j a_i
        let prod = |j: usize, i: usize| {
            let mut v = unit(j, 1);
            self.mul_gen_pow(&mut v, i, 1);
            v
        };
        let power = |i: usize| {
            let mut v = vec![0; width];
            self.mul_word(&mut v, &self.powers[i]);
            v
        };
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if !keep(Check::Associativity(k, j, i)) {
                        continue;
                    }
                    let mut l = prod(k, j);
                    self.mul_gen_pow(&mut l, i, 1);
                    let mut r = unit(k, 1);
                    self.mul_word(&mut r, &to_word(&prod(j, i)));
                    out.push((Check::Associativity(k, j, i), l, r));
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if keep(Check::PowerLeft(j, i)) {
                    let mut l = power(j);
                    self.mul_gen_pow(&mut l, i, 1);
                    let mut r = unit(j, p - 1);
                    self.mul_word(&mut r, &to_word(&prod(j, i)));
                    out.push((Check::PowerLeft(j, i), l, r));
                }
                if keep(Check::PowerRight(j, i)) {
                    let mut l = unit(j, 1);
                    self.mul_word(&mut l, &to_word(&power(i)));
                    let mut r = prod(j, i);
                    self.mul_gen_pow(&mut r, i, p - 1);
                    out.push((Check::PowerRight(j, i), l, r));
                }
            }
        }
        for i in 0..n {
            if keep(Check::Power(i)) {
                let mut l = power(i);
                self.mul_gen_pow(&mut l, i, 1);
                let mut r = unit(i, 1);
                self.mul_word(&mut r, &to_word(&power(i)));
                out.push((Check::Power(i), l, r));
            }
        }
        out
    }
}

/// A consistency test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    /// `(a_k a_j) a_i = a_k (a_j a_i)`
    Associativity(usize, usize, usize),
    /// `(a_j^p) a_i = a_j^{p-1} (a_j a_i)`
    PowerLeft(usize, usize),
    /// `a_j (a_i^p) = (a_j a_i) a_i^{p-1}`
    PowerRight(usize, usize),
    /// `(a_i^p) a_i = a_i (a_i^p)`
    Power(usize),
}

/// A consistent power-commutator presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub p: u32,
    pub weights: Vec<u32>,
    pub definitions: Vec<Definition>,
    /// `a_i^p`
    pub powers: Vec<PcWord>,
    /// `commutators[j][i] = [a_j, a_i]` for `i < j`
    pub commutators: Vec<Vec<PcWord>>,
    pub class: u32,
}

impl PcPresentation {
    /// The trivial group.
    pub fn trivial(p: u32) -> Self {
        PcPresentation { p, weights: Vec::new(), definitions: Vec::new(), powers: Vec::new(), commutators: Vec::new(), class: 0 }
    }

    pub fn gen_count(&self) -> usize {
        self.weights.len()
    }

    /// `log_p` of the order.
    pub fn order_exponent(&self) -> usize {
        self.weights.len()
    }

    /// Number of generators of each weight `1..=class`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        (1..=self.class).map(|w| self.weights.iter().filter(|&&x| x == w).count()).collect()
    }

    pub(crate) fn rules(&self) -> Rules {
        let n = self.gen_count();
        // the top layer is central with trivial powers
        let central_from = if self.class == 0 { n } else { self.weights.iter().position(|&w| w == self.class).unwrap_or(n) };
        Rules { p: self.p, powers: self.powers.clone(), commutators: self.commutators.clone(), central_from }
    }

    pub fn collector(&self) -> Collector {
        Collector { rules: self.rules(), n: self.gen_count() }
    }

    /// Result of every consistency test that fails (all triples).
    pub fn consistency_failures(&self) -> Vec<Check> {
        let r = self.rules();
        r.consistency_pairs(self.gen_count(), |_| true).into_iter().filter(|(_, l, r)| l != r).map(|(c, _, _)| c).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_failures().is_empty()
    }

    /// Quotient by the generators of weight greater than `k`.
    pub fn truncate(&self, k: u32) -> PcPresentation {
        let keep = self.weights.iter().take_while(|&&w| w <= k).count();
        let cut = |w: &PcWord| w.iter().copied().filter(|&(g, _)| g < keep).collect::<PcWord>();
        PcPresentation {
            p: self.p,
            weights: self.weights[..keep].to_vec(),
            definitions: self.definitions[..keep].to_vec(),
            powers: self.powers[..keep].iter().map(cut).collect(),
            commutators: self.commutators[..keep].iter().map(|row| row.iter().map(cut).collect()).collect(),
            class: self.class.min(k),
        }
    }

    /// Checks shape invariants: tails only involve higher generators,
    /// exponents lie in `1..p`.
    pub fn validate_shape(&self) -> Result<(), PQuotientError> {
        let n = self.gen_count();
        let bad = |w: &PcWord, above: usize| {
            w.windows(2).any(|x| x[0].0 >= x[1].0) || w.iter().any(|&(g, e)| g <= above || g >= n || e == 0 || e >= self.p)
        };
        if self.powers.len() != n || self.commutators.len() != n || self.definitions.len() != n {
            return Err(PQuotientError::Inconsistent("table sizes differ from generator count".into()));
        }
        for i in 0..n {
            if bad(&self.powers[i], i) {
                return Err(PQuotientError::Inconsistent(format!("power relation of a{i} is malformed")));
            }
            if self.commutators[i].len() != i {
                return Err(PQuotientError::Inconsistent(format!("commutator row {i} has wrong length")));
            }
            for (k, c) in self.commutators[i].iter().enumerate() {
                if bad(c, i) {
                    return Err(PQuotientError::Inconsistent(format!("commutator [a{i}, a{k}] is malformed")));
                }
            }
        }
        Ok(())
    }
}

/// Element arithmetic in a [`PcPresentation`].
#[derive(Clone, Debug)]
pub struct Collector {
    pub(crate) rules: Rules,
    n: usize,
}

impl Collector {
    pub fn p(&self) -> u32 {
        self.rules.p
    }

    pub fn gen_count(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> PcElement {
        PcElement(vec![0; self.n])
    }

    pub fn gen(&self, g: usize) -> PcElement {
        let mut e = vec![0; self.n];
        e[g] = 1;
        PcElement(e)
    }

    /// Collects a word of `(generator, integer exponent)` pairs.
    pub fn collect(&self, w: &[(usize, i64)]) -> PcElement {
        let mut e = vec![0; self.n];
        for &(g, m) in w {
            self.rules.mul_gen_int(&mut e, g, m);
        }
        PcElement(e)
    }

    pub fn mul(&self, x: &PcElement, y: &PcElement) -> PcElement {
        let mut e = x.0.clone();
        self.rules.mul_word(&mut e, &y.as_word());
        PcElement(e)
    }

    pub fn inv(&self, x: &PcElement) -> PcElement {
        PcElement(self.rules.inverse(&x.0))
    }

    /// `y⁻¹ x y`
    pub fn conj(&self, x: &PcElement, y: &PcElement) -> PcElement {
        let t = self.mul(&self.inv(y), x);
        self.mul(&t, y)
    }

    /// `x⁻¹ y⁻¹ x y`
    pub fn comm(&self, x: &PcElement, y: &PcElement) -> PcElement {
        let a = self.mul(&self.inv(x), &self.inv(y));
        let b = self.mul(x, y);
        self.mul(&a, &b)
    }

    pub fn pow(&self, x: &PcElement, m: i64) -> PcElement {
        let base = if m < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = m.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Order `p^t`, found by repeated `p`-th powering.
    pub fn order(&self, x: &PcElement) -> u64 {
        let mut t = 0u32;
        let mut y = x.clone();
        while !y.is_identity() {
            y = self.pow(&y, self.p() as i64);
            t += 1;
        }
        (self.p() as u64).pow(t)
    }

    /// `log_p` of the order.
    pub fn order_exponent(&self, x: &PcElement) -> u32 {
        let mut t = 0u32;
        let mut y = x.clone();
        while !y.is_identity() {
            y = self.pow(&y, self.p() as i64);
            t += 1;
        }
        t
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Heisenberg group mod p: `[a1, a0] = a2`.
    pub fn heisenberg(p: u32) -> PcPresentation {
        PcPresentation {
            p,
            weights: vec![1, 1, 2],
            definitions: vec![Definition::Image(0), Definition::Image(1), Definition::Commutator(1, 0)],
            powers: vec![vec![], vec![], vec![]],
            commutators: vec![vec![], vec![vec![(2, 1)]], vec![vec![], vec![]]],
            class: 2,
        }
    }

    /// Upper unitriangular 3x3 matrices over Z/p flattened to (x, y, z) =
    /// entries (1,2), (2,3), (1,3).
    fn mat_mul(p: u32, a: (u32, u32, u32), b: (u32, u32, u32)) -> (u32, u32, u32) {
        ((a.0 + b.0) % p, (a.1 + b.1) % p, (a.2 + b.2 + a.0 * b.1) % p)
    }

    #[test]
    fn heisenberg_matches_matrices() {
        for p in [2u32, 3, 5] {
            let pc = heisenberg(p);
            assert!(pc.is_consistent());
            let c = pc.collector();
            // a0 = E12, a1 = E23; [a1, a0] = a1^-1 a0^-1 a1 a0 has (1,3) entry -1,
            // so a2 corresponds to -E13 and to_mat(e)=a0^e0 a1^e1 a2^e2
            let to_mat = |e: &PcElement| {
                let x = (e.0[0], 0, 0);
                let y = (0, e.0[1], 0);
                let z = (0, 0, (p - e.0[2] % p) % p);
                mat_mul(p, mat_mul(p, x, y), z)
            };
            for e0 in 0..p {
                for e1 in 0..p {
                    for e2 in 0..p {
                        for f0 in 0..p {
                            for f1 in 0..p {
                                let x = PcElement(vec![e0, e1, e2]);
                                let y = PcElement(vec![f0, f1, 0]);
                                assert_eq!(to_mat(&c.mul(&x, &y)), mat_mul(p, to_mat(&x), to_mat(&y)));
                            }
                        }
                    }
                }
            }
            // a1 a0 = a0 a1 [a1, a0] = a0 a1 a2
            assert_eq!(c.collect(&[(1, 1), (0, 1)]), PcElement(vec![1, 1, 1]));
        }
    }

    #[test]
    fn basic_identities() {
        let pc = heisenberg(3);
        let c = pc.collector();
        assert!(c.collect(&[(0, 1), (0, -1)]).is_identity());
        assert!(c.collect(&[(0, 3)]).is_identity());
        let x = c.collect(&[(0, 1), (1, 2), (2, 1)]);
        assert!(c.mul(&x, &c.inv(&x)).is_identity());
        assert_eq!(c.order(&x), 3);
        assert!(c.pow(&x, 9).is_identity());
    }

    #[test]
    fn inconsistent_presentation_detected() {
        let mut pc = heisenberg(3);
        // a0^3 = a1 with [a1, a0] = a2 is inconsistent
        pc.powers[0] = vec![(1, 1)];
        assert!(!pc.is_consistent());
    }
}
