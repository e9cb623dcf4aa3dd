//! Words in a free group.
//!
//! A letter is a nonzero `i32`: `g + 1` stands for generator `g` and
//! `-(g + 1)` for its inverse.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Conjugation convention for `g^h`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `g^h = h⁻¹ g h`
    #[default]
    Right,
    /// `g^h = h g h⁻¹`
    Left,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::Right => write!(f, "h^-1*g*h"),
            Convention::Left => write!(f, "h*g*h^-1"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<i32>);

/// Generator index of a letter.
pub fn gen_of(letter: i32) -> usize {
    (letter.unsigned_abs() - 1) as usize
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: usize) -> Self {
        Word(vec![g as i32 + 1])
    }

    pub fn gen_inv(g: usize) -> Self {
        Word(vec![-(g as i32 + 1)])
    }

    /// Builds from `(generator, exponent)` pairs, e.g. `[(0, 1), (2, -2)]`
    /// for `x0 x2^-2`.
    pub fn from_powers(parts: &[(usize, i64)]) -> Self {
        parts.iter().fold(Word::empty(), |acc, &(g, e)| acc.mul(&Word::gen(g).pow(e)))
    }

    /// Product of generators in order.
    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&g| g as i32 + 1).collect())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.0.iter().map(|&l| gen_of(l)).max()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&l| l > 0)
    }

    pub fn reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != -w[1])
    }

    /// Free reduction followed by stripping mutually inverse ends.
    pub fn cyclic_reduce(&self) -> Self {
        let w = self.reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduce()
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v).reduce()
    }

    /// `self^h` under `conv`.
    pub fn conjugate(&self, h: &Self, conv: Convention) -> Self {
        match conv {
            Convention::Right => h.inverse().mul(self).mul(h),
            Convention::Left => h.mul(self).mul(&h.inverse()),
        }
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Least rotation (lexicographic on letters).
    pub fn min_rotation(&self) -> Self {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or_default()
    }

    /// Class representative under rotation and, if `with_inverse`, inversion.
    pub fn cyclic_class(&self, with_inverse: bool) -> Self {
        let w = self.cyclic_reduce();
        let a = w.min_rotation();
        if with_inverse {
            a.min(w.inverse().min_rotation())
        } else {
            a
        }
    }

    /// Exponent sum of each generator (length `n`).
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n];
        for &l in &self.0 {
            s[gen_of(l)] += l.signum() as i64;
        }
        s
    }

    /// Substitutes a word for each generator.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut v = Vec::new();
        for &l in &self.0 {
            let img = &images[gen_of(l)];
            if l > 0 {
                v.extend_from_slice(&img.0);
            } else {
                v.extend(img.0.iter().rev().map(|x| -x));
            }
        }
        Word(v).reduce()
    }

    /// Renders with generator names, using `^n` for runs.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.signum() as i64;
            let name = names.get(gen_of(l)).cloned().unwrap_or_else(|| format!("g{}", gen_of(l)));
            parts.push(if run == 1 { name } else { format!("{name}^{run}") });
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_gen().unwrap_or(0)).map(|g| format!("x{g}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reductions() {
        assert!(Word(vec![1, -1]).reduce().is_empty());
        // x1^-1 x0 x3 x1 -> x0 x3
        assert_eq!(Word(vec![-2, 1, 4, 2]).cyclic_reduce(), Word(vec![1, 4]));
        assert_eq!(Word(vec![1, 2, -2, -1, 3]).reduce(), Word(vec![3]));
    }

    #[test]
    fn conjugation_convention() {
        let x0 = Word::gen(0);
        let x2 = Word::gen(2);
        assert_eq!(x2.conjugate(&x0, Convention::Right), Word(vec![-1, 3, 1]));
        assert_eq!(x2.conjugate(&x0, Convention::Left), Word(vec![1, 3, -1]));
    }

    #[test]
    fn classes() {
        let w = Word(vec![2, 3, 1]);
        assert_eq!(w.cyclic_class(false), Word(vec![1, 2, 3]));
        assert_eq!(w.inverse().cyclic_class(true), w.cyclic_class(true));
        assert_eq!(Word::from_powers(&[(1, 1), (2, -2)]).render(&["a".into(), "b".into(), "c".into()]), "b*c^-2");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![(1i32..4), (-3i32..0)], 0..24).prop_map(Word)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in arb_word()) {
            let r = w.reduce();
            prop_assert!(r.is_reduced());
            prop_assert_eq!(r.reduce(), r.clone());
            prop_assert_eq!(w.cyclic_reduce().cyclic_reduce(), w.cyclic_reduce());
        }

        #[test]
        fn conjugation_composes(g in arb_word(), h in arb_word(), k in arb_word()) {
            for conv in [Convention::Right, Convention::Left] {
                let lhs = g.conjugate(&h, conv).conjugate(&k, conv);
                let hk = match conv { Convention::Right => h.mul(&k), Convention::Left => k.mul(&h) };
                prop_assert_eq!(lhs, g.conjugate(&hk, conv));
            }
        }

        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(w.mul(&w.inverse()).is_empty());
        }
    }
}
