//! HLT coset enumeration.

use serde::{Deserialize, Serialize};

use super::FpError;
use crate::presentations::{Presentation, SubgroupSpec, Word};

pub const DEFAULT_MAX_COSETS: usize = 100_000;
const NONE: u32 = u32::MAX;

/// Column of a letter: `2g` for `x_g`, `2g + 1` for its inverse.
pub fn letter_column(l: i32) -> usize {
    let g = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inverse_column(c: usize) -> usize {
    c ^ 1
}

/// A complete coset table; coset `0` is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub parent: Presentation,
    pub subgroup: SubgroupSpec,
    /// `rows[c][col]` is the image of coset `c`.
    pub rows: Vec<Vec<u32>>,
    pub complete: bool,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn act(&self, c: usize, letter: i32) -> usize {
        self.rows[c][letter_column(letter)] as usize
    }

    pub fn trace(&self, c: usize, w: &Word) -> usize {
        w.letters().iter().fold(c, |x, &l| self.act(x, l))
    }

    /// Every relator closes at every coset, subgroup words fix coset 0,
    /// and inverse columns are mutually inverse.
    pub fn verify(&self) -> bool {
        let n = self.index();
        let closed = self.rows.iter().enumerate().all(|(c, row)| {
            row.iter().enumerate().all(|(col, &d)| (d as usize) < n && self.rows[d as usize][inverse_column(col)] as usize == c)
        });
        closed
            && (0..n).all(|c| self.parent.relators.iter().all(|r| self.trace(c, r) == c))
            && self.subgroup.words.iter().all(|w| self.trace(0, w) == 0)
    }
}

struct Enumerator<'a> {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
    relators: &'a [Vec<usize>],
}

impl Enumerator<'_> {
    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, FpError> {
        if self.table.len() >= self.max {
            return Err(FpError::BudgetExceeded { max: self.max });
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c as usize][col] = d;
        self.table[d as usize][inverse_column(col)] = c;
        Ok(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (x, y) = (self.rep(a), self.rep(b));
        if x != y {
            let (lo, hi) = (x.min(y), x.max(y));
            self.parent[hi as usize] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for col in 0..self.cols {
                let d = self.table[g as usize][col];
                if d == NONE {
                    continue;
                }
                let icol = inverse_column(col);
                if self.table[d as usize][icol] == g {
                    self.table[d as usize][icol] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu as usize][col] != NONE {
                    let t = self.table[mu as usize][col];
                    self.merge(nu, t);
                } else if self.table[nu as usize][icol] != NONE {
                    let t = self.table[nu as usize][icol];
                    self.merge(mu, t);
                } else {
                    self.table[mu as usize][col] = nu;
                    self.table[nu as usize][icol] = mu;
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), FpError> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.table[f as usize][w[i as usize]] != NONE {
                f = self.table[f as usize][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b as usize][inverse_column(w[j as usize])] != NONE {
                b = self.table[b as usize][inverse_column(w[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let col = w[i as usize];
                self.table[f as usize][col] = b;
                self.table[b as usize][inverse_column(col)] = f;
                return Ok(());
            } else {
                self.define(f, w[i as usize])?;
            }
        }
    }
}

/// Enumerates the cosets of `sub` in `pres`, defining at most `max_cosets`
/// cosets in total.
pub fn coset_enumerate(pres: &Presentation, sub: &SubgroupSpec, max_cosets: usize) -> Result<CosetTable, FpError> {
    if max_cosets == 0 {
        return Err(FpError::BudgetExceeded { max: 0 });
    }
    let cols = 2 * pres.gen_count();
    let relators: Vec<Vec<usize>> =
        pres.relators.iter().map(|r| r.cyclic_reduce().letters().iter().map(|&l| letter_column(l)).collect()).collect();
    let mut e = Enumerator { cols, table: vec![vec![NONE; cols]], parent: vec![0], queue: Vec::new(), max: max_cosets, relators: &relators };
    for w in &sub.words {
        let cw: Vec<usize> = w.letters().iter().map(|&l| letter_column(l)).collect();
        e.scan_and_fill(0, &cw)?;
    }
    let mut c = 0u32;
    while (c as usize) < e.table.len() {
        for r in 0..e.relators.len() {
            if !e.alive(c) {
                break;
            }
            let rel = e.relators[r].clone();
            e.scan_and_fill(c, &rel)?;
        }
        if e.alive(c) {
            for col in 0..cols {
                if e.table[c as usize][col] == NONE {
                    e.define(c, col)?;
                }
            }
        }
        c += 1;
    }
    let rows = standardize(&e);
    let t = CosetTable { parent: pres.clone(), subgroup: sub.clone(), rows, complete: true };
    if !t.verify() {
        return Err(FpError::Internal("completed coset table fails verification".into()));
    }
    Ok(t)
}

/// Renumbers live cosets in order of first appearance.
fn standardize(e: &Enumerator<'_>) -> Vec<Vec<u32>> {
    let n = e.table.len();
    let mut new = vec![NONE; n];
    let mut order = vec![0u32];
    new[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k] as usize;
        for col in 0..e.cols {
            let d = e.table[c][col] as usize;
            if new[d] == NONE {
                new[d] = order.len() as u32;
                order.push(d as u32);
            }
        }
        k += 1;
    }
    order.iter().map(|&c| e.table[c as usize].iter().map(|&d| new[d as usize]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog;

    fn sub(p: &Presentation, gens: &[usize]) -> SubgroupSpec {
        SubgroupSpec::new("t", p.clone(), gens.iter().map(|&g| Word::gen(g)).collect()).unwrap()
    }

    #[test]
    fn paper_indices() {
        let g0 = catalog::g0();
        assert_eq!(coset_enumerate(&g0, &sub(&g0, &[0, 1]), DEFAULT_MAX_COSETS).unwrap().index(), 2);
        assert_eq!(coset_enumerate(&g0, &SubgroupSpec::whole(g0.clone()), DEFAULT_MAX_COSETS).unwrap().index(), 1);
        let g = catalog::g();
        assert_eq!(coset_enumerate(&g, &sub(&g, &[0, 1, 2]), DEFAULT_MAX_COSETS).unwrap().index(), 3);
    }

    #[test]
    fn finite_groups() {
        // S3 = <a, b | a^2, b^3, (ab)^2> over the trivial subgroup
        let s3 = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::gen(0).pow(2), Word::gen(1).pow(3), Word::from_gens(&[0, 1]).pow(2)],
            Default::default(),
        )
        .unwrap();
        assert_eq!(coset_enumerate(&s3, &SubgroupSpec::trivial(s3.clone()), 1000).unwrap().index(), 6);
        assert_eq!(coset_enumerate(&s3, &sub(&s3, &[0]), 1000).unwrap().index(), 3);
        // Z_5 x Z_7
        let z35 = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::gen(0).pow(5), Word::gen(1).pow(7), Word::commutator(&Word::gen(0), &Word::gen(1))],
            Default::default(),
        )
        .unwrap();
        assert_eq!(coset_enumerate(&z35, &SubgroupSpec::trivial(z35.clone()), 1000).unwrap().index(), 35);
    }

    #[test]
    fn budget_is_an_outcome() {
        let free = Presentation::free(2);
        let e = coset_enumerate(&free, &SubgroupSpec::trivial(free.clone()), 50).unwrap_err();
        assert_eq!(e, FpError::BudgetExceeded { max: 50 });
    }
}
