//! Reidemeister–Schreier rewriting.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::coset::{letter_column, CosetTable};
use super::FpError;
use crate::presentations::{Presentation, Provenance, Word};

/// Presentation of a finite-index subgroup on Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchreierPresentation {
    /// Unsimplified presentation: one generator per non-tree edge.
    pub presentation: Presentation,
    /// `(coset, parent generator)` of each Schreier generator.
    pub edges: Vec<(usize, usize)>,
    /// Transversal words `u_c`.
    pub transversal: Vec<Word>,
    /// Generator index of each table edge, `None` for tree edges.
    edge_gen: Vec<Vec<Option<usize>>>,
    /// Cosets of the table, for rewriting.
    table: Vec<Vec<u32>>,
    /// Optional Tietze-simplified form.
    pub simplified: Option<Simplified>,
}

/// Result of removing generators through relators of length one or two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Image of every unsimplified generator in the simplified generators.
    pub images: Vec<Word>,
}

impl SchreierPresentation {
    /// Rewrites a parent word lying in the subgroup; `None` when it does not.
    pub fn rewrite(&self, w: &Word) -> Option<Word> {
        let mut c = 0usize;
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = (l.unsigned_abs() - 1) as usize;
            if l > 0 {
                if let Some(s) = self.edge_gen[c][g] {
                    out.push(s as i32 + 1);
                }
                c = self.table[c][letter_column(l)] as usize;
            } else {
                let d = self.table[c][letter_column(l)] as usize;
                if let Some(s) = self.edge_gen[d][g] {
                    out.push(-(s as i32 + 1));
                }
                c = d;
            }
        }
        (c == 0).then(|| Word(out).reduce())
    }

    /// Parent word of each Schreier generator, `u_c x_g u_{c·x_g}^{-1}`.
    pub fn generator_words(&self) -> Vec<Word> {
        self.edges
            .iter()
            .map(|&(c, g)| {
                let d = self.table[c][2 * g] as usize;
                self.transversal[c].mul(&Word::gen(g)).mul(&self.transversal[d].inverse())
            })
            .collect()
    }

    /// Rewrites into the simplified presentation when it exists.
    pub fn rewrite_simplified(&self, w: &Word) -> Option<Word> {
        let r = self.rewrite(w)?;
        Some(match &self.simplified {
            Some(s) => r.substitute(&s.images),
            None => r,
        })
    }

    /// The simplified presentation if present, else the unsimplified one.
    pub fn best(&self) -> &Presentation {
        self.simplified.as_ref().map_or(&self.presentation, |s| &s.presentation)
    }
}

pub fn reidemeister_schreier(table: &CosetTable, simplify: bool) -> Result<SchreierPresentation, FpError> {
    if !table.complete || !table.verify() {
        return Err(FpError::IncompleteTable);
    }
    let n = table.index();
    let m = table.parent.gen_count();
    // spanning tree by breadth first search in column order
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut tree = vec![vec![false; m]; n];
    transversal[0] = Some(Word::empty());
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let c = queue[k];
        k += 1;
        for col in 0..2 * m {
            let d = table.rows[c][col] as usize;
            if transversal[d].is_none() {
                let g = col / 2;
                let letter = if col % 2 == 0 { g as i32 + 1 } else { -(g as i32 + 1) };
                let u = transversal[c].as_ref().expect("visited").mul(&Word(vec![letter]));
                transversal[d] = Some(u);
                if col % 2 == 0 {
                    tree[c][g] = true;
                } else {
                    tree[d][g] = true;
                }
                queue.push(d);
            }
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|u| u.expect("table is transitive")).collect();
    let mut edges = Vec::new();
    let mut edge_gen = vec![vec![None; m]; n];
    for c in 0..n {
        for g in 0..m {
            if !tree[c][g] {
                edge_gen[c][g] = Some(edges.len());
                edges.push((c, g));
            }
        }
    }
    let names: Vec<String> = edges.iter().map(|&(c, g)| format!("s{}_{}", c, table.parent.names[g])).collect();
    let mut sp = SchreierPresentation {
        presentation: Presentation::free(0),
        edges,
        transversal,
        edge_gen,
        table: table.rows.clone(),
        simplified: None,
    };
    let mut relators = Vec::new();
    for c in 0..n {
        for r in &table.parent.relators {
            let w = sp.transversal[c].mul(r).mul(&sp.transversal[c].inverse());
            let rw = sp.rewrite(&w).ok_or(FpError::Internal("relator conjugate leaves the subgroup".into()))?;
            let rw = rw.cyclic_reduce();
            if !rw.is_empty() {
                relators.push(rw);
            }
        }
    }
    let source = format!("Reidemeister-Schreier of {} in {}", table.subgroup.name, table.parent.provenance.source);
    sp.presentation = Presentation::new(names, relators, Provenance::new(source)).map_err(|e| FpError::Internal(e.to_string()))?;
    if simplify {
        sp.simplified = Some(tietze_short(&sp.presentation));
    }
    Ok(sp)
}

/// Eliminates generators using relators of length one or two only.
pub fn tietze_short(p: &Presentation) -> Simplified {
    let m = p.gen_count();
    let mut images: Vec<Word> = (0..m).map(Word::gen).collect();
    let mut relators: Vec<Word> = p.relators.clone();
    let mut removed = vec![false; m];
    loop {
        let mut found = None;
        for r in &relators {
            let r = r.cyclic_reduce();
            let l = r.letters();
            match l.len() {
                1 => {
                    found = Some(((l[0].unsigned_abs() - 1) as usize, Word::empty()));
                    break;
                }
                2 if l[0].abs() != l[1].abs() => {
                    // x y = 1 with x the larger generator: x = y^-1
                    let (a, b) = if l[0].abs() > l[1].abs() { (l[0], l[1]) } else { (l[1], l[0]) };
                    let g = (a.unsigned_abs() - 1) as usize;
                    let other = Word(vec![-b]);
                    let val = if a > 0 { other } else { other.inverse() };
                    found = Some((g, val));
                    break;
                }
                _ => {}
            }
        }
        let Some((g, val)) = found else { break };
        let mut subst: Vec<Word> = (0..m).map(Word::gen).collect();
        subst[g] = val;
        removed[g] = true;
        relators = relators.iter().map(|r| r.substitute(&subst).cyclic_reduce()).filter(|r| !r.is_empty()).collect();
        images = images.iter().map(|w| w.substitute(&subst)).collect();
    }
    // renumber surviving generators
    let keep: Vec<usize> = (0..m).filter(|&g| !removed[g]).collect();
    let mut renum = vec![Word::empty(); m];
    for (k, &g) in keep.iter().enumerate() {
        renum[g] = Word::gen(k);
    }
    let relators: Vec<Word> = relators.iter().map(|r| r.substitute(&renum)).collect();
    let mut seen = std::collections::HashSet::new();
    let relators: Vec<Word> = relators.into_iter().filter(|r| seen.insert(r.cyclic_class(true))).collect();
    let images = images.iter().map(|w| w.substitute(&renum)).collect();
    let names = keep.iter().map(|&g| p.names[g].clone()).collect();
    let mut prov = p.provenance.clone();
    prov.source = format!("{} (simplified)", prov.source);
    Simplified { presentation: Presentation { names, relators, provenance: prov }, images }
}

/// Finds, for each word, a Schreier generator with the same rewritten
/// form, keyed by word index.
pub fn locate_words(sp: &SchreierPresentation, words: &[Word]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        if let Some(r) = sp.rewrite(w) {
            if r.len() == 1 && r.letters()[0] > 0 {
                out.insert(i, (r.letters()[0] - 1) as usize);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalgo::abelian::abelianization;
    use crate::fpalgo::coset::{coset_enumerate, DEFAULT_MAX_COSETS};
    use crate::presentations::{catalog, SubgroupSpec};

    #[test]
    fn index_one_keeps_abelianization() {
        let g0 = catalog::g0();
        let t = coset_enumerate(&g0, &SubgroupSpec::whole(g0.clone()), DEFAULT_MAX_COSETS).unwrap();
        let sp = reidemeister_schreier(&t, true).unwrap();
        assert_eq!(abelianization(&sp.presentation), abelianization(&g0));
        assert_eq!(abelianization(sp.best()), abelianization(&g0));
    }

    #[test]
    fn rewriting_round_trip() {
        let g = catalog::g();
        let h = SubgroupSpec::new("H", g.clone(), vec![Word::gen(0), Word::gen(1), Word::gen(2)]).unwrap();
        let t = coset_enumerate(&g, &h, DEFAULT_MAX_COSETS).unwrap();
        let sp = reidemeister_schreier(&t, true).unwrap();
        // 3 cosets, 13 generators: 3*13 - 2 Schreier generators
        assert_eq!(sp.presentation.gen_count(), 37);
        let words = sp.generator_words();
        for (i, w) in words.iter().enumerate() {
            assert_eq!(sp.rewrite(w), Some(Word::gen(i)));
        }
        assert!(sp.rewrite(&Word::gen(3)).is_none() || t.trace(0, &Word::gen(3)) == 0);
    }
}
