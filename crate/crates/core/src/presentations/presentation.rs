//! Finitely presented groups and subgroup specifications.

use serde::{Deserialize, Serialize};

use super::word::{gen_of, Word};
use super::PresentationError;

/// Where a presentation came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Catalog name, file path or construction description.
    pub source: String,
    /// Whether cyclic-class relator deduplication was applied.
    pub deduplicated: bool,
}

impl Provenance {
    pub fn new(source: impl Into<String>) -> Self {
        Provenance { source: source.into(), deduplicated: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub names: Vec<String>,
    pub relators: Vec<Word>,
    #[serde(default)]
    pub provenance: Provenance,
}

impl Presentation {
    /// Validates generator indices and rejects relators that freely reduce
    /// to the empty word.
    pub fn new(names: Vec<String>, relators: Vec<Word>, provenance: Provenance) -> Result<Self, PresentationError> {
        let n = names.len();
        for (i, r) in relators.iter().enumerate() {
            if let Some(&bad) = r.letters().iter().find(|&&l| l == 0 || gen_of(l) >= n) {
                return Err(PresentationError::BadGenerator { relator: i, letter: bad });
            }
            if r.reduce().is_empty() {
                return Err(PresentationError::EmptyRelator(i));
            }
        }
        Ok(Presentation { names, relators, provenance })
    }

    /// Generators named `{prefix}0 .. {prefix}{n-1}`.
    pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn free(n: usize) -> Self {
        Presentation { names: Self::indexed_names("x", n), relators: Vec::new(), provenance: Provenance::new("free group") }
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn render(&self, w: &Word) -> String {
        w.render(&self.names)
    }

    /// Keeps the first relator of each class under rotation (and inversion
    /// if `with_inverse`), after cyclic reduction.
    pub fn dedup_cyclic(&self, with_inverse: bool) -> Self {
        let mut seen = std::collections::HashSet::new();
        let relators = self.relators.iter().filter(|r| seen.insert(r.cyclic_class(with_inverse))).cloned().collect();
        let mut provenance = self.provenance.clone();
        provenance.deduplicated = true;
        Presentation { names: self.names.clone(), relators, provenance }
    }

    /// Relator classes under rotation and inversion, sorted.
    pub fn relator_classes(&self) -> Vec<Word> {
        let mut c: Vec<Word> = self.relators.iter().map(|r| r.cyclic_class(true)).collect();
        c.sort();
        c.dedup();
        c
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Self {
        let mut p = self.clone();
        p.relators.extend(extra);
        p
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums(self.gen_count())).collect()
    }
}

/// Subgroup of a finitely presented group given by generating words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub name: String,
    pub parent: Presentation,
    pub words: Vec<Word>,
}

impl SubgroupSpec {
    pub fn new(name: impl Into<String>, parent: Presentation, words: Vec<Word>) -> Result<Self, PresentationError> {
        let n = parent.gen_count();
        let mut reduced = Vec::with_capacity(words.len());
        for (i, w) in words.into_iter().enumerate() {
            let r = w.reduce();
            if r.is_empty() {
                return Err(PresentationError::EmptySubgroupWord(i));
            }
            if let Some(&bad) = r.letters().iter().find(|&&l| gen_of(l) >= n) {
                return Err(PresentationError::BadGenerator { relator: i, letter: bad });
            }
            reduced.push(r);
        }
        Ok(SubgroupSpec { name: name.into(), parent, words: reduced })
    }

    /// The trivial subgroup.
    pub fn trivial(parent: Presentation) -> Self {
        SubgroupSpec { name: "1".into(), parent, words: Vec::new() }
    }

    /// The whole group.
    pub fn whole(parent: Presentation) -> Self {
        let words = (0..parent.gen_count()).map(Word::gen).collect();
        SubgroupSpec { name: "G".into(), parent, words }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let names = Presentation::indexed_names("x", 2);
        assert!(Presentation::new(names.clone(), vec![Word(vec![1, -1])], Provenance::default()).is_err());
        assert!(Presentation::new(names.clone(), vec![Word(vec![3])], Provenance::default()).is_err());
        let p = Presentation::new(names, vec![Word(vec![1, 2]), Word(vec![2, 1])], Provenance::default()).unwrap();
        let d = p.dedup_cyclic(false);
        assert_eq!(d.relators.len(), 1);
        assert!(d.provenance.deduplicated);
    }
}
