//! Built-in presentations, subgroups and word lists.
//!
//! Entries are built from the printed relator families without any
//! normalisation. The seven-generator groups `G1, G2, G4, G5, G7` are not
//! printed; their bundled files are comment-only stubs and a user data
//! directory may supply the relators.

use std::path::{Path, PathBuf};

use serde::Serialize;

use super::polyhedral;
use super::presentation::{Presentation, Provenance, SubgroupSpec};
use super::text::{parse_presentation, parse_word, Loaded};
use super::word::{Convention, Word};
use super::PresentationError;

/// A catalog entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Presentation(Presentation),
    Subgroup(SubgroupSpec),
}

impl Entry {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Entry::Presentation(p) => p,
            Entry::Subgroup(s) => &s.parent,
        }
    }
}

/// Groups whose relators must come from a data file.
pub const EXTERNAL: [&str; 5] = ["G1", "G2", "G4", "G5", "G7"];

const STUB_G1: &str = include_str!("../../../../data/presentations/G1.txt");
const STUB_G2: &str = include_str!("../../../../data/presentations/G2.txt");
const STUB_G4: &str = include_str!("../../../../data/presentations/G4.txt");
const STUB_G5: &str = include_str!("../../../../data/presentations/G5.txt");
const STUB_G7: &str = include_str!("../../../../data/presentations/G7.txt");

/// Subgroup generator words, verbatim, over the generators `a..g`.
pub const H2_WORDS: [&str; 5] = ["b*d^-1*a^-1*b*c^-1", "a*b*d^-1*a*b*d^-1*b*c^-1", "(b*c^-1)^2", "a*d*c^-1", "d*b^-1*a^-1*d*b^-1*a^-1*b*c^-1"];
pub const H4_WORDS: [&str; 6] = [
    "d*a^-1*b*c^-1",
    "b*c^-1*b*c^-1*e*a^-1*b*f^-1",
    "c*b^-1*a*e^-1*c*f^-1",
    "(e*a^-1*b*f^-1)^2",
    "c*b^-1*c*b^-1*e*a^-1*b*f^-1",
    "e*a^-1*b*c^-1*e*a^-1*b*c^-1*e*a^-1*b*f^-1",
];
pub const H5_WORDS: [&str; 6] = ["b*a^-1", "c*a^-1", "d*a^-1", "e*a^-1", "f*a^-1", "g*a^-1"];

/// Seven-generator relators of `G6`.
pub const G6_RELATORS: [&str; 7] = ["a*b*e", "a*c*b", "a*e*c", "b*f^2", "c*d^2", "d*f*g", "e*g^2"];
/// Two-generator relators of `G6`.
pub const G6_TWO_GEN_RELATORS: [&str; 2] = ["b^-1*a^-1*b^2*a^-2*b^-3*a^-1", "a^3*b*a*b*a^-2*b^2"];

/// Tuple words in the generators `x0, x1, x2` of `H`; `y2` uses
/// conjugation, so it depends on the convention.
pub const THM_MAIN_WORDS: [(&str, &str); 5] = [
    ("x", "x2^-1*x1^-1*x0^-1"),
    ("y0", "x0*x1^2*x2^2"),
    ("y1", "x0^2*x1*x2^2"),
    ("y2", "x1*x2^-1*x2^(x0)"),
    ("y", "(x1*x2^-1*x2^(x0))^-1*(x0^2*x1*x2^2)^-1*(x0*x1^2*x2^2)^-1"),
];

/// The identification table from `Ĝ` to `G′`: `x_i ↦ (letter, index)^-1`.
pub const GHAT_TO_GPRIME: [(char, usize); 21] = [
    ('z', 0), ('w', 1), ('y', 2), ('z', 3), ('w', 4), ('y', 5), ('z', 6),
    ('w', 0), ('y', 1), ('z', 2), ('w', 3), ('y', 4), ('z', 5), ('w', 6),
    ('y', 0), ('z', 1), ('w', 2), ('y', 3), ('z', 4), ('w', 5), ('y', 6),
];

#[derive(Clone, Debug, Serialize)]
pub struct CatalogInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: [CatalogInfo; 19] = [
    CatalogInfo { name: "G0", kind: "presentation", description: "x_i x_{i+1} x_{i+3}, i in Z_7" },
    CatalogInfo { name: "G", kind: "presentation", description: "x_i^3, x_i x_{i+1} x_{i+4}, i in Z_13" },
    CatalogInfo { name: "Ghat", kind: "presentation", description: "q=4 machine group on x_0..x_20" },
    CatalogInfo { name: "GK", kind: "presentation", description: "polyhedral presentation of order 4 on x1..x21 (35 triples)" },
    CatalogInfo { name: "GK-printed", kind: "presentation", description: "the 34 printed triples only" },
    CatalogInfo { name: "GK-alt", kind: "presentation", description: "G_K on w_i, y_i, z_i" },
    CatalogInfo { name: "Gprime", kind: "presentation", description: "G' on w_i, y_i, z_i" },
    CatalogInfo { name: "G6", kind: "presentation", description: "seven-generator relators r_6" },
    CatalogInfo { name: "G6-2gen", kind: "presentation", description: "two-generator form of G6" },
    CatalogInfo { name: "G1", kind: "external", description: "relators from a data file" },
    CatalogInfo { name: "G2", kind: "external", description: "relators from a data file" },
    CatalogInfo { name: "G4", kind: "external", description: "relators from a data file" },
    CatalogInfo { name: "G5", kind: "external", description: "relators from a data file" },
    CatalogInfo { name: "G7", kind: "external", description: "relators from a data file" },
    CatalogInfo { name: "H0", kind: "subgroup", description: "<x0, x1> in G0, index 2" },
    CatalogInfo { name: "H", kind: "subgroup", description: "<x0, x1, x2> in G, index 3" },
    CatalogInfo { name: "H2", kind: "subgroup", description: "h_{2,0..4} in G2" },
    CatalogInfo { name: "H4", kind: "subgroup", description: "h_{4,0..5} in G4" },
    CatalogInfo { name: "H5", kind: "subgroup", description: "h_{5,0..5} in G5, index 3" },
];

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    Presentation::indexed_names(prefix, n)
}

fn cyclic_family(m: usize, shapes: &[[usize; 3]]) -> Vec<Word> {
    let mut out = Vec::new();
    for s in shapes {
        for i in 0..m {
            out.push(Word::from_gens(&[(i + s[0]) % m, (i + s[1]) % m, (i + s[2]) % m]));
        }
    }
    out
}

pub fn g0() -> Presentation {
    Presentation { names: indexed("x", 7), relators: cyclic_family(7, &[[0, 1, 3]]), provenance: Provenance::new("catalog:G0") }
}

pub fn g() -> Presentation {
    let mut relators: Vec<Word> = (0..13).map(|i| Word::gen(i).pow(3)).collect();
    relators.extend(cyclic_family(13, &[[0, 1, 4]]));
    Presentation { names: indexed("x", 13), relators, provenance: Provenance::new("catalog:G") }
}

pub fn ghat() -> Presentation {
    Presentation {
        names: indexed("x", 21),
        relators: cyclic_family(21, &[[0, 7, 14], [0, 14, 7], [0, 3, 15]]),
        provenance: Provenance::new("catalog:Ghat"),
    }
}

/// `G_K` from the completed tuple list (the printed 34 triples plus the
/// missing one), one relator per triple.
pub fn gk() -> Presentation {
    let mut p = gk_printed();
    let t = polyhedral::ORDER4_MISSING_TUPLE;
    p.relators.push(Word::from_gens(&[t[0] - 1, t[1] - 1, t[2] - 1]));
    p.provenance = Provenance::new("catalog:GK");
    p
}

/// `G_K` from the 34 printed triples only.
pub fn gk_printed() -> Presentation {
    let names: Vec<String> = (1..=21).map(|k| format!("x{k}")).collect();
    let relators = polyhedral::ORDER4_TUPLES.iter().map(|t| Word::from_gens(&[t[0] - 1, t[1] - 1, t[2] - 1])).collect();
    Presentation { names, relators, provenance: Provenance::new("catalog:GK-printed") }
}

fn wyz_names() -> Vec<String> {
    let mut n = indexed("w", 7);
    n.extend(indexed("y", 7));
    n.extend(indexed("z", 7));
    n
}

fn wyz(letter: char, i: usize) -> usize {
    let block = match letter {
        'w' => 0,
        'y' => 1,
        'z' => 2,
        _ => unreachable!("letters are w, y, z"),
    };
    7 * block + i % 7
}

fn wyz_common() -> Vec<Word> {
    let mut r = Vec::new();
    for l in ['w', 'y', 'z'] {
        for i in 0..7 {
            r.push(Word::from_gens(&[wyz(l, i), wyz(l, i + 1), wyz(l, i + 3)]));
        }
    }
    r
}

pub fn gk_alt() -> Presentation {
    let mut relators = wyz_common();
    let inv = |g: usize| Word::gen_inv(g);
    let gen = |g: usize| Word::gen(g);
    for i in 0..7 {
        let y = wyz('y', 6 * (1 + i));
        relators.push(inv(wyz('w', i)).mul(&gen(y)).mul(&inv(wyz('z', i))));
    }
    for i in 0..7 {
        let y = wyz('y', 6 * (1 + i));
        relators.push(inv(wyz('w', i)).mul(&inv(wyz('z', i))).mul(&gen(y)));
    }
    Presentation { names: wyz_names(), relators, provenance: Provenance::new("catalog:GK-alt") }
}

pub fn gprime() -> Presentation {
    let mut relators = wyz_common();
    for i in 0..7 {
        relators.push(Word::from_gens(&[wyz('w', i), wyz('y', i), wyz('z', i)]));
    }
    for i in 0..7 {
        relators.push(Word::from_gens(&[wyz('w', i), wyz('z', i), wyz('y', i)]));
    }
    Presentation { names: wyz_names(), relators, provenance: Provenance::new("catalog:Gprime") }
}

/// Images in `G′` of the generators of `Ĝ`.
pub fn ghat_to_gprime_images() -> Vec<Word> {
    GHAT_TO_GPRIME.iter().map(|&(l, i)| Word::gen_inv(wyz(l, i))).collect()
}

fn letters(n: usize) -> Vec<String> {
    (b'a'..b'a' + n as u8).map(|c| (c as char).to_string()).collect()
}

fn parse_all(words: &[&str], names: &[String]) -> Vec<Word> {
    words.iter().map(|w| parse_word(w, names, Convention::Right).expect("catalog words parse")).collect()
}

pub fn g6() -> Presentation {
    let names = letters(7);
    let relators = parse_all(&G6_RELATORS, &names);
    Presentation { names, relators, provenance: Provenance::new("catalog:G6") }
}

pub fn g6_two_gen() -> Presentation {
    let names = letters(2);
    let relators = parse_all(&G6_TWO_GEN_RELATORS, &names);
    Presentation { names, relators, provenance: Provenance::new("catalog:G6-2gen") }
}

/// The transport `x_j = a_{7j}` of the relators of `G` to generators
/// `a_0..a_12` (inverse of `a_i = x_{2i}`).
pub fn g_in_a_generators() -> Presentation {
    let base = g();
    let images: Vec<Word> = (0..13).map(|j| Word::gen((7 * j) % 13)).collect();
    let relators = base.relators.iter().map(|r| r.substitute(&images)).collect();
    Presentation { names: indexed("a", 13), relators, provenance: Provenance::new("catalog:G via a_i = x_{2i}") }
}

/// Images `a_i ↦ x_{2i}`.
pub fn a_to_x_images() -> Vec<Word> {
    (0..13).map(|i| Word::gen((2 * i) % 13)).collect()
}

/// Catalog with an optional user data directory for external groups.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub data_dir: Option<PathBuf>,
    pub convention: Convention,
}

impl Catalog {
    pub fn new(data_dir: Option<PathBuf>, convention: Convention) -> Self {
        Catalog { data_dir, convention }
    }

    fn external(&self, name: &str) -> Result<Presentation, PresentationError> {
        if let Some(dir) = &self.data_dir {
            let path = dir.join(format!("{name}.txt"));
            if path.exists() {
                return load_external(&path, self.convention);
            }
        }
        let stub = match name {
            "G1" => STUB_G1,
            "G2" => STUB_G2,
            "G4" => STUB_G4,
            "G5" => STUB_G5,
            "G7" => STUB_G7,
            _ => return Err(PresentationError::UnknownName(name.into())),
        };
        match parse_presentation(stub, name, self.convention)? {
            Loaded::Presentation(p) => Ok(p),
            Loaded::Subgroup(s) => Ok(s.parent),
        }
    }

    pub fn presentation(&self, name: &str) -> Result<Presentation, PresentationError> {
        match self.get(name)? {
            Entry::Presentation(p) => Ok(p),
            Entry::Subgroup(_) => Err(PresentationError::WrongKind(name.into())),
        }
    }

    pub fn subgroup(&self, name: &str) -> Result<SubgroupSpec, PresentationError> {
        match self.get(name)? {
            Entry::Subgroup(s) => Ok(s),
            Entry::Presentation(_) => Err(PresentationError::WrongKind(name.into())),
        }
    }

    pub fn get(&self, name: &str) -> Result<Entry, PresentationError> {
        let p = Entry::Presentation;
        Ok(match name {
            "G0" => p(g0()),
            "G" => p(g()),
            "Ghat" => p(ghat()),
            "GK" => p(gk()),
            "GK-printed" => p(gk_printed()),
            "GK-alt" => p(gk_alt()),
            "Gprime" => p(gprime()),
            "G6" => p(g6()),
            "G6-2gen" => p(g6_two_gen()),
            n if EXTERNAL.contains(&n) => p(self.external(n)?),
            "H0" => Entry::Subgroup(SubgroupSpec::new("H0", g0(), vec![Word::gen(0), Word::gen(1)])?),
            "H" => Entry::Subgroup(SubgroupSpec::new("H", g(), vec![Word::gen(0), Word::gen(1), Word::gen(2)])?),
            "H2" => Entry::Subgroup(self.words_subgroup("H2", "G2", &H2_WORDS)?),
            "H4" => Entry::Subgroup(self.words_subgroup("H4", "G4", &H4_WORDS)?),
            "H5" => Entry::Subgroup(self.words_subgroup("H5", "G5", &H5_WORDS)?),
            _ => return Err(PresentationError::UnknownName(name.into())),
        })
    }

    fn words_subgroup(&self, name: &str, parent: &str, words: &[&str]) -> Result<SubgroupSpec, PresentationError> {
        let pres = self.external(parent)?;
        let ws = words.iter().map(|w| parse_word(w, &pres.names, self.convention)).collect::<Result<Vec<_>, _>>()?;
        SubgroupSpec::new(name, pres, ws)
    }

    /// Tuple words for `thm:main` over `x0, x1, x2` under this convention.
    pub fn thm_main_words(&self) -> Vec<(String, Word)> {
        let names = indexed("x", 3);
        THM_MAIN_WORDS
            .iter()
            .map(|(n, w)| (n.to_string(), parse_word(w, &names, self.convention).expect("catalog words parse")))
            .collect()
    }
}

fn load_external(path: &Path, conv: Convention) -> Result<Presentation, PresentationError> {
    match super::text::load_presentation_file(path, conv)? {
        Loaded::Presentation(p) => Ok(p),
        Loaded::Subgroup(s) => Ok(s.parent),
    }
}

/// Default catalog lookup (bundled data only, right conjugation).
pub fn catalog(name: &str) -> Result<Entry, PresentationError> {
    Catalog::default().get(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let p = g0();
        assert_eq!((p.gen_count(), p.relators.len()), (7, 7));
        assert_eq!(g().relators.len(), 26);
        assert_eq!(ghat().relators.len(), 63);
        assert_eq!(gk().relators.len(), 35);
        assert_eq!(gk_printed().relators.len(), 34);
        assert_eq!(gk_alt().relators.len(), 35);
    }

    #[test]
    fn subgroup_h() {
        match catalog("H").unwrap() {
            Entry::Subgroup(s) => {
                assert_eq!(s.parent, g());
                assert_eq!(s.words.len(), 3);
            }
            _ => panic!("H is a subgroup"),
        }
    }

    #[test]
    fn external_data_is_gated() {
        for n in EXTERNAL {
            assert!(matches!(catalog(n), Err(PresentationError::MissingData(_))), "{n}");
        }
        assert!(matches!(catalog("H2"), Err(PresentationError::MissingData(_))));
        assert!(matches!(catalog("nope"), Err(PresentationError::UnknownName(_))));
    }

    #[test]
    fn transport_shape() {
        // x_i x_{i+1} x_{i+4} becomes a_m a_{m+7} a_{m+2} with m = 7i
        let t = g_in_a_generators();
        let r = &t.relators[13];
        assert_eq!(r, &Word::from_gens(&[0, 7, 2]));
    }

    #[test]
    fn thm_main_words_convention() {
        let right = Catalog::default().thm_main_words();
        let left = Catalog::new(None, Convention::Left).thm_main_words();
        assert_eq!(right[3].1, Word(vec![2, -3, -1, 3, 1]));
        assert_ne!(right[3].1, left[3].1);
    }
}
