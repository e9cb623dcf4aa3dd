//! Tuple families written in terms of a few base generators.

use serde::{Deserialize, Serialize};

use super::RamificationError;
use crate::presentations::catalog::THM_MAIN_WORDS;
use crate::presentations::{parse_word, Convention, Word};
use crate::pquotient::{PcElement, PcPresentation};

pub const FAMILIES: [&str; 3] = ["thm-main", "T2-pair", "T2-pair-printed"];

/// Words of a tuple pair over named base generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperTuples {
    pub name: String,
    pub generators: Vec<String>,
    pub t1: Vec<(String, Word)>,
    pub t2: Vec<(String, Word)>,
}

impl PaperTuples {
    pub fn render(&self) -> (Vec<String>, Vec<String>) {
        let r = |t: &[(String, Word)]| t.iter().map(|(_, w)| w.render(&self.generators)).collect();
        (r(&self.t1), r(&self.t2))
    }
}

fn parse_all(names: &[String], items: &[(&str, &str)], conv: Convention) -> Vec<(String, Word)> {
    items.iter().map(|(n, w)| (n.to_string(), parse_word(w, names, conv).expect("tuple words parse"))).collect()
}

pub fn paper_tuple_words(name: &str, conv: Convention) -> Result<PaperTuples, RamificationError> {
    let (generators, t1, t2): (Vec<String>, Vec<(&str, &str)>, Vec<(&str, &str)>) = match name {
        "thm-main" => {
            let w = |n: &str| THM_MAIN_WORDS.iter().find(|(k, _)| *k == n).expect("catalog entry").1;
            (
                vec!["x0".into(), "x1".into(), "x2".into()],
                vec![("x0", "x0"), ("x1", "x1"), ("x2", "x2"), ("x", w("x"))],
                vec![("y0", w("y0")), ("y1", w("y1")), ("y2", w("y2")), ("y", w("y"))],
            )
        }
        // third entry of the second tuple is the one forced by product one
        "T2-pair" => (
            vec!["h0".into(), "h1".into()],
            vec![("h0", "h0"), ("h1", "h1"), ("", "h1^-1*h0^-1")],
            vec![("", "h0*h1^2"), ("", "h0*h1^3"), ("", "h1^-3*h0^-1*h1^-2*h0^-1")],
        ),
        "T2-pair-printed" => (
            vec!["h0".into(), "h1".into(), "h2".into()],
            vec![("h0", "h0"), ("h1", "h1"), ("", "h1^-1*h0^-1")],
            vec![("", "h0*h1^2"), ("", "h0*h1^3"), ("", "h1^-3*h0^-1*h2^-2*h0^-1")],
        ),
        _ => return Err(RamificationError::UnknownTuples(name.into())),
    };
    Ok(PaperTuples { name: name.into(), t1: parse_all(&generators, &t1, conv), t2: parse_all(&generators, &t2, conv), generators })
}

/// Evaluates a word given images of its generators.
pub fn evaluate(pc: &PcPresentation, images: &[PcElement], w: &Word) -> PcElement {
    let c = pc.collector();
    w.letters().iter().fold(c.identity(), |acc, &l| {
        let x = &images[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            c.mul(&acc, x)
        } else {
            c.mul(&acc, &c.inv(x))
        }
    })
}

/// Materializes a tuple family from images of its base generators.
pub fn paper_tuples(
    name: &str,
    conv: Convention,
    pc: &PcPresentation,
    images: &[PcElement],
) -> Result<(Vec<PcElement>, Vec<PcElement>), RamificationError> {
    let t = paper_tuple_words(name, conv)?;
    if images.len() < t.generators.len() {
        return Err(RamificationError::MissingWord(t.generators[images.len()].clone()));
    }
    let ev = |ws: &[(String, Word)]| ws.iter().map(|(_, w)| evaluate(pc, images, w)).collect();
    Ok((ev(&t.t1), ev(&t.t2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pquotient::{p_quotient, PqConfig};
    use crate::presentations::Presentation;
    use crate::ramification::{disjoint, is_spherical_system, system_type, DenseGroup};

    #[test]
    fn unknown_family() {
        assert_eq!(paper_tuple_words("nope", Convention::Right), Err(RamificationError::UnknownTuples("nope".into())));
    }

    #[test]
    fn t2_pair_in_z7_squared() {
        let pres = Presentation::new(
            vec!["a".into(), "b".into()],
            vec![Word::gen(0).pow(7), Word::gen(1).pow(7), Word::commutator(&Word::gen(0), &Word::gen(1))],
            Default::default(),
        )
        .unwrap();
        let q = p_quotient(&pres, 7, 1, &PqConfig::default()).unwrap();
        let imgs = vec![q.epi.image(&q.pc, &Word::gen(0)), q.epi.image(&q.pc, &Word::gen(1))];
        let (t1, t2) = paper_tuples("T2-pair", Convention::Right, &q.pc, &imgs).unwrap();
        assert_eq!((t1.len(), t2.len()), (3, 3));
        assert!(is_spherical_system(&q.pc, &t1).unwrap().ok());
        assert!(is_spherical_system(&q.pc, &t2).unwrap().ok());
        assert_eq!(system_type(&q.pc.collector(), &t2), vec![7, 7, 7]);
        let g = DenseGroup::new(&q.pc, 1 << 10).unwrap();
        assert!(disjoint(&g, &t1, &t2).disjoint());
        assert!(paper_tuples("T2-pair-printed", Convention::Right, &q.pc, &imgs).is_err());
    }
}
