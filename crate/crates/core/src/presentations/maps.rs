//! Checking claimed homomorphisms on finite quotients.

use serde::Serialize;

use super::{Presentation, PresentationError, Word};
use crate::pquotient::{p_quotient, PqConfig};

/// Outcome of [`check_map_on_quotient`] at each class `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapCheck {
    pub holds: bool,
    /// `per_class[c - 1]` is whether all relators vanish in class `c`.
    pub per_class: Vec<bool>,
    /// Source relators whose image is nontrivial in the class-`k` quotient.
    pub failing: Vec<usize>,
}

/// Tests whether `x_i ↦ images[i]` sends every relator of `src` to the
/// identity of the class-`k` p-quotient of `target` (and hence of every
/// smaller class). Necessary for a homomorphism `src → target`.
pub fn check_map_on_quotient(
    src: &Presentation,
    images: &[Word],
    target: &Presentation,
    p: u32,
    k: u32,
    cfg: &PqConfig,
) -> Result<MapCheck, PresentationError> {
    if images.len() != src.gen_count() {
        return Err(PresentationError::ImageCount { expected: src.gen_count(), got: images.len() });
    }
    if let Some(bad) = images.iter().flat_map(|w| w.letters()).find(|l| l.unsigned_abs() as usize > target.gen_count()) {
        return Err(PresentationError::BadGenerator { relator: 0, letter: *bad });
    }
    let q = p_quotient(target, p, k, cfg).map_err(|e| PresentationError::Quotient(e.to_string()))?;
    let rel_images: Vec<Word> = src.relators.iter().map(|r| r.substitute(images)).collect();
    let mut per_class = Vec::new();
    let mut failing = Vec::new();
    for c in 1..=k {
        let pc = q.pc.truncate(c);
        let keep = pc.gen_count();
        let epi = crate::pquotient::Epimorphism {
            source: q.epi.source.clone(),
            images: q.epi.images.iter().map(|e| crate::pquotient::PcElement(e.0[..keep].to_vec())).collect(),
        };
        let bad: Vec<usize> = (0..rel_images.len()).filter(|&i| !epi.image(&pc, &rel_images[i]).is_identity()).collect();
        per_class.push(bad.is_empty());
        if c == k {
            failing = bad;
        }
    }
    Ok(MapCheck { holds: failing.is_empty() && per_class.iter().all(|&b| b), per_class, failing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::catalog;

    #[test]
    fn trivial_map() {
        let g0 = catalog::g0();
        let imgs = vec![Word::empty(); 7];
        assert!(check_map_on_quotient(&g0, &imgs, &g0, 2, 3, &PqConfig::default()).unwrap().holds);
    }

    #[test]
    fn a_labelling_of_g() {
        let r = check_map_on_quotient(&catalog::g_in_a_generators(), &catalog::a_to_x_images(), &catalog::g(), 3, 3, &PqConfig::default())
            .unwrap();
        assert!(r.holds);
    }

    #[test]
    fn ghat_to_gprime_table() {
        let r = check_map_on_quotient(&catalog::ghat(), &catalog::ghat_to_gprime_images(), &catalog::gprime(), 2, 4, &PqConfig::default())
            .unwrap();
        assert_eq!(r.per_class, vec![true; 4]);
    }

    #[test]
    fn wrong_image_count() {
        let g0 = catalog::g0();
        assert!(matches!(
            check_map_on_quotient(&g0, &[Word::empty()], &g0, 2, 1, &PqConfig::default()),
            Err(PresentationError::ImageCount { .. })
        ));
    }
}
