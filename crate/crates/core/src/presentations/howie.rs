//! The difference-set presentation machine: generators `x_i` for
//! `i ∈ ℤ_m` and relators `x_i x_{i+λ} x_{i+λ+qλ}` for `λ` in a perfect
//! difference set.

use super::presentation::{Presentation, Provenance};
use super::word::Word;
use super::PresentationError;
use crate::planes::is_perfect_difference_set;

/// All `m·(q+1)` relators, grouped by `λ` in the order given, or one per
/// rotation class when `dedup` is set.
pub fn howie_presentation(q: u32, d: &[u32], dedup: bool) -> Result<Presentation, PresentationError> {
    let m = q * q + q + 1;
    if d.len() as u32 != q + 1 || !is_perfect_difference_set(d, m).perfect {
        return Err(PresentationError::NotPerfect { q, residues: d.to_vec() });
    }
    let mut relators = Vec::with_capacity((m * (q + 1)) as usize);
    for &lambda in d {
        for i in 0..m {
            let a = i;
            let b = (i + lambda) % m;
            let c = (i + lambda + q * lambda) % m;
            relators.push(Word::from_gens(&[a as usize, b as usize, c as usize]));
        }
    }
    let p = Presentation {
        names: Presentation::indexed_names("x", m as usize),
        relators,
        provenance: Provenance::new(format!("difference-set machine q={q} D={d:?}")),
    };
    Ok(if dedup { p.dedup_cyclic(false) } else { p })
}

/// Relator classes of a presentation grouped by shape: for each class the
/// offsets `(b - a, c - a)` of its least rotation `x_a x_b x_c`.
pub fn triple_shapes(p: &Presentation, m: usize) -> Vec<(usize, usize)> {
    let mut shapes: Vec<(usize, usize)> = p
        .relators
        .iter()
        .filter(|r| r.len() == 3)
        .map(|r| {
            let w = r.min_rotation();
            let g: Vec<usize> = w.letters().iter().map(|&l| (l - 1) as usize).collect();
            ((g[1] + m - g[0]) % m, (g[2] + m - g[0]) % m)
        })
        .collect();
    shapes.sort_unstable();
    shapes.dedup();
    shapes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_dedup() {
        let full = howie_presentation(2, &[1, 2, 4], false).unwrap();
        assert_eq!(full.relators.len(), 21);
        let d = howie_presentation(2, &[1, 2, 4], true).unwrap();
        assert_eq!(d.relators.len(), 7);
        for i in 0..7 {
            assert_eq!(d.relators[i], Word::from_gens(&[i, (i + 1) % 7, (i + 3) % 7]));
        }
    }

    #[test]
    fn rejects_non_perfect() {
        assert!(howie_presentation(2, &[0, 1, 2], false).is_err());
        assert!(howie_presentation(3, &[1, 2, 4], false).is_err());
    }
}
