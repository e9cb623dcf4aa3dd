//! Star graphs of presentations.
//!
//! Vertices are the letters `x` and `x⁻¹` (vertex `2g` is generator `g`,
//! `2g + 1` its inverse). Every cyclically adjacent pair `u v` of a relator
//! yields an edge `{u⁻¹, v}`. Pairs coming from the same relator class
//! (rotations and inverse) are collected as a set, so each class adds an
//! edge once; distinct classes may add parallel edges.

use std::collections::BTreeSet;

use super::presentation::Presentation;
use super::word::gen_of;
use super::PresentationError;
use crate::planes::Graph;

pub fn letter_vertex(letter: i32) -> usize {
    2 * gen_of(letter) + usize::from(letter < 0)
}

pub fn star_graph(p: &Presentation) -> Result<Graph, PresentationError> {
    let labels = p.names.iter().flat_map(|n| [n.clone(), format!("{n}^-1")]).collect();
    let mut g = Graph::new(labels);
    for (i, class) in p.relator_classes().iter().enumerate() {
        let w = class.letters();
        if w.is_empty() {
            return Err(PresentationError::EmptyRelator(i));
        }
        let mut edges = BTreeSet::new();
        for k in 0..w.len() {
            let u = w[k];
            let v = w[(k + 1) % w.len()];
            let a = letter_vertex(-u);
            let b = letter_vertex(v);
            edges.insert((a.min(b), a.max(b)));
        }
        for (a, b) in edges {
            g.add_edge(a, b);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::howie::howie_presentation;

    #[test]
    fn fano_star_graph_shape() {
        let p = howie_presentation(2, &[1, 2, 4], false).unwrap();
        let g = star_graph(&p).unwrap();
        assert_eq!(g.order(), 14);
        assert_eq!(g.size(), 21);
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(g.girth(), Some(6));
    }
}
