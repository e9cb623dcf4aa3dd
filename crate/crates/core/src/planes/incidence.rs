//! Finite projective planes given by explicit lines.

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use super::{DifferenceSet, PlaneError};

/// Points are `0..points`; each line is a sorted list of `q + 1` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneIncidence {
    pub q: u32,
    pub points: usize,
    pub lines: Vec<Vec<usize>>,
}

impl PlaneIncidence {
    /// Lines `D + σ` for `σ ∈ ℤ_m`, line `σ` at index `σ`.
    pub fn from_difference_set(d: &DifferenceSet) -> Result<Self, PlaneError> {
        let m = d.modulus() as usize;
        let lines = (0..m)
            .map(|s| {
                let mut l: Vec<usize> = d.residues().iter().map(|&r| (r as usize + s) % m).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Self::from_lines(d.order(), m, lines)
    }

    /// Validates both plane axioms and the line size.
    pub fn from_lines(q: u32, points: usize, lines: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        let plane = PlaneIncidence {
            q,
            points,
            lines: lines
                .into_iter()
                .map(|mut l| {
                    l.sort_unstable();
                    l
                })
                .collect(),
        };
        let problems = plane.axiom_violations();
        if let Some(first) = problems.first() {
            return Err(PlaneError::NotAPlane(first.clone()));
        }
        Ok(plane)
    }

    /// Every violated axiom, described; empty for a projective plane.
    pub fn axiom_violations(&self) -> Vec<String> {
        let k = self.q as usize + 1;
        let mut out = Vec::new();
        if self.points != k * k - k + 1 || self.lines.len() != self.points {
            out.push(format!("{} points and {} lines for order {}", self.points, self.lines.len(), self.q));
        }
        for (i, l) in self.lines.iter().enumerate() {
            let mut d = l.clone();
            d.dedup();
            if l.len() != k || d.len() != k || l.iter().any(|&p| p >= self.points) {
                out.push(format!("line {i} = {l:?} is not a set of {k} points"));
            }
        }
        let inc = self.incidence_matrix();
        for a in 0..self.points {
            for b in a + 1..self.points {
                let c = (0..self.lines.len()).filter(|&l| inc[l][a] && inc[l][b]).count();
                if c != 1 {
                    out.push(format!("points {a} and {b} lie on {c} common lines"));
                }
            }
        }
        for a in 0..self.lines.len() {
            for b in a + 1..self.lines.len() {
                let c = (0..self.points).filter(|&p| inc[a][p] && inc[b][p]).count();
                if c != 1 {
                    out.push(format!("lines {a} and {b} meet in {c} points"));
                }
            }
        }
        out
    }

    /// `inc[line][point]`
    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        self.lines
            .iter()
            .map(|l| {
                let mut row = vec![false; self.points];
                for &p in l {
                    if p < self.points {
                        row[p] = true;
                    }
                }
                row
            })
            .collect()
    }

    /// Bipartite graph on points `0..m` and lines `m..2m`.
    pub fn incidence_graph(&self) -> Graph {
        let m = self.points;
        let labels = (0..m).map(|p| format!("P{p}")).chain((0..self.lines.len()).map(|l| format!("L{l}"))).collect();
        let mut g = Graph::new(labels);
        for (i, l) in self.lines.iter().enumerate() {
            for &p in l {
                g.add_edge(p, m + i);
            }
        }
        g
    }
}

/// True iff each 7-point part, together with its 3-point intersections
/// with lines of `plane`, is a Fano plane. Errors unless the parts
/// partition the points into three sets of seven.
pub fn fano_partition_check(plane: &PlaneIncidence, parts: &[Vec<usize>]) -> Result<bool, PlaneError> {
    if plane.q != 4 {
        return Err(PlaneError::NotAPartition(format!("plane has order {}, expected 4", plane.q)));
    }
    if parts.len() != 3 || parts.iter().any(|p| p.len() != 7) {
        let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
        return Err(PlaneError::NotAPartition(format!("part sizes {sizes:?}")));
    }
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != (0..plane.points).collect::<Vec<_>>() {
        return Err(PlaneError::NotAPartition("parts do not cover each point exactly once".into()));
    }
    for part in parts {
        let mut induced = Vec::new();
        for l in &plane.lines {
            let meet: Vec<usize> = l.iter().copied().filter(|p| part.contains(p)).collect();
            match meet.len() {
                0 | 1 => {}
                3 => induced.push(meet),
                _ => return Ok(false),
            }
        }
        let local: Vec<Vec<usize>> =
            induced.iter().map(|l| l.iter().map(|p| part.iter().position(|x| x == p).unwrap()).collect()).collect();
        if PlaneIncidence::from_lines(2, 7, local).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planes::graph::graph_isomorphic;

    #[test]
    fn fano_from_difference_set() {
        let d = DifferenceSet::new(7, &[1, 2, 4]).unwrap();
        let p = PlaneIncidence::from_difference_set(&d).unwrap();
        let g = p.incidence_graph();
        assert_eq!((g.order(), g.size()), (14, 21));
        assert!(g.degrees().iter().all(|&d| d == 3));
        assert_eq!(g.girth(), Some(6));
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn iso_between_representatives() {
        let a = PlaneIncidence::from_difference_set(&DifferenceSet::new(7, &[1, 2, 4]).unwrap()).unwrap();
        let b = PlaneIncidence::from_difference_set(&crate::planes::singer_difference_set(2).unwrap()).unwrap();
        let w = graph_isomorphic(&a.incidence_graph(), &b.incidence_graph()).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn bad_lines_rejected() {
        let lines = vec![vec![0, 1, 2]; 7];
        assert!(PlaneIncidence::from_lines(2, 7, lines).is_err());
    }
}
