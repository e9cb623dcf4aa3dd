//! Polyhedral presentations over unions of projective planes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::presentation::{Presentation, Provenance};
use super::word::Word;
use super::PresentationError;
use crate::planes::PlaneIncidence;

/// A tuple set `K` over the points `P`, together with the basic bijection
/// `λ: P → L` given as the point list of each `λ(x)`, and optionally the
/// subplanes with their own smaller lines `λ_i(x) ⊂ λ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralPresentation {
    /// Point labels, in generator order.
    pub points: Vec<usize>,
    pub lambda: BTreeMap<usize, Vec<usize>>,
    /// Point sets of the subplanes together with their line of each point.
    pub subplanes: Vec<BTreeMap<usize, Vec<usize>>>,
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The lines `λ(x)` (or a subplane's lines) fail a plane axiom.
    Plane { scope: String, detail: String },
    /// `λ_i(x) ⊄ λ(x)`.
    SubLine { point: usize },
    /// A tuple entry is not a point.
    UnknownPoint { tuple: Vec<usize> },
    /// Condition (1): continuations of `x1` differ from `λ(x1)`.
    Incidence { x1: usize, continuations: Vec<usize>, line: Vec<usize> },
    /// Condition (2): a rotation is missing.
    Rotation { tuple: Vec<usize>, missing: Vec<usize> },
    /// Condition (3): several third entries for one pair.
    Continuation { x1: usize, x2: usize, thirds: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl PolyhedralPresentation {
    /// Adds every cyclic rotation of the given tuples.
    pub fn close_under_rotation(tuples: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in tuples {
            for k in 0..t.len() {
                let mut r = t[k..].to_vec();
                r.extend_from_slice(&t[..k]);
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }

    fn plane_check(&self, scope: &str, pts: &[usize], lines: &BTreeMap<usize, Vec<usize>>, out: &mut Vec<Violation>) {
        let idx: BTreeMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let k = lines.values().next().map_or(0, Vec::len);
        let q = k.saturating_sub(1) as u32;
        let mut local = Vec::new();
        for l in lines.values() {
            match l.iter().map(|p| idx.get(p).copied()).collect::<Option<Vec<usize>>>() {
                Some(v) => local.push(v),
                None => {
                    out.push(Violation::Plane { scope: scope.into(), detail: format!("line {l:?} leaves the point set") });
                    return;
                }
            }
        }
        let plane = PlaneIncidence { q, points: pts.len(), lines: local.into_iter().map(|mut l| { l.sort_unstable(); l }).collect() };
        for detail in plane.axiom_violations() {
            // translate local indices back to labels in the message
            let detail = translate_indices(&detail, pts);
            out.push(Violation::Plane { scope: scope.into(), detail });
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        self.plane_check("P", &self.points, &self.lambda, &mut v);
        for (i, sub) in self.subplanes.iter().enumerate() {
            let pts: Vec<usize> = sub.keys().copied().collect();
            self.plane_check(&format!("P{}", i + 1), &pts, sub, &mut v);
            for (x, l) in sub {
                let big = self.lambda.get(x);
                if big.map_or(true, |b| !l.iter().all(|p| b.contains(p))) {
                    v.push(Violation::SubLine { point: *x });
                }
            }
        }
        let pset: BTreeSet<usize> = self.points.iter().copied().collect();
        let tset: BTreeSet<&Vec<usize>> = self.tuples.iter().collect();
        let mut conts: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let mut thirds: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
        for t in &self.tuples {
            if t.len() < 2 || t.iter().any(|x| !pset.contains(x)) {
                v.push(Violation::UnknownPoint { tuple: t.clone() });
                continue;
            }
            conts.entry(t[0]).or_default().insert(t[1]);
            if let Some(&x3) = t.get(2) {
                thirds.entry((t[0], t[1])).or_default().insert(x3);
            }
            let mut r = t[1..].to_vec();
            r.push(t[0]);
            if !tset.contains(&r) {
                v.push(Violation::Rotation { tuple: t.clone(), missing: r });
            }
        }
        for &x1 in &self.points {
            let c: Vec<usize> = conts.get(&x1).map(|s| s.iter().copied().collect()).unwrap_or_default();
            let mut line = self.lambda.get(&x1).cloned().unwrap_or_default();
            line.sort_unstable();
            if c != line {
                v.push(Violation::Incidence { x1, continuations: c, line });
            }
        }
        for ((x1, x2), s) in thirds {
            if s.len() > 1 {
                v.push(Violation::Continuation { x1, x2, thirds: s.into_iter().collect() });
            }
        }
        ValidationReport { valid: v.is_empty(), violations: v }
    }

    /// One generator `x{label}` per point, one relator per tuple (or per
    /// rotation class with `dedup`).
    pub fn to_presentation(&self, dedup: bool) -> Result<Presentation, PresentationError> {
        let report = self.validate();
        if !report.valid {
            return Err(PresentationError::InvalidPolyhedral(report.violations.len()));
        }
        if self.tuples.is_empty() {
            return Err(PresentationError::InvalidPolyhedral(0));
        }
        let idx: BTreeMap<usize, usize> = self.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let names = self.points.iter().map(|p| format!("x{p}")).collect();
        let relators = self.tuples.iter().map(|t| Word::from_gens(&t.iter().map(|p| idx[p]).collect::<Vec<_>>())).collect();
        let p = Presentation { names, relators, provenance: Provenance::new("polyhedral presentation") };
        Ok(if dedup { p.dedup_cyclic(false) } else { p })
    }
}

fn translate_indices(detail: &str, pts: &[usize]) -> String {
    // messages from the axiom checker refer to local indices; append labels
    format!("{detail} (local indices; labels {pts:?})")
}

/// The `n = 1, q = 2` triangle presentation: its basic bijection and the
/// seven listed triples.
pub const TRIANGLE_Q2_LAMBDA: [[usize; 3]; 7] =
    [[1, 4, 2], [3, 2, 5], [4, 3, 6], [0, 4, 5], [1, 5, 6], [0, 2, 6], [0, 1, 3]];
pub const TRIANGLE_Q2_TUPLES: [[usize; 3]; 7] =
    [[0, 1, 3], [1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 0], [5, 6, 1], [6, 0, 2]];

/// Order-4 example: rows `point: three subplane points, two further points`
/// exactly as printed (three blocks of seven rows).
pub const ORDER4_ROWS: [(usize, [usize; 5]); 21] = [
    (4, [5, 6, 7, 12, 18]),
    (7, [1, 2, 5, 8, 21]),
    (2, [3, 4, 5, 14, 16]),
    (5, [1, 3, 6, 10, 19]),
    (1, [2, 4, 6, 9, 15]),
    (3, [1, 4, 7, 11, 17]),
    (6, [2, 3, 7, 13, 20]),
    (9, [12, 13, 14, 1, 15]),
    (11, [8, 9, 12, 3, 17]),
    (14, [10, 11, 12, 2, 16]),
    (12, [8, 10, 13, 4, 18]),
    (10, [9, 11, 13, 5, 19]),
    (13, [8, 11, 13, 6, 20]),
    (8, [9, 10, 14, 7, 21]),
    (18, [19, 20, 21, 4, 12]),
    (21, [15, 16, 19, 7, 8]),
    (16, [17, 18, 19, 2, 14]),
    (19, [15, 17, 20, 5, 10]),
    (15, [16, 18, 20, 1, 9]),
    (17, [15, 18, 21, 3, 11]),
    (20, [16, 17, 21, 6, 13]),
];

/// The printed row for point 13 repeats 13; the tuple list forces 14.
pub const ORDER4_ROW13_CORRECTED: [usize; 5] = [8, 11, 14, 6, 20];

pub const ORDER4_TUPLES: [[usize; 3]; 34] = [
    [1, 9, 15], [1, 15, 9], [2, 14, 16], [2, 16, 14], [3, 11, 17], [3, 17, 11], [4, 12, 18],
    [4, 18, 12], [5, 10, 19], [5, 19, 10], [6, 13, 20], [6, 20, 13], [7, 8, 21], [7, 21, 8],
    [1, 2, 3], [1, 4, 5], [1, 6, 7], [3, 4, 6], [3, 7, 5], [2, 5, 6], [2, 4, 7], [8, 9, 12], [8, 10, 13],
    [8, 14, 11], [9, 14, 10], [9, 13, 11], [12, 13, 14], [10, 11, 12], [15, 16, 17], [15, 18, 19],
    [17, 18, 20], [17, 21, 19], [16, 19, 20], [16, 18, 21],
];

/// A triple absent from the printed list: condition (1) requires
/// continuations `15 → 20`, `20 → 21` and `21 → 15`, and no listed tuple
/// provides them.
pub const ORDER4_MISSING_TUPLE: [usize; 3] = [15, 20, 21];

/// The triangle presentation of the Fano plane with all rotations.
pub fn triangle_q2() -> PolyhedralPresentation {
    let lambda = TRIANGLE_Q2_LAMBDA.iter().enumerate().map(|(k, l)| (k, l.to_vec())).collect();
    let tuples: Vec<Vec<usize>> = TRIANGLE_Q2_TUPLES.iter().map(|t| t.to_vec()).collect();
    PolyhedralPresentation {
        points: (0..7).collect(),
        lambda,
        subplanes: Vec::new(),
        tuples: PolyhedralPresentation::close_under_rotation(&tuples),
    }
}

/// The order-4 example exactly as printed (`corrected = false`), or with
/// row 13 corrected and the missing triple added.
pub fn order4(corrected: bool) -> PolyhedralPresentation {
    let mut lambda = BTreeMap::new();
    let mut subplanes = vec![BTreeMap::new(), BTreeMap::new(), BTreeMap::new()];
    for &(k, row) in &ORDER4_ROWS {
        let row = if corrected && k == 13 { ORDER4_ROW13_CORRECTED } else { row };
        lambda.insert(k, row.to_vec());
        subplanes[(k - 1) / 7].insert(k, row[..3].to_vec());
    }
    let mut tuples: Vec<Vec<usize>> = ORDER4_TUPLES.iter().map(|t| t.to_vec()).collect();
    if corrected {
        tuples.push(ORDER4_MISSING_TUPLE.to_vec());
    }
    PolyhedralPresentation {
        points: (1..=21).collect(),
        lambda,
        subplanes,
        tuples: PolyhedralPresentation::close_under_rotation(&tuples),
    }
}

/// The order-4 plane on labels `1..=21` (internal points `label - 1`)
/// whose lines are the `λ(x)`.
pub fn order4_plane(corrected: bool) -> Result<PlaneIncidence, crate::planes::PlaneError> {
    let pp = order4(corrected);
    let lines = pp.lambda.values().map(|l| l.iter().map(|p| p - 1).collect()).collect();
    PlaneIncidence::from_lines(4, 21, lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_valid() {
        let r = triangle_q2().validate();
        assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn printed_order4_row_is_flagged() {
        let r = order4(false).validate();
        assert!(!r.valid);
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Incidence { x1: 13, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Incidence { x1: 15, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Plane { scope, .. } if scope == "P2")));
        let c = order4(true).validate();
        assert!(c.valid, "{:?}", c.violations);
    }

    #[test]
    fn missing_rotation_is_flagged() {
        let mut t = triangle_q2();
        t.tuples.retain(|x| x != &vec![1, 3, 0]);
        let r = t.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Rotation { .. })));
    }

    #[test]
    fn empty_tuple_set_rejected() {
        let mut t = triangle_q2();
        t.tuples.clear();
        assert!(t.to_presentation(false).is_err());
    }
}
