//! Undirected multigraphs and a backtracking isomorphism test for small
//! graphs.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::PlaneError;

pub const MAX_ISO_VERTICES: usize = 100;

/// Undirected multigraph with labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub labels: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(labels: Vec<String>) -> Self {
        Graph { labels, edges: Vec::new() }
    }

    pub fn unlabelled(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.order() && b < self.order(), "edge endpoint out of range");
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edge multiplicity matrix.
    pub fn multiplicity(&self) -> Vec<Vec<u32>> {
        let n = self.order();
        let mut m = vec![vec![0u32; n]; n];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.order()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e.windows(2).any(|w| w[0] == w[1])
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// BFS distances from `s` (`usize::MAX` when unreachable).
    pub fn distances(&self, s: usize) -> Vec<usize> {
        let adj = self.neighbours();
        let mut d = vec![usize::MAX; self.order()];
        d[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if d[w] == usize::MAX {
                    d[w] = d[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        d
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.neighbours();
        let mut colour: Vec<Option<bool>> = vec![None; self.order()];
        for s in 0..self.order() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v]?;
                for &w in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    /// Length of a shortest cycle, counting a multi-edge as a 2-cycle and a
    /// loop as a 1-cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        if self.has_loops() {
            return Some(1);
        }
        if self.has_multi_edges() {
            return Some(2);
        }
        let adj = self.neighbours();
        let mut best: Option<usize> = None;
        for s in 0..self.order() {
            let mut dist = vec![usize::MAX; self.order()];
            let mut parent = vec![usize::MAX; self.order()];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let c = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// Checks that `map` (vertex of `self` ↦ vertex of `other`) is a
    /// bijection preserving edge multiplicities.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        let n = self.order();
        if other.order() != n || map.len() != n || self.size() != other.size() {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in map {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        let ma = self.multiplicity();
        let mb = other.multiplicity();
        (0..n).all(|a| (0..n).all(|b| ma[a][b] == mb[map[a]][map[b]]))
    }
}

/// Per-vertex invariant: degree, loop count and the distance histogram.
fn vertex_invariants(g: &Graph) -> Vec<(usize, u32, Vec<usize>)> {
    let deg = g.degrees();
    let mult = g.multiplicity();
    (0..g.order())
        .map(|v| {
            let d = g.distances(v);
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for x in d {
                *hist.entry(x).or_insert(0) += 1;
            }
            (deg[v], mult[v][v], hist.into_iter().flat_map(|(k, c)| [k, c]).collect())
        })
        .collect()
}

struct Search<'a> {
    ma: Vec<Vec<u32>>,
    mb: Vec<Vec<u32>>,
    inv_a: Vec<(usize, u32, Vec<usize>)>,
    inv_b: Vec<(usize, u32, Vec<usize>)>,
    order: &'a [usize],
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.mb.len() {
            if self.used[w] || self.inv_a[v] != self.inv_b[w] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| self.ma[v][u] == self.mb[w][self.map[u]]);
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
        }
        false
    }
}

/// Returns a verified isomorphism `a → b` as a vertex map, or `None`.
pub fn graph_isomorphic(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>, PlaneError> {
    let n = a.order();
    if n > MAX_ISO_VERTICES || b.order() > MAX_ISO_VERTICES {
        return Err(PlaneError::TooLarge(n.max(b.order())));
    }
    if n != b.order() || a.size() != b.size() {
        return Ok(None);
    }
    let inv_a = vertex_invariants(a);
    let inv_b = vertex_invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    // BFS order per component so that every vertex after the first of its
    // component has an already mapped neighbour
    let adj = a.neighbours();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut search = Search {
        ma: a.multiplicity(),
        mb: b.multiplicity(),
        inv_a,
        inv_b,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.extend(0) {
        return Ok(None);
    }
    let map = search.map;
    assert!(a.is_isomorphism(b, &map), "isomorphism witness failed verification");
    Ok(Some(map))
}

/// Complete bipartite graph `K_{s,t}`.
pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    let mut g = Graph::unlabelled(s + t);
    for a in 0..s {
        for b in 0..t {
            g.add_edge(a, s + b);
        }
    }
    g
}

/// Cycle graph `C_n`.
pub fn cycle(n: usize) -> Graph {
    let mut g = Graph::unlabelled(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    g
}
