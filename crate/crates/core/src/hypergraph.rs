//! Uniform simple hypergraphs on dense vertex ids.
//!
//! Edges are stored as strictly increasing vertex lists, and the edge list is
//! kept in lexicographic order, so two `Hypergraph` values with the same
//! labelled structure compare equal.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    m: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.m, raw.n, raw.edges)
    }
}

/// Coarse classification used to route trace computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    Hypertree,
    LinearUnicyclic,
    Disconnected,
    Other,
}

impl Hypergraph {
    /// Validates and canonicalises the edge list. Edges may be given in any
    /// order with vertices in any order; duplicates are rejected.
    pub fn new(m: usize, n: usize, edges: Vec<Vec<Vertex>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::input(format!("uniformity must be at least 2, got {m}")));
        }
        if n == 0 {
            return Err(Error::input("a hypergraph needs at least one vertex"));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.len() != m {
                return Err(Error::input(format!(
                    "edge {i} has {} vertices, expected {m}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {i} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::input(format!("edge {i} uses vertex {v} outside 0..{n}")));
            }
            sorted.push(e);
        }
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Construction(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph {
            m,
            n,
            edges: sorted,
        })
    }

    /// The one-vertex hypergraph with no edges.
    pub fn trivial(m: usize) -> Self {
        Hypergraph {
            m,
            n: 1,
            edges: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::input(format!("bad hypergraph JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialisation is infallible")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1 && self.edges.is_empty()
    }

    /// Position of an edge (given as any vertex order) in the edge list.
    pub fn edge_index(&self, edge: &[Vertex]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {v} outside 0..{}", self.n)))
        }
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.contains(&v)).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let inc = self.incidence();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &ei in &inc[v] {
                for &u in &self.edges[ei] {
                    if !seen[u] {
                        seen[u] = true;
                        count += 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        count == self.n
    }

    pub fn is_linear(&self) -> bool {
        for (i, e) in self.edges.iter().enumerate() {
            for f in &self.edges[i + 1..] {
                if e.iter().filter(|v| f.contains(v)).count() > 1 {
                    return false;
                }
            }
        }
        true
    }

    /// `Σ(|e|−1) − n + 1`, the cycle rank of the vertex–edge incidence graph
    /// when the hypergraph is connected.
    pub fn cyclomatic_number(&self) -> isize {
        (self.edges.len() * (self.m - 1)) as isize - self.n as isize + 1
    }

    pub fn topology(&self) -> Topology {
        if !self.is_connected() {
            return Topology::Disconnected;
        }
        match self.cyclomatic_number() {
            0 => Topology::Hypertree,
            1 if self.is_linear() => Topology::LinearUnicyclic,
            _ => Topology::Other,
        }
    }

    pub fn is_hypertree(&self) -> bool {
        self.topology() == Topology::Hypertree
    }

    pub fn is_linear_unicyclic(&self) -> bool {
        self.topology() == Topology::LinearUnicyclic
    }

    /// Length of a shortest cycle, `None` for acyclic hypergraphs.
    ///
    /// A cycle is `v0 e1 v1 … el v0` with distinct vertices and distinct
    /// edges, `l ≥ 2`. Exhaustive search, so keep to desk-scale inputs.
    pub fn girth(&self) -> Option<usize> {
        let inc = self.incidence();
        let mut best: Option<usize> = None;
        let mut used_edge = vec![false; self.edges.len()];
        let mut used_vertex = vec![false; self.n];
        for start in 0..self.n {
            used_vertex[start] = true;
            self.girth_dfs(
                start,
                start,
                0,
                &inc,
                &mut used_edge,
                &mut used_vertex,
                &mut best,
            );
            used_vertex[start] = false;
        }
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn girth_dfs(
        &self,
        start: Vertex,
        at: Vertex,
        len: usize,
        inc: &[Vec<usize>],
        used_edge: &mut [bool],
        used_vertex: &mut [bool],
        best: &mut Option<usize>,
    ) {
        if best.is_some_and(|b| len + 1 >= b) {
            return;
        }
        for &ei in &inc[at] {
            // Smallest vertex of the cycle is its start, which halves the
            // search and keeps it finite.
            if used_edge[ei] {
                continue;
            }
            used_edge[ei] = true;
            for &next in &self.edges[ei] {
                if next == at {
                    continue;
                }
                if next == start && len + 1 >= 2 {
                    *best = Some(best.map_or(len + 1, |b| b.min(len + 1)));
                } else if next > start && !used_vertex[next] {
                    used_vertex[next] = true;
                    self.girth_dfs(start, next, len + 1, inc, used_edge, used_vertex, best);
                    used_vertex[next] = false;
                }
            }
            used_edge[ei] = false;
        }
    }

    /// The unique cycle of a linear unicyclic hypergraph, laid out so that
    /// edge `i` joins `joints[i]` and `joints[(i+1) % len]`. The first joint
    /// is the smallest vertex lying on two cycle edges, and the first edge is
    /// the smaller-indexed cycle edge through it.
    pub fn cycle_layout(&self) -> Option<CycleLayout> {
        if self.topology() != Topology::LinearUnicyclic {
            return None;
        }
        // Strip pendant edges until only the cycle remains.
        let mut alive = vec![true; self.edges.len()];
        let mut deg = self.degrees();
        loop {
            let mut changed = false;
            for (i, e) in self.edges.iter().enumerate() {
                if alive[i] && e.iter().filter(|&&v| deg[v] >= 2).count() <= 1 {
                    alive[i] = false;
                    for &v in e {
                        deg[v] -= 1;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let cycle: Vec<usize> = (0..self.edges.len()).filter(|&i| alive[i]).collect();
        let on_two = |v: Vertex| cycle.iter().filter(|&&i| self.edges[i].contains(&v)).count() == 2;
        let first = (0..self.n).find(|&v| on_two(v))?;
        let mut joints = vec![first];
        let mut order = Vec::new();
        let mut at = first;
        let mut prev_edge: Option<usize> = None;
        while order.len() < cycle.len() {
            let ei = *cycle
                .iter()
                .find(|&&i| Some(i) != prev_edge && !order.contains(&i) && self.edges[i].contains(&at))?;
            order.push(ei);
            let next = *self.edges[ei].iter().find(|&&v| v != at && on_two(v))?;
            prev_edge = Some(ei);
            if order.len() < cycle.len() {
                joints.push(next);
            }
            at = next;
        }
        Some(CycleLayout {
            edges: order,
            joints,
        })
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::input("permutation length differs from vertex count"));
        }
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::input("not a permutation"));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Hypergraph::new(self.m, self.n, edges)
    }

    /// Sub-hypergraph spanned by the listed edges, renumbered densely in
    /// increasing order of the original vertex ids. Returns the new graph and
    /// the original id of each new vertex.
    pub fn edge_induced(&self, edge_ids: &[usize]) -> Result<(Hypergraph, Vec<Vertex>)> {
        if edge_ids.is_empty() {
            return Err(Error::input("empty edge subset"));
        }
        let mut verts = BTreeSet::new();
        for &i in edge_ids {
            let e = self
                .edges
                .get(i)
                .ok_or_else(|| Error::input(format!("edge index {i} out of range")))?;
            verts.extend(e.iter().copied());
        }
        let old: Vec<Vertex> = verts.into_iter().collect();
        let edges = edge_ids
            .iter()
            .map(|&i| {
                self.edges[i]
                    .iter()
                    .map(|v| old.binary_search(v).expect("vertex collected above"))
                    .collect()
            })
            .collect();
        Ok((Hypergraph::new(self.m, old.len(), edges)?, old))
    }

    /// Some perfect matching as a list of edge indices, if one exists.
    pub fn has_perfect_matching(&self) -> Option<Vec<usize>> {
        if !self.n.is_multiple_of(self.m) {
            return None;
        }
        let inc = self.incidence();
        let mut covered = vec![false; self.n];
        let mut chosen = Vec::new();
        let mut result = None;
        self.matching_search(&inc, &mut covered, &mut chosen, &mut |m| {
            let mut m = m.to_vec();
            m.sort_unstable();
            result = Some(m);
            true
        });
        result
    }

    /// Number of perfect matchings (exact search).
    pub fn count_perfect_matchings(&self) -> usize {
        if !self.n.is_multiple_of(self.m) {
            return 0;
        }
        let inc = self.incidence();
        let mut covered = vec![false; self.n];
        let mut chosen = Vec::new();
        let mut count = 0;
        self.matching_search(&inc, &mut covered, &mut chosen, &mut |_| {
            count += 1;
            false
        });
        count
    }

    /// Branches on the edges through the first uncovered vertex. `found`
    /// returns true to stop the search.
    fn matching_search(
        &self,
        inc: &[Vec<usize>],
        covered: &mut [bool],
        chosen: &mut Vec<usize>,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else {
            return found(chosen);
        };
        for &ei in &inc[v] {
            let e = &self.edges[ei];
            if e.iter().any(|&u| covered[u]) {
                continue;
            }
            for &u in e {
                covered[u] = true;
            }
            chosen.push(ei);
            let stop = self.matching_search(inc, covered, chosen, found);
            chosen.pop();
            for &u in e {
                covered[u] = false;
            }
            if stop {
                return true;
            }
        }
        false
    }
}

/// Cyclic layout of the cycle in a linear unicyclic hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLayout {
    /// Edge indices `e_1, …, e_n` in traversal order.
    pub edges: Vec<usize>,
    /// `joints[i]` lies on `edges[i-1]` and `edges[i]` (cyclically).
    pub joints: Vec<Vertex>,
}

/// A hypergraph with a distinguished vertex, the operand of coalescence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSite {
    host: Hypergraph,
    vertex: Vertex,
}

impl RootedSite {
    pub fn new(host: Hypergraph, vertex: Vertex) -> Result<Self> {
        host.check_vertex(vertex)?;
        Ok(RootedSite { host, vertex })
    }

    pub fn host(&self) -> &Hypergraph {
        &self.host
    }

    pub fn vertex(&self) -> Vertex {
        self.vertex
    }
}

/// Identify `a.vertex` with `b.vertex`.
///
/// Numbering: vertices of `a` keep their ids, the merged vertex keeps
/// `a.vertex`, and the remaining vertices of `b` follow as `n_a, n_a+1, …`
/// in increasing order of their ids in `b`.
pub fn coalesce(a: &RootedSite, b: &RootedSite) -> Result<Hypergraph> {
    let (ha, hb) = (&a.host, &b.host);
    if ha.m != hb.m {
        return Err(Error::input(format!(
            "cannot coalesce a {}-uniform and a {}-uniform hypergraph",
            ha.m, hb.m
        )));
    }
    if !ha.is_connected() || !hb.is_connected() {
        return Err(Error::input("coalescence operands must be connected"));
    }
    let mut map = vec![0; hb.n];
    let mut next = ha.n;
    for (v, slot) in map.iter_mut().enumerate() {
        if v == b.vertex {
            *slot = a.vertex;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut edges = ha.edges.clone();
    edges.extend(hb.edges.iter().map(|e| e.iter().map(|&v| map[v]).collect()));
    Hypergraph::new(ha.m, next, edges)
}

/// Attach several rooted hypergraphs to `host`, the `i`-th at `at[i].0`.
/// Host ids are preserved; each attachment is appended as in [`coalesce`].
pub fn attach(host: &Hypergraph, at: &[(Vertex, RootedSite)]) -> Result<Hypergraph> {
    let mut h = host.clone();
    for (v, site) in at {
        h = coalesce(&RootedSite::new(h, *v)?, site)?;
    }
    Ok(h)
}

/// The `m`-th power of a simple graph on `n` vertices: every edge `{a, b}`
/// gains `m − 2` fresh vertices. Original vertices keep ids `0..n`; inserted
/// vertices follow, grouped by edge in the order given. With `m = 2` the
/// graph itself is returned.
pub fn power_of_graph(n: usize, graph_edges: &[[Vertex; 2]], m: usize) -> Result<Hypergraph> {
    if m < 2 {
        return Err(Error::input("uniformity must be at least 2"));
    }
    let mut next = n;
    let mut edges = Vec::with_capacity(graph_edges.len());
    for &[a, b] in graph_edges {
        let mut e = vec![a, b];
        e.extend(next..next + (m - 2));
        next += m - 2;
        edges.push(e);
    }
    Hypergraph::new(m, next, edges)
}
