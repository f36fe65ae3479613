//! Connected edge subsets, weight compositions and small family generators.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::families::loose_cycle;
use crate::hypergraph::{coalesce, Hypergraph, RootedSite, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    Tree,
    ContainsCycle,
}

/// A connected edge subset of a parent hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubhypergraphClass<'a> {
    parent: &'a Hypergraph,
    edges: Vec<usize>,
    kind: ShapeKind,
}

impl<'a> SubhypergraphClass<'a> {
    /// Checks connectivity and classifies. `edges` may be in any order.
    pub fn new(parent: &'a Hypergraph, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let (sub, _) = parent.edge_induced(&edges)?;
        if !sub.is_connected() {
            return Err(Error::input("edge subset is not connected"));
        }
        let kind = if sub.cyclomatic_number() == 0 {
            ShapeKind::Tree
        } else {
            ShapeKind::ContainsCycle
        };
        Ok(SubhypergraphClass {
            parent,
            edges,
            kind,
        })
    }

    /// The whole hypergraph as one shape.
    pub fn whole(parent: &'a Hypergraph) -> Result<Self> {
        Self::new(parent, (0..parent.edge_count()).collect())
    }

    pub fn parent(&self) -> &'a Hypergraph {
        self.parent
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted vertex set.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .edges
            .iter()
            .flat_map(|&i| self.parent.edge(i).iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        self.parent
            .edge_induced(&self.edges)
            .expect("shape edges are valid")
            .0
    }
}

/// Every connected edge subset with `1..=max_edges` edges, each exactly once,
/// sorted lexicographically by edge-index list.
pub fn connected_subhypergraphs(h: &Hypergraph, max_edges: usize) -> Vec<SubhypergraphClass<'_>> {
    let k = h.edge_count();
    let inc = h.incidence();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let mut nb: Vec<usize> = h
                .edge(i)
                .iter()
                .flat_map(|&v| inc[v].iter().copied())
                .filter(|&j| j != i)
                .collect();
            nb.sort_unstable();
            nb.dedup();
            nb
        })
        .collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    if max_edges > 0 {
        for s in 0..k {
            let ext: Vec<usize> = adj[s].iter().copied().filter(|&j| j > s).collect();
            let mut near = vec![0u32; k];
            near[s] += 1;
            for &j in &adj[s] {
                near[j] += 1;
            }
            esu(s, &mut vec![s], ext, &adj, &mut near, max_edges, &mut found);
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|edges| SubhypergraphClass::new(h, edges).expect("grown subsets are connected"))
        .collect()
}

/// Extension step of the ESU scheme: `near[j] > 0` marks edges in or
/// adjacent to the current subset, so only exclusive neighbours of the new
/// edge are added and every subset is produced once.
#[allow(clippy::too_many_arguments)]
fn esu(
    s: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    adj: &[Vec<usize>],
    near: &mut [u32],
    max_edges: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let mut sorted = sub.clone();
    sorted.sort_unstable();
    out.push(sorted);
    if sub.len() == max_edges {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next_ext = ext.clone();
        for &u in &adj[w] {
            if u > s && near[u] == 0 {
                next_ext.push(u);
            }
        }
        near[w] += 1;
        for &u in &adj[w] {
            near[u] += 1;
        }
        sub.push(w);
        esu(s, sub, next_ext, adj, near, max_edges, out);
        sub.pop();
        for &u in &adj[w] {
            near[u] -= 1;
        }
        near[w] -= 1;
    }
}

/// Connected subsets containing every `require` edge and no `forbid` edge.
pub fn filtered_subhypergraphs<'a>(
    h: &'a Hypergraph,
    require: &[usize],
    forbid: &[usize],
    max_edges: usize,
) -> Result<Vec<SubhypergraphClass<'a>>> {
    if let Some(&bad) = require.iter().chain(forbid).find(|&&i| i >= h.edge_count()) {
        return Err(Error::input(format!("edge index {bad} out of range")));
    }
    Ok(connected_subhypergraphs(h, max_edges)
        .into_iter()
        .filter(|s| {
            require.iter().all(|r| s.edges().contains(r))
                && !forbid.iter().any(|f| s.edges().contains(f))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightComposition {
    pub weights: Vec<u64>,
    pub total: u64,
}

/// All compositions of `total` into `k` positive parts, in lexicographic
/// order.
pub fn weight_compositions(k: usize, total: u64) -> Compositions {
    let state = if k == 0 || (total as usize) < k {
        None
    } else {
        let mut w = vec![1u64; k];
        w[k - 1] = total - (k as u64 - 1);
        Some(w)
    };
    Compositions { state, total }
}

pub struct Compositions {
    state: Option<Vec<u64>>,
    total: u64,
}

impl Iterator for Compositions {
    type Item = WeightComposition;

    fn next(&mut self) -> Option<WeightComposition> {
        let current = self.state.take()?;
        // Successor: bump the rightmost position (before the last) that can
        // grow, reset everything after it to 1, and give the remainder to the
        // last part.
        let k = current.len();
        if k > 1 {
            let mut next = current.clone();
            if let Some(i) = (0..k - 1).rev().find(|&i| next[i + 1..].iter().any(|&x| x > 1)) {
                next[i] += 1;
                for x in next[i + 1..k].iter_mut() {
                    *x = 1;
                }
                let used: u64 = next[..k - 1].iter().sum();
                next[k - 1] = self.total - used;
                self.state = Some(next);
            }
        }
        Some(WeightComposition {
            weights: current,
            total: self.total,
        })
    }
}

fn dedup_insert(seen: &mut BTreeMap<Vec<u8>, Hypergraph>, h: Hypergraph) {
    seen.entry(canonical_form(&h)).or_insert(h);
}

/// Grow every class member by one pendant edge at each vertex and dedup.
fn grow_by_pendant(level: &[Hypergraph], m: usize) -> Vec<Hypergraph> {
    let edge = RootedSite::new(Hypergraph::new(m, m, vec![(0..m).collect()]).expect("edge"), 0)
        .expect("vertex 0");
    let mut seen = BTreeMap::new();
    for h in level {
        for v in 0..h.n() {
            let site = RootedSite::new(h.clone(), v).expect("vertex in range");
            dedup_insert(&mut seen, coalesce(&site, &edge).expect("pendant attachment is simple"));
        }
    }
    seen.into_values().collect()
}

/// Non-isomorphic `m`-uniform hypertrees with `k_edges` edges, ordered by
/// canonical form.
pub fn enumerate_hypertrees(m: usize, k_edges: usize) -> Vec<Hypergraph> {
    let mut level = vec![Hypergraph::trivial(m)];
    for _ in 0..k_edges {
        level = grow_by_pendant(&level, m);
    }
    level
}

/// Hypertrees on `m·k` vertices with a perfect matching. Empty unless
/// `(m−1) | (k−1)`.
pub fn enumerate_pm_hypertrees(m: usize, k_matching: usize) -> Vec<Hypergraph> {
    if k_matching == 0 || !(k_matching - 1).is_multiple_of(m - 1) {
        return Vec::new();
    }
    let edges = k_matching + (k_matching - 1) / (m - 1);
    enumerate_hypertrees(m, edges)
        .into_iter()
        .filter(|t| t.has_perfect_matching().is_some())
        .collect()
}

/// Non-isomorphic linear unicyclic hypergraphs with `z_edges` edges and
/// girth `g_girth`, ordered by canonical form.
pub fn enumerate_unicyclic(m: usize, z_edges: usize, g_girth: usize) -> Result<Vec<Hypergraph>> {
    if g_girth < 3 {
        return Err(Error::input("girth of a linear unicyclic hypergraph is at least 3"));
    }
    if g_girth > z_edges {
        return Ok(Vec::new());
    }
    let mut level = vec![loose_cycle(m, g_girth)?];
    for _ in g_girth..z_edges {
        level = grow_by_pendant(&level, m);
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hyperpath, s_m_n_t};

    #[test]
    fn subsets_of_small_shapes() {
        let p2 = hyperpath(3, 2).unwrap();
        let subs = connected_subhypergraphs(&p2, 2);
        let lists: Vec<&[usize]> = subs.iter().map(|s| s.edges()).collect();
        assert_eq!(lists, vec![&[0][..], &[0, 1][..], &[1][..]]);
        let c3 = loose_cycle(3, 3).unwrap();
        let subs = connected_subhypergraphs(&c3, 3);
        assert_eq!(subs.len(), 7);
        assert_eq!(subs.iter().filter(|s| s.kind() == ShapeKind::ContainsCycle).count(), 1);
        assert_eq!(connected_subhypergraphs(&c3, 1).len(), 3);
    }

    #[test]
    fn filters() {
        let p2 = hyperpath(3, 2).unwrap();
        let f = filtered_subhypergraphs(&p2, &[0], &[1], 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].edges(), &[0]);
        assert!(filtered_subhypergraphs(&p2, &[0], &[0], 2).unwrap().is_empty());
        assert!(filtered_subhypergraphs(&p2, &[5], &[], 2).is_err());
        let p3 = hyperpath(3, 3).unwrap();
        assert_eq!(filtered_subhypergraphs(&p3, &[1], &[], 3).unwrap().len(), 4);
    }

    #[test]
    fn compositions_in_order() {
        let all: Vec<Vec<u64>> = weight_compositions(2, 3).map(|c| c.weights).collect();
        assert_eq!(all, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(weight_compositions(1, 3).map(|c| c.weights).collect::<Vec<_>>(), vec![vec![3]]);
        assert_eq!(weight_compositions(3, 5).count(), 6);
        assert_eq!(weight_compositions(4, 3).count(), 0);
        let four: Vec<Vec<u64>> = weight_compositions(3, 5).map(|c| c.weights).collect();
        let mut sorted = four.clone();
        sorted.sort();
        assert_eq!(four, sorted);
    }

    #[test]
    fn small_family_counts() {
        assert_eq!(enumerate_hypertrees(3, 1).len(), 1);
        assert_eq!(enumerate_hypertrees(3, 2).len(), 1);
        assert_eq!(enumerate_hypertrees(2, 3).len(), 2);
        assert_eq!(enumerate_unicyclic(3, 3, 3).unwrap().len(), 1);
        let u = enumerate_unicyclic(3, 4, 3).unwrap();
        let target = canonical_form(&s_m_n_t(3, 3, 1).unwrap());
        assert!(u.iter().any(|h| canonical_form(h) == target));
        assert_eq!(enumerate_pm_hypertrees(3, 1).len(), 1);
        assert!(enumerate_pm_hypertrees(3, 2).is_empty());
        assert_eq!(enumerate_pm_hypertrees(2, 2).len(), 1);
    }
}
