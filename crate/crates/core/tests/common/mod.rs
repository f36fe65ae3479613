#![allow(dead_code)]

use std::collections::BTreeSet;

use hypertrace::enumerate::{enumerate_hypertrees, enumerate_unicyclic};
use hypertrace::families::{hyperpath, loose_cycle};
use hypertrace::hypergraph::{coalesce, RootedSite};
use hypertrace::Hypergraph;
use nalgebra::DMatrix;

/// Trees and unicyclic graphs with at most `max_n` vertices.
pub fn small_graphs(max_n: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for k in 0..max_n {
        out.extend(enumerate_hypertrees(2, k));
    }
    for z in 3..=max_n {
        for g in 3..=z {
            out.extend(enumerate_unicyclic(2, z, g).unwrap());
        }
    }
    out
}

/// 3-uniform hypertrees with at most three edges, `C_3^3`, and `C_3^3`
/// with one pendant edge.
pub fn three_uniform_corpus() -> (Vec<Hypergraph>, Vec<Hypergraph>) {
    let trees: Vec<Hypergraph> = (1..=3).flat_map(|k| enumerate_hypertrees(3, k)).collect();
    let c = loose_cycle(3, 3).unwrap();
    let pendant = coalesce(
        &RootedSite::new(c.clone(), 0).unwrap(),
        &RootedSite::new(hyperpath(3, 1).unwrap(), 0).unwrap(),
    )
    .unwrap();
    (trees, vec![c, pendant])
}

pub fn adjacency(h: &Hypergraph) -> DMatrix<f64> {
    assert_eq!(h.m(), 2);
    let mut a = DMatrix::zeros(h.n(), h.n());
    for e in h.edges() {
        a[(e[0], e[1])] = 1.0;
        a[(e[1], e[0])] = 1.0;
    }
    a
}

/// `Σ e^λ` over the adjacency eigenvalues of a graph.
pub fn estrada_by_eigenvalues(h: &Hypergraph) -> f64 {
    adjacency(h).symmetric_eigen().eigenvalues.iter().map(|l| l.exp()).sum()
}

/// Isomorphism by backtracking over vertex maps, checking each edge as soon
/// as all its vertices are mapped.
pub fn isomorphic(a: &Hypergraph, b: &Hypergraph) -> bool {
    if a.m() != b.m() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let target: BTreeSet<Vec<usize>> = b.edges().iter().cloned().collect();
    // Edges of `a` become checkable once their largest vertex is mapped.
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); a.n()];
    for (i, e) in a.edges().iter().enumerate() {
        ready[*e.iter().max().unwrap()].push(i);
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        v: usize,
        a: &Hypergraph,
        da: &[usize],
        db: &[usize],
        ready: &[Vec<usize>],
        target: &BTreeSet<Vec<usize>>,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == a.n() {
            return true;
        }
        for w in 0..used.len() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            let ok = ready[v].iter().all(|&ei| {
                let mut img: Vec<usize> = a.edge(ei).iter().map(|&x| map[x]).collect();
                img.sort_unstable();
                target.contains(&img)
            });
            if ok && go(v + 1, a, da, db, ready, target, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(0, a, &da, &db, &ready, &target, &mut map, &mut used)
}
