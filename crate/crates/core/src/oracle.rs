//! Brute-force traces from rooted edge multisets and arborescence counts,
//! plus the adjacency-matrix oracle for graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerate::SubhypergraphClass;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::rational::{binomial, factorial, ExactRational};
use crate::trace::WeightedSubhypergraph;

/// Default cap on the number of rooted edge multisets the oracle will visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Resource limits for the exponential oracle.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_multisets: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_multisets: DEFAULT_BUDGET,
            deadline: None,
        }
    }
}

/// Multiset of rooted edges `(edge index, root)` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedEdgeMultiset<'a> {
    host: &'a Hypergraph,
    counts: BTreeMap<(usize, Vertex), u64>,
}

impl<'a> RootedEdgeMultiset<'a> {
    pub fn new(host: &'a Hypergraph, counts: BTreeMap<(usize, Vertex), u64>) -> Result<Self> {
        for &(e, v) in counts.keys() {
            let edge = host
                .edges()
                .get(e)
                .ok_or_else(|| Error::input(format!("edge index {e} out of range")))?;
            if !edge.contains(&v) {
                return Err(Error::input(format!("root {v} is not in edge {e}")));
            }
        }
        let counts = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        Ok(RootedEdgeMultiset { host, counts })
    }

    pub fn host(&self) -> &'a Hypergraph {
        self.host
    }

    pub fn counts(&self) -> &BTreeMap<(usize, Vertex), u64> {
        &self.counts
    }

    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `r_v`: how many rooted edges have root `v`.
    pub fn root_count(&self, v: Vertex) -> u64 {
        self.counts
            .iter()
            .filter(|((_, r), _)| *r == v)
            .map(|(_, c)| c)
            .sum()
    }

    /// Orderings with non-decreasing roots: `Π_v r_v! / Π c(e,v)!`.
    pub fn tuple_count(&self) -> BigUint {
        let mut r: BTreeMap<Vertex, u64> = BTreeMap::new();
        let mut den = BigUint::one();
        for (&(_, v), &c) in &self.counts {
            *r.entry(v).or_default() += c;
            den *= factorial(c as usize);
        }
        let num = r
            .values()
            .fold(BigUint::one(), |acc, &x| acc * factorial(x as usize));
        num / den
    }

    /// Root counts per (edge, vertex) for every vertex of every edge used.
    pub fn edge_multiplicities(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for (&(e, _), &c) in &self.counts {
            *out.entry(e).or_default() += c;
        }
        out
    }
}

/// Directed multigraph on host vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiDigraph {
    vertices: BTreeSet<Vertex>,
    arcs: BTreeMap<(Vertex, Vertex), u64>,
}

impl MultiDigraph {
    pub fn new(vertices: BTreeSet<Vertex>, arcs: BTreeMap<(Vertex, Vertex), u64>) -> Result<Self> {
        for &(u, v) in arcs.keys() {
            if u == v {
                return Err(Error::input("self-loops are not allowed"));
            }
            if !vertices.contains(&u) || !vertices.contains(&v) {
                return Err(Error::input("arc endpoint outside the vertex set"));
            }
        }
        let arcs = arcs.into_iter().filter(|&(_, c)| c > 0).collect();
        Ok(MultiDigraph { vertices, arcs })
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn arcs(&self) -> &BTreeMap<(Vertex, Vertex), u64> {
        &self.arcs
    }

    pub fn out_degree(&self, v: Vertex) -> u64 {
        self.arcs.iter().filter(|((u, _), _)| *u == v).map(|(_, c)| c).sum()
    }

    pub fn in_degree(&self, v: Vertex) -> u64 {
        self.arcs.iter().filter(|((_, w), _)| *w == v).map(|(_, c)| c).sum()
    }
}

/// `R(F)`: each rooted edge `(e, v)` with multiplicity `c` contributes `c`
/// arcs from `v` to every other vertex of `e`.
pub fn build_r(f: &RootedEdgeMultiset<'_>) -> MultiDigraph {
    let mut vertices = BTreeSet::new();
    let mut arcs = BTreeMap::new();
    for (&(e, v), &c) in &f.counts {
        for &u in f.host.edge(e) {
            vertices.insert(u);
            if u != v {
                *arcs.entry((v, u)).or_insert(0) += c;
            }
        }
    }
    MultiDigraph { vertices, arcs }
}

/// Balanced at every vertex, and all arcs in one weakly connected component
/// that covers the vertex set.
pub fn is_eulerian(g: &MultiDigraph) -> bool {
    if g.arcs.is_empty() {
        return false;
    }
    let mut bal: BTreeMap<Vertex, i64> = BTreeMap::new();
    for (&(u, v), &c) in &g.arcs {
        *bal.entry(u).or_default() += c as i64;
        *bal.entry(v).or_default() -= c as i64;
    }
    if bal.values().any(|&b| b != 0) {
        return false;
    }
    let verts: Vec<Vertex> = g.vertices.iter().copied().collect();
    let idx = |v: Vertex| verts.binary_search(&v).expect("arc endpoints are vertices");
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in g.arcs.keys() {
        let (a, b) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..verts.len()).all(|i| find(&mut parent, i) == root)
}

/// Number of spanning arborescences oriented towards `root`: the principal
/// minor of `D_out − A` with `root` removed.
pub fn arborescence_count(g: &MultiDigraph, root: Vertex) -> Result<BigUint> {
    if !g.vertices.contains(&root) {
        return Err(Error::input(format!("root {root} is not a vertex")));
    }
    let others: Vec<Vertex> = g.vertices.iter().copied().filter(|&v| v != root).collect();
    let k = others.len();
    let pos = |v: Vertex| others.binary_search(&v).ok();
    let mut lap = vec![vec![BigInt::zero(); k]; k];
    for (&(u, v), &c) in &g.arcs {
        if let Some(i) = pos(u) {
            lap[i][i] += c;
            if let Some(j) = pos(v) {
                lap[i][j] -= c;
            }
        }
    }
    let det = bareiss_det(lap);
    det.to_biguint()
        .ok_or_else(|| Error::input("negative Laplacian minor"))
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// `τ(F) / Π_v d⁺_v` weighted by the number of tuples, or `None` when `R(F)`
/// is not Eulerian.
fn multiset_term(f: &RootedEdgeMultiset<'_>) -> Option<ExactRational> {
    let g = build_r(f);
    if !is_eulerian(&g) {
        return None;
    }
    let root = *g.vertices.iter().next().expect("nonempty");
    let tau = arborescence_count(&g, root).expect("root is a vertex");
    let m1 = (f.host.m() - 1) as u64;
    let mut den = BigUint::one();
    for &v in &g.vertices {
        den *= BigUint::from(m1 * f.root_count(v));
    }
    Some(ExactRational::from(BigInt::from(f.tuple_count() * tau)) / ExactRational::from(den))
}

/// Number of size-`d` multisets over the rooted edges of `h`.
pub fn multiset_space(h: &Hypergraph, d: usize) -> BigUint {
    let sites = h.edge_count() * h.m();
    if sites == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(sites + d - 1, d)
}

/// `Tr_d(h)` by enumerating rooted edge multisets of size `d`.
pub fn trace_bruteforce(h: &Hypergraph, d: usize, budget: &Budget) -> Result<ExactRational> {
    if d == 0 {
        return Ok(ExactRational::from(crate::trace::eigenvalue_count(h)));
    }
    let space = multiset_space(h, d);
    if space > BigUint::from(budget.max_multisets) {
        return Err(Error::Resource {
            what: format!("rooted edge multisets of size {d}"),
            needed: space.to_string(),
            budget: budget.max_multisets.to_string(),
        });
    }
    let sites: Vec<(usize, Vertex)> = h
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.iter().map(move |&v| (i, v)))
        .collect();
    let timed_out = AtomicBool::new(false);
    // Partition by the smallest site used.
    let parts: Vec<ExactRational> = (0..sites.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = ExactRational::zero();
            let mut counts = vec![0u64; sites.len()];
            counts[first] = 1;
            let mut visited = 0u64;
            enumerate_from(
                h,
                &sites,
                &mut counts,
                first,
                d - 1,
                &mut acc,
                &mut visited,
                budget,
                &timed_out,
            );
            acc
        })
        .collect();
    if timed_out.load(Ordering::Relaxed) {
        return Err(Error::Resource {
            what: "oracle wall-clock time".into(),
            needed: "more".into(),
            budget: "deadline".into(),
        });
    }
    let sum: ExactRational = parts.into_iter().sum();
    let prefactor = ExactRational::from_integer(BigInt::from(d) * BigInt::from(h.m() - 1).pow(h.n() as u32));
    Ok(prefactor * sum)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_from(
    h: &Hypergraph,
    sites: &[(usize, Vertex)],
    counts: &mut [u64],
    at: usize,
    remaining: usize,
    acc: &mut ExactRational,
    visited: &mut u64,
    budget: &Budget,
    timed_out: &AtomicBool,
) {
    if remaining == 0 {
        *visited += 1;
        if (*visited).is_multiple_of(4096) {
            if let Some(deadline) = budget.deadline {
                if Instant::now() > deadline {
                    timed_out.store(true, Ordering::Relaxed);
                }
            }
        }
        if quick_balanced(h, sites, counts) {
            let map = sites
                .iter()
                .zip(counts.iter())
                .filter(|(_, &c)| c > 0)
                .map(|(&s, &c)| (s, c))
                .collect();
            let f = RootedEdgeMultiset { host: h, counts: map };
            if let Some(t) = multiset_term(&f) {
                *acc += t;
            }
        }
        return;
    }
    if timed_out.load(Ordering::Relaxed) {
        return;
    }
    for next in at..sites.len() {
        counts[next] += 1;
        enumerate_from(h, sites, counts, next, remaining - 1, acc, visited, budget, timed_out);
        counts[next] -= 1;
    }
}

/// In-degree equals out-degree at every vertex, using `out = (m−1) r_v` and
/// `in = Σ_{e∋v} (mult_e − c(e,v))`, i.e. `m·r_v = Σ_{e∋v} mult_e`.
fn quick_balanced(h: &Hypergraph, sites: &[(usize, Vertex)], counts: &[u64]) -> bool {
    let mut mult = vec![0u64; h.edge_count()];
    let mut r = vec![0u64; h.n()];
    for (&(e, v), &c) in sites.iter().zip(counts) {
        mult[e] += c;
        r[v] += c;
    }
    let mut deg = vec![0u64; h.n()];
    for (e, &mu) in mult.iter().enumerate() {
        for &v in h.edge(e) {
            deg[v] += mu;
        }
    }
    let m = h.m() as u64;
    (0..h.n()).all(|v| m * r[v] == deg[v])
}

/// Euler rootings (as root-count assignments) of the multi-hypergraph that
/// repeats each shape edge `m·ω(e)` times.
pub fn euler_rootings<'a>(ws: &WeightedSubhypergraph<'a>) -> Vec<RootedEdgeMultiset<'a>> {
    euler_rootings_with_multiplicities(ws.shape(), &ws.multiplicities())
        .expect("weighted shapes have valid multiplicities")
}

/// Euler rootings of the multi-hypergraph repeating shape edge `i`
/// `mult[i]` times; multiplicities need not be multiples of `m`.
pub fn euler_rootings_with_multiplicities<'a>(
    shape: &SubhypergraphClass<'a>,
    mult: &[u64],
) -> Result<Vec<RootedEdgeMultiset<'a>>> {
    if mult.len() != shape.edge_count() || mult.contains(&0) {
        return Err(Error::input("one positive multiplicity per shape edge"));
    }
    let h = shape.parent();
    let m = h.m() as u64;
    let mut deg = vec![0u64; h.n()];
    // Last shape edge (by position) touching each vertex: once it is fixed,
    // the vertex's balance can be checked.
    let mut last = vec![usize::MAX; h.n()];
    for (pos, (&e, &mu)) in shape.edges().iter().zip(mult).enumerate() {
        for &v in h.edge(e) {
            deg[v] += mu;
            last[v] = pos;
        }
    }
    if shape.vertices().iter().any(|&v| !deg[v].is_multiple_of(m)) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut r = vec![0u64; h.n()];
    let mut choice: Vec<Vec<u64>> = Vec::with_capacity(mult.len());
    rootings_rec(h, shape, mult, &deg, &last, 0, &mut r, &mut choice, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rootings_rec<'a>(
    h: &'a Hypergraph,
    shape: &SubhypergraphClass<'a>,
    mult: &[u64],
    deg: &[u64],
    last: &[usize],
    pos: usize,
    r: &mut [u64],
    choice: &mut Vec<Vec<u64>>,
    out: &mut Vec<RootedEdgeMultiset<'a>>,
) {
    let m = h.m() as u64;
    if pos == mult.len() {
        let mut counts = BTreeMap::new();
        for (&e, cs) in shape.edges().iter().zip(choice.iter()) {
            for (&v, &c) in h.edge(e).iter().zip(cs) {
                if c > 0 {
                    counts.insert((e, v), c);
                }
            }
        }
        let f = RootedEdgeMultiset { host: h, counts };
        if is_eulerian(&build_r(&f)) {
            out.push(f);
        }
        return;
    }
    let e = shape.edges()[pos];
    let edge = h.edge(e);
    let mut parts = vec![0u64; edge.len()];
    for_each_weak_composition(mult[pos], &mut parts, 0, &mut |cs| {
        let mut ok = true;
        for (&v, &c) in edge.iter().zip(cs) {
            r[v] += c;
            if r[v] * m > deg[v] || (last[v] == pos && r[v] * m != deg[v]) {
                ok = false;
            }
        }
        if ok {
            choice.push(cs.to_vec());
            rootings_rec(h, shape, mult, deg, last, pos + 1, r, choice, out);
            choice.pop();
        }
        for (&v, &c) in edge.iter().zip(cs) {
            r[v] -= c;
        }
    });
}

fn for_each_weak_composition(total: u64, parts: &mut [u64], i: usize, f: &mut dyn FnMut(&[u64])) {
    if i + 1 == parts.len() {
        parts[i] = total;
        f(parts);
        return;
    }
    for c in 0..=total {
        parts[i] = c;
        for_each_weak_composition(total - c, parts, i + 1, f);
    }
}

/// `C_H` summed directly over Euler rootings.
pub fn c_h_oracle(ws: &WeightedSubhypergraph<'_>) -> ExactRational {
    euler_rootings(ws)
        .iter()
        .filter_map(multiset_term)
        .sum()
}

/// `C_H` for arbitrary positive edge multiplicities on a shape.
pub fn c_h_oracle_with_multiplicities(shape: &SubhypergraphClass<'_>, mult: &[u64]) -> Result<ExactRational> {
    Ok(euler_rootings_with_multiplicities(shape, mult)?
        .iter()
        .filter_map(multiset_term)
        .sum())
}

/// Number of spanning arborescences of `R(F)`, rooted at its smallest vertex.
pub fn rooting_tau(f: &RootedEdgeMultiset<'_>) -> BigUint {
    let g = build_r(f);
    let root = *g.vertices.iter().next().expect("nonempty multiset");
    arborescence_count(&g, root).expect("root is a vertex")
}

/// Trace of the `d`-th power of the adjacency matrix of a graph.
pub fn matrix_power_trace(h: &Hypergraph, d: usize) -> Result<BigInt> {
    if h.m() != 2 {
        return Err(Error::input("the matrix oracle needs a graph (m = 2)"));
    }
    let n = h.n();
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for e in h.edges() {
        a[e[0]][e[1]] = BigInt::one();
        a[e[1]][e[0]] = BigInt::one();
    }
    let mut p: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for _ in 0..d {
        let mut q = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[k].iter().all(Zero::is_zero) || p[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        q[i][j] += &p[i][k];
                    }
                }
            }
        }
        p = q;
    }
    Ok((0..n).map(|i| p[i][i].clone()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hyperpath, loose_cycle};

    #[test]
    fn single_rooted_star() {
        let e = hyperpath(3, 1).unwrap();
        let f = RootedEdgeMultiset::new(&e, BTreeMap::from([((0, 0), 1)])).unwrap();
        let g = build_r(&f);
        assert_eq!(g.arcs(), &BTreeMap::from([((0, 1), 1), ((0, 2), 1)]));
        assert!(!is_eulerian(&g));
        let all = RootedEdgeMultiset::new(&e, BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((0, 2), 1)])).unwrap();
        let g = build_r(&all);
        assert!(is_eulerian(&g));
        for v in 0..3 {
            assert_eq!(g.in_degree(v), 2);
            assert_eq!(g.out_degree(v), 2);
        }
        assert!(RootedEdgeMultiset::new(&e, BTreeMap::from([((0, 5), 1)])).is_err());
    }

    #[test]
    fn arborescences() {
        let verts: BTreeSet<usize> = (0..3).collect();
        let cyc = MultiDigraph::new(verts.clone(), BTreeMap::from([((0, 1), 1), ((1, 2), 1), ((2, 0), 1)])).unwrap();
        assert_eq!(arborescence_count(&cyc, 0).unwrap(), BigUint::from(1u32));
        let dbl = MultiDigraph::new(verts, BTreeMap::from([((0, 1), 2), ((1, 2), 2), ((2, 0), 2)])).unwrap();
        for root in 0..3 {
            assert_eq!(arborescence_count(&dbl, root).unwrap(), BigUint::from(4u32));
        }
        let single = MultiDigraph::new(BTreeSet::from([7]), BTreeMap::new()).unwrap();
        assert_eq!(arborescence_count(&single, 7).unwrap(), BigUint::from(1u32));
        assert!(arborescence_count(&single, 0).is_err());
    }

    #[test]
    fn disjoint_components_are_not_eulerian() {
        let verts: BTreeSet<usize> = (0..4).collect();
        let g = MultiDigraph::new(verts, BTreeMap::from([((0, 1), 1), ((1, 0), 1), ((2, 3), 1), ((3, 2), 1)])).unwrap();
        assert!(!is_eulerian(&g));
    }

    #[test]
    fn small_bruteforce_traces() {
        let b = Budget::default();
        assert_eq!(trace_bruteforce(&hyperpath(3, 1).unwrap(), 3, &b).unwrap(), ExactRational::from_integer(9));
        assert!(trace_bruteforce(&hyperpath(3, 2).unwrap(), 1, &b).unwrap().is_zero());
        let k2 = hyperpath(2, 1).unwrap();
        assert_eq!(trace_bruteforce(&k2, 4, &b).unwrap(), ExactRational::from_integer(2));
        assert_eq!(trace_bruteforce(&k2, 2, &b).unwrap(), ExactRational::from_integer(2));
    }

    #[test]
    fn budget_is_enforced() {
        let b = Budget {
            max_multisets: 10,
            deadline: None,
        };
        let err = trace_bruteforce(&loose_cycle(3, 3).unwrap(), 6, &b).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn matrix_traces() {
        let k2 = hyperpath(2, 1).unwrap();
        assert_eq!(matrix_power_trace(&k2, 2).unwrap(), BigInt::from(2));
        let c3 = loose_cycle(2, 3).unwrap();
        assert_eq!(matrix_power_trace(&c3, 6).unwrap(), BigInt::from(66));
        assert_eq!(matrix_power_trace(&hyperpath(2, 2).unwrap(), 2).unwrap(), BigInt::from(4));
        assert!(matrix_power_trace(&hyperpath(3, 1).unwrap(), 2).is_err());
    }
}
