//! Closed-form traces of hypertrees and linear unicyclic hypergraphs.
//!
//! `Tr_d(h) = d (m−1)^n Σ_G tr_d(G)` over connected edge subsets `G`, and
//! `tr_d(G)` sums a coefficient `C` over edge weightings `ω` with
//! `Σ ω = d/m` (each edge of `G` repeated `m·ω(e)` times).

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{connected_subhypergraphs, weight_compositions, ShapeKind, SubhypergraphClass};
use crate::error::{Error, Result};
use crate::hypergraph::{CycleLayout, Hypergraph, Topology, Vertex};
use crate::rational::{factorial, ExactRational};

/// A connected shape with a positive weight per edge, aligned with
/// `shape.edges()`.
#[derive(Clone, Debug)]
pub struct WeightedSubhypergraph<'a> {
    shape: SubhypergraphClass<'a>,
    omega: Vec<u64>,
}

impl<'a> WeightedSubhypergraph<'a> {
    pub fn new(shape: SubhypergraphClass<'a>, omega: Vec<u64>) -> Result<Self> {
        if omega.len() != shape.edge_count() {
            return Err(Error::input(format!(
                "{} weights for {} edges",
                omega.len(),
                shape.edge_count()
            )));
        }
        if omega.contains(&0) {
            return Err(Error::input("weights must be positive"));
        }
        Ok(WeightedSubhypergraph { shape, omega })
    }

    pub fn shape(&self) -> &SubhypergraphClass<'a> {
        &self.shape
    }

    pub fn omega(&self) -> &[u64] {
        &self.omega
    }

    /// Weight of parent edge `edge`, if it belongs to the shape.
    pub fn weight_of(&self, edge: usize) -> Option<u64> {
        self.shape
            .edges()
            .iter()
            .position(|&e| e == edge)
            .map(|i| self.omega[i])
    }

    /// Multiplicity `m·ω(e)` per shape edge.
    pub fn multiplicities(&self) -> Vec<u64> {
        let m = self.shape.parent().m() as u64;
        self.omega.iter().map(|w| m * w).collect()
    }

    fn degree_table(&self) -> Vec<u64> {
        let parent = self.shape.parent();
        let mut deg = vec![0u64; parent.n()];
        for (&ei, &w) in self.shape.edges().iter().zip(&self.omega) {
            for &v in parent.edge(ei) {
                deg[v] += w;
            }
        }
        deg
    }
}

/// `Σ_{e ∋ v} ω(e)` over shape edges.
pub fn weighted_degree(ws: &WeightedSubhypergraph<'_>, v: Vertex) -> Result<u64> {
    if ws.shape.vertices().binary_search(&v).is_err() {
        return Err(Error::input(format!("vertex {v} is not in the sub-hypergraph")));
    }
    Ok(ws.degree_table()[v])
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn fact(n: u64) -> ExactRational {
    ExactRational::from(factorial(n as usize))
}

/// Shared body of the closed forms: `(m−1)^{−|V|} m^{(m−2)|E|+shift}
/// Π_{v∉excluded} (d_v−1)! Π_e ω^{m−1}/(ω!)^m`.
fn common_factor(ws: &WeightedSubhypergraph<'_>, excluded: &[Vertex], m_shift: i32) -> ExactRational {
    let parent = ws.shape.parent();
    let m = parent.m() as u64;
    let verts = ws.shape.vertices();
    let deg = ws.degree_table();
    let mut val = ExactRational::from_integer(big(m - 1)).pow(-(verts.len() as i32));
    val = val * ExactRational::from_integer(big(m)).pow((m as i32 - 2) * ws.shape.edge_count() as i32 + m_shift);
    for &v in &verts {
        if !excluded.contains(&v) {
            val = val * fact(deg[v] - 1);
        }
    }
    for &w in &ws.omega {
        let num = ExactRational::from_integer(big(w).pow(m as u32 - 1));
        let den = ExactRational::from(factorial(w as usize).pow(m as u32));
        val = val * num / den;
    }
    val
}

fn check_excluded(ws: &WeightedSubhypergraph<'_>, excluded: &[Vertex]) -> Result<()> {
    if excluded.len() > 2 {
        return Err(Error::input("at most two vertices may be excluded"));
    }
    let verts = ws.shape.vertices();
    if let Some(v) = excluded.iter().find(|v| verts.binary_search(v).is_err()) {
        return Err(Error::input(format!("excluded vertex {v} is not in the sub-hypergraph")));
    }
    Ok(())
}

fn require_kind(ws: &WeightedSubhypergraph<'_>, kind: ShapeKind) -> Result<()> {
    if ws.shape.kind() != kind {
        return Err(Error::input(format!(
            "expected a {kind:?} shape, got {:?}",
            ws.shape.kind()
        )));
    }
    Ok(())
}

/// Coefficient of a weighted hypertree.
pub fn c_tree(ws: &WeightedSubhypergraph<'_>) -> Result<ExactRational> {
    partial_tree_factor(ws, &[])
}

/// [`c_tree`] without the `(d_v − 1)!` factors of up to two vertices.
pub fn partial_tree_factor(ws: &WeightedSubhypergraph<'_>, excluded: &[Vertex]) -> Result<ExactRational> {
    require_kind(ws, ShapeKind::Tree)?;
    check_excluded(ws, excluded)?;
    Ok(common_factor(ws, excluded, 0))
}

/// The cycle kernel
/// `Σ_x Π_i (ω_i!)² / ((ω_{i−1}+ω_min−x)! (ω_i−ω_min+x)!) · Σ_l Π_{i≤l}(ω_i+ω_min−x) Π_{i≥l+2}(ω_i−ω_min+x)`
/// with `ω_0 := ω_n`.
pub fn omega_cycle(omega0: &[u64]) -> Result<ExactRational> {
    let n = omega0.len();
    if n < 3 {
        return Err(Error::input(format!("a cycle has at least 3 edges, got {n}")));
    }
    if omega0.contains(&0) {
        return Err(Error::input("cycle weights must be positive"));
    }
    // 1-based view with w(0) = w(n)
    let w = |i: usize| omega0[(i + n - 1) % n];
    let wmin = *omega0.iter().min().expect("nonempty");
    let mut total = ExactRational::zero();
    for x in 0..=2 * wmin {
        let mut prod = ExactRational::one();
        for i in 1..=n {
            let num = fact(w(i)).pow(2);
            let den = fact(w(i - 1) + wmin - x) * fact(w(i) - wmin + x);
            prod = prod * num / den;
        }
        let mut inner = BigInt::from(0);
        for l in 0..n {
            let mut t = BigInt::from(1);
            for i in 1..=l {
                t *= big(w(i) + wmin - x);
            }
            for i in l + 2..=n {
                t *= big(w(i) - wmin + x);
            }
            inner += t;
        }
        total += prod * ExactRational::from_integer(inner);
    }
    Ok(total)
}

fn unicyclic_layout(ws: &WeightedSubhypergraph<'_>) -> Result<CycleLayout> {
    let parent = ws.shape.parent();
    let layout = parent
        .cycle_layout()
        .ok_or_else(|| Error::unsupported("parent is not a linear unicyclic hypergraph"))?;
    if layout.edges.iter().any(|e| !ws.shape.edges().contains(e)) {
        return Err(Error::input("shape does not contain the whole cycle"));
    }
    Ok(layout)
}

/// Coefficient of a weighted cycle-containing shape of a linear unicyclic
/// hypergraph.
///
/// The common factor times `2 m^{−1} Ω(ω|cycle)` is too large by the product
/// of the cycle weights when checked against direct Euler-rooting sums, so
/// that product is divided out here.
pub fn c_unicyclic(ws: &WeightedSubhypergraph<'_>) -> Result<ExactRational> {
    partial_unicyclic_factor(ws, &[])
}

/// [`c_unicyclic`] without the `(d_v − 1)!` factors of up to two vertices.
pub fn partial_unicyclic_factor(ws: &WeightedSubhypergraph<'_>, excluded: &[Vertex]) -> Result<ExactRational> {
    require_kind(ws, ShapeKind::ContainsCycle)?;
    check_excluded(ws, excluded)?;
    let layout = unicyclic_layout(ws)?;
    let cyc: Vec<u64> = layout
        .edges
        .iter()
        .map(|&e| ws.weight_of(e).expect("cycle edge in shape"))
        .collect();
    let cyc_prod: u64 = cyc.iter().product();
    let val = common_factor(ws, excluded, -1)
        * ExactRational::from_integer(2)
        * omega_cycle(&cyc)?
        / ExactRational::from_integer(big(cyc_prod));
    Ok(val)
}

/// Coefficient for a 2-uniform cycle-containing shape whose cycle edges all
/// have odd multiplicity and whose tree edges have even multiplicity
/// (`mult` aligned with `shape.edges()`).
///
/// With `a_i = (μ_i − μ_min)/2 + x` the number of times joint `u_i` roots
/// `e_i`, the sum runs over `x = 0..=μ_min` of
/// `Π_i 1/(a_i! (μ_i−a_i)!) · Σ_l Π_{i≤l}(μ_i−a_i) Π_{i≥l+2} a_i`,
/// times `Π_v (r_v−1)! Π_tree (μ/2)/((μ/2)!)²` with `r_v = d_v/2`.
pub fn c_odd_cycle_graph(shape: &SubhypergraphClass<'_>, mult: &[u64]) -> Result<ExactRational> {
    let parent = shape.parent();
    if parent.m() != 2 {
        return Err(Error::input("odd cycle multiplicities only arise for graphs"));
    }
    if mult.len() != shape.edge_count() {
        return Err(Error::input("one multiplicity per shape edge"));
    }
    if shape.kind() != ShapeKind::ContainsCycle {
        return Err(Error::input("shape must contain the cycle"));
    }
    let layout = parent
        .cycle_layout()
        .ok_or_else(|| Error::unsupported("parent is not unicyclic"))?;
    let pos = |e: usize| shape.edges().iter().position(|&x| x == e);
    let mut cyc = Vec::with_capacity(layout.edges.len());
    for &e in &layout.edges {
        let i = pos(e).ok_or_else(|| Error::input("shape does not contain the whole cycle"))?;
        if mult[i].is_multiple_of(2) {
            return Err(Error::input("cycle multiplicities must be odd"));
        }
        cyc.push(mult[i]);
    }
    let mut deg = vec![0u64; parent.n()];
    let mut val = ExactRational::one();
    for (&e, &mu) in shape.edges().iter().zip(mult) {
        for &v in parent.edge(e) {
            deg[v] += mu;
        }
        if !layout.edges.contains(&e) {
            if mu % 2 != 0 || mu == 0 {
                return Err(Error::input("tree multiplicities must be even and positive"));
            }
            let h = mu / 2;
            val = val * ExactRational::from_integer(big(h)) / fact(h).pow(2);
        }
    }
    for v in shape.vertices() {
        val = val * fact(deg[v] / 2 - 1);
    }
    let n = cyc.len();
    let mu = |i: usize| cyc[i - 1];
    let mmin = *cyc.iter().min().expect("cycle nonempty");
    let mut sum = ExactRational::zero();
    for x in 0..=mmin {
        let a = |i: usize| (mu(i) - mmin) / 2 + x;
        let mut prod = ExactRational::one();
        for i in 1..=n {
            prod = prod / (fact(a(i)) * fact(mu(i) - a(i)));
        }
        let mut inner = BigInt::from(0);
        for l in 0..n {
            let mut t = BigInt::from(1);
            for i in 1..=l {
                t *= big(mu(i) - a(i));
            }
            for i in l + 2..=n {
                t *= big(a(i));
            }
            inner += t;
        }
        sum += prod * ExactRational::from_integer(inner);
    }
    Ok(val * sum)
}

fn check_supported(h: &Hypergraph) -> Result<()> {
    match h.topology() {
        Topology::Hypertree | Topology::LinearUnicyclic => Ok(()),
        Topology::Disconnected => Err(Error::unsupported("hypergraph is disconnected")),
        Topology::Other => Err(Error::unsupported(
            "closed forms cover only hypertrees and linear unicyclic hypergraphs",
        )),
    }
}

pub fn is_supported(h: &Hypergraph) -> bool {
    check_supported(h).is_ok()
}

/// `Σ_H C_H` over the Veblen multi-hypergraphs with `d` edges whose
/// underlying hypergraph is `shape`.
///
/// For `m ≥ 3` this vanishes unless `m | d`. Graphs (`m = 2`) whose cycle is
/// traversed an odd number of times per edge add a second family of terms,
/// which is nonzero only when `d` and the cycle length have equal parity.
pub fn tr_d(shape: &SubhypergraphClass<'_>, d: usize) -> Result<ExactRational> {
    let parent = shape.parent();
    check_supported(parent)?;
    let m = parent.m();
    let k = shape.edge_count();
    let mut total = ExactRational::zero();
    if d > 0 && d.is_multiple_of(m) {
        for comp in weight_compositions(k, (d / m) as u64) {
            let ws = WeightedSubhypergraph::new(shape.clone(), comp.weights)?;
            total += match shape.kind() {
                ShapeKind::Tree => c_tree(&ws)?,
                ShapeKind::ContainsCycle => c_unicyclic(&ws)?,
            };
        }
    }
    if m == 2 && shape.kind() == ShapeKind::ContainsCycle {
        let layout = parent.cycle_layout().expect("supported cyclic parent");
        let nc = layout.edges.len();
        if d >= nc && (d - nc).is_multiple_of(2) {
            let is_cycle: Vec<bool> = shape.edges().iter().map(|e| layout.edges.contains(e)).collect();
            for comp in weight_compositions(k, ((d + nc) / 2) as u64) {
                let mult: Vec<u64> = comp
                    .weights
                    .iter()
                    .zip(&is_cycle)
                    .map(|(&p, &c)| if c { 2 * p - 1 } else { 2 * p })
                    .collect();
                total += c_odd_cycle_graph(shape, &mult)?;
            }
        }
    }
    Ok(total)
}

/// `Tr_0 = N = n (m−1)^{n−1}`, the number of eigenvalues.
pub fn eigenvalue_count(h: &Hypergraph) -> BigUint {
    BigUint::from(h.n()) * BigUint::from(h.m() - 1).pow(h.n() as u32 - 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeTerm {
    pub edges: Vec<usize>,
    pub kind: ShapeKind,
    pub tr_d: ExactRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub d: usize,
    pub trace: ExactRational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<ShapeTerm>>,
}

/// `Tr_d(h)` by the closed forms.
pub fn trace(h: &Hypergraph, d: usize) -> Result<ExactRational> {
    Ok(trace_report(h, d, false)?.trace)
}

/// `Tr_d(h)` with an optional breakdown of the nonzero per-shape `tr_d`.
pub fn trace_report(h: &Hypergraph, d: usize, with_terms: bool) -> Result<TraceReport> {
    check_supported(h)?;
    let m = h.m();
    if d == 0 {
        return Ok(TraceReport {
            d,
            trace: ExactRational::from(eigenvalue_count(h)),
            terms: with_terms.then(Vec::new),
        });
    }
    // Each edge of a shape is used at least m times, except cycle edges of a
    // graph traversed an odd number of times, which are used at least once.
    let max_edges = if m == 2 { d } else { d / m }.min(h.edge_count());
    let shapes = connected_subhypergraphs(h, max_edges);
    let terms: Vec<ShapeTerm> = shapes
        .par_iter()
        .map(|s| {
            tr_d(s, d).map(|t| ShapeTerm {
                edges: s.edges().to_vec(),
                kind: s.kind(),
                tr_d: t,
            })
        })
        .collect::<Result<_>>()?;
    let sum: ExactRational = terms.iter().map(|t| &t.tr_d).sum();
    let prefactor = ExactRational::from_integer(BigInt::from(d) * BigInt::from(m - 1).pow(h.n() as u32));
    Ok(TraceReport {
        d,
        trace: prefactor * sum,
        terms: with_terms.then(|| terms.into_iter().filter(|t| !t.tr_d.is_zero()).collect()),
    })
}

/// `(x+y+a)! b! + (x+y+b)! a! > (x+a)! (y+b)! + (x+b)! (y+a)!` in exact
/// integers.
pub fn factorial_inequality_check(x: usize, y: usize, a: usize, b: usize) -> bool {
    let f = factorial;
    f(x + y + a) * f(b) + f(x + y + b) * f(a) > f(x + a) * f(y + b) + f(x + b) * f(y + a)
}
