//! Named hypergraph families, all built from graph powers and coalescence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{attach, coalesce, power_of_graph, Hypergraph, RootedSite, Vertex};

/// Hyperpath with `k` edges on path vertices `0..=k`.
pub fn hyperpath(m: usize, k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Ok(Hypergraph::trivial(m));
    }
    let edges: Vec<[Vertex; 2]> = (0..k).map(|i| [i, i + 1]).collect();
    power_of_graph(k + 1, &edges, m)
}

/// Hyperstar with `k` edges and center `0`.
pub fn hyperstar(m: usize, k: usize) -> Result<Hypergraph> {
    if k == 0 {
        return Ok(Hypergraph::trivial(m));
    }
    let edges: Vec<[Vertex; 2]> = (1..=k).map(|i| [0, i]).collect();
    power_of_graph(k + 1, &edges, m)
}

/// Loose cycle with `n ≥ 3` edges; joints are `0..n`, edge `i` joins `i`
/// and `i+1 mod n`.
pub fn loose_cycle(m: usize, n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::input(format!("a cycle needs at least 3 edges, got {n}")));
    }
    let edges: Vec<[Vertex; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
    power_of_graph(n, &edges, m)
}

/// The comb with endpoint `0`: edge `{0, 1, …, m−1}` with a pendant edge
/// hung at each of `1, …, m−1`.
pub fn comb(m: usize) -> Result<Hypergraph> {
    let e0 = hyperpath(m, 1)?;
    let pendant = RootedSite::new(e0.clone(), 0)?;
    let at: Vec<(Vertex, RootedSite)> = (1..m).map(|v| (v, pendant.clone())).collect();
    attach(&e0, &at)
}

/// An edge with `t` combs glued at one of its vertices (vertex `0`) by
/// their endpoints.
pub fn t_mt(m: usize, t: usize) -> Result<Hypergraph> {
    if t == 0 {
        return Err(Error::input("the comb tree needs t ≥ 1"));
    }
    let e = hyperpath(m, 1)?;
    let c = RootedSite::new(comb(m)?, 0)?;
    let at: Vec<(Vertex, RootedSite)> = (0..t).map(|_| (0, c.clone())).collect();
    attach(&e, &at)
}

/// Loose `n`-cycle with a `t`-edge hyperstar centred at joint `0`.
pub fn s_m_n_t(m: usize, n: usize, t: usize) -> Result<Hypergraph> {
    let c = loose_cycle(m, n)?;
    let s = hyperstar(m, t)?;
    coalesce(&RootedSite::new(c, 0)?, &RootedSite::new(s, 0)?)
}

/// Serializable family selector, used by instance files and the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Trivial,
    Edge,
    Hyperpath { k: usize },
    Hyperstar { k: usize },
    LooseCycle { n: usize },
    Comb,
    TMt { t: usize },
    SMnt { n: usize, t: usize },
    Explicit { n: usize, edges: Vec<Vec<Vertex>> },
}

impl Family {
    pub fn build(&self, m: usize) -> Result<Hypergraph> {
        match self {
            Family::Trivial => Ok(Hypergraph::trivial(m)),
            Family::Edge => hyperpath(m, 1),
            Family::Hyperpath { k } => hyperpath(m, *k),
            Family::Hyperstar { k } => hyperstar(m, *k),
            Family::LooseCycle { n } => loose_cycle(m, *n),
            Family::Comb => comb(m),
            Family::TMt { t } => t_mt(m, *t),
            Family::SMnt { n, t } => s_m_n_t(m, *n, *t),
            Family::Explicit { n, edges } => Hypergraph::new(m, *n, edges.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = comb(3).unwrap();
        assert_eq!((c.n(), c.edge_count()), (7, 3));
        assert!(c.is_hypertree());
        let t = t_mt(3, 1).unwrap();
        assert_eq!((t.n(), t.edge_count()), (9, 4));
        let s = s_m_n_t(3, 3, 1).unwrap();
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.girth(), Some(3));
        assert_eq!(s.degree(0).unwrap(), 3);
    }

    #[test]
    fn comb_tree_matching() {
        for m in 2..=4 {
            for t in 1..=3 {
                let h = t_mt(m, t).unwrap();
                assert!(h.is_hypertree());
                let pm = h.has_perfect_matching().unwrap();
                assert_eq!(pm.len(), t * (m - 1) + 1);
                assert_eq!(h.count_perfect_matchings(), 1);
            }
        }
    }

    #[test]
    fn comb_shape() {
        let c = comb(3).unwrap();
        // endpoint has degree 1, the other two e0 vertices have degree 2
        assert_eq!(c.degree(0).unwrap(), 1);
        assert_eq!(c.degree(1).unwrap(), 2);
        assert_eq!(c.degree(2).unwrap(), 2);
    }

    #[test]
    fn family_json() {
        let f: Family = serde_json::from_str(r#"{"family":"hyperstar","k":3}"#).unwrap();
        assert_eq!(f.build(3).unwrap().edge_count(), 3);
        let e: Family = serde_json::from_str(r#"{"family":"explicit","n":3,"edges":[[0,1,2]]}"#).unwrap();
        assert_eq!(e.build(3).unwrap().edge_count(), 1);
    }
}
