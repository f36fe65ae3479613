//! Canonical labelling by colour refinement and individualisation, with
//! orbit pruning from discovered automorphisms.

use crate::hypergraph::{Hypergraph, Vertex};

/// Byte string that is equal for two hypergraphs iff they are isomorphic.
pub fn canonical_form(h: &Hypergraph) -> Vec<u8> {
    let (edges, _) = canonical_labelling(h);
    let mut out = format!("{}:{}", h.m(), h.n());
    for e in edges {
        out.push('|');
        let parts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        out.push_str(&parts.join(","));
    }
    out.into_bytes()
}

/// The relabelled hypergraph whose edge list is the certificate.
pub fn canonical_hypergraph(h: &Hypergraph) -> Hypergraph {
    let (_, perm) = canonical_labelling(h);
    h.relabel(&perm).expect("canonical labelling is a permutation")
}

type Cert = Vec<Vec<Vertex>>;

fn canonical_labelling(h: &Hypergraph) -> (Cert, Vec<Vertex>) {
    let inc = h.incidence();
    let mut search = Search {
        h,
        inc: &inc,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let initial = refine(h, &inc, vec![0; h.n()]);
    let mut prefix = Vec::new();
    search.node(initial, &mut prefix);
    let best = search.best.expect("search visits at least one leaf");
    (best.cert, best.perm)
}

struct Leaf {
    cert: Cert,
    perm: Vec<Vertex>,
    path: Vec<Vertex>,
}

struct Search<'a> {
    h: &'a Hypergraph,
    inc: &'a [Vec<usize>],
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon the search up to that depth after an
    /// automorphism shows the rest of the subtree is equivalent to one
    /// already explored.
    fn node(&mut self, colours: Vec<usize>, prefix: &mut Vec<Vertex>) -> Option<usize> {
        let n = colours.len();
        let Some(cell_start) = first_nonsingleton(&colours) else {
            return self.leaf(colours, prefix);
        };
        let cell: Vec<Vertex> = (0..n).filter(|&v| colours[v] == cell_start).collect();
        let depth = prefix.len();
        let mut tried: Vec<Vertex> = Vec::new();
        for &v in &cell {
            if !tried.is_empty() && self.in_tried_orbit(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            let mut next = colours.clone();
            for &u in &cell {
                if u != v {
                    next[u] = cell_start + 1;
                }
            }
            let refined = refine(self.h, self.inc, next);
            prefix.push(v);
            let jump = self.node(refined, prefix);
            prefix.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colours: Vec<usize>, prefix: &[Vertex]) -> Option<usize> {
        let perm = colours;
        let cert = relabelled_edges(self.h, &perm);
        let leaf = Leaf {
            cert,
            perm,
            path: prefix.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                perm: leaf.perm.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            self.autos.push(automorphism(&first.perm, &leaf.perm));
            return Some(common_prefix(&first.path, &leaf.path));
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                self.autos.push(automorphism(&best.perm, &leaf.perm));
                Some(common_prefix(&best.path, &leaf.path))
            }
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Whether `v` is in the orbit of an already tried sibling under the
    /// automorphisms found so far that fix the current prefix pointwise.
    fn in_tried_orbit(&self, v: Vertex, tried: &[Vertex], prefix: &[Vertex]) -> bool {
        let gens: Vec<&Vec<Vertex>> = self
            .autos
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let n = self.h.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in gens {
            for (x, &gx) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gx));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

fn common_prefix(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// `γ` with `perm_a ∘ γ = perm_b`, i.e. `γ = perm_a⁻¹ ∘ perm_b`.
fn automorphism(perm_a: &[Vertex], perm_b: &[Vertex]) -> Vec<Vertex> {
    let mut inv_a = vec![0; perm_a.len()];
    for (v, &p) in perm_a.iter().enumerate() {
        inv_a[p] = v;
    }
    perm_b.iter().map(|&p| inv_a[p]).collect()
}

fn relabelled_edges(h: &Hypergraph, perm: &[Vertex]) -> Cert {
    let mut edges: Cert = h
        .edges()
        .iter()
        .map(|e| {
            let mut f: Vec<Vertex> = e.iter().map(|&v| perm[v]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    edges.sort();
    edges
}

/// Smallest colour shared by two or more vertices.
fn first_nonsingleton(colours: &[usize]) -> Option<usize> {
    let mut counts = vec![0usize; colours.len()];
    for &c in colours {
        counts[c] += 1;
    }
    counts.iter().position(|&k| k > 1)
}

/// Equitable refinement. Colours are cell positions: a vertex's colour is the
/// number of vertices in strictly earlier cells, so cell order is stable and
/// independent of vertex labels.
fn refine(h: &Hypergraph, inc: &[Vec<usize>], mut colours: Vec<usize>) -> Vec<usize> {
    let n = colours.len();
    loop {
        let cells_before = distinct(&colours);
        let sigs: Vec<(usize, Vec<Vec<usize>>)> = (0..n)
            .map(|v| {
                let mut around: Vec<Vec<usize>> = inc[v]
                    .iter()
                    .map(|&ei| {
                        let mut cs: Vec<usize> = h
                            .edge(ei)
                            .iter()
                            .filter(|&&u| u != v)
                            .map(|&u| colours[u])
                            .collect();
                        cs.sort_unstable();
                        cs
                    })
                    .collect();
                around.sort();
                (colours[v], around)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
        let mut next = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            next[v] = if pos > 0 && sigs[order[pos - 1]] == sigs[v] {
                next[order[pos - 1]]
            } else {
                pos
            };
        }
        colours = next;
        if distinct(&colours) == cells_before {
            return colours;
        }
    }
}

fn distinct(colours: &[usize]) -> usize {
    let mut seen = vec![false; colours.len()];
    colours.iter().filter(|&&c| !std::mem::replace(&mut seen[c], true)).count()
}
