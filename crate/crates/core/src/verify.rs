//! Executable checks of the relocation lemmas, the two extremal theorems and
//! the structural lemmas behind them, on concrete small instances.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::enumerate::{enumerate_hypertrees, enumerate_pm_hypertrees, enumerate_unicyclic, SubhypergraphClass};
use crate::error::{Error, Result};
use crate::estrada::{compare_ee, default_depth, Verdict};
use crate::families::{s_m_n_t, t_mt, Family};
use crate::hypergraph::{attach, coalesce, Hypergraph, RootedSite, Vertex};
use crate::oracle::{euler_rootings, euler_rootings_with_multiplicities};
use crate::rational::ExactRational;
use crate::trace::{tr_d, trace, WeightedSubhypergraph};

const BUNDLED_INSTANCES: &str = include_str!("../data/instances.json");

/// A rooted building block: a family member and the vertex used for gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub root: Vertex,
}

impl Piece {
    fn site(&self, m: usize) -> Result<RootedSite> {
        RootedSite::new(self.family.build(m)?, self.root)
    }
}

/// The construction a lemma speaks about, with its free parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lemma")]
pub enum Construction {
    /// Relocate `t` from `v1` to `v2` on a 3-edge hyperpath carrying `t1`
    /// at `v1` and `hats` at the inner vertices of the middle edge.
    #[serde(rename = "3.3")]
    PathRelocation { t1: Piece, hats: Vec<Piece>, t: Piece },
    /// Move `t` from a degree-2 vertex `v` of a cycle edge to a degree-1
    /// vertex `u` of the same edge.
    #[serde(rename = "4.4")]
    CycleEdgeRelocation { host: Piece, v: Vertex, u: Vertex, t: Piece },
    /// Edge `{u, v1, …}` with `branches[i]` glued at `v_{i+1}`; move `h2`
    /// from `v1` to `u`.
    #[serde(rename = "5.1")]
    EdgeRelocation { branches: Vec<Piece>, h2: Piece },
    #[serde(rename = "6.2(1)")]
    EdgeRelocationWhole { branches: Vec<Piece>, t: Piece },
    /// Both `t` and `t_tilde` placed at `v1` or `u` in all four ways.
    #[serde(rename = "6.2(2)")]
    EdgeRelocationPair { branches: Vec<Piece>, t: Piece, t_tilde: Piece },
    /// Move `t` from `v0` to `v2` on a 2-edge hyperpath carrying `t0` at
    /// `v0` and `hat1` at `v1`.
    #[serde(rename = "6.3")]
    ShortPathRelocation { t0: Piece, hat1: Piece, t: Piece },
    /// Move `t2` from `v1` to `v2` on a triangle carrying `t1` at `v1` and
    /// `hat3` at `v3`; compared edge-by-edge on the whole hypergraph.
    #[serde(rename = "6.4")]
    TriangleRelocationWhole { t1: Piece, hat3: Piece, t2: Piece },
    #[serde(rename = "6.5")]
    TriangleRelocation { t1: Piece, hat3: Piece, t2: Piece },
}

impl Construction {
    pub fn lemma(&self) -> &'static str {
        match self {
            Construction::PathRelocation { .. } => "3.3",
            Construction::CycleEdgeRelocation { .. } => "4.4",
            Construction::EdgeRelocation { .. } => "5.1",
            Construction::EdgeRelocationWhole { .. } => "6.2(1)",
            Construction::EdgeRelocationPair { .. } => "6.2(2)",
            Construction::ShortPathRelocation { .. } => "6.3",
            Construction::TriangleRelocationWhole { .. } => "6.4",
            Construction::TriangleRelocation { .. } => "6.5",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaInstance {
    pub name: String,
    pub m: usize,
    /// Explicit `d` values; defaults are chosen per lemma when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<usize>>,
    #[serde(flatten)]
    pub construction: Construction,
}

impl LemmaInstance {
    /// Whether `query` ("6.2", "6.2(1)", …) selects this instance.
    pub fn matches(&self, query: &str) -> bool {
        let id = self.construction.lemma();
        id == query || id.strip_prefix(query).is_some_and(|rest| rest.starts_with('('))
    }
}

/// The shipped instance library.
pub fn bundled_instances() -> Vec<LemmaInstance> {
    serde_json::from_str(BUNDLED_INSTANCES).expect("bundled instance file is valid")
}

pub fn parse_instances(json: &str) -> Result<Vec<LemmaInstance>> {
    serde_json::from_str(json).map_err(|e| Error::input(format!("instance file: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Granularity {
    /// Full trace `Tr_d`.
    #[serde(rename = "Tr")]
    Trace,
    /// `tr_d` of the whole hypergraph as a single shape.
    #[serde(rename = "tr")]
    WholeShape,
}

/// What the lemma asserts at one `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    AtLeast,
    Greater,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observed {
    Less,
    Equal,
    Greater,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationRow {
    pub d: usize,
    pub left: ExactRational,
    pub right: ExactRational,
    pub expected: Expectation,
    pub observed: Observed,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationReport {
    pub name: String,
    pub lemma: &'static str,
    pub m: usize,
    pub granularity: Granularity,
    /// Strict inequality is expected when `m | d` and `d/m` reaches this.
    pub strict_from: usize,
    pub left: Vec<Hypergraph>,
    pub right: Vec<Hypergraph>,
    pub rows: Vec<PerturbationRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
}

/// Both sides of a lemma, before evaluation.
struct Sides {
    left: Vec<Hypergraph>,
    right: Vec<Hypergraph>,
    granularity: Granularity,
    strict_from: usize,
    /// The stated strictness claim is not asserted, only recorded.
    record_only: bool,
}

fn require_hypertree(what: &str, h: &Hypergraph, nontrivial: bool) -> Result<()> {
    if !h.is_hypertree() {
        return Err(Error::instance(what, "must be a hypertree"));
    }
    if nontrivial && h.is_trivial() {
        return Err(Error::instance(what, "must be nontrivial"));
    }
    Ok(())
}

fn hypertree_site(what: &str, p: &Piece, m: usize, nontrivial: bool) -> Result<RootedSite> {
    let site = p.site(m)?;
    require_hypertree(what, site.host(), nontrivial)?;
    Ok(site)
}

fn glue(host: &Hypergraph, v: Vertex, site: &RootedSite) -> Result<Hypergraph> {
    coalesce(&RootedSite::new(host.clone(), v)?, site)
}

/// `e = {0, 1, …, m−1}` with `branches[i]` at vertex `i+1`; `u = 0`.
fn branched_edge(m: usize, branches: &[Piece], first_nontrivial: bool) -> Result<Hypergraph> {
    if branches.is_empty() || branches.len() > m - 1 {
        return Err(Error::instance("branch count", format!("need 1 ≤ p ≤ {}", m - 1)));
    }
    let e = Family::Edge.build(m)?;
    let mut at = Vec::new();
    for (i, b) in branches.iter().enumerate() {
        let what = format!("branch {}", i + 1);
        let site = if i == 0 && first_nontrivial {
            let s = b.site(m)?;
            if s.host().is_trivial() {
                return Err(Error::instance(what, "the branch at v1 must be nontrivial"));
            }
            s
        } else {
            hypertree_site(&what, b, m, false)?
        };
        at.push((i + 1, site));
    }
    attach(&e, &at)
}

fn build_sides(inst: &LemmaInstance) -> Result<Sides> {
    let m = inst.m;
    if m < 2 {
        return Err(Error::input("uniformity must be at least 2"));
    }
    let tr_level = |left: Vec<Hypergraph>, right: Vec<Hypergraph>, strict_from: usize| Sides {
        left,
        right,
        granularity: Granularity::WholeShape,
        strict_from,
        record_only: false,
    };
    let tr_level_full = |left: Vec<Hypergraph>, right: Vec<Hypergraph>, strict_from: usize| Sides {
        left,
        right,
        granularity: Granularity::Trace,
        strict_from,
        record_only: false,
    };
    match &inst.construction {
        Construction::PathRelocation { t1, hats, t } => {
            if hats.len() != m - 2 {
                return Err(Error::instance("hats", format!("need exactly m − 2 = {} pieces", m - 2)));
            }
            let p3 = Family::Hyperpath { k: 3 }.build(m)?;
            let mut at = vec![(1, hypertree_site("T1", t1, m, true)?)];
            for (j, hat) in hats.iter().enumerate() {
                // Inner vertices of the middle edge follow the first edge's.
                at.push((4 + (m - 2) + j, hypertree_site("hat", hat, m, false)?));
            }
            let h = attach(&p3, &at)?;
            let t = hypertree_site("T", t, m, true)?;
            Ok(tr_level_full(vec![glue(&h, 1, &t)?], vec![glue(&h, 2, &t)?], 2))
        }
        Construction::CycleEdgeRelocation { host, v, u, t } => {
            if m < 3 {
                return Err(Error::instance("uniformity", "an edge with a degree-1 cycle vertex needs m ≥ 3"));
            }
            let host = host.family.build(m)?;
            if !host.is_linear_unicyclic() {
                return Err(Error::instance("U", "must be linear unicyclic"));
            }
            let layout = host.cycle_layout().expect("unicyclic");
            let on_cycle_edge = layout
                .edges
                .iter()
                .any(|&e| host.edge(e).contains(v) && host.edge(e).contains(u));
            if !on_cycle_edge {
                return Err(Error::instance("e", "v and u must lie on a common cycle edge"));
            }
            if host.degree(*v)? != 2 {
                return Err(Error::instance("v", "must have degree 2"));
            }
            if host.degree(*u)? != 1 {
                return Err(Error::instance("u", "must have degree 1"));
            }
            let t = hypertree_site("T", t, m, true)?;
            Ok(Sides {
                left: vec![glue(&host, *v, &t)?],
                right: vec![glue(&host, *u, &t)?],
                granularity: Granularity::Trace,
                strict_from: 2,
                record_only: true,
            })
        }
        Construction::EdgeRelocation { branches, h2 } => {
            let h1 = branched_edge(m, branches, true)?;
            let h2 = h2.site(m)?;
            if h2.host().is_trivial() {
                return Err(Error::instance("H2", "must be nontrivial"));
            }
            Ok(tr_level_full(vec![glue(&h1, 1, &h2)?], vec![glue(&h1, 0, &h2)?], 2))
        }
        Construction::EdgeRelocationWhole { branches, t } => {
            let h = branched_edge(m, branches, true)?;
            require_hypertree("H", &h, true)?;
            let t = hypertree_site("T", t, m, true)?;
            let h1 = glue(&h, 1, &t)?;
            let h2 = glue(&h, 0, &t)?;
            let e = h1.edge_count();
            Ok(tr_level(vec![h1], vec![h2], e))
        }
        Construction::EdgeRelocationPair { branches, t, t_tilde } => {
            let h = branched_edge(m, branches, true)?;
            require_hypertree("H", &h, true)?;
            let t = hypertree_site("T", t, m, true)?;
            let tt = hypertree_site("T~", t_tilde, m, true)?;
            let h1 = glue(&h, 1, &t)?;
            let h2 = glue(&h, 0, &t)?;
            let h11 = glue(&h1, 1, &tt)?;
            let h12 = glue(&h1, 0, &tt)?;
            let h21 = glue(&h2, 1, &tt)?;
            let h22 = glue(&h2, 0, &tt)?;
            let e = h11.edge_count();
            Ok(tr_level(vec![h11, h12], vec![h21, h22], e))
        }
        Construction::ShortPathRelocation { t0, hat1, t } => {
            let p2 = Family::Hyperpath { k: 2 }.build(m)?;
            let h = attach(
                &p2,
                &[
                    (0, hypertree_site("T0", t0, m, true)?),
                    (1, hypertree_site("hat1", hat1, m, false)?),
                ],
            )?;
            let t = hypertree_site("T", t, m, true)?;
            let h1 = glue(&h, 0, &t)?;
            let h2 = glue(&h, 2, &t)?;
            // Every edge needs weight ≥ 1, so nothing is strict below |E|.
            let e = h1.edge_count().max(4);
            Ok(tr_level(vec![h1], vec![h2], e))
        }
        Construction::TriangleRelocationWhole { t1, hat3, t2 } | Construction::TriangleRelocation { t1, hat3, t2 } => {
            let c3 = Family::LooseCycle { n: 3 }.build(m)?;
            // Joints 0, 1, 2 play v1, v2, v3.
            let h = attach(
                &c3,
                &[
                    (0, hypertree_site("T1", t1, m, true)?),
                    (2, hypertree_site("hat3", hat3, m, false)?),
                ],
            )?;
            let t2 = hypertree_site("T2", t2, m, true)?;
            let h1 = glue(&h, 0, &t2)?;
            let h2 = glue(&h, 1, &t2)?;
            if matches!(inst.construction, Construction::TriangleRelocation { .. }) {
                Ok(tr_level_full(vec![h1], vec![h2], 2))
            } else {
                let e = h1.edge_count();
                Ok(tr_level(vec![h1], vec![h2], e))
            }
        }
    }
}

fn default_ds(m: usize, sides: &Sides) -> Vec<usize> {
    let mut ds = vec![m, 2 * m, 3 * m];
    if sides.granularity == Granularity::WholeShape {
        // Reach past the strictness threshold so the strict regime is exercised.
        ds.extend((4..=sides.strict_from + 1).map(|q| q * m));
    }
    ds
}

fn evaluate(h: &Hypergraph, d: usize, g: Granularity) -> Result<ExactRational> {
    match g {
        Granularity::Trace => trace(h, d),
        Granularity::WholeShape => tr_d(&SubhypergraphClass::whole(h)?, d),
    }
}

/// Evaluate both sides of a lemma instance at each `d`.
pub fn check_perturbation(inst: &LemmaInstance, ds: Option<&[usize]>) -> Result<PerturbationReport> {
    let sides = build_sides(inst)?;
    let ds: Vec<usize> = match ds.or(inst.d.as_deref()) {
        Some(ds) => ds.to_vec(),
        None => default_ds(inst.m, &sides),
    };
    let m = inst.m;
    let rows: Vec<PerturbationRow> = ds
        .par_iter()
        .map(|&d| {
            let sum = |hs: &[Hypergraph]| -> Result<ExactRational> {
                hs.iter().map(|h| evaluate(h, d, sides.granularity)).sum()
            };
            let left = sum(&sides.left)?;
            let right = sum(&sides.right)?;
            let strict = d % m == 0 && d / m >= sides.strict_from && !sides.record_only;
            let expected = if strict { Expectation::Greater } else { Expectation::AtLeast };
            let observed = match left.cmp(&right) {
                std::cmp::Ordering::Less => Observed::Less,
                std::cmp::Ordering::Equal => Observed::Equal,
                std::cmp::Ordering::Greater => Observed::Greater,
            };
            let ok = match expected {
                Expectation::AtLeast => observed != Observed::Less,
                Expectation::Greater => observed == Observed::Greater,
            };
            Ok(PerturbationRow {
                d,
                left,
                right,
                expected,
                observed,
                ok,
            })
        })
        .collect::<Result<_>>()?;
    let note = sides.record_only.then(|| {
        let strict: Vec<String> = rows
            .iter()
            .filter(|r| r.observed == Observed::Greater)
            .map(|r| r.d.to_string())
            .collect();
        format!(
            "strictness is recorded, not asserted; strict at d = [{}], equal elsewhere",
            strict.join(", ")
        )
    });
    let status = if rows.iter().all(|r| r.ok) { Status::Pass } else { Status::Fail };
    Ok(PerturbationReport {
        name: inst.name.clone(),
        lemma: inst.construction.lemma(),
        m,
        granularity: sides.granularity,
        strict_from: sides.strict_from,
        left: sides.left,
        right: sides.right,
        rows,
        note,
        status,
    })
}

/// Run every instance, reports ordered by lemma id then name.
pub fn check_all(instances: &[LemmaInstance], ds: Option<&[usize]>) -> Result<Vec<PerturbationReport>> {
    let mut reports: Vec<PerturbationReport> = instances
        .par_iter()
        .map(|i| check_perturbation(i, ds))
        .collect::<Result<_>>()?;
    reports.sort_by(|a, b| (a.lemma, &a.name).cmp(&(b.lemma, &b.name)));
    Ok(reports)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "theorem")]
pub enum ExtremalFamily {
    /// Hypertrees on `m·k` vertices with a perfect matching.
    PmHypertrees { m: usize, k: usize },
    /// Linear unicyclic hypergraphs with `z` edges and girth 3.
    UnicyclicGirth3 { m: usize, z: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberVerdict {
    pub member: String,
    pub verdict: Verdict,
    pub maximizer_lower: String,
    pub member_upper: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retry_depth: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub family: ExtremalFamily,
    pub depth: usize,
    pub family_size: usize,
    pub maximizer: String,
    pub comparisons: Vec<MemberVerdict>,
    /// For the unicyclic family: whether the maximizer is a cycle with
    /// hyperstars centred at its degree-2 vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_attachment_shape: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
}

fn canon_string(h: &Hypergraph) -> String {
    String::from_utf8(canonical_form(h)).expect("canonical form is ASCII")
}

/// Cycle plus pendant hyperstars centred at cycle joints: every edge off
/// the cycle meets the cycle's degree-≥2 vertices in exactly one vertex and
/// all its other vertices have degree 1.
pub fn is_star_attachment(h: &Hypergraph) -> bool {
    let Some(layout) = h.cycle_layout() else {
        return false;
    };
    let degrees = h.degrees();
    (0..h.edge_count())
        .filter(|e| !layout.edges.contains(e))
        .all(|e| {
            let edge = h.edge(e);
            let centres: Vec<Vertex> = edge.iter().copied().filter(|v| layout.joints.contains(v)).collect();
            centres.len() == 1 && edge.iter().all(|&v| v == centres[0] || degrees[v] == 1)
        })
}

/// Compare the named maximizer against every other family member.
pub fn check_extremal_theorem(which: ExtremalFamily, depth: Option<usize>) -> Result<ExtremalReport> {
    let (members, maximizer, m) = match which {
        ExtremalFamily::PmHypertrees { m, k } => {
            if m < 2 || k == 0 || (k - 1) % (m - 1) != 0 {
                return Err(Error::input(format!("need m ≥ 2 and (m−1) | (k−1), got m = {m}, k = {k}")));
            }
            let t = (k - 1) / (m - 1);
            let max = if t == 0 { Family::Edge.build(m)? } else { t_mt(m, t)? };
            (enumerate_pm_hypertrees(m, k), max, m)
        }
        ExtremalFamily::UnicyclicGirth3 { m, z } => {
            if z < 3 {
                return Err(Error::input("a girth-3 unicyclic hypergraph has at least 3 edges"));
            }
            (enumerate_unicyclic(m, z, 3)?, s_m_n_t(m, 3, z - 3)?, m)
        }
    };
    let max_canon = canonical_form(&maximizer);
    if !members.iter().any(|h| canonical_form(h) == max_canon) {
        return Err(Error::instance("maximizer", "not a member of the enumerated family"));
    }
    let others: Vec<&Hypergraph> = members.iter().filter(|h| canonical_form(h) != max_canon).collect();
    let depth = depth.unwrap_or_else(|| members.iter().map(default_depth).max().unwrap_or(4 * m));
    let comparisons: Vec<MemberVerdict> = others
        .par_iter()
        .map(|h| {
            let c = compare_ee(&maximizer, h, Some(depth))?;
            let retry_depth = if c.verdict == Verdict::Inconclusive {
                let deeper = 2 * depth;
                let again = compare_ee(&maximizer, h, Some(deeper))?;
                Some(if again.verdict == Verdict::Inconclusive { 2 * deeper } else { deeper })
            } else {
                None
            };
            Ok(MemberVerdict {
                member: canon_string(h),
                verdict: c.verdict,
                maximizer_lower: c.a.partial_sum.to_decimal(12, false),
                member_upper: c.b.upper().to_decimal(12, true),
                retry_depth,
            })
        })
        .collect::<Result<_>>()?;
    let star_attachment_shape =
        matches!(which, ExtremalFamily::UnicyclicGirth3 { .. }).then(|| is_star_attachment(&maximizer));
    let note = others
        .is_empty()
        .then(|| "the family has a single member; the statement holds vacuously".to_string());
    let pass = comparisons.iter().all(|c| c.verdict == Verdict::AGreater) && star_attachment_shape != Some(false);
    Ok(ExtremalReport {
        family: which,
        depth,
        family_size: members.len(),
        maximizer: canon_string(&maximizer),
        comparisons,
        star_attachment_shape,
        note,
        status: if pass { Status::Pass } else { Status::Fail },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureLemma {
    TreeRoot,
    CoredMultiplicity,
    PmDecomposition,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureCase {
    pub hypergraph: String,
    pub detail: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub lemma: StructureLemma,
    pub cases_checked: usize,
    pub failures: Vec<StructureCase>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<StructureCase>,
    pub status: Status,
}

fn weight_vectors(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=max).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Trees with up to three edges: each weighting has exactly one Euler
/// rooting, the one rooting every vertex of `e` exactly `ω(e)` times.
fn tree_root_cases() -> Vec<StructureCase> {
    let mut cases = Vec::new();
    for m in 2..=3 {
        for k in 1..=3 {
            for t in enumerate_hypertrees(m, k) {
                let whole = SubhypergraphClass::whole(&t).expect("connected");
                for omega in weight_vectors(k, 2) {
                    let ws = WeightedSubhypergraph::new(whole.clone(), omega.clone()).expect("valid weights");
                    let rootings = euler_rootings(&ws);
                    let predicted = rootings.len() == 1
                        && rootings[0].counts().len() == k * m
                        && rootings[0]
                            .counts()
                            .iter()
                            .all(|(&(e, _), &c)| c == omega[whole.edges().iter().position(|&x| x == e).unwrap()]);
                    cases.push(StructureCase {
                        hypergraph: canon_string(&t),
                        detail: format!("omega = {omega:?}, {} rooting(s)", rootings.len()),
                        ok: predicted,
                    });
                }
            }
        }
    }
    cases
}

/// Small shapes with arbitrary multiplicities: if the multi-hypergraph is
/// Euler rootable, every edge holding a degree-1 vertex is repeated a
/// multiple of `m` times.
fn cored_multiplicity_cases() -> Vec<StructureCase> {
    let mut corpus: Vec<Hypergraph> = Vec::new();
    for m in 2..=3 {
        for k in 1..=3 {
            corpus.extend(enumerate_hypertrees(m, k));
        }
        corpus.extend(enumerate_unicyclic(m, 3, 3).expect("valid girth"));
        corpus.extend(enumerate_unicyclic(m, 4, 3).expect("valid girth"));
    }
    let mut cases = Vec::new();
    for h in &corpus {
        let m = h.m();
        let whole = SubhypergraphClass::whole(h).expect("connected");
        let degrees = h.degrees();
        let cored: Vec<bool> = whole
            .edges()
            .iter()
            .map(|&e| h.edge(e).iter().any(|&v| degrees[v] == 1))
            .collect();
        let max = if h.edge_count() <= 3 { 2 * m as u64 } else { m as u64 + 1 };
        for mult in weight_vectors(h.edge_count(), max) {
            let rootable = !euler_rootings_with_multiplicities(&whole, &mult)
                .expect("positive multiplicities")
                .is_empty();
            let law = mult.iter().zip(&cored).all(|(&mu, &c)| !c || mu % m as u64 == 0);
            cases.push(StructureCase {
                hypergraph: canon_string(h),
                detail: format!("multiplicities {mult:?}, rootable = {rootable}"),
                ok: !rootable || law,
            });
        }
    }
    cases
}

fn cored_multiplicity_examples() -> Vec<StructureCase> {
    (2..=4)
        .flat_map(|m| {
            let e = Family::Edge.build(m).expect("edge");
            let whole = SubhypergraphClass::whole(&e).expect("connected");
            let rootable = |mu: u64| {
                !euler_rootings_with_multiplicities(&whole, &[mu])
                    .expect("positive")
                    .is_empty()
            };
            let (a, b) = (rootable(m as u64), rootable(m as u64 - 1));
            [StructureCase {
                hypergraph: canon_string(&e),
                detail: format!("multiplicity {m}: rootable = {a}; multiplicity {}: rootable = {b}", m - 1),
                ok: a && !b,
            }]
        })
        .collect()
}

/// Endpoints `u` at which `t` splits as `T'(u) ⊙ Comb(u)`: an edge through
/// `u` whose other vertices each carry exactly one further edge, a pendant.
pub fn comb_sites(t: &Hypergraph) -> Vec<(Vertex, usize)> {
    let inc = t.incidence();
    let degrees = t.degrees();
    let mut sites = Vec::new();
    for (ei, e) in t.edges().iter().enumerate() {
        for &u in e {
            let is_comb = e.iter().filter(|&&v| v != u).all(|&v| {
                degrees[v] == 2
                    && inc[v]
                        .iter()
                        .filter(|&&f| f != ei)
                        .all(|&f| t.edge(f).iter().all(|&x| x == v || degrees[x] == 1))
            });
            if is_comb {
                sites.push((u, ei));
            }
        }
    }
    sites
}

fn pm_decomposition_cases(params: &[(usize, usize)]) -> Vec<StructureCase> {
    let mut cases = Vec::new();
    for &(m, k) in params {
        for t in enumerate_pm_hypertrees(m, k) {
            if t.edge_count() <= 1 {
                continue;
            }
            let sites = comb_sites(&t);
            let matchings = t.count_perfect_matchings();
            cases.push(StructureCase {
                hypergraph: canon_string(&t),
                detail: format!("{} comb site(s), {matchings} perfect matching(s)", sites.len()),
                ok: !sites.is_empty() && matchings == 1,
            });
        }
    }
    cases
}

/// Parameters for the perfect-matching decomposition sweep.
pub const PM_DECOMPOSITION_PARAMS: [(usize, usize); 3] = [(2, 3), (3, 3), (3, 5)];

pub fn check_structure_lemma(which: StructureLemma) -> StructureReport {
    let (cases, examples) = match which {
        StructureLemma::TreeRoot => (tree_root_cases(), Vec::new()),
        StructureLemma::CoredMultiplicity => (cored_multiplicity_cases(), cored_multiplicity_examples()),
        StructureLemma::PmDecomposition => {
            let t32 = t_mt(3, 2).expect("comb tree");
            let sites = comb_sites(&t32);
            let example = StructureCase {
                hypergraph: canon_string(&t32),
                detail: format!("comb sites {sites:?}, {} perfect matching(s)", t32.count_perfect_matchings()),
                ok: sites.len() >= 2 && t32.count_perfect_matchings() == 1,
            };
            (pm_decomposition_cases(&PM_DECOMPOSITION_PARAMS), vec![example])
        }
    };
    let ok = cases.iter().chain(&examples).all(|c| c.ok);
    StructureReport {
        lemma: which,
        cases_checked: cases.len() + examples.len(),
        failures: cases.into_iter().filter(|c| !c.ok).collect(),
        examples,
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub girth: usize,
    pub member: String,
    pub verdict: Verdict,
}

/// Exploratory: `S_{3,z−3}` against every linear unicyclic hypergraph with
/// `z` edges and any girth. Reports comparisons only.
#[derive(Clone, Debug, Serialize)]
pub struct GirthSweep {
    pub m: usize,
    pub z: usize,
    pub depth: usize,
    pub reference: String,
    pub by_girth: BTreeMap<usize, usize>,
    pub entries: Vec<SweepEntry>,
}

pub fn girth_sweep(m: usize, z: usize, depth: Option<usize>) -> Result<GirthSweep> {
    if z < 3 {
        return Err(Error::input("need z ≥ 3"));
    }
    let reference = s_m_n_t(m, 3, z - 3)?;
    let ref_canon = canonical_form(&reference);
    let mut members = Vec::new();
    for g in 3..=z {
        for h in enumerate_unicyclic(m, z, g)? {
            members.push((g, h));
        }
    }
    let depth = depth.unwrap_or_else(|| members.iter().map(|(_, h)| default_depth(h)).max().unwrap_or(4 * m));
    let mut by_girth = BTreeMap::new();
    for (g, _) in &members {
        *by_girth.entry(*g).or_insert(0) += 1;
    }
    let entries: Vec<SweepEntry> = members
        .par_iter()
        .filter(|(_, h)| canonical_form(h) != ref_canon)
        .map(|(g, h)| {
            Ok(SweepEntry {
                girth: *g,
                member: canon_string(h),
                verdict: compare_ee(&reference, h, Some(depth))?.verdict,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GirthSweep {
        m,
        z,
        depth,
        reference: canon_string(&reference),
        by_girth,
        entries,
    })
}
