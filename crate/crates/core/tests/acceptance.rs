//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails other than those listed in
//! `KNOWN_FAILURES`, which cannot hold together with the rest of the suite.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use hypertrace::enumerate::SubhypergraphClass;
use hypertrace::estrada::{default_depth, estrada_truncated};
use hypertrace::families::{hyperpath, hyperstar, loose_cycle};
use hypertrace::oracle::{c_h_oracle, matrix_power_trace, trace_bruteforce, Budget};
use hypertrace::trace::{c_unicyclic, factorial_inequality_check, omega_cycle, trace, WeightedSubhypergraph};
use hypertrace::verify::{
    bundled_instances, check_extremal_theorem, check_perturbation, check_structure_lemma, ExtremalFamily, Status,
    StructureLemma,
};
use hypertrace::{enumerate, ExactRational, Hypergraph};

/// Odd closed walks exist in odd-girth graphs, so the zero law cannot hold
/// for m = 2 while criterion 1 holds.
const KNOWN_FAILURES: &[usize] = &[4];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    /// A failure is tolerated only when it has the documented cause.
    known_cause: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        known_cause: false,
        detail: detail.into(),
    }
}

fn graph_ground_truth() -> Outcome {
    let graphs = common::small_graphs(6);
    let mut mismatches = Vec::new();
    for h in &graphs {
        for d in 0..=10 {
            let exact = ExactRational::from_integer(matrix_power_trace(h, d).unwrap());
            if trace(h, d).ok() != Some(exact) {
                mismatches.push(format!("{:?} d={d}", h.edges()));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{} graphs x d<=10 against matrix powers, {} mismatches {:?}", graphs.len(), mismatches.len(), mismatches),
    )
}

fn three_uniform_oracle_equivalence() -> Outcome {
    let (trees, cyclic) = common::three_uniform_corpus();
    let budget = Budget::default();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let cases = trees
        .iter()
        .flat_map(|h| [3, 6, 9].map(|d| (h, d)))
        .chain(cyclic.iter().flat_map(|h| [3, 6].map(|d| (h, d))));
    for (h, d) in cases {
        checked += 1;
        let closed = trace(h, d);
        let brute = trace_bruteforce(h, d, &budget);
        match (closed, brute) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => mismatches.push(format!("{:?} d={d}: {a:?} vs {b:?}", h.edges())),
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} cases exact, mismatches {mismatches:?}"))
}

fn single_edge_law() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for m in 2..=5usize {
        let e = hyperpath(m, 1).unwrap();
        let expected = ExactRational::from_integer((m as i64).pow(m as u32 - 1));
        let closed = trace(&e, m).unwrap();
        let brute = trace_bruteforce(&e, m, &Budget::default()).unwrap();
        pass &= closed == expected && brute == expected;
        parts.push(format!("m={m}: {closed}"));
    }
    outcome(pass, parts.join(", "))
}

fn zero_law() -> Outcome {
    let (trees, cyclic) = common::three_uniform_corpus();
    let mut corpus = common::small_graphs(6);
    corpus.extend(trees);
    corpus.extend(cyclic);
    for k in 1..=3 {
        corpus.extend(enumerate::enumerate_hypertrees(4, k));
    }
    corpus.push(loose_cycle(4, 3).unwrap());
    corpus.push(loose_cycle(3, 4).unwrap());
    let mut checked = 0;
    let mut violations: Vec<(Hypergraph, usize)> = Vec::new();
    for h in &corpus {
        for d in (1..=12).filter(|d| d % h.m() != 0) {
            checked += 1;
            if !trace(h, d).unwrap().is_zero() {
                violations.push((h.clone(), d));
            }
        }
    }
    let all_odd_girth_graphs = violations
        .iter()
        .all(|(h, d)| h.m() == 2 && d % 2 == 1 && h.girth().is_some_and(|g| g % 2 == 1));
    let example = violations
        .first()
        .map(|(h, d)| format!("; e.g. {:?} d={d} gives {}", h.edges(), trace(h, *d).unwrap()))
        .unwrap_or_default();
    let detail = format!(
        "{checked} cases, {} nonzero{}{}",
        violations.len(),
        if violations.is_empty() {
            ""
        } else if all_odd_girth_graphs {
            " (all are odd closed walks in odd-girth graphs, m = 2)"
        } else {
            " (including hypergraphs other than odd-girth graphs)"
        },
        example
    );
    Outcome {
        pass: violations.is_empty(),
        known_cause: all_odd_girth_graphs,
        detail,
    }
}

fn omega_kernel() -> Outcome {
    let omega = omega_cycle(&[1, 1, 1]).unwrap();
    let c = loose_cycle(3, 3).unwrap();
    let mut pass = omega == ExactRational::from_integer(4);
    let mut parts = vec![format!("omega(1,1,1)={omega}")];
    for w in [vec![1, 1, 1], vec![2, 1, 1], vec![2, 2, 1]] {
        let ws = WeightedSubhypergraph::new(SubhypergraphClass::whole(&c).unwrap(), w.clone()).unwrap();
        let (closed, oracle) = (c_unicyclic(&ws).unwrap(), c_h_oracle(&ws));
        pass &= closed == oracle;
        parts.push(format!("{w:?}: {closed} vs {oracle}"));
    }
    outcome(pass, parts.join(", "))
}

fn factorial_grid() -> Outcome {
    let mut cases = 0;
    let mut failures = 0;
    for x in 1..=6 {
        for y in 1..=6 {
            for a in 0..=6 {
                for b in 0..=6 {
                    cases += 1;
                    failures += usize::from(!factorial_inequality_check(x, y, a, b));
                }
            }
        }
    }
    outcome(cases == 1764 && failures == 0, format!("{cases} cases, {failures} false"))
}

fn perturbation_suite() -> Outcome {
    let lib = bundled_instances();
    let mut per_lemma = std::collections::BTreeMap::<&str, (usize, usize)>::new();
    let mut failures = Vec::new();
    for inst in &lib {
        let m = inst.m;
        let key = match inst.construction.lemma() {
            "6.2(1)" | "6.2(2)" => "6.2",
            other => other,
        };
        let entry = per_lemma.entry(key).or_default();
        entry.0 += 1;
        match check_perturbation(inst, Some(&[m, 2 * m, 3 * m])) {
            Ok(r) if r.status == Status::Pass => entry.1 += 1,
            Ok(r) => failures.push(format!("{} {}", r.lemma, r.name)),
            Err(e) => failures.push(format!("{}: {e}", inst.name)),
        }
    }
    let required = ["3.3", "4.4", "5.1", "6.2", "6.3", "6.4", "6.5"];
    let covered = required.iter().all(|l| per_lemma.get(l).is_some_and(|&(_, passed)| passed >= 2));
    let summary: Vec<String> = per_lemma.iter().map(|(l, (n, p))| format!("{l}:{p}/{n}")).collect();
    outcome(
        covered && failures.is_empty(),
        format!("{} failures {:?}", summary.join(" "), failures),
    )
}

fn extremal_theorems() -> Outcome {
    let families = [
        ExtremalFamily::PmHypertrees { m: 2, k: 3 },
        ExtremalFamily::PmHypertrees { m: 3, k: 3 },
        ExtremalFamily::UnicyclicGirth3 { m: 2, z: 4 },
        ExtremalFamily::UnicyclicGirth3 { m: 3, z: 4 },
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for f in families {
        match check_extremal_theorem(f, None) {
            Ok(r) => {
                pass &= r.status == Status::Pass;
                let vacuous = if r.family_size == 1 { " vacuous" } else { "" };
                parts.push(format!("{f:?}: {:?} ({} members, D={}{vacuous})", r.status, r.family_size, r.depth));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{f:?}: error {e}"));
            }
        }
    }
    outcome(pass, parts.join("; "))
}

fn estrada_certification() -> Outcome {
    let g = |n: usize, edges: &[[usize; 2]]| Hypergraph::new(2, n, edges.iter().map(|e| e.to_vec()).collect()).unwrap();
    let cases = [
        ("K2", hyperpath(2, 1).unwrap()),
        ("P3", g(3, &[[0, 1], [1, 2]])),
        ("C3", loose_cycle(2, 3).unwrap()),
        ("C4", loose_cycle(2, 4).unwrap()),
        ("S4", hyperstar(2, 3).unwrap()),
    ];
    // Slack for the floating-point eigenvalue computation.
    let slack = 1e-12;
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, h) in cases {
        let depth = default_depth(&h);
        let cv = estrada_truncated(&h, depth).unwrap();
        let ee = common::estrada_by_eigenvalues(&h);
        let lower = cv.lower().to_f64();
        let upper = cv.upper().to_f64();
        let width = upper - lower;
        let ok = lower <= ee + slack && ee <= upper + slack && width <= 1e-6;
        pass &= ok;
        parts.push(format!("{name}: EE={ee:.6} D={depth} width={width:.1e}"));
    }
    outcome(pass, parts.join(", "))
}

fn structure_lemmas() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for which in [StructureLemma::TreeRoot, StructureLemma::CoredMultiplicity, StructureLemma::PmDecomposition] {
        let r = check_structure_lemma(which);
        pass &= r.status == Status::Pass;
        parts.push(format!("{which:?}: {:?} ({} cases)", r.status, r.cases_checked));
    }
    outcome(pass, parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("graph traces equal matrix-power traces", graph_ground_truth),
        ("3-uniform closed form equals brute force", three_uniform_oracle_equivalence),
        ("single-edge trace is m^(m-1)", single_edge_law),
        ("trace vanishes when m does not divide d", zero_law),
        ("cycle kernel and unicyclic coefficients", omega_kernel),
        ("factorial inequality grid", factorial_grid),
        ("perturbation lemmas", perturbation_suite),
        ("extremal theorems at small scale", extremal_theorems),
        ("certified Estrada intervals for small graphs", estrada_certification),
        ("structure lemmas", structure_lemmas),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let tolerated = KNOWN_FAILURES.contains(&n) && o.known_cause;
        let known = if !o.pass && tolerated { " [known]" } else { "" };
        println!("{tag} criterion {n}: {title}{known} [{secs:.2}s] {}", o.detail);
        if o.pass {
            passed += 1;
        } else if !tolerated {
            unexpected.push(n);
        }
    }
    println!("acceptance: {passed}/{} criteria pass; unexpected failures: {unexpected:?}", criteria.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
