//! Certified truncations of `EE = Σ_d Tr_d / d!`.
//!
//! Every eigenvalue satisfies `|λ| ≤ ρ ≤ Δ` (maximum degree), so
//! `Tr_d ≤ N Δ^d` and the tail past `D` is at most
//! `N Δ^{D+1}/(D+1)! · 1/(1 − Δ/(D+2))` once `D + 2 > Δ`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{factorial, ExactRational};
use crate::trace::{eigenvalue_count, trace};

/// Digits after the decimal point in rendered bounds.
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedValue {
    pub partial_sum: ExactRational,
    pub tail_bound: ExactRational,
    pub depth: usize,
}

impl CertifiedValue {
    pub fn lower(&self) -> &ExactRational {
        &self.partial_sum
    }

    pub fn upper(&self) -> ExactRational {
        &self.partial_sum + &self.tail_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        self.partial_sum.to_f64() <= x && x <= self.upper().to_f64()
    }
}

/// Bounds as exact fractions and as decimals rounded outward.
#[derive(Clone, Debug, Serialize)]
pub struct EstradaReport {
    pub lower: String,
    pub upper: String,
    pub exact_lower: ExactRational,
    pub exact_upper: ExactRational,
    #[serde(rename = "D")]
    pub depth: usize,
    pub rounding: &'static str,
}

impl From<&CertifiedValue> for EstradaReport {
    fn from(c: &CertifiedValue) -> Self {
        let upper = c.upper();
        EstradaReport {
            lower: c.partial_sum.to_decimal(DECIMAL_DIGITS, false),
            upper: upper.to_decimal(DECIMAL_DIGITS, true),
            exact_lower: c.partial_sum.clone(),
            exact_upper: upper,
            depth: c.depth,
            rounding: "lower rounded down, upper rounded up",
        }
    }
}

/// `N Δ^{D+1}/(D+1)! · (D+2)/(D+2−Δ)`.
pub fn tail_bound(h: &Hypergraph, depth: usize) -> Result<ExactRational> {
    let delta = h.max_degree();
    if delta == 0 {
        return Ok(ExactRational::zero());
    }
    if depth + 2 <= delta {
        return Err(Error::input(format!(
            "depth {depth} too small for the tail bound; need D > {}",
            delta - 2
        )));
    }
    let n = ExactRational::from(eigenvalue_count(h));
    let head = ExactRational::from_integer(BigInt::from(delta).pow(depth as u32 + 1))
        / ExactRational::from(factorial(depth + 1));
    let geo = ExactRational::new(depth as i64 + 2, (depth + 2 - delta) as i64);
    Ok(n * head * geo)
}

/// Terms with `d ≤ depth` summed exactly, plus the tail bound.
///
/// For `m ≥ 3` only multiples of `m` contribute. Graphs keep every `d`,
/// since odd cycles give nonzero odd traces.
pub fn estrada_truncated(h: &Hypergraph, depth: usize) -> Result<CertifiedValue> {
    let m = h.m();
    if depth < m {
        return Err(Error::input(format!("depth must be at least m = {m}")));
    }
    let tail = tail_bound(h, depth)?;
    let ds: Vec<usize> = (0..=depth).filter(|d| m == 2 || d % m == 0).collect();
    let terms: Vec<ExactRational> = ds
        .par_iter()
        .map(|&d| trace(h, d).map(|t| t / ExactRational::from(factorial(d))))
        .collect::<Result<_>>()?;
    Ok(CertifiedValue {
        partial_sum: terms.into_iter().sum(),
        tail_bound: tail,
        depth,
    })
}

/// Tail bounds at the default depth are at most this.
pub fn default_tail_target() -> ExactRational {
    ExactRational::new(1, 1_000_000_000)
}

/// Smallest multiple of `m` that is at least `max(4m, 2Δ + 8)` and whose
/// tail bound is at most `10⁻⁹`.
pub fn default_depth(h: &Hypergraph) -> usize {
    let m = h.m();
    let floor = (4 * m).max(2 * h.max_degree() + 8);
    let mut depth = floor.div_ceil(m) * m;
    let target = default_tail_target();
    while tail_bound(h, depth).expect("depth exceeds 2Δ") > target {
        depth += m;
    }
    depth
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    AGreater,
    BGreater,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub a: CertifiedValue,
    pub b: CertifiedValue,
}

/// Certified comparison at a shared depth (default: the larger of the two
/// default depths). Never reports equality.
pub fn compare_ee(a: &Hypergraph, b: &Hypergraph, depth: Option<usize>) -> Result<Comparison> {
    let depth = depth.unwrap_or_else(|| default_depth(a).max(default_depth(b)));
    let (ca, cb) = rayon::join(|| estrada_truncated(a, depth), || estrada_truncated(b, depth));
    let (ca, cb) = (ca?, cb?);
    let verdict = if ca.partial_sum > cb.upper() {
        Verdict::AGreater
    } else if cb.partial_sum > ca.upper() {
        Verdict::BGreater
    } else {
        Verdict::Inconclusive
    };
    Ok(Comparison { verdict, a: ca, b: cb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hyperpath, hyperstar, loose_cycle};

    #[test]
    fn k2_interval() {
        let k2 = hyperpath(2, 1).unwrap();
        let c = estrada_truncated(&k2, 20).unwrap();
        let ee = 1f64.exp() + (-1f64).exp();
        assert!(c.contains(ee));
    }

    #[test]
    fn triangle_interval() {
        let c3 = loose_cycle(2, 3).unwrap();
        let c = estrada_truncated(&c3, 24).unwrap();
        let ee = 2f64.exp() + 2.0 * (-1f64).exp();
        assert!(c.contains(ee));
    }

    #[test]
    fn single_edge_partial_sum_starts_at_n() {
        let e = hyperpath(3, 1).unwrap();
        let c = estrada_truncated(&e, 3).unwrap();
        // Tr_0 = 3 · 2² = 12, Tr_3 = 9
        assert_eq!(c.partial_sum, ExactRational::new(12 * 6 + 9, 6));
    }

    #[test]
    fn depth_too_small() {
        let s = hyperstar(3, 9).unwrap();
        assert!(estrada_truncated(&s, 6).is_err());
    }

    #[test]
    fn identical_inputs_inconclusive() {
        let p = hyperpath(3, 2).unwrap();
        assert_eq!(compare_ee(&p, &p, Some(12)).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn default_depth_is_multiple_of_m() {
        for h in [hyperpath(3, 3).unwrap(), hyperstar(4, 3).unwrap(), loose_cycle(2, 4).unwrap()] {
            let d = default_depth(&h);
            assert_eq!(d % h.m(), 0);
            assert!(d >= 4 * h.m());
            assert!(tail_bound(&h, d).unwrap() <= default_tail_target());
        }
    }
}
