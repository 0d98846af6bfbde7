//! Exhaustive desk-scale counters.
//!
//! `count_cycle_free` counts loose-cycle-free r-graphs on a labeled vertex
//! set exactly, either by the vertex-count shortcut (a loose k-cycle needs
//! `k(r-1)` vertices) or by sweeping every edge subset as a bitmask against
//! precomputed forbidden cycle masks. The counters refuse parameter ranges
//! they cannot cover exactly; they never approximate.

use std::time::{Duration, Instant};

use itertools::Itertools;
use num::{BigRational, BigUint, FromPrimitive, One, ToPrimitive};
use rayon::prelude::*;

use crate::certificate::loose_cycle_from_edges;
use crate::detect::{find_loose_cycle, SearchBudget};
use crate::{Edge, Error, Hypergraph, Vertex};

/// The result of one exact count.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    /// Named parameters in display order.
    pub params: Vec<(&'static str, u64)>,
    pub count: BigUint,
    /// `log2(count)` to about 1e-15 relative accuracy; `None` for zero.
    pub log2: Option<BigRational>,
    pub elapsed: Duration,
    pub search_nodes: u64,
}

impl CountReport {
    fn new(params: Vec<(&'static str, u64)>, count: BigUint, elapsed: Duration, nodes: u64) -> Self {
        let log2 = log2_rational(&count);
        CountReport { params, count, log2, elapsed, search_nodes: nodes }
    }

    pub fn log2_f64(&self) -> f64 {
        self.log2.as_ref().map_or(f64::NEG_INFINITY, |r| r.to_f64().unwrap())
    }

    /// `count=... log2=...` with six decimals, as printed by the CLI.
    pub fn summary(&self) -> String {
        if self.log2.is_some() {
            format!("count={} log2={:.6}", self.count, self.log2_f64())
        } else {
            format!("count={} log2=-inf", self.count)
        }
    }

    /// Line-delimited record: parameters, count, log2, nodes.
    pub fn record(&self) -> String {
        let params = self.params.iter().map(|(k, v)| format!("{k}={v}")).join(" ");
        format!("{params} {} nodes={}", self.summary(), self.search_nodes)
    }
}

/// Rational approximation of `log2` of a positive integer, from its top
/// 53 bits.
fn log2_rational(count: &BigUint) -> Option<BigRational> {
    if count.is_zero() {
        return None;
    }
    let bits = count.bits();
    let shift = bits.saturating_sub(53);
    let top = (count >> shift).to_u64().expect("53 bits fit in u64");
    let log2 = shift as f64 + (top as f64).log2();
    Some(BigRational::from_f64(log2).unwrap())
}

use num::Zero;

pub fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut num = 1u64;
    for i in 0..r {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// Largest edge-index space the bitmask sweep accepts.
pub const MAX_SWEEP_BITS: u64 = 24;

/// Exact number of loose-k-cycle-free r-graphs on the labeled vertex set
/// `[1, n]`.
///
/// With `n < k(r-1)` no loose k-cycle fits and the closed form `2^C(n,r)`
/// is returned without search. Otherwise every one of the `2^C(n,r)` edge
/// subsets is swept against the forbidden cycle masks, which requires
/// `C(n,r) <= 24` and a node budget covering the sweep.
pub fn count_cycle_free(
    r: usize,
    n: Vertex,
    k: usize,
    budget: &SearchBudget,
) -> Result<CountReport, Error> {
    assert!(k >= 3);
    let start = Instant::now();
    let params = vec![("r", r as u64), ("n", n as u64), ("k", k as u64)];
    if r < 2 || (n as usize) < r {
        return Err(Error::Invalid(format!("bad parameters r={r}, n={n}")));
    }
    if (n as usize) < k * (r - 1) {
        let exponent = binomial(n as u64, r as u64);
        let count = BigUint::one() << exponent;
        return Ok(CountReport::new(params, count, start.elapsed(), 0));
    }
    let m = binomial(n as u64, r as u64);
    if m > MAX_SWEEP_BITS {
        return Err(Error::OutOfBudget(format!(
            "sweep needs 2^{m} masks; the exact regime ends at 2^{MAX_SWEEP_BITS}"
        )));
    }
    let total: u64 = 1 << m;
    if total > budget.node_limit {
        return Err(Error::OutOfBudget(format!(
            "sweep of {total} masks exceeds the node limit {}",
            budget.node_limit
        )));
    }

    let all_edges: Vec<Edge> = (1..=n).combinations(r).collect();
    let cycle_masks = forbidden_cycle_masks(&all_edges, k);
    #[allow(clippy::manual_contains)] // submask test, not membership
    let free = (0u64..total)
        .into_par_iter()
        .filter(|&mask| !cycle_masks.iter().any(|&c| mask & c == c))
        .count() as u64;
    Ok(CountReport::new(params, BigUint::from(free), start.elapsed(), total))
}

/// Bitmasks (over the given edge ordering) of every k-subset of edges that
/// forms a loose k-cycle.
pub fn forbidden_cycle_masks(all_edges: &[Edge], k: usize) -> Vec<u64> {
    (0..all_edges.len())
        .combinations(k)
        .filter_map(|tuple| {
            let edges: Vec<Edge> = tuple.iter().map(|&i| all_edges[i].clone()).collect();
            loose_cycle_from_edges(&edges)?;
            Some(tuple.iter().fold(0u64, |acc, &i| acc | 1 << i))
        })
        .collect()
}

/// Exact number of pairs (complete bipartite graph with parts of sizes s
/// and t inside `[1, n]`, total edge coloring) whose 3-uniform extension
/// contains no loose k-cycle. Bipartitions are unordered: for `s = t` each
/// `{A, B}` pair is counted once.
///
/// Refuses ranges beyond `s*t <= 9`, `n <= 8` where the full sweep over
/// `(n-2)^(s*t)` colorings stops being exact desk work.
pub fn count_colored_bicliques(
    n: Vertex,
    k: usize,
    s: usize,
    t: usize,
) -> Result<CountReport, Error> {
    assert!(k >= 3);
    assert!(s >= 1 && t >= 1);
    let start = Instant::now();
    let params = vec![("n", n as u64), ("k", k as u64), ("s", s as u64), ("t", t as u64)];
    if s * t > 9 || n > 8 {
        return Err(Error::OutOfBudget(format!(
            "coloring sweep is exact only for s*t <= 9 and n <= 8, got s*t = {} and n = {n}",
            s * t
        )));
    }
    if s + t > n as usize {
        return Ok(CountReport::new(params, BigUint::zero(), start.elapsed(), 0));
    }

    let verts: Vec<Vertex> = (1..=n).collect();
    let mut placements: Vec<(Vec<Vertex>, Vec<Vertex>)> = Vec::new();
    for a in verts.iter().copied().combinations(s) {
        let rest: Vec<Vertex> = verts.iter().copied().filter(|v| !a.contains(v)).collect();
        for b in rest.iter().copied().combinations(t) {
            if s == t && b < a {
                continue;
            }
            placements.push((a.clone(), b));
        }
    }

    let oracle = SearchBudget::unbounded();
    let mut nodes = 0u64;
    let mut count = BigUint::zero();
    for (a, b) in &placements {
        let pairs: Vec<(Vertex, Vertex)> =
            a.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).collect();
        let choices: Vec<Vec<Vertex>> = pairs
            .iter()
            .map(|&(u, v)| (1..=n).filter(|&c| c != u && c != v).collect())
            .collect();
        // mixed-radix sweep over all colorings
        let mut digits = vec![0usize; pairs.len()];
        loop {
            nodes += 1;
            let mut ext: Vec<Edge> = Vec::with_capacity(pairs.len());
            for (i, &(u, v)) in pairs.iter().enumerate() {
                let mut e = vec![u, v, choices[i][digits[i]]];
                e.sort_unstable();
                ext.push(e);
            }
            ext.sort();
            ext.dedup();
            let extension = Hypergraph::new(3, n, ext).expect("extension triples are valid");
            let found = find_loose_cycle(&extension, k, &oracle)
                .expect("unbounded search cannot exhaust");
            if found.is_none() {
                count += BigUint::one();
            }

            let mut i = 0;
            loop {
                if i == digits.len() {
                    break;
                }
                digits[i] += 1;
                if digits[i] < choices[i].len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    Ok(CountReport::new(params, count, start.elapsed(), nodes))
}

/// One row of the growth table.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: Vertex,
    pub report: CountReport,
    /// Edges meeting a fixed set of `floor((k-1)/2)` vertices:
    /// `C(n,r) - C(n - floor((k-1)/2), r)`. Such graphs are cycle-free, so
    /// this is a lower bound for `log2` of the count.
    pub lower_bound_exponent: u64,
    pub bound_ok: bool,
}

/// Exact counts for a range of n, with the lower-bound column and its check.
pub fn growth_table(
    r: usize,
    k: usize,
    ns: std::ops::RangeInclusive<Vertex>,
    budget: &SearchBudget,
) -> Result<Vec<GrowthRow>, Error> {
    let mut rows = Vec::new();
    for n in ns {
        let report = count_cycle_free(r, n, k, budget)?;
        let w = ((k - 1) / 2) as u64;
        let lower = binomial(n as u64, r as u64) - binomial((n as u64).saturating_sub(w), r as u64);
        let bound_ok = report.count >= (BigUint::one() << lower);
        rows.push(GrowthRow { n, report, lower_bound_exponent: lower, bound_ok });
    }
    Ok(rows)
}
