//! Cycle and path finders.
//!
//! `find_loose_cycle` is the exact, budgeted oracle: with an unbounded budget
//! it exhausts a symmetry-reduced search space and its `None` answers are
//! definitive. `loose_cycle_via_codegree` is the constructive finder that
//! never backtracks but requires every sub-edge to have codegree above `r*k`.
//! The remaining finders work on 2-uniform hosts and feed the bipartite
//! Ramsey machinery.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::certificate::{GraphCycleCertificate, LooseCycleCertificate};
use crate::hypergraph::edge_intersection;
use crate::{Edge, EdgeColoredGraph, Error, Hypergraph, Rainbowness, Vertex};

/// Limits for backtracking searches plus the seed for randomized phases.
///
/// For `find_loose_cycle` the node limit applies per root branch (one branch
/// per candidate first edge), which keeps outcomes independent of how
/// branches are scheduled. The seed is unused by the exact searcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub seed: u64,
}

impl SearchBudget {
    pub fn unbounded() -> Self {
        SearchBudget { node_limit: u64::MAX, seed: 0 }
    }

    pub fn with_limit(node_limit: u64) -> Self {
        assert!(node_limit > 0, "node limit must be positive");
        SearchBudget { node_limit, seed: 0 }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::unbounded()
    }
}

/// Exact loose-k-cycle search by backtracking over edge sequences.
///
/// Symmetry is broken by rooting the cycle at its lexicographically smallest
/// edge and orienting it so the second edge precedes the last one; rotations
/// and reflections are never revisited. Within a branch candidates are tried
/// in lexicographic order, so the returned certificate is deterministic.
///
/// Returns `Ok(None)` only after exhausting the reduced space. If any branch
/// hits the node limit first and no cycle was found, the search reports
/// `Err(Error::BudgetExhausted)` instead of claiming absence.
pub fn find_loose_cycle(
    h: &Hypergraph,
    k: usize,
    budget: &SearchBudget,
) -> Result<Option<LooseCycleCertificate>, Error> {
    assert!(k >= 3, "loose cycles need at least 3 edges");
    let edges: Vec<&Edge> = h.edges().iter().collect();
    if edges.len() < k {
        return Ok(None);
    }
    let mut any_exhausted = false;
    for root in 0..edges.len() {
        let mut search = ExactSearch {
            edges: &edges,
            k,
            limit: budget.node_limit,
            nodes: 0,
            used: vec![false; h.vertex_bound() as usize + 1],
            path: Vec::with_capacity(k),
            connectors: Vec::with_capacity(k),
        };
        for &v in edges[root] {
            search.used[v as usize] = true;
        }
        search.path.push(root);
        match search.extend() {
            Branch::Found => {
                let cert = LooseCycleCertificate {
                    edges: search.path.iter().map(|&i| edges[i].clone()).collect(),
                    connectors: search.connectors.clone(),
                };
                return Ok(Some(cert));
            }
            Branch::NotFound => {}
            Branch::Exhausted => any_exhausted = true,
        }
    }
    if any_exhausted {
        Err(Error::BudgetExhausted)
    } else {
        Ok(None)
    }
}

enum Branch {
    Found,
    NotFound,
    Exhausted,
}

struct ExactSearch<'a> {
    edges: &'a [&'a Edge],
    k: usize,
    limit: u64,
    nodes: u64,
    used: Vec<bool>,
    path: Vec<usize>,
    connectors: Vec<Vertex>,
}

impl ExactSearch<'_> {
    fn extend(&mut self) -> Branch {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Branch::Exhausted;
        }
        let depth = self.path.len();
        let root = self.path[0];
        let last = self.edges[self.path[depth - 1]];
        let closing = depth == self.k - 1;
        let mut exhausted = false;
        for cand in root + 1..self.edges.len() {
            let e = self.edges[cand];
            let step = if closing {
                self.closing_step(e, cand)
            } else {
                self.chain_step(e)
            };
            let Some(news) = step else { continue };
            for &v in e {
                self.used[v as usize] = true;
            }
            self.path.push(cand);
            let before = self.connectors.len();
            self.connectors.extend(news.iter().copied());
            if closing {
                return Branch::Found;
            }
            match self.extend() {
                Branch::Found => return Branch::Found,
                Branch::Exhausted => exhausted = true,
                Branch::NotFound => {}
            }
            self.connectors.truncate(before);
            self.path.pop();
            for &v in e {
                if !self.edges[self.path[depth - 1]].contains(&v) {
                    self.used[v as usize] = false;
                }
            }
            let _ = last;
        }
        if exhausted {
            Branch::Exhausted
        } else {
            Branch::NotFound
        }
    }

    /// Admissibility of `e` as the next (non-closing) edge: it meets the
    /// previous edge in exactly one fresh connector and is otherwise disjoint
    /// from the partial path.
    fn chain_step(&self, e: &Edge) -> Option<Vec<Vertex>> {
        let last = self.edges[*self.path.last().unwrap()];
        let inter = edge_intersection(e, last);
        if inter.len() != 1 {
            return None;
        }
        let v = inter[0];
        if self.connectors.contains(&v) {
            return None;
        }
        if e.iter().any(|&u| u != v && self.used[u as usize]) {
            return None;
        }
        Some(vec![v])
    }

    /// Admissibility of `e` as the closing edge: one fresh connector with the
    /// previous edge, one with the first edge, nothing else touched, and the
    /// reflection-breaking order on the second vs last edge.
    fn closing_step(&self, e: &Edge, cand: usize) -> Option<Vec<Vertex>> {
        if self.path.len() >= 2 && cand < self.path[1] {
            return None;
        }
        let last = self.edges[*self.path.last().unwrap()];
        let first = self.edges[self.path[0]];
        let with_last = edge_intersection(e, last);
        if with_last.len() != 1 {
            return None;
        }
        let u = with_last[0];
        if self.connectors.contains(&u) {
            return None;
        }
        let with_first = edge_intersection(e, first);
        if with_first.len() != 1 {
            return None;
        }
        let w = with_first[0];
        if w == u || self.connectors.contains(&w) {
            return None;
        }
        if e.iter().any(|&x| x != u && x != w && self.used[x as usize]) {
            return None;
        }
        Some(vec![u, w])
    }
}

/// Constructive loose-k-cycle finder for hosts whose every sub-edge has
/// codegree above `r*k`.
///
/// Phase 1 grows a graph k-cycle in the 2-shadow by repeatedly replacing an
/// edge with two sides of a fresh triangle. Phase 2 lifts the cycle into the
/// host by completing each pair to a full edge and swapping out clashing
/// vertices through the high codegree until the lift is loose. All choices
/// take the lexicographically smallest valid option.
pub fn loose_cycle_via_codegree(h: &Hypergraph, k: usize) -> Result<LooseCycleCertificate, Error> {
    assert!(k >= 3, "loose cycles need at least 3 edges");
    let r = h.uniformity();
    assert!(r >= 3, "the codegree construction needs uniformity at least 3");
    if h.is_empty() {
        return Err(Error::Precondition("the hypergraph has no edges".into()));
    }
    let threshold = r * k;
    for s in h.shadow() {
        let d = h.codegree(&s);
        if d <= threshold {
            return Err(Error::Precondition(format!(
                "sub-edge {s:?} has codegree {d} <= {threshold}"
            )));
        }
    }

    // Phase 1: a k-cycle in the 2-shadow, as a vertex sequence.
    let pairs = h.two_shadow();
    let first_pair = pairs.iter().next().expect("nonempty hypergraph has pairs").clone();
    let apex = *apexes(h, first_pair[0], first_pair[1])
        .iter()
        .next()
        .expect("every pair extends to an edge");
    let mut cycle: Vec<Vertex> = vec![first_pair[0], first_pair[1], apex];
    while cycle.len() < k {
        let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
        // lexicographically smallest cycle edge, as a sorted pair
        let m = cycle.len();
        let (at, _) = (0..m)
            .map(|i| {
                let mut p = vec![cycle[i], cycle[(i + 1) % m]];
                p.sort_unstable();
                (i, p)
            })
            .min_by(|a, b| a.1.cmp(&b.1))
            .unwrap();
        let (x, y) = (cycle[at], cycle[(at + 1) % m]);
        let fresh = apexes(h, x, y)
            .into_iter()
            .find(|v| !on_cycle.contains(v))
            .expect("codegree above r*k leaves an apex off the cycle");
        cycle.insert(at + 1, fresh);
    }

    // Phase 2: lift each cycle pair to a host edge, then repair overlaps.
    let skeleton: Vec<Edge> = (0..k)
        .map(|i| {
            let mut p = vec![cycle[i], cycle[(i + 1) % k]];
            p.sort_unstable();
            p
        })
        .collect();
    let mut lifted: Vec<Edge> = skeleton
        .iter()
        .map(|f| {
            h.edges()
                .iter()
                .filter(|e| f.iter().all(|v| e.binary_search(v).is_ok()))
                .min()
                .expect("cycle pairs come from the 2-shadow")
                .clone()
        })
        .collect();
    let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let mut guard = 0usize;
    loop {
        guard += 1;
        if guard > k * r + 2 {
            return Err(Error::Contradiction(
                "overlap repair failed to terminate; the codegree bound must be wrong".into(),
            ));
        }
        let Some((p, v)) = find_overlap(&lifted, &skeleton, &on_cycle) else { break };
        let sub: Edge = lifted[p].iter().copied().filter(|&u| u != v).collect();
        let covered: BTreeSet<Vertex> = lifted.iter().flatten().copied().collect();
        let fresh = h
            .neighborhood(&sub)
            .into_iter()
            .find(|u| !covered.contains(u))
            .ok_or_else(|| {
                Error::Contradiction("no fresh vertex despite codegree above r*k".into())
            })?;
        let mut e = sub;
        e.push(fresh);
        e.sort_unstable();
        lifted[p] = e;
    }

    let mut connectors: Vec<Vertex> = (1..k).map(|i| cycle[i]).collect();
    connectors.push(cycle[0]);
    Ok(LooseCycleCertificate { edges: lifted, connectors })
}

/// Vertices forming a triangle with the pair `{a, b}` in the 2-shadow:
/// anything that shares a host edge with both.
fn apexes(h: &Hypergraph, a: Vertex, b: Vertex) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::new();
    for e in h.edges() {
        if e.binary_search(&a).is_ok() && e.binary_search(&b).is_ok() {
            out.extend(e.iter().copied().filter(|&v| v != a && v != b));
        }
    }
    out
}

/// First vertex of a lifted edge that clashes: it lies outside that edge's
/// skeleton pair yet appears on the cycle or in another lifted edge.
fn find_overlap(
    lifted: &[Edge],
    skeleton: &[Edge],
    on_cycle: &BTreeSet<Vertex>,
) -> Option<(usize, Vertex)> {
    for (p, e) in lifted.iter().enumerate() {
        for &v in e {
            if skeleton[p].contains(&v) {
                continue;
            }
            let clashes = on_cycle.contains(&v)
                || lifted.iter().enumerate().any(|(q, other)| q != p && other.contains(&v));
            if clashes {
                return Some((p, v));
            }
        }
    }
    None
}

/// Finds a cycle of length congruent to 2 modulo `modulus` in a graph.
///
/// Peels vertices of degree at most `modulus`, then takes a non-extendable
/// path in the remaining core and closes a cycle through the start vertex:
/// either directly (a neighbor at distance 0 mod `modulus` from the second
/// vertex) or via the pigeonhole over distance residues. Succeeds whenever
/// the core is nonempty, which is guaranteed at `(modulus+1)*n` edges.
pub fn find_cycle_two_mod(g: &Hypergraph, modulus: u32) -> Option<GraphCycleCertificate> {
    assert_eq!(g.uniformity(), 2, "cycle residues are on graphs");
    assert!(modulus >= 2);
    let mut adj = g.adjacency();

    // peel low-degree vertices
    loop {
        let doomed: Vec<Vertex> = adj
            .iter()
            .filter(|(_, ns)| ns.len() <= modulus as usize)
            .map(|(&v, _)| v)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for v in doomed {
            if let Some(ns) = adj.remove(&v) {
                for u in ns {
                    if let Some(set) = adj.get_mut(&u) {
                        set.remove(&v);
                    }
                }
            }
        }
    }
    if adj.is_empty() {
        return None;
    }

    let path = if adj.len() < 20 { exact_longest_path(&adj) } else { greedy_maximal_path(&adj) };
    let x0 = path[0];
    let neighbors = &adj[&x0];
    debug_assert!(
        neighbors.iter().all(|v| path.contains(v)),
        "path start must not be extendable"
    );

    let hits: Vec<usize> = (1..path.len()).filter(|&i| neighbors.contains(&path[i])).collect();
    // direct closure: distance from the second vertex divisible by the modulus
    for &i in &hits {
        if i != 1 && (i - 1) % modulus as usize == 0 {
            return Some(GraphCycleCertificate { vertices: path[..=i].to_vec() });
        }
    }
    // pigeonhole over residues of those distances
    let mut first_at: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &hits {
        if i == 1 {
            continue;
        }
        let res = (i - 1) % modulus as usize;
        if let Some(&i1) = first_at.get(&res) {
            let mut vs = vec![path[0]];
            vs.extend_from_slice(&path[i1..=i]);
            return Some(GraphCycleCertificate { vertices: vs });
        }
        first_at.insert(res, i);
    }
    unreachable!("min degree above the modulus forces a residue collision");
}

/// Longest simple path by dynamic programming over vertex subsets.
/// Only used for cores below 20 vertices.
fn exact_longest_path(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>) -> Vec<Vertex> {
    let verts: Vec<Vertex> = adj.keys().copied().collect();
    let m = verts.len();
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj_mask: Vec<u32> = verts
        .iter()
        .map(|v| adj[v].iter().fold(0u32, |acc, u| acc | 1 << index[u]))
        .collect();

    let mut reach = vec![0u32; 1 << m];
    for i in 0..m {
        reach[1 << i] = 1 << i;
    }
    let (mut best_mask, mut best_end, mut best_count) = (1u32, 0usize, 1u32);
    for mask in 1u32..(1 << m) {
        let ends = reach[mask as usize];
        if ends == 0 {
            continue;
        }
        let count = mask.count_ones();
        if count > best_count {
            best_count = count;
            best_mask = mask;
            best_end = ends.trailing_zeros() as usize;
        }
        let mut rem = ends;
        while rem != 0 {
            let v = rem.trailing_zeros() as usize;
            rem &= rem - 1;
            let mut ext = adj_mask[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                reach[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }

    // walk the path backwards from its end
    let mut order = Vec::with_capacity(best_count as usize);
    let (mut mask, mut v) = (best_mask, best_end);
    loop {
        order.push(verts[v]);
        let prev = mask & !(1 << v);
        if prev == 0 {
            break;
        }
        let preds = reach[prev as usize] & adj_mask[v];
        debug_assert!(preds != 0, "reachability table is inconsistent");
        mask = prev;
        v = preds.trailing_zeros() as usize;
    }
    order.reverse();
    order
}

/// Deterministic maximal path: extend both ends greedily, then apply
/// improving rotations while they unlock further extensions. The returned
/// path cannot be extended at its front, which is the property the residue
/// argument needs.
fn greedy_maximal_path(adj: &BTreeMap<Vertex, BTreeSet<Vertex>>) -> Vec<Vertex> {
    let start = *adj.keys().next().unwrap();
    let mut path: VecDeque<Vertex> = VecDeque::from([start]);
    let mut on_path: BTreeSet<Vertex> = BTreeSet::from([start]);
    let extend_front = |path: &mut VecDeque<Vertex>, on_path: &mut BTreeSet<Vertex>| -> bool {
        let head = *path.front().unwrap();
        if let Some(&v) = adj[&head].iter().find(|v| !on_path.contains(v)) {
            path.push_front(v);
            on_path.insert(v);
            true
        } else {
            false
        }
    };
    let extend_back = |path: &mut VecDeque<Vertex>, on_path: &mut BTreeSet<Vertex>| -> bool {
        let tail = *path.back().unwrap();
        if let Some(&v) = adj[&tail].iter().find(|v| !on_path.contains(v)) {
            path.push_back(v);
            on_path.insert(v);
            true
        } else {
            false
        }
    };

    let mut rotations = 0usize;
    loop {
        while extend_front(&mut path, &mut on_path) || extend_back(&mut path, &mut on_path) {}
        if rotations >= 2 * adj.len() {
            break;
        }
        // rotation at the front: reversing the prefix up to a neighbor of the
        // head exposes a new head; only take rotations that let us extend
        let flat: Vec<Vertex> = path.iter().copied().collect();
        let head = flat[0];
        let mut improved = false;
        for (i, &u) in flat.iter().enumerate().skip(2) {
            if !adj[&head].contains(&u) {
                continue;
            }
            let new_head = flat[i - 1];
            if adj[&new_head].iter().any(|v| !on_path.contains(v)) {
                let mut rotated: Vec<Vertex> = flat[..i].iter().rev().copied().collect();
                rotated.extend_from_slice(&flat[i..]);
                path = rotated.into();
                rotations += 1;
                improved = true;
                break;
            }
        }
        if !improved {
            break;
        }
    }
    path.into()
}

/// Extracts a strongly rainbow cycle of length exactly `2l` from an
/// edge-colored complete bipartite graph, or reports that the attempt
/// failed. Success is guaranteed once the coloring uses at least
/// `2l(s+t)` colors.
///
/// One edge is kept per color that avoids the vertex set, giving a strongly
/// rainbow subgraph; a cycle of length 2 mod `2l-2` inside it is then
/// shortened through host chords. Each chord splits the cycle so that one of
/// the two sides stays strongly rainbow, which either finishes at length `2l`
/// or strictly shrinks the cycle.
pub fn find_strongly_rainbow_cycle(g: &EdgeColoredGraph, l: u32) -> Option<GraphCycleCertificate> {
    assert!(l >= 2);
    assert_eq!(g.base().uniformity(), 2);
    assert!(is_complete_bipartite(g.base()), "host must be complete bipartite");
    let two_l = 2 * l as usize;
    let support = g.base().support();

    // one representative edge per color outside the vertex set
    let mut rep: BTreeMap<Vertex, Edge> = BTreeMap::new();
    for (e, &c) in g.colors() {
        if support.contains(&c) {
            continue;
        }
        rep.entry(c).or_insert_with(|| e.clone());
    }
    let sub = Hypergraph::new(2, g.base().vertex_bound(), rep.values().cloned().collect::<Vec<_>>())
        .expect("representative edges form a graph");
    let start = find_cycle_two_mod(&sub, 2 * l - 2)?;

    let mut cycle = start.vertices;
    while cycle.len() > two_l {
        debug_assert_eq!((cycle.len() - 2) % (two_l - 2), 0);
        let chord = {
            let mut p = vec![cycle[0], cycle[two_l - 1]];
            p.sort_unstable();
            p
        };
        let chord_color = g.color(&chord).expect("chord of a complete bipartite host");
        let side: Vec<Vertex> = cycle[..two_l].to_vec();
        let side_colors: BTreeSet<Vertex> = side
            .windows(2)
            .map(|w| {
                let mut e = vec![w[0], w[1]];
                e.sort_unstable();
                g.color(&e).unwrap()
            })
            .collect();
        if !side_colors.contains(&chord_color) && !side.contains(&chord_color) {
            cycle = side;
        } else {
            let mut rest = vec![cycle[0]];
            rest.extend_from_slice(&cycle[two_l - 1..]);
            cycle = rest;
        }
    }
    let cert = GraphCycleCertificate { vertices: cycle };
    debug_assert_eq!(g.rainbowness(&cert.cycle_edges()), Rainbowness::StronglyRainbow);
    Some(cert)
}

/// True iff the graph's edge set is a complete bipartite graph on its
/// support (both sides nonempty).
pub fn is_complete_bipartite(g: &Hypergraph) -> bool {
    if g.uniformity() != 2 || g.is_empty() {
        return false;
    }
    match bipartition(g) {
        Some((a, b)) => g.len() == a.len() * b.len(),
        None => false,
    }
}

/// Two-colors the support by breadth-first search; `None` if some component
/// has an odd cycle. The side containing the smallest vertex comes first.
pub fn bipartition(g: &Hypergraph) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let adj = g.adjacency();
    let mut color: BTreeMap<Vertex, bool> = BTreeMap::new();
    for &start in adj.keys() {
        if color.contains_key(&start) {
            continue;
        }
        color.insert(start, true);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let cv = color[&v];
            for &u in &adj[&v] {
                match color.get(&u) {
                    None => {
                        color.insert(u, !cv);
                        queue.push_back(u);
                    }
                    Some(&cu) if cu == cv => return None,
                    _ => {}
                }
            }
        }
    }
    let a: BTreeSet<Vertex> = color.iter().filter(|(_, &c)| c).map(|(&v, _)| v).collect();
    let b: BTreeSet<Vertex> = color.iter().filter(|(_, &c)| !c).map(|(&v, _)| v).collect();
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{validate_graph_cycle, validate_loose_cycle};
    use itertools::Itertools;
    use std::collections::BTreeMap;

    fn complete(r: usize, n: Vertex) -> Hypergraph {
        Hypergraph::new(r, n, (1..=n).combinations(r).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn finds_explicit_loose_triangle() {
        let h = Hypergraph::new(3, 6, vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]]).unwrap();
        let cert = find_loose_cycle(&h, 3, &SearchBudget::unbounded()).unwrap().unwrap();
        assert_eq!(validate_loose_cycle(&h, &cert), Ok(()));
        let conns: std::collections::BTreeSet<Vertex> = cert.connectors.iter().copied().collect();
        assert_eq!(conns, [1, 3, 5].into());
    }

    #[test]
    fn no_triangle_below_six_vertices() {
        // a loose 3-cycle spans 6 vertices
        assert_eq!(find_loose_cycle(&complete(3, 5), 3, &SearchBudget::unbounded()).unwrap(), None);
    }

    #[test]
    fn complete_3graph_on_six_has_triangle() {
        let h = complete(3, 6);
        let cert = find_loose_cycle(&h, 3, &SearchBudget::unbounded()).unwrap().unwrap();
        assert_eq!(validate_loose_cycle(&h, &cert), Ok(()));
    }

    #[test]
    fn finds_four_uniform_loose_triangle() {
        let h = Hypergraph::new(
            4,
            9,
            vec![vec![1, 2, 3, 4], vec![4, 5, 6, 7], vec![1, 7, 8, 9], vec![2, 5, 8, 9]],
        )
        .unwrap();
        let cert = find_loose_cycle(&h, 3, &SearchBudget::unbounded()).unwrap().unwrap();
        assert_eq!(validate_loose_cycle(&h, &cert), Ok(()));
        assert!(cert.edges.iter().all(|e| e.len() == 4));
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let h = complete(3, 6);
        assert_eq!(
            find_loose_cycle(&h, 3, &SearchBudget::with_limit(1)),
            Err(Error::BudgetExhausted)
        );
    }

    #[test]
    fn determinism_of_exact_search() {
        let h = complete(3, 7);
        let a = find_loose_cycle(&h, 3, &SearchBudget::unbounded()).unwrap();
        let b = find_loose_cycle(&h, 3, &SearchBudget::unbounded()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn codegree_construction_on_complete_12() {
        let h = complete(3, 12); // codegree 10 > 9
        let cert = loose_cycle_via_codegree(&h, 3).unwrap();
        assert_eq!(validate_loose_cycle(&h, &cert), Ok(()));
    }

    #[test]
    fn codegree_construction_on_complete_16_k4() {
        let h = complete(3, 16); // codegree 14 > 12
        let cert = loose_cycle_via_codegree(&h, 4).unwrap();
        assert_eq!(validate_loose_cycle(&h, &cert), Ok(()));
        assert_eq!(cert.edges.len(), 4);
    }

    #[test]
    fn codegree_precondition_reported() {
        let h = Hypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        match loose_cycle_via_codegree(&h, 3) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("codegree")),
            other => panic!("expected precondition violation, got {other:?}"),
        }
    }

    #[test]
    fn even_cycle_in_complete_graph_on_9() {
        let g = complete(2, 9); // 36 >= 3*9 edges
        let cert = find_cycle_two_mod(&g, 2).unwrap();
        assert_eq!(validate_graph_cycle(&g, &cert), Ok(()));
        assert_eq!(cert.len() % 2, 0);
    }

    #[test]
    fn five_cycle_in_complete_graph_on_5_mod_3() {
        let g = complete(2, 5);
        let cert = find_cycle_two_mod(&g, 3).unwrap();
        assert_eq!(validate_graph_cycle(&g, &cert), Ok(()));
        assert_eq!(cert.len(), 5); // only length 5 is 2 mod 3 within K5
    }

    #[test]
    fn empty_graph_has_no_cycle() {
        assert!(find_cycle_two_mod(&Hypergraph::empty(2, 4), 2).is_none());
    }

    #[test]
    fn greedy_path_is_used_on_larger_cores() {
        let g = complete(2, 30);
        let cert = find_cycle_two_mod(&g, 4).unwrap();
        assert_eq!(validate_graph_cycle(&g, &cert), Ok(()));
        assert_eq!((cert.len() + 4 - 2) % 4, 0);
    }

    fn colored_k55_distinct() -> EdgeColoredGraph {
        let left = 1..=5u32;
        let right = 6..=10u32;
        let mut colors = BTreeMap::new();
        let mut edges = Vec::new();
        let mut c = 11;
        for x in left {
            for y in right.clone() {
                edges.push(vec![x, y]);
                colors.insert(vec![x, y], c);
                c += 1;
            }
        }
        EdgeColoredGraph::new(Hypergraph::new(2, 35, edges).unwrap(), colors).unwrap()
    }

    #[test]
    fn rainbow_c4_in_distinctly_colored_k55() {
        let g = colored_k55_distinct();
        let cert = find_strongly_rainbow_cycle(&g, 2).unwrap();
        assert_eq!(cert.len(), 4);
        assert_eq!(validate_graph_cycle(g.base(), &cert), Ok(()));
        assert_eq!(g.rainbowness(&cert.cycle_edges()), Rainbowness::StronglyRainbow);
    }

    #[test]
    fn monochromatic_coloring_has_no_rainbow_cycle() {
        let mut edges = Vec::new();
        let mut colors = BTreeMap::new();
        for x in 1..=3u32 {
            for y in 4..=6u32 {
                edges.push(vec![x, y]);
                colors.insert(vec![x, y], 7);
            }
        }
        let g = EdgeColoredGraph::new(Hypergraph::new(2, 7, edges).unwrap(), colors).unwrap();
        assert!(find_strongly_rainbow_cycle(&g, 2).is_none());
    }

    #[test]
    fn k11_is_too_small() {
        let g = EdgeColoredGraph::new(
            Hypergraph::new(2, 3, vec![vec![1, 2]]).unwrap(),
            BTreeMap::from([(vec![1, 2], 3)]),
        )
        .unwrap();
        assert!(find_strongly_rainbow_cycle(&g, 2).is_none());
    }

    #[test]
    fn shortening_reaches_exact_length() {
        // all-distinct colors on K_{6,6} force shortening from longer cycles
        let mut edges = Vec::new();
        let mut colors = BTreeMap::new();
        let mut c = 13;
        for x in 1..=6u32 {
            for y in 7..=12u32 {
                edges.push(vec![x, y]);
                colors.insert(vec![x, y], c);
                c += 1;
            }
        }
        let g = EdgeColoredGraph::new(Hypergraph::new(2, 48, edges).unwrap(), colors).unwrap();
        let cert = find_strongly_rainbow_cycle(&g, 2).unwrap();
        assert_eq!(cert.len(), 4);
        let cert3 = find_strongly_rainbow_cycle(&g, 3).unwrap();
        assert_eq!(cert3.len(), 6);
        assert_eq!(g.rainbowness(&cert3.cycle_edges()), Rainbowness::StronglyRainbow);
    }

    #[test]
    fn bipartition_detection() {
        let g = Hypergraph::new(2, 4, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]).unwrap();
        assert!(is_complete_bipartite(&g));
        let (a, b) = bipartition(&g).unwrap();
        assert_eq!(a, [1, 2].into());
        assert_eq!(b, [3, 4].into());
        let odd = complete(2, 3);
        assert!(!is_complete_bipartite(&odd));
    }
}
