//! Uniform hypergraphs over a bounded vertex universe.
//!
//! Vertices are 1-based integers in `1..=n`. Edges are stored canonically:
//! sorted ascending inside each edge, edge set ordered lexicographically.
//! The canonical text form (UHG) is therefore unique per edge set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::Error;

pub type Vertex = u32;

/// An r-element vertex set, sorted ascending with no repeats.
pub type Edge = Vec<Vertex>;

/// Sorts and validates a vertex list into a canonical edge.
pub fn make_edge(vertices: &[Vertex]) -> Result<Edge, Error> {
    let mut e = vertices.to_vec();
    e.sort_unstable();
    if e.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid(format!("repeated vertex in edge {vertices:?}")));
    }
    Ok(e)
}

/// An r-uniform hypergraph on vertex set `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: Vertex,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalizing and validating every edge.
    pub fn new<I>(r: usize, n: Vertex, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Edge>,
    {
        if r < 2 {
            return Err(Error::Invalid(format!("uniformity {r} < 2")));
        }
        if (n as usize) < r {
            return Err(Error::Invalid(format!("vertex bound {n} < uniformity {r}")));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let e = make_edge(&e)?;
            if e.len() != r {
                return Err(Error::Invalid(format!("edge {e:?} has {} vertices, expected {r}", e.len())));
            }
            if e[0] < 1 || *e.last().unwrap() > n {
                return Err(Error::Invalid(format!("edge {e:?} leaves the range [1, {n}]")));
            }
            if !set.insert(e.clone()) {
                return Err(Error::Invalid(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Hypergraph { r, n, edges: set })
    }

    pub fn empty(r: usize, n: Vertex) -> Self {
        Hypergraph::new(r, n, std::iter::empty()).expect("empty hypergraph is valid")
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_bound(&self) -> Vertex {
        self.n
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, e: &[Vertex]) -> bool {
        self.edges.contains(e)
    }

    /// Vertices that actually appear in some edge.
    pub fn support(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flatten().copied().collect()
    }

    /// The shadow: all (r-1)-subsets with positive codegree.
    pub fn shadow(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for i in 0..e.len() {
                let mut s = e.clone();
                s.remove(i);
                out.insert(s);
            }
        }
        out
    }

    /// The 2-shadow: all vertex pairs contained in some edge.
    pub fn two_shadow(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            for i in 0..e.len() {
                for j in i + 1..e.len() {
                    out.insert(vec![e[i], e[j]]);
                }
            }
        }
        out
    }

    /// Vertices completing the (r-1)-set `s` to an edge.
    pub fn neighborhood(&self, s: &[Vertex]) -> BTreeSet<Vertex> {
        assert_eq!(s.len(), self.r - 1, "codegree argument must have r-1 vertices");
        let s = make_edge(s).expect("codegree argument must have distinct vertices");
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if s.iter().all(|v| e.binary_search(v).is_ok()) {
                out.extend(e.iter().copied().filter(|v| !s.contains(v)));
            }
        }
        out
    }

    /// Codegree of an (r-1)-set: the size of its neighborhood.
    pub fn codegree(&self, s: &[Vertex]) -> usize {
        self.neighborhood(s).len()
    }

    /// Adjacency lists; only meaningful for 2-uniform hypergraphs.
    pub fn adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        assert_eq!(self.r, 2, "adjacency is defined for graphs");
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e[0]).or_default().insert(e[1]);
            adj.entry(e[1]).or_default().insert(e[0]);
        }
        adj
    }

    /// Canonical UHG text form: `r n` header, one sorted edge per line.
    pub fn to_uhg(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.r, self.n);
        for e in &self.edges {
            let _ = writeln!(out, "{}", join_vertices(e));
        }
        out
    }

    /// Parses the UHG text format. `#` starts a comment, blank lines are
    /// skipped; the result is canonical regardless of input edge order.
    pub fn parse_uhg(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text);
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty UHG input".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Parse(format!("UHG header must be `r n`, got {header:?}")));
        }
        let r: usize = parse_num(head[0])?;
        let n: Vertex = parse_num(head[1])?;
        let mut edges = Vec::new();
        for line in lines {
            edges.push(parse_vertices(line)?);
        }
        Hypergraph::new(r, n, edges)
    }
}

pub(crate) fn join_vertices(vs: &[Vertex]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .map(str::trim)
        .filter(|l| !l.is_empty())
}

pub(crate) fn parse_num<T: std::str::FromStr>(tok: &str) -> Result<T, Error> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("bad number {tok:?}")))
}

pub(crate) fn parse_vertices(line: &str) -> Result<Vec<Vertex>, Error> {
    line.split_whitespace().map(parse_num).collect()
}

/// Intersection of two sorted edges.
pub(crate) fn edge_intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn h(r: usize, n: Vertex, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(r, n, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn shadow_of_two_triples() {
        let g = h(3, 4, &[&[1, 2, 3], &[1, 2, 4]]);
        let want: BTreeSet<Edge> = [
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
            vec![1, 4],
            vec![2, 4],
        ]
        .into_iter()
        .collect();
        assert_eq!(g.shadow(), want);
    }

    #[test]
    fn shadow_of_empty_is_empty() {
        assert!(Hypergraph::empty(3, 5).shadow().is_empty());
    }

    #[test]
    fn shadow_of_complete_3graph_on_4_is_all_pairs() {
        let edges: Vec<Edge> = (1..=4u32).combinations(3).collect();
        let g = Hypergraph::new(3, 4, edges).unwrap();
        let want: BTreeSet<Edge> = (1..=4u32).combinations(2).collect();
        assert_eq!(g.shadow(), want);
        assert_eq!(g.shadow().len(), 6);
    }

    #[test]
    fn codegree_and_neighborhood() {
        let g = h(3, 4, &[&[1, 2, 3], &[1, 2, 4]]);
        assert_eq!(g.codegree(&[1, 2]), 2);
        assert_eq!(g.neighborhood(&[1, 2]), BTreeSet::from([3, 4]));
        assert_eq!(g.codegree(&[3, 4]), 0);
        assert!(g.neighborhood(&[3, 4]).is_empty());
    }

    #[test]
    fn codegree_in_complete_3graph() {
        let edges: Vec<Edge> = (1..=12u32).combinations(3).collect();
        let g = Hypergraph::new(3, 12, edges).unwrap();
        assert_eq!(g.codegree(&[5, 9]), 10);
    }

    #[test]
    #[should_panic]
    fn codegree_rejects_wrong_size() {
        let g = h(3, 4, &[&[1, 2, 3]]);
        g.codegree(&[1]);
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Hypergraph::new(3, 4, vec![vec![1, 2]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![1, 2, 5]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![1, 2, 2]]).is_err());
        assert!(Hypergraph::new(3, 4, vec![vec![1, 2, 3], vec![3, 2, 1]]).is_err());
        assert!(Hypergraph::new(1, 4, vec![]).is_err());
        assert!(Hypergraph::new(3, 2, vec![]).is_err());
    }

    #[test]
    fn uhg_header_only_is_the_empty_hypergraph() {
        let g = Hypergraph::parse_uhg("3 6\n").unwrap();
        assert!(g.is_empty());
        assert!(Hypergraph::parse_uhg("").is_err());
        assert!(Hypergraph::parse_uhg("# nothing here\n").is_err());
    }

    #[test]
    fn uhg_parses_comments_and_unsorted_input() {
        let text = "3 6  # header\n# a comment line\n3 2 1\n\n3 4 5 # trailing\n";
        let g = Hypergraph::parse_uhg(text).unwrap();
        assert_eq!(g.to_uhg(), "3 6\n1 2 3\n3 4 5\n");
    }

    proptest! {
        #[test]
        fn handshake_identity(seed in 0u64..500) {
            // sum of codegrees over the shadow equals r * |H|
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r = rng.gen_range(2..=4usize);
            let n = rng.gen_range(r as u32..=9);
            let all: Vec<Edge> = (1..=n).combinations(r).collect();
            let edges: Vec<Edge> = all.into_iter().filter(|_| rng.gen_bool(0.3)).collect();
            let g = Hypergraph::new(r, n, edges).unwrap();
            let total: usize = g.shadow().iter().map(|s| g.codegree(s)).sum();
            prop_assert_eq!(total, r * g.len());
        }

        #[test]
        fn uhg_round_trip(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let r = rng.gen_range(2..=4usize);
            let n = rng.gen_range(r as u32..=10);
            let all: Vec<Edge> = (1..=n).combinations(r).collect();
            let edges: Vec<Edge> = all.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
            let g = Hypergraph::new(r, n, edges).unwrap();
            prop_assert_eq!(Hypergraph::parse_uhg(&g.to_uhg()).unwrap(), g);
        }
    }
}
