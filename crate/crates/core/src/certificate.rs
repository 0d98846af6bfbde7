//! Independently checkable witnesses for cycle structure.
//!
//! Finders in `detect`, `codec` and `ramsey` return certificates; the
//! validators here recheck every defining condition against the host, so a
//! certificate never has to be trusted on the finder's word.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::hypergraph::{content_lines, edge_intersection, join_vertices, parse_num, parse_vertices};
use crate::{Edge, Error, Hypergraph, Vertex};

/// A loose k-cycle: k edges where consecutive edges (cyclically) meet in
/// exactly one vertex — the connector — and all other pairs are disjoint.
///
/// `connectors[i]` is the common vertex of `edges[i]` and `edges[i+1]`;
/// `connectors[k-1]` joins the last edge back to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LooseCycleCertificate {
    pub edges: Vec<Edge>,
    pub connectors: Vec<Vertex>,
}

/// A cycle in a 2-uniform hypergraph, given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCycleCertificate {
    pub vertices: Vec<Vertex>,
}

impl GraphCycleCertificate {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The cycle's edges as sorted pairs, in cyclic order.
    pub fn cycle_edges(&self) -> Vec<Edge> {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                let mut e = vec![self.vertices[i], self.vertices[(i + 1) % m]];
                e.sort_unstable();
                e
            })
            .collect()
    }
}

/// Rechecks every condition of the loose-cycle definition against `host`.
/// Returns the first violated condition as the error message.
pub fn validate_loose_cycle(host: &Hypergraph, cert: &LooseCycleCertificate) -> Result<(), String> {
    let k = cert.edges.len();
    if k < 3 {
        return Err(format!("cycle has {k} edges, need at least 3"));
    }
    if cert.connectors.len() != k {
        return Err(format!("{} connectors for {k} edges", cert.connectors.len()));
    }
    let distinct: BTreeSet<&Edge> = cert.edges.iter().collect();
    if distinct.len() != k {
        return Err("edges are not pairwise distinct".into());
    }
    let conn_set: BTreeSet<Vertex> = cert.connectors.iter().copied().collect();
    if conn_set.len() != k {
        return Err("connectors are not pairwise distinct".into());
    }
    for e in &cert.edges {
        if e.len() != host.uniformity() {
            return Err(format!("edge {e:?} does not match host uniformity"));
        }
        if !host.contains(e) {
            return Err(format!("edge {e:?} is not in the host"));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let inter = edge_intersection(&cert.edges[i], &cert.edges[j]);
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            if adjacent {
                // connector index: i for consecutive pairs, k-1 for the wrap
                let c = if j == i + 1 { cert.connectors[i] } else { cert.connectors[k - 1] };
                if inter != vec![c] {
                    return Err(format!(
                        "edges {i} and {j} intersect in {inter:?}, expected connector {c}"
                    ));
                }
            } else if !inter.is_empty() {
                return Err(format!("non-consecutive edges {i} and {j} intersect in {inter:?}"));
            }
        }
    }
    Ok(())
}

/// Rechecks a graph cycle against a 2-uniform host: distinct vertices,
/// every consecutive pair (cyclically) an edge.
pub fn validate_graph_cycle(host: &Hypergraph, cert: &GraphCycleCertificate) -> Result<(), String> {
    if host.uniformity() != 2 {
        return Err("host is not 2-uniform".into());
    }
    let m = cert.vertices.len();
    if m < 3 {
        return Err(format!("cycle has {m} vertices, need at least 3"));
    }
    let distinct: BTreeSet<Vertex> = cert.vertices.iter().copied().collect();
    if distinct.len() != m {
        return Err("cycle vertices are not distinct".into());
    }
    for e in cert.cycle_edges() {
        if !host.contains(&e) {
            return Err(format!("cycle edge {e:?} is not in the host"));
        }
    }
    Ok(())
}

/// Tries to arrange an unordered collection of edges into a loose cycle.
///
/// Fixes the first edge and tries every cyclic order of the rest (reflections
/// skipped), so the result is deterministic. Returns the first arrangement
/// that satisfies the definition.
pub fn loose_cycle_from_edges(edges: &[Edge]) -> Option<LooseCycleCertificate> {
    let k = edges.len();
    if k < 3 {
        return None;
    }
    let rest: Vec<usize> = (1..k).collect();
    let mut perm = rest.clone();
    let mut out = None;
    permute(&mut perm, 0, &mut |p| {
        if out.is_some() {
            return;
        }
        // skip reflections: orient so the successor of edge 0 is the smaller index
        if k > 3 && p[0] > p[k - 2] {
            return;
        }
        let order: Vec<&Edge> = std::iter::once(&edges[0]).chain(p.iter().map(|&i| &edges[i])).collect();
        if let Some(connectors) = connectors_for_order(&order) {
            out = Some(LooseCycleCertificate {
                edges: order.into_iter().cloned().collect(),
                connectors,
            });
        }
    });
    out
}

/// Connectors for an explicit cyclic edge order, if it forms a loose cycle.
pub(crate) fn connectors_for_order(order: &[&Edge]) -> Option<Vec<Vertex>> {
    let k = order.len();
    let mut connectors = Vec::with_capacity(k);
    for i in 0..k {
        for j in i + 1..k {
            let inter = edge_intersection(order[i], order[j]);
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            if adjacent {
                if inter.len() != 1 {
                    return None;
                }
            } else if !inter.is_empty() {
                return None;
            }
        }
    }
    for i in 0..k {
        let inter = edge_intersection(order[i], order[(i + 1) % k]);
        connectors.push(inter[0]);
    }
    let set: BTreeSet<Vertex> = connectors.iter().copied().collect();
    if set.len() != k {
        return None;
    }
    Some(connectors)
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

impl LooseCycleCertificate {
    /// `CERT LOOSE r k` header, k edge lines, one connector line.
    pub fn to_cert(&self) -> String {
        let mut out = String::new();
        let r = self.edges.first().map_or(0, Vec::len);
        let _ = writeln!(out, "CERT LOOSE {} {}", r, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{}", join_vertices(e));
        }
        let _ = writeln!(out, "{}", join_vertices(&self.connectors));
        out
    }

    pub fn parse_cert(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text);
        let header = lines.next().ok_or_else(|| Error::Parse("empty certificate".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "CERT" || toks[1] != "LOOSE" {
            return Err(Error::Parse(format!("expected `CERT LOOSE r k`, got {header:?}")));
        }
        let r: usize = parse_num(toks[2])?;
        let k: usize = parse_num(toks[3])?;
        let mut edges = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines.next().ok_or_else(|| Error::Parse("missing edge line".into()))?;
            let e = parse_vertices(line)?;
            if e.len() != r {
                return Err(Error::Parse(format!("edge line {line:?} does not have {r} vertices")));
            }
            edges.push(e);
        }
        let line = lines.next().ok_or_else(|| Error::Parse("missing connector line".into()))?;
        let connectors = parse_vertices(line)?;
        if connectors.len() != k {
            return Err(Error::Parse("connector count does not match k".into()));
        }
        Ok(LooseCycleCertificate { edges, connectors })
    }
}

impl GraphCycleCertificate {
    /// `CERT CYCLE h m` header plus the vertex sequence; `h` is the modulus
    /// the cycle length is checked against (`length ≡ 2 mod h`).
    pub fn to_cert(&self, modulus: u32) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "CERT CYCLE {} {}", modulus, self.vertices.len());
        let _ = writeln!(out, "{}", join_vertices(&self.vertices));
        out
    }

    pub fn parse_cert(text: &str) -> Result<(Self, u32), Error> {
        let mut lines = content_lines(text);
        let header = lines.next().ok_or_else(|| Error::Parse("empty certificate".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "CERT" || toks[1] != "CYCLE" {
            return Err(Error::Parse(format!("expected `CERT CYCLE h m`, got {header:?}")));
        }
        let modulus: u32 = parse_num(toks[2])?;
        let m: usize = parse_num(toks[3])?;
        let line = lines.next().ok_or_else(|| Error::Parse("missing vertex line".into()))?;
        let vertices = parse_vertices(line)?;
        if vertices.len() != m {
            return Err(Error::Parse("vertex count does not match header".into()));
        }
        Ok((GraphCycleCertificate { vertices }, modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loose_triangle_host() -> Hypergraph {
        Hypergraph::new(
            3,
            6,
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]],
        )
        .unwrap()
    }

    fn triangle_cert() -> LooseCycleCertificate {
        LooseCycleCertificate {
            edges: vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]],
            connectors: vec![3, 5, 1],
        }
    }

    #[test]
    fn valid_loose_triangle() {
        assert_eq!(validate_loose_cycle(&loose_triangle_host(), &triangle_cert()), Ok(()));
    }

    #[test]
    fn missing_edge_rejected() {
        let host = Hypergraph::new(3, 6, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        assert!(validate_loose_cycle(&host, &triangle_cert()).is_err());
    }

    #[test]
    fn oversized_intersection_rejected() {
        let host = Hypergraph::new(
            3,
            7,
            vec![vec![1, 2, 3], vec![2, 3, 4], vec![1, 4, 5]],
        )
        .unwrap();
        let cert = LooseCycleCertificate {
            edges: vec![vec![1, 2, 3], vec![2, 3, 4], vec![1, 4, 5]],
            connectors: vec![2, 4, 1],
        };
        assert!(validate_loose_cycle(&host, &cert).is_err());
    }

    #[test]
    fn repeated_connectors_rejected() {
        // e1∩e2 and e2∩e3 share the same vertex
        let host = Hypergraph::new(
            3,
            9,
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![3, 6, 7]],
        )
        .unwrap();
        let cert = LooseCycleCertificate {
            edges: host.edges().iter().cloned().collect(),
            connectors: vec![3, 3, 3],
        };
        assert!(validate_loose_cycle(&host, &cert).is_err());
    }

    #[test]
    fn arrangement_finder_recovers_triangle() {
        let edges = vec![vec![3, 4, 5], vec![1, 2, 3], vec![1, 5, 6]];
        let cert = loose_cycle_from_edges(&edges).unwrap();
        assert_eq!(validate_loose_cycle(&loose_triangle_host(), &cert), Ok(()));
    }

    #[test]
    fn arrangement_finder_rejects_non_cycle() {
        // a loose path, not a cycle
        let edges = vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]];
        assert!(loose_cycle_from_edges(&edges).is_none());
    }

    #[test]
    fn graph_cycle_validation() {
        let host = Hypergraph::new(2, 4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]]).unwrap();
        let cert = GraphCycleCertificate { vertices: vec![1, 2, 3, 4] };
        assert_eq!(validate_graph_cycle(&host, &cert), Ok(()));
        let bad = GraphCycleCertificate { vertices: vec![1, 2, 4, 3] };
        assert!(validate_graph_cycle(&host, &bad).is_err());
    }

    #[test]
    fn loose_cert_round_trip() {
        let cert = triangle_cert();
        assert_eq!(LooseCycleCertificate::parse_cert(&cert.to_cert()).unwrap(), cert);
    }

    #[test]
    fn cycle_cert_round_trip() {
        let cert = GraphCycleCertificate { vertices: vec![2, 5, 3, 9] };
        let (parsed, modulus) = GraphCycleCertificate::parse_cert(&cert.to_cert(2)).unwrap();
        assert_eq!(parsed, cert);
        assert_eq!(modulus, 2);
    }
}
