//! Injective encoding of cycle-free r-graphs into layered edge-colored
//! (r-1)-graphs.
//!
//! `peel` repeatedly removes all edges through the lexicographically smallest
//! sub-edge of codegree at most `r*k`, recording the deleted neighborhood as
//! that sub-edge's palette. If the residual ever has only high-codegree
//! sub-edges, it must contain a loose k-cycle, which is returned as a witness
//! instead. `split_layers` peels palettes color by color (minimum first) into
//! at most `r*k` single-colored layers; `decode` inverts the whole pipeline
//! by extending every layer and taking the union.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::certificate::LooseCycleCertificate;
use crate::colored::parse_colored_line;
use crate::detect::loose_cycle_via_codegree;
use crate::hypergraph::{content_lines, join_vertices, parse_num};
use crate::{Edge, EdgeColoredGraph, Error, Hypergraph, MultiColoredGraph, Vertex};

/// Result of the peeling pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelOutcome {
    /// Peeling emptied the graph; the palettes encode it injectively.
    Peeled(MultiColoredGraph),
    /// Peeling stalled on a residual whose sub-edges all have codegree above
    /// `r*k`; that residual yields a loose k-cycle.
    CycleFound(LooseCycleCertificate),
}

/// Result of the full encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EncodeOutcome {
    Encoded(Encoding),
    Witness(LooseCycleCertificate),
}

/// The layered form of a peeled hypergraph: exactly `r*k` edge-colored
/// (r-1)-graphs with nested edge sets and, per edge, pairwise distinct
/// colors across the layers containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    r: usize,
    k: usize,
    n: Vertex,
    layers: Vec<EdgeColoredGraph>,
}

impl Encoding {
    pub fn new(r: usize, k: usize, n: Vertex, layers: Vec<EdgeColoredGraph>) -> Result<Self, Error> {
        if r < 3 || k < 3 {
            return Err(Error::Invalid("encodings need r >= 3 and k >= 3".into()));
        }
        if layers.len() != r * k {
            return Err(Error::Invalid(format!(
                "expected {} layers, got {}",
                r * k,
                layers.len()
            )));
        }
        for layer in &layers {
            if layer.base().uniformity() != r - 1 || layer.base().vertex_bound() != n {
                return Err(Error::Invalid("layer shape does not match the header".into()));
            }
        }
        for w in layers.windows(2) {
            for e in w[1].base().edges() {
                if !w[0].base().contains(e) {
                    return Err(Error::Invalid(format!("layer edge sets are not nested at {e:?}")));
                }
            }
        }
        for e in layers.first().map(|l| l.base().edges()).into_iter().flatten() {
            let mut seen = BTreeSet::new();
            for layer in &layers {
                if let Some(c) = layer.color(e) {
                    if !seen.insert(c) {
                        return Err(Error::Invalid(format!("edge {e:?} repeats color {c}")));
                    }
                }
            }
        }
        Ok(Encoding { r, k, n, layers })
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn cycle_length(&self) -> usize {
        self.k
    }

    pub fn vertex_bound(&self) -> Vertex {
        self.n
    }

    pub fn layers(&self) -> &[EdgeColoredGraph] {
        &self.layers
    }

    pub fn nonempty_layers(&self) -> usize {
        self.layers.iter().filter(|l| !l.base().is_empty()).count()
    }

    /// Container text form: `ENC r k n`, then per layer a `LAYER i m` line
    /// followed by its m colored edges. Byte-exact and canonical.
    pub fn to_enc(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ENC {} {} {}", self.r, self.k, self.n);
        for (i, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "LAYER {} {}", i + 1, layer.base().len());
            for (e, c) in layer.colors() {
                let _ = writeln!(out, "{} : {}", join_vertices(e), c);
            }
        }
        out
    }

    pub fn parse_enc(text: &str) -> Result<Self, Error> {
        let mut lines = content_lines(text).peekable();
        let header = lines.next().ok_or_else(|| Error::Parse("empty ENC input".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "ENC" {
            return Err(Error::Parse(format!("expected `ENC r k n`, got {header:?}")));
        }
        let r: usize = parse_num(toks[1])?;
        let k: usize = parse_num(toks[2])?;
        let n: Vertex = parse_num(toks[3])?;
        if r < 3 || k < 3 {
            return Err(Error::Parse(format!("encodings need r >= 3 and k >= 3, got r={r} k={k}")));
        }
        let mut layers = Vec::with_capacity(r * k);
        for i in 1..=r * k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing LAYER {i} header")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 || toks[0] != "LAYER" {
                return Err(Error::Parse(format!("expected `LAYER i m`, got {line:?}")));
            }
            if parse_num::<usize>(toks[1])? != i {
                return Err(Error::Parse(format!("layer {i} is mislabeled as {}", toks[1])));
            }
            let m: usize = parse_num(toks[2])?;
            let mut edges = Vec::with_capacity(m);
            let mut colors = BTreeMap::new();
            for _ in 0..m {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse(format!("layer {i} is shorter than declared")))?;
                let (e, cs) = parse_colored_line(line)?;
                if cs.len() != 1 {
                    return Err(Error::Parse(format!("expected one color in {line:?}")));
                }
                colors.insert(crate::make_edge(&e)?, cs[0]);
                edges.push(e);
            }
            layers.push(EdgeColoredGraph::new(Hypergraph::new(r - 1, n, edges)?, colors)?);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing content after the last layer".into()));
        }
        Encoding::new(r, k, n, layers)
    }
}

/// The searching-and-deleting pass. Total: every input yields either
/// palettes that decode back to it or a validated loose-cycle witness.
pub fn peel(h: &Hypergraph, k: usize) -> PeelOutcome {
    let r = h.uniformity();
    assert!(r >= 3, "peeling needs uniformity at least 3");
    assert!(k >= 3);
    let capacity = r * k;
    let n = h.vertex_bound();
    let mut residual: BTreeSet<Edge> = h.edges().clone();
    let mut palettes: BTreeMap<Edge, BTreeSet<Vertex>> = BTreeMap::new();

    while !residual.is_empty() {
        // neighborhoods of all current sub-edges, in lexicographic order
        let mut hoods: BTreeMap<Edge, BTreeSet<Vertex>> = BTreeMap::new();
        for e in &residual {
            for i in 0..e.len() {
                let mut sub = e.clone();
                let v = sub.remove(i);
                hoods.entry(sub).or_default().insert(v);
            }
        }
        let target = hoods.iter().find(|(_, ns)| ns.len() <= capacity);
        match target {
            Some((sub, hood)) => {
                let sub = sub.clone();
                let hood = hood.clone();
                residual.retain(|e| !sub.iter().all(|v| e.binary_search(v).is_ok()));
                palettes.insert(sub, hood);
            }
            None => {
                let stuck = Hypergraph::new(r, n, residual.iter().cloned())
                    .expect("residual of a valid hypergraph is valid");
                let cert = loose_cycle_via_codegree(&stuck, k)
                    .expect("peeling only stalls when every sub-edge has codegree above r*k");
                return PeelOutcome::CycleFound(cert);
            }
        }
    }

    let base = Hypergraph::new(r - 1, n, palettes.keys().cloned().collect::<Vec<_>>())
        .expect("recorded sub-edges form an (r-1)-graph");
    let graph = MultiColoredGraph::new(base, palettes, capacity)
        .expect("recorded palettes are nonempty, bounded and avoid their edges");
    PeelOutcome::Peeled(graph)
}

/// Splits palettes into single-colored layers, minimum color first: layer i
/// holds every edge whose palette has at least i colors, colored with the
/// i-th smallest. Trailing layers may be empty.
pub fn split_layers(m: &MultiColoredGraph) -> Encoding {
    let r = m.base().uniformity() + 1;
    let capacity = m.capacity();
    assert_eq!(capacity % r, 0, "palette capacity must be r*k");
    let k = capacity / r;
    let n = m.base().vertex_bound();
    let mut layers = Vec::with_capacity(capacity);
    for i in 1..=capacity {
        let mut edges = Vec::new();
        let mut colors = BTreeMap::new();
        for (e, palette) in m.palettes() {
            if let Some(&c) = palette.iter().nth(i - 1) {
                edges.push(e.clone());
                colors.insert(e.clone(), c);
            }
        }
        let base = Hypergraph::new(r - 1, n, edges).expect("layer edges are valid");
        layers.push(EdgeColoredGraph::new(base, colors).expect("layer colors avoid their edges"));
    }
    Encoding::new(r, k, n, layers).expect("peeled layers satisfy the encoding invariants")
}

/// The full encoder: peel, then split into layers.
pub fn encode(h: &Hypergraph, k: usize) -> EncodeOutcome {
    match peel(h, k) {
        PeelOutcome::Peeled(m) => EncodeOutcome::Encoded(split_layers(&m)),
        PeelOutcome::CycleFound(cert) => EncodeOutcome::Witness(cert),
    }
}

/// Union of the extensions of all layers; inverts `encode` on peelable
/// inputs.
pub fn decode(enc: &Encoding) -> Hypergraph {
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    for layer in enc.layers() {
        edges.extend(layer.extension().edges().iter().cloned());
    }
    Hypergraph::new(enc.uniformity(), enc.vertex_bound(), edges)
        .expect("extensions of valid layers are valid")
}
