//! Edge-colored and multi-colored hypergraphs, and their extensions.
//!
//! A coloring assigns to each edge a vertex outside the edge; extending an
//! edge by its color produces a hypergraph one uniformity higher. The
//! multi-colored variant carries a whole palette per edge and is the
//! intermediate object of the peeling encoder.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::hypergraph::{content_lines, join_vertices, parse_num, parse_vertices};
use crate::{Edge, Error, Hypergraph, Vertex};

/// How a sub-collection of colored edges relates to its colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rainbowness {
    Neither,
    /// All colors pairwise distinct.
    Rainbow,
    /// Rainbow, and no color lies in the vertex set of the sub-collection.
    StronglyRainbow,
}

/// A hypergraph together with one color per edge; colors live in `[1, n]`
/// and never inside their own edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    base: Hypergraph,
    colors: BTreeMap<Edge, Vertex>,
}

impl EdgeColoredGraph {
    pub fn new(base: Hypergraph, colors: BTreeMap<Edge, Vertex>) -> Result<Self, Error> {
        for e in base.edges() {
            let c = colors
                .get(e)
                .ok_or_else(|| Error::Invalid(format!("edge {e:?} has no color")))?;
            check_color(*c, e, base.vertex_bound())?;
        }
        if colors.len() != base.len() {
            return Err(Error::Invalid("coloring mentions edges outside the base".into()));
        }
        Ok(EdgeColoredGraph { base, colors })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn color(&self, e: &[Vertex]) -> Option<Vertex> {
        self.colors.get(e).copied()
    }

    pub fn colors(&self) -> &BTreeMap<Edge, Vertex> {
        &self.colors
    }

    /// The set of colors actually used.
    pub fn color_set(&self) -> BTreeSet<Vertex> {
        self.colors.values().copied().collect()
    }

    /// The extension: every edge united with its color, one uniformity up.
    /// Distinct edges may extend to the same set; the result merges them.
    pub fn extension(&self) -> Hypergraph {
        let mut out: BTreeSet<Edge> = BTreeSet::new();
        for (e, c) in &self.colors {
            let mut ext = e.clone();
            ext.push(*c);
            ext.sort_unstable();
            out.insert(ext);
        }
        Hypergraph::new(self.base.uniformity() + 1, self.base.vertex_bound(), out)
            .expect("extension of a valid colored graph is valid")
    }

    /// Classifies a sub-collection of edges (must all belong to the base).
    pub fn rainbowness(&self, sub: &[Edge]) -> Rainbowness {
        let mut seen = BTreeSet::new();
        let mut vertices = BTreeSet::new();
        let mut colors = Vec::with_capacity(sub.len());
        for e in sub {
            let c = self.color(e).expect("rainbowness argument must be a subset of the base");
            if !seen.insert(c) {
                return Rainbowness::Neither;
            }
            colors.push(c);
            vertices.extend(e.iter().copied());
        }
        if colors.iter().any(|c| vertices.contains(c)) {
            Rainbowness::Rainbow
        } else {
            Rainbowness::StronglyRainbow
        }
    }

    /// Canonical CHG text form: `r n` header, then `v1 .. vr : c` per edge.
    pub fn to_chg(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.base.uniformity(), self.base.vertex_bound());
        for (e, c) in &self.colors {
            let _ = writeln!(out, "{} : {}", join_vertices(e), c);
        }
        out
    }

    pub fn parse_chg(text: &str) -> Result<Self, Error> {
        let (r, n, body) = parse_chg_header(text)?;
        let mut edges = Vec::new();
        let mut colors = BTreeMap::new();
        for line in body {
            let (e, cs) = parse_colored_line(line)?;
            if cs.len() != 1 {
                return Err(Error::Parse(format!("expected one color in {line:?}")));
            }
            colors.insert(crate::make_edge(&e)?, cs[0]);
            edges.push(e);
        }
        EdgeColoredGraph::new(Hypergraph::new(r, n, edges)?, colors)
    }
}

/// A hypergraph with a nonempty palette of candidate colors per edge,
/// bounded in size by `capacity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiColoredGraph {
    base: Hypergraph,
    palettes: BTreeMap<Edge, BTreeSet<Vertex>>,
    capacity: usize,
}

impl MultiColoredGraph {
    pub fn new(
        base: Hypergraph,
        palettes: BTreeMap<Edge, BTreeSet<Vertex>>,
        capacity: usize,
    ) -> Result<Self, Error> {
        for e in base.edges() {
            let p = palettes
                .get(e)
                .ok_or_else(|| Error::Invalid(format!("edge {e:?} has no palette")))?;
            if p.is_empty() || p.len() > capacity {
                return Err(Error::Invalid(format!(
                    "palette of {e:?} has {} colors, allowed 1..={capacity}",
                    p.len()
                )));
            }
            for &c in p {
                check_color(c, e, base.vertex_bound())?;
            }
        }
        if palettes.len() != base.len() {
            return Err(Error::Invalid("palettes mention edges outside the base".into()));
        }
        Ok(MultiColoredGraph { base, palettes, capacity })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn palette(&self, e: &[Vertex]) -> Option<&BTreeSet<Vertex>> {
        self.palettes.get(e)
    }

    pub fn palettes(&self) -> &BTreeMap<Edge, BTreeSet<Vertex>> {
        &self.palettes
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn max_palette_size(&self) -> usize {
        self.palettes.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Multi-colored CHG form: `v1 .. vr : c1 c2 ...` per edge.
    pub fn to_chg_multi(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.base.uniformity(), self.base.vertex_bound());
        for (e, p) in &self.palettes {
            let cs: Vec<Vertex> = p.iter().copied().collect();
            let _ = writeln!(out, "{} : {}", join_vertices(e), join_vertices(&cs));
        }
        out
    }

    /// Parses the multi-colored CHG form with the given palette capacity.
    pub fn parse_chg_multi(text: &str, capacity: usize) -> Result<Self, Error> {
        let (r, n, body) = parse_chg_header(text)?;
        let mut edges = Vec::new();
        let mut palettes = BTreeMap::new();
        for line in body {
            let (e, cs) = parse_colored_line(line)?;
            palettes.insert(crate::make_edge(&e)?, cs.into_iter().collect());
            edges.push(e);
        }
        MultiColoredGraph::new(Hypergraph::new(r, n, edges)?, palettes, capacity)
    }
}

fn check_color(c: Vertex, e: &[Vertex], n: Vertex) -> Result<(), Error> {
    if c < 1 || c > n {
        return Err(Error::Invalid(format!("color {c} outside [1, {n}]")));
    }
    if e.contains(&c) {
        return Err(Error::Invalid(format!("color {c} lies inside its edge {e:?}")));
    }
    Ok(())
}

fn parse_chg_header(text: &str) -> Result<(usize, Vertex, Vec<&str>), Error> {
    let mut lines = content_lines(text);
    let header = lines.next().ok_or_else(|| Error::Parse("empty CHG input".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(Error::Parse(format!("CHG header must be `r n`, got {header:?}")));
    }
    Ok((parse_num(head[0])?, parse_num(head[1])?, lines.collect()))
}

pub(crate) fn parse_colored_line(line: &str) -> Result<(Vec<Vertex>, Vec<Vertex>), Error> {
    let (left, right) = line
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("missing `:` in colored edge {line:?}")))?;
    let e = parse_vertices(left.trim())?;
    let cs = parse_vertices(right.trim())?;
    if cs.is_empty() {
        return Err(Error::Parse(format!("no colors in {line:?}")));
    }
    Ok((e, cs))
}
