//! Edge-colored multigraphs and their admissibility.
//!
//! A `d`-colored multigraph is *admissible* when it is connected and every
//! colour class is a perfect matching. Admissible graphs are exactly the
//! dual graphs of `d`-colored normal pseudomanifolds; see
//! [`SimplicialPoset::from_graph`](crate::SimplicialPoset::from_graph).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Largest supported number of colours (colour sets are word bitmasks).
pub const MAX_COLORS: usize = 64;

/// A set of colours drawn from `1..=64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const fn empty() -> Self {
        Self(0)
    }

    /// `{1, ..., d}`.
    pub fn full(d: usize) -> Self {
        assert!(d <= MAX_COLORS, "at most {MAX_COLORS} colors");
        if d == MAX_COLORS {
            Self(u64::MAX)
        } else {
            Self((1u64 << d) - 1)
        }
    }

    pub fn single(color: usize) -> Self {
        let mut s = Self::empty();
        s.insert(color);
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, color: usize) {
        assert!((1..=MAX_COLORS).contains(&color), "color {color} out of range");
        self.0 |= 1 << (color - 1);
    }

    pub fn remove(&mut self, color: usize) {
        if (1..=MAX_COLORS).contains(&color) {
            self.0 &= !(1 << (color - 1));
        }
    }

    pub fn with(mut self, color: usize) -> Self {
        self.insert(color);
        self
    }

    pub fn contains(self, color: usize) -> bool {
        (1..=MAX_COLORS).contains(&color) && self.0 & (1 << (color - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max_color(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    /// `{1..d} \ self`.
    pub fn complement(self, d: usize) -> Self {
        Self(Self::full(d).0 & !self.0)
    }

    /// Colours in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            (bits != 0).then(|| {
                let c = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                c + 1
            })
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An edge between vertex indices `u` and `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, color: usize) -> Self {
        Self { u, v, color }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

/// A multigraph whose edges carry colours in `1..=d`. Vertices are opaque
/// string labels; edges refer to them by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    d: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

/// One reason a graph fails to be admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    /// The underlying graph has this many components.
    Disconnected { components: usize },
    /// `vertex` meets `count ≠ 1` edges of `color`.
    NotAMatching { color: usize, vertex: String, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Violation::NotAMatching { color, vertex, count } => {
                write!(f, "vertex {vertex} meets {count} edges of color {color}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    d: usize,
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: String,
    v: String,
    color: usize,
}

impl ColoredGraph {
    /// Builds a graph, checking labels, endpoints, colours and loops.
    /// Admissibility is *not* required; see [`validate_admissible`](Self::validate_admissible).
    pub fn new(d: usize, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if d == 0 || d > MAX_COLORS {
            return Err(Error::InvalidArgument(format!("number of colors must be in 1..={MAX_COLORS}, got {d}")));
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, label) in vertices.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex label {label:?}")));
            }
        }
        for e in &edges {
            if e.u >= vertices.len() || e.v >= vertices.len() {
                return Err(Error::InvalidArgument(format!("edge {e:?} refers to a missing vertex")));
            }
            if !(1..=d).contains(&e.color) {
                return Err(Error::InvalidArgument(format!("edge color {} outside [1,{d}]", e.color)));
            }
            if e.u == e.v {
                return Err(Error::InvalidArgument(format!("loop at vertex {}", vertices[e.u])));
            }
        }
        Ok(Self { d, vertices, edges, index })
    }

    /// Builds a graph from labelled edges `(u, v, color)`.
    pub fn from_labeled<S: AsRef<str>>(d: usize, vertices: &[S], edges: &[(S, S, usize)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let find = |s: &str| {
            lookup
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {s:?}")))
        };
        let edges = edges
            .iter()
            .map(|(u, v, c)| Ok(Edge::new(find(u.as_ref())?, find(v.as_ref())?, *c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, vertices, edges)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    fn require_vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index(label)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {label:?}")))
    }

    fn check_colors(&self, colors: ColorSet) -> Result<()> {
        if colors.is_subset(ColorSet::full(self.d)) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("color set {colors} not contained in [1,{}]", self.d)))
        }
    }

    /// Checks connectivity and that each colour class is a perfect matching.
    pub fn validate_admissible(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.vertices.is_empty() {
            violations.push(Violation::NoVertices);
            return ValidationReport { violations };
        }
        let mut degree = vec![vec![0usize; self.d]; self.vertices.len()];
        for e in &self.edges {
            degree[e.u][e.color - 1] += 1;
            degree[e.v][e.color - 1] += 1;
        }
        for color in 1..=self.d {
            for (v, deg) in degree.iter().enumerate() {
                if deg[color - 1] != 1 {
                    violations.push(Violation::NotAMatching {
                        color,
                        vertex: self.vertices[v].clone(),
                        count: deg[color - 1],
                    });
                }
            }
        }
        let components = self.components_of(ColorSet::full(self.d)).len();
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
        ValidationReport { violations }
    }

    pub fn is_admissible(&self) -> bool {
        self.validate_admissible().is_ok()
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        let report = self.validate_admissible();
        if report.is_ok() {
            Ok(())
        } else {
            Err(Error::Structural(format!("graph is not admissible: {report}")))
        }
    }

    /// Same vertices, only the edges whose colour lies in `colors`.
    pub fn restrict(&self, colors: ColorSet) -> Result<ColoredGraph> {
        self.check_colors(colors)?;
        let edges = self.edges.iter().copied().filter(|e| colors.contains(e.color)).collect();
        Ok(ColoredGraph { d: self.d, vertices: self.vertices.clone(), edges, index: self.index.clone() })
    }

    /// Connected components of the restriction to `colors`, as sorted
    /// vertex-index lists ordered by least index.
    pub fn components(&self, colors: ColorSet) -> Result<Vec<Vec<usize>>> {
        self.check_colors(colors)?;
        Ok(self.components_of(colors))
    }

    pub(crate) fn components_of(&self, colors: ColorSet) -> Vec<Vec<usize>> {
        self.union_find(colors).classes()
    }

    /// For each vertex, the position of its component in
    /// [`components`](Self::components).
    pub(crate) fn component_index(&self, colors: ColorSet) -> (Vec<usize>, usize) {
        let classes = self.components_of(colors);
        let mut idx = vec![0; self.vertices.len()];
        for (c, class) in classes.iter().enumerate() {
            for &v in class {
                idx[v] = c;
            }
        }
        (idx, classes.len())
    }

    fn union_find(&self, colors: ColorSet) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in self.edges.iter().filter(|e| colors.contains(e.color)) {
            uf.union(e.u, e.v);
        }
        uf
    }

    /// The vertex joined to `v` by its unique colour-`color` edge.
    pub fn color_partner(&self, v: usize, color: usize) -> Result<usize> {
        if v >= self.vertices.len() {
            return Err(Error::InvalidArgument(format!("vertex index {v} out of range")));
        }
        let mut found = self.edges.iter().filter(|e| e.color == color).filter_map(|e| e.other(v));
        match (found.next(), found.next()) {
            (Some(w), None) => Ok(w),
            (None, _) => Err(Error::Structural(format!("vertex {} has no edge of color {color}", self.vertices[v]))),
            (Some(_), Some(_)) => Err(Error::Structural(format!(
                "vertex {} has several edges of color {color}",
                self.vertices[v]
            ))),
        }
    }

    /// Label-based form of [`color_partner`](Self::color_partner).
    pub fn color_partner_of(&self, label: &str, color: usize) -> Result<&str> {
        let v = self.require_vertex(label)?;
        Ok(self.label(self.color_partner(v, color)?))
    }

    /// Whether a path with colours in `colors` joins `x` and `y`.
    pub fn is_connected_between(&self, x: &str, y: &str, colors: ColorSet) -> Result<bool> {
        let (x, y) = (self.require_vertex(x)?, self.require_vertex(y)?);
        self.check_colors(colors)?;
        Ok(self.union_find(colors).same(x, y))
    }

    /// Colours of the edges joining `x` and `y`.
    pub fn colors_between(&self, x: usize, y: usize) -> ColorSet {
        self.edges
            .iter()
            .filter(|e| (e.u == x && e.v == y) || (e.u == y && e.v == x))
            .map(|e| e.color)
            .collect()
    }

    /// A graph with the same colour data and different labels.
    pub fn relabeled(&self, vertices: Vec<String>) -> Result<ColoredGraph> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::InvalidArgument("relabeling changes the vertex count".into()));
        }
        ColoredGraph::new(self.d, vertices, self.edges.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("graph serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("graph serializes")
    }

    fn to_raw(&self) -> GraphJson {
        GraphJson {
            d: self.d,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { u: self.vertices[e.u].clone(), v: self.vertices[e.v].clone(), color: e.color })
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<ColoredGraph> {
        Self::from_json_value(serde_json::from_str(text)?)
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<ColoredGraph> {
        let raw: GraphJson = serde_json::from_value(value)?;
        let edges: Vec<(String, String, usize)> = raw.edges.into_iter().map(|e| (e.u, e.v, e.color)).collect();
        Self::from_labeled(raw.d, &raw.vertices, &edges)
    }

    /// Graphviz rendering, one line per (multi-)edge.
    pub fn to_dot(&self) -> String {
        fn quote(s: &str) -> String {
            format!("\"{}\"", s.replace('"', "\\\""))
        }
        let mut out = String::from("graph G {\n  edge [colorscheme=set19];\n");
        for v in &self.vertices {
            out.push_str(&format!("  {};\n", quote(v)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  {} -- {} [color={c}, label=\"{c}\"];\n",
                quote(&self.vertices[e.u]),
                quote(&self.vertices[e.v]),
                c = e.color
            ));
        }
        out.push_str("}\n");
        out
    }
}
