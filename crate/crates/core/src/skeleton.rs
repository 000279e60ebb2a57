//! Colored directed multigraphs and the free path category on them.
//!
//! Paths are written in *composition order*: in the word `e1 e2 ... en` the
//! edge `en` is traversed first, and `s(ei) = r(ei+1)`. This is the order in
//! which morphisms compose (`ab = a ∘ b`), and it is the opposite of the
//! "follow the arrows" order common in the graph algebra literature. Every
//! file format and word syntax in this workspace uses it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::ops::Add;

use crate::error::{Error, Result};

/// Edge color, `1..=rank`.
pub type Color = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub(crate) u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element of ℕᵏ.
///
/// `PartialOrd` is the componentwise order: `m <= n` iff `m[i] <= n[i]` for
/// every coordinate. Degrees of different rank are incomparable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    /// The standard basis vector for `color` (1-based).
    pub fn basis(rank: usize, color: Color) -> Self {
        let mut d = Degree::zero(rank);
        d.0[color - 1] = 1;
        d
    }

    pub fn new(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Coordinate for a 1-based color.
    pub fn get(&self, color: Color) -> u32 {
        self.0[color - 1]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if self.rank() != other.rank() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// All degrees `m` with `0 <= m <= self`, in lexicographic order of
    /// coordinates.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &bound in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

impl Add for &Degree {
    type Output = Degree;

    fn add(self, rhs: &Degree) -> Degree {
        assert_eq!(self.rank(), rhs.rank(), "adding degrees of different rank");
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.rank() != other.rank() {
            return None;
        }
        let le = self.0.iter().zip(&other.0).all(|(a, b)| a <= b);
        let ge = self.0.iter().zip(&other.0).all(|(a, b)| a >= b);
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{c}")?;
        }
        f.write_char(')')
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
    pub color: Color,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Named {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// The 1-skeleton of a k-graph: a finite directed multigraph whose edges are
/// colored by `1..=rank`. Vertex and edge names share one namespace.
#[derive(Clone, Debug)]
pub struct Skeleton {
    rank: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    names: HashMap<String, Named>,
}

impl PartialEq for Skeleton {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Skeleton {}

impl Skeleton {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Skeleton {
            rank,
            vertices: Vec::new(),
            edges: Vec::new(),
            names: HashMap::new(),
        })
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if name.is_empty() || self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_owned()));
        }
        let id = VertexId(self.vertices.len() as u32);
        self.vertices.push(name.to_owned());
        self.names.insert(name.to_owned(), Named::Vertex(id));
        Ok(id)
    }

    /// Adds the edge `name : range <- source` of the given color.
    pub fn add_edge(&mut self, name: &str, range: &str, source: &str, color: Color) -> Result<EdgeId> {
        let range = self
            .vertex(range)
            .ok_or_else(|| Error::UnknownVertex(range.to_owned()))?;
        let source = self
            .vertex(source)
            .ok_or_else(|| Error::UnknownVertex(source.to_owned()))?;
        self.add_edge_ids(name, range, source, color)
    }

    pub fn add_edge_ids(&mut self, name: &str, range: VertexId, source: VertexId, color: Color) -> Result<EdgeId> {
        if color == 0 || color > self.rank {
            return Err(Error::BadColor { color, rank: self.rank });
        }
        if name.is_empty() || self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.to_owned()));
        }
        assert!(range.index() < self.vertices.len() && source.index() < self.vertices.len());
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge {
            name: name.to_owned(),
            source,
            range,
            color,
        });
        self.names.insert(name.to_owned(), Named::Edge(id));
        Ok(id)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        match self.names.get(name) {
            Some(Named::Vertex(v)) => Some(*v),
            _ => None,
        }
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        match self.names.get(name) {
            Some(Named::Edge(e)) => Some(*e),
            _ => None,
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.edges[e.index()].color
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    /// Edges in declaration order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (EdgeId, &Edge)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i as u32), e))
    }

    /// Edge ids sorted by `(color, name)`.
    pub fn edges_sorted(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self.edges().map(|(id, _)| id).collect();
        ids.sort_by(|a, b| {
            let (ea, eb) = (self.edge(*a), self.edge(*b));
            (ea.color, &ea.name).cmp(&(eb.color, &eb.name))
        });
        ids
    }

    pub fn edge_degree(&self, e: EdgeId) -> Degree {
        Degree::basis(self.rank, self.color(e))
    }

    /// Every `(e, f)` with `color(e) = i`, `color(f) = j` and `s(e) = r(f)`,
    /// sorted by edge names.
    pub fn composable_orthogonal_pairs(&self, i: Color, j: Color) -> Result<Vec<(EdgeId, EdgeId)>> {
        for c in [i, j] {
            if c == 0 || c > self.rank {
                return Err(Error::BadColor {
                    color: c,
                    rank: self.rank,
                });
            }
        }
        if i == j {
            return Err(Error::SameColor(i));
        }
        let mut pairs = Vec::new();
        for (e, ee) in self.edges().filter(|(_, x)| x.color == i) {
            for (f, ef) in self.edges().filter(|(_, x)| x.color == j) {
                if ee.source == ef.range {
                    pairs.push((e, f));
                }
            }
        }
        pairs.sort_by(|a, b| {
            (self.edge_name(a.0), self.edge_name(a.1)).cmp(&(self.edge_name(b.0), self.edge_name(b.1)))
        });
        Ok(pairs)
    }

    /// Vertex classes of the undirected reachability relation, each sorted by
    /// declaration order; classes ordered by their first vertex.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.source.index());
            let b = find(&mut parent, e.range.index());
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut by_root: Vec<Vec<VertexId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.vertices.len() {
            let root = find(&mut parent, v);
            let idx = *slot.entry(root).or_insert_with(|| {
                by_root.push(Vec::new());
                by_root.len() - 1
            });
            by_root[idx].push(VertexId(v as u32));
        }
        by_root
    }

    /// Graphviz rendering. Edges point from source to range; the edge color
    /// is carried by the `kcolor` attribute.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];
        let mut out = String::from("digraph skeleton {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  {};", dot_id(v));
        }
        for id in self.edges_sorted() {
            let e = self.edge(id);
            let _ = writeln!(
                out,
                "  {} -> {} [label={}, kcolor={}, color={}];",
                dot_id(self.vertex_name(e.source)),
                dot_id(self.vertex_name(e.range)),
                dot_id(&e.name),
                e.color,
                PALETTE[(e.color - 1) % PALETTE.len()],
            );
        }
        out.push_str("}\n");
        out
    }

    /// The path spelled by a list of edge names in composition order.
    pub fn path(&self, names: &[&str]) -> Result<EdgePath> {
        let ids = names
            .iter()
            .map(|n| self.edge_id(n).ok_or_else(|| Error::UnknownEdge((*n).to_owned())))
            .collect::<Result<Vec<_>>>()?;
        EdgePath::from_edges(self, ids)
    }
}

fn dot_id(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// A morphism of the path category: edges in composition order, or a vertex
/// (identity) when empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePath {
    range: VertexId,
    source: VertexId,
    edges: Vec<EdgeId>,
}

impl EdgePath {
    pub fn vertex(v: VertexId) -> Self {
        EdgePath {
            range: v,
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(sk: &Skeleton, edges: Vec<EdgeId>) -> Result<Self> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::MissingAnchor),
        };
        for w in edges.windows(2) {
            if sk.edge(w[0]).source != sk.edge(w[1]).range {
                return Err(Error::NotComposable(format!(
                    "s({}) != r({})",
                    sk.edge_name(w[0]),
                    sk.edge_name(w[1])
                )));
            }
        }
        Ok(EdgePath {
            range: sk.edge(first).range,
            source: sk.edge(last).source,
            edges,
        })
    }

    /// Builds a path from edges the caller already knows are composable.
    pub(crate) fn from_parts(range: VertexId, source: VertexId, edges: Vec<EdgeId>) -> Self {
        EdgePath { range, source, edges }
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self ∘ other`: `other` is traversed first.
    pub fn compose(&self, other: &EdgePath) -> Result<EdgePath> {
        if self.source != other.range {
            return Err(Error::NotComposable(
                "source of the left path is not the range of the right path".into(),
            ));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(EdgePath {
            range: self.range,
            source: other.source,
            edges,
        })
    }

    pub fn degree(&self, sk: &Skeleton) -> Degree {
        let mut d = vec![0; sk.rank()];
        for &e in &self.edges {
            d[sk.color(e) - 1] += 1;
        }
        Degree(d)
    }

    pub fn display<'a>(&'a self, sk: &'a Skeleton) -> impl fmt::Display + 'a {
        DisplayPath { path: self, sk }
    }
}

struct DisplayPath<'a> {
    path: &'a EdgePath,
    sk: &'a Skeleton,
}

impl fmt::Display for DisplayPath<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            return write!(f, "id({})", self.sk.vertex_name(self.path.range));
        }
        for (i, e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            f.write_str(self.sk.edge_name(*e))?;
        }
        Ok(())
    }
}
