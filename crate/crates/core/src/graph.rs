//! Finite directed graphs, their paths, and structural predicates.
//!
//! Vertices and edges are addressed by dense indices into identifier-sorted
//! tables, so index order coincides with the lexicographic order of the
//! identifiers. Everything downstream (normal forms, path enumeration,
//! serialization) relies on that ordering for determinism.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub(crate) u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
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

/// Raw description of a graph, as read from a graph file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDescription {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDescription>,
    #[serde(default)]
    pub infinite_emitters: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDescription {
    pub id: String,
    pub src: String,
    pub dst: String,
}

impl EdgeDescription {
    pub fn new(id: &str, src: &str, dst: &str) -> Self {
        Self {
            id: id.to_owned(),
            src: src.to_owned(),
            dst: dst.to_owned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct EdgeRecord {
    name: String,
    src: VertexId,
    dst: VertexId,
}

/// A validated finite directed graph `E = (E⁰, E¹, s, r)`.
///
/// Vertices flagged as infinite emitters stand in for vertices that emit
/// infinitely many edges; only their listed edges are representable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
    infinite: Vec<bool>,
    out_edges: Vec<Vec<EdgeId>>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
}

/// A generator name resolved against a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl Graph {
    /// Validates a raw description and builds the graph.
    pub fn load(raw: &GraphDescription) -> Result<Self, GraphError> {
        if raw.vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut names = BTreeSet::new();
        for v in &raw.vertices {
            if !names.insert(v.as_str()) {
                return Err(GraphError::DuplicateIdentifier(v.clone()));
            }
        }
        let vertices: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let vertex_lookup: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i as u32)))
            .collect();

        let mut sorted_edges: Vec<&EdgeDescription> = raw.edges.iter().collect();
        sorted_edges.sort_by(|a, b| a.id.cmp(&b.id));
        let mut edges = Vec::with_capacity(sorted_edges.len());
        let mut edge_lookup = HashMap::new();
        for (i, e) in sorted_edges.iter().enumerate() {
            // vertex and edge names share one namespace so expressions resolve uniquely
            if vertex_lookup.contains_key(&e.id) || edge_lookup.contains_key(&e.id) {
                return Err(GraphError::DuplicateIdentifier(e.id.clone()));
            }
            let endpoint = |name: &String| {
                vertex_lookup
                    .get(name)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint {
                        edge: e.id.clone(),
                        vertex: name.clone(),
                    })
            };
            let src = endpoint(&e.src)?;
            let dst = endpoint(&e.dst)?;
            edge_lookup.insert(e.id.clone(), EdgeId(i as u32));
            edges.push(EdgeRecord {
                name: e.id.clone(),
                src,
                dst,
            });
        }

        let mut infinite = vec![false; vertices.len()];
        for v in &raw.infinite_emitters {
            let id = vertex_lookup
                .get(v)
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            infinite[id.index()] = true;
        }

        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src.index()].push(EdgeId(i as u32));
        }

        Ok(Self {
            vertices,
            edges,
            infinite,
            out_edges,
            vertex_lookup,
            edge_lookup,
        })
    }

    /// Convenience constructor from string slices.
    pub fn build(
        vertices: &[&str],
        edges: &[(&str, &str, &str)],
        infinite_emitters: &[&str],
    ) -> Result<Self, GraphError> {
        Self::load(&GraphDescription {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, d)| EdgeDescription::new(id, s, d))
                .collect(),
            infinite_emitters: infinite_emitters.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn description(&self) -> GraphDescription {
        GraphDescription {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDescription {
                    id: e.name.clone(),
                    src: self.vertex_name(e.src).to_owned(),
                    dst: self.vertex_name(e.dst).to_owned(),
                })
                .collect(),
            infinite_emitters: self
                .vertex_ids()
                .filter(|v| self.is_infinite_emitter(*v))
                .map(|v| self.vertex_name(v).to_owned())
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn resolve(&self, name: &str) -> Option<Atom> {
        self.vertex(name)
            .map(Atom::Vertex)
            .or_else(|| self.edge(name).map(Atom::Edge))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].src
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].dst
    }

    /// Listed out-edges of `v` in identifier order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.infinite[v.index()]
    }

    /// A vertex is regular when it emits at least one listed edge and is not
    /// flagged as an infinite emitter.
    pub fn is_regular(&self, v: VertexId) -> bool {
        !self.infinite[v.index()] && !self.out_edges[v.index()].is_empty()
    }

    pub fn is_singular(&self, v: VertexId) -> bool {
        !self.is_regular(v)
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        !self.infinite[v.index()] && self.out_edges[v.index()].is_empty()
    }

    pub fn has_infinite_emitters(&self) -> bool {
        self.infinite.iter().any(|f| *f)
    }

    /// The designated edge used to orient the normal-form rewriting at a
    /// regular vertex: its least out-edge.
    pub fn special_edge(&self, v: VertexId) -> Option<EdgeId> {
        if self.is_regular(v) {
            self.out_edges[v.index()].first().copied()
        } else {
            None
        }
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special_edge(self.source(e)) == Some(e)
    }

    /// Partition of the vertex set into (regular, singular).
    pub fn classify_vertices(&self) -> (Vec<VertexId>, Vec<VertexId>) {
        self.vertex_ids().partition(|v| self.is_regular(*v))
    }

    pub fn path_from_names(&self, names: &[&str]) -> Result<Path, GraphError> {
        let edges = names
            .iter()
            .map(|n| {
                self.edge(n)
                    .ok_or_else(|| GraphError::UnknownEdge(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(self, edges)
    }

    /// All paths of length `n`, optionally restricted to a source vertex,
    /// in lexicographic order of edge identifiers.
    pub fn enumerate_paths(&self, source: Option<VertexId>, n: usize) -> Vec<Path> {
        let starts: Vec<VertexId> = match source {
            Some(v) => vec![v],
            None => self.vertex_ids().collect(),
        };
        if n == 0 {
            return starts.into_iter().map(Path::vertex).collect();
        }
        let mut frontier: Vec<Path> = starts.into_iter().map(Path::vertex).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range()) {
                    next.push(p.extended(self, e));
                }
            }
            frontier = next;
        }
        frontier.sort();
        frontier
    }

    /// All paths of length at most `max_len`, in canonical order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        (0..=max_len)
            .flat_map(|n| self.enumerate_paths(None, n))
            .collect()
    }

    /// Decides condition (L): every cycle has an exit. On failure the
    /// returned witness is a cycle without exits.
    pub fn condition_l(&self) -> (bool, Option<Path>) {
        // A cycle without exit lies entirely on vertices whose only listed
        // out-edge continues the cycle. Follow unique out-edges from each
        // such vertex and look for a return.
        for start in self.vertex_ids() {
            if !self.has_unique_out_edge(start) {
                continue;
            }
            let mut edges = Vec::new();
            let mut at = start;
            let mut seen = BTreeSet::new();
            while self.has_unique_out_edge(at) && seen.insert(at) {
                let e = self.out_edges(at)[0];
                edges.push(e);
                at = self.range(e);
                if at == start {
                    let cycle = Path::from_edges(self, edges).expect("edges follow the graph");
                    return (false, Some(cycle));
                }
            }
        }
        (true, None)
    }

    fn has_unique_out_edge(&self, v: VertexId) -> bool {
        !self.infinite[v.index()] && self.out_edges[v.index()].len() == 1
    }
}

/// A finite path. Paths of length zero are vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    range: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Self {
            source: v,
            range: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Self {
        Self {
            source: g.source(e),
            range: g.range(e),
            edges: vec![e],
        }
    }

    /// Validates that consecutive edges are composable.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Self, GraphError> {
        let Some(&first) = edges.first() else {
            return Err(GraphError::EmptyEdgeSequence);
        };
        for w in edges.windows(2) {
            if g.range(w[0]) != g.source(w[1]) {
                return Err(GraphError::NotComposable {
                    first: g.edge_name(w[0]).to_owned(),
                    second: g.edge_name(w[1]).to_owned(),
                });
            }
        }
        let last = *edges.last().unwrap();
        Ok(Self {
            source: g.source(first),
            range: g.range(last),
            edges,
        })
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn last_edge(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    pub fn extended(&self, g: &Graph, e: EdgeId) -> Self {
        debug_assert_eq!(g.source(e), self.range);
        let mut edges = self.edges.clone();
        edges.push(e);
        Self {
            source: self.source,
            range: g.range(e),
            edges,
        }
    }

    /// Concatenation `μν`; vertices act as identities.
    pub fn concat(&self, other: &Path) -> Result<Self, GraphError> {
        if self.range != other.source {
            return Err(GraphError::RangeSourceMismatch);
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Self {
            source: self.source,
            range: other.range,
            edges,
        })
    }

    /// Drops the last edge. Returns `None` on a vertex.
    pub fn parent(&self, g: &Graph) -> Option<Self> {
        let (_, rest) = self.edges.split_last()?;
        let range = match rest.last() {
            Some(&e) => g.range(e),
            None => self.source,
        };
        Some(Self {
            source: self.source,
            range,
            edges: rest.to_vec(),
        })
    }

    /// `self ≤ other`: `other = self·η` for some path `η`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source && other.edges.starts_with(&self.edges)
    }

    /// For `self ≤ other`, the path `η` with `self·η = other`.
    pub fn strip_prefix(&self, other: &Path) -> Option<Self> {
        if !self.is_prefix_of(other) {
            return None;
        }
        Some(Self {
            source: self.range,
            range: other.range,
            edges: other.edges[self.edges.len()..].to_vec(),
        })
    }

    /// Sub-path of edges `[from, to)`, with correct endpoints.
    pub fn slice(&self, g: &Graph, from: usize, to: usize) -> Self {
        let source = if from == 0 {
            self.source
        } else {
            g.range(self.edges[from - 1])
        };
        let range = if to == 0 {
            self.source
        } else {
            g.range(self.edges[to - 1])
        };
        Self {
            source,
            range,
            edges: self.edges[from..to].to_vec(),
        }
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

/// Canonical order: shorter paths first, then lexicographic on edges, with
/// the source vertex breaking ties between vertex paths.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return f.write_str(self.graph.vertex_name(self.path.source));
        }
        for (i, e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.edge_name(*e))?;
        }
        Ok(())
    }
}
