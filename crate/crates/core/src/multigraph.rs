//! Finite undirected multigraphs with loops and parallel edges.
//!
//! Vertices stand for the geometric components of a semistable special fiber
//! and edges for its nodes, so parallel edges (two components meeting more
//! than once) and loops (a component crossing itself) are both first class.
//! Every edge stores an orientation: `ends[0]` is the tail. Orientation has no
//! geometric meaning; it only gives a reference frame for chain positions when
//! edges are subdivided.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque vertex identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub String);

/// Opaque edge identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_owned())
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

/// Where a subdivision vertex sits: on `edge`, `position` steps from its tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPosition {
    pub edge: EdgeId,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<ChainPosition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    /// `ends[0]` is the tail, `ends[1]` the head. Equal ends make a loop.
    pub ends: [VertexId; 2],
    /// For a subdivision segment: the parent edge and the segment number
    /// counted from the parent's tail.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<ChainPosition>,
}

impl Edge {
    pub fn tail(&self) -> &VertexId {
        &self.ends[0]
    }

    pub fn head(&self) -> &VertexId {
        &self.ends[1]
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge identifier `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    DanglingEdge { edge: EdgeId, vertex: VertexId },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("unknown edge `{0}`")]
    UnknownEdge(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("subdivision length must be at least 1")]
    ZeroSubdivision,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// A finite, nonempty multigraph. Immutable once built.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct MultiGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
    /// Endpoint indices of every edge, tail first.
    incidence: Vec<[usize; 2]>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl TryFrom<RawGraph> for MultiGraph {
    type Error = GraphError;

    fn try_from(raw: RawGraph) -> Result<Self, Self::Error> {
        MultiGraph::from_parts(raw.vertices, raw.edges)
    }
}

impl From<MultiGraph> for RawGraph {
    fn from(g: MultiGraph) -> Self {
        RawGraph {
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl MultiGraph {
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut edge_index = HashMap::with_capacity(edges.len());
        let mut incidence = Vec::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            let mut ends = [0; 2];
            for (slot, v) in ends.iter_mut().zip(&e.ends) {
                *slot = *vertex_index
                    .get(v)
                    .ok_or_else(|| GraphError::DanglingEdge {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    })?;
            }
            incidence.push(ends);
        }
        Ok(MultiGraph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            incidence,
        })
    }

    /// Builds a graph from plain identifiers; edges are `(id, tail, head)`.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        E: IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    {
        let vertices = vertices
            .into_iter()
            .map(|id| Vertex {
                id: id.into(),
                origin: None,
            })
            .collect();
        let edges = edges
            .into_iter()
            .map(|(id, tail, head)| Edge {
                id,
                ends: [tail, head],
                origin: None,
            })
            .collect();
        Self::from_parts(vertices, edges)
    }

    /// Vertices named `"0"..n` and edges named `"e0"..` from index pairs.
    pub fn from_index_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let name = |i: usize| VertexId(i.to_string());
        Self::new(
            (0..n).map(name),
            pairs
                .iter()
                .enumerate()
                .map(|(k, &(a, b))| (EdgeId(format!("e{k}")), name(a), name(b))),
        )
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_position(&self, v: &VertexId) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn edge_position(&self, e: &EdgeId) -> Option<usize> {
        self.edge_index.get(e).copied()
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&Edge> {
        self.edge_position(e).map(|i| &self.edges[i])
    }

    /// Endpoint indices of the edge at position `i`, tail first.
    pub fn incidence(&self, i: usize) -> [usize; 2] {
        self.incidence[i]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// Genus of a smooth lift of a totally degenerate curve with this dual
    /// graph: `1 - χ`.
    pub fn arithmetic_genus(&self) -> Result<usize, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok((1 - self.euler_characteristic()) as usize)
    }

    /// Edge-endpoint incidences at `v`; a loop counts twice.
    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        let i = self
            .vertex_position(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
        Ok(self.degrees()[i])
    }

    /// Degrees indexed by vertex position.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &[a, b] in &self.incidence {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Neighbour lists by vertex position, one entry per incidence.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &[a, b] in &self.incidence {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == adj.len()
    }

    /// Replaces every edge by a path of `e` edges.
    ///
    /// Internal vertex `p` (1 ≤ p < e) of edge `ε` is named `ε:p` and sits
    /// `p` steps from the tail; segment `k` joins positions `k` and `k+1` and
    /// is named `ε:k-(k+1)`. With `e = 1` the graph is returned unchanged.
    pub fn subdivide(&self, e: usize) -> Result<MultiGraph, GraphError> {
        if e == 0 {
            return Err(GraphError::ZeroSubdivision);
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::with_capacity(self.edges.len() * e);
        for edge in &self.edges {
            let station = |p: usize| -> VertexId {
                match p {
                    0 => edge.ends[0].clone(),
                    p if p == e => edge.ends[1].clone(),
                    p => chain_vertex_id(&edge.id, p),
                }
            };
            for p in 1..e {
                vertices.push(Vertex {
                    id: chain_vertex_id(&edge.id, p),
                    origin: Some(ChainPosition {
                        edge: edge.id.clone(),
                        position: p,
                    }),
                });
            }
            for k in 0..e {
                edges.push(Edge {
                    id: chain_segment_id(&edge.id, k),
                    ends: [station(k), station(k + 1)],
                    origin: Some(ChainPosition {
                        edge: edge.id.clone(),
                        position: k,
                    }),
                });
            }
        }
        MultiGraph::from_parts(vertices, edges)
    }

    /// Graphviz rendering with edge identifiers as labels. `colors` assigns a
    /// small integer (e.g. an orbit number) to each vertex.
    pub fn to_dot(&self, colors: Option<&BTreeMap<VertexId, usize>>) -> String {
        let mut out = String::from("graph G {\n");
        if colors.is_some() {
            out.push_str("  node [colorscheme=set312, style=filled];\n");
        }
        for v in &self.vertices {
            match colors.and_then(|c| c.get(&v.id)) {
                Some(c) => out.push_str(&format!(
                    "  \"{}\" [color={}, orbit={}];\n",
                    escape(&v.id.0),
                    c % 12 + 1,
                    c
                )),
                None => out.push_str(&format!("  \"{}\";\n", escape(&v.id.0))),
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                escape(&e.ends[0].0),
                escape(&e.ends[1].0),
                escape(&e.id.0)
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn chain_vertex_id(edge: &EdgeId, position: usize) -> VertexId {
    VertexId(format!("{}:{}", edge.0, position))
}

pub fn chain_segment_id(edge: &EdgeId, segment: usize) -> EdgeId {
    EdgeId(format!("{}:{}-{}", edge.0, segment, segment + 1))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Edge multiplicity between vertex positions, loops on the diagonal.
fn multiplicity_matrix(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0; n]; n];
    for &[a, b] in &g.incidence {
        m[a][b] += 1;
        if a != b {
            m[b][a] += 1;
        }
    }
    m
}

/// Whether a vertex bijection exists that carries edges to edges with
/// multiplicities and loops preserved. Backtracking with degree pruning;
/// meant for small graphs.
pub fn are_isomorphic(g1: &MultiGraph, g2: &MultiGraph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let (d1, d2) = (g1.degrees(), g2.degrees());
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return false;
    }
    let (m1, m2) = (multiplicity_matrix(g1), multiplicity_matrix(g2));

    // Visit g1 in BFS order from each component root so that every vertex
    // after the first of its component already has a mapped neighbour.
    let adj1 = g1.adjacency();
    let n = g1.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj1[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    struct Search<'a> {
        order: &'a [usize],
        d1: &'a [usize],
        d2: &'a [usize],
        m1: &'a [Vec<usize>],
        m2: &'a [Vec<usize>],
        forward: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, depth: usize) -> bool {
            let Some(&v) = self.order.get(depth) else {
                return true;
            };
            for w in 0..self.d2.len() {
                if self.used[w] || self.d1[v] != self.d2[w] || self.m1[v][v] != self.m2[w][w] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&u| {
                    let image = self.forward[u].expect("mapped earlier");
                    self.m1[v][u] == self.m2[w][image]
                });
                if !consistent {
                    continue;
                }
                self.forward[v] = Some(w);
                self.used[w] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.forward[v] = None;
                self.used[w] = false;
            }
            false
        }
    }

    let mut search = Search {
        order: &order,
        d1: &d1,
        d2: &d2,
        m1: &m1,
        m2: &m2,
        forward: vec![None; n],
        used: vec![false; n],
    };
    search.extend(0)
}
