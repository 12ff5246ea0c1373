//! Simple undirected graphs over dense vertex indices `0..n`.
//!
//! Edges are stored canonically as `(u, v)` with `u < v`, sorted
//! lexicographically. Every other module relies on that order for
//! deterministic output.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(Vertex, Vertex),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("graph has no vertices")]
    NoVertices,
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
}

/// Orders an edge so that the smaller endpoint comes first.
#[inline]
pub fn canonical(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph from an arbitrary list of vertex pairs.
    ///
    /// Pairs are canonicalized; loops, repeated pairs and endpoints outside
    /// `0..vertex_count` are rejected.
    pub fn from_edge_list<I>(vertex_count: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::OutOfRange { u, v, n: vertex_count });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            edges.push(canonical(u, v));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::Duplicate(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n: vertex_count, edges, adj })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Graph { n: vertex_count, edges: Vec::new(), adj: vec![Vec::new(); vertex_count] }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edge_list(n, pairs).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edge_list(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        Self::from_edge_list(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edge_list(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    /// Disjoint union; vertices of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[&Graph]) -> Self {
        let mut offset = 0;
        let mut pairs = Vec::new();
        for part in parts {
            pairs.extend(part.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
            offset += part.n;
        }
        Self::from_edge_list(offset, pairs).expect("union of simple graphs is simple")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.adj.iter().map(Vec::len).max().ok_or(GraphError::NoVertices)
    }

    /// Smallest-index vertex of maximum degree.
    pub fn max_degree_vertex(&self) -> Result<Vertex, GraphError> {
        let delta = self.max_degree()?;
        Ok((0..self.n).find(|&v| self.degree(v) == delta).expect("some vertex attains the maximum"))
    }

    /// Position of an edge in [`Graph::edges`], if present.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Returns a copy with one more edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        Graph::from_edge_list(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }

    /// Breadth-first order from `root`, visiting neighbours by increasing index.
    /// Only the component of `root` is returned.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Maximal connected vertex sets, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = self.bfs_order(s);
            for &v in &comp {
                seen[v] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for graphs with exactly one component. The null graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.bfs_order(0).len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges.len() + 1 == self.n
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> BTreeSet<Vertex> {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Splits a connected graph into a BFS spanning tree and the remaining edges.
    ///
    /// The BFS is rooted at the smallest-index vertex of maximum degree, so the
    /// root keeps all of its neighbours in the tree.
    pub fn spanning_decomposition(&self) -> Result<SpanningDecomposition, GraphError> {
        let root = self.max_degree_vertex()?;
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut seen = vec![false; self.n];
        let mut tree = Vec::with_capacity(self.n.saturating_sub(1));
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree.push(canonical(v, w));
                    queue.push_back(w);
                }
            }
        }
        tree.sort_unstable();
        let extra = self.edges.iter().copied().filter(|e| tree.binary_search(e).is_err()).collect();
        Ok(SpanningDecomposition { root, tree_edges: tree, extra_edges: extra })
    }

    /// E(X, Y): edges with one endpoint in `left` and the other in `right`,
    /// or with both endpoints in the set when `left == right`.
    pub fn cross_edges(&self, sel: &EdgeClassSelector) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| {
                (sel.left.contains(&u) && sel.right.contains(&v)) || (sel.left.contains(&v) && sel.right.contains(&u))
            })
            .collect()
    }

    /// Subgraph induced by `vertices`, relabelled to `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Graph::from_edge_list(vertices.len(), pairs).expect("induced subgraph is simple")
    }

    /// The graph restricted to the given edges, on the same vertex set.
    pub fn edge_subgraph(&self, edges: &[Edge]) -> Graph {
        Graph::from_edge_list(self.n, edges.iter().copied()).expect("subset of a simple edge set")
    }

    /// True when the graph is K5 (5 vertices, 10 edges, all degree 4).
    pub fn is_k5(&self) -> bool {
        self.n == 5 && self.edges.len() == 10 && (0..5).all(|v| self.degree(v) == 4)
    }
}

/// Spanning tree plus the edges that turn it back into the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningDecomposition {
    pub root: Vertex,
    pub tree_edges: Vec<Edge>,
    pub extra_edges: Vec<Edge>,
}

/// Selects E(left, right).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeClassSelector {
    pub left: BTreeSet<Vertex>,
    pub right: BTreeSet<Vertex>,
}

impl EdgeClassSelector {
    pub fn new(left: impl IntoIterator<Item = Vertex>, right: impl IntoIterator<Item = Vertex>) -> Self {
        EdgeClassSelector { left: left.into_iter().collect(), right: right.into_iter().collect() }
    }

    pub fn within(set: impl IntoIterator<Item = Vertex>) -> Self {
        let left: BTreeSet<_> = set.into_iter().collect();
        EdgeClassSelector { right: left.clone(), left }
    }
}
