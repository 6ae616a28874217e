//! Simple undirected graphs, vertex-weighted graphs, digraphs and the copy
//! hypergraph.

use std::collections::BTreeSet;

use crate::scalar::{sum, Scalar};
use crate::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted, so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Self-loops, out-of-range endpoints and
    /// repeated edges are rejected.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("edge {u}-{v} out of range (n = {n})")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at {u}")));
            }
            if !g.add_edge(u, v) {
                return Err(Error::InvalidInput(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts the edge `u-v`; returns `false` if it was already present.
    ///
    /// Panics on a self-loop or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Returns the graph and the local-to-original id map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                let j = local[u];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j);
                }
            }
        }
        (g, vertices.to_vec())
    }

    /// The graph with `removed` vertices deleted, relabelled in increasing
    /// order of the kept ids.
    pub fn remove_vertices(&self, removed: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        self.induced_subgraph(&kept)
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// smallest vertex. Vertices in `skip` are treated as absent.
    pub fn components_avoiding(&self, skip: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] || skip.contains(&s) {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] && !skip.contains(&w) {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&BTreeSet::new())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        for _ in 0..other.n() {
            g.add_vertex();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off);
        }
        g
    }
}

/// A graph with a non-negative exact weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph<W> {
    pub graph: Graph,
    weights: Vec<W>,
}

impl<W: Scalar> WeightedGraph<W> {
    pub fn new(graph: Graph, weights: Vec<W>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::InvalidInput(format!("{} weights for {} vertices", weights.len(), graph.n())));
        }
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidInput(format!("negative weight on vertex {v}")));
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// All weights 1.
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![W::one(); graph.n()];
        WeightedGraph { graph, weights }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weight(&self, v: usize) -> &W {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    /// Panics on a negative weight.
    pub fn set_weight(&mut self, v: usize, w: W) {
        assert!(!w.is_negative(), "negative weight on vertex {v}");
        self.weights[v] = w;
    }

    pub fn weight_of<'a, I: IntoIterator<Item = &'a usize>>(&self, set: I) -> W {
        sum(set.into_iter().map(|&v| self.weights[v].clone()))
    }

    pub fn total_weight(&self) -> W {
        sum(self.weights.iter().cloned())
    }

    /// The weighted subgraph induced on `vertices` plus the local-to-original map.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (WeightedGraph<W>, Vec<usize>) {
        let (graph, map) = self.graph.induced_subgraph(vertices);
        let weights = map.iter().map(|&v| self.weights[v].clone()).collect();
        (WeightedGraph { graph, weights }, map)
    }

    /// Vertices with strictly positive weight, in increasing order.
    pub fn positive_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.weights[v].is_positive()).collect()
    }
}

/// A directed graph without self-loops on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Adds `u -> v`; returns `false` if it was already present. Panics on a
    /// self-loop.
    pub fn add_arc(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(v < self.n(), "arc head {v} out of range");
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.out[u].insert(pos, v);
                true
            }
        }
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// The underlying undirected simple graph.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }
}

/// Hypergraph whose hyperedges are vertex sets of pattern copies.
///
/// Hyperedges are sorted vertex lists, deduplicated, and stored in
/// lexicographic order, so two hypergraphs built from the same sets in any
/// insertion order compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CopyHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl CopyHypergraph {
    /// Panics on an empty hyperedge or an out-of-range vertex.
    pub fn new<I, E>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = usize>,
    {
        let set: BTreeSet<Vec<usize>> = edges
            .into_iter()
            .map(|e| {
                let mut e: Vec<usize> = e.into_iter().collect();
                e.sort_unstable();
                e.dedup();
                assert!(!e.is_empty(), "empty hyperedge");
                assert!(e.iter().all(|&v| v < n), "hyperedge vertex out of range");
                e
            })
            .collect();
        CopyHypergraph { n, edges: set.into_iter().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertices lying in at least one hyperedge, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Hyperedges avoiding `v`.
    pub fn without_vertex(&self, v: usize) -> CopyHypergraph {
        CopyHypergraph {
            n: self.n,
            edges: self.edges.iter().filter(|e| e.binary_search(&v).is_err()).cloned().collect(),
        }
    }

    /// Whether `set` meets every hyperedge.
    pub fn is_cover(&self, set: &BTreeSet<usize>) -> bool {
        self.edges.iter().all(|e| e.iter().any(|v| set.contains(v)))
    }
}
