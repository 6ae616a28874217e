//! Structure of the forbidden pattern: blocks and cut vertices, semi-symmetric
//! cut vertices, and the weighted gadget built from one.
//!
//! A cut vertex `v` splits the pattern into branches `F_1, ..., F_r`: the
//! components of `H - v`, each with `v` put back. `v` is semi-symmetric when
//! some branch embeds into a different branch with `v` fixed. Gluing a second
//! copy of the larger branch at `v` yields a gadget on which every hitting set
//! pays at least 1 under the half/one weighting built by
//! [`construct_good_graph`].

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::graph::Graph;
use crate::scalar::{sum, Scalar};
use crate::subgraph::{for_each_embedding, RootedGraph, SearchOptions};
use crate::{Error, Result};

/// A connected pattern graph on at least two vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    graph: Graph,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.n() < 2 {
            return Err(Error::InvalidPattern(format!("pattern needs at least 2 vertices, got {}", graph.n())));
        }
        if !graph.is_connected() {
            return Err(Error::InvalidPattern("pattern must be connected".into()));
        }
        Ok(Pattern { graph })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of vertices.
    pub fn k(&self) -> usize {
        self.graph.n()
    }
}

/// Blocks (maximal 2-connected pieces, or bridges) and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Sorted vertex sets, ordered lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
    /// `(block index, cut vertex)` incidences, sorted.
    pub incidences: Vec<(usize, usize)>,
}

impl BlockCutTree {
    /// Blocks containing exactly one cut vertex (or the only block).
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.incidences.iter().filter(|&&(bb, _)| bb == b).count() <= 1).collect()
    }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<usize>>,
    cuts: BTreeSet<usize>,
}

impl Tarjan<'_> {
    fn dfs(&mut self, u: usize, parent: Option<usize>) {
        self.timer += 1;
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        let mut children = 0;
        for &w in self.g.neighbors(u) {
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push((u, w));
                self.dfs(w, Some(u));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cuts.insert(u);
                    }
                    let mut block = BTreeSet::new();
                    while let Some((a, b)) = self.stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, w) {
                            break;
                        }
                    }
                    self.blocks.push(block.into_iter().collect());
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[u] {
                self.stack.push((u, w));
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

/// Block-cut decomposition of a connected graph.
pub fn block_cut_tree(h: &Graph) -> Result<BlockCutTree> {
    if h.n() == 0 || !h.is_connected() {
        return Err(Error::InvalidInput("block-cut tree needs a nonempty connected graph".into()));
    }
    if h.n() == 1 {
        return Ok(BlockCutTree { blocks: vec![vec![0]], cut_vertices: vec![], incidences: vec![] });
    }
    let mut t = Tarjan {
        g: h,
        disc: vec![0; h.n()],
        low: vec![0; h.n()],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cuts: BTreeSet::new(),
    };
    t.dfs(0, None);
    let mut blocks = t.blocks;
    blocks.sort();
    let cut_vertices: Vec<usize> = t.cuts.into_iter().collect();
    let mut incidences = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        for &c in &cut_vertices {
            if block.binary_search(&c).is_ok() {
                incidences.push((b, c));
            }
        }
    }
    Ok(BlockCutTree { blocks, cut_vertices, incidences })
}

/// Whether `h` has at least 3 vertices, is connected, and has no cut vertex.
pub fn is_two_connected(h: &Graph) -> bool {
    h.n() >= 3 && h.is_connected() && block_cut_tree(h).map(|t| t.cut_vertices.is_empty()).unwrap_or(false)
}

/// Branches at a cut vertex with a witnessed root-fixing containment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    pub root: usize,
    /// Sorted pattern vertex sets, each containing `root`, ordered by their
    /// smallest non-root vertex.
    pub branches: Vec<Vec<usize>>,
    /// `(i, j)`: branch `i` embeds into branch `j`.
    pub witness: (usize, usize),
    /// Image in branch `j` of each vertex of branch `i`, as
    /// `(vertex of F_i, vertex of F_j)` pairs sorted by the first component.
    pub embedding: Vec<(usize, usize)>,
}

impl RootedDecomposition {
    pub fn small_branch(&self) -> &[usize] {
        &self.branches[self.witness.0]
    }

    pub fn large_branch(&self) -> &[usize] {
        &self.branches[self.witness.1]
    }

    /// Checks the structural invariants against `p`.
    pub fn is_valid_for(&self, p: &Pattern) -> bool {
        let h = p.graph();
        let (i, j) = self.witness;
        if i == j || i >= self.branches.len() || j >= self.branches.len() {
            return false;
        }
        let mut covered = BTreeSet::new();
        for b in &self.branches {
            if b.binary_search(&self.root).is_err() {
                return false;
            }
            for &v in b {
                if v != self.root && !covered.insert(v) {
                    return false;
                }
            }
            if !h.induced_subgraph(b).0.is_connected() {
                return false;
            }
        }
        covered.insert(self.root);
        if covered.len() != p.k() {
            return false;
        }
        let small = self.small_branch();
        let large = self.large_branch();
        let map = |x: usize| self.embedding.iter().find(|&&(a, _)| a == x).map(|&(_, b)| b);
        if self.embedding.len() != small.len() || map(self.root) != Some(self.root) {
            return false;
        }
        let images: BTreeSet<usize> = self.embedding.iter().map(|&(_, b)| b).collect();
        images.len() == small.len()
            && images.iter().all(|b| large.binary_search(b).is_ok())
            && small.iter().all(|&a| map(a).is_some())
            && h.induced_subgraph(small)
                .0
                .edges()
                .all(|(a, b)| h.has_edge(map(small[a]).unwrap(), map(small[b]).unwrap()))
    }
}

/// Branches of `h` at `v`: components of `h - v` with `v` re-attached.
pub fn branches_at(h: &Graph, v: usize) -> Vec<Vec<usize>> {
    h.components_avoiding(&BTreeSet::from([v]))
        .into_iter()
        .map(|mut c| {
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect()
}

/// The subgraph of `h` induced on `vertices`, rooted at `root`, with its
/// local-to-original vertex map.
pub fn rooted_piece(h: &Graph, vertices: &[usize], root: usize) -> (RootedGraph, Vec<usize>) {
    let (graph, map) = h.induced_subgraph(vertices);
    let root = map.iter().position(|&x| x == root).expect("root in piece");
    (RootedGraph { graph, root }, map)
}

/// Lexicographically least root-fixing embedding of `small` into `big`
/// (indexed by the vertices of `small`), if one exists.
pub fn rooted_subgraph_contains(small: &RootedGraph, big: &RootedGraph) -> Option<Vec<usize>> {
    if small.graph.n() > big.graph.n() {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    let opts = SearchOptions { fixed: Some((small.root, big.root)), allowed: None };
    for_each_embedding(&small.graph, &big.graph, opts, |emb| {
        if best.as_deref().is_none_or(|b| emb < b) {
            best = Some(emb.to_vec());
        }
        ControlFlow::Continue(())
    });
    best
}

/// First semi-symmetric cut vertex in deterministic order: smallest vertex,
/// then smallest `(i, j)`.
pub fn find_semi_symmetric_cut_vertex(p: &Pattern) -> Option<RootedDecomposition> {
    let h = p.graph();
    let tree = block_cut_tree(h).expect("patterns are connected");
    for &v in &tree.cut_vertices {
        let branches = branches_at(h, v);
        assert!(branches.len() >= 2, "cut vertex {v} has a single branch");
        let pieces: Vec<_> = branches.iter().map(|b| rooted_piece(h, b, v)).collect();
        for i in 0..branches.len() {
            for j in 0..branches.len() {
                if i == j {
                    continue;
                }
                let (small, small_map) = &pieces[i];
                let (big, big_map) = &pieces[j];
                if let Some(emb) = rooted_subgraph_contains(small, big) {
                    let embedding = emb.iter().enumerate().map(|(a, &b)| (small_map[a], big_map[b])).collect();
                    return Some(RootedDecomposition { root: v, branches, witness: (i, j), embedding });
                }
            }
        }
    }
    None
}

/// Which vertices of a gadget come from `F_i`, `F_j` and the added copy of `F_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetParts {
    pub root: usize,
    pub small: Vec<usize>,
    pub large: Vec<usize>,
    pub large_copy: Vec<usize>,
}

/// A gadget graph with vertex weights and a goodness factor `t`: every
/// pattern-hitting set of the gadget should weigh at least `total / t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodGraph<W> {
    pub graph: Graph,
    pub weights: Vec<W>,
    pub factor: W,
    pub parts: Option<GadgetParts>,
}

impl<W: Scalar> GoodGraph<W> {
    /// The pattern itself with unit weights, which is trivially `k`-good.
    pub fn trivial(p: &Pattern) -> Self {
        GoodGraph {
            graph: p.graph().clone(),
            weights: vec![W::one(); p.k()],
            factor: W::from_int(p.k() as i64),
            parts: None,
        }
    }

    pub fn total_weight(&self) -> W {
        sum(self.weights.iter().cloned())
    }
}

/// The pattern with an extra copy of the larger witness branch glued at the
/// root, weighted 1/2 on the non-root vertices of both witness branches and
/// the copy, and 1 elsewhere. Its factor is `k - (|F_i| - 1) / 2`.
pub fn construct_good_graph<W: Scalar>(p: &Pattern, d: &RootedDecomposition) -> GoodGraph<W> {
    let h = p.graph();
    let v = d.root;
    let small = d.small_branch().to_vec();
    let large = d.large_branch().to_vec();

    let mut graph = h.clone();
    let mut copy_of = vec![usize::MAX; h.n()];
    copy_of[v] = v;
    let mut large_copy = vec![v];
    for &x in large.iter().filter(|&&x| x != v) {
        copy_of[x] = graph.add_vertex();
        large_copy.push(copy_of[x]);
    }
    let (piece, map) = h.induced_subgraph(&large);
    for (a, b) in piece.edges() {
        graph.add_edge(copy_of[map[a]], copy_of[map[b]]);
    }

    let half: BTreeSet<usize> = small.iter().chain(&large).chain(&large_copy).copied().filter(|&x| x != v).collect();
    let weights = (0..graph.n()).map(|x| if half.contains(&x) { W::half() } else { W::one() }).collect();
    let factor = W::from_int(p.k() as i64) - W::from_int(small.len() as i64 - 1) * W::half();
    GoodGraph { graph, weights, factor, parts: Some(GadgetParts { root: v, small, large, large_copy }) }
}

/// Approximability class of a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Has a semi-symmetric cut vertex; the `k - 1/2` algorithm applies.
    SemiSymmetric(RootedDecomposition),
    /// 2-connected; only the trivial `k` factor is offered.
    TwoConnected,
    /// Neither; the trivial `k` factor is used.
    Unknown,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::SemiSymmetric(_) => "SemiSymmetric",
            Classification::TwoConnected => "TwoConnected",
            Classification::Unknown => "Unknown",
        }
    }
}

pub fn classify_pattern(p: &Pattern) -> Classification {
    if is_two_connected(p.graph()) {
        return Classification::TwoConnected;
    }
    match find_semi_symmetric_cut_vertex(p) {
        Some(d) => Classification::SemiSymmetric(d),
        None => Classification::Unknown,
    }
}
