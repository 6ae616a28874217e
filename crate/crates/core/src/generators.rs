//! Instance generators: vertex-cover gluing gadgets with known optimum, the
//! planted-cloud construction, and seeded random graphs.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`. The planted-cloud generator gives planted copy `j`
//! of hyperedge `e` its own ChaCha stream number `(e << 32) | j`, so every
//! copy's draws are independent of generation order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::io::serialize_unweighted;
use crate::pattern::{block_cut_tree, Pattern};
use crate::{Error, Result};

/// Where an output vertex of a gluing gadget came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// A vertex of the base graph.
    Base(usize),
    /// Pattern vertex `pattern_vertex` of the copy glued at `anchor`
    /// (an edge index for edge gluing, a base vertex for vertex gluing).
    Glued { anchor: usize, pattern_vertex: usize },
}

/// Output vertex -> origin.
pub type Provenance = Vec<Origin>;

/// Comment-prefixed provenance lines, so the output stays a valid graph file.
pub fn serialize_provenance(prov: &Provenance) -> String {
    let mut out = String::new();
    for (v, o) in prov.iter().enumerate() {
        match o {
            Origin::Base(b) => writeln!(out, "#! origin {v} base {b}").unwrap(),
            Origin::Glued { anchor, pattern_vertex } => {
                writeln!(out, "#! origin {v} glued {anchor} {pattern_vertex}").unwrap()
            }
        }
    }
    out
}

/// The pattern edge used for gluing: an edge of a leaf block with neither
/// endpoint a cut vertex.
pub fn gluing_edge(h: &Pattern) -> Result<(usize, usize)> {
    let g = h.graph();
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Err(Error::InvalidPattern(format!(
            "edge gluing needs minimum degree 2, vertex {v} has degree {}",
            g.degree(v)
        )));
    }
    let tree = block_cut_tree(g)?;
    let cut: BTreeSet<usize> = tree.cut_vertices.iter().copied().collect();
    for b in tree.leaf_blocks() {
        let block = &tree.blocks[b];
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                if g.has_edge(x, y) && !cut.contains(&x) && !cut.contains(&y) {
                    return Ok((x, y));
                }
            }
        }
    }
    Err(Error::InvalidPattern("no leaf-block edge avoids the cut vertices".into()))
}

/// Glues a fresh copy of `h` onto every edge of `g`, identifying the gluing
/// edge of `h` with that edge. The minimum `h`-hitting set of the result has
/// the size of a minimum vertex cover of `g`.
pub fn gadget_edge_glue(g: &Graph, h: &Pattern) -> Result<(Graph, Provenance)> {
    let (x, y) = gluing_edge(h)?;
    let hg = h.graph();
    let mut out = g.clone();
    let mut prov: Provenance = (0..g.n()).map(Origin::Base).collect();
    let base_edges: Vec<(usize, usize)> = g.edges().collect();
    for (idx, &(a, b)) in base_edges.iter().enumerate() {
        let mut map = vec![usize::MAX; hg.n()];
        map[x] = a;
        map[y] = b;
        for (p, slot) in map.iter_mut().enumerate() {
            if p != x && p != y {
                *slot = out.add_vertex();
                prov.push(Origin::Glued { anchor: idx, pattern_vertex: p });
            }
        }
        for (p, q) in hg.edges() {
            out.add_edge(map[p], map[q]);
        }
    }
    Ok((out, prov))
}

/// Glues `h - v0` onto every vertex of `g` through the neighbour `u0` of the
/// first degree-1 vertex `v0` of `h`. The minimum `h`-hitting set of the
/// result has the size of a minimum vertex cover of `g`.
pub fn gadget_vertex_glue(g: &Graph, h: &Pattern) -> Result<(Graph, Provenance)> {
    let hg = h.graph();
    let v0 = (0..hg.n())
        .find(|&v| hg.degree(v) == 1)
        .ok_or_else(|| Error::InvalidPattern("vertex gluing needs a degree-1 vertex".into()))?;
    let u0 = hg.neighbors(v0)[0];
    let mut out = g.clone();
    let mut prov: Provenance = (0..g.n()).map(Origin::Base).collect();
    for u in 0..g.n() {
        let mut map = vec![usize::MAX; hg.n()];
        map[u0] = u;
        for (p, slot) in map.iter_mut().enumerate() {
            if p != u0 && p != v0 {
                *slot = out.add_vertex();
                prov.push(Origin::Glued { anchor: u, pattern_vertex: p });
            }
        }
        for (p, q) in hg.edges() {
            if p != v0 && q != v0 {
                out.add_edge(map[p], map[q]);
            }
        }
    }
    Ok((out, prov))
}

/// Parameters of the planted-cloud construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLParams {
    /// Number of base vertices.
    pub n: usize,
    /// Base hyperedges; the `i`-th listed vertex hosts pattern vertex `i`.
    pub hyperedges: Vec<Vec<usize>>,
    /// Cloud size `B`.
    pub clouds: usize,
    /// Copies planted per hyperedge are `lambda * clouds`.
    pub lambda: usize,
    pub seed: u64,
}

/// A planted copy: hyperedge index, copy number `j` (1-based) and the image of
/// each pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedCopy {
    pub hyperedge: usize,
    pub j: usize,
    pub image: Vec<usize>,
}

/// Output of [`gl_random_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedGraph {
    pub graph: Graph,
    /// Cloud of each base vertex: vertices `v*B .. (v+1)*B`.
    pub clouds: Vec<Vec<usize>>,
    /// First tag planted on each edge `(u, v)`, `u < v`.
    pub tags: BTreeMap<(usize, usize), (usize, usize)>,
    /// Every tag planted on each edge, in planting order.
    pub all_tags: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
    pub planted: Vec<PlantedCopy>,
}

impl TaggedGraph {
    /// Whether the copy `image` of `h` is intended: all its edges carry one
    /// common tag.
    pub fn is_intended(&self, h: &Graph, image: &[usize]) -> bool {
        let mut common: Option<BTreeSet<(usize, usize)>> = None;
        for (p, q) in h.edges() {
            let (a, b) = (image[p].min(image[q]), image[p].max(image[q]));
            let Some(tags) = self.all_tags.get(&(a, b)) else { return false };
            let tags: BTreeSet<_> = tags.iter().copied().collect();
            common = Some(match common {
                None => tags,
                Some(c) => c.intersection(&tags).copied().collect(),
            });
        }
        common.is_some_and(|c| !c.is_empty())
    }

    /// Graph text followed by `#! cloud` and `#! tag` sidecar lines.
    pub fn serialize(&self) -> String {
        let mut out = serialize_unweighted(&self.graph);
        for (v, cloud) in self.clouds.iter().enumerate() {
            writeln!(out, "#! cloud {v} {}", crate::document::join(cloud)).unwrap();
        }
        for (&(u, v), tags) in &self.all_tags {
            for &(e, j) in tags {
                writeln!(out, "#! tag {u} {v} {e} {j}").unwrap();
            }
        }
        out
    }
}

/// Plants `lambda * clouds` copies of `h` per base hyperedge: copy `j` of
/// hyperedge `e = (v_1..v_k)` draws `ℓ_1..ℓ_k` uniformly from the clouds and
/// maps pattern vertex `i` to `(v_i, ℓ_i)`, tagging its edges `(e, j)`.
pub fn gl_random_instance(h: &Pattern, p: &GLParams) -> Result<TaggedGraph> {
    let k = h.k();
    if p.clouds == 0 || p.lambda == 0 {
        return Err(Error::InvalidInput("cloud size and lambda must be at least 1".into()));
    }
    for (i, e) in p.hyperedges.iter().enumerate() {
        let distinct: BTreeSet<_> = e.iter().collect();
        if e.len() != k || distinct.len() != k {
            return Err(Error::InvalidInput(format!(
                "hyperedge {i} has {} distinct vertices, pattern has k = {k}",
                distinct.len()
            )));
        }
        if let Some(v) = e.iter().find(|&&v| v >= p.n) {
            return Err(Error::InvalidInput(format!("hyperedge {i} uses vertex {v} >= n = {}", p.n)));
        }
    }
    let b = p.clouds;
    let mut graph = Graph::new(p.n * b);
    let clouds = (0..p.n).map(|v| (v * b..(v + 1) * b).collect()).collect();
    let mut tags = BTreeMap::new();
    let mut all_tags: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut planted = Vec::new();
    let base = ChaCha8Rng::seed_from_u64(p.seed);
    for (e, verts) in p.hyperedges.iter().enumerate() {
        for j in 1..=p.lambda * b {
            let mut rng = base.clone();
            rng.set_stream(((e as u64) << 32) | j as u64);
            let image: Vec<usize> = verts.iter().map(|&v| v * b + rng.gen_range(0..b)).collect();
            for (x, y) in h.graph().edges() {
                let key = (image[x].min(image[y]), image[x].max(image[y]));
                graph.add_edge(key.0, key.1);
                tags.entry(key).or_insert((e, j));
                all_tags.entry(key).or_default().push((e, j));
            }
            planted.push(PlantedCopy { hyperedge: e, j, image });
        }
    }
    Ok(TaggedGraph { graph, clouds, tags, all_tags, planted })
}

/// `m` distinct random `k`-subsets of `0..n`, each listed in increasing order,
/// sorted lexicographically.
pub fn random_uniform_hypergraph(n: usize, m: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    let total = (0..k).fold(1u128, |acc, i| acc * (n.saturating_sub(i)) as u128 / (i as u128 + 1));
    if k > n || (m as u128) > total {
        return Err(Error::InvalidInput(format!("cannot draw {m} distinct {k}-subsets of {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    while edges.len() < m {
        let mut e: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
        e.sort_unstable();
        edges.insert(e);
    }
    Ok(edges.into_iter().collect())
}

/// Erdős–Rényi `G(n, p)`: pairs `(u, v)`, `u < v`, in lexicographic order each
/// kept with probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}
