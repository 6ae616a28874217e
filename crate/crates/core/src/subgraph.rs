//! Backtracking enumeration of (not necessarily induced) copies of a pattern
//! graph inside a host graph.
//!
//! Pattern vertices are matched in a connectivity-respecting order: every
//! vertex after the first of its component is adjacent to an already matched
//! vertex, so its candidates are the host neighbours of that vertex's image.
//! Candidates are scanned in increasing id order, which makes every result
//! deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use crate::graph::{CopyHypergraph, Graph};
use crate::{Error, Result};

/// Injective map from pattern vertices to host vertices, indexed by pattern
/// vertex.
pub type Embedding = Vec<usize>;

/// A graph with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: usize,
}

/// Upper bound on the number of distinct copies an enumeration may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_copies: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_copies: 1_000_000 }
    }
}

impl EnumerationBudget {
    pub fn new(max_copies: usize) -> Self {
        EnumerationBudget { max_copies }
    }
}

/// One distinct copy: its sorted vertex set and the first embedding found on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copy {
    pub vertices: Vec<usize>,
    pub witness: Embedding,
}

/// Result of [`enumerate_copies`]. When `exceeded` is set the list is partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyEnumeration {
    pub copies: Vec<Copy>,
    pub exceeded: bool,
}

/// Constraints applied during a search.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct SearchOptions<'a> {
    /// Pattern vertex forced onto a host vertex.
    pub fixed: Option<(usize, usize)>,
    /// Host vertices usable by any pattern vertex (`None` = all).
    pub allowed: Option<&'a [bool]>,
}

struct Plan {
    order: Vec<usize>,
    /// For `order[i]`: an earlier-matched neighbour, if any.
    anchor: Vec<Option<usize>>,
    /// For `order[i]`: all earlier-matched neighbours.
    back: Vec<Vec<usize>>,
}

fn plan(pattern: &Graph, start: Option<usize>) -> Plan {
    let k = pattern.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let mut anchor = Vec::with_capacity(k);
    let mut seeds: Vec<usize> = (0..k).collect();
    // Highest degree first gives the most selective start, unless a root is fixed.
    seeds.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    if let Some(s) = start {
        seeds.retain(|&v| v != s);
        seeds.insert(0, s);
    }
    for s in seeds {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        anchor.push(None);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in pattern.neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                    anchor.push(Some(u));
                    queue.push_back(w);
                }
            }
        }
    }
    let mut pos = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| pattern.neighbors(v).iter().copied().filter(|&w| pos[w] < i).collect())
        .collect();
    Plan { order, anchor, back }
}

struct Search<'a, F> {
    pattern: &'a Graph,
    host: &'a Graph,
    plan: Plan,
    opts: SearchOptions<'a>,
    image: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
    fn usable(&self, depth: usize, c: usize) -> bool {
        let p = self.plan.order[depth];
        !self.used[c]
            && self.opts.allowed.is_none_or(|a| a[c])
            && self.host.degree(c) >= self.pattern.degree(p)
            && self.plan.back[depth].iter().all(|&q| self.host.has_edge(self.image[q], c))
    }

    fn extend(&mut self, depth: usize) -> ControlFlow<()> {
        if depth == self.plan.order.len() {
            return (self.visit)(&self.image);
        }
        let p = self.plan.order[depth];
        let candidates: Vec<usize> = match (self.opts.fixed, self.plan.anchor[depth]) {
            (Some((fp, fh)), _) if fp == p => vec![fh],
            (_, Some(a)) => self.host.neighbors(self.image[a]).to_vec(),
            (_, None) => (0..self.host.n()).collect(),
        };
        for c in candidates {
            if !self.usable(depth, c) {
                continue;
            }
            self.image[p] = c;
            self.used[c] = true;
            let flow = self.extend(depth + 1);
            self.used[c] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every embedding of `pattern` into `host` satisfying
/// `opts`, in deterministic order, until it breaks.
pub(crate) fn for_each_embedding<F>(pattern: &Graph, host: &Graph, opts: SearchOptions<'_>, visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = pattern.n();
    if k > host.n() {
        return;
    }
    if let Some((p, h)) = opts.fixed {
        assert!(p < k && h < host.n(), "fixed pair out of range");
    }
    let mut search = Search {
        pattern,
        host,
        plan: plan(pattern, opts.fixed.map(|(p, _)| p)),
        opts,
        image: vec![usize::MAX; k],
        used: vec![false; host.n()],
        visit,
    };
    let _ = search.extend(0);
}

/// First embedding satisfying `opts`, if any.
pub(crate) fn first_embedding(pattern: &Graph, host: &Graph, opts: SearchOptions<'_>) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(pattern, host, opts, |emb| {
        found = Some(emb.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Distinct vertex sets hosting a copy of `pattern` in `host`, sorted
/// lexicographically, each with the first embedding found on it.
pub fn enumerate_copies(host: &Graph, pattern: &Graph, budget: EnumerationBudget) -> CopyEnumeration {
    enumerate_copies_with(host, pattern, budget, SearchOptions::default())
}

pub(crate) fn enumerate_copies_with(
    host: &Graph,
    pattern: &Graph,
    budget: EnumerationBudget,
    opts: SearchOptions<'_>,
) -> CopyEnumeration {
    let mut sets: BTreeMap<Vec<usize>, Embedding> = BTreeMap::new();
    let mut exceeded = false;
    for_each_embedding(pattern, host, opts, |emb| {
        let mut key = emb.to_vec();
        key.sort_unstable();
        if !sets.contains_key(&key) {
            if sets.len() >= budget.max_copies {
                exceeded = true;
                return ControlFlow::Break(());
            }
            sets.insert(key, emb.to_vec());
        }
        ControlFlow::Continue(())
    });
    let copies = sets.into_iter().map(|(vertices, witness)| Copy { vertices, witness }).collect();
    CopyEnumeration { copies, exceeded }
}

/// Whether `host` contains a copy of `pattern`.
pub fn contains_copy(host: &Graph, pattern: &Graph) -> bool {
    first_embedding(pattern, host, SearchOptions::default()).is_some()
}

/// Host vertices `u` such that some embedding maps `root` to `u`.
pub fn central_vertices(host: &Graph, pattern: &Graph, root: usize) -> Vec<usize> {
    (0..host.n())
        .filter(|&u| first_embedding(pattern, host, SearchOptions { fixed: Some((root, u)), allowed: None }).is_some())
        .collect()
}

/// An embedding of `f` mapping its root to `at` whose other vertices avoid
/// `forbidden`.
pub fn find_rooted_copy(host: &Graph, f: &RootedGraph, at: usize, forbidden: &BTreeSet<usize>) -> Option<Embedding> {
    let mut allowed = vec![true; host.n()];
    for &v in forbidden {
        if v < host.n() {
            allowed[v] = false;
        }
    }
    allowed[at] = true;
    first_embedding(&f.graph, host, SearchOptions { fixed: Some((f.root, at)), allowed: Some(&allowed) })
}

/// The copy hypergraph: one hyperedge per distinct vertex set hosting a copy.
pub fn build_copy_hypergraph(host: &Graph, pattern: &Graph, budget: EnumerationBudget) -> Result<CopyHypergraph> {
    let found = enumerate_copies(host, pattern, budget);
    if found.exceeded {
        return Err(Error::BudgetExceeded { limit: budget.max_copies });
    }
    Ok(CopyHypergraph::new(host.n(), found.copies.into_iter().map(|c| c.vertices)))
}

/// Whether `emb` is an injective edge-preserving map of `pattern` into `host`.
pub fn is_embedding(pattern: &Graph, host: &Graph, emb: &[usize]) -> bool {
    if emb.len() != pattern.n() || emb.iter().any(|&v| v >= host.n()) {
        return false;
    }
    let distinct: BTreeSet<_> = emb.iter().collect();
    distinct.len() == emb.len() && pattern.edges().all(|(u, v)| host.has_edge(emb[u], emb[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every injective map of the pattern into every k-subset, checked naively.
    fn naive_copy_sets(host: &Graph, pattern: &Graph) -> BTreeSet<Vec<usize>> {
        fn rec(pattern: &Graph, host: &Graph, img: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
            if img.len() == pattern.n() {
                if pattern.edges().all(|(u, v)| host.has_edge(img[u], img[v])) {
                    let mut s = img.clone();
                    s.sort_unstable();
                    out.insert(s);
                }
                return;
            }
            for c in 0..host.n() {
                if !img.contains(&c) {
                    img.push(c);
                    rec(pattern, host, img, out);
                    img.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        rec(pattern, host, &mut Vec::new(), &mut out);
        out
    }

    fn count_embeddings(pattern: &Graph, host: &Graph) -> usize {
        let mut n = 0;
        for_each_embedding(pattern, host, SearchOptions::default(), |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    #[test]
    fn p3_in_triangle() {
        let p3 = Graph::path(3);
        let k3 = Graph::complete(3);
        // 6 injective maps, all edge-preserving; one vertex set.
        assert_eq!(count_embeddings(&p3, &k3), 6);
        let found = enumerate_copies(&k3, &p3, EnumerationBudget::default());
        assert_eq!(found.copies.len(), 1);
        assert_eq!(found.copies[0].vertices, vec![0, 1, 2]);
        assert!(is_embedding(&p3, &k3, &found.copies[0].witness));
    }

    #[test]
    fn triangles_of_k4() {
        let found = enumerate_copies(&Graph::complete(4), &Graph::complete(3), EnumerationBudget::default());
        let sets: Vec<_> = found.copies.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn pattern_larger_than_host() {
        assert!(enumerate_copies(&Graph::complete(3), &Graph::path(4), EnumerationBudget::default()).copies.is_empty());
    }

    #[test]
    fn budget_flags_partial_result() {
        let found = enumerate_copies(&Graph::complete(5), &Graph::complete(3), EnumerationBudget::new(3));
        assert!(found.exceeded);
        assert_eq!(found.copies.len(), 3);
        assert!(build_copy_hypergraph(&Graph::complete(5), &Graph::complete(3), EnumerationBudget::new(3)).is_err());
    }

    #[test]
    fn central_vertices_examples() {
        let p3 = Graph::path(3);
        assert_eq!(central_vertices(&Graph::star(3), &p3, 1), vec![0]);
        assert_eq!(central_vertices(&Graph::path(4), &p3, 1), vec![1, 2]);
        assert!(central_vertices(&Graph::path(2), &p3, 1).is_empty());
    }

    #[test]
    fn rooted_copy_examples() {
        let edge = RootedGraph { graph: Graph::path(2), root: 0 };
        let tri = RootedGraph { graph: Graph::complete(3), root: 0 };
        let c5 = Graph::cycle(5);
        assert!(find_rooted_copy(&c5, &edge, 2, &BTreeSet::new()).is_some());
        assert!(find_rooted_copy(&c5, &tri, 2, &BTreeSet::new()).is_none());
        let nbrs: BTreeSet<usize> = c5.neighbors(2).iter().copied().collect();
        assert!(find_rooted_copy(&c5, &edge, 2, &nbrs).is_none());
        assert_eq!(find_rooted_copy(&Graph::complete(3), &edge, 1, &BTreeSet::new()), Some(vec![1, 0]));
    }

    #[test]
    fn hypergraph_examples() {
        let h = build_copy_hypergraph(&Graph::complete(3), &Graph::path(3), EnumerationBudget::default()).unwrap();
        assert_eq!(h.vertices().len(), 3);
        assert_eq!(h.edge_count(), 1);
        let two = Graph::path(3).disjoint_union(&Graph::path(3));
        let h = build_copy_hypergraph(&two, &Graph::path(3), EnumerationBudget::default()).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.vertices().len(), 6);
        let free = build_copy_hypergraph(&Graph::path(2), &Graph::path(3), EnumerationBudget::default()).unwrap();
        assert!(free.is_empty());
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let patterns = [Graph::path(3), Graph::star(3), Graph::path(4), Graph::complete(3), Graph::cycle(4)];
        let mut state = 0x1234_5678_u64;
        for trial in 0..60 {
            let n = 3 + trial % 6;
            let mut host = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if (state >> 40) % 100 < 45 {
                        host.add_edge(u, v);
                    }
                }
            }
            for p in &patterns {
                let fast: BTreeSet<_> = enumerate_copies(&host, p, EnumerationBudget::default())
                    .copies
                    .into_iter()
                    .map(|c| c.vertices)
                    .collect();
                assert_eq!(fast, naive_copy_sets(&host, p));
                for &u in &central_vertices(&host, p, 0) {
                    let rooted = RootedGraph { graph: p.clone(), root: 0 };
                    assert!(find_rooted_copy(&host, &rooted, u, &BTreeSet::new()).is_some());
                }
            }
        }
    }
}
