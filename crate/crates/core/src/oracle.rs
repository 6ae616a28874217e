//! Exact brute-force references: minimum-weight hitting sets, minimum vertex
//! covers and gadget goodness.
//!
//! These are exponential and exist to validate the approximation pipeline on
//! small instances.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::graph::{Graph, WeightedGraph};
use crate::pattern::{GoodGraph, Pattern};
use crate::scalar::Scalar;
use crate::subgraph::{build_copy_hypergraph, EnumerationBudget};
use crate::{Error, Result};

/// Default vertex cap for the exact solvers.
pub const DEFAULT_CAP: usize = 20;

/// Bit-set search needs vertex ids below this.
const HARD_CAP: usize = 64;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

type Key<W> = (W, usize);

struct HittingSearch<'a, W> {
    edges: Vec<u64>,
    weights: &'a [W],
    best: Option<(Key<W>, u64)>,
    /// Inclusive bound on acceptable keys; the search stops at the first
    /// solution when set.
    limit: Option<Key<W>>,
}

impl<W: Scalar> HittingSearch<'_, W> {
    fn done(&self) -> bool {
        self.limit.is_some() && self.best.is_some()
    }

    fn hopeless(&self, lb: &Key<W>) -> bool {
        if let Some(limit) = &self.limit {
            if lb > limit {
                return true;
            }
        }
        matches!(&self.best, Some((b, _)) if lb >= b)
    }

    fn run(&mut self, chosen: u64, excluded: u64, weight: W, card: usize) {
        if self.done() {
            return;
        }
        let mut branch_edge: Option<u64> = None;
        let mut packed: u64 = 0;
        let mut lb_weight = weight.clone();
        let mut lb_card = card;
        for &e in &self.edges {
            if e & chosen != 0 {
                continue;
            }
            let open = e & !excluded;
            if open == 0 {
                return;
            }
            if branch_edge.is_none_or(|b| open.count_ones() < b.count_ones()) {
                branch_edge = Some(open);
            }
            if open & packed == 0 {
                packed |= open;
                lb_weight = lb_weight + bits(open).map(|v| self.weights[v].clone()).min().unwrap();
                lb_card += 1;
            }
        }
        let Some(open) = branch_edge else {
            let key = (weight, card);
            if !self.hopeless(&key) {
                self.best = Some((key, chosen));
            }
            return;
        };
        if self.hopeless(&(lb_weight, lb_card)) {
            return;
        }
        let mut excl = excluded;
        for v in bits(open) {
            self.run(chosen | 1 << v, excl, weight.clone() + self.weights[v].clone(), card + 1);
            if self.done() {
                return;
            }
            excl |= 1 << v;
        }
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

fn to_set(mask: u64) -> BTreeSet<usize> {
    bits(mask).collect()
}

/// Minimum-weight set of vertices meeting every set in `edges` (bitmasks over
/// vertices `0..weights.len()`). Among optima: fewest vertices, then the
/// lexicographically smallest sorted vertex list.
fn min_weight_hitting<W: Scalar>(edges: Vec<u64>, weights: &[W]) -> Option<(BTreeSet<usize>, W)> {
    let mut search = HittingSearch { edges, weights, best: None, limit: None };
    search.run(0, 0, W::zero(), 0);
    let (key, _) = search.best.clone()?;

    // Fix vertices in increasing order, keeping each one that still admits an
    // optimum.
    let mut chosen: u64 = 0;
    let mut excluded: u64 = 0;
    let mut weight = W::zero();
    for v in 0..weights.len() {
        let mut trial = HittingSearch { edges: search.edges.clone(), weights, best: None, limit: Some(key.clone()) };
        trial.run(chosen | 1 << v, excluded, weight.clone() + weights[v].clone(), (chosen.count_ones() + 1) as usize);
        if trial.best.is_some() {
            chosen |= 1 << v;
            weight = weight + weights[v].clone();
        } else {
            excluded |= 1 << v;
        }
    }
    debug_assert_eq!((weight.clone(), chosen.count_ones() as usize), key);
    Some((to_set(chosen), weight))
}

/// Exact minimum-weight `h`-hitting set of `g`, with deterministic tie-breaking
/// (fewest vertices, then lexicographically smallest).
pub fn exact_min_hitting_set<W: Scalar>(g: &WeightedGraph<W>, h: &Pattern, cap: usize) -> Result<(BTreeSet<usize>, W)> {
    check_cap(g.n(), cap)?;
    let hyper = build_copy_hypergraph(&g.graph, h.graph(), EnumerationBudget::default())?;
    let edges = hyper.edges().iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    min_weight_hitting(edges, g.weights())
        .ok_or_else(|| Error::Invariant("hitting set search found no solution".into()))
}

/// Exact minimum vertex cover size, by branching on a maximum-degree vertex:
/// either it or all its neighbours are in the cover.
pub fn exact_min_vertex_cover(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g.n(), cap)?;
    fn rec(g: &Graph, removed: u64, budget: usize) -> bool {
        let pick = (0..g.n())
            .filter(|&v| removed >> v & 1 == 0)
            .map(|v| (g.neighbors(v).iter().filter(|&&w| removed >> w & 1 == 0).count(), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((deg, v)) = pick else { return true };
        if deg == 0 {
            return true;
        }
        if budget == 0 {
            return false;
        }
        if rec(g, removed | 1 << v, budget - 1) {
            return true;
        }
        let nbrs: u64 = g.neighbors(v).iter().filter(|&&w| removed >> w & 1 == 0).fold(0, |m, &w| m | 1 << w);
        deg <= budget && rec(g, removed | nbrs | 1 << v, budget - deg)
    }
    Ok((0..=g.n()).find(|&b| rec(g, 0, b)).expect("all vertices form a cover"))
}

/// Whether every `h`-hitting set of the gadget weighs at least
/// `total / factor` under the gadget weights.
pub fn verify_goodness<W: Scalar>(k: &GoodGraph<W>, h: &Pattern, cap: usize) -> Result<bool> {
    let wg = WeightedGraph::new(k.graph.clone(), k.weights.clone())?;
    let (_, min) = exact_min_hitting_set(&wg, h, cap)?;
    if !k.factor.is_positive() {
        return Ok(false);
    }
    Ok(min.cmp(&(k.total_weight() / k.factor.clone())) != Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{construct_good_graph, find_semi_symmetric_cut_vertex};
    use crate::subgraph::contains_copy;
    use crate::Rational;
    use num_traits::{One, Zero};

    /// Every subset, cheapest first by (weight, size, lexicographic list).
    fn naive<W: Scalar>(g: &WeightedGraph<W>, h: &Pattern) -> (BTreeSet<usize>, W) {
        let n = g.n();
        let mut best: Option<(W, usize, Vec<usize>)> = None;
        for mask in 0u32..(1 << n) {
            let removed: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let (rest, _) = g.graph.remove_vertices(&removed);
            if contains_copy(&rest, h.graph()) {
                continue;
            }
            let list: Vec<usize> = removed.iter().copied().collect();
            let key = (g.weight_of(&list), list.len(), list);
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        let (w, _, list) = best.unwrap();
        (list.into_iter().collect(), w)
    }

    fn p3() -> Pattern {
        Pattern::new(Graph::path(3)).unwrap()
    }

    #[test]
    fn small_examples() {
        let (s, w) =
            exact_min_hitting_set(&WeightedGraph::<Rational>::unit(Graph::complete(3)), &p3(), DEFAULT_CAP).unwrap();
        assert_eq!(w, Rational::one());
        assert_eq!(s, BTreeSet::from([0]));
        let (s, w) =
            exact_min_hitting_set(&WeightedGraph::<Rational>::unit(Graph::path(4)), &p3(), DEFAULT_CAP).unwrap();
        assert_eq!(w, Rational::one());
        assert_eq!(s, BTreeSet::from([1]));
        let (s, w) =
            exact_min_hitting_set(&WeightedGraph::<Rational>::unit(Graph::path(2)), &p3(), DEFAULT_CAP).unwrap();
        assert!(s.is_empty() && w.is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let g = WeightedGraph::<Rational>::unit(Graph::path(6));
        assert!(matches!(exact_min_hitting_set(&g, &p3(), 5), Err(Error::CapExceeded { n: 6, cap: 5 })));
        assert!(exact_min_vertex_cover(&Graph::path(6), 5).is_err());
    }

    #[test]
    fn vertex_covers() {
        assert_eq!(exact_min_vertex_cover(&Graph::complete(2), DEFAULT_CAP).unwrap(), 1);
        assert_eq!(exact_min_vertex_cover(&Graph::complete(3), DEFAULT_CAP).unwrap(), 2);
        assert_eq!(exact_min_vertex_cover(&Graph::cycle(5), DEFAULT_CAP).unwrap(), 3);
        assert_eq!(exact_min_vertex_cover(&Graph::new(4), DEFAULT_CAP).unwrap(), 0);
        assert_eq!(exact_min_vertex_cover(&Graph::complete(6), DEFAULT_CAP).unwrap(), 5);
    }

    #[test]
    fn claw_goodness() {
        let d = find_semi_symmetric_cut_vertex(&p3()).unwrap();
        let mut k: GoodGraph<Rational> = construct_good_graph(&p3(), &d);
        assert!(verify_goodness(&k, &p3(), DEFAULT_CAP).unwrap());
        k.factor = Rational::from_int(3);
        assert!(verify_goodness(&k, &p3(), DEFAULT_CAP).unwrap());
        k.factor = Rational::from_int(2);
        assert!(!verify_goodness(&k, &p3(), DEFAULT_CAP).unwrap());
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let patterns = [Graph::path(3), Graph::star(3), Graph::complete(3), Graph::path(4), Graph::cycle(4)];
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for trial in 0..80 {
            let n = 3 + trial % 8;
            let mut graph = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 100 < 40 {
                        graph.add_edge(u, v);
                    }
                }
            }
            let weights = (0..n)
                .map(|_| {
                    let num = (next() % 5) as i64;
                    Rational::from_frac(num, 1 + (next() % 3) as i64)
                })
                .collect();
            let g = WeightedGraph::new(graph, weights).unwrap();
            for p in &patterns {
                let p = Pattern::new(p.clone()).unwrap();
                assert_eq!(exact_min_hitting_set(&g, &p, DEFAULT_CAP).unwrap(), naive(&g, &p));
            }
        }
    }

    #[test]
    fn adding_edges_never_lowers_the_optimum() {
        let p = Pattern::new(Graph::path(4)).unwrap();
        let mut g = Graph::new(7);
        let mut prev = Rational::zero();
        let order = [(0, 1), (1, 2), (2, 3), (4, 5), (3, 4), (5, 6), (0, 6), (1, 5), (2, 6)];
        for (u, v) in order {
            g.add_edge(u, v);
            let (_, w) = exact_min_hitting_set(&WeightedGraph::<Rational>::unit(g.clone()), &p, DEFAULT_CAP).unwrap();
            assert!(w >= prev);
            prev = w;
        }
    }
}
