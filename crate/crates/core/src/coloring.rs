//! Colourings of bounded out-degree digraphs and the colour-based rounding of
//! the fractional cover.

use std::collections::BTreeSet;

use crate::error::ensure_invariant;
use crate::graph::{CopyHypergraph, Digraph, WeightedGraph};
use crate::lp::solve_cover_lp;
use crate::pattern::Pattern;
use crate::scalar::{sum, Scalar};
use crate::subgraph::{build_copy_hypergraph, EnumerationBudget};
use crate::{Error, Result};

/// Colour per vertex, each in `0..t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub t: usize,
}

impl Coloring {
    /// Number of distinct colours actually used.
    pub fn used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    /// Every hyperedge of size at least 2 sees two colours.
    pub fn is_valid_for(&self, h: &CopyHypergraph) -> bool {
        h.edges().iter().all(|e| e.len() < 2 || e.iter().any(|&v| self.colors[v] != self.colors[e[0]]))
    }

    /// Adjacent vertices get distinct colours.
    pub fn is_proper_on(&self, d: &Digraph) -> bool {
        d.arcs().all(|(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Proper colouring of the underlying graph of `d` with at most `2m + 1`
/// colours, where `m` bounds every out-degree.
///
/// Some vertex always has total degree at most `2m`; peel such vertices
/// (smallest total degree, then smallest id) and colour in reverse peel
/// order with the least free colour.
pub fn color_digraph(d: &Digraph, m: usize) -> Result<Coloring> {
    if let Some(u) = (0..d.n()).find(|&u| d.out_degree(u) > m) {
        return Err(Error::InvalidInput(format!("vertex {u} has out-degree {} above the bound {m}", d.out_degree(u))));
    }
    let n = d.n();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in d.arcs() {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut degree: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut peel = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n).filter(|&u| !removed[u]).min_by_key(|&u| (degree[u], u)).unwrap();
        ensure_invariant!(degree[u] <= 2 * m, "no vertex of total degree <= {} remains", 2 * m);
        removed[u] = true;
        peel.push(u);
        for &w in &nbrs[u] {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    let mut colors = vec![usize::MAX; n];
    for &u in peel.iter().rev() {
        let taken: BTreeSet<usize> = nbrs[u].iter().map(|&w| colors[w]).filter(|&c| c != usize::MAX).collect();
        colors[u] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    let t = colors.iter().max().map_or(0, |&c| c + 1);
    ensure_invariant!(t <= 2 * m + 1, "used {t} colours, bound is {}", 2 * m + 1);
    Ok(Coloring { colors, t })
}

/// One iteration of [`color_simp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorSimpStep<W> {
    /// Some vertex has zero cover value: take the heaviest-covered vertex of
    /// one of its hyperedges and recurse without it.
    Reduce { zero_vertex: usize, edge: Vec<usize>, picked: usize, cover_at_picked: W, tau_star: W },
    /// The cover is positive everywhere: take all vertices outside the
    /// heaviest colour class.
    Finish { kept_color: usize, taken: Vec<usize>, tau_star: W },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSimpOutcome<W> {
    pub set: BTreeSet<usize>,
    /// Fractional cover value of the input instance.
    pub tau_star: W,
    pub steps: Vec<ColorSimpStep<W>>,
}

/// Cover of the copy hypergraph of `(g, h)` of weight at most
/// `k (1 - 1/t) τ*`, given a colouring with no monochromatic copy.
pub fn color_simp<W: Scalar>(
    g: &WeightedGraph<W>,
    h: &Pattern,
    c: &Coloring,
    budget: EnumerationBudget,
) -> Result<ColorSimpOutcome<W>> {
    let hyper = build_copy_hypergraph(&g.graph, h.graph(), budget)?;
    color_simp_hypergraph(&hyper, g.weights(), h.k(), c)
}

/// [`color_simp`] on an explicit hypergraph whose edges have at most `k` vertices.
pub fn color_simp_hypergraph<W: Scalar>(
    hyper: &CopyHypergraph,
    w: &[W],
    k: usize,
    c: &Coloring,
) -> Result<ColorSimpOutcome<W>> {
    if c.colors.len() != hyper.n() {
        return Err(Error::InvalidColoring(format!("{} colours for {} vertices", c.colors.len(), hyper.n())));
    }
    if c.t < k {
        return Err(Error::InvalidColoring(format!("{} colours available, need at least k = {k}", c.t)));
    }
    if let Some(v) = (0..hyper.n()).find(|&v| c.colors[v] >= c.t) {
        return Err(Error::InvalidColoring(format!("vertex {v} has colour {} >= t = {}", c.colors[v], c.t)));
    }
    if let Some(e) = hyper.edges().iter().find(|e| e.len() > k) {
        return Err(Error::InvalidInput(format!("hyperedge {e:?} larger than k = {k}")));
    }
    if let Some(e) = hyper.edges().iter().find(|e| e.len() >= 2 && e.iter().all(|&v| c.colors[v] == c.colors[e[0]])) {
        return Err(Error::InvalidColoring(format!("monochromatic copy on {e:?}")));
    }
    if let Some(v) = hyper.vertices().into_iter().find(|&v| !w[v].is_positive()) {
        return Err(Error::InvalidInput(format!("vertex {v} in a copy has non-positive weight")));
    }

    let kk = W::from_int(k as i64);
    let tt = W::from_int(c.t as i64);
    let factor = kk.clone() * (W::one() - W::one() / tt.clone());

    let mut current = hyper.clone();
    let mut set = BTreeSet::new();
    let mut steps = Vec::new();
    let mut top_tau: Option<W> = None;

    while !current.is_empty() {
        let (cover, matching) = solve_cover_lp(&current, w)?;
        let tau = cover.value.clone();
        top_tau.get_or_insert_with(|| tau.clone());
        let verts = current.vertices();

        match verts.iter().copied().find(|&v| cover.g[v].is_zero()) {
            None => {
                let w_v = sum(verts.iter().map(|&v| w[v].clone()));
                // Slackness saturates every vertex, so w(V) = Σ f(e)|e| ≤ k τ*.
                let via_matching =
                    sum(current.edges().iter().zip(&matching.f).map(|(e, f)| f.clone() * W::from_int(e.len() as i64)));
                ensure_invariant!(
                    w_v == via_matching,
                    "saturation identity failed: w(V) = {w_v}, Σ f|e| = {via_matching}"
                );
                ensure_invariant!(
                    w_v <= kk.clone() * tau.clone(),
                    "w(V) = {w_v} exceeds k·τ* = {}",
                    kk.clone() * tau.clone()
                );

                let mut class_weight = vec![W::zero(); c.t];
                for &v in &verts {
                    class_weight[c.colors[v]] = class_weight[c.colors[v]].clone() + w[v].clone();
                }
                let kept_color = (0..c.t)
                    .max_by(|&a, &b| class_weight[a].cmp(&class_weight[b]).then(b.cmp(&a)))
                    .expect("t >= k >= 1");
                let taken: Vec<usize> = verts.iter().copied().filter(|&v| c.colors[v] != kept_color).collect();
                let w_taken = sum(taken.iter().map(|&v| w[v].clone()));
                ensure_invariant!(
                    w_taken <= (W::one() - W::one() / tt.clone()) * w_v.clone(),
                    "dropping the heaviest class left {w_taken} of {w_v}"
                );
                set.extend(taken.iter().copied());
                steps.push(ColorSimpStep::Finish { kept_color, taken, tau_star: tau });
                current = CopyHypergraph::new(current.n(), Vec::<Vec<usize>>::new());
            }
            Some(zero_vertex) => {
                let edge = current
                    .edges()
                    .iter()
                    .find(|e| e.binary_search(&zero_vertex).is_ok())
                    .expect("vertex lies in a hyperedge")
                    .clone();
                // Ties go to the smallest id.
                let picked = edge.iter().copied().max_by(|&a, &b| cover.g[a].cmp(&cover.g[b]).then(b.cmp(&a))).unwrap();
                let g_picked = cover.g[picked].clone();
                let threshold = W::one() / W::from_int(k.max(2) as i64 - 1);
                ensure_invariant!(g_picked >= threshold, "picked cover value {g_picked} below 1/(k-1)");
                ensure_invariant!(factor.clone() * g_picked.clone() >= W::one(), "k(1-1/t)·g(v') < 1");
                set.insert(picked);
                let next = current.without_vertex(picked);
                let bound = tau.clone() - w[picked].clone() * g_picked.clone();
                if !next.is_empty() {
                    let (next_cover, _) = solve_cover_lp(&next, w)?;
                    ensure_invariant!(
                        next_cover.value <= bound,
                        "τ* after removing {picked} is {} > {bound}",
                        next_cover.value
                    );
                }
                steps.push(ColorSimpStep::Reduce {
                    zero_vertex,
                    edge,
                    picked,
                    cover_at_picked: g_picked,
                    tau_star: tau,
                });
                current = next;
            }
        }
    }

    let tau_star = top_tau.unwrap_or_else(W::zero);
    ensure_invariant!(hyper.is_cover(&set), "colour rounding returned a non-cover");
    let weight = sum(set.iter().map(|&v| w[v].clone()));
    ensure_invariant!(
        weight <= factor.clone() * tau_star.clone(),
        "cover weight {weight} exceeds k(1-1/t)·τ* = {}",
        factor * tau_star
    );
    Ok(ColorSimpOutcome { set, tau_star, steps })
}
