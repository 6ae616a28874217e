//! Exact fractional cover / fractional matching pair of a weighted hypergraph.
//!
//! The matching LP `max Σ y_e  s.t.  Σ_{e∋v} y_e ≤ w(v), y ≥ 0` has the slack
//! basis as a feasible start, so a single-phase primal simplex over exact
//! rationals suffices. Bland's rule picks the entering column (smallest index
//! with positive reduced cost) and breaks ratio ties by smallest basic index,
//! which guarantees termination on degenerate bases. The optimal cover is read
//! off the final reduced costs of the slack columns.

use crate::error::ensure_invariant;
use crate::graph::CopyHypergraph;
use crate::scalar::{sum, Scalar};
use crate::{Error, Result};

/// Vertex weights `g ≥ 0` with `Σ_{v∈e} g(v) ≥ 1` on every hyperedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCover<W> {
    /// Indexed by host vertex; zero off the hypergraph.
    pub g: Vec<W>,
    /// `Σ w(v) g(v)`.
    pub value: W,
}

/// Hyperedge weights `f ≥ 0` with `Σ_{e∋v} f(e) ≤ w(v)` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalMatching<W> {
    /// Indexed like `CopyHypergraph::edges`.
    pub f: Vec<W>,
    /// `Σ f(e)`.
    pub value: W,
}

struct Tableau<W> {
    rows: Vec<Vec<W>>,
    rhs: Vec<W>,
    reduced: Vec<W>,
    basis: Vec<usize>,
}

impl<W: Scalar> Tableau<W> {
    fn entering(&self) -> Option<usize> {
        self.reduced.iter().position(|c| c.is_positive())
    }

    fn leaving(&self, col: usize) -> Option<usize> {
        let mut best: Option<(usize, W)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = self.rhs[i].clone() / row[col].clone();
            let better = match &best {
                None => true,
                Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() / p.clone();
            }
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
            self.rhs[i] = self.rhs[i].clone() - factor * pivot_rhs.clone();
        }
        let factor = self.reduced[col].clone();
        if !factor.is_zero() {
            for (x, y) in self.reduced.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
        }
        self.basis[r] = col;
    }
}

/// Optimal fractional cover and matching of `h` under vertex weights `w`
/// (indexed by host vertex). Both values are equal.
pub fn solve_cover_lp<W: Scalar>(h: &CopyHypergraph, w: &[W]) -> Result<(FractionalCover<W>, FractionalMatching<W>)> {
    if w.len() != h.n() {
        return Err(Error::InvalidInput(format!("{} weights for {} vertices", w.len(), h.n())));
    }
    let verts = h.vertices();
    if let Some(&v) = verts.iter().find(|&&v| w[v].is_negative()) {
        return Err(Error::InvalidInput(format!("negative weight on vertex {v}")));
    }
    let m = h.edge_count();
    let r = verts.len();
    let mut row_of = vec![usize::MAX; h.n()];
    for (i, &v) in verts.iter().enumerate() {
        row_of[v] = i;
    }

    // Columns: y_0..y_{m-1}, then slacks s_0..s_{r-1}.
    let mut rows = vec![vec![W::zero(); m + r]; r];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            rows[row_of[v]][e] = W::one();
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[m + i] = W::one();
    }
    let mut reduced = vec![W::zero(); m + r];
    for c in reduced.iter_mut().take(m) {
        *c = W::one();
    }
    let mut t =
        Tableau { rows, rhs: verts.iter().map(|&v| w[v].clone()).collect(), reduced, basis: (m..m + r).collect() };

    while let Some(col) = t.entering() {
        // Bounded: every y column has a positive entry.
        let row = t.leaving(col).ok_or_else(|| Error::Invariant("matching LP unbounded".into()))?;
        t.pivot(row, col);
    }

    let mut f = vec![W::zero(); m];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < m {
            f[b] = t.rhs[i].clone();
        }
    }
    let mut g = vec![W::zero(); h.n()];
    for (i, &v) in verts.iter().enumerate() {
        g[v] = -t.reduced[m + i].clone();
    }
    let cover = FractionalCover { value: sum(verts.iter().map(|&v| w[v].clone() * g[v].clone())), g };
    let matching = FractionalMatching { value: sum(f.iter().cloned()), f };

    ensure_invariant!(is_feasible_cover(h, &cover.g), "simplex returned an infeasible cover");
    ensure_invariant!(is_feasible_matching(h, w, &matching.f), "simplex returned an infeasible matching");
    ensure_invariant!(
        cover.value == matching.value,
        "strong duality failed: cover {} != matching {}",
        cover.value,
        matching.value
    );
    Ok((cover, matching))
}

pub fn is_feasible_cover<W: Scalar>(h: &CopyHypergraph, g: &[W]) -> bool {
    g.iter().all(|x| !x.is_negative()) && h.edges().iter().all(|e| sum(e.iter().map(|&v| g[v].clone())) >= W::one())
}

pub fn is_feasible_matching<W: Scalar>(h: &CopyHypergraph, w: &[W], f: &[W]) -> bool {
    if f.len() != h.edge_count() || f.iter().any(|x| x.is_negative()) {
        return false;
    }
    let mut load = vec![W::zero(); h.n()];
    for (e, fe) in h.edges().iter().zip(f) {
        for &v in e {
            load[v] = load[v].clone() + fe.clone();
        }
    }
    load.iter().zip(w).all(|(l, wv)| l <= wv)
}

/// Whether `(g, f)` satisfy complementary slackness: every vertex with
/// `g(v) > 0` is saturated by `f`, and every hyperedge with `f(e) > 0` is
/// covered exactly once by `g`.
pub fn check_complementary_slackness<W: Scalar>(g: &[W], f: &[W], h: &CopyHypergraph, w: &[W]) -> bool {
    let mut load = vec![W::zero(); h.n()];
    for (e, fe) in h.edges().iter().zip(f) {
        for &v in e {
            load[v] = load[v].clone() + fe.clone();
        }
    }
    let vertices_ok = h.vertices().into_iter().all(|v| !g[v].is_positive() || load[v] == w[v]);
    let edges_ok =
        h.edges().iter().zip(f).all(|(e, fe)| !fe.is_positive() || sum(e.iter().map(|&v| g[v].clone())) == W::one());
    vertices_ok && edges_ok
}
