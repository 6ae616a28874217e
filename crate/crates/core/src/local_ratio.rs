//! Local-ratio weight decomposition over a family of good gadgets.
//!
//! While some gadget `K` embeds on strictly positive-weight vertices, subtract
//! `λ·w_K` pushed through the embedding, with `λ` the largest multiple keeping
//! all weights non-negative. Each step zeroes at least one vertex.

use std::collections::BTreeSet;

use crate::error::ensure_invariant;
use crate::graph::WeightedGraph;
use crate::pattern::GoodGraph;
use crate::scalar::Scalar;
use crate::subgraph::{first_embedding, Embedding, SearchOptions};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionStep<W> {
    /// Index into the gadget list.
    pub gadget: usize,
    pub embedding: Embedding,
    pub lambda: W,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTrace<W> {
    pub steps: Vec<DecompositionStep<W>>,
    pub final_weights: Vec<W>,
    /// Vertices of final weight zero.
    pub zero_set: BTreeSet<usize>,
}

impl<W: Scalar> DecompositionTrace<W> {
    /// Whether `original == final + Σ λ_i w_{K_i}` holds exactly.
    pub fn conserves(&self, original: &[W], goods: &[GoodGraph<W>]) -> bool {
        let mut rebuilt = self.final_weights.clone();
        for step in &self.steps {
            let k = &goods[step.gadget];
            for (x, &v) in step.embedding.iter().enumerate() {
                rebuilt[v] = rebuilt[v].clone() + step.lambda.clone() * k.weights[x].clone();
            }
        }
        rebuilt == original
    }

    /// `Σ λ_i · total(w_{K_i}) / t_i`, a lower bound on the optimum.
    pub fn lower_bound(&self, goods: &[GoodGraph<W>]) -> W {
        self.steps.iter().fold(W::zero(), |acc, s| {
            let k = &goods[s.gadget];
            acc + s.lambda.clone() * k.total_weight() / k.factor.clone()
        })
    }
}

/// An embedding of `k` into `g` whose image carries only positive weight.
pub fn find_positive_copy<W: Scalar>(g: &WeightedGraph<W>, k: &GoodGraph<W>) -> Option<Embedding> {
    find_copy_on(g, k, g.weights())
}

fn find_copy_on<W: Scalar>(g: &WeightedGraph<W>, k: &GoodGraph<W>, weights: &[W]) -> Option<Embedding> {
    let allowed: Vec<bool> = weights.iter().map(|w| w.is_positive()).collect();
    first_embedding(&k.graph, &g.graph, SearchOptions { fixed: None, allowed: Some(&allowed) })
}

/// Runs the decomposition to completion. Gadgets are tried in list order.
pub fn decompose_weights<W: Scalar>(g: &WeightedGraph<W>, goods: &[GoodGraph<W>]) -> Result<DecompositionTrace<W>> {
    if goods.is_empty() {
        return Err(Error::InvalidInput("no gadgets given".into()));
    }
    for (i, k) in goods.iter().enumerate() {
        if k.weights.len() != k.graph.n() || k.weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidInput(format!("gadget {i} has malformed weights")));
        }
        if !k.total_weight().is_positive() {
            return Err(Error::InvalidInput(format!("gadget {i} has zero total weight")));
        }
    }

    let mut w = g.weights().to_vec();
    let mut steps = Vec::new();
    loop {
        let found = goods.iter().enumerate().find_map(|(i, k)| find_copy_on(g, k, &w).map(|emb| (i, emb)));
        let Some((gadget, embedding)) = found else { break };
        let k = &goods[gadget];
        let lambda = embedding
            .iter()
            .zip(&k.weights)
            .filter(|(_, wk)| !wk.is_zero())
            .map(|(&v, wk)| w[v].clone() / wk.clone())
            .min()
            .expect("gadget has positive weight");
        let zeros_before = w.iter().filter(|x| x.is_zero()).count();
        for (&v, wk) in embedding.iter().zip(&k.weights) {
            w[v] = w[v].clone() - lambda.clone() * wk.clone();
        }
        ensure_invariant!(lambda.is_positive(), "non-positive step size {lambda}");
        ensure_invariant!(w.iter().all(|x| !x.is_negative()), "step drove a weight negative");
        ensure_invariant!(w.iter().filter(|x| x.is_zero()).count() > zeros_before, "step did not zero a new vertex");
        steps.push(DecompositionStep { gadget, embedding, lambda });
        ensure_invariant!(steps.len() <= g.n(), "more than |V| decomposition steps");
    }

    let zero_set = (0..g.n()).filter(|&v| w[v].is_zero()).collect();
    Ok(DecompositionTrace { steps, final_weights: w, zero_set })
}
