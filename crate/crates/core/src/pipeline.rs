//! End-to-end solvers and their certificates.
//!
//! Patterns with a semi-symmetric cut vertex go through the gadget
//! decomposition followed by colour rounding, guaranteeing a `k - 1/2`
//! factor. Every other pattern uses the trivial `k`-factor decomposition with
//! the pattern itself as the only gadget.

use std::collections::BTreeSet;

use crate::coloring::{color_digraph, color_simp, ColorSimpOutcome, Coloring};
use crate::document::{join, Document};
use crate::error::ensure_invariant;
use crate::graph::{Digraph, WeightedGraph};
use crate::local_ratio::{decompose_weights, DecompositionTrace};
use crate::lp::solve_cover_lp;
use crate::pattern::{classify_pattern, construct_good_graph, Classification, GoodGraph, Pattern, RootedDecomposition};
use crate::scalar::Scalar;
use crate::subgraph::{
    build_copy_hypergraph, central_vertices, contains_copy, find_rooted_copy, EnumerationBudget, RootedGraph,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Gadget decomposition plus colour rounding.
    SemiSymmetric,
    /// Pattern-as-gadget decomposition only.
    Baseline,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SemiSymmetric => "semi-symmetric",
            Method::Baseline => "baseline",
        }
    }
}

/// Phase II data of the semi-symmetric solver, in residual-graph ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringStage<W> {
    /// Residual vertex -> original vertex.
    pub residual_map: Vec<usize>,
    /// The positive-weight residual graph with its remaining weights.
    pub residual: WeightedGraph<W>,
    /// `(u, S_u)` for every central vertex `u`.
    pub centres: Vec<(usize, Vec<usize>)>,
    pub digraph: Digraph,
    pub coloring: Coloring,
    pub rounding: ColorSimpOutcome<W>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveTrace<W> {
    pub gadget: GoodGraph<W>,
    pub decomposition: DecompositionTrace<W>,
    pub coloring: Option<ColoringStage<W>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution<W> {
    pub hitting_set: BTreeSet<usize>,
    pub weight: W,
    /// A certified lower bound on the optimum.
    pub lower_bound: W,
    pub guaranteed_factor: W,
    /// `weight / OPT`, filled in by [`Solution::with_optimum`].
    pub observed_ratio: Option<W>,
    pub method: Method,
    pub warning: Option<String>,
    pub trace: SolveTrace<W>,
}

impl<W: Scalar> Solution<W> {
    /// Records the ratio against a known optimum (left unset when it is 0).
    pub fn with_optimum(mut self, opt: &W) -> Self {
        self.observed_ratio = if opt.is_zero() { None } else { Some(self.weight.clone() / opt.clone()) };
        self
    }

    pub fn to_document(&self) -> Document {
        let mut doc = Document::new();
        doc.set("guaranteed_factor", &self.guaranteed_factor)
            .set("lower_bound", &self.lower_bound)
            .set("method", self.method.name())
            .set("vertices", join(&self.hitting_set))
            .set("weight", &self.weight);
        if let Some(r) = &self.observed_ratio {
            doc.set("observed_ratio", r);
        }
        if let Some(w) = &self.warning {
            doc.set("warning", w);
        }
        doc
    }

    /// Adds the decomposition steps, colouring and rounding steps.
    pub fn explain(&self, doc: &mut Document) {
        let d = &self.trace.decomposition;
        let steps: Vec<String> =
            d.steps.iter().map(|s| format!("lambda {} on {}", s.lambda, join(&s.embedding))).collect();
        doc.set("phase1_steps", steps.join("\n"));
        doc.set("phase1_zero_set", join(&d.zero_set));
        if let Some(stage) = &self.trace.coloring {
            let colors: Vec<String> =
                stage.residual_map.iter().zip(&stage.coloring.colors).map(|(v, c)| format!("{v}:{c}")).collect();
            doc.set("coloring", join(colors));
            doc.set("coloring_colors_used", stage.coloring.used());
            let centres: Vec<String> = stage
                .centres
                .iter()
                .map(|(u, s)| {
                    let s: Vec<usize> = s.iter().map(|&x| stage.residual_map[x]).collect();
                    format!("{} -> {}", stage.residual_map[*u], join(s))
                })
                .collect();
            doc.set("centres", centres.join("\n"));
            let map = |v: usize| stage.residual_map[v];
            let steps: Vec<String> = stage
                .rounding
                .steps
                .iter()
                .map(|s| match s {
                    crate::coloring::ColorSimpStep::Reduce {
                        zero_vertex, picked, cover_at_picked, tau_star, ..
                    } => {
                        format!(
                            "reduce: zero {} pick {} (g = {cover_at_picked}, tau* = {tau_star})",
                            map(*zero_vertex),
                            map(*picked)
                        )
                    }
                    crate::coloring::ColorSimpStep::Finish { kept_color, taken, tau_star } => format!(
                        "finish: keep colour {kept_color}, take {} (tau* = {tau_star})",
                        join(taken.iter().map(|&v| map(v)))
                    ),
                })
                .collect();
            doc.set("rounding_steps", steps.join("\n"));
        }
    }
}

/// Whether deleting `s` from `g` leaves no copy of `h`.
pub fn verify_solution(g: &crate::graph::Graph, h: &Pattern, s: &BTreeSet<usize>) -> bool {
    let (rest, _) = g.remove_vertices(s);
    !contains_copy(&rest, h.graph())
}

/// Fractional cover value of the positive-weight part of `g`.
fn fractional_cover_value<W: Scalar>(g: &WeightedGraph<W>, h: &Pattern, budget: EnumerationBudget) -> Result<W> {
    let (pos, _) = g.induced_subgraph(&g.positive_vertices());
    let hyper = build_copy_hypergraph(&pos.graph, h.graph(), budget)?;
    Ok(solve_cover_lp(&hyper, pos.weights())?.0.value)
}

#[allow(clippy::too_many_arguments)]
fn finish<W: Scalar>(
    g: &WeightedGraph<W>,
    h: &Pattern,
    hitting_set: BTreeSet<usize>,
    residual_tau: W,
    guaranteed_factor: W,
    method: Method,
    trace: SolveTrace<W>,
    budget: EnumerationBudget,
) -> Result<Solution<W>> {
    ensure_invariant!(verify_solution(&g.graph, h, &hitting_set), "solver output is not a hitting set");
    let weight = g.weight_of(&hitting_set);
    let goods = std::slice::from_ref(&trace.gadget);
    let local = trace.decomposition.lower_bound(goods) + residual_tau;
    let tau = fractional_cover_value(g, h, budget)?;
    let lower_bound = if tau > local { tau } else { local.clone() };
    ensure_invariant!(
        weight <= guaranteed_factor.clone() * local.clone(),
        "weight {weight} exceeds factor {guaranteed_factor} times the certificate {local}"
    );
    Ok(Solution {
        hitting_set,
        weight,
        lower_bound,
        guaranteed_factor,
        observed_ratio: None,
        method,
        warning: None,
        trace,
    })
}

/// Decomposes with the gadget graph of `d`, then colours and rounds the
/// gadget-free residual. Factor `k - 1/2`.
pub fn semi_symmetric_solve<W: Scalar>(
    g: &WeightedGraph<W>,
    h: &Pattern,
    d: &RootedDecomposition,
    budget: EnumerationBudget,
) -> Result<Solution<W>> {
    let k = h.k();
    let gadget: GoodGraph<W> = construct_good_graph(h, d);
    let goods = std::slice::from_ref(&gadget);
    let decomposition = decompose_weights(g, goods)?;
    ensure_invariant!(decomposition.conserves(g.weights(), goods), "decomposition lost weight");

    let positive: Vec<usize> = (0..g.n()).filter(|v| !decomposition.zero_set.contains(v)).collect();
    let reweighted = WeightedGraph::new(g.graph.clone(), decomposition.final_weights.clone())?;
    let (residual, residual_map) = reweighted.induced_subgraph(&positive);
    ensure_invariant!(!contains_copy(&residual.graph, &gadget.graph), "residual still contains the gadget");

    let rooted = RootedGraph { graph: h.graph().clone(), root: d.root };
    let mut digraph = Digraph::new(residual.n());
    let mut centres = Vec::new();
    for u in central_vertices(&residual.graph, h.graph(), d.root) {
        let copy = find_rooted_copy(&residual.graph, &rooted, u, &BTreeSet::new())
            .ok_or_else(|| crate::Error::Invariant(format!("central vertex {u} has no copy")))?;
        let s_u: Vec<usize> = copy.into_iter().filter(|&x| x != u).collect();
        for &x in &s_u {
            digraph.add_arc(u, x);
        }
        centres.push((u, s_u));
    }
    ensure_invariant!(digraph.max_out_degree() < k, "out-degree above k - 1");
    let palette = color_digraph(&digraph, k - 1)?;
    ensure_invariant!(palette.t < 2 * k, "colouring used {} colours", palette.t);
    let coloring = Coloring { colors: palette.colors, t: 2 * k };
    ensure_invariant!(coloring.is_proper_on(&digraph), "colouring is not proper");

    let rounding = color_simp(&residual, h, &coloring, budget)?;
    let mut hitting_set = decomposition.zero_set.clone();
    hitting_set.extend(rounding.set.iter().map(|&v| residual_map[v]));
    let residual_tau = rounding.tau_star.clone();

    let factor = W::from_int(k as i64) - W::half();
    let trace = SolveTrace {
        gadget,
        decomposition,
        coloring: Some(ColoringStage { residual_map, residual, centres, digraph, coloring, rounding }),
    };
    finish(g, h, hitting_set, residual_tau, factor, Method::SemiSymmetric, trace, budget)
}

/// Decomposes with the unit-weight pattern as the only gadget and returns the
/// zeroed vertices. Factor `k`.
pub fn baseline_solve<W: Scalar>(g: &WeightedGraph<W>, h: &Pattern, budget: EnumerationBudget) -> Result<Solution<W>> {
    let gadget = GoodGraph::trivial(h);
    let decomposition = decompose_weights(g, std::slice::from_ref(&gadget))?;
    let hitting_set = decomposition.zero_set.clone();
    let trace = SolveTrace { gadget, decomposition, coloring: None };
    let factor = W::from_int(h.k() as i64);
    finish(g, h, hitting_set, W::zero(), factor, Method::Baseline, trace, budget)
}

/// Dispatches on the pattern class.
pub fn solve<W: Scalar>(g: &WeightedGraph<W>, h: &Pattern, budget: EnumerationBudget) -> Result<Solution<W>> {
    match classify_pattern(h) {
        Classification::SemiSymmetric(d) => semi_symmetric_solve(g, h, &d, budget),
        Classification::TwoConnected => baseline_solve(g, h, budget),
        Classification::Unknown => {
            let mut s = baseline_solve(g, h, budget)?;
            s.warning = Some(
                "pattern has no semi-symmetric cut vertex and is not 2-connected; using the k-factor baseline".into(),
            );
            Ok(s)
        }
    }
}

/// Parses the `vertices` field of a solution document.
pub fn parse_solution_vertices(text: &str) -> Option<BTreeSet<usize>> {
    let doc = Document::parse(text);
    let field = doc.get("vertices")?;
    field.split_whitespace().map(|t| t.parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracle::{exact_min_hitting_set, DEFAULT_CAP};
    use crate::Rational;
    use num_traits::{One, Zero};

    fn p3() -> Pattern {
        Pattern::new(Graph::path(3)).unwrap()
    }

    #[test]
    fn triangle_with_p3() {
        let g = WeightedGraph::<Rational>::unit(Graph::complete(3));
        let s = solve(&g, &p3(), EnumerationBudget::default()).unwrap();
        assert_eq!(s.method, Method::SemiSymmetric);
        assert_eq!(s.guaranteed_factor, Rational::from_frac(5, 2));
        assert!(s.weight == Rational::one() || s.weight == Rational::from_int(2));
        let stage = s.trace.coloring.as_ref().unwrap();
        assert!(s.trace.decomposition.steps.is_empty());
        assert_eq!(stage.centres.len(), 3);
        assert_eq!(stage.digraph.max_out_degree(), 2);
        assert!(stage.coloring.used() <= 5);
        assert_eq!(stage.coloring.t, 6);
    }

    #[test]
    fn star_with_p3() {
        let g = WeightedGraph::<Rational>::unit(Graph::star(5));
        let s = solve(&g, &p3(), EnumerationBudget::default()).unwrap();
        assert_eq!(s.hitting_set, BTreeSet::from([0]));
        assert_eq!(s.weight, Rational::one());
        assert_eq!(s.trace.decomposition.steps.len(), 1);
        assert_eq!(s.trace.decomposition.zero_set, BTreeSet::from([0]));
        assert!(s.trace.coloring.as_ref().unwrap().rounding.set.is_empty());
        assert_eq!(s.lower_bound, Rational::one());
    }

    #[test]
    fn two_connected_uses_baseline() {
        let k3 = Pattern::new(Graph::complete(3)).unwrap();
        let g = WeightedGraph::<Rational>::unit(Graph::complete(3));
        let s = solve(&g, &k3, EnumerationBudget::default()).unwrap();
        assert_eq!(s.method, Method::Baseline);
        assert_eq!(s.guaranteed_factor, Rational::from_int(3));
        assert_eq!(s.hitting_set.len(), 3);
        let s = s.with_optimum(&Rational::one());
        assert_eq!(s.observed_ratio, Some(Rational::from_int(3)));
        assert!(s.warning.is_none());
    }

    #[test]
    fn baseline_on_two_triangles() {
        let k3 = Pattern::new(Graph::complete(3)).unwrap();
        let g = WeightedGraph::<Rational>::unit(Graph::complete(3).disjoint_union(&Graph::complete(3)));
        let s = baseline_solve(&g, &k3, EnumerationBudget::default()).unwrap();
        assert_eq!(s.hitting_set.len(), 6);
        assert_eq!(s.lower_bound, Rational::from_int(2));
        let (_, opt) = exact_min_hitting_set(&g, &k3, DEFAULT_CAP).unwrap();
        assert_eq!(opt, Rational::from_int(2));
    }

    #[test]
    fn pattern_free_graph() {
        let g = WeightedGraph::<Rational>::unit(Graph::path(2));
        for h in [p3(), Pattern::new(Graph::complete(3)).unwrap()] {
            let s = solve(&g, &h, EnumerationBudget::default()).unwrap();
            assert!(s.hitting_set.is_empty());
            assert!(s.weight.is_zero());
            assert_eq!(s.with_optimum(&Rational::zero()).observed_ratio, None);
        }
    }

    #[test]
    fn unknown_patterns_warn() {
        let tc = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let h = Pattern::new(tc.clone()).unwrap();
        let s = solve(&WeightedGraph::<Rational>::unit(tc), &h, EnumerationBudget::default()).unwrap();
        assert_eq!(s.method, Method::Baseline);
        assert!(s.warning.is_some());
        assert!(s.to_document().get("warning").is_some());
    }

    #[test]
    fn verify_examples() {
        let g = Graph::complete(4);
        let h = p3();
        assert!(verify_solution(&g, &h, &(0..4).collect()));
        assert!(!verify_solution(&g, &h, &BTreeSet::new()));
        assert!(verify_solution(&g, &h, &BTreeSet::from([0, 1, 2])));
    }

    #[test]
    fn document_round_trip() {
        let g = WeightedGraph::<Rational>::unit(Graph::star(5));
        let s = solve(&g, &p3(), EnumerationBudget::default()).unwrap();
        let text = s.to_document().to_string();
        assert!(text.contains("guaranteed_factor: 5/2\n"));
        assert_eq!(parse_solution_vertices(&text), Some(BTreeSet::from([0])));
        let mut doc = s.to_document();
        s.explain(&mut doc);
        assert!(doc.get("phase1_steps").unwrap().starts_with("lambda 1 on"));
    }
}
