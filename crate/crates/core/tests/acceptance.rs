//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use hitset::catalog::{all_graphs, three_branch_pattern, trees};
use hitset::coloring::{color_simp_hypergraph, Coloring};
use hitset::generators::{
    gadget_edge_glue, gadget_vertex_glue, gl_random_instance, random_graph, random_uniform_hypergraph, GLParams,
};
use hitset::lp::{check_complementary_slackness, is_feasible_cover, is_feasible_matching, solve_cover_lp};
use hitset::oracle::{exact_min_hitting_set, exact_min_vertex_cover, verify_goodness};
use hitset::pattern::{construct_good_graph, find_semi_symmetric_cut_vertex};
use hitset::pipeline::Method;
use hitset::subgraph::{contains_copy, enumerate_copies};
use hitset::{
    solve, CopyHypergraph, EnumerationBudget, GoodGraph, Graph, Pattern, Rational, Scalar, Solution, WeightedGraph,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 64;

#[derive(Default)]
struct Tally {
    checks: usize,
    violations: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    fn report(&self, id: usize, name: &str, started: Instant) -> bool {
        let pass = self.violations.is_empty();
        println!(
            "criterion {id} [{}] {name}: {} checks, {} violations, {:.1}s",
            if pass { "PASS" } else { "FAIL" },
            self.checks,
            self.violations.len(),
            started.elapsed().as_secs_f64()
        );
        for v in self.violations.iter().take(5) {
            println!("    {v}");
        }
        pass
    }
}

struct Instance {
    id: String,
    graph: WeightedGraph,
    pattern: Pattern,
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn tree_patterns() -> Vec<Pattern> {
    (3..=5).flat_map(trees).map(|t| Pattern::new(t).unwrap()).collect()
}

fn random_weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..n).map(|_| r(rng.gen_range(1..=6), rng.gen_range(1..=3))).collect()
}

/// Random graphs (unit weights for even seeds, random rational weights for
/// odd seeds) and vertex-glue gadget instances over every base graph on 1..=6
/// vertices, each paired with every tree on 3..=5 vertices.
fn factor_corpus() -> Vec<Instance> {
    let patterns = tree_patterns();
    let mut out = Vec::new();
    for n in [6, 8, 10, 12] {
        for (pi, p) in [0.2, 0.4, 0.6].into_iter().enumerate() {
            for seed in 0..4u64 {
                let g = random_graph(n, p, seed * 100 + n as u64 * 10 + pi as u64).unwrap();
                let weights = if seed % 2 == 0 {
                    vec![Rational::from_int(1); n]
                } else {
                    random_weights(n, &mut ChaCha8Rng::seed_from_u64(seed ^ n as u64))
                };
                for (hi, h) in patterns.iter().enumerate() {
                    out.push(Instance {
                        id: format!("random n={n} p={p} seed={seed} h={hi}"),
                        graph: WeightedGraph::new(g.clone(), weights.clone()).unwrap(),
                        pattern: h.clone(),
                    });
                }
            }
        }
    }
    for n in 1..=6 {
        for (bi, base) in all_graphs(n).into_iter().enumerate() {
            for (hi, h) in patterns.iter().enumerate() {
                let (g, _) = gadget_vertex_glue(&base, h).unwrap();
                out.push(Instance {
                    id: format!("vertex-glue n={n} base={bi} h={hi}"),
                    graph: WeightedGraph::unit(g),
                    pattern: h.clone(),
                });
            }
        }
    }
    out
}

/// Edge and vertex gluing over every base graph on 1..=6 vertices, with the
/// vertex-cover optimum of the base.
fn gadget_corpus() -> Vec<(Instance, usize)> {
    let vertex: Vec<Pattern> =
        [Graph::path(3), Graph::path(4), Graph::star(3)].map(|g| Pattern::new(g).unwrap()).into();
    let edge: Vec<Pattern> =
        [Graph::complete(3), Graph::cycle(4), Graph::complete(4)].map(|g| Pattern::new(g).unwrap()).into();
    let mut out = Vec::new();
    for n in 1..=6 {
        for (bi, base) in all_graphs(n).into_iter().enumerate() {
            let vc = exact_min_vertex_cover(&base, CAP).unwrap();
            for (hi, h) in vertex.iter().enumerate() {
                let (g, _) = gadget_vertex_glue(&base, h).unwrap();
                out.push((
                    Instance {
                        id: format!("vertex-glue n={n} base={bi} h={hi}"),
                        graph: WeightedGraph::unit(g),
                        pattern: h.clone(),
                    },
                    vc,
                ));
            }
            for (hi, h) in edge.iter().enumerate() {
                let (g, _) = gadget_edge_glue(&base, h).unwrap();
                out.push((
                    Instance {
                        id: format!("edge-glue n={n} base={bi} h={hi}"),
                        graph: WeightedGraph::unit(g),
                        pattern: h.clone(),
                    },
                    vc,
                ));
            }
        }
    }
    out
}

/// Checks criterion 7 on one run.
fn check_decomposition(t: &mut Tally, inst: &Instance, s: &Solution) {
    let d = &s.trace.decomposition;
    let goods = std::slice::from_ref(&s.trace.gadget);
    t.check(d.steps.len() <= inst.graph.n(), || format!("{}: {} steps", inst.id, d.steps.len()));
    t.check(d.conserves(inst.graph.weights(), goods), || format!("{}: weight not conserved", inst.id));
    let positive: Vec<usize> = (0..inst.graph.n()).filter(|v| d.final_weights[*v].is_positive()).collect();
    let (residual, _) = inst.graph.graph.induced_subgraph(&positive);
    t.check(!contains_copy(&residual, &s.trace.gadget.graph), || format!("{}: residual contains the gadget", inst.id));
}

/// Checks criteria 2 and 6 on one run.
fn check_coloring(c2: &mut Tally, c6: &mut Tally, inst: &Instance, s: &Solution) {
    let k = inst.pattern.k();
    let Some(stage) = &s.trace.coloring else {
        c6.check(s.method == Method::Baseline, || format!("{}: semi-symmetric run without a colouring", inst.id));
        return;
    };
    let c = &stage.coloring;
    c6.check(c.used() < 2 * k, || format!("{}: {} colours", inst.id, c.used()));
    c6.check(c.is_proper_on(&stage.digraph), || format!("{}: colouring not proper on D", inst.id));
    for copy in enumerate_copies(&stage.residual.graph, inst.pattern.graph(), EnumerationBudget::default()).copies {
        let colours: BTreeSet<usize> = copy.vertices.iter().map(|&v| c.colors[v]).collect();
        c6.check(colours.len() >= 2, || format!("{}: monochromatic copy {:?}", inst.id, copy.vertices));
    }
    let weight = stage.residual.weight_of(&stage.rounding.set);
    let bound =
        Rational::from_int(k as i64) * (Rational::from_int(1) - r(1, c.t as i64)) * stage.rounding.tau_star.clone();
    c2.check(weight <= bound, || format!("{}: rounding weight {weight} > {bound}", inst.id));
}

fn main() {
    let mut all_pass = true;
    let budget = EnumerationBudget::default();

    // Criteria 1, 2 (pipeline part), 6 and 7 share the pipeline runs.
    let started = Instant::now();
    let (mut c1, mut c2, mut c6, mut c7) = (Tally::default(), Tally::default(), Tally::default(), Tally::default());
    for inst in factor_corpus() {
        let s = match solve(&inst.graph, &inst.pattern, budget) {
            Ok(s) => s,
            Err(e) => {
                c1.check(false, || format!("{}: {e}", inst.id));
                continue;
            }
        };
        let (_, opt) = exact_min_hitting_set(&inst.graph, &inst.pattern, CAP).unwrap();
        let factor = Rational::from_int(inst.pattern.k() as i64) - Rational::half();
        c1.check(s.method == Method::SemiSymmetric && s.guaranteed_factor == factor, || {
            format!("{}: method {:?}", inst.id, s.method)
        });
        c1.check(s.weight <= factor.clone() * opt.clone(), || {
            format!("{}: weight {} > {factor} * {opt}", inst.id, s.weight)
        });
        c1.check(s.lower_bound <= opt, || format!("{}: lower bound {} > OPT {opt}", inst.id, s.lower_bound));
        check_coloring(&mut c2, &mut c6, &inst, &s);
        check_decomposition(&mut c7, &inst, &s);
    }
    all_pass &= c1.report(1, "factor k - 1/2 against exact OPT", started);
    all_pass &= c6.report(6, "colouring validity", started);

    // Criterion 2, synthetic part: random hypergraphs with a random
    // bichromatic colouring.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..100u64 {
        let n = rng.gen_range(4..=12);
        let k = rng.gen_range(2..=4.min(n));
        let t = rng.gen_range(k..=2 * k);
        let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..t)).collect();
        let m = rng.gen_range(1..=20);
        let edges: Vec<Vec<usize>> = random_uniform_hypergraph(n, m.min(binomial(n, k)), k, i)
            .unwrap()
            .into_iter()
            .filter(|e| e.iter().any(|&v| colors[v] != colors[e[0]]))
            .collect();
        let hyper = CopyHypergraph::new(n, edges);
        let w = random_weights(n, &mut rng);
        let coloring = Coloring { colors, t };
        match color_simp_hypergraph(&hyper, &w, k, &coloring) {
            Ok(out) => {
                let weight: Rational = out.set.iter().map(|&v| w[v].clone()).sum();
                let bound =
                    Rational::from_int(k as i64) * (Rational::from_int(1) - r(1, t as i64)) * out.tau_star.clone();
                c2.check(hyper.is_cover(&out.set), || format!("synthetic {i}: not a cover"));
                c2.check(weight <= bound, || format!("synthetic {i}: {weight} > {bound}"));
            }
            Err(e) => c2.check(false, || format!("synthetic {i}: {e}")),
        }
    }
    all_pass &= c2.report(2, "colour rounding within k(1 - 1/t) tau*", started);

    // Criterion 3.
    let started = Instant::now();
    let mut c3 = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(0..=40);
        let edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=n.min(5));
                let mut e: Vec<usize> = rand::seq::index::sample(&mut rng, n, size).into_vec();
                e.sort_unstable();
                e
            })
            .collect();
        let hyper = CopyHypergraph::new(n, edges);
        let w: Vec<Rational> = (0..n).map(|_| r(rng.gen_range(0..=16), rng.gen_range(1..=8))).collect();
        match solve_cover_lp(&hyper, &w) {
            Ok((cover, matching)) => {
                c3.check(cover.value == matching.value, || {
                    format!("instance {i}: {} != {}", cover.value, matching.value)
                });
                c3.check(is_feasible_cover(&hyper, &cover.g), || format!("instance {i}: infeasible cover"));
                c3.check(is_feasible_matching(&hyper, &w, &matching.f), || {
                    format!("instance {i}: infeasible matching")
                });
                c3.check(check_complementary_slackness(&cover.g, &matching.f, &hyper, &w), || {
                    format!("instance {i}: slackness")
                });
            }
            Err(e) => c3.check(false, || format!("instance {i}: {e}")),
        }
    }
    all_pass &= c3.report(3, "strong duality on random hypergraphs", started);

    // Criterion 4.
    let started = Instant::now();
    let mut c4 = Tally::default();
    for n in 2..=6 {
        for tree in trees(n) {
            let p = Pattern::new(tree.clone()).unwrap();
            let gadget: GoodGraph = match find_semi_symmetric_cut_vertex(&p) {
                Some(d) => construct_good_graph(&p, &d),
                None => GoodGraph::trivial(&p),
            };
            c4.check(verify_goodness(&gadget, &p, CAP).unwrap(), || {
                format!("tree {:?} fails goodness", tree.edges().collect::<Vec<_>>())
            });
        }
    }
    let fig = Pattern::new(three_branch_pattern()).unwrap();
    let d = find_semi_symmetric_cut_vertex(&fig).unwrap();
    let gadget: GoodGraph = construct_good_graph(&fig, &d);
    let wg = WeightedGraph::new(gadget.graph.clone(), gadget.weights.clone()).unwrap();
    let (_, min) = exact_min_hitting_set(&wg, &fig, CAP).unwrap();
    c4.check(gadget.factor == Rational::from_int(8), || format!("three-branch pattern factor {}", gadget.factor));
    c4.check(gadget.total_weight() == Rational::from_int(8), || {
        format!("three-branch pattern total {}", gadget.total_weight())
    });
    c4.check(min == Rational::from_int(1), || format!("three-branch pattern minimum hitting weight {min}"));
    c4.check(verify_goodness(&gadget, &fig, CAP).unwrap(), || "three-branch pattern fails goodness".into());
    all_pass &= c4.report(4, "goodness certificates", started);

    // Criterion 5, plus criterion 7 on the same instances.
    let started = Instant::now();
    let mut c5 = Tally::default();
    for (inst, vc) in gadget_corpus() {
        let (_, opt) = exact_min_hitting_set(&inst.graph, &inst.pattern, CAP).unwrap();
        c5.check(opt == Rational::from_int(vc as i64), || format!("{}: OPT {opt} != VC {vc}", inst.id));
        match solve(&inst.graph, &inst.pattern, budget) {
            Ok(s) => check_decomposition(&mut c7, &inst, &s),
            Err(e) => c7.check(false, || format!("{}: {e}", inst.id)),
        }
    }
    all_pass &= c5.report(5, "gadget optimum equals vertex cover", started);
    all_pass &= c7.report(7, "decomposition contract", started);

    // Criterion 8.
    let started = Instant::now();
    let mut c8 = Tally::default();
    let patterns = [Pattern::new(Graph::path(3)).unwrap(), Pattern::new(Graph::complete(3)).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..50u64 {
        let h = &patterns[i as usize % 2];
        let n = rng.gen_range(3..=8);
        let m = rng.gen_range(1..=binomial(n, 3).min(6));
        let params = GLParams {
            n,
            hyperedges: random_uniform_hypergraph(n, m, 3, i).unwrap(),
            clouds: rng.gen_range(1..=20),
            lambda: rng.gen_range(1..=3),
            seed: i,
        };
        let b = params.clouds;
        let tg = gl_random_instance(h, &params).unwrap();
        c8.check(tg.graph.n() == n * b, || format!("instance {i}: {} vertices", tg.graph.n()));
        for e in 0..m {
            let count = tg.planted.iter().filter(|p| p.hyperedge == e).count();
            c8.check(count == params.lambda * b, || format!("instance {i}: hyperedge {e} has {count} copies"));
        }
        let found = enumerate_copies(&tg.graph, h.graph(), EnumerationBudget::default());
        let sets: BTreeSet<Vec<usize>> = found.copies.iter().map(|c| c.vertices.clone()).collect();
        for p in &tg.planted {
            let mut key = p.image.clone();
            key.sort_unstable();
            c8.check(tg.is_intended(h.graph(), &p.image), || {
                format!("instance {i}: planted copy {p:?} has no common tag")
            });
            c8.check(sets.contains(&key), || format!("instance {i}: planted copy {p:?} not enumerated"));
        }
        let planted_sets: BTreeSet<Vec<usize>> = tg
            .planted
            .iter()
            .map(|p| {
                let mut key = p.image.clone();
                key.sort_unstable();
                key
            })
            .collect();
        for c in &found.copies {
            if tg.is_intended(h.graph(), &c.witness) {
                c8.check(planted_sets.contains(&c.vertices), || {
                    format!("instance {i}: intended copy {:?} is not planted", c.vertices)
                });
            }
        }
        let again = gl_random_instance(h, &params).unwrap();
        c8.check(again.serialize() == tg.serialize(), || format!("instance {i}: not reproducible"));
    }
    all_pass &= c8.report(8, "planted-cloud generator structure", started);

    if !all_pass {
        std::process::exit(1);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
