//! Small named graphs and isomorphism-class enumeration for test corpora.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// The 9-vertex pattern of a triangle, a diamond and a 4-cycle sharing one
/// vertex. Labels: a=0, b=1, c=2 (the shared vertex), d=3, e=4, f=5, h=6,
/// i=7, j=8.
pub fn three_branch_pattern() -> Graph {
    let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3), (2, 5), (2, 7), (2, 6), (7, 8), (6, 8)];
    Graph::from_edges(9, edges).expect("static edge list")
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = (u.min(v), u.max(v));
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// A canonical bit string for `g` (`n ≤ 11`): the lexicographically smallest
/// adjacency mask over relabellings that list vertices by non-increasing
/// degree. Isomorphic graphs get equal forms.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n * n.saturating_sub(1) / 2 <= 64, "graph too large for canonical_form");
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match groups.last_mut() {
            Some(gr) if g.degree(gr[0]) == g.degree(v) => gr.push(v),
            _ => groups.push(vec![v]),
        }
    }

    fn permute(
        groups: &[Vec<usize>],
        gi: usize,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        g: &Graph,
        best: &mut u64,
    ) {
        if gi == groups.len() {
            let n = g.n();
            let mut label = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                label[v] = i;
            }
            let mask = g.edges().fold(0u64, |m, (u, v)| m | 1 << pair_index(n, label[u], label[v]));
            *best = (*best).min(mask);
            return;
        }
        let group = &groups[gi];
        let placed_in_group = order.iter().filter(|v| group.contains(v)).count();
        if placed_in_group == group.len() {
            permute(groups, gi + 1, order, used, g, best);
            return;
        }
        for &v in group {
            if !used[v] {
                used[v] = true;
                order.push(v);
                permute(groups, gi, order, used, g, best);
                order.pop();
                used[v] = false;
            }
        }
    }

    let mut best = u64::MAX;
    permute(&groups, 0, &mut Vec::new(), &mut vec![false; n], g, &mut best);
    if n < 2 {
        0
    } else {
        best
    }
}

/// One representative per isomorphism class of graphs on `n ≤ 7` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "all_graphs is for tiny n");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
            .expect("distinct pairs");
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// One representative per isomorphism class of trees on `n` vertices.
pub fn trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        return vec![Graph::path(n)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let len = n - 2;
    let mut code = vec![0usize; len];
    loop {
        let g = prufer_tree(n, &code);
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
        let mut i = 0;
        while i < len {
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
    }
    out
}

fn prufer_tree(n: usize, code: &[usize]) -> Graph {
    let mut degree = vec![1; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut g = Graph::new(n);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        g.add_edge(leaf, c);
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(rest[0], rest[1]);
    g
}
