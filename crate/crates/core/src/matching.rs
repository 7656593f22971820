//! Exact maximum induced matching in a bipartite cut graph.
//!
//! Two cross edges `ab`, `a'b'` can sit in the same induced matching iff
//! neither `ab'` nor `a'b` is a cross edge (this also covers shared
//! endpoints). The answer is therefore a maximum clique in the
//! compatibility graph on cross edges, found by branch and bound with a
//! greedy-colouring bound. Colour classes of the compatibility graph are
//! cliques of the conflict graph, so the bound is a clique cover of the
//! conflict graph.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::graph::BipartiteCutGraph;

pub fn max_induced_matching(cut: &BipartiteCutGraph) -> usize {
    let edges = &cut.cross_edges;
    if edges.len() <= 1 {
        return edges.len();
    }

    let mut left_ids = HashMap::new();
    let mut right_ids = HashMap::new();
    let local: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let nl = left_ids.len();
            let nr = right_ids.len();
            (
                *left_ids.entry(a).or_insert(nl),
                *right_ids.entry(b).or_insert(nr),
            )
        })
        .collect();
    // A matching never exceeds the smaller side.
    let side_bound = left_ids.len().min(right_ids.len());
    if side_bound == 1 {
        return 1;
    }

    let mut left_adj = vec![BitSet::new(right_ids.len()); left_ids.len()];
    for &(a, b) in &local {
        left_adj[a].insert(b);
    }

    let m = local.len();
    let mut compat = vec![BitSet::new(m); m];
    for i in 0..m {
        let (ai, bi) = local[i];
        for j in i + 1..m {
            let (aj, bj) = local[j];
            if !left_adj[ai].contains(bj) && !left_adj[aj].contains(bi) {
                compat[i].insert(j);
                compat[j].insert(i);
            }
        }
    }

    let mut solver = CliqueSearch {
        compat: &compat,
        best: 1,
        cap: side_bound,
    };
    let mut all = BitSet::new(m);
    for i in 0..m {
        all.insert(i);
    }
    solver.expand(all, 0);
    solver.best
}

struct CliqueSearch<'a> {
    compat: &'a [BitSet],
    best: usize,
    cap: usize,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut candidates: BitSet, size: usize) {
        let (order, colours) = self.colour(&candidates);
        for idx in (0..order.len()).rev() {
            if size + colours[idx] <= self.best || self.best == self.cap {
                return;
            }
            let v = order[idx];
            let mut next = candidates.clone();
            next.intersect_with(&self.compat[v]);
            if next.is_empty() {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(next, size + 1);
            }
            candidates.remove(v);
        }
    }

    /// Greedy sequential colouring; returns vertices in colour order with
    /// the colour number of each, so the suffix bound is non-decreasing.
    fn colour(&self, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = candidates.clone();
        let mut order = Vec::with_capacity(candidates.len());
        let mut colours = Vec::with_capacity(candidates.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut class = uncoloured.clone();
            while let Some(v) = class.first() {
                uncoloured.remove(v);
                class.remove(v);
                class.difference_with(&self.compat[v]);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }
}
