//! Brute-force reference oracles. They read only the vertex count and edge
//! list of a graph and share no code with the library's solvers.

#![allow(dead_code)]

use mimred_core::{Graph, MccInstance};

pub struct Plain {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Plain {
    pub fn of(g: &Graph) -> Self {
        Plain {
            n: g.order(),
            edges: g.edges().collect(),
        }
    }

    fn edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    /// Acyclic iff edges = vertices - components on the induced subgraph.
    pub fn acyclic(&self, mask: u64) -> bool {
        let inside: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .collect();
        let mut label: Vec<usize> = (0..self.n).collect();
        // relabel until stable; quadratic but tiny
        loop {
            let mut changed = false;
            for &(u, v) in &inside {
                let m = label[u].min(label[v]);
                if label[u] != m || label[v] != m {
                    label[u] = m;
                    label[v] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let members: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut roots: Vec<usize> = members.iter().map(|&v| label[v]).collect();
        roots.sort_unstable();
        roots.dedup();
        inside.len() + roots.len() == members.len()
    }

    /// Largest induced forest, by subset enumeration.
    pub fn max_forest(&self) -> usize {
        (0u64..1 << self.n)
            .filter(|&m| self.acyclic(m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Some `S` with `|S| = budget` and `G - S` acyclic, enumerating `S`.
    pub fn fvs_exists(&self, budget: usize) -> bool {
        let all = (1u64 << self.n) - 1;
        (0u64..1 << self.n)
            .filter(|s| s.count_ones() as usize == budget)
            .any(|s| self.acyclic(all & !s))
    }

    /// Maximum induced matching in the bipartite graph of edges between
    /// `side` and its complement, by edge-subset enumeration.
    pub fn mim(&self, side: u64) -> usize {
        let cross: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| (side >> u & 1) != (side >> v & 1))
            .map(|(u, v)| if side >> u & 1 == 1 { (u, v) } else { (v, u) })
            .collect();
        assert!(
            cross.len() <= 20,
            "brute-force mim limited to 20 cross edges"
        );
        let mut best = 0;
        for pick in 0u32..1 << cross.len() {
            let chosen: Vec<(usize, usize)> = (0..cross.len())
                .filter(|&e| pick >> e & 1 == 1)
                .map(|e| cross[e])
                .collect();
            if chosen.len() <= best {
                continue;
            }
            let ok = chosen.iter().enumerate().all(|(x, &(a, b))| {
                chosen[x + 1..].iter().all(|&(c, d)| {
                    a != c && b != d && !cross.contains(&(a, d)) && !cross.contains(&(c, b))
                })
            });
            if ok {
                best = chosen.len();
            }
        }
        best
    }

    /// Width of the order given by vertex indices: max over prefix cuts and
    /// singleton cuts.
    pub fn order_width(&self, order: &[usize]) -> usize {
        if self.n <= 1 {
            return 0;
        }
        let mut width = 0;
        let mut prefix = 0u64;
        for &v in &order[..order.len() - 1] {
            prefix |= 1 << v;
            width = width.max(self.mim(prefix));
        }
        for v in 0..self.n {
            width = width.max(self.mim(1 << v));
        }
        width
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(x, &a)| vs[x + 1..].iter().all(|&b| self.edge(a, b)))
    }
}

/// Whether any `k`-subset of all vertices has one vertex per part and is a
/// clique, ignoring the part structure during enumeration.
pub fn multicolored_clique_exists(inst: &MccInstance) -> bool {
    let g = inst.graph();
    let plain = Plain::of(g);
    let part_of: Vec<usize> = g
        .names()
        .iter()
        .map(|v| inst.parts().iter().position(|p| p.contains(v)).unwrap())
        .collect();
    let k = inst.k();
    (0u64..1 << plain.n)
        .filter(|m| m.count_ones() as usize == k)
        .any(|m| {
            let vs: Vec<usize> = (0..plain.n).filter(|&v| m >> v & 1 == 1).collect();
            let mut parts: Vec<usize> = vs.iter().map(|&v| part_of[v]).collect();
            parts.sort_unstable();
            parts.dedup();
            parts.len() == k && plain.is_clique(&vs)
        })
}

/// Graph from an edge mask over all pairs of `n` vertices.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let names: Vec<String> = (0..n).map(|v| format!("n{v}")).collect();
    let mut g = Graph::from_edges(names.iter().cloned(), Vec::<(String, String)>::new()).unwrap();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge_by_index(a, b).unwrap();
            }
            bit += 1;
        }
    }
    g
}
