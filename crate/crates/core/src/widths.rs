//! Branch decompositions and exact mim-width evaluation.
//!
//! Linear decompositions are kept as vertex orders; a caterpillar tree is
//! only built when a general [`BranchDecomposition`] is asked for. The cuts
//! of a caterpillar are the prefix cuts of its order plus one singleton cut
//! per leaf edge, and [`mimw_of_order`] evaluates exactly those.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A permutation of the vertex set. Wire form: `{"order": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearOrder {
    pub order: Vec<String>,
}

impl LinearOrder {
    pub fn new<I, S>(order: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        LinearOrder {
            order: order.into_iter().map(Into::into).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn reversed(&self) -> Self {
        LinearOrder {
            order: self.order.iter().rev().cloned().collect(),
        }
    }

    /// Resolves the order against `g`, checking that it is a permutation.
    pub fn positions(&self, g: &Graph) -> Result<Vec<usize>> {
        if self.order.len() != g.order() {
            return Err(Error::InvalidOrder(format!(
                "order has {} entries, graph has {} vertices",
                self.order.len(),
                g.order()
            )));
        }
        let mut seen = vec![false; g.order()];
        self.order
            .iter()
            .map(|name| {
                let id = g.id(name)?;
                if std::mem::replace(&mut seen[id], true) {
                    return Err(Error::InvalidOrder(format!("`{name}` repeated")));
                }
                Ok(id)
            })
            .collect()
    }
}

/// A subcubic tree with a bijection from graph vertices onto its leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionJson", into = "DecompositionJson")]
pub struct BranchDecomposition {
    nodes: Vec<String>,
    tree_edges: Vec<(usize, usize)>,
    leaf_map: BTreeMap<String, usize>,
}

/// Wire form: `{"tree_edges": [[node, node], ..], "leaf_map": {vertex: node}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub tree_edges: Vec<[String; 2]>,
    pub leaf_map: BTreeMap<String, String>,
}

impl TryFrom<DecompositionJson> for BranchDecomposition {
    type Error = Error;

    fn try_from(json: DecompositionJson) -> Result<Self> {
        BranchDecomposition::new(
            json.tree_edges
                .iter()
                .map(|[a, b]| (a.as_str(), b.as_str())),
            json.leaf_map.iter().map(|(v, n)| (v.as_str(), n.as_str())),
        )
    }
}

impl From<BranchDecomposition> for DecompositionJson {
    fn from(bd: BranchDecomposition) -> Self {
        DecompositionJson {
            tree_edges: bd
                .tree_edges
                .iter()
                .map(|&(a, b)| [bd.nodes[a].clone(), bd.nodes[b].clone()])
                .collect(),
            leaf_map: bd
                .leaf_map
                .iter()
                .map(|(v, &n)| (v.clone(), bd.nodes[n].clone()))
                .collect(),
        }
    }
}

impl BranchDecomposition {
    /// Builds a decomposition from tree edges and a vertex → leaf map. Node
    /// names are collected from both. Structural validity is not checked
    /// here; see [`validate_decomposition`].
    pub fn new<'a, E, L>(tree_edges: E, leaf_map: L) -> Result<Self>
    where
        E: IntoIterator<Item = (&'a str, &'a str)>,
        L: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut nodes = Vec::new();
        let mut ids: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str| -> usize {
            if let Some(&id) = ids.get(name) {
                return id;
            }
            ids.insert(name.to_owned(), nodes.len());
            nodes.push(name.to_owned());
            nodes.len() - 1
        };
        let tree_edges: Vec<(usize, usize)> = tree_edges
            .into_iter()
            .map(|(a, b)| (intern(a), intern(b)))
            .collect();
        let mut map = BTreeMap::new();
        for (v, n) in leaf_map {
            if map.insert(v.to_owned(), intern(n)).is_some() {
                return Err(Error::InvalidDecomposition(format!(
                    "vertex `{v}` mapped twice"
                )));
            }
        }
        Ok(BranchDecomposition {
            nodes,
            tree_edges,
            leaf_map: map,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.tree_edges
            .iter()
            .map(|&(a, b)| (self.nodes[a].as_str(), self.nodes[b].as_str()))
    }

    pub fn leaf_of(&self, vertex: &str) -> Option<&str> {
        self.leaf_map.get(vertex).map(|&n| self.nodes[n].as_str())
    }

    pub fn leaf_count(&self) -> usize {
        let degrees = self.degrees();
        degrees.iter().filter(|&&d| d <= 1).count()
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(a, b) in &self.tree_edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (e, &(a, b)) in self.tree_edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    /// Nodes reachable from `start` without crossing tree edge `skip`.
    fn side_of(&self, adj: &[Vec<(usize, usize)>], start: usize, skip: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &(y, e) in &adj[x] {
                if e != skip && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// The caterpillar whose leaves, read along the spine, give `o`.
///
/// Leaves are named `leaf{t}` and spine nodes `spine{t}`.
pub fn caterpillar_from_order(g: &Graph, o: &LinearOrder) -> Result<BranchDecomposition> {
    let n = g.order();
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    o.positions(g)?;
    let leaf = |t: usize| format!("leaf{t}");
    let spine = |t: usize| format!("spine{t}");
    let mut edges: Vec<(String, String)> = Vec::new();
    if n == 2 {
        edges.push((leaf(0), leaf(1)));
    } else {
        // spine0 carries leaves 0 and 1, spine{n-3} carries leaves n-2 and n-1
        let spines = n - 2;
        edges.push((leaf(0), spine(0)));
        for t in 0..spines {
            edges.push((spine(t), leaf(t + 1)));
            if t + 1 < spines {
                edges.push((spine(t), spine(t + 1)));
            }
        }
        edges.push((spine(spines - 1), leaf(n - 1)));
    }
    let map: Vec<(String, String)> = o
        .order
        .iter()
        .enumerate()
        .map(|(t, v)| (v.clone(), leaf(t)))
        .collect();
    BranchDecomposition::new(
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        map.iter().map(|(v, n)| (v.as_str(), n.as_str())),
    )
}

/// True iff the tree is connected, acyclic, subcubic and `leaf_map` is a
/// bijection from `V(g)` onto its leaves.
pub fn validate_decomposition(g: &Graph, bd: &BranchDecomposition) -> bool {
    decomposition_problem(g, bd).is_none()
}

fn decomposition_problem(g: &Graph, bd: &BranchDecomposition) -> Option<String> {
    let n_nodes = bd.nodes.len();
    if n_nodes == 0 {
        return Some("empty tree".into());
    }
    if bd.tree_edges.len() + 1 != n_nodes {
        return Some(format!(
            "{} nodes but {} edges; not a tree",
            n_nodes,
            bd.tree_edges.len()
        ));
    }
    if bd.tree_edges.iter().any(|&(a, b)| a == b) {
        return Some("tree has a loop".into());
    }
    let adj = bd.adjacency();
    if bd.side_of(&adj, 0, usize::MAX).iter().any(|&s| !s) {
        return Some("tree is disconnected".into());
    }
    let deg = bd.degrees();
    if let Some(x) = deg.iter().position(|&d| d > 3) {
        return Some(format!("node `{}` has degree {}", bd.nodes[x], deg[x]));
    }
    let leaves: HashSet<usize> = (0..n_nodes).filter(|&x| deg[x] <= 1).collect();
    if bd.leaf_map.len() != g.order() {
        return Some(format!(
            "leaf map covers {} vertices, graph has {}",
            bd.leaf_map.len(),
            g.order()
        ));
    }
    let mut hit = HashSet::new();
    for (v, &node) in &bd.leaf_map {
        if !g.contains(v) {
            return Some(format!("leaf map names unknown vertex `{v}`"));
        }
        if !leaves.contains(&node) {
            return Some(format!("`{v}` is mapped to non-leaf `{}`", bd.nodes[node]));
        }
        if !hit.insert(node) {
            return Some(format!("leaf `{}` carries two vertices", bd.nodes[node]));
        }
    }
    if hit.len() != leaves.len() {
        return Some("some leaves carry no vertex".into());
    }
    None
}

/// Exact mim-width of a branch decomposition: the largest mim-value over
/// the cuts induced by its tree edges.
pub fn mimw(g: &Graph, bd: &BranchDecomposition) -> Result<usize> {
    if let Some(problem) = decomposition_problem(g, bd) {
        return Err(Error::InvalidDecomposition(problem));
    }
    let adj = bd.adjacency();
    let vertex_at: Vec<(usize, usize)> = bd
        .leaf_map
        .iter()
        .map(|(v, &node)| (g.id(v).expect("validated"), node))
        .collect();
    let width = (0..bd.tree_edges.len())
        .into_par_iter()
        .map(|e| {
            let side = bd.side_of(&adj, bd.tree_edges[e].0, e);
            let mut in_a = vec![false; g.order()];
            for &(v, node) in &vertex_at {
                in_a[v] = side[node];
            }
            g.mim_value_by_mask(&in_a)
        })
        .max()
        .unwrap_or(0);
    Ok(width)
}

/// Mim-width of the linear decomposition given by `o`; 0 when `|V(g)| ≤ 1`.
pub fn mimw_of_order(g: &Graph, o: &LinearOrder) -> Result<usize> {
    Ok(cut_profile(g, o)?.width())
}

/// Per-cut mim-values of a linear decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutProfile {
    /// `prefix[t]` is the mim-value of the cut after the first `t + 1` vertices.
    pub prefix: Vec<usize>,
    /// Mim-value of each singleton leaf cut, in order position.
    pub singleton: Vec<usize>,
}

impl CutProfile {
    pub fn width(&self) -> usize {
        self.prefix
            .iter()
            .chain(&self.singleton)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

pub fn cut_profile(g: &Graph, o: &LinearOrder) -> Result<CutProfile> {
    let pos = o.positions(g)?;
    let n = pos.len();
    if n <= 1 {
        return Ok(CutProfile {
            prefix: Vec::new(),
            singleton: Vec::new(),
        });
    }
    let prefix = (1..n)
        .into_par_iter()
        .map(|t| {
            let mut in_a = vec![false; n];
            for &v in &pos[..t] {
                in_a[v] = true;
            }
            g.mim_value_by_mask(&in_a)
        })
        .collect();
    let singleton = pos.iter().map(|&v| usize::from(g.degree(v) > 0)).collect();
    Ok(CutProfile { prefix, singleton })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> Graph {
        Graph::from_edges(vs.iter().copied(), es.iter().copied()).unwrap()
    }

    fn c4() -> Graph {
        graph(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
    }

    #[test]
    fn caterpillar_shapes() {
        let p3 = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let bd = caterpillar_from_order(&p3, &LinearOrder::new(["a", "b", "c"])).unwrap();
        assert!(validate_decomposition(&p3, &bd));
        assert_eq!(bd.leaf_count(), 3);
        assert_eq!(bd.node_count(), 4);

        let k2 = graph(&["a", "b"], &[("a", "b")]);
        let bd = caterpillar_from_order(&k2, &LinearOrder::new(["a", "b"])).unwrap();
        assert_eq!(bd.tree_edges().count(), 1);
        assert_eq!(mimw(&k2, &bd).unwrap(), 1);

        let single = graph(&["a"], &[]);
        assert_eq!(
            caterpillar_from_order(&single, &LinearOrder::new(["a"])),
            Err(Error::TooFewVertices(1))
        );
    }

    #[test]
    fn caterpillar_cuts_are_prefix_and_singleton_cuts() {
        let names: Vec<String> = (0..7).map(|i| format!("v{i}")).collect();
        let g = Graph::from_edges(names.clone(), Vec::<(&str, &str)>::new()).unwrap();
        let bd = caterpillar_from_order(&g, &LinearOrder::new(names.clone())).unwrap();
        let adj = bd.adjacency();
        // each cut is recorded as the side holding position 0
        let mut cuts = HashSet::new();
        for e in 0..bd.tree_edges.len() {
            let side = bd.side_of(&adj, bd.tree_edges[e].0, e);
            let a: Vec<bool> = (0..7).map(|t| side[bd.leaf_map[&names[t]]]).collect();
            cuts.insert((0..7).filter(|&t| a[t] == a[0]).collect::<Vec<usize>>());
        }
        let mut expect = HashSet::new();
        for t in 1..7 {
            expect.insert((0..t).collect::<Vec<usize>>());
            expect.insert((0..7).filter(|&x| x != t).collect());
        }
        expect.insert(vec![0]);
        assert_eq!(cuts, expect);
        assert_eq!(bd.tree_edges.len(), 11);
    }

    #[test]
    fn widths_of_small_graphs() {
        let g = c4();
        assert_eq!(
            mimw_of_order(&g, &LinearOrder::new(["a", "b", "c", "d"])).unwrap(),
            2
        );
        // the best linear width of C4 over all 24 orders is 1, reached when
        // the middle cut separates opposite vertices
        assert_eq!(
            mimw_of_order(&g, &LinearOrder::new(["a", "b", "d", "c"])).unwrap(),
            2
        );
        assert_eq!(
            mimw_of_order(&g, &LinearOrder::new(["a", "c", "b", "d"])).unwrap(),
            1
        );
        let names = ["a", "b", "c", "d"];
        let mut best = usize::MAX;
        for x in 0..24usize {
            let mut pool = names.to_vec();
            let mut o = Vec::new();
            let mut code = x;
            for r in (1..=4).rev() {
                o.push(pool.remove(code % r));
                code /= r;
            }
            best = best.min(mimw_of_order(&g, &LinearOrder::new(o)).unwrap());
        }
        assert_eq!(best, 1);
        let bd = caterpillar_from_order(&g, &LinearOrder::new(["a", "b", "c", "d"])).unwrap();
        assert_eq!(mimw(&g, &bd).unwrap(), 2);

        let star = graph(
            &["c", "l1", "l2", "l3", "l4"],
            &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
        );
        for o in [["c", "l1", "l2", "l3", "l4"], ["l1", "l2", "c", "l3", "l4"]] {
            assert_eq!(mimw_of_order(&star, &LinearOrder::new(o)).unwrap(), 1);
        }
        assert_eq!(
            mimw_of_order(&graph(&["a"], &[]), &LinearOrder::new(["a"])).unwrap(),
            0
        );
        assert_eq!(
            mimw_of_order(&Graph::new(), &LinearOrder::new(Vec::<String>::new())).unwrap(),
            0
        );
    }

    #[test]
    fn invalid_orders() {
        let g = c4();
        assert!(mimw_of_order(&g, &LinearOrder::new(["a", "b", "c"])).is_err());
        assert!(mimw_of_order(&g, &LinearOrder::new(["a", "b", "c", "c"])).is_err());
        assert!(mimw_of_order(&g, &LinearOrder::new(["a", "b", "c", "z"])).is_err());
    }

    #[test]
    fn validation_rejects_bad_trees() {
        let g = graph(&["a", "b", "c", "d"], &[]);
        // degree-4 centre
        let star = BranchDecomposition::new(
            [("x", "a1"), ("x", "b1"), ("x", "c1"), ("x", "d1")],
            [("a", "a1"), ("b", "b1"), ("c", "c1"), ("d", "d1")],
        )
        .unwrap();
        assert!(!validate_decomposition(&g, &star));
        assert!(mimw(&g, &star).is_err());

        let bd = caterpillar_from_order(&g, &LinearOrder::new(["a", "b", "c", "d"])).unwrap();
        let mut json = DecompositionJson::from(bd.clone());
        json.leaf_map.remove("d");
        let missing = BranchDecomposition::try_from(json).unwrap();
        assert!(!validate_decomposition(&g, &missing));

        // cycle among internal nodes
        let cyc = BranchDecomposition::new(
            [("x", "y"), ("y", "z"), ("z", "x"), ("x", "a1"), ("y", "b1")],
            [("a", "a1"), ("b", "b1")],
        )
        .unwrap();
        assert!(!validate_decomposition(&graph(&["a", "b"], &[]), &cyc));
    }

    #[test]
    fn json_round_trip() {
        let g = c4();
        let bd = caterpillar_from_order(&g, &LinearOrder::new(["a", "c", "b", "d"])).unwrap();
        let s = serde_json::to_string(&bd).unwrap();
        let back: BranchDecomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(mimw(&g, &back).unwrap(), mimw(&g, &bd).unwrap());
        let o: LinearOrder = serde_json::from_str(r#"{"order":["a","b"]}"#).unwrap();
        assert_eq!(o.order, ["a", "b"]);
    }
}
