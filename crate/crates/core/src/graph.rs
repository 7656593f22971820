//! Simple undirected graphs over opaque string labels, together with cuts,
//! bipartite cut graphs and the induced-forest test.
//!
//! Vertices keep the order in which they were declared. Every index-based
//! method refers to that order; the name-based methods resolve labels first
//! and fail with [`Error::UnknownVertex`] on anything undeclared.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::matching;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

/// Wire form: `{"vertices": [..], "edges": [[u, v], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        Graph::from_edges(json.vertices, json.edges.iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        let edges = g
            .edges()
            .map(|(u, v)| [g.names[u].clone(), g.names[v].clone()])
            .collect();
        GraphJson {
            vertices: g.names,
            edges,
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<V, I, S, T>(vertices: V, edges: I) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        I: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adj.push(BTreeSet::new());
        Ok(id)
    }

    /// Adds the edge `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<bool> {
        let a = self.id(u)?;
        let b = self.id(v)?;
        self.add_edge_by_index(a, b)
    }

    pub fn add_edge_by_index(&mut self, a: usize, b: usize) -> Result<bool> {
        if a == b {
            return Err(Error::SelfLoop(self.names[a].clone()));
        }
        let fresh = self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(fresh)
    }

    pub fn remove_edge(&mut self, u: &str, v: &str) -> Result<bool> {
        let a = self.id(u)?;
        let b = self.id(v)?;
        self.adj[b].remove(&a);
        Ok(self.adj[a].remove(&b))
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Resolves a list of labels to indices, rejecting unknown labels.
    /// Repeated labels are collapsed.
    pub fn ids<I, S>(&self, names: I) -> Result<Vec<usize>>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set: BTreeSet<usize> = names
            .into_iter()
            .map(|n| self.id(n.as_ref()))
            .collect::<Result<_>>()?;
        Ok(set.into_iter().collect())
    }

    pub fn neighbors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[id].iter().copied()
    }

    /// Neighbors of a vertex, by label.
    pub fn neighborhood(&self, name: &str) -> Result<BTreeSet<&str>> {
        let id = self.id(name)?;
        Ok(self.neighbors(id).map(|w| self.name(w)).collect())
    }

    pub fn degree(&self, id: usize) -> usize {
        self.adj[id].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn adjacent(&self, u: &str, v: &str) -> Result<bool> {
        Ok(self.has_edge(self.id(u)?, self.id(v)?))
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// Edges as label pairs, in the same order as [`Graph::edges`].
    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect()
    }

    /// `G[X]`: keeps the vertices of `x` in the parent's declaration order.
    pub fn induced_subgraph<I, S>(&self, x: I) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let ids = self.ids(x)?;
        Ok(self.induced_by_ids(&ids))
    }

    pub fn induced_by_ids(&self, ids: &[usize]) -> Graph {
        let mut sub = Graph::new();
        let mut local = HashMap::with_capacity(ids.len());
        for &v in ids {
            local.insert(v, sub.names.len());
            sub.add_vertex(self.names[v].clone())
                .expect("parent labels are unique");
        }
        for &v in ids {
            for w in self.neighbors(v) {
                if let (Some(&a), Some(&b)) = (local.get(&v), local.get(&w)) {
                    sub.adj[a].insert(b);
                }
            }
        }
        sub
    }

    /// `G[A, B]` for a cut given by labels.
    pub fn cut_graph(&self, cut: &Cut) -> Result<BipartiteCutGraph> {
        let side = self.side_mask(cut)?;
        Ok(self.cut_graph_by_mask(&side))
    }

    /// `G[A, V∖A]` where `in_a[v]` marks membership of `A`.
    pub fn cut_graph_by_mask(&self, in_a: &[bool]) -> BipartiteCutGraph {
        debug_assert_eq!(in_a.len(), self.order());
        let (left, right): (Vec<usize>, Vec<usize>) = (0..self.order()).partition(|&v| in_a[v]);
        let cross_edges = left
            .iter()
            .flat_map(|&a| self.neighbors(a).filter(|&b| !in_a[b]).map(move |b| (a, b)))
            .collect();
        BipartiteCutGraph {
            left,
            right,
            cross_edges,
        }
    }

    fn side_mask(&self, cut: &Cut) -> Result<Vec<bool>> {
        let mut seen = vec![None; self.order()];
        for (flag, side) in [(true, &cut.side_a), (false, &cut.side_b)] {
            for name in side {
                let id = self.id(name)?;
                if seen[id].is_some() {
                    return Err(Error::NotAPartition(format!(
                        "`{name}` appears more than once"
                    )));
                }
                seen[id] = Some(flag);
            }
        }
        seen.iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| {
                    Error::NotAPartition(format!("`{}` is on neither side", self.names[v]))
                })
            })
            .collect()
    }

    /// `mim_G(A)`: the maximum induced matching of `G[A, V∖A]`.
    pub fn mim_value<I, S>(&self, a: I) -> Result<usize>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = vec![false; self.order()];
        for id in self.ids(a)? {
            mask[id] = true;
        }
        Ok(self.mim_value_by_mask(&mask))
    }

    pub fn mim_value_by_mask(&self, in_a: &[bool]) -> usize {
        matching::max_induced_matching(&self.cut_graph_by_mask(in_a))
    }

    /// True iff `G[X]` is acyclic.
    pub fn is_forest<I, S>(&self, x: I) -> Result<bool>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let ids = self.ids(x)?;
        Ok(self.is_forest_by_ids(&ids))
    }

    pub fn is_forest_by_ids(&self, ids: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &v in ids {
            member[v] = true;
        }
        let mut sets = DisjointSets::new(self.order());
        ids.iter().all(|&v| {
            self.neighbors(v)
                .filter(|&w| w > v && member[w])
                .all(|w| sets.union(v, w))
        })
    }

    /// Number of connected components of `G[X]`.
    pub fn component_count_by_ids(&self, ids: &[usize]) -> usize {
        let mut member = vec![false; self.order()];
        for &v in ids {
            member[v] = true;
        }
        let mut sets = DisjointSets::new(self.order());
        let mut merges = 0;
        for &v in ids {
            for w in self.neighbors(v).filter(|&w| member[w]) {
                if sets.union(v, w) {
                    merges += 1;
                }
            }
        }
        ids.len() - merges
    }
}

/// A bipartition `(A, B)` of a graph's vertex set, by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side_a: Vec<String>,
    pub side_b: Vec<String>,
}

impl Cut {
    pub fn new<A, B, S, T>(side_a: A, side_b: B) -> Self
    where
        A: IntoIterator<Item = S>,
        B: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        Cut {
            side_a: side_a.into_iter().map(Into::into).collect(),
            side_b: side_b.into_iter().map(Into::into).collect(),
        }
    }

    /// `(A, V(g)∖A)`.
    pub fn from_side<I, S>(g: &Graph, a: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let ids = g.ids(a)?;
        let mut in_a = vec![false; g.order()];
        for &v in &ids {
            in_a[v] = true;
        }
        let side_b = (0..g.order())
            .filter(|&v| !in_a[v])
            .map(|v| g.names[v].clone());
        Ok(Cut::new(ids.iter().map(|&v| g.names[v].clone()), side_b))
    }
}

/// The bipartite graph of edges crossing a cut. Indices refer to the parent
/// graph; every cross edge is stored as `(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteCutGraph {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub cross_edges: Vec<(usize, usize)>,
}

impl BipartiteCutGraph {
    /// Swaps the two sides.
    pub fn transposed(&self) -> Self {
        BipartiteCutGraph {
            left: self.right.clone(),
            right: self.left.clone(),
            cross_edges: self.cross_edges.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }
}
