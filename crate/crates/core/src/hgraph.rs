//! Host multigraphs, edge subdivision and H-representations.
//!
//! A [`MultiGraph`] keeps its edges in a list; subdividing an edge replaces
//! it in place by the two halves, oriented the same way. A path obtained by
//! repeated subdivision therefore stays contiguous and oriented in the list,
//! which is what [`host_traversal`] relies on.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::widths::LinearOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct HostEdge {
    id: EdgeId,
    u: usize,
    v: usize,
    label: Option<String>,
}

/// Undirected multigraph with named nodes and identified edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MultiGraphJson", into = "MultiGraphJson")]
pub struct MultiGraph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<HostEdge>,
    next_id: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HostEdgeJson {
    pub id: EdgeId,
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Wire form: `{"nodes": [..], "edges": [{"id", "u", "v", "label"?}, ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiGraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<HostEdgeJson>,
}

impl TryFrom<MultiGraphJson> for MultiGraph {
    type Error = Error;

    fn try_from(json: MultiGraphJson) -> Result<Self> {
        MultiGraph::from_parts(json.nodes, json.edges)
    }
}

impl From<MultiGraph> for MultiGraphJson {
    fn from(h: MultiGraph) -> Self {
        MultiGraphJson {
            edges: h.edge_records(),
            nodes: h.nodes,
        }
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(nodes: Vec<String>, edges: Vec<HostEdgeJson>) -> Result<Self> {
        let mut h = MultiGraph::new();
        for n in nodes {
            h.add_node(n)?;
        }
        for e in edges {
            if h.edges.iter().any(|x| x.id == e.id) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge id {}",
                    e.id
                )));
            }
            let (u, v) = (h.node_id(&e.u)?, h.node_id(&e.v)?);
            if u == v {
                return Err(Error::SelfLoop(e.u));
            }
            h.edges.push(HostEdge {
                id: e.id,
                u,
                v,
                label: e.label,
            });
            h.next_id = h.next_id.max(e.id.0 + 1);
        }
        Ok(h)
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateNode(name));
        }
        self.index.insert(name.clone(), self.nodes.len());
        self.nodes.push(name);
        Ok(self.nodes.len() - 1)
    }

    /// Adds an edge oriented `u → v`. Parallel edges are allowed.
    pub fn add_edge(&mut self, u: &str, v: &str, label: Option<&str>) -> Result<EdgeId> {
        let (a, b) = (self.node_id(u)?, self.node_id(v)?);
        if a == b {
            return Err(Error::SelfLoop(u.to_owned()));
        }
        let id = self.fresh_id();
        self.edges.push(HostEdge {
            id,
            u: a,
            v: b,
            label: label.map(str::to_owned),
        });
        Ok(id)
    }

    fn fresh_id(&mut self) -> EdgeId {
        let id = EdgeId(self.next_id);
        self.next_id += 1;
        id
    }

    fn node_id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_owned()))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn contains_node(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn degree(&self, name: &str) -> Result<usize> {
        let x = self.node_id(name)?;
        Ok(self.edges.iter().filter(|e| e.u == x || e.v == x).count())
    }

    /// Edges in list order as `(id, u, v, label)`.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &str, &str, Option<&str>)> {
        self.edges.iter().map(|e| {
            (
                e.id,
                self.nodes[e.u].as_str(),
                self.nodes[e.v].as_str(),
                e.label.as_deref(),
            )
        })
    }

    pub fn edge_records(&self) -> Vec<HostEdgeJson> {
        self.edges()
            .map(|(id, u, v, label)| HostEdgeJson {
                id,
                u: u.to_owned(),
                v: v.to_owned(),
                label: label.map(str::to_owned),
            })
            .collect()
    }

    /// Number of edges joining `u` and `v` (either orientation).
    pub fn multiplicity(&self, u: &str, v: &str) -> Result<usize> {
        let (a, b) = (self.node_id(u)?, self.node_id(v)?);
        Ok(self
            .edges
            .iter()
            .filter(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a))
            .count())
    }

    /// First edge in list order joining `u` and `v`.
    pub fn find_edge(&self, u: &str, v: &str) -> Option<EdgeId> {
        let (a, b) = (self.node_id(u).ok()?, self.node_id(v).ok()?);
        self.edges
            .iter()
            .find(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a))
            .map(|e| e.id)
    }

    /// Replaces edge `e = uv` by the path `u - new_node - v`. Both halves keep
    /// the label of `e` and take its place in the edge list.
    pub fn subdivide_edge(&mut self, e: EdgeId, new_node: &str) -> Result<[EdgeId; 2]> {
        let pos = self
            .edges
            .iter()
            .position(|x| x.id == e)
            .ok_or(Error::MissingEdge(e.0))?;
        let x = self.add_node(new_node)?;
        let old = self.edges.remove(pos);
        let first = HostEdge {
            id: self.fresh_id(),
            u: old.u,
            v: x,
            label: old.label.clone(),
        };
        let second = HostEdge {
            id: self.fresh_id(),
            u: x,
            v: old.v,
            label: old.label,
        };
        let ids = [first.id, second.id];
        self.edges.splice(pos..pos, [first, second]);
        Ok(ids)
    }

    /// Subdivides every edge `times` times. The new nodes of an edge are
    /// named `{label}_{s}` (or `e{id}_{s}` for unlabeled edges), with `s`
    /// running from 1 at the `u` end to `times` at the `v` end.
    pub fn subdivide_uniform(&self, times: usize) -> Result<MultiGraph> {
        if times == 0 {
            return Err(Error::InvalidParameter(
                "subdivision count must be positive".into(),
            ));
        }
        let mut out = MultiGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            next_id: 0,
        };
        for n in &self.nodes {
            out.add_node(n.clone())?;
        }
        for e in &self.edges {
            let stem = e.label.clone().unwrap_or_else(|| e.id.to_string());
            let mut prev = e.u;
            for s in 1..=times {
                let x = out.add_node(format!("{stem}_{s}"))?;
                let id = out.fresh_id();
                out.edges.push(HostEdge {
                    id,
                    u: prev,
                    v: x,
                    label: e.label.clone(),
                });
                prev = x;
            }
            let id = out.fresh_id();
            out.edges.push(HostEdge {
                id,
                u: prev,
                v: e.v,
                label: e.label.clone(),
            });
        }
        Ok(out)
    }

    /// True iff the nodes of `set` induce a connected subgraph. The empty
    /// set counts as disconnected.
    pub fn is_connected_set<S: AsRef<str>>(&self, set: &[S]) -> Result<bool> {
        let ids: BTreeSet<usize> = set
            .iter()
            .map(|n| self.node_id(n.as_ref()))
            .collect::<Result<_>>()?;
        let Some(&start) = ids.iter().next() else {
            return Ok(false);
        };
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in &self.edges {
            if ids.contains(&e.u) && ids.contains(&e.v) {
                adj.entry(e.u).or_default().push(e.v);
                adj.entry(e.v).or_default().push(e.u);
            }
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        Ok(seen.len() == ids.len())
    }
}

/// Position of every host node in the canonical walk: nodes in order of
/// first appearance along the oriented edge list, then any node without
/// edges in declaration order.
pub fn host_traversal(host: &MultiGraph) -> Vec<usize> {
    let mut pos = vec![usize::MAX; host.nodes.len()];
    let mut next = 0;
    let mut visit = |x: usize, pos: &mut Vec<usize>| {
        if pos[x] == usize::MAX {
            pos[x] = next;
            next += 1;
        }
    };
    for e in &host.edges {
        visit(e.u, &mut pos);
        visit(e.v, &mut pos);
    }
    for x in 0..host.nodes.len() {
        visit(x, &mut pos);
    }
    pos
}

/// A problem found by [`validate_representation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyModel { vertex: String },
    UnknownNode { vertex: String, node: String },
    Disconnected { vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyModel { vertex } => write!(f, "model of `{vertex}` is empty"),
            Violation::UnknownNode { vertex, node } => {
                write!(f, "model of `{vertex}` uses unknown host node `{node}`")
            }
            Violation::Disconnected { vertex } => {
                write!(f, "model of `{vertex}` is not connected in the host")
            }
        }
    }
}

/// A host subdivision together with one model (host node set) per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationJson", into = "RepresentationJson")]
pub struct HRepresentation {
    pub host: MultiGraph,
    pub models: IndexMap<String, BTreeSet<String>>,
}

/// Wire form: `{"host_nodes": [..], "host_edges": [..], "models": {vertex: [node, ..]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub host_nodes: Vec<String>,
    pub host_edges: Vec<HostEdgeJson>,
    pub models: IndexMap<String, Vec<String>>,
}

impl TryFrom<RepresentationJson> for HRepresentation {
    type Error = Error;

    fn try_from(json: RepresentationJson) -> Result<Self> {
        Ok(HRepresentation {
            host: MultiGraph::from_parts(json.host_nodes, json.host_edges)?,
            models: json
                .models
                .into_iter()
                .map(|(v, m)| (v, m.into_iter().collect()))
                .collect(),
        })
    }
}

impl From<HRepresentation> for RepresentationJson {
    fn from(rep: HRepresentation) -> Self {
        RepresentationJson {
            host_edges: rep.host.edge_records(),
            host_nodes: rep.host.nodes,
            models: rep
                .models
                .into_iter()
                .map(|(v, m)| (v, m.into_iter().collect()))
                .collect(),
        }
    }
}

impl HRepresentation {
    pub fn new(host: MultiGraph) -> Self {
        HRepresentation {
            host,
            models: IndexMap::new(),
        }
    }

    pub fn insert<I, S>(&mut self, vertex: impl Into<String>, model: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.models
            .insert(vertex.into(), model.into_iter().map(Into::into).collect());
    }
}

/// Every violation of "non-empty, inside the host, connected", in model order.
pub fn validate_representation(rep: &HRepresentation) -> Vec<Violation> {
    let mut out = Vec::new();
    for (v, model) in &rep.models {
        if model.is_empty() {
            out.push(Violation::EmptyModel { vertex: v.clone() });
            continue;
        }
        let unknown: Vec<&String> = model
            .iter()
            .filter(|n| !rep.host.contains_node(n))
            .collect();
        if !unknown.is_empty() {
            out.extend(unknown.into_iter().map(|n| Violation::UnknownNode {
                vertex: v.clone(),
                node: n.clone(),
            }));
            continue;
        }
        let nodes: Vec<&String> = model.iter().collect();
        if !rep.host.is_connected_set(&nodes).expect("nodes checked") {
            out.push(Violation::Disconnected { vertex: v.clone() });
        }
    }
    out
}

fn ensure_valid(rep: &HRepresentation) -> Result<()> {
    let violations = validate_representation(rep);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidRepresentation(violations))
    }
}

/// The intersection graph of the models; vertices follow model order.
pub fn intersection_graph(rep: &HRepresentation) -> Result<Graph> {
    ensure_valid(rep)?;
    let mut g = Graph::new();
    let mut holders: HashMap<&str, Vec<usize>> = HashMap::new();
    for (v, model) in &rep.models {
        let id = g.add_vertex(v.clone())?;
        for n in model {
            holders.entry(n.as_str()).or_default().push(id);
        }
    }
    for vs in holders.values() {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                g.add_edge_by_index(a, b)?;
            }
        }
    }
    Ok(g)
}

/// Orders vertices by the earliest host node of their model under
/// [`host_traversal`], ties broken by vertex label.
pub fn linear_order_from_representation(rep: &HRepresentation) -> Result<LinearOrder> {
    ensure_valid(rep)?;
    let pos = host_traversal(&rep.host);
    let mut keyed: Vec<(usize, &String)> = rep
        .models
        .iter()
        .map(|(v, model)| {
            let first = model
                .iter()
                .map(|n| pos[rep.host.node_id(n).expect("validated")])
                .min()
                .expect("models are non-empty");
            (first, v)
        })
        .collect();
    keyed.sort();
    Ok(LinearOrder::new(keyed.into_iter().map(|(_, v)| v.clone())))
}
