//! The Multicolored Clique → Maximum Induced Forest construction.
//!
//! Given a `k`-partitioned graph with parts of size `p`, the pattern H has
//! nodes `u_i` and `w_{i,j}` and, for every `i < j`, two parallel edges
//! `u_i w_{i,j}` and two parallel edges `u_j w_{i,j}`. H′ subdivides every
//! edge `p` times and then adds the extra nodes `x[i]_0e`, `y[i]_0e` next to
//! `u_i` (on the `(i, i+1)` paths, or the `(k, k-1)` paths for `i = k`) and
//! `x[i,j]_pe`, `y[i,j]_pe` next to `w_{i,j}` on the `(i, j)` paths. The
//! models of the α-, z- and r-vertices live on H′; the apex `beta` is then
//! joined to every z- and r-vertex.
//!
//! The same graph is also produced as an intersection graph over K′, where K
//! is H plus two pendant nodes on every branch node.

use std::collections::{BTreeSet, HashMap};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::{self, HRepresentation, MultiGraph};
use crate::names::{self, PathNames, Strand, BETA};
use crate::widths::LinearOrder;

/// A Multicolored Clique instance: a graph and a partition of its vertices
/// into `k ≥ 2` parts. `v^i_s` is `parts[i-1][s-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MccJson", into = "MccJson")]
pub struct MccInstance {
    graph: Graph,
    parts: Vec<Vec<String>>,
}

/// Wire form: `{"k": int, "parts": [[vertex, ..], ..], "edges": [[u, v], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MccJson {
    pub k: usize,
    pub parts: Vec<Vec<String>>,
    pub edges: Vec<[String; 2]>,
}

impl TryFrom<MccJson> for MccInstance {
    type Error = Error;

    fn try_from(json: MccJson) -> Result<Self> {
        if json.k != json.parts.len() {
            return Err(Error::InvalidInstance(format!(
                "k = {} but {} parts given",
                json.k,
                json.parts.len()
            )));
        }
        let graph = Graph::from_edges(
            json.parts.iter().flatten().cloned(),
            json.edges.iter().map(|[u, v]| (u, v)),
        )
        .map_err(|e| match e {
            Error::DuplicateVertex(v) => {
                Error::InvalidInstance(format!("`{v}` appears in more than one part"))
            }
            other => other,
        })?;
        MccInstance::new(graph, json.parts)
    }
}

impl From<MccInstance> for MccJson {
    fn from(inst: MccInstance) -> Self {
        MccJson {
            k: inst.parts.len(),
            edges: inst
                .graph
                .edge_names()
                .into_iter()
                .map(|(u, v)| [u, v])
                .collect(),
            parts: inst.parts,
        }
    }
}

impl MccInstance {
    /// Checks that `parts` is a partition of `V(graph)` into at least two
    /// parts. Parts may have different sizes.
    pub fn new(graph: Graph, parts: Vec<Vec<String>>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "need at least two parts, got {}",
                parts.len()
            )));
        }
        let mut seen = vec![false; graph.order()];
        for v in parts.iter().flatten() {
            let id = graph.id(v)?;
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::InvalidInstance(format!(
                    "`{v}` appears in more than one part"
                )));
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidInstance(format!(
                "`{}` belongs to no part",
                graph.name(v)
            )));
        }
        Ok(MccInstance { graph, parts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Vec<String>] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Size of the largest part; the common part size once padded.
    pub fn p(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_padded(&self) -> bool {
        let p = self.p();
        p > 0 && self.parts.iter().all(|part| part.len() == p)
    }

    /// `v^i_s`, 1-based.
    pub fn vertex(&self, i: usize, s: usize) -> &str {
        &self.parts[i - 1][s - 1]
    }

    /// `(i, s)` for every vertex, 1-based.
    pub fn positions(&self) -> HashMap<&str, (usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, part)| {
                part.iter()
                    .enumerate()
                    .map(move |(s, v)| (v.as_str(), (i + 1, s + 1)))
            })
            .collect()
    }

    /// Edges `v^i_s v^j_t` with `i < j`, as sorted `(i, j, s, t)`.
    /// Edges inside a part are skipped.
    pub fn cross_edges(&self) -> Vec<(usize, usize, usize, usize)> {
        let pos = self.positions();
        let mut out: Vec<_> = self
            .graph
            .edge_names()
            .iter()
            .filter_map(|(a, b)| {
                let (pa, pb) = (pos[a.as_str()], pos[b.as_str()]);
                match pa.0.cmp(&pb.0) {
                    std::cmp::Ordering::Less => Some((pa.0, pb.0, pa.1, pb.1)),
                    std::cmp::Ordering::Greater => Some((pb.0, pa.0, pb.1, pa.1)),
                    std::cmp::Ordering::Equal => None,
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// Pads every part with isolated vertices up to the largest part size.
/// Padding vertices are named `pad[i]_n`, skipping names already taken.
pub fn pad_instance(g: &Graph, parts: &[Vec<String>]) -> Result<MccInstance> {
    let inst = MccInstance::new(g.clone(), parts.to_vec())?;
    let p = inst.p();
    if p == 0 {
        return Err(Error::InvalidInstance("all parts are empty".into()));
    }
    let mut graph = inst.graph;
    let mut parts = inst.parts;
    let mut counter = 0;
    for (i, part) in parts.iter_mut().enumerate() {
        while part.len() < p {
            counter += 1;
            let name = format!("pad[{}]_{counter}", i + 1);
            if graph.contains(&name) {
                continue;
            }
            graph.add_vertex(name.clone())?;
            part.push(name);
        }
    }
    Ok(MccInstance { graph, parts })
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    Ok(())
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=k).flat_map(move |i| (i + 1..=k).map(move |j| (i, j)))
}

pub fn binomial2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Target forest size `3k + 3·C(k,2) + 1`.
pub fn target_forest_size(k: usize) -> usize {
    3 * k + 3 * binomial2(k) + 1
}

/// The pattern multigraph H. Edges are listed per pair `i < j` as
/// `x[i,j]`, `y[i,j]`, `x[j,i]`, `y[j,i]`, each oriented from `u` to `w`.
pub fn build_h(k: usize) -> Result<MultiGraph> {
    check_k(k)?;
    let mut h = MultiGraph::new();
    for i in 1..=k {
        h.add_node(names::u(i))?;
    }
    for (i, j) in pairs(k) {
        h.add_node(names::w(i, j))?;
    }
    for (i, j) in pairs(k) {
        let w = names::w(i, j);
        for (a, b) in [(i, j), (j, i)] {
            for strand in [Strand::X, Strand::Y] {
                h.add_edge(&names::u(a), &w, Some(&names::path_label(strand, a, b)))?;
            }
        }
    }
    Ok(h)
}

/// The ordered-pair path that hosts `x[i]_0e` and `y[i]_0e`.
pub fn start_epsilon_path(i: usize, k: usize) -> (usize, usize) {
    if i < k {
        (i, i + 1)
    } else {
        (k, k - 1)
    }
}

/// H′: H subdivided `p` times per edge, plus the extra nodes beside `u_i`
/// and `w_{i,j}`.
pub fn build_h_sub(k: usize, p: usize) -> Result<MultiGraph> {
    check_k(k)?;
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let path = PathNames { p };
    let mut h = build_h(k)?.subdivide_uniform(p)?;
    for i in 1..=k {
        let (a, b) = start_epsilon_path(i, k);
        for strand in [Strand::X, Strand::Y] {
            let e = h
                .find_edge(&path.node(strand, a, b, 0), &path.node(strand, a, b, 1))
                .expect("first edge of every path exists");
            h.subdivide_edge(e, &names::eps_start(strand, i))?;
        }
    }
    for (i, j) in pairs(k) {
        for strand in [Strand::X, Strand::Y] {
            let e = h
                .find_edge(&path.node(strand, i, j, p), &path.node(strand, i, j, p + 1))
                .expect("last edge of every path exists");
            h.subdivide_edge(e, &names::eps_end(strand, i, j))?;
        }
    }
    Ok(h)
}

/// K: H with two pendant nodes on every `u_i` and every `w_{i,j}`.
pub fn build_k(k: usize) -> Result<MultiGraph> {
    let mut g = build_h(k)?;
    add_pendants(&mut g, k)?;
    Ok(g)
}

fn add_pendants(g: &mut MultiGraph, k: usize) -> Result<()> {
    for i in 1..=k {
        for strand in [Strand::X, Strand::Y] {
            let pi = names::pi_color(strand, i);
            g.add_node(pi.clone())?;
            g.add_edge(&names::u(i), &pi, Some(&pi))?;
        }
    }
    for (i, j) in pairs(k) {
        for strand in [Strand::X, Strand::Y] {
            let pi = names::pi_pair(strand, i, j);
            g.add_node(pi.clone())?;
            g.add_edge(&names::w(i, j), &pi, Some(&pi))?;
        }
    }
    Ok(())
}

/// The pendant node set Π of K.
pub fn pendant_nodes(k: usize) -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=k {
        out.extend([Strand::X, Strand::Y].map(|s| names::pi_color(s, i)));
    }
    for (i, j) in pairs(k) {
        out.extend([Strand::X, Strand::Y].map(|s| names::pi_pair(s, i, j)));
    }
    out
}

/// Role of a vertex of the target graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum VertexClass {
    Z {
        i: usize,
        s: usize,
    },
    AlphaX {
        i: usize,
    },
    AlphaY {
        i: usize,
    },
    AlphaXPair {
        i: usize,
        j: usize,
    },
    AlphaYPair {
        i: usize,
        j: usize,
    },
    R {
        i: usize,
        j: usize,
        s: usize,
        t: usize,
    },
    Beta,
}

impl VertexClass {
    pub fn is_alpha(self) -> bool {
        matches!(
            self,
            VertexClass::AlphaX { .. }
                | VertexClass::AlphaY { .. }
                | VertexClass::AlphaXPair { .. }
                | VertexClass::AlphaYPair { .. }
        )
    }

    pub fn name(self) -> String {
        match self {
            VertexClass::Z { i, s } => names::z(i, s),
            VertexClass::AlphaX { i } => names::alpha_color(Strand::X, i),
            VertexClass::AlphaY { i } => names::alpha_color(Strand::Y, i),
            VertexClass::AlphaXPair { i, j } => names::alpha_pair(Strand::X, i, j),
            VertexClass::AlphaYPair { i, j } => names::alpha_pair(Strand::Y, i, j),
            VertexClass::R { i, j, s, t } => names::r(i, j, s, t),
            VertexClass::Beta => BETA.to_owned(),
        }
    }
}

/// Which part of the construction a host node's model family belongs to.
#[derive(Clone, Copy, Debug)]
enum Host {
    /// H′ with the extra subdivision nodes.
    Subdivided,
    /// K′: the pendant nodes stand in for the extra subdivision nodes.
    Pendant,
}

struct ModelBuilder {
    k: usize,
    p: usize,
    host: Host,
}

impl ModelBuilder {
    fn path(&self) -> PathNames {
        PathNames { p: self.p }
    }

    /// Positions `from..=to` on the ordered-pair path `(i, j)`.
    fn segment(&self, strand: Strand, i: usize, j: usize, from: usize, to: usize) -> Vec<String> {
        (from..=to)
            .map(|s| self.path().node(strand, i, j, s))
            .collect()
    }

    fn color_anchor(&self, strand: Strand, i: usize) -> String {
        match self.host {
            Host::Subdivided => names::eps_start(strand, i),
            Host::Pendant => names::pi_color(strand, i),
        }
    }

    fn pair_anchor(&self, strand: Strand, i: usize, j: usize) -> String {
        match self.host {
            Host::Subdivided => names::eps_end(strand, i, j),
            Host::Pendant => names::pi_pair(strand, i, j),
        }
    }

    fn z(&self, i: usize, s: usize) -> BTreeSet<String> {
        let p = self.p;
        let mut m: BTreeSet<String> = [Strand::X, Strand::Y]
            .map(|st| self.color_anchor(st, i))
            .into_iter()
            .collect();
        for j in (1..=self.k).filter(|&j| j != i) {
            m.extend(self.segment(Strand::X, i, j, 0, s - 1));
            m.extend(self.segment(Strand::Y, i, j, 0, p - s));
        }
        m
    }

    fn r(&self, i: usize, j: usize, s: usize, t: usize) -> BTreeSet<String> {
        let p = self.p;
        let mut m: BTreeSet<String> = [Strand::X, Strand::Y]
            .map(|st| self.pair_anchor(st, i, j))
            .into_iter()
            .collect();
        m.extend(self.segment(Strand::X, i, j, s, p + 1));
        m.extend(self.segment(Strand::Y, i, j, p - s + 1, p + 1));
        m.extend(self.segment(Strand::X, j, i, t, p + 1));
        m.extend(self.segment(Strand::Y, j, i, p - t + 1, p + 1));
        m
    }

    /// Models of every vertex except `beta`, with their classes, in the
    /// canonical vertex order: colour α's, z's, pair α's, r's.
    fn models(
        &self,
        cross: &[(usize, usize, usize, usize)],
    ) -> Vec<(VertexClass, BTreeSet<String>)> {
        let (k, p) = (self.k, self.p);
        let single = |n: String| BTreeSet::from([n]);
        let mut out = Vec::new();
        for i in 1..=k {
            out.push((
                VertexClass::AlphaX { i },
                single(self.color_anchor(Strand::X, i)),
            ));
            out.push((
                VertexClass::AlphaY { i },
                single(self.color_anchor(Strand::Y, i)),
            ));
        }
        for i in 1..=k {
            for s in 1..=p {
                out.push((VertexClass::Z { i, s }, self.z(i, s)));
            }
        }
        for (i, j) in pairs(k) {
            out.push((
                VertexClass::AlphaXPair { i, j },
                single(self.pair_anchor(Strand::X, i, j)),
            ));
            out.push((
                VertexClass::AlphaYPair { i, j },
                single(self.pair_anchor(Strand::Y, i, j)),
            ));
        }
        for &(i, j, s, t) in cross {
            out.push((VertexClass::R { i, j, s, t }, self.r(i, j, s, t)));
        }
        out
    }
}

fn require_padded(inst: &MccInstance) -> Result<()> {
    if !inst.is_padded() {
        return Err(Error::InvalidInstance(
            "parts must all have the same size; pad the instance first".into(),
        ));
    }
    Ok(())
}

/// The H-representation of G″ (the target graph without `beta`) over H′.
pub fn build_models(inst: &MccInstance) -> Result<HRepresentation> {
    require_padded(inst)?;
    let (k, p) = (inst.k(), inst.p());
    let builder = ModelBuilder {
        k,
        p,
        host: Host::Subdivided,
    };
    let mut rep = HRepresentation::new(build_h_sub(k, p)?);
    for (class, model) in builder.models(&inst.cross_edges()) {
        rep.models.insert(class.name(), model);
    }
    Ok(rep)
}

/// K′ (H-part of K subdivided `p` times) and the representation of the
/// whole target graph over it, `beta` included.
pub fn build_k_representation(inst: &MccInstance) -> Result<HRepresentation> {
    require_padded(inst)?;
    let (k, p) = (inst.k(), inst.p());
    let mut host = build_h(k)?.subdivide_uniform(p)?;
    let h_part: Vec<String> = host.nodes().to_vec();
    add_pendants(&mut host, k)?;
    let builder = ModelBuilder {
        k,
        p,
        host: Host::Pendant,
    };
    let mut rep = HRepresentation::new(host);
    for (class, model) in builder.models(&inst.cross_edges()) {
        rep.models.insert(class.name(), model);
    }
    rep.insert(BETA, h_part);
    Ok(rep)
}

/// Everything the reduction emits for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub instance: MccInstance,
    pub k: usize,
    pub p: usize,
    pub g_prime: Graph,
    pub k_prime: usize,
    pub h_pattern: MultiGraph,
    pub h_sub: MultiGraph,
    /// Representation of G″ over H′.
    pub representation: HRepresentation,
    /// Linear order of G′: the representation order with `beta` last.
    pub order: LinearOrder,
    pub k_pattern: MultiGraph,
    /// Representation of G′ over K′.
    pub k_representation: HRepresentation,
    pub beta: String,
    pub name_index: IndexMap<String, VertexClass>,
    /// Ordered-pair path `(i, j)` carrying each extra subdivision node.
    pub epsilon_paths: IndexMap<String, (usize, usize)>,
}

pub fn build_reduction(inst: &MccInstance) -> Result<ReductionOutput> {
    require_padded(inst)?;
    let (k, p) = (inst.k(), inst.p());
    let representation = build_models(inst)?;
    let mut g_prime = hgraph::intersection_graph(&representation)?;

    let mut name_index = IndexMap::new();
    let builder = ModelBuilder {
        k,
        p,
        host: Host::Subdivided,
    };
    for (class, _) in builder.models(&inst.cross_edges()) {
        name_index.insert(class.name(), class);
    }
    attach_apex(&mut g_prime, &name_index)?;
    name_index.insert(BETA.to_owned(), VertexClass::Beta);

    let mut order = hgraph::linear_order_from_representation(&representation)?;
    order.order.push(BETA.to_owned());

    let mut epsilon_paths = IndexMap::new();
    for i in 1..=k {
        for strand in [Strand::X, Strand::Y] {
            epsilon_paths.insert(names::eps_start(strand, i), start_epsilon_path(i, k));
        }
    }
    for (i, j) in pairs(k) {
        for strand in [Strand::X, Strand::Y] {
            epsilon_paths.insert(names::eps_end(strand, i, j), (i, j));
        }
    }

    Ok(ReductionOutput {
        instance: inst.clone(),
        k,
        p,
        k_prime: target_forest_size(k),
        h_pattern: build_h(k)?,
        h_sub: representation.host.clone(),
        k_pattern: build_k(k)?,
        k_representation: build_k_representation(inst)?,
        beta: BETA.to_owned(),
        g_prime,
        representation,
        order,
        name_index,
        epsilon_paths,
    })
}

/// Adds `beta` adjacent to every non-α vertex listed in `classes`.
fn attach_apex(g: &mut Graph, classes: &IndexMap<String, VertexClass>) -> Result<()> {
    let beta = g.add_vertex(BETA)?;
    for (name, class) in classes {
        if !class.is_alpha() && *class != VertexClass::Beta {
            g.add_edge_by_index(beta, g.id(name)?)?;
        }
    }
    Ok(())
}

impl ReductionOutput {
    /// Recomputes `g_prime` from the current models plus the apex. Used to
    /// propagate edits of `representation`.
    pub fn rebuild_target(&mut self) -> Result<()> {
        let mut g = hgraph::intersection_graph(&self.representation)?;
        attach_apex(&mut g, &self.name_index)?;
        self.g_prime = g;
        Ok(())
    }

    pub fn class_of(&self, vertex: &str) -> Option<VertexClass> {
        self.name_index.get(vertex).copied()
    }

    fn select(&self, pred: impl Fn(VertexClass) -> bool) -> Vec<&str> {
        self.name_index
            .iter()
            .filter(|(_, &c)| pred(c))
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// `Z(i)`, ordered by `s`.
    pub fn z_set(&self, color: usize) -> Vec<&str> {
        self.select(|c| matches!(c, VertexClass::Z { i, .. } if i == color))
    }

    /// `R(i, j)` for `i < j`.
    pub fn r_set(&self, a: usize, b: usize) -> Vec<&str> {
        self.select(|c| matches!(c, VertexClass::R { i, j, .. } if (i, j) == (a, b)))
    }

    /// The α-vertices of colour `i`: `[ax[i], ay[i]]`.
    pub fn alpha_color(&self, i: usize) -> [String; 2] {
        [Strand::X, Strand::Y].map(|s| names::alpha_color(s, i))
    }

    /// The α-vertices of pair `(i, j)`.
    pub fn alpha_pair(&self, i: usize, j: usize) -> [String; 2] {
        [Strand::X, Strand::Y].map(|s| names::alpha_pair(s, i, j))
    }

    /// The independent set A of all α-vertices.
    pub fn alpha_set(&self) -> Vec<&str> {
        self.select(VertexClass::is_alpha)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        pairs(self.k).collect()
    }

    /// The K′-representation model of `beta` is the H-part of K′; every
    /// other model carries over. The representations describe the same
    /// graph when this intersection graph equals `g_prime`.
    pub fn k_intersection_graph(&self) -> Result<Graph> {
        hgraph::intersection_graph(&self.k_representation)
    }
}
