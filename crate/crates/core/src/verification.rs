//! Executable checks of the structural facts the correctness argument of the
//! reduction rests on, plus the end-to-end equivalence check and a suite
//! runner over generated corpora.
//!
//! Every check returns a [`CheckReport`]. A failing report names the
//! offending vertices and edges; re-running the check on the instance named
//! by the report's descriptor reproduces it.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::InstanceSpec;
use crate::hgraph::validate_representation;
use crate::names::{self, Strand};
use crate::oracles::{self, ForestWitness, Outcome};
use crate::reduction::{self, MccInstance, ReductionOutput, VertexClass};
use crate::widths;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn pass(check: &str, instance: String, detail: impl Into<String>) -> Self {
        CheckReport {
            check: check.to_owned(),
            instance,
            status: Status::Pass,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn fail(check: &str, instance: String, detail: impl Into<String>, cx: Counterexample) -> Self {
        CheckReport {
            check: check.to_owned(),
            instance,
            status: Status::Fail,
            detail: detail.into(),
            counterexample: Some(cx),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Replaces the instance descriptor.
    pub fn on(mut self, descriptor: impl Into<String>) -> Self {
        self.instance = descriptor.into();
        self
    }
}

/// Short fingerprint used when no generator descriptor is known.
pub fn describe(inst: &MccInstance) -> String {
    format!(
        "instance(k={},p={},m={})",
        inst.k(),
        inst.p(),
        inst.graph().size()
    )
}

fn cx<S: AsRef<str>>(vertices: &[S], edges: &[(&str, &str)]) -> Counterexample {
    Counterexample {
        vertices: vertices.iter().map(|v| v.as_ref().to_owned()).collect(),
        edges: edges
            .iter()
            .map(|&(u, v)| [u.to_owned(), v.to_owned()])
            .collect(),
    }
}

fn adjacent(out: &ReductionOutput, u: &str, v: &str) -> Result<bool> {
    out.g_prime.adjacent(u, v)
}

/// `z^i_h` and `z^j_h` are non-adjacent to `r^{(i,j)}_{s,t}` exactly when
/// `h = s`, respectively `h = t`.
pub fn check_adjacency_characterization(out: &ReductionOutput) -> Result<CheckReport> {
    const NAME: &str = "adjacency_characterization";
    let inst = describe(&out.instance);
    let mut checked = 0usize;
    for (i, j) in out.pairs() {
        for rv in out.r_set(i, j) {
            let Some(VertexClass::R { s, t, .. }) = out.class_of(rv) else {
                unreachable!("r_set lists r-vertices");
            };
            for (color, index) in [(i, s), (j, t)] {
                for h in 1..=out.p {
                    let zv = names::z(color, h);
                    let expected = h != index;
                    let actual = adjacent(out, &zv, rv)?;
                    checked += 1;
                    if expected != actual {
                        let detail = if actual {
                            format!("`{zv}` and `{rv}` are adjacent but share index {h}")
                        } else {
                            format!("`{zv}` and `{rv}` are not adjacent though {h} != {index}")
                        };
                        let edges: &[(&str, &str)] = if actual { &[(&zv, rv)] } else { &[] };
                        return Ok(CheckReport::fail(
                            NAME,
                            inst,
                            detail,
                            cx(&[zv.as_str(), rv], edges),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass(
        NAME,
        inst,
        format!("{checked} z/r pairs"),
    ))
}

/// Compares the neighbourhood of `v` with `expected`; on mismatch returns
/// the first offending vertex and whether it is an extra neighbour.
fn neighbourhood_mismatch<'a>(
    out: &'a ReductionOutput,
    v: &str,
    expected: &BTreeSet<&'a str>,
) -> Result<Option<(&'a str, bool)>> {
    let actual = out.g_prime.neighborhood(v)?;
    if let Some(&extra) = actual.difference(expected).next() {
        let extra = out
            .g_prime
            .names()
            .iter()
            .find(|n| *n == extra)
            .expect("vertex");
        return Ok(Some((extra.as_str(), true)));
    }
    Ok(expected
        .difference(&actual)
        .next()
        .map(|&missing| (missing, false)))
}

fn neighbourhood_report(
    name: &str,
    inst: &str,
    item: &str,
    v: &str,
    (w, extra): (&str, bool),
) -> CheckReport {
    let detail = if extra {
        format!("{item}: `{v}` has unexpected neighbour `{w}`")
    } else {
        format!("{item}: `{v}` is missing neighbour `{w}`")
    };
    let edges: &[(&str, &str)] = if extra { &[(v, w)] } else { &[] };
    CheckReport::fail(name, inst.to_owned(), detail, cx(&[v, w], edges))
}

/// The four structural items: both α-vertices of colour `i` see exactly
/// `Z(i)`; both α-vertices of pair `(i, j)` see exactly `R(i, j)`; the
/// α-vertices form an independent set of size `2k + 2·C(k,2)`; every `Z(i)`
/// and `R(i, j)` is a clique. Also checks the apex neighbourhood.
pub fn check_structure(out: &ReductionOutput) -> Result<CheckReport> {
    const NAME: &str = "structure";
    let inst = describe(&out.instance);

    for i in 1..=out.k {
        let z: BTreeSet<&str> = out.z_set(i).into_iter().collect();
        for a in out.alpha_color(i) {
            if let Some(m) = neighbourhood_mismatch(out, &a, &z)? {
                return Ok(neighbourhood_report(NAME, &inst, "item (i)", &a, m));
            }
        }
    }
    for (i, j) in out.pairs() {
        let r: BTreeSet<&str> = out.r_set(i, j).into_iter().collect();
        for a in out.alpha_pair(i, j) {
            if let Some(m) = neighbourhood_mismatch(out, &a, &r)? {
                return Ok(neighbourhood_report(NAME, &inst, "item (ii)", &a, m));
            }
        }
    }

    let alphas = out.alpha_set();
    let expected = 2 * out.k + 2 * reduction::binomial2(out.k);
    if alphas.len() != expected {
        return Ok(CheckReport::fail(
            NAME,
            inst,
            format!(
                "item (iii): {} α-vertices, expected {expected}",
                alphas.len()
            ),
            cx(&alphas, &[]),
        ));
    }
    for (n, a) in alphas.iter().enumerate() {
        for b in &alphas[n + 1..] {
            if adjacent(out, a, b)? {
                return Ok(CheckReport::fail(
                    NAME,
                    inst,
                    format!("item (iii): `{a}` and `{b}` are adjacent"),
                    cx(&[*a, *b], &[(a, b)]),
                ));
            }
        }
    }

    let groups = (1..=out.k)
        .map(|i| out.z_set(i))
        .chain(out.pairs().into_iter().map(|(i, j)| out.r_set(i, j)));
    for group in groups {
        for (n, a) in group.iter().enumerate() {
            for b in &group[n + 1..] {
                if !adjacent(out, a, b)? {
                    return Ok(CheckReport::fail(
                        NAME,
                        inst,
                        format!("item (iv): `{a}` and `{b}` are not adjacent"),
                        cx(&[*a, *b], &[]),
                    ));
                }
            }
        }
    }

    let beta = check_beta_neighborhood(out)?;
    if !beta.passed() {
        return Ok(CheckReport {
            check: NAME.to_owned(),
            ..beta
        });
    }
    Ok(CheckReport::pass(NAME, inst, format!("|A| = {expected}")))
}

/// `N(beta)` is every vertex except the α-vertices and `beta` itself.
pub fn check_beta_neighborhood(out: &ReductionOutput) -> Result<CheckReport> {
    const NAME: &str = "beta_neighborhood";
    let inst = describe(&out.instance);
    let expected: BTreeSet<&str> = out
        .name_index
        .iter()
        .filter(|(_, c)| !c.is_alpha() && **c != VertexClass::Beta)
        .map(|(n, _)| n.as_str())
        .collect();
    match neighbourhood_mismatch(out, &out.beta, &expected)? {
        Some(m) => Ok(neighbourhood_report(NAME, &inst, "apex", &out.beta, m)),
        None => Ok(CheckReport::pass(
            NAME,
            inst,
            format!("degree {}", expected.len()),
        )),
    }
}

/// The emitted order has linear mim-width at most `4k(k-1) + 1`, and the
/// order without `beta` certifies at most `4k(k-1)` on G″.
pub fn check_width_bound(out: &ReductionOutput) -> Result<CheckReport> {
    const NAME: &str = "width_bound";
    let inst = describe(&out.instance);
    let bound = 4 * out.k * (out.k - 1);
    let profile = widths::cut_profile(&out.g_prime, &out.order)?;
    let width = profile.width();
    let inner_order = crate::widths::LinearOrder::new(
        out.order.order.iter().filter(|v| **v != out.beta).cloned(),
    );
    let inner_graph = out.g_prime.induced_subgraph(&inner_order.order)?;
    let inner = widths::mimw_of_order(&inner_graph, &inner_order)?;
    if width > bound + 1 || inner > bound {
        let worst = profile
            .prefix
            .iter()
            .position(|&m| m == width)
            .map_or(0, |t| t + 1);
        return Ok(CheckReport::fail(
            NAME,
            inst,
            format!(
                "width {width} (G″: {inner}) exceeds {} (G″: {bound})",
                bound + 1
            ),
            cx(&out.order.order[..worst], &[]),
        ));
    }
    Ok(CheckReport::pass(
        NAME,
        inst,
        format!(
            "width {width} <= {}, G″ width {inner} <= {bound}",
            bound + 1
        ),
    ))
}

/// Both representations have connected models, and the K′-representation
/// has the same intersection graph as `g_prime`.
pub fn check_representations(out: &ReductionOutput) -> Result<CheckReport> {
    const NAME: &str = "representations";
    let inst = describe(&out.instance);
    for rep in [&out.representation, &out.k_representation] {
        if let Some(v) = validate_representation(rep).into_iter().next() {
            return Ok(CheckReport::fail(
                NAME,
                inst,
                format!("invalid model: {v:?}"),
                Counterexample::default(),
            ));
        }
    }
    let over_k = out.k_intersection_graph()?;
    for (u, v) in out.g_prime.edge_names() {
        if !over_k.adjacent(&u, &v)? {
            return Ok(CheckReport::fail(
                NAME,
                inst,
                format!("edge `{u}`–`{v}` missing over K′"),
                cx(&[&u, &v], &[(&u, &v)]),
            ));
        }
    }
    for (u, v) in over_k.edge_names() {
        if !out.g_prime.adjacent(&u, &v)? {
            return Ok(CheckReport::fail(
                NAME,
                inst,
                format!("edge `{u}`–`{v}` only over K′"),
                cx(&[&u, &v], &[(&u, &v)]),
            ));
        }
    }
    Ok(CheckReport::pass(
        NAME,
        inst,
        format!("{} edges agree", out.g_prime.size()),
    ))
}

/// Vertices of `f` by class.
struct Census<'a> {
    z: BTreeMap<usize, Vec<&'a str>>,
    r: BTreeMap<(usize, usize), Vec<&'a str>>,
    alpha_color: BTreeMap<usize, Vec<&'a str>>,
    alpha_pair: BTreeMap<(usize, usize), Vec<&'a str>>,
    beta: bool,
}

fn census<'a>(out: &ReductionOutput, f: &'a ForestWitness) -> Result<Census<'a>> {
    let mut c = Census {
        z: BTreeMap::new(),
        r: BTreeMap::new(),
        alpha_color: BTreeMap::new(),
        alpha_pair: BTreeMap::new(),
        beta: false,
    };
    for v in &f.vertices {
        match out
            .class_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))?
        {
            VertexClass::Z { i, .. } => c.z.entry(i).or_default().push(v),
            VertexClass::R { i, j, .. } => c.r.entry((i, j)).or_default().push(v),
            VertexClass::AlphaX { i } | VertexClass::AlphaY { i } => {
                c.alpha_color.entry(i).or_default().push(v)
            }
            VertexClass::AlphaXPair { i, j } | VertexClass::AlphaYPair { i, j } => {
                c.alpha_pair.entry((i, j)).or_default().push(v)
            }
            VertexClass::Beta => c.beta = true,
        }
    }
    Ok(c)
}

fn require_forest(out: &ReductionOutput, f: &ForestWitness) -> Result<()> {
    if out.g_prime.is_forest(&f.vertices)? {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "vertex set does not induce a forest".into(),
        ))
    }
}

/// Per-group limits on an induced forest: at most two vertices from each
/// `Z(i)` and `R(i, j)`; two from a group exclude its α-vertices; three from
/// a group together with its α-vertices include both α-vertices.
pub fn check_counting_bounds(out: &ReductionOutput, f: &ForestWitness) -> Result<CheckReport> {
    const NAME: &str = "counting_bounds";
    require_forest(out, f)?;
    let inst = describe(&out.instance);
    let c = census(out, f)?;
    let empty = Vec::new();
    let groups = (1..=out.k)
        .map(|i| {
            (
                c.z.get(&i).unwrap_or(&empty),
                c.alpha_color.get(&i).unwrap_or(&empty),
            )
        })
        .chain(out.pairs().into_iter().map(|key| {
            (
                c.r.get(&key).unwrap_or(&empty),
                c.alpha_pair.get(&key).unwrap_or(&empty),
            )
        }));
    for (members, alphas) in groups {
        let all: Vec<&str> = members.iter().chain(alphas).copied().collect();
        let problem = if members.len() > 2 {
            Some("more than two vertices of one clique group")
        } else if members.len() == 2 && !alphas.is_empty() {
            Some("two group vertices together with an α-vertex")
        } else if all.len() == 3 && alphas.len() != 2 {
            Some("three vertices of an extended group without both α-vertices")
        } else {
            None
        };
        if let Some(problem) = problem {
            return Ok(CheckReport::fail(NAME, inst, problem, cx(&all, &[])));
        }
    }
    Ok(CheckReport::pass(
        NAME,
        inst,
        format!("{} vertices", f.len()),
    ))
}

/// Shape of a `k′`-vertex set: each extended colour group meets it in both
/// α-vertices and one z-vertex, each extended pair group in both α-vertices
/// and one r-vertex, and `beta` is present.
pub fn check_forest_shape(out: &ReductionOutput, f: &ForestWitness) -> Result<CheckReport> {
    const NAME: &str = "forest_shape";
    if f.len() != out.k_prime {
        return Err(Error::InvalidParameter(format!(
            "set has {} vertices, expected {}",
            f.len(),
            out.k_prime
        )));
    }
    let inst = describe(&out.instance);
    let c = census(out, f)?;
    let empty = Vec::new();
    for i in 1..=out.k {
        let z = c.z.get(&i).unwrap_or(&empty);
        let a = c.alpha_color.get(&i).unwrap_or(&empty);
        if z.len() != 1 || a.len() != 2 {
            let all: Vec<&str> = z.iter().chain(a).copied().collect();
            return Ok(CheckReport::fail(
                NAME,
                inst,
                format!("(I) fails for colour {i}: {} z, {} α", z.len(), a.len()),
                cx(&all, &[]),
            ));
        }
    }
    for key @ (i, j) in out.pairs() {
        let r = c.r.get(&key).unwrap_or(&empty);
        let a = c.alpha_pair.get(&key).unwrap_or(&empty);
        if r.len() != 1 || a.len() != 2 {
            let all: Vec<&str> = r.iter().chain(a).copied().collect();
            return Ok(CheckReport::fail(
                NAME,
                inst,
                format!(
                    "(II) fails for pair ({i},{j}): {} r, {} α",
                    r.len(),
                    a.len()
                ),
                cx(&all, &[]),
            ));
        }
    }
    if !c.beta {
        return Ok(CheckReport::fail(
            NAME,
            inst,
            "(III) fails: apex missing",
            cx(&[&out.beta], &[]),
        ));
    }
    Ok(CheckReport::pass(NAME, inst, ""))
}

/// Every selected `r^{(i,j)}_{t,t'}` agrees with the selected `z^i_s` and
/// `z^j_{s'}`: `s = t` and `s' = t'`.
pub fn check_index_agreement(out: &ReductionOutput, f: &ForestWitness) -> Result<CheckReport> {
    const NAME: &str = "index_agreement";
    if !check_forest_shape(out, f)?.passed() {
        return Err(Error::InvalidParameter(
            "set does not have the forest shape".into(),
        ));
    }
    let inst = describe(&out.instance);
    let mut z_index = BTreeMap::new();
    let mut rs = Vec::new();
    for v in &f.vertices {
        match out.class_of(v) {
            Some(VertexClass::Z { i, s }) => {
                z_index.insert(i, (s, v.as_str()));
            }
            Some(VertexClass::R { i, j, s, t }) => rs.push((i, j, s, t, v.as_str())),
            _ => {}
        }
    }
    for (i, j, s, t, rv) in rs {
        for (color, index) in [(i, s), (j, t)] {
            let (h, zv) = z_index[&color];
            if h != index {
                let mut vertices = vec![zv, rv];
                let mut edges = Vec::new();
                if f.contains(&out.beta) {
                    vertices.push(&out.beta);
                    edges.extend([(zv, out.beta.as_str()), (rv, out.beta.as_str())]);
                }
                if adjacent(out, zv, rv)? {
                    edges.push((zv, rv));
                }
                return Ok(CheckReport::fail(
                    NAME,
                    inst,
                    format!("`{rv}` disagrees with `{zv}`"),
                    cx(&vertices, &edges),
                ));
            }
        }
    }
    Ok(CheckReport::pass(NAME, inst, ""))
}

/// `I ∪ A ∪ {beta}` for the clique with indices `h` (1-based, one per
/// colour): the z-vertices `z^i_{h_i}`, the r-vertices `r^{(i,j)}_{h_i,h_j}`,
/// all α-vertices and the apex.
pub fn forward_forest(out: &ReductionOutput, h: &[usize]) -> Result<ForestWitness> {
    if h.len() != out.k || h.iter().any(|&s| s == 0 || s > out.p) {
        return Err(Error::InvalidParameter(format!("bad clique indices {h:?}")));
    }
    let mut vertices: Vec<String> = (1..=out.k).map(|i| names::z(i, h[i - 1])).collect();
    for (i, j) in out.pairs() {
        let rv = names::r(i, j, h[i - 1], h[j - 1]);
        if out.class_of(&rv).is_none() {
            return Err(Error::InvalidParameter(format!(
                "indices {h:?} do not form a clique: `{rv}` does not exist"
            )));
        }
        vertices.push(rv);
    }
    vertices.extend(out.alpha_set().into_iter().map(str::to_owned));
    vertices.push(out.beta.clone());
    Ok(ForestWitness { vertices })
}

/// The forward set for a known clique has `k′` vertices and induces a tree,
/// and `A ∪ I` induces disjoint 3-vertex paths with their middles in `I`.
pub fn check_forward_construction(out: &ReductionOutput, h: &[usize]) -> Result<CheckReport> {
    const NAME: &str = "forward_construction";
    let inst = describe(&out.instance);
    let f = forward_forest(out, h)?;
    let fail = |detail: String, vs: &[String]| {
        Ok(CheckReport::fail(NAME, inst.clone(), detail, cx(vs, &[])))
    };
    if f.len() != out.k_prime {
        return fail(
            format!("{} vertices, expected {}", f.len(), out.k_prime),
            &f.vertices,
        );
    }
    let ids = out.g_prime.ids(&f.vertices)?;
    if !out.g_prime.is_forest_by_ids(&ids) {
        return fail("not an induced forest".into(), &f.vertices);
    }
    if out.g_prime.component_count_by_ids(&ids) != 1 {
        return fail("induced forest is disconnected".into(), &f.vertices);
    }

    let without_beta: Vec<&String> = f.vertices.iter().filter(|v| **v != out.beta).collect();
    let sub = out
        .g_prime
        .induced_subgraph(without_beta.iter().map(|v| v.as_str()))?;
    let mut seen = vec![false; sub.order()];
    for start in 0..sub.order() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut n = 0;
        while n < comp.len() {
            for w in sub.neighbors(comp[n]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            n += 1;
        }
        let edges: usize = comp.iter().map(|&v| sub.degree(v)).sum::<usize>() / 2;
        let middle = comp.iter().find(|&&v| sub.degree(v) == 2);
        let middle_in_i =
            middle.is_some_and(|&m| !out.class_of(sub.name(m)).is_some_and(VertexClass::is_alpha));
        if comp.len() != 3 || edges != 2 || !middle_in_i {
            let names: Vec<String> = comp.iter().map(|&v| sub.name(v).to_owned()).collect();
            return fail(
                "component of A ∪ I is not a 3-vertex path centred in I".into(),
                &names,
            );
        }
    }
    Ok(CheckReport::pass(
        NAME,
        inst,
        format!("tree on {} vertices", f.len()),
    ))
}

/// Outcome of [`end_to_end_with_forest`].
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub report: CheckReport,
    pub clique: Option<Vec<String>>,
    pub forest: Option<ForestWitness>,
}

/// `solve_mcc` succeeds on the instance iff `solve_mif` finds a `k′`-forest
/// in the reduction output; on the yes side the clique extracted from the
/// forest must be valid. An exhausted node budget gives an undecided report.
pub fn end_to_end(inst: &MccInstance, node_limit: Option<u64>) -> Result<CheckReport> {
    let out = reduction::build_reduction(inst)?;
    Ok(end_to_end_with_forest(&out, node_limit)?.report)
}

pub fn end_to_end_with_forest(
    out: &ReductionOutput,
    node_limit: Option<u64>,
) -> Result<Equivalence> {
    const NAME: &str = "end_to_end";
    let inst = describe(&out.instance);
    let clique = oracles::solve_mcc(&out.instance).map(|w| w.assignment);
    let forest = match oracles::solve_mif(&out.g_prime, out.k_prime, node_limit)? {
        Outcome::Yes(f) => f,
        Outcome::No => {
            let report = match &clique {
                Some(c) => {
                    CheckReport::fail(NAME, inst, "clique exists but no k′-forest", cx(c, &[]))
                }
                None => CheckReport::pass(NAME, inst, "no clique, no k′-forest"),
            };
            return Ok(Equivalence {
                report,
                clique,
                forest: None,
            });
        }
        Outcome::Undecided => {
            let report = CheckReport {
                check: NAME.to_owned(),
                instance: inst,
                status: Status::Undecided,
                detail: format!("node budget exhausted; clique exists: {}", clique.is_some()),
                counterexample: None,
            };
            return Ok(Equivalence {
                report,
                clique,
                forest: None,
            });
        }
    };
    let report = if clique.is_none() {
        CheckReport::fail(
            NAME,
            inst,
            "k′-forest exists but no clique",
            cx(&forest.vertices, &[]),
        )
    } else {
        match oracles::extract_clique(out, &forest) {
            Ok(w) => CheckReport::pass(NAME, inst, format!("clique {:?}", w.assignment)),
            Err(e) => CheckReport::fail(NAME, inst, e.to_string(), cx(&forest.vertices, &[])),
        }
    };
    Ok(Equivalence {
        report,
        clique,
        forest: Some(forest),
    })
}

/// How much of the suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    /// Construction checks: observations on G′, width bound, representations.
    Structure,
    /// Adds the forward construction on planted instances and the forest
    /// checks on oracle-found forests of yes-instances.
    Claims,
    /// Adds the equivalence check on every instance.
    EndToEnd,
}

type OutputCheck = fn(&ReductionOutput) -> Result<CheckReport>;
type ForestCheck = fn(&ReductionOutput, &ForestWitness) -> Result<CheckReport>;

/// Runs the checks selected by `level` on one generated instance; reports
/// carry the spec's descriptor.
pub fn run_instance(
    spec: &InstanceSpec,
    level: Level,
    node_limit: Option<u64>,
) -> Vec<CheckReport> {
    let descriptor = spec.to_string();
    let built = spec
        .build()
        .and_then(|inst| Ok((inst, spec.planted_clique()?)));
    let reports = match built {
        Ok((inst, planted)) => run_checks(&inst, planted.as_deref(), level, node_limit),
        Err(e) => vec![build_failure(&descriptor, e)],
    };
    relabel(reports, &descriptor)
}

/// Runs the checks selected by `level` on a serialized instance.
pub fn run_serialized(
    inst: &MccInstance,
    level: Level,
    node_limit: Option<u64>,
) -> Vec<CheckReport> {
    run_checks(inst, None, level, node_limit)
}

fn build_failure(descriptor: &str, e: Error) -> CheckReport {
    CheckReport::fail(
        "build",
        descriptor.to_owned(),
        e.to_string(),
        Counterexample::default(),
    )
}

/// The forward construction runs on the planted clique when one is known,
/// otherwise on the clique found by `solve_mcc`.
fn run_checks(
    inst: &MccInstance,
    planted: Option<&[usize]>,
    level: Level,
    node_limit: Option<u64>,
) -> Vec<CheckReport> {
    let descriptor = describe(inst);
    let error = |check: &str, e: Error| {
        CheckReport::fail(
            check,
            descriptor.clone(),
            e.to_string(),
            Counterexample::default(),
        )
    };
    let out = match reduction::build_reduction(inst) {
        Ok(out) => out,
        Err(e) => return vec![build_failure(&descriptor, e)],
    };

    let mut reports = Vec::new();
    let structural: [(&str, OutputCheck); 4] = [
        (
            "adjacency_characterization",
            check_adjacency_characterization,
        ),
        ("structure", check_structure),
        ("width_bound", check_width_bound),
        ("representations", check_representations),
    ];
    for (name, check) in structural {
        reports.push(check(&out).unwrap_or_else(|e| error(name, e)));
    }
    if level == Level::Structure {
        return reports;
    }

    let clique = oracles::solve_mcc(inst);
    let indices = planted.map(<[usize]>::to_vec).or_else(|| {
        let pos = inst.positions();
        clique
            .as_ref()
            .map(|w| w.assignment.iter().map(|v| pos[v.as_str()].1).collect())
    });
    if let Some(h) = indices {
        reports.push(
            check_forward_construction(&out, &h)
                .unwrap_or_else(|e| error("forward_construction", e)),
        );
    }

    if clique.is_some() || level == Level::EndToEnd {
        match end_to_end_with_forest(&out, node_limit) {
            Ok(eq) => {
                if let Some(f) = &eq.forest {
                    let forest_checks: [(&str, ForestCheck); 3] = [
                        ("counting_bounds", check_counting_bounds),
                        ("forest_shape", check_forest_shape),
                        ("index_agreement", check_index_agreement),
                    ];
                    for (name, check) in forest_checks {
                        reports.push(check(&out, f).unwrap_or_else(|e| error(name, e)));
                    }
                }
                if level == Level::EndToEnd {
                    reports.push(eq.report);
                }
            }
            Err(e) => reports.push(error("end_to_end", e)),
        }
    }
    reports
}

fn relabel(reports: Vec<CheckReport>, descriptor: &str) -> Vec<CheckReport> {
    reports.into_iter().map(|r| r.on(descriptor)).collect()
}

/// Runs [`run_instance`] over `specs` in parallel on the current rayon pool;
/// reports come back in corpus order.
pub fn run_suite(
    specs: &[InstanceSpec],
    level: Level,
    node_limit: Option<u64>,
) -> Vec<CheckReport> {
    specs
        .par_iter()
        .map(|spec| run_instance(spec, level, node_limit))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Pass/fail/undecided counts per check, in check-name order.
pub fn summarize(reports: &[CheckReport]) -> BTreeMap<String, BTreeMap<Status, usize>> {
    let mut out: BTreeMap<String, BTreeMap<Status, usize>> = BTreeMap::new();
    for r in reports {
        *out.entry(r.check.clone())
            .or_default()
            .entry(r.status)
            .or_default() += 1;
    }
    out
}

/// Planted violations, each breaking exactly one of the structural checks.
pub mod planted {
    use super::*;

    /// Adds the edge `z[1]_s – r[1,j]_{s,t}` for the first r-vertex of
    /// colour 1. Returns the added pair.
    pub fn z_r_edge(out: &mut ReductionOutput) -> Result<(String, String)> {
        let (rv, s) = out
            .name_index
            .iter()
            .find_map(|(n, c)| match c {
                VertexClass::R { i: 1, s, .. } => Some((n.clone(), *s)),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParameter("no r-vertex of colour 1".into()))?;
        let zv = names::z(1, s);
        out.g_prime.add_edge(&zv, &rv)?;
        Ok((zv, rv))
    }

    /// Drops `x[i]_0e` from the model of `z[i]_1` and rebuilds G′, which
    /// disconnects it from `ax[i]`.
    pub fn z_model_without_epsilon(out: &mut ReductionOutput, i: usize) -> Result<String> {
        let zv = names::z(i, 1);
        let eps = names::eps_start(Strand::X, i);
        let model = out
            .representation
            .models
            .get_mut(&zv)
            .ok_or_else(|| Error::UnknownVertex(zv.clone()))?;
        model.remove(&eps);
        out.rebuild_target()?;
        Ok(zv)
    }

    /// Removes the edge between `beta` and `z[1]_1`.
    pub fn beta_edge_removed(out: &mut ReductionOutput) -> Result<String> {
        let zv = names::z(1, 1);
        out.g_prime.remove_edge(&out.beta.clone(), &zv)?;
        Ok(zv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::InstanceSpec;

    fn output(spec: InstanceSpec) -> ReductionOutput {
        reduction::build_reduction(&spec.build().unwrap()).unwrap()
    }

    fn full(k: usize, p: usize) -> ReductionOutput {
        output(InstanceSpec::Random {
            k,
            p,
            q: 1.0,
            seed: 0,
        })
    }

    #[test]
    fn structural_checks_pass_on_full_instances() {
        for (k, p) in [(2, 2), (2, 3), (3, 2)] {
            let out = full(k, p);
            assert!(check_adjacency_characterization(&out).unwrap().passed());
            assert!(check_structure(&out).unwrap().passed());
            assert!(check_beta_neighborhood(&out).unwrap().passed());
            assert!(check_width_bound(&out).unwrap().passed());
            assert!(check_representations(&out).unwrap().passed());
        }
    }

    #[test]
    fn planted_violations_fail() {
        let base = full(2, 3);

        let mut out = base.clone();
        let (zv, rv) = planted::z_r_edge(&mut out).unwrap();
        let report = check_adjacency_characterization(&out).unwrap();
        assert_eq!(report.status, Status::Fail);
        let cx = report.counterexample.unwrap();
        assert_eq!(cx.vertices, [zv.clone(), rv.clone()]);
        assert_eq!(cx.edges, [[zv, rv]]);

        let mut out = base.clone();
        planted::z_model_without_epsilon(&mut out, 1).unwrap();
        let report = check_structure(&out).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(report.detail.starts_with("item (i)"), "{}", report.detail);

        let mut out = base;
        planted::beta_edge_removed(&mut out).unwrap();
        assert_eq!(check_beta_neighborhood(&out).unwrap().status, Status::Fail);
        assert_eq!(check_structure(&out).unwrap().status, Status::Fail);
    }

    #[test]
    fn forward_construction_on_planted() {
        for seed in 0..5 {
            let spec = InstanceSpec::Planted {
                k: 3,
                p: 2,
                q: 0.3,
                seed,
            };
            let out = output(spec);
            let h = spec.planted_clique().unwrap().unwrap();
            let report = check_forward_construction(&out, &h).unwrap();
            assert!(report.passed(), "{report:?}");
            let f = forward_forest(&out, &h).unwrap();
            assert!(check_counting_bounds(&out, &f).unwrap().passed());
            assert!(check_forest_shape(&out, &f).unwrap().passed());
            assert!(check_index_agreement(&out, &f).unwrap().passed());
            let w = oracles::extract_clique(&out, &f).unwrap();
            let expected: Vec<String> = h
                .iter()
                .enumerate()
                .map(|(i, &s)| crate::generate::vertex_name(i + 1, s))
                .collect();
            assert_eq!(w.assignment, expected);
        }
    }

    #[test]
    fn forest_check_premises() {
        let out = full(2, 2);
        let triangle = ForestWitness {
            vertices: vec!["ax[1]".into(), "z[1]_1".into(), "z[1]_2".into()],
        };
        assert!(check_counting_bounds(&out, &triangle).is_err());
        assert!(check_forest_shape(&out, &triangle).is_err());

        // right size, wrong shape
        let mut wrong = forward_forest(&out, &[1, 1]).unwrap();
        wrong.vertices.retain(|v| v != "beta");
        wrong.vertices.push("z[1]_2".into());
        assert_eq!(
            check_forest_shape(&out, &wrong).unwrap().status,
            Status::Fail
        );
        assert!(check_index_agreement(&out, &wrong).is_err());

        // right shape, mismatched indices
        let mut mixed = forward_forest(&out, &[1, 1]).unwrap();
        for v in &mut mixed.vertices {
            if v == "z[1]_1" {
                *v = "z[1]_2".into();
            }
        }
        let report = check_index_agreement(&out, &mixed).unwrap();
        assert_eq!(report.status, Status::Fail);
        assert!(!out.g_prime.is_forest(&mixed.vertices).unwrap());
    }

    #[test]
    fn end_to_end_small() {
        let yes = InstanceSpec::Random {
            k: 2,
            p: 2,
            q: 1.0,
            seed: 0,
        }
        .build()
        .unwrap();
        let r = end_to_end(&yes, None).unwrap();
        assert!(r.passed(), "{r:?}");
        let no = InstanceSpec::Random {
            k: 2,
            p: 2,
            q: 0.0,
            seed: 0,
        }
        .build()
        .unwrap();
        let r = end_to_end(&no, None).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.detail, "no clique, no k′-forest");
        let hard = InstanceSpec::ForcedNo {
            k: 3,
            p: 2,
            seed: 1,
        }
        .build()
        .unwrap();
        assert_eq!(
            end_to_end(&hard, Some(1)).unwrap().status,
            Status::Undecided
        );
    }

    #[test]
    fn suite_levels() {
        let specs = crate::generate::corpus(3, 2, 2, 2);
        let structure = run_suite(&specs, Level::Structure, None);
        assert_eq!(structure.len(), specs.len() * 4);
        let full = run_suite(&specs, Level::EndToEnd, None);
        assert!(full.iter().all(CheckReport::passed), "{full:?}");
        assert_eq!(summarize(&full)["end_to_end"][&Status::Pass], specs.len());
        assert!(full
            .iter()
            .all(|r| r.instance.parse::<InstanceSpec>().is_ok()));
    }

    #[test]
    fn report_json() {
        let out = full(2, 2);
        let r = check_structure(&out).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(
            r#"{"check":"structure","instance":"instance(k=2,p=2,m=4)","status":"pass""#
        ));
        assert_eq!(serde_json::from_str::<CheckReport>(&text).unwrap(), r);
    }
}
