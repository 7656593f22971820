//! Exact solvers: Multicolored Clique by pruned enumeration, Maximum Induced
//! Forest by branch and bound, Feedback Vertex Set through the complement
//! identity, and clique extraction from a target-size forest.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{MccInstance, ReductionOutput, VertexClass};

/// Default branch-and-bound node limit.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// Result of an exact search that may run out of budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Outcome<T> {
    Yes(T),
    No,
    Undecided,
}

impl<T> Outcome<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Outcome::Undecided)
    }

    /// `Some(answer)` when decided.
    pub fn decision(&self) -> Option<bool> {
        match self {
            Outcome::Yes(_) => Some(true),
            Outcome::No => Some(false),
            Outcome::Undecided => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Yes(t) => Outcome::Yes(f(t)),
            Outcome::No => Outcome::No,
            Outcome::Undecided => Outcome::Undecided,
        }
    }

    pub fn witness(&self) -> Option<&T> {
        match self {
            Outcome::Yes(t) => Some(t),
            _ => None,
        }
    }
}

/// One vertex per part, `assignment[i]` taken from part `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub assignment: Vec<String>,
}

impl CliqueWitness {
    /// True iff the assignment picks one vertex per part and is a clique.
    pub fn is_valid_for(&self, inst: &MccInstance) -> bool {
        let g = inst.graph();
        self.assignment.len() == inst.k()
            && self
                .assignment
                .iter()
                .zip(inst.parts())
                .all(|(v, part)| part.contains(v))
            && self.assignment.iter().enumerate().all(|(a, u)| {
                self.assignment[a + 1..]
                    .iter()
                    .all(|v| g.adjacent(u, v).unwrap_or(false))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestWitness {
    pub vertices: Vec<String>,
}

impl ForestWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }
}

/// Exhaustive search over part-respecting tuples, extending a partial
/// clique part by part. Returns the lexicographically first witness.
pub fn solve_mcc(inst: &MccInstance) -> Option<CliqueWitness> {
    let g = inst.graph();
    let parts: Vec<Vec<usize>> = inst
        .parts()
        .iter()
        .map(|part| part.iter().map(|v| g.id(v).expect("part vertex")).collect())
        .collect();
    let mut chosen = Vec::with_capacity(parts.len());
    if extend_clique(g, &parts, &mut chosen) {
        Some(CliqueWitness {
            assignment: chosen.iter().map(|&v| g.name(v).to_owned()).collect(),
        })
    } else {
        None
    }
}

fn extend_clique(g: &Graph, parts: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
    let Some(part) = parts.get(chosen.len()) else {
        return true;
    };
    for &v in part {
        if chosen.iter().all(|&u| g.has_edge(u, v)) {
            chosen.push(v);
            if extend_clique(g, parts, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Finds an induced forest on exactly `size` vertices, or proves there is
/// none. `node_limit` bounds the number of search nodes; running out gives
/// [`Outcome::Undecided`].
///
/// Branches on the lowest-index undecided vertex, include first. Selected
/// vertices are tracked with union-find; an undecided vertex with two
/// selected neighbours in one component is dropped. The bound is the
/// selection size plus a greedy clique cover of the remaining candidates,
/// each clique counting at most 2, since a forest meets a clique in at most
/// two vertices.
pub fn solve_mif(
    g: &Graph,
    size: usize,
    node_limit: Option<u64>,
) -> Result<Outcome<ForestWitness>> {
    let n = g.order();
    if size > n {
        return Err(Error::InvalidParameter(format!(
            "forest size {size} exceeds vertex count {n}"
        )));
    }
    let mut adj = vec![BitSet::new(n); n];
    for (u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut search = ForestSearch {
        adj,
        target: size,
        nodes: 0,
        limit: node_limit.unwrap_or(u64::MAX),
        chosen: Vec::with_capacity(size),
        chosen_mask: BitSet::new(n),
    };
    let mut open = BitSet::new(n);
    for v in 0..n {
        open.insert(v);
    }
    Ok(match search.run(DisjointSets::new(n), open) {
        Step::Found => Outcome::Yes(ForestWitness {
            vertices: search
                .chosen
                .iter()
                .map(|&v| g.name(v).to_owned())
                .collect(),
        }),
        Step::Exhausted => Outcome::No,
        Step::OutOfBudget => Outcome::Undecided,
    })
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct ForestSearch {
    adj: Vec<BitSet>,
    target: usize,
    nodes: u64,
    limit: u64,
    chosen: Vec<usize>,
    chosen_mask: BitSet,
}

impl ForestSearch {
    fn run(&mut self, mut sets: DisjointSets, mut open: BitSet) -> Step {
        if self.chosen.len() == self.target {
            return Step::Found;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Step::OutOfBudget;
        }

        let candidates: Vec<usize> = open.iter().collect();
        for v in candidates {
            if self.closes_cycle(&mut sets, v) {
                open.remove(v);
            }
        }
        if self.chosen.len() + self.cover_bound(&open) < self.target {
            return Step::Exhausted;
        }
        let Some(v) = open.first() else {
            return Step::Exhausted;
        };
        open.remove(v);

        let mut with_v = sets.clone();
        for u in self.adj[v].iter() {
            if self.chosen_mask.contains(u) {
                with_v.union(u, v);
            }
        }
        self.chosen.push(v);
        self.chosen_mask.insert(v);
        match self.run(with_v, open.clone()) {
            Step::Exhausted => {}
            done => return done,
        }
        self.chosen.pop();
        self.chosen_mask.remove(v);

        self.run(sets, open)
    }

    /// True iff two selected neighbours of `v` share a component.
    fn closes_cycle(&self, sets: &mut DisjointSets, v: usize) -> bool {
        let mut roots: Vec<usize> = Vec::new();
        for u in self.adj[v].iter() {
            if self.chosen_mask.contains(u) {
                let r = sets.find(u);
                if roots.contains(&r) {
                    return true;
                }
                roots.push(r);
            }
        }
        false
    }

    fn cover_bound(&self, open: &BitSet) -> usize {
        let mut cliques: Vec<(BitSet, usize)> = Vec::new();
        for v in open.iter() {
            let slot = cliques.iter_mut().find(|(members, _)| {
                let mut outside = members.clone();
                outside.difference_with(&self.adj[v]);
                outside.is_empty()
            });
            match slot {
                Some((members, count)) => {
                    members.insert(v);
                    *count += 1;
                }
                None => {
                    let mut members = BitSet::new(self.adj.len());
                    members.insert(v);
                    cliques.push((members, 1));
                }
            }
        }
        cliques.iter().map(|&(_, c)| c.min(2)).sum()
    }
}

/// A vertex set of exactly `budget` vertices whose removal leaves a forest,
/// obtained as the complement of an induced forest on `n - budget` vertices.
pub fn solve_fvs(
    g: &Graph,
    budget: usize,
    node_limit: Option<u64>,
) -> Result<Outcome<Vec<String>>> {
    let n = g.order();
    if budget > n {
        return Err(Error::InvalidParameter(format!(
            "budget {budget} exceeds vertex count {n}"
        )));
    }
    Ok(solve_mif(g, n - budget, node_limit)?.map(|forest| {
        g.names()
            .iter()
            .filter(|v| !forest.contains(v))
            .cloned()
            .collect()
    }))
}

/// Reads the clique off a `k′`-vertex induced forest of the target graph:
/// the unique `z[i]_s` of each colour names `v^i_s`.
pub fn extract_clique(out: &ReductionOutput, f: &ForestWitness) -> Result<CliqueWitness> {
    let violation = |msg: String| Err(Error::ContractViolation(msg));
    if f.len() != out.k_prime {
        return violation(format!(
            "forest has {} vertices, expected {}",
            f.len(),
            out.k_prime
        ));
    }
    if !out.g_prime.is_forest(&f.vertices)? {
        return violation("vertex set does not induce a forest".into());
    }
    let mut picks = vec![Vec::new(); out.k];
    let mut pair_picks = 0;
    for v in &f.vertices {
        match out.class_of(v) {
            Some(VertexClass::Z { i, s }) => picks[i - 1].push(s),
            Some(VertexClass::R { .. }) => pair_picks += 1,
            Some(_) => {}
            None => return violation(format!("`{v}` is not a vertex of the target graph")),
        }
    }
    if !f.contains(&out.beta) {
        return violation("forest misses the apex".into());
    }
    if pair_picks != out.pairs().len() {
        return violation(format!(
            "forest has {pair_picks} r-vertices, expected one per pair"
        ));
    }
    let mut assignment = Vec::with_capacity(out.k);
    for (i, s) in picks.iter().enumerate() {
        let [s] = s.as_slice() else {
            return violation(format!("colour {} has {} z-vertices", i + 1, s.len()));
        };
        assignment.push(out.instance.vertex(i + 1, *s).to_owned());
    }
    let witness = CliqueWitness { assignment };
    if !witness.is_valid_for(&out.instance) {
        return violation(format!(
            "extracted {:?} is not a clique",
            witness.assignment
        ));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vs: &[&str], es: &[(&str, &str)]) -> Graph {
        Graph::from_edges(vs.iter().copied(), es.iter().copied()).unwrap()
    }

    fn triangle() -> Graph {
        graph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
    }

    #[test]
    fn mcc_small() {
        let g = graph(&["a", "b"], &[("a", "b")]);
        let inst = MccInstance::new(g, vec![vec!["a".into()], vec!["b".into()]]).unwrap();
        assert_eq!(solve_mcc(&inst).unwrap().assignment, ["a", "b"]);

        let g = graph(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let inst = MccInstance::new(
            g,
            vec![vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]],
        )
        .unwrap();
        assert!(solve_mcc(&inst).is_none());
    }

    #[test]
    fn mif_on_triangle() {
        let t = triangle();
        let two = solve_mif(&t, 2, None).unwrap();
        assert_eq!(two.witness().unwrap().vertices, ["a", "b"]);
        assert_eq!(solve_mif(&t, 3, None).unwrap(), Outcome::No);
        assert_eq!(solve_mif(&t, 0, None).unwrap().witness().unwrap().len(), 0);
        assert!(solve_mif(&t, 4, None).is_err());
    }

    #[test]
    fn fvs_small() {
        let t = triangle();
        assert_eq!(solve_fvs(&t, 1, None).unwrap().witness().unwrap().len(), 1);
        assert_eq!(solve_fvs(&t, 0, None).unwrap(), Outcome::No);
        let path = graph(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert_eq!(solve_fvs(&path, 0, None).unwrap(), Outcome::Yes(vec![]));
        assert!(solve_fvs(&path, 5, None).is_err());
    }

    #[test]
    fn budget_exhaustion_is_undecided() {
        // K5 has no induced forest on 3 vertices, but proving it needs more
        // than one node
        let names = ["a", "b", "c", "d", "e"];
        let mut g = graph(&names, &[]);
        for (i, u) in names.iter().enumerate() {
            for v in &names[i + 1..] {
                g.add_edge(u, v).unwrap();
            }
        }
        assert_eq!(solve_mif(&g, 3, Some(1_000)).unwrap(), Outcome::No);
        let c5 = graph(
            &names,
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")],
        );
        assert_eq!(solve_mif(&c5, 5, Some(1)).unwrap(), Outcome::Undecided);
        assert_eq!(solve_mif(&c5, 5, None).unwrap(), Outcome::No);
        assert!(solve_mif(&c5, 4, Some(100)).unwrap().is_yes());
    }

    #[test]
    fn outcome_json() {
        let yes: Outcome<Vec<String>> = Outcome::Yes(vec!["a".into()]);
        assert_eq!(
            serde_json::to_string(&yes).unwrap(),
            r#"{"status":"yes","witness":["a"]}"#
        );
        assert_eq!(
            serde_json::to_string(&Outcome::<()>::No).unwrap(),
            r#"{"status":"no"}"#
        );
    }
}
