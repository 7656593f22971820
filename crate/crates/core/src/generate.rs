//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, which yields
//! the same stream on every platform. An [`InstanceSpec`] names a generated
//! instance completely; its text form (`random(k=2,p=3,q=0.6,seed=17)`) is
//! the instance descriptor carried by verification reports and parses back
//! with [`str::parse`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::MccInstance;

/// Edge probabilities used for random corpora.
pub const DENSITIES: [f64; 3] = [0.3, 0.6, 0.9];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Name of `v^i_s`.
pub fn vertex_name(i: usize, s: usize) -> String {
    format!("v[{i}]_{s}")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InstanceSpec {
    /// Every cross-part pair is an edge with probability `q`.
    Random {
        k: usize,
        p: usize,
        q: f64,
        seed: u64,
    },
    /// A random instance plus the edges of a clique on randomly chosen
    /// indices.
    Planted {
        k: usize,
        p: usize,
        q: f64,
        seed: u64,
    },
    /// All cross edges, then one random edge removed from every remaining
    /// multicolored clique.
    ForcedNo { k: usize, p: usize, seed: u64 },
}

impl InstanceSpec {
    pub fn k(&self) -> usize {
        match *self {
            InstanceSpec::Random { k, .. }
            | InstanceSpec::Planted { k, .. }
            | InstanceSpec::ForcedNo { k, .. } => k,
        }
    }

    pub fn p(&self) -> usize {
        match *self {
            InstanceSpec::Random { p, .. }
            | InstanceSpec::Planted { p, .. }
            | InstanceSpec::ForcedNo { p, .. } => p,
        }
    }

    pub fn build(&self) -> Result<MccInstance> {
        Ok(self.generate()?.0)
    }

    /// Indices `h_1..h_k` (1-based) of the planted clique, if any.
    pub fn planted_clique(&self) -> Result<Option<Vec<usize>>> {
        Ok(self.generate()?.1)
    }

    fn generate(&self) -> Result<(MccInstance, Option<Vec<usize>>)> {
        let (k, p) = (self.k(), self.p());
        if k < 2 || p < 1 {
            return Err(Error::InvalidParameter(format!(
                "need k >= 2 and p >= 1, got k={k}, p={p}"
            )));
        }
        match *self {
            InstanceSpec::Random { q, seed, .. } => {
                let mut rng = rng(seed);
                Ok((random_cross_edges(k, p, q, &mut rng)?, None))
            }
            InstanceSpec::Planted { q, seed, .. } => {
                let mut rng = rng(seed);
                let clique: Vec<usize> = (0..k).map(|_| rng.random_range(1..=p)).collect();
                let mut inst = random_cross_edges(k, p, q, &mut rng)?;
                let mut g = inst.graph().clone();
                for a in 0..k {
                    for b in a + 1..k {
                        g.add_edge(
                            &vertex_name(a + 1, clique[a]),
                            &vertex_name(b + 1, clique[b]),
                        )?;
                    }
                }
                inst = MccInstance::new(g, inst.parts().to_vec())?;
                Ok((inst, Some(clique)))
            }
            InstanceSpec::ForcedNo { seed, .. } => {
                let mut rng = rng(seed);
                Ok((forced_no(k, p, &mut rng)?, None))
            }
        }
    }
}

fn empty_instance(k: usize, p: usize) -> (Graph, Vec<Vec<String>>) {
    let parts: Vec<Vec<String>> = (1..=k)
        .map(|i| (1..=p).map(|s| vertex_name(i, s)).collect())
        .collect();
    let mut g = Graph::new();
    for v in parts.iter().flatten() {
        g.add_vertex(v.clone()).expect("fresh vertex");
    }
    (g, parts)
}

fn check_probability(q: f64) -> Result<()> {
    if (0.0..=1.0).contains(&q) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "edge probability {q} outside [0, 1]"
        )))
    }
}

fn random_cross_edges(k: usize, p: usize, q: f64, rng: &mut ChaCha8Rng) -> Result<MccInstance> {
    check_probability(q)?;
    let (mut g, parts) = empty_instance(k, p);
    for a in 0..k {
        for b in a + 1..k {
            for u in &parts[a] {
                for v in &parts[b] {
                    // one draw per pair, so the stream does not depend on q
                    if rng.random::<f64>() < q {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
    }
    MccInstance::new(g, parts)
}

fn forced_no(k: usize, p: usize, rng: &mut ChaCha8Rng) -> Result<MccInstance> {
    let (mut g, parts) = empty_instance(k, p);
    for a in 0..k {
        for b in a + 1..k {
            for u in &parts[a] {
                for v in &parts[b] {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    // walk all p^k tuples; break each one that is still a clique
    let mut tuple = vec![0usize; k];
    loop {
        let chosen: Vec<&str> = tuple
            .iter()
            .enumerate()
            .map(|(i, &s)| parts[i][s].as_str())
            .collect();
        let mut present = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if g.adjacent(chosen[a], chosen[b])? {
                    present.push((chosen[a], chosen[b]));
                }
            }
        }
        if present.len() == k * (k - 1) / 2 {
            let (u, v) = present[rng.random_range(0..present.len())];
            g.remove_edge(u, v)?;
        }
        let Some(pos) = (0..k).rev().find(|&i| tuple[i] + 1 < p) else {
            break;
        };
        tuple[pos] += 1;
        tuple[pos + 1..].fill(0);
    }
    MccInstance::new(g, parts)
}

/// Random graph on vertices `n0..n{n-1}`, each pair an edge with
/// probability `q`.
pub fn random_graph(n: usize, q: f64, seed: u64) -> Result<Graph> {
    check_probability(q)?;
    let mut rng = rng(seed);
    let mut g = Graph::new();
    for v in 0..n {
        g.add_vertex(format!("n{v}"))?;
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random::<f64>() < q {
                g.add_edge_by_index(a, b)?;
            }
        }
    }
    Ok(g)
}

/// The verification corpus: for every `2 ≤ k ≤ kmax` and `2 ≤ p ≤ pmax`,
/// `per_cell` random instances cycling through [`DENSITIES`], one planted
/// instance per density and one forced-no instance. Instance seeds are drawn
/// from `seed`.
pub fn corpus(seed: u64, kmax: usize, pmax: usize, per_cell: usize) -> Vec<InstanceSpec> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for k in 2..=kmax {
        for p in 2..=pmax {
            for n in 0..per_cell {
                let q = DENSITIES[n % DENSITIES.len()];
                out.push(InstanceSpec::Random {
                    k,
                    p,
                    q,
                    seed: rng.next_u64(),
                });
            }
            for q in DENSITIES {
                out.push(InstanceSpec::Planted {
                    k,
                    p,
                    q,
                    seed: rng.next_u64(),
                });
            }
            out.push(InstanceSpec::ForcedNo {
                k,
                p,
                seed: rng.next_u64(),
            });
        }
    }
    out
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Random { k, p, q, seed } => {
                write!(f, "random(k={k},p={p},q={q},seed={seed})")
            }
            InstanceSpec::Planted { k, p, q, seed } => {
                write!(f, "planted(k={k},p={p},q={q},seed={seed})")
            }
            InstanceSpec::ForcedNo { k, p, seed } => {
                write!(f, "forced_no(k={k},p={p},seed={seed})")
            }
        }
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed instance descriptor `{s}`"));
        let (family, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut k = None;
        let mut p = None;
        let mut q = None;
        let mut seed = None;
        for arg in args.split(',') {
            let (key, value) = arg.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "k" => k = Some(value.trim().parse().map_err(|_| bad())?),
                "p" => p = Some(value.trim().parse().map_err(|_| bad())?),
                "q" => q = Some(value.trim().parse().map_err(|_| bad())?),
                "seed" => seed = Some(value.trim().parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let (k, p, seed) = (
            k.ok_or_else(bad)?,
            p.ok_or_else(bad)?,
            seed.ok_or_else(bad)?,
        );
        match family {
            "random" => Ok(InstanceSpec::Random {
                k,
                p,
                q: q.ok_or_else(bad)?,
                seed,
            }),
            "planted" => Ok(InstanceSpec::Planted {
                k,
                p,
                q: q.ok_or_else(bad)?,
                seed,
            }),
            "forced_no" if q.is_none() => Ok(InstanceSpec::ForcedNo { k, p, seed }),
            _ => Err(bad()),
        }
    }
}
