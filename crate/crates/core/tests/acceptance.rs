//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{multicolored_clique_exists, Plain};
use mimred_core::generate::{corpus, random_graph, InstanceSpec};
use mimred_core::oracles::{self, extract_clique, solve_fvs, solve_mcc, solve_mif, ForestWitness};
use mimred_core::reduction::{binomial2, build_h, build_k, build_reduction, target_forest_size};
use mimred_core::verification::{self, planted, Status};
use mimred_core::{hgraph, widths, Graph, MccInstance, Outcome, ReductionOutput};
use rayon::prelude::*;

const SEED: u64 = 2024;
const PER_CELL: usize = 20;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn report(n: usize, title: &str, elapsed: Duration, v: &Verdict) -> bool {
    println!(
        "criterion {n} {} {title}: {} [{:.2}s]",
        if v.ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64()
    );
    v.ok
}

fn cardinalities() -> Verdict {
    for k in 2..=6 {
        let h = build_h(k).unwrap();
        let kk = build_k(k).unwrap();
        let (nh, mh) = (h.node_count(), h.edge_count());
        let expected = (nh == k * (k + 1) / 2)
            && (mh == 2 * k * (k - 1))
            && (kk.node_count() == 3 * nh)
            && (kk.edge_count() == mh + 2 * nh);
        if !expected {
            return verdict(
                false,
                format!(
                    "k={k}: |H|={nh} ‖H‖={mh} |K|={} ‖K‖={}",
                    kk.node_count(),
                    kk.edge_count()
                ),
            );
        }
    }
    verdict(true, "k=2..6 exact")
}

/// The corpus: 20 random instances per (k, p) ∈ {2,3}², three planted and
/// one forced-no instance per cell, plus the two extreme k=2, p=2 instances.
fn instances() -> Vec<InstanceSpec> {
    let mut specs = corpus(SEED, 3, 3, PER_CELL);
    specs.push(InstanceSpec::Random {
        k: 2,
        p: 2,
        q: 1.0,
        seed: 0,
    });
    specs.push(InstanceSpec::Random {
        k: 2,
        p: 2,
        q: 0.0,
        seed: 0,
    });
    specs
}

struct Solved {
    spec: InstanceSpec,
    out: ReductionOutput,
    clique: bool,
    forest: Outcome<ForestWitness>,
}

fn width_bound(solved: &[Solved]) -> Verdict {
    let mut worst = [[0usize; 4]; 4];
    for s in solved
        .iter()
        .filter(|s| matches!(s.spec, InstanceSpec::Random { .. }))
    {
        let (k, p) = (s.out.k, s.out.p);
        let width = widths::mimw_of_order(&s.out.g_prime, &s.out.order).unwrap();
        if width > 4 * k * (k - 1) + 1 {
            return verdict(false, format!("{}: width {width}", s.spec));
        }
        worst[k][p] = worst[k][p].max(width);
    }
    verdict(
        true,
        format!(
            "max width k=2: {}/{} (bound 9), k=3: {}/{} (bound 25) for p=2/3",
            worst[2][2], worst[2][3], worst[3][2], worst[3][3]
        ),
    )
}

/// Independent confirmation of a clique witness: `solve_mcc` on the
/// instance restricted to the witness, one vertex per part.
fn confirmed_by_mcc(inst: &MccInstance, assignment: &[String]) -> bool {
    let Ok(sub) = inst.graph().induced_subgraph(assignment) else {
        return false;
    };
    let parts = assignment.iter().map(|v| vec![v.clone()]).collect();
    MccInstance::new(sub, parts).is_ok_and(|i| solve_mcc(&i).is_some())
}

fn equivalence(solved: &[Solved]) -> Verdict {
    let total = solved.len();
    let mut decided = 0;
    let mut yes = 0;
    for s in solved {
        let Some(mif) = s.forest.decision() else {
            continue;
        };
        decided += 1;
        if mif != s.clique {
            return verdict(
                false,
                format!("{}: clique {} but forest {mif}", s.spec, s.clique),
            );
        }
        if let Outcome::Yes(f) = &s.forest {
            yes += 1;
            match extract_clique(&s.out, f) {
                Ok(w) if confirmed_by_mcc(&s.out.instance, &w.assignment) => {}
                other => return verdict(false, format!("{}: extraction {other:?}", s.spec)),
            }
        }
    }
    let ok = decided * 10 >= total * 9;
    verdict(
        ok,
        format!(
            "{decided}/{total} decided ({yes} yes, {} no), all equivalent",
            decided - yes
        ),
    )
}

fn forward_construction() -> Verdict {
    let mut count = 0;
    for k in 2..=3 {
        for p in 2..=3 {
            for seed in 0..10 {
                let q = [0.3, 0.6, 0.9][seed as usize % 3];
                let spec = InstanceSpec::Planted { k, p, q, seed };
                let out = build_reduction(&spec.build().unwrap()).unwrap();
                let h = spec.planted_clique().unwrap().unwrap();
                let f = verification::forward_forest(&out, &h).unwrap();
                let report = verification::check_forward_construction(&out, &h).unwrap();
                if f.len() != target_forest_size(k) || !report.passed() {
                    return verdict(false, format!("{spec}: {report:?}"));
                }
                count += 1;
            }
        }
    }
    verdict(
        true,
        format!("{count} planted cliques give trees of size k′ with P3 census"),
    )
}

fn structural(solved: &[Solved]) -> Verdict {
    for s in solved {
        for report in [
            verification::check_adjacency_characterization(&s.out).unwrap(),
            verification::check_structure(&s.out).unwrap(),
            verification::check_beta_neighborhood(&s.out).unwrap(),
        ] {
            if !report.passed() {
                return verdict(false, format!("{}: {report:?}", s.spec));
            }
        }
        let expected_alpha = 2 * s.out.k + 2 * binomial2(s.out.k);
        if s.out.alpha_set().len() != expected_alpha {
            return verdict(
                false,
                format!("{}: |A| = {}", s.spec, s.out.alpha_set().len()),
            );
        }
    }

    let base = build_reduction(
        &InstanceSpec::Random {
            k: 2,
            p: 3,
            q: 1.0,
            seed: 0,
        }
        .build()
        .unwrap(),
    )
    .unwrap();
    let mut planted_failures = Vec::new();

    let mut out = base.clone();
    let (z, r) = planted::z_r_edge(&mut out).unwrap();
    let rep = verification::check_adjacency_characterization(&out).unwrap();
    let caught = rep.status == Status::Fail
        && rep
            .counterexample
            .as_ref()
            .is_some_and(|c| c.vertices == [z.clone(), r.clone()]);
    planted_failures.push(("adjacency", caught));

    let mut out = base.clone();
    planted::z_model_without_epsilon(&mut out, 1).unwrap();
    let rep = verification::check_structure(&out).unwrap();
    planted_failures.push((
        "structure",
        rep.status == Status::Fail && rep.detail.starts_with("item (i)"),
    ));

    let mut out = base;
    planted::beta_edge_removed(&mut out).unwrap();
    let rep = verification::check_beta_neighborhood(&out).unwrap();
    planted_failures.push(("beta", rep.status == Status::Fail));

    if let Some((name, _)) = planted_failures.iter().find(|(_, caught)| !caught) {
        return verdict(false, format!("planted {name} violation not detected"));
    }
    verdict(
        true,
        format!(
            "{} outputs pass; 3/3 planted violations caught",
            solved.len()
        ),
    )
}

fn forest_claims(solved: &[Solved]) -> Verdict {
    let mut checked = 0;
    for s in solved {
        let Outcome::Yes(f) = &s.forest else { continue };
        let bounds = verification::check_counting_bounds(&s.out, f).unwrap();
        let shape = verification::check_forest_shape(&s.out, f).unwrap();
        let index = verification::check_index_agreement(&s.out, f).unwrap();
        if !(bounds.passed() && shape.passed() && index.passed()) {
            return verdict(false, format!("{}: {bounds:?} {shape:?} {index:?}", s.spec));
        }
        let g = s.out.instance.graph();
        let clique: Vec<String> = f
            .vertices
            .iter()
            .filter_map(|v| match s.out.class_of(v) {
                Some(mimred_core::VertexClass::Z { i, s: h }) => {
                    Some(s.out.instance.vertex(i, h).to_owned())
                }
                _ => None,
            })
            .collect();
        let ids = g.ids(&clique).unwrap();
        if !Plain::of(g).is_clique(&ids) {
            return verdict(
                false,
                format!("{}: z-indices {clique:?} not a clique", s.spec),
            );
        }
        checked += 1;
    }
    verdict(checked > 0, format!("{checked} oracle-found k′-forests"))
}

fn oracle_soundness() -> Verdict {
    let graphs: Vec<Graph> = (0..200u64)
        .map(|seed| {
            let n = 1 + (seed as usize * 7 + 3) % 9;
            let q = [0.2, 0.35, 0.5, 0.65, 0.8][seed as usize % 5];
            random_graph(n, q, 9000 + seed).unwrap()
        })
        .collect();
    let bad = graphs.par_iter().enumerate().find_map_any(|(x, g)| {
        let plain = Plain::of(g);
        let best = plain.max_forest();
        let n = g.order();
        for size in 0..=n {
            let mif = solve_mif(g, size, None).unwrap();
            let fvs = solve_fvs(g, n - size, None).unwrap();
            let witness_ok = mif
                .witness()
                .is_none_or(|f| f.len() == size && g.is_forest(&f.vertices).unwrap());
            if mif.is_yes() != (size <= best) || fvs.is_yes() != mif.is_yes() || !witness_ok {
                return Some(format!("graph {x} (n={n}), size {size}"));
            }
        }
        None
    });
    match bad {
        Some(d) => verdict(false, d),
        None => verdict(
            true,
            "200 graphs, every size, MIF and FVS agree with enumeration",
        ),
    }
}

fn k_representation() -> Verdict {
    let mut count = 0;
    for k in 2..=3 {
        let mut specs = vec![InstanceSpec::Random {
            k,
            p: 2,
            q: 1.0,
            seed: 0,
        }];
        specs.extend((0..5).map(|seed| InstanceSpec::Random {
            k,
            p: 2,
            q: 0.6,
            seed,
        }));
        for spec in specs {
            let out = build_reduction(&spec.build().unwrap()).unwrap();
            let over_k = out.k_intersection_graph().unwrap();
            let same_vertices = {
                let mut a = over_k.names().to_vec();
                let mut b = out.g_prime.names().to_vec();
                a.sort();
                b.sort();
                a == b
            };
            let mut ea = over_k.edge_names();
            let mut eb = out.g_prime.edge_names();
            let norm = |e: &mut Vec<(String, String)>| {
                for (u, v) in e.iter_mut() {
                    if u > v {
                        std::mem::swap(u, v);
                    }
                }
                e.sort();
            };
            norm(&mut ea);
            norm(&mut eb);
            let valid = hgraph::validate_representation(&out.representation).is_empty()
                && hgraph::validate_representation(&out.k_representation).is_empty();
            if !(same_vertices && ea == eb && valid) {
                return verdict(
                    false,
                    format!("{spec}: vertices {same_vertices}, valid {valid}"),
                );
            }
            count += 1;
        }
    }
    verdict(
        true,
        format!("{count} instances, edge sets identical, all models connected"),
    )
}

fn main() -> ExitCode {
    let mut all = true;

    let t = Instant::now();
    let v = cardinalities();
    all &= report(1, "cardinality formulas", t.elapsed(), &v);

    let t = Instant::now();
    let solved: Vec<Solved> = instances()
        .into_par_iter()
        .map(|spec| {
            let inst = spec.build().unwrap();
            let out = build_reduction(&inst).unwrap();
            let clique = multicolored_clique_exists(&inst);
            assert_eq!(
                clique,
                solve_mcc(&inst).is_some(),
                "{spec}: clique oracles disagree"
            );
            let forest =
                solve_mif(&out.g_prime, out.k_prime, Some(oracles::DEFAULT_NODE_LIMIT)).unwrap();
            Solved {
                spec,
                out,
                clique,
                forest,
            }
        })
        .collect();
    let solve_time = t.elapsed();

    let t = Instant::now();
    let v = width_bound(&solved);
    all &= report(2, "width bound", t.elapsed(), &v);

    let v = equivalence(&solved);
    all &= report(3, "end-to-end equivalence", solve_time, &v);

    let t = Instant::now();
    let v = forward_construction();
    all &= report(4, "forward construction", t.elapsed(), &v);

    let t = Instant::now();
    let v = structural(&solved);
    all &= report(5, "structural observations", t.elapsed(), &v);

    let t = Instant::now();
    let v = forest_claims(&solved);
    all &= report(6, "forest shape and index agreement", t.elapsed(), &v);

    let t = Instant::now();
    let v = oracle_soundness();
    all &= report(7, "oracle soundness", t.elapsed(), &v);

    let t = Instant::now();
    let v = k_representation();
    all &= report(8, "K-representation equivalence", t.elapsed(), &v);

    if all {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
