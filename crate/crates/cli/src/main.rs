//! `mimred`: generate Multicolored Clique instances, reduce them to Maximum
//! Induced Forest, solve, evaluate widths, verify and export.
//!
//! Exit codes: 0 success or yes, 1 no (or a failed check), 2 usage or input
//! error, 3 undecided (solver budget exhausted).

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mimred_core::generate::InstanceSpec;
use mimred_core::verification::{self, Level, Status};
use mimred_core::{export, oracles, reduction, widths};
use mimred_core::{BranchDecomposition, Graph, LinearOrder, MccInstance, Outcome, ReductionOutput};

#[derive(Parser, Debug)]
#[command(name = "mimred", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded instance.
    Gen {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// Probability of each cross-part edge.
        #[arg(long, default_value_t = 0.6)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        /// Solve the instance and print yes/no.
        #[arg(long)]
        label: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Build the reduction bundle for an instance.
    Reduce {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exact mim-width of a linear order or branch decomposition.
    Mimw {
        /// Graph or reduction bundle.
        input: PathBuf,
        /// `{"order": [...]}`; defaults to the bundle's order or the
        /// graph's vertex listing.
        #[arg(long, conflicts_with = "decomposition")]
        order: Option<PathBuf>,
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Decide Multicolored Clique.
    SolveMcc { input: PathBuf },
    /// Find an induced forest on exactly `size` vertices.
    SolveMif {
        /// Graph or reduction bundle.
        input: PathBuf,
        /// Defaults to k′ for a bundle.
        #[arg(long)]
        size: Option<usize>,
        #[command(flatten)]
        limit: NodeLimit,
    },
    /// Find a feedback vertex set of exactly `budget` vertices.
    SolveFvs {
        input: PathBuf,
        #[arg(long)]
        budget: usize,
        #[command(flatten)]
        limit: NodeLimit,
    },
    /// Run the verification suite; JSON lines on stdout, summary on stderr.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::EndToEnd)]
        level: LevelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        /// Random instances per (k, p) cell.
        #[arg(long, default_value_t = 20)]
        per_cell: usize,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Replay a single instance descriptor such as
        /// `random(k=2,p=3,q=0.6,seed=17)`.
        #[arg(long, conflicts_with = "input")]
        instance: Option<String>,
        /// Check a serialized instance instead of a generated corpus.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        limit: NodeLimit,
    },
    /// Write DOT files for a graph, instance or reduction bundle.
    ExportDot {
        input: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
struct NodeLimit {
    /// Branch-and-bound node budget.
    #[arg(long = "node-limit", env = "MIMRED_BUDGET", default_value_t = oracles::DEFAULT_NODE_LIMIT)]
    nodes: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    Random,
    Planted,
    ForcedNo,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LevelArg {
    Structure,
    Claims,
    EndToEnd,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Structure => Level::Structure,
            LevelArg::Claims => Level::Claims,
            LevelArg::EndToEnd => Level::EndToEnd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Yes,
    No,
    Undecided,
}

impl From<Verdict> for ExitCode {
    fn from(v: Verdict) -> ExitCode {
        ExitCode::from(match v {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Undecided => 3,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => v.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

enum Input {
    Graph(Graph),
    Instance(MccInstance),
    Bundle(Box<ReductionOutput>),
}

fn read_input(path: &Path) -> anyhow::Result<Input> {
    if path.as_os_str().is_empty() {
        bail!("empty input path");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let ctx = || format!("decoding {}", path.display());
    Ok(if value.get("g_prime").is_some() {
        Input::Bundle(Box::new(serde_json::from_value(value).with_context(ctx)?))
    } else if value.get("parts").is_some() {
        Input::Instance(serde_json::from_value(value).with_context(ctx)?)
    } else if value.get("vertices").is_some() {
        Input::Graph(serde_json::from_value(value).with_context(ctx)?)
    } else {
        bail!(
            "{}: not a graph, instance or reduction bundle",
            path.display()
        )
    })
}

fn read_instance(path: &Path) -> anyhow::Result<MccInstance> {
    match read_input(path)? {
        Input::Instance(inst) => Ok(inst),
        Input::Bundle(out) => Ok(out.instance),
        Input::Graph(_) => bail!("{}: expected an instance, found a graph", path.display()),
    }
}

fn read_graph(path: &Path) -> anyhow::Result<(Graph, Option<Box<ReductionOutput>>)> {
    match read_input(path)? {
        Input::Graph(g) => Ok((g, None)),
        Input::Bundle(out) => Ok((out.g_prime.clone(), Some(out))),
        Input::Instance(_) => bail!("{}: expected a graph, found an instance", path.display()),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Pretty JSON to `out`, or to stdout.
fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn outcome_verdict<T>(o: &Outcome<T>) -> Verdict {
    match o {
        Outcome::Yes(_) => Verdict::Yes,
        Outcome::No => Verdict::No,
        Outcome::Undecided => Verdict::Undecided,
    }
}

fn run(command: Command) -> anyhow::Result<Verdict> {
    match command {
        Command::Gen {
            k,
            p,
            q,
            seed,
            family,
            label,
            out,
        } => {
            let spec = match family {
                Family::Random => InstanceSpec::Random { k, p, q, seed },
                Family::Planted => InstanceSpec::Planted { k, p, q, seed },
                Family::ForcedNo => InstanceSpec::ForcedNo { k, p, seed },
            };
            let inst = spec.build()?;
            emit(&inst, out.as_deref())?;
            eprintln!("{spec}");
            if label {
                let yes = oracles::solve_mcc(&inst).is_some();
                eprintln!("label: {}", if yes { "yes" } else { "no" });
            }
            Ok(Verdict::Yes)
        }
        Command::Reduce { input, out } => {
            let inst = read_instance(&input)?;
            let bundle = reduction::build_reduction(&inst)?;
            let width = widths::mimw_of_order(&bundle.g_prime, &bundle.order)?;
            let bound = 4 * bundle.k * (bundle.k - 1) + 1;
            emit(&bundle, out.as_deref())?;
            eprintln!(
                "k'={} |V(G')|={} |E(G')|={} mimw(order)={width} bound={bound} {}",
                bundle.k_prime,
                bundle.g_prime.order(),
                bundle.g_prime.size(),
                if width <= bound { "ok" } else { "EXCEEDED" }
            );
            Ok(if width <= bound {
                Verdict::Yes
            } else {
                Verdict::No
            })
        }
        Command::Mimw {
            input,
            order,
            decomposition,
        } => {
            let (g, bundle) = read_graph(&input)?;
            if let Some(path) = decomposition {
                let bd: BranchDecomposition = read_json(&path)?;
                let width = widths::mimw(&g, &bd)?;
                emit(&serde_json::json!({ "width": width }), None)?;
                return Ok(Verdict::Yes);
            }
            let order = match (order, bundle) {
                (Some(path), _) => read_json(&path)?,
                (None, Some(b)) => b.order,
                (None, None) => LinearOrder::new(g.names().iter().cloned()),
            };
            let profile = widths::cut_profile(&g, &order)?;
            emit(
                &serde_json::json!({
                    "width": profile.width(),
                    "prefix": profile.prefix,
                    "singleton": profile.singleton,
                }),
                None,
            )?;
            Ok(Verdict::Yes)
        }
        Command::SolveMcc { input } => {
            let inst = read_instance(&input)?;
            let witness = oracles::solve_mcc(&inst);
            emit(&witness.as_ref().map(|w| &w.assignment), None)?;
            Ok(if witness.is_some() {
                Verdict::Yes
            } else {
                Verdict::No
            })
        }
        Command::SolveMif { input, size, limit } => {
            let (g, bundle) = read_graph(&input)?;
            let size = match (size, &bundle) {
                (Some(s), _) => s,
                (None, Some(b)) => b.k_prime,
                (None, None) => bail!("--size is required for a plain graph"),
            };
            let outcome = oracles::solve_mif(&g, size, Some(limit.nodes))?;
            emit(&outcome.witness().map(|f| &f.vertices), None)?;
            if outcome == Outcome::Undecided {
                eprintln!("undecided: node budget {} exhausted", limit.nodes);
            }
            Ok(outcome_verdict(&outcome))
        }
        Command::SolveFvs {
            input,
            budget,
            limit,
        } => {
            let (g, _) = read_graph(&input)?;
            let outcome = oracles::solve_fvs(&g, budget, Some(limit.nodes))?;
            emit(&outcome.witness(), None)?;
            if outcome == Outcome::Undecided {
                eprintln!("undecided: node budget {} exhausted", limit.nodes);
            }
            Ok(outcome_verdict(&outcome))
        }
        Command::Verify {
            level,
            seed,
            kmax,
            pmax,
            per_cell,
            jobs,
            instance,
            input,
            limit,
        } => {
            if kmax < 2 || pmax < 2 {
                bail!("--kmax and --pmax must be at least 2");
            }
            let level = Level::from(level);
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            let reports = match (instance, input) {
                (Some(text), _) => {
                    let spec: InstanceSpec = text.parse()?;
                    pool.install(|| verification::run_suite(&[spec], level, Some(limit.nodes)))
                }
                (None, Some(path)) => {
                    let inst = read_instance(&path)?;
                    let label = path.display().to_string();
                    pool.install(|| verification::run_serialized(&inst, level, Some(limit.nodes)))
                        .into_iter()
                        .map(|r| r.on(label.clone()))
                        .collect()
                }
                (None, None) => {
                    let specs = mimred_core::generate::corpus(seed, kmax, pmax, per_cell);
                    pool.install(|| verification::run_suite(&specs, level, Some(limit.nodes)))
                }
            };
            let mut stdout = io::stdout().lock();
            for r in &reports {
                serde_json::to_writer(&mut stdout, r)?;
                writeln!(stdout)?;
            }
            let summary = verification::summarize(&reports);
            for (check, counts) in &summary {
                let n = |s| counts.get(&s).copied().unwrap_or(0);
                eprintln!(
                    "{check:<28} pass {:>4}  fail {:>4}  undecided {:>4}",
                    n(Status::Pass),
                    n(Status::Fail),
                    n(Status::Undecided)
                );
            }
            let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
            let undecided = reports
                .iter()
                .filter(|r| r.status == Status::Undecided)
                .count();
            eprintln!(
                "{} reports, {failed} failed, {undecided} undecided",
                reports.len()
            );
            Ok(if failed > 0 {
                Verdict::No
            } else if undecided > 0 {
                Verdict::Undecided
            } else {
                Verdict::Yes
            })
        }
        Command::ExportDot { input, out_dir } => {
            if out_dir.as_os_str().is_empty() {
                bail!("empty output directory");
            }
            let files: Vec<(&str, String)> = match read_input(&input)? {
                Input::Graph(g) => vec![("graph.dot", export::graph_dot(&g, "G"))],
                Input::Instance(inst) => {
                    vec![("instance.dot", export::graph_dot(inst.graph(), "G"))]
                }
                Input::Bundle(out) => vec![
                    ("g_prime.dot", export::target_dot(&out)),
                    ("h_sub.dot", export::subdivision_dot(&out)),
                    ("k.dot", export::k_pattern_dot(&out)),
                ],
            };
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            for (name, dot) in files {
                let path = out_dir.join(name);
                fs::write(&path, dot).with_context(|| format!("writing {}", path.display()))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(Verdict::Yes)
        }
    }
}
