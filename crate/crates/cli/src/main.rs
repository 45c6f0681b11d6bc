use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boxicity::budget::DEFAULT_WORK_BUDGET;
use boxicity::catalog::enumerate_catalog;
use boxicity::coline::{
    decide_with_stats, igc_minimum_completion, kneser_boxicity, minimal_interval_completions,
    refutation_summary, Refutation,
};
use boxicity::cover::{check_cover, parse_cover, Cover, CoverMember, MemberTag};
use boxicity::edges::EdgeSubset;
use boxicity::graph::{choose2, Edge, Graph};
use boxicity::interval_order::enumerate_maximal_io;
use boxicity::line_box::{
    covered_edges, line_upper_bound, line_upper_cover_with, refute_permutation_cover,
    BasePermutation, RoundStrategy,
};
use boxicity::oracle::brute_boxicity;
use boxicity::{Budget, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "boxicity", version, about = "Boxicity of line graphs and their complements")]
struct Cli {
    /// Write the certificate or table produced by the command to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Search steps before giving up with exit status 4.
    #[arg(long, global = true, default_value_t = DEFAULT_WORK_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boxicity of the Kneser graph KG(n,2) with its cover of L(K_n).
    KneserBoxicity {
        n: usize,
        /// Also recompute the n = 7 lower bound by search (budget permitting).
        #[arg(long)]
        search_seven: bool,
    },
    /// Decide whether the complement of L(G) has boxicity at most K.
    ColineDecide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Minimum interval completion of the complement of L(G).
    Igc {
        #[arg(long)]
        graph: PathBuf,
    },
    /// All inclusion-minimal interval completions of the complement of L(G).
    Completions {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Maximal interval-order subgraphs of L(K_n) in closed form.
    Catalog { n: usize },
    /// Maximal interval-order subgraphs of an arbitrary graph.
    EnumerateIo {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Permutation cover of the complement of L(G), an upper bound on boxi(L(G)).
    LineUpper {
        #[arg(long)]
        graph: PathBuf,
        /// Random permutations tried per round instead of the derandomized choice.
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        #[arg(long, requires = "sample")]
        seed: Option<u64>,
    },
    /// Find an edge of the complement of L(K_n) that none of the permutations covers.
    RefutePerms {
        n: usize,
        #[arg(long)]
        perms: PathBuf,
    },
    /// Exact boxicity by exhaustive search.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check a cover certificate against the edges of a target graph.
    Verify {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Write a standard graph in edge-list format.
    Gen {
        #[arg(value_enum)]
        family: Family,
        n: usize,
        /// Replace the graph by its line graph.
        #[arg(long)]
        line: bool,
        /// Replace the graph by its complement (applied after --line).
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Path,
    Kneser,
}

enum Outcome {
    Computed,
    No,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let budget = Budget::new(cli.budget);
    match run(&cli, &budget) {
        Ok(Outcome::Computed) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(4),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    Graph::parse_edge_list(&fs::read_to_string(path)?)
}

fn save(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    if let Some(path) = out {
        fs::write(path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn edge_list(edges: &EdgeSubset) -> String {
    edges.iter().map(|e| format!("{e}")).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli, budget: &Budget) -> Result<Outcome, Error> {
    match &cli.command {
        Command::KneserBoxicity { n, search_seven } => {
            let r = kneser_boxicity(*n, *search_seven, budget)?;
            println!("boxicity {}", r.value);
            println!("cover of L(K_{n}) with {} members", r.cover.len());
            for m in &r.cover.members {
                println!("  {} ({} edges)", m.tag, m.edges.len());
            }
            match &r.refutation {
                Some(refutation) => print!("{}", refutation_summary(*n, refutation)),
                None => println!("lower bound not recomputed by search"),
            }
            save(&cli.out, &r.cover.to_certificate(choose2(*n)))?;
            Ok(Outcome::Computed)
        }
        Command::ColineDecide { graph, k } => {
            let g = read_graph(graph)?;
            let d = decide_with_stats(&g, *k, budget)?;
            match d.cover {
                Some(cover) => {
                    println!("yes: boxicity of the complement of L(G) is at most {k}");
                    println!("cover with {} members of {} edges", cover.len(), cover.target.len());
                    if d.stats.closed_form {
                        println!("closed-form cover, no search");
                    }
                    save(&cli.out, &cover.to_certificate(g.edge_count()))?;
                    Ok(Outcome::Computed)
                }
                None => {
                    println!("no: boxicity of the complement of L(G) exceeds {k}");
                    let refutation = Refutation { k: *k, stats: d.stats };
                    let summary = if g.is_complete() {
                        refutation_summary(g.vertex_count(), &refutation)
                    } else {
                        format!(
                            "no {k} interval-order subgraphs of L(G) cover its {} edges\n\
                             family size {}, search nodes {}\n",
                            refutation.stats.target_edges,
                            refutation.stats.family_size,
                            refutation.stats.nodes
                        )
                    };
                    print!("{summary}");
                    save(&cli.out, &summary)?;
                    Ok(Outcome::No)
                }
            }
        }
        Command::Igc { graph } => {
            let g = read_graph(graph)?;
            let best = igc_minimum_completion(&g, budget)?;
            println!("minimum completion: {} edges", best.total_edges);
            println!("added {} edges of L(G): {}", best.added_edges.len(), edge_list(&best.added_edges));
            let co_line = EdgeSubset::all_of(&g.line_graph().complement());
            let completion = co_line.union(&best.added_edges);
            let h = Graph::from_edges(g.edge_count(), completion.iter().map(|e| (e.u, e.v)))?;
            save(&cli.out, &h.to_edge_list())?;
            Ok(Outcome::Computed)
        }
        Command::Completions { graph } => {
            let g = read_graph(graph)?;
            let all = minimal_interval_completions(&g, budget)?;
            println!("{} minimal completions", all.len());
            let mut table = String::from("total added\n");
            for c in &all {
                writeln!(table, "{} {}", c.total_edges, c.added_edges.len()).unwrap();
            }
            if let Some(min) = all.iter().map(|c| c.total_edges).min() {
                let max = all.iter().map(|c| c.total_edges).max().unwrap_or(min);
                println!("total edges range {min}..={max}");
            }
            save(&cli.out, &table)?;
            Ok(Outcome::Computed)
        }
        Command::Catalog { n } => {
            let members = enumerate_catalog(*n)?;
            let mut table = String::new();
            let mut counts = std::collections::BTreeMap::new();
            for m in &members {
                *counts.entry(m.descriptor.tag()).or_insert(0usize) += 1;
                writeln!(table, "{} {}", m.descriptor, m.edges.len()).unwrap();
            }
            println!("{} members", members.len());
            for (tag, count) in &counts {
                println!("  {tag} {count}");
            }
            save(&cli.out, &table)?;
            Ok(Outcome::Computed)
        }
        Command::EnumerateIo { graph } => {
            let g = read_graph(graph)?;
            let family = enumerate_maximal_io(&g, budget)?;
            println!("{} maximal interval-order subgraphs", family.len());
            for (i, m) in family.iter().enumerate() {
                println!("  {i}: {} edges, ordering {:?}", m.edges.len(), m.certificate.ordering());
            }
            let members = family
                .into_iter()
                .map(|m| CoverMember { edges: m.edges, certificate: m.certificate, tag: MemberTag::Explicit })
                .collect();
            let cover = Cover::new(EdgeSubset::all_of(&g), members);
            save(&cli.out, &cover.to_certificate(g.vertex_count()))?;
            Ok(Outcome::Computed)
        }
        Command::LineUpper { graph, sample, seed } => {
            let g = read_graph(graph)?;
            let strategy = match (sample, seed) {
                (Some(samples), Some(seed)) => RoundStrategy::Sampled { samples: *samples, seed: *seed },
                _ => RoundStrategy::Derandomized,
            };
            let cover = line_upper_cover_with(&g, strategy)?;
            println!("boxicity of L(G) at most {}", cover.len());
            println!(
                "{} permutations cover {} edges; bound {}",
                cover.len(),
                cover.target.len(),
                line_upper_bound(g.edge_count())
            );
            save(&cli.out, &cover.to_certificate(g.edge_count()))?;
            Ok(Outcome::Computed)
        }
        Command::RefutePerms { n, perms } => {
            let perms = BasePermutation::parse_list(&fs::read_to_string(perms)?)?;
            match refute_permutation_cover(*n, &perms) {
                Ok(w) => {
                    let (a, b, c) = w.triple;
                    println!("common triple {a} {b} {c} with middle {b}");
                    println!("uncovered: {} vs {}", w.edges.0, w.edges.1);
                    save(&cli.out, &format!("{} {}\n", w.edges.0, w.edges.1))?;
                    Ok(Outcome::No)
                }
                Err(Error::Input(msg)) if msg == "no common monotone triple" => direct_check(cli, *n, &perms),
                Err(e) => Err(e),
            }
        }
        Command::Oracle { graph, cap } => {
            let g = read_graph(graph)?;
            match brute_boxicity(&g, *cap, budget) {
                Ok((k, cover)) => {
                    println!("boxicity {k}");
                    save(&cli.out, &cover.to_certificate(g.vertex_count()))?;
                    Ok(Outcome::Computed)
                }
                Err(Error::CapExceeded { cap }) => {
                    println!("boxicity exceeds {cap}");
                    Ok(Outcome::No)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { target, cover } => {
            let target = read_graph(target)?;
            let edges = EdgeSubset::all_of(&target);
            let file = parse_cover(&fs::read_to_string(cover)?, &edges, target.vertex_count())?;
            let report = check_cover(&edges, &file.cover);
            println!("{} members, {} target edges", file.cover.len(), edges.len());
            if report.is_valid() {
                println!("valid: every member certified, cover complete");
                Ok(Outcome::Computed)
            } else {
                println!(
                    "invalid: {} stray members, {} bad certificates, {} uncovered edges",
                    report.stray_members.len(),
                    report.bad_certificates.len(),
                    report.uncovered
                );
                Ok(Outcome::No)
            }
        }
        Command::Gen { family, n, line, complement } => {
            let mut g = match family {
                Family::Complete => Graph::complete(*n),
                Family::Cycle => Graph::cycle(*n),
                Family::Path => Graph::path(*n),
                Family::Kneser => Graph::kneser_2(*n)?,
            };
            if *line {
                g = g.line_graph();
            }
            if *complement {
                g = g.complement();
            }
            match &cli.out {
                Some(_) => save(&cli.out, &g.to_edge_list())?,
                None => print!("{}", g.to_edge_list()),
            }
            Ok(Outcome::Computed)
        }
    }
}

// Without a common triple the permutations are checked edge by edge.
fn direct_check(cli: &Cli, n: usize, perms: &[BasePermutation]) -> Result<Outcome, Error> {
    let g = Graph::complete(n);
    let target = EdgeSubset::all_of(&g.line_graph().complement());
    let mut covered = EdgeSubset::new();
    for p in perms {
        covered = covered.union(&covered_edges(&g, p)?.0);
    }
    let base = g.edges();
    println!("no common triple");
    match target.difference(&covered).iter().next() {
        Some(e) => {
            let (x, y): (Edge, Edge) = (base[e.u], base[e.v]);
            println!("uncovered by direct check: {x} vs {y}");
            save(&cli.out, &format!("{x} {y}\n"))?;
            Ok(Outcome::No)
        }
        None => {
            println!("the permutations cover all {} edges", target.len());
            Ok(Outcome::Computed)
        }
    }
}
