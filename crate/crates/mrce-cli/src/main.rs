//! Command-line front end: solve instances, verify solutions, generate
//! corpora, and audit approximation guarantees against the exact oracle.
//!
//! Exit codes: 0 success, 1 failed check/audit, 2 parse error,
//! 3 algorithm/format incompatibility, 4 exact-search capacity exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mrce::forge;
use mrce::graph::{RootedGraph, Solution};
use mrce::interval::IntervalRealization;
use mrce::io;
use mrce::oracle::{self, DEFAULT_ORACLE_CAP};
use mrce::ratio::Ratio;
use mrce::split::{self, SplitVerdict};
use mrce::steiner;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INCOMPATIBLE: u8 = 3;
const EXIT_CAPACITY: u8 = 4;

#[derive(Parser)]
#[command(name = "mrce", about = "Maximum Rooted Connected Expansion toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and print its expansion ratio.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Search-depth parameter for the split algorithm.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Also write a solution file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify a solution file against its instance.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Compare an algorithm against the exact oracle over a corpus directory.
    Audit {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random split graph (writes `<out>.graph`).
    Split {
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random interval instance (writes `<out>.intervals` and `<out>.graph`).
    Interval {
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random connected graph (writes `<out>.graph`).
    General {
        #[arg(short, long)]
        n: usize,
        /// Edge count; defaults to roughly 1.6·n.
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduction of a DIMACS CNF formula (writes `<out>.graph` with a
    /// threshold comment, plus `<out>.roles`). Formulas with unequal
    /// variable and clause counts are padded first.
    Reduction {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Intervals,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Split,
    General,
    Interval,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.cmd {
        Cmd::Solve {
            input,
            format,
            algo,
            k,
            output,
        } => cmd_solve(&input, format, algo, k, output.as_deref()),
        Cmd::Check {
            input,
            format,
            solution,
        } => cmd_check(&input, format, &solution),
        Cmd::Gen { kind } => cmd_gen(kind),
        Cmd::Audit { corpus, algo, k } => cmd_audit(&corpus, algo, k),
    }
}

fn read_file(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn write_file(path: &Path, content: &str) -> Result<(), u8> {
    fs::write(path, content).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_PARSE
    })
}

/// A loaded instance: always a graph, plus the realization when the input
/// was an interval file.
struct Instance {
    graph: RootedGraph,
    realization: Option<IntervalRealization>,
}

fn load_instance(path: &Path, format: Format) -> Result<Instance, u8> {
    let text = read_file(path)?;
    match format {
        Format::Edgelist => {
            let graph = io::parse_edge_list(&text).map_err(|e| {
                eprintln!("error: {}: {e}", path.display());
                EXIT_PARSE
            })?;
            Ok(Instance {
                graph,
                realization: None,
            })
        }
        Format::Intervals => {
            let (root, raw) = io::parse_intervals(&text).map_err(|e| {
                eprintln!("error: {}: {e}", path.display());
                EXIT_PARSE
            })?;
            let realization = IntervalRealization::canonicalize(&raw).map_err(|e| {
                eprintln!("error: {}: {e}", path.display());
                EXIT_PARSE
            })?;
            let graph = realization.intersection_graph(root).map_err(|e| {
                eprintln!("error: {}: {e}", path.display());
                EXIT_PARSE
            })?;
            Ok(Instance {
                graph,
                realization: Some(realization),
            })
        }
    }
}

fn oracle_cap() -> usize {
    match std::env::var("MRCE_ORACLE_CAP") {
        Ok(v) => v.parse().unwrap_or_else(|_| {
            eprintln!("warning: ignoring malformed MRCE_ORACLE_CAP={v:?}");
            DEFAULT_ORACLE_CAP
        }),
        Err(_) => DEFAULT_ORACLE_CAP,
    }
}

fn solve_with(instance: &Instance, algo: Algo, k: usize) -> Result<Solution, u8> {
    match algo {
        Algo::Exact => oracle::solve_exact_capped(&instance.graph, None, oracle_cap()).map_err(|e| {
            eprintln!("error: {e}");
            EXIT_CAPACITY
        }),
        Algo::Split => {
            match split::recognize_and_partition(&instance.graph) {
                SplitVerdict::Split(_) => {}
                SplitVerdict::NotSplit(witness) => {
                    eprintln!("error: input graph is not split ({witness:?})");
                    return Err(EXIT_INCOMPATIBLE);
                }
            }
            split::approximate_split(&instance.graph, k).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_INCOMPATIBLE
            })
        }
        Algo::General => Ok(steiner::greedy_mrce(&instance.graph)),
        Algo::Interval => {
            let Some(realization) = &instance.realization else {
                eprintln!("error: the interval algorithm requires --format intervals");
                return Err(EXIT_INCOMPATIBLE);
            };
            mrce::interval::solve_interval(&instance.graph, realization).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_INCOMPATIBLE
            })
        }
    }
}

fn cmd_solve(
    input: &Path,
    format: Format,
    algo: Algo,
    k: usize,
    output: Option<&Path>,
) -> Result<(), u8> {
    let instance = load_instance(input, format)?;
    let sol = solve_with(&instance, algo, k)?;
    println!("ratio {}", sol.ratio());
    println!("decimal {}", sol.ratio().to_decimal(10));
    println!("set_size {}", sol.set().len());
    println!("closed_neighborhood {}", sol.closed_nbhd_size());
    println!(
        "surveillance_lower_bound {}",
        oracle::surveillance_lower_bound(&sol)
    );
    if let Some(path) = output {
        write_file(path, &io::format_solution(&sol))?;
    }
    Ok(())
}

fn cmd_check(input: &Path, format: Format, solution: &Path) -> Result<(), u8> {
    let instance = load_instance(input, format)?;
    let text = read_file(solution)?;
    let (claimed_ratio, set) = io::parse_solution(&text).map_err(|e| {
        eprintln!("error: {}: {e}", solution.display());
        EXIT_PARSE
    })?;
    if set.iter().any(|v| v >= instance.graph.n()) {
        eprintln!("error: solution names vertices outside the instance");
        return Err(EXIT_PARSE);
    }
    match instance.graph.evaluate(&set) {
        Err(e) => {
            println!("FAIL {e}");
            Err(EXIT_CHECK_FAILED)
        }
        Ok(sol) => {
            if sol.ratio() != claimed_ratio {
                println!("FAIL ratio mismatch: claimed {claimed_ratio}, actual {}", sol.ratio());
                Err(EXIT_CHECK_FAILED)
            } else {
                println!("OK ratio {}", sol.ratio());
                Ok(())
            }
        }
    }
}

fn cmd_gen(kind: GenKind) -> Result<(), u8> {
    match kind {
        GenKind::Split { n, seed, out } => {
            let g = forge::random_split(n, seed);
            let path = out.with_extension("graph");
            write_file(&path, &io::format_edge_list(&g, &[]))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        GenKind::General { n, edges, seed, out } => {
            let g = forge::random_connected(n, edges, seed).map_err(|e| {
                eprintln!("error: {e}");
                EXIT_PARSE
            })?;
            let path = out.with_extension("graph");
            write_file(&path, &io::format_edge_list(&g, &[]))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        GenKind::Interval { n, seed, out } => {
            let inst = forge::random_interval(n, seed);
            let ipath = out.with_extension("intervals");
            let gpath = out.with_extension("graph");
            write_file(&ipath, &io::format_intervals(inst.graph.root(), &inst.raw))?;
            write_file(&gpath, &io::format_edge_list(&inst.graph, &[]))?;
            println!("wrote {}", ipath.display());
            println!("wrote {}", gpath.display());
            Ok(())
        }
        GenKind::Reduction { cnf, out } => {
            let text = read_file(&cnf)?;
            let formula = io::parse_dimacs(&text).map_err(|e| {
                eprintln!("error: {}: {e}", cnf.display());
                EXIT_PARSE
            })?;
            let formula = forge::equalize(&formula);
            let reduction = forge::reduce_to_split_mrce(&formula).expect("equalized formula");
            let gpath = out.with_extension("graph");
            let rpath = out.with_extension("roles");
            let comment = format!("threshold {}", reduction.threshold);
            write_file(&gpath, &io::format_edge_list(&reduction.graph, &[comment]))?;
            write_file(&rpath, &io::format_roles(&reduction.roles))?;
            println!("wrote {}", gpath.display());
            println!("wrote {}", rpath.display());
            println!("threshold {}", reduction.threshold);
            Ok(())
        }
    }
}

/// Exact comparison of `(a1/e1) < (a2/e2)` for ratio quotients.
fn quotient_less_than(a1: Ratio, e1: Ratio, a2: Ratio, e2: Ratio) -> bool {
    let lhs = a1.num() as u128 * e1.den() as u128 * a2.den() as u128 * e2.num() as u128;
    let rhs = a2.num() as u128 * e2.den() as u128 * a1.den() as u128 * e1.num() as u128;
    lhs < rhs
}

fn audit_threshold(algo: Algo, k: usize) -> Ratio {
    match algo {
        Algo::Interval => Ratio::new(1, 1),
        Algo::Split => Ratio::new(k as u64, k as u64 + 2),
        // Safe underestimate of (1/6)(1 - 1/e).
        Algo::General => Ratio::new(105, 1000),
        Algo::Exact => Ratio::new(1, 1),
    }
}

fn cmd_audit(corpus: &Path, algo: Algo, k: usize) -> Result<(), u8> {
    let want_ext = match algo {
        Algo::Interval => "intervals",
        _ => "graph",
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus)
        .map_err(|e| {
            eprintln!("error: cannot read {}: {e}", corpus.display());
            EXIT_PARSE
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(want_ext))
        .collect();
    paths.sort();
    if paths.is_empty() {
        eprintln!("error: no .{want_ext} instances in {}", corpus.display());
        return Err(EXIT_PARSE);
    }

    let cap = oracle_cap();
    let threshold = audit_threshold(algo, k);
    println!("{:<40} {:>12} {:>12} {:>10}", "instance", "exact", "algo", "quotient");

    let mut min_quotient: Option<(Ratio, Ratio)> = None; // (algo, exact) of the worst case
    let mut skipped = 0usize;
    let mut failed = 0usize;
    for path in &paths {
        let format = if want_ext == "intervals" {
            Format::Intervals
        } else {
            Format::Edgelist
        };
        let instance = load_instance(path, format)?;
        let name = path
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or("<instance>");
        let exact = match oracle::solve_exact_capped(&instance.graph, None, cap) {
            Ok(sol) => sol,
            Err(e) => {
                println!("{name:<40} skipped: {e}");
                skipped += 1;
                continue;
            }
        };
        let approx = solve_with(&instance, algo, k)?;
        let quotient = approx.ratio().to_f64() / exact.ratio().to_f64();
        let ok = approx.ratio().quotient_at_least(exact.ratio(), threshold);
        if !ok {
            failed += 1;
        }
        println!(
            "{:<40} {:>12} {:>12} {:>10.6}{}",
            name,
            exact.ratio().to_string(),
            approx.ratio().to_string(),
            quotient,
            if ok { "" } else { "  BELOW BOUND" }
        );
        let is_smaller_quotient = match &min_quotient {
            None => true,
            Some((a, e)) => quotient_less_than(approx.ratio(), exact.ratio(), *a, *e),
        };
        if is_smaller_quotient {
            min_quotient = Some((approx.ratio(), exact.ratio()));
        }
    }

    if let Some((a, e)) = min_quotient {
        println!("min_quotient {:.6}", a.to_f64() / e.to_f64());
    }
    println!(
        "threshold {:.6} ({})",
        threshold.to_f64(),
        match algo {
            Algo::Split => format!("k/(k+2) at k={k}"),
            Algo::General => "safe lower bound on (1-1/e)/6".to_string(),
            _ => "optimality".to_string(),
        }
    );
    if skipped > 0 {
        println!("skipped {skipped} instance(s) beyond oracle capacity {cap}");
    }
    if failed == 0 {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL ({failed} instance(s) below the bound)");
        Err(EXIT_CHECK_FAILED)
    }
}
