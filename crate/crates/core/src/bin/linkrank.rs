use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};

use linkrank::bench::{run_plan, BenchPlan, CellStatus};
use linkrank::graph::{
    load_graph_path, read_labels, write_binary, write_edge_list, Labels, FRACTION_THRESHOLDS,
};
use linkrank::metrics::SimilarityReport;
use linkrank::ranking::{write_scores_csv, write_trace_csv};
use linkrank::synth::{generate, SynthSpec};
use linkrank::{
    compute_stats, compute_weights, run_accelerated_hits, run_algorithm, run_hits, AlgorithmKind, GraphStats,
    RankOutput, RankVector, SolverConfig, WebGraph,
};

#[derive(Parser)]
#[command(name = "linkrank", version, about = "HITS, accelerated HITS and PageRank on sparse web graphs")]
struct Cli {
    /// Suppress informational output on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    /// Directory for generated CSV files.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SolverArgs {
    /// Residual threshold.
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,

    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print dataset statistics.
    Stats {
        graph: PathBuf,
        /// Apply the back-button rewrite first.
        #[arg(long)]
        back_button: bool,
    },
    /// Run one solver and write score and trace CSVs.
    Rank {
        graph: PathBuf,
        /// hits | ahits | ahits-pos | pagerank
        #[arg(long)]
        algo: AlgorithmKind,
        #[arg(long)]
        back_button: bool,
        #[command(flatten)]
        solver: SolverArgs,
        /// PageRank damping factor (pagerank only, default 0.85).
        #[arg(long)]
        alpha: Option<f64>,
        /// Link-structure weight of the positive variant (ahits-pos only, default 0.99).
        #[arg(long)]
        zeta: Option<f64>,
        /// Print the K best pages.
        #[arg(long)]
        top: Option<usize>,
        /// `id<TAB>label` sidecar used when printing top pages.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Write `id,ca,ch` for the accelerated solvers.
        #[arg(long)]
        dump_weights: Option<PathBuf>,
    },
    /// Compare HITS with accelerated HITS and with the degree vectors.
    Compare {
        graph: PathBuf,
        #[arg(long)]
        back_button: bool,
        #[command(flatten)]
        solver: SolverArgs,
        /// Cutoff for the top-k overlap column.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Execute a benchmark plan.
    Bench { plan: PathBuf },
    /// Generate a synthetic power-law web graph.
    Gen {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 8.0)]
        avg_degree: f64,
        #[arg(long, default_value_t = 2.1)]
        in_exponent: f64,
        #[arg(long, default_value_t = 2.7)]
        out_exponent: f64,
        #[arg(long, default_value_t = 0.8)]
        dangling: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the binary CSR cache instead of a text edge list.
        #[arg(long)]
        binary: bool,
        out: PathBuf,
    },
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Stats { graph, back_button } => {
            let g = load(cli, graph, *back_button)?;
            if !cli.quiet {
                print_stats(&compute_stats(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { graph, algo, back_button, solver, alpha, zeta, top, labels, dump_weights } => {
            if alpha.is_some() && *algo != AlgorithmKind::PageRank {
                usage_error("--alpha only applies to --algo pagerank");
            }
            if zeta.is_some() && *algo != AlgorithmKind::AcceleratedHitsPositive {
                usage_error("--zeta only applies to --algo ahits-pos");
            }
            if dump_weights.is_some() && !matches!(algo, AlgorithmKind::AcceleratedHits | AlgorithmKind::AcceleratedHitsPositive) {
                usage_error("--dump-weights only applies to the accelerated solvers");
            }
            let mut cfg = solver_config(solver);
            if let Some(a) = alpha {
                cfg.alpha = *a;
            }
            if let Some(z) = zeta {
                cfg.zeta = *z;
            }
            let labels = labels.as_ref().map(|p| read_labels(File::open(p)?)).transpose()?;
            let g = load(cli, graph, *back_button)?;
            if let Some(path) = dump_weights {
                compute_weights(&g).write_csv(File::create(path)?)?;
            }
            let output = run_algorithm(*algo, &g, &cfg)?;
            cmd_rank_output(cli, *algo, &output, *top, labels.as_ref())
        }
        Command::Compare { graph, back_button, solver, top } => {
            let g = load(cli, graph, *back_button)?;
            cmd_compare(cli, &g, &solver_config(solver), *top)
        }
        Command::Bench { plan } => {
            let plan = BenchPlan::from_path(plan)?;
            let out_dir = plan.output_dir.clone().unwrap_or_else(|| cli.output_dir.clone());
            let outcome = run_plan(&plan, &out_dir)?;
            if !cli.quiet {
                for s in &outcome.summaries {
                    match &s.status {
                        CellStatus::Ok => println!(
                            "{:<20} {:<10} K {:>6} {:<10} median {:.3} ms",
                            s.graph,
                            s.algorithm,
                            s.iterations,
                            if s.converged { "converged" } else { "max_iter" },
                            s.median_time.as_secs_f64() * 1e3
                        ),
                        CellStatus::Failed(msg) => println!("{:<20} {:<10} FAILED: {msg}", s.graph, s.algorithm),
                    }
                }
                println!("summary written to {}", outcome.summary_file.display());
            }
            Ok(if outcome.all_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Gen { n, avg_degree, in_exponent, out_exponent, dangling, seed, binary, out } => {
            let spec = SynthSpec {
                n: *n,
                target_avg_degree: *avg_degree,
                in_exponent: *in_exponent,
                out_exponent: *out_exponent,
                dangling_fraction: *dangling,
                seed: *seed,
            };
            if let Err(e) = spec.validate() {
                usage_error(&e.to_string());
            }
            let g = generate(&spec)?;
            if *binary {
                write_binary(&g, File::create(out)?)?;
            } else {
                write_edge_list(&g, File::create(out)?)?;
            }
            if !cli.quiet {
                print_stats(&compute_stats(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(ErrorKind::ArgumentConflict, msg).exit()
}

fn solver_config(args: &SolverArgs) -> SolverConfig {
    SolverConfig { epsilon: args.eps, max_iter: args.max_iter, ..Default::default() }
}

fn load(cli: &Cli, path: &Path, back_button: bool) -> Result<WebGraph, linkrank::Error> {
    let (g, report) = load_graph_path(path)?;
    if !cli.quiet {
        if report.self_loops_dropped > 0 {
            eprintln!("warning: dropped {} self-loop(s)", report.self_loops_dropped);
        }
        if report.duplicates_collapsed > 0 {
            eprintln!("warning: collapsed {} duplicate edge(s)", report.duplicates_collapsed);
        }
    }
    Ok(if back_button { g.back_button() } else { g })
}

fn print_stats(s: &GraphStats) {
    println!("nodes {}", s.n);
    println!("links {}", s.nnz);
    println!("dangling {}", s.dangling_count);
    println!("|ND| {}", s.nondangling_count());
    println!("%DP {:.1}", s.dangling_percent);
    println!("AD {:.2}", s.average_degree);
    let header: Vec<String> = FRACTION_THRESHOLDS.iter().map(|t| format!(">{t}")).collect();
    println!("threshold {}", header.join(" "));
    let row = |v: &[f64; 4]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" ");
    println!("fi {}", row(&s.fi));
    println!("fo {}", row(&s.fo));
}

fn create_in(dir: &Path, name: &str) -> std::io::Result<(PathBuf, File)> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let file = File::create(&path)?;
    Ok((path, file))
}

fn cmd_rank_output(
    cli: &Cli,
    algo: AlgorithmKind,
    output: &RankOutput,
    top: Option<usize>,
    labels: Option<&Labels>,
) -> CliResult {
    let dir = &cli.output_dir;
    let mut written = Vec::new();
    let primary_name = if algo.is_hits_family() { "authority" } else { "scores" };
    let (path, file) = create_in(dir, &format!("{algo}_{primary_name}.csv"))?;
    write_scores_csv(output.primary(), file)?;
    written.push(path);
    if let Some(hub) = output.hub() {
        let (path, file) = create_in(dir, &format!("{algo}_hub.csv"))?;
        write_scores_csv(hub, file)?;
        written.push(path);
    }
    let (path, file) = create_in(dir, &format!("{algo}_trace.csv"))?;
    let trace = output.trace();
    write_trace_csv(trace, file)?;
    written.push(path);

    if !cli.quiet {
        println!("algorithm {algo}");
        println!("K {}", trace.iterations());
        println!("residual {:e}", trace.final_residual());
        println!("termination {}", trace.termination);
        println!("elapsed_ms {:.3}", trace.elapsed().as_secs_f64() * 1e3);
        if let Some(k) = top {
            print_top(primary_name, output.primary(), k, labels);
            if let Some(hub) = output.hub() {
                print_top("hub", hub, k, labels);
            }
        }
        for p in written {
            println!("wrote {}", p.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_top(title: &str, v: &RankVector, k: usize, labels: Option<&Labels>) {
    println!("top {k} by {title}:");
    for (rank, id) in v.top_k(k).into_iter().enumerate() {
        let label = labels.and_then(|l| l.get(id)).unwrap_or("");
        println!("{:>4} {:>10} {:.6e} {label}", rank + 1, id, v[id]);
    }
}

fn cmd_compare(cli: &Cli, g: &WebGraph, cfg: &SolverConfig, top: usize) -> CliResult {
    let hits = run_hits(g, cfg)?;
    let accel = run_accelerated_hits(g, &compute_weights(g), cfg)?;
    let indeg = RankVector::from_degrees(&g.indegrees());
    let outdeg = RankVector::from_degrees(&g.outdegrees());
    let k = top.clamp(1, g.node_count());

    let rows: [(&str, &RankVector, &RankVector, bool); 4] = [
        ("authority_hits_vs_ahits", &hits.authority, &accel.authority, true),
        ("hub_hits_vs_ahits", &hits.hub, &accel.hub, true),
        ("authority_hits_vs_indegree", &hits.authority, &indeg, false),
        ("hub_hits_vs_outdegree", &hits.hub, &outdeg, false),
    ];
    let fmt = |x: Option<f64>| x.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.6}"));

    let (path, mut file) = create_in(&cli.output_dir, "compare.csv")?;
    writeln!(file, "comparison,cosine,spearman,l1_distance,top{k}_overlap")?;
    if !cli.quiet {
        println!("{:<28} {:>10} {:>10} {:>12} {:>10}", "comparison", "cosine", "spearman", "l1", format!("top{k}"));
    }
    for (name, u, v, same_scale) in rows {
        let r = SimilarityReport::compute(u, v, &[k])?;
        let l1 = if same_scale { Some(r.l1_distance) } else { None };
        let overlap = r.topk_overlap[&k];
        writeln!(file, "{name},{},{},{},{overlap:.6}", fmt(r.cosine), fmt(r.spearman), fmt(l1))?;
        if !cli.quiet {
            println!(
                "{:<28} {:>10} {:>10} {:>12} {:>10.4}",
                name,
                fmt(r.cosine),
                fmt(r.spearman),
                fmt(l1),
                overlap
            );
        }
    }
    if !cli.quiet {
        println!("K hits {} ({}), ahits {} ({})", hits.trace.iterations(), hits.trace.termination, accel.trace.iterations(), accel.trace.termination);
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
