//! Benchmark plans: every (graph × algorithm × repetition) cell is run, its
//! convergence trace written to CSV, and one summary row per
//! (graph, algorithm) collected.
//!
//! Plan files are flat `key = value` text. Keys before the first section set
//! solver options for the whole plan; each `[graph NAME]` section describes
//! one graph, either `file = PATH` (relative to the plan file) or a synthetic
//! spec:
//!
//! ```text
//! algorithms  = hits, ahits, pagerank
//! repetitions = 3
//! back_button = true
//! epsilon     = 1e-10
//!
//! [graph web]
//! file = web.txt
//!
//! [graph synth-1]
//! n = 10000
//! avg_degree = 8
//! dangling = 0.8
//! seed = 1
//! ```

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use crate::error::{Error, Result};
use crate::graph::{load_graph_path, WebGraph};
use crate::ranking::{run_algorithm, write_trace_csv, AlgorithmKind, SolverConfig};
use crate::synth::{generate, SynthSpec};

pub const SUMMARY_HEADER: &str =
    "graph,n,nnz,algorithm,status,k,iterations_to_eps,final_residual,total_mults,total_adds,median_ms,error";

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Synth(SynthSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphCell {
    pub name: String,
    pub source: GraphSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub graphs: Vec<GraphCell>,
    pub algorithms: Vec<AlgorithmKind>,
    pub back_button: bool,
    pub config: SolverConfig,
    pub repetitions: usize,
    pub output_dir: Option<PathBuf>,
}

enum Section {
    Global,
    Graph { name: String, file: Option<PathBuf>, synth: SynthSpec, synth_keys: bool },
}

impl BenchPlan {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses plan text; relative `file` paths are resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut plan = BenchPlan {
            graphs: Vec::new(),
            algorithms: Vec::new(),
            back_button: false,
            config: SolverConfig::default(),
            repetitions: 1,
            output_dir: None,
        };
        let mut section = Section::Global;
        let mut last_line = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Plan { line: line_no, message };

            if let Some(header) = line.strip_prefix('[') {
                let header = header
                    .strip_suffix(']')
                    .ok_or_else(|| err("unterminated section header".into()))?;
                let name = header
                    .trim()
                    .strip_prefix("graph")
                    .map(str::trim)
                    .filter(|n| !n.is_empty())
                    .ok_or_else(|| err(format!("expected [graph NAME], got [{header}]")))?;
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c)) {
                    return Err(err(format!("graph name {name:?} may only use [A-Za-z0-9_.-]")));
                }
                plan.finish_section(std::mem::replace(&mut section, Section::Global), line_no)?;
                section = Section::Graph {
                    name: name.to_owned(),
                    file: None,
                    synth: SynthSpec::default(),
                    synth_keys: false,
                };
                continue;
            }

            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err("expected key = value".into()))?;
            let num = |v: &str| v.parse::<f64>().map_err(|_| err(format!("{key}: {v:?} is not a number")));
            let int = |v: &str| v.parse::<u64>().map_err(|_| err(format!("{key}: {v:?} is not an integer")));

            match &mut section {
                Section::Global => match key {
                    "algorithms" => {
                        plan.algorithms = value
                            .split(',')
                            .filter(|s| !s.trim().is_empty())
                            .map(|s| s.parse::<AlgorithmKind>().map_err(|e| err(e.to_string())))
                            .collect::<Result<_>>()?;
                    }
                    "repetitions" => plan.repetitions = int(value)? as usize,
                    "back_button" => {
                        plan.back_button = value
                            .parse::<bool>()
                            .map_err(|_| err(format!("back_button: {value:?} is not true/false")))?
                    }
                    "epsilon" => plan.config.epsilon = num(value)?,
                    "max_iter" => plan.config.max_iter = int(value)? as usize,
                    "alpha" => plan.config.alpha = num(value)?,
                    "zeta" => plan.config.zeta = num(value)?,
                    "output_dir" => plan.output_dir = Some(base_dir.join(value)),
                    _ => return Err(err(format!("unknown key {key:?}"))),
                },
                Section::Graph { file, synth, synth_keys, .. } => {
                    if key == "file" {
                        *file = Some(base_dir.join(value));
                        continue;
                    }
                    *synth_keys = true;
                    match key {
                        "n" => synth.n = int(value)? as usize,
                        "avg_degree" => synth.target_avg_degree = num(value)?,
                        "in_exponent" => synth.in_exponent = num(value)?,
                        "out_exponent" => synth.out_exponent = num(value)?,
                        "dangling" => synth.dangling_fraction = num(value)?,
                        "seed" => synth.seed = int(value)?,
                        _ => return Err(err(format!("unknown graph key {key:?}"))),
                    }
                }
            }
        }
        plan.finish_section(section, last_line)?;

        let fail = |message: &str| Error::Plan { line: last_line, message: message.into() };
        if plan.algorithms.is_empty() {
            return Err(fail("plan lists no algorithms"));
        }
        if plan.repetitions == 0 {
            return Err(fail("repetitions must be at least 1"));
        }
        if plan.graphs.is_empty() {
            return Err(fail("plan has no [graph] sections"));
        }
        plan.config.validate().map_err(|e| fail(&e.to_string()))?;
        Ok(plan)
    }

    fn finish_section(&mut self, section: Section, line: usize) -> Result<()> {
        let Section::Graph { name, file, synth, synth_keys } = section else {
            return Ok(());
        };
        let err = |message: String| Error::Plan { line, message };
        if self.graphs.iter().any(|g| g.name == name) {
            return Err(err(format!("duplicate graph name {name:?}")));
        }
        let source = match (file, synth_keys) {
            (Some(_), true) => return Err(err(format!("graph {name:?} mixes file with generator keys"))),
            (Some(path), false) => GraphSource::File(path),
            (None, _) => GraphSource::Synth(synth),
        };
        self.graphs.push(GraphCell { name, source });
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellStatus {
    Ok,
    Failed(String),
}

/// One summary row: an algorithm on a graph, aggregated over repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub graph: String,
    pub n: usize,
    pub nnz: usize,
    pub algorithm: AlgorithmKind,
    pub status: CellStatus,
    /// Iterations run, `K`.
    pub iterations: usize,
    pub converged: bool,
    pub final_residual: f64,
    pub total_mults: u64,
    pub total_adds: u64,
    pub median_time: Duration,
}

impl CellSummary {
    pub fn is_ok(&self) -> bool {
        self.status == CellStatus::Ok
    }

    fn csv_row(&self) -> String {
        let (status, error) = match &self.status {
            CellStatus::Ok => ("ok", String::new()),
            CellStatus::Failed(msg) => ("failed", msg.replace([',', '\n'], ";")),
        };
        let to_eps = if self.converged { self.iterations.to_string() } else { String::new() };
        format!(
            "{},{},{},{},{},{},{},{:e},{},{},{:.3},{}",
            self.graph,
            self.n,
            self.nnz,
            self.algorithm,
            status,
            self.iterations,
            to_eps,
            self.final_residual,
            self.total_mults,
            self.total_adds,
            self.median_time.as_secs_f64() * 1e3,
            error
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub summaries: Vec<CellSummary>,
    pub trace_files: Vec<PathBuf>,
    pub summary_file: PathBuf,
}

impl BenchOutcome {
    pub fn all_ok(&self) -> bool {
        self.summaries.iter().all(CellSummary::is_ok)
    }
}

pub fn load_source(source: &GraphSource) -> Result<WebGraph> {
    match source {
        GraphSource::File(path) => Ok(load_graph_path(path)?.0),
        GraphSource::Synth(spec) => generate(spec),
    }
}

fn median(mut times: Vec<Duration>) -> Duration {
    if times.is_empty() {
        return Duration::ZERO;
    }
    times.sort();
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2
    }
}

/// Runs every cell of `plan` serially, writing traces and `summary.csv` into `out_dir`.
///
/// A failing cell is recorded in the summary and the run continues.
pub fn run_plan(plan: &BenchPlan, out_dir: &Path) -> Result<BenchOutcome> {
    fs::create_dir_all(out_dir)?;
    let mut summaries = Vec::new();
    let mut trace_files = Vec::new();

    for cell in &plan.graphs {
        let graph = load_source(&cell.source).map(|g| if plan.back_button { g.back_button() } else { g });
        for &algorithm in &plan.algorithms {
            let mut summary = CellSummary {
                graph: cell.name.clone(),
                n: 0,
                nnz: 0,
                algorithm,
                status: CellStatus::Ok,
                iterations: 0,
                converged: false,
                final_residual: f64::NAN,
                total_mults: 0,
                total_adds: 0,
                median_time: Duration::ZERO,
            };
            let g = match &graph {
                Ok(g) => g,
                Err(e) => {
                    summary.status = CellStatus::Failed(e.to_string());
                    summaries.push(summary);
                    continue;
                }
            };
            summary.n = g.node_count();
            summary.nnz = g.edge_count();
            let mut times = Vec::with_capacity(plan.repetitions);
            for rep in 1..=plan.repetitions {
                let output = match run_algorithm(algorithm, g, &plan.config) {
                    Ok(o) => o,
                    Err(e) => {
                        summary.status = CellStatus::Failed(e.to_string());
                        break;
                    }
                };
                let trace = output.trace();
                if rep > 1 && trace.iterations() != summary.iterations {
                    summary.status = CellStatus::Failed(format!(
                        "iteration count changed between repetitions ({} vs {})",
                        summary.iterations,
                        trace.iterations()
                    ));
                }
                summary.iterations = trace.iterations();
                summary.converged = trace.converged();
                summary.final_residual = trace.final_residual();
                summary.total_mults = trace.total_mults();
                summary.total_adds = trace.total_adds();
                times.push(trace.elapsed());

                let path = out_dir.join(format!("{}__{}__rep{}.csv", cell.name, algorithm, rep));
                write_trace_csv(trace, File::create(&path)?)?;
                trace_files.push(path);
            }
            summary.median_time = median(times);
            summaries.push(summary);
        }
    }

    let summary_file = out_dir.join("summary.csv");
    let mut w = BufWriter::new(File::create(&summary_file)?);
    writeln!(w, "{SUMMARY_HEADER}")?;
    for s in &summaries {
        writeln!(w, "{}", s.csv_row())?;
    }
    w.flush()?;
    Ok(BenchOutcome { summaries, trace_files, summary_file })
}
