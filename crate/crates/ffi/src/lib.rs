//! C ABI over `linkrank`.
//!
//! Graphs and solver results cross the boundary as opaque handles
//! (`LrGraph`, `LrRanking`) that the caller releases with the matching
//! `*_free` function. Every fallible call returns an [`LrStatus`]; on failure
//! a description is available from [`lr_last_error_message`] on the same
//! thread. Panics never unwind into C: they are caught and reported as
//! `LR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linkrank::graph::{load_graph_path, write_binary, write_edge_list};
use linkrank::synth::{generate, SynthSpec};
use linkrank::{compute_stats, count_costs, metrics, run_algorithm, AlgorithmKind, Error, RankOutput, SolverConfig, WebGraph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    EmptyGraph = 5,
    Degenerate = 6,
    Undefined = 7,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrAlgorithm {
    Hits = 0,
    AcceleratedHits = 1,
    AcceleratedHitsPositive = 2,
    PageRank = 3,
}

impl From<LrAlgorithm> for AlgorithmKind {
    fn from(a: LrAlgorithm) -> Self {
        match a {
            LrAlgorithm::Hits => AlgorithmKind::Hits,
            LrAlgorithm::AcceleratedHits => AlgorithmKind::AcceleratedHits,
            LrAlgorithm::AcceleratedHitsPositive => AlgorithmKind::AcceleratedHitsPositive,
            LrAlgorithm::PageRank => AlgorithmKind::PageRank,
        }
    }
}

/// Which vector of a ranking to read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrVectorKind {
    /// Authority vector, or the PageRank vector.
    Primary = 0,
    /// Hub vector; not available for PageRank.
    Hub = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LrSolverConfig {
    pub epsilon: f64,
    pub max_iter: u64,
    pub alpha: f64,
    pub zeta: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct LrSynthSpec {
    pub n: u64,
    pub target_avg_degree: f64,
    pub in_exponent: f64,
    pub out_exponent: f64,
    pub dangling_fraction: f64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LrGraphStats {
    pub n: u64,
    pub nnz: u64,
    pub dangling_count: u64,
    pub dangling_percent: f64,
    pub average_degree: f64,
    /// Fractions of pages with `indeg/deg` above 0.6, 0.7, 0.8, 0.9.
    pub fi: [f64; 4],
    /// Fractions of pages with `outdeg/deg` above 0.6, 0.7, 0.8, 0.9.
    pub fo: [f64; 4],
}

/// Opaque graph handle.
pub struct LrGraph(WebGraph);

/// Opaque solver result handle.
pub struct LrRanking(RankOutput);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> LrStatus {
    match e {
        Error::Io(_) => LrStatus::Io,
        Error::Parse { .. } | Error::BadBinary(_) | Error::Plan { .. } => LrStatus::Parse,
        Error::EmptyGraph => LrStatus::EmptyGraph,
        Error::Degenerate => LrStatus::Degenerate,
        Error::UndefinedCosine | Error::UndefinedCorrelation => LrStatus::Undefined,
        Error::NodeOutOfRange { .. }
        | Error::InvalidConfig(_)
        | Error::LengthMismatch { .. }
        | Error::InvalidArgument(_)
        | Error::InfeasibleSpec(_) => LrStatus::InvalidArgument,
    }
}

fn fail(status: LrStatus, msg: impl Into<String>) -> LrStatus {
    set_last_error(msg);
    status
}

impl From<Error> for LrStatus {
    fn from(e: Error) -> Self {
        fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, mapping its error and any panic to a status code.
fn guard(f: impl FnOnce() -> Result<(), LrStatus>) -> LrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LrStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(LrStatus::Panic, "panic inside linkrank"),
    }
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, LrStatus> {
    p.as_ref().ok_or_else(|| fail(LrStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn out_slot<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, LrStatus> {
    p.as_mut().ok_or_else(|| fail(LrStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], LrStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(LrStatus::NullPointer, format!("{what} is NULL")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn path_arg(p: *const c_char) -> Result<String, LrStatus> {
    if p.is_null() {
        return Err(fail(LrStatus::NullPointer, "path is NULL"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| fail(LrStatus::InvalidArgument, "path is not valid UTF-8"))
}

fn to_index(v: u64) -> Result<usize, LrStatus> {
    usize::try_from(v).map_err(|_| fail(LrStatus::InvalidArgument, format!("{v} does not fit in size_t")))
}

fn publish<T>(out: &mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a graph on `n` nodes from `len` edges `src[k] -> dst[k]`.
/// Self-loops are dropped and duplicates collapsed.
///
/// # Safety
/// `src` and `dst` must each point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_from_edges(
    n: u64,
    src: *const u64,
    dst: *const u64,
    len: usize,
    out: *mut *mut LrGraph,
) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let src = slice(src, len, "src")?;
        let dst = slice(dst, len, "dst")?;
        let edges = src
            .iter()
            .zip(dst)
            .map(|(&s, &d)| Ok((to_index(s)?, to_index(d)?)))
            .collect::<Result<Vec<_>, LrStatus>>()?;
        let (g, _) = WebGraph::from_edges(to_index(n)?, edges)?;
        publish(out, LrGraph(g));
        Ok(())
    })
}

/// Loads a text edge list or binary CSR cache.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_load(path: *const c_char, out: *mut *mut LrGraph) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let (g, _) = load_graph_path(path_arg(path)?)?;
        publish(out, LrGraph(g));
        Ok(())
    })
}

/// Writes `graph` as a text edge list, or as the binary cache when `binary` is set.
///
/// # Safety
/// `graph` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_save(graph: *const LrGraph, path: *const c_char, binary: bool) -> LrStatus {
    guard(|| {
        let g = &reference(graph, "graph")?.0;
        let file = File::create(path_arg(path)?).map_err(Error::from)?;
        if binary {
            write_binary(g, file)?;
        } else {
            write_edge_list(g, file)?;
        }
        Ok(())
    })
}

/// Generates a synthetic power-law graph.
///
/// # Safety
/// `spec` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_generate(spec: *const LrSynthSpec, out: *mut *mut LrGraph) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let s = reference(spec, "spec")?;
        let spec = SynthSpec {
            n: to_index(s.n)?,
            target_avg_degree: s.target_avg_degree,
            in_exponent: s.in_exponent,
            out_exponent: s.out_exponent,
            dangling_fraction: s.dangling_fraction,
            seed: s.seed,
        };
        publish(out, LrGraph(generate(&spec)?));
        Ok(())
    })
}

/// Default generator settings: 10000 nodes, average degree 8, exponents 2.1/2.7, 80% dangling.
#[no_mangle]
pub extern "C" fn lr_synth_spec_default() -> LrSynthSpec {
    let s = SynthSpec::default();
    LrSynthSpec {
        n: s.n as u64,
        target_avg_degree: s.target_avg_degree,
        in_exponent: s.in_exponent,
        out_exponent: s.out_exponent,
        dangling_fraction: s.dangling_fraction,
        seed: s.seed,
    }
}

/// New handle holding the back-button rewrite of `graph`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_back_button(graph: *const LrGraph, out: *mut *mut LrGraph) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let g = &reference(graph, "graph")?.0;
        publish(out, LrGraph(g.back_button()));
        Ok(())
    })
}

/// # Safety
/// `graph` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_free(graph: *mut LrGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Node count, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_node_count(graph: *const LrGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.0.node_count() as u64)
}

/// Edge count, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_edge_count(graph: *const LrGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.0.edge_count() as u64)
}

/// Number of pages without outlinks, or 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_dangling_count(graph: *const LrGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.0.dangling_count() as u64)
}

/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lr_graph_stats(graph: *const LrGraph, out: *mut LrGraphStats) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let s = compute_stats(&reference(graph, "graph")?.0);
        *out = LrGraphStats {
            n: s.n as u64,
            nnz: s.nnz as u64,
            dangling_count: s.dangling_count as u64,
            dangling_percent: s.dangling_percent,
            average_degree: s.average_degree,
            fi: s.fi,
            fo: s.fo,
        };
        Ok(())
    })
}

/// epsilon 1e-10, max_iter 10000, alpha 0.85, zeta 0.99.
#[no_mangle]
pub extern "C" fn lr_solver_config_default() -> LrSolverConfig {
    let c = SolverConfig::default();
    LrSolverConfig { epsilon: c.epsilon, max_iter: c.max_iter as u64, alpha: c.alpha, zeta: c.zeta }
}

/// Closed-form per-iteration multiplication and addition counts.
///
/// # Safety
/// `graph` must be a live handle; `mults` and `adds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_count_costs(
    algorithm: LrAlgorithm,
    graph: *const LrGraph,
    mults: *mut u64,
    adds: *mut u64,
) -> LrStatus {
    guard(|| {
        let g = &reference(graph, "graph")?.0;
        let (m, a) = (out_slot(mults, "mults")?, out_slot(adds, "adds")?);
        let cost = count_costs(algorithm.into(), g);
        *m = cost.mults;
        *a = cost.adds;
        Ok(())
    })
}

/// Runs a solver from the uniform start. `config` may be NULL for defaults.
///
/// # Safety
/// `graph` must be a live handle, `config` NULL or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lr_rank(
    graph: *const LrGraph,
    algorithm: LrAlgorithm,
    config: *const LrSolverConfig,
    out: *mut *mut LrRanking,
) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        let g = &reference(graph, "graph")?.0;
        let cfg = match config.as_ref() {
            None => SolverConfig::default(),
            Some(c) => SolverConfig {
                epsilon: c.epsilon,
                max_iter: to_index(c.max_iter)?,
                alpha: c.alpha,
                zeta: c.zeta,
                ..Default::default()
            },
        };
        publish(out, LrRanking(run_algorithm(algorithm.into(), g, &cfg)?));
        Ok(())
    })
}

/// # Safety
/// `ranking` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_free(ranking: *mut LrRanking) {
    if !ranking.is_null() {
        drop(Box::from_raw(ranking));
    }
}

/// Length of the score vectors, or 0 for NULL.
///
/// # Safety
/// `ranking` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_len(ranking: *const LrRanking) -> usize {
    ranking.as_ref().map_or(0, |r| r.0.primary().len())
}

/// Iterations run (`K`), or 0 for NULL.
///
/// # Safety
/// `ranking` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_iterations(ranking: *const LrRanking) -> u64 {
    ranking.as_ref().map_or(0, |r| r.0.trace().iterations() as u64)
}

/// Whether the residual reached epsilon before the iteration cap.
///
/// # Safety
/// `ranking` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_converged(ranking: *const LrRanking) -> bool {
    ranking.as_ref().is_some_and(|r| r.0.trace().converged())
}

/// Residual of the last iteration, NaN for NULL.
///
/// # Safety
/// `ranking` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_final_residual(ranking: *const LrRanking) -> f64 {
    ranking.as_ref().map_or(f64::NAN, |r| r.0.trace().final_residual())
}

/// Cumulative operation counts over the whole run.
///
/// # Safety
/// `ranking` must be a live handle; `mults` and `adds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_op_counts(ranking: *const LrRanking, mults: *mut u64, adds: *mut u64) -> LrStatus {
    guard(|| {
        let trace = reference(ranking, "ranking")?.0.trace();
        *out_slot(mults, "mults")? = trace.total_mults();
        *out_slot(adds, "adds")? = trace.total_adds();
        Ok(())
    })
}

/// Copies one score vector into `buf`, which must hold exactly `len` values
/// with `len` equal to [`lr_ranking_len`].
///
/// # Safety
/// `ranking` must be a live handle and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_copy_vector(
    ranking: *const LrRanking,
    kind: LrVectorKind,
    buf: *mut f64,
    len: usize,
) -> LrStatus {
    guard(|| {
        let r = &reference(ranking, "ranking")?.0;
        let v = match kind {
            LrVectorKind::Primary => r.primary(),
            LrVectorKind::Hub => r
                .hub()
                .ok_or_else(|| fail(LrStatus::InvalidArgument, "PageRank has no hub vector"))?,
        };
        if len != v.len() {
            return Err(fail(LrStatus::InvalidArgument, format!("buffer holds {len} values, vector has {}", v.len())));
        }
        if buf.is_null() {
            return Err(fail(LrStatus::NullPointer, "buf is NULL"));
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(v);
        Ok(())
    })
}

unsafe fn pairwise(
    u: *const f64,
    v: *const f64,
    len: usize,
    out: *mut f64,
    f: fn(&[f64], &[f64]) -> linkrank::Result<f64>,
) -> LrStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = f(slice(u, len, "u")?, slice(v, len, "v")?)?;
        Ok(())
    })
}

/// Cosine similarity; `LR_STATUS_UNDEFINED` when either vector is zero.
///
/// # Safety
/// `u` and `v` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_cosine(u: *const f64, v: *const f64, len: usize, out: *mut f64) -> LrStatus {
    pairwise(u, v, len, out, metrics::cosine)
}

/// Spearman correlation with average ranks for ties; `LR_STATUS_UNDEFINED` for constant input.
///
/// # Safety
/// `u` and `v` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_spearman(u: *const f64, v: *const f64, len: usize, out: *mut f64) -> LrStatus {
    pairwise(u, v, len, out, metrics::spearman)
}

/// # Safety
/// `u` and `v` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lr_l1_distance(u: *const f64, v: *const f64, len: usize, out: *mut f64) -> LrStatus {
    pairwise(u, v, len, out, metrics::l1_distance)
}
