//! CSV export of score vectors (`id,score`) and convergence traces
//! (`iter,residual,mults,adds,elapsed_ms`).

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::time::Duration;

use super::{ConvergenceTrace, IterationRecord, RankVector};
use crate::error::{Error, Result};

pub const SCORES_HEADER: &str = "id,score";
pub const TRACE_HEADER: &str = "iter,residual,mults,adds,elapsed_ms";

/// Rows sorted by score descending, then id ascending.
pub fn write_scores_csv<W: Write>(v: &RankVector, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    writeln!(w, "{SCORES_HEADER}")?;
    for id in v.ordering() {
        writeln!(w, "{id},{}", v[id])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trace_csv<W: Write>(trace: &ConvergenceTrace, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    writeln!(w, "{TRACE_HEADER}")?;
    for r in &trace.records {
        writeln!(
            w,
            "{},{:e},{},{},{:.6}",
            r.iter,
            r.residual,
            r.mults,
            r.adds,
            r.elapsed.as_secs_f64() * 1e3
        )?;
    }
    w.flush()?;
    Ok(())
}

fn data_rows<R: Read>(source: R, header: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut rows = Vec::new();
    let mut lines = BufReader::new(source).lines().enumerate();
    let first = lines.next().map(|(_, l)| l).transpose()?;
    if first.as_deref().map(str::trim_end) != Some(header) {
        return Err(Error::parse(1, format!("expected header {header:?}")));
    }
    for (idx, line) in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        rows.push((idx + 1, line.split(',').map(str::to_owned).collect()));
    }
    Ok(rows)
}

fn field<T: std::str::FromStr>(line: usize, row: &[String], col: usize) -> Result<T> {
    row.get(col)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::parse(line, format!("bad or missing column {col}")))
}

/// Reads an `id,score` file back into a dense vector of `n` entries.
pub fn read_scores_csv<R: Read>(source: R, n: usize) -> Result<RankVector> {
    let mut values = vec![0.0; n];
    let mut seen = vec![false; n];
    for (line, row) in data_rows(source, SCORES_HEADER)? {
        let id: usize = field(line, &row, 0)?;
        if id >= n || seen[id] {
            return Err(Error::parse(line, format!("id {id} out of range or repeated")));
        }
        seen[id] = true;
        values[id] = field(line, &row, 1)?;
    }
    Ok(RankVector::raw(values))
}

pub fn read_trace_csv<R: Read>(source: R) -> Result<Vec<IterationRecord>> {
    data_rows(source, TRACE_HEADER)?
        .into_iter()
        .map(|(line, row)| {
            let ms: f64 = field(line, &row, 4)?;
            Ok(IterationRecord {
                iter: field(line, &row, 0)?,
                residual: field(line, &row, 1)?,
                mults: field(line, &row, 2)?,
                adds: field(line, &row, 3)?,
                elapsed: Duration::from_secs_f64(ms.max(0.0) / 1e3),
            })
        })
        .collect()
}
