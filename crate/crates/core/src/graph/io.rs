//! Edge-list text, binary CSR cache and label sidecar formats.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{BuildReport, WebGraph};
use crate::error::{Error, Result};

/// Leading bytes of the binary CSR cache.
pub const BINARY_MAGIC: &[u8; 8] = b"LNKRNK01";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// `src<TAB>dst` per line, `#` comments, optional `# nodes: N` header.
    Text,
    /// Little-endian 64-bit CSR cache prefixed by [`BINARY_MAGIC`].
    Binary,
}

pub type LoadReport = BuildReport;

pub fn load_edge_list<R: Read>(source: R, format: EdgeListFormat) -> Result<(WebGraph, LoadReport)> {
    match format {
        EdgeListFormat::Text => read_text(BufReader::new(source)),
        EdgeListFormat::Binary => Ok((read_binary(source)?, LoadReport::default())),
    }
}

/// Opens `path`, picking the binary reader when the file starts with the magic bytes.
pub fn load_graph_path(path: impl AsRef<Path>) -> Result<(WebGraph, LoadReport)> {
    let mut reader = BufReader::new(File::open(path)?);
    let format = if reader.fill_buf()?.starts_with(BINARY_MAGIC) {
        EdgeListFormat::Binary
    } else {
        EdgeListFormat::Text
    };
    load_edge_list(reader, format)
}

fn node_header(comment: &str) -> Option<&str> {
    let body = comment.trim_start_matches('#').trim();
    let (key, value) = body.split_once(':')?;
    key.trim().eq_ignore_ascii_case("nodes").then(|| value.trim())
}

fn read_text<R: BufRead>(reader: R) -> Result<(WebGraph, LoadReport)> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(value) = node_header(line) {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("bad node count {value:?}")))?;
                declared = Some(n);
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::parse(lineno, "expected exactly two node ids"));
        };
        let parse = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("{tok:?} is not a nonnegative integer")))
        };
        let (src, dst) = (parse(a)?, parse(b)?);
        max_id = Some(max_id.map_or(src.max(dst), |m| m.max(src).max(dst)));
        edges.push((src, dst));
    }

    let n = match (declared, max_id) {
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => return Err(Error::EmptyGraph),
    };
    WebGraph::from_edges(n, edges)
}

/// Writes the canonical text form, including a `# nodes:` header so that
/// trailing isolated nodes survive a round trip.
pub fn write_edge_list<W: Write>(g: &WebGraph, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    writeln!(w, "# nodes: {}", g.node_count())?;
    for (i, j) in g.edges() {
        writeln!(w, "{i}\t{j}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_binary<W: Write>(g: &WebGraph, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    w.write_all(BINARY_MAGIC)?;
    w.write_all(&(g.node_count() as u64).to_le_bytes())?;
    w.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    for &o in g.out_offsets() {
        w.write_all(&(o as u64).to_le_bytes())?;
    }
    for &t in g.out_targets() {
        w.write_all(&(t as u64).to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut source: R) -> Result<WebGraph> {
    let mut magic = [0u8; 8];
    source
        .read_exact(&mut magic)
        .map_err(|_| Error::BadBinary("truncated header".into()))?;
    if &magic != BINARY_MAGIC {
        return Err(Error::BadBinary("bad magic bytes".into()));
    }
    let mut next = || -> Result<usize> {
        let mut buf = [0u8; 8];
        source
            .read_exact(&mut buf)
            .map_err(|_| Error::BadBinary("truncated body".into()))?;
        usize::try_from(u64::from_le_bytes(buf)).map_err(|_| Error::BadBinary("value overflows usize".into()))
    };
    let n = next()?;
    let nnz = next()?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let offsets = (0..=n).map(|_| next()).collect::<Result<Vec<_>>>()?;
    let targets = (0..nnz).map(|_| next()).collect::<Result<Vec<_>>>()?;
    WebGraph::from_csr(n, offsets, targets)
}

/// Display strings keyed by node id, loaded from an `id<TAB>label` sidecar.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<Option<String>>,
}

impl Labels {
    pub fn get(&self, id: usize) -> Option<&str> {
        self.names.get(id).and_then(|s| s.as_deref())
    }

    pub fn insert(&mut self, id: usize, label: impl Into<String>) {
        if self.names.len() <= id {
            self.names.resize(id + 1, None);
        }
        self.names[id] = Some(label.into());
    }

    pub fn len(&self) -> usize {
        self.names.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn read_labels<R: Read>(source: R) -> Result<Labels> {
    let mut labels = Labels::default();
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, label) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(idx + 1, "expected id<TAB>label"))?;
        let id = id
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::parse(idx + 1, format!("{id:?} is not a node id")))?;
        labels.insert(id, label);
    }
    Ok(labels)
}

pub fn write_labels<W: Write>(labels: &Labels, sink: W) -> Result<()> {
    let mut w = BufWriter::new(sink);
    for (id, name) in labels.names.iter().enumerate() {
        if let Some(name) = name {
            writeln!(w, "{id}\t{name}")?;
        }
    }
    w.flush()?;
    Ok(())
}
