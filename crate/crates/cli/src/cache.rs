//! The central-value cache: a CSV file whose first line is
//! `# sha256=<hex>` over everything after it, then the header
//! `q,a,b,re,im,method,err` and one row per record sorted by `(q, a, b)`.
//! Writes go to a temporary file in the same directory and are renamed over
//! the target.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use quartic_core::lfunctions::{LValueRecord, Method};
use sha2::{Digest, Sha256};

pub const HEADER: &str = "q,a,b,re,im,method,err";
const CHECKSUM_PREFIX: &str = "# sha256=";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cache checksum mismatch: recorded {recorded}, computed {computed}")]
    Checksum { recorded: String, computed: String },
    #[error("cache is missing its checksum line")]
    MissingChecksum,
    #[error("cache row {row}: {msg}")]
    Malformed { row: usize, msg: String },
}

/// Shortest form that still has 17 significant digits, so every `f64`
/// survives a roundtrip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Body text (header and rows) for `records`, sorted by `(q, a, b)` and
/// then method.
pub fn render(records: &[LValueRecord]) -> String {
    let mut sorted: Vec<&LValueRecord> = records.iter().collect();
    sorted.sort_by_key(|r| (r.q, r.a, r.b, r.method == Method::Direct));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(HEADER.split(',')).expect("write to memory");
    for r in sorted {
        w.write_record([
            r.q.to_string(),
            r.a.to_string(),
            r.b.to_string(),
            fmt_f64(r.value.re),
            fmt_f64(r.value.im),
            r.method.to_string(),
            fmt_f64(r.err),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii")
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub fn encode(records: &[LValueRecord]) -> String {
    let body = render(records);
    format!("{CHECKSUM_PREFIX}{}\n{body}", digest(&body))
}

pub fn decode(text: &str) -> Result<Vec<LValueRecord>, CacheError> {
    let (first, body) = text.split_once('\n').ok_or(CacheError::MissingChecksum)?;
    let recorded = first.strip_prefix(CHECKSUM_PREFIX).ok_or(CacheError::MissingChecksum)?.trim();
    let computed = digest(body);
    if recorded != computed {
        return Err(CacheError::Checksum {
            recorded: recorded.to_string(),
            computed,
        });
    }
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(body.as_bytes());
    let header = rdr.headers().map_err(|e| CacheError::Malformed { row: 0, msg: e.to_string() })?;
    if header.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(CacheError::Malformed {
            row: 0,
            msg: format!("expected header {HEADER}"),
        });
    }
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 1;
        let bad = |msg: String| CacheError::Malformed { row: row_no, msg };
        let row = row.map_err(|e| bad(e.to_string()))?;
        if row.len() != 7 {
            return Err(bad(format!("expected 7 fields, got {}", row.len())));
        }
        let num = |k: usize| row[k].parse::<f64>().map_err(|e| bad(format!("field {k}: {e}")));
        let int = |k: usize| row[k].parse::<i64>().map_err(|e| bad(format!("field {k}: {e}")));
        out.push(LValueRecord {
            q: row[0].parse().map_err(|e| bad(format!("field 0: {e}")))?,
            a: int(1)?,
            b: int(2)?,
            value: Complex64::new(num(3)?, num(4)?),
            method: row[5].parse().map_err(|e: quartic_core::Error| bad(e.to_string()))?,
            err: num(6)?,
        });
    }
    Ok(out)
}

/// Loads a cache; a missing file is an empty cache.
pub fn load(path: &Path) -> Result<Vec<LValueRecord>, CacheError> {
    match fs::read_to_string(path) {
        Ok(text) => decode(&text),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(source) => Err(CacheError::Io {
            path: path.display().to_string(),
            source,
        }),
    }
}

/// Replaces the cache at `path` with `records`.
pub fn store(path: &Path, records: &[LValueRecord]) -> Result<(), CacheError> {
    let io = |source| CacheError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(encode(records).as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub type Key = (u64, i64, i64, Method);

pub fn key(r: &LValueRecord) -> Key {
    (r.q, r.a, r.b, r.method)
}

/// Records keyed for lookup; later entries win.
pub fn index(records: Vec<LValueRecord>) -> BTreeMap<Key, LValueRecord> {
    records.into_iter().map(|r| (key(&r), r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, f64::MAX, 5e-324] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
