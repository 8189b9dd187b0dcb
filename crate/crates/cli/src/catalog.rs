//! Append-only results catalog: a TSV index plus one graph6 file per
//! resolved triple.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use gdcage::graph6;
use gdcage::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const INDEX: &str = "catalog.tsv";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog format: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid record: {0}")]
    Invalid(String),
    #[error("bad graph file {path}: {msg}")]
    GraphFile { path: String, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CageRecord {
    pub k: u64,
    pub g: u64,
    pub d: u64,
    pub lower_bound: u64,
    pub order: Option<u64>,
    pub count: Option<u64>,
    pub exhaustive: bool,
    pub all_bipartite: Option<bool>,
    pub runtime_seconds: f64,
    pub graph_file: String,
}

impl CageRecord {
    pub fn graph_file_name(k: u64, g: u64, d: u64, n: u64) -> String {
        format!("cages_k{k}_g{g}_d{d}_n{n}.g6")
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let bad = |m: &str| Err(CatalogError::Invalid(format!("({},{},{}): {m}", self.k, self.g, self.d)));
        if let Some(n) = self.order {
            if n < self.lower_bound {
                return bad("order below lower bound");
            }
            if self.count.is_none_or(|c| c < 1) {
                return bad("order present without a positive count");
            }
        }
        if !(self.runtime_seconds >= 0.0) {
            return bad("negative or NaN runtime");
        }
        Ok(())
    }
}

/// A catalog directory.
#[derive(Debug, Clone)]
pub struct Catalog {
    dir: PathBuf,
}

impl Catalog {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CatalogError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Catalog { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn index(&self) -> PathBuf {
        self.dir.join(INDEX)
    }

    pub fn records(&self) -> Result<Vec<CageRecord>, CatalogError> {
        let path = self.index();
        if !path.exists() {
            return Ok(Vec::new());
        }
        read_records(File::open(path)?)
    }

    /// Latest record for the triple.
    pub fn lookup(&self, k: u64, g: u64, d: u64) -> Result<Option<CageRecord>, CatalogError> {
        Ok(self.records()?.into_iter().rev().find(|r| (r.k, r.g, r.d) == (k, g, d)))
    }

    /// Writes the graph file (if any) and appends the record. The index is
    /// locked for the duration so concurrent writers do not interleave.
    pub fn append(&self, rec: &CageRecord, graphs: &[Graph]) -> Result<(), CatalogError> {
        rec.validate()?;
        if rec.exhaustive && rec.count.is_some_and(|c| c as usize != graphs.len()) {
            return Err(CatalogError::Invalid(format!(
                "exhaustive record lists {} graphs but count is {:?}",
                graphs.len(),
                rec.count
            )));
        }
        let index = OpenOptions::new().create(true).append(true).read(true).open(self.index())?;
        index.lock()?;
        if !rec.graph_file.is_empty() {
            let mut w = BufWriter::new(File::create(self.dir.join(&rec.graph_file))?);
            for g in graphs {
                writeln!(w, "{}", graph6::encode(g))?;
            }
            w.flush()?;
        }
        let fresh = index.metadata()?.len() == 0;
        let mut buf = Vec::new();
        write_records(&mut buf, std::slice::from_ref(rec), fresh)?;
        (&index).write_all(&buf)?;
        index.unlock()?;
        Ok(())
    }

    /// Graphs stored for a record.
    pub fn graphs(&self, rec: &CageRecord) -> Result<Vec<Graph>, CatalogError> {
        if rec.graph_file.is_empty() {
            return Ok(Vec::new());
        }
        let path = self.dir.join(&rec.graph_file);
        read_graph6_file(&path)
    }
}

pub fn read_graph6_file(path: &Path) -> Result<Vec<Graph>, CatalogError> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            graph6::decode(l.trim())
                .map_err(|e| CatalogError::GraphFile { path: path.display().to_string(), msg: e.to_string() })
        })
        .collect()
}

fn builder() -> csv::WriterBuilder {
    let mut b = csv::WriterBuilder::new();
    b.delimiter(b'\t');
    b
}

pub fn write_records<W: Write>(w: W, recs: &[CageRecord], header: bool) -> Result<(), CatalogError> {
    let mut wr = builder().has_headers(header).from_writer(w);
    if header && recs.is_empty() {
        wr.write_record(HEADER)?;
    }
    for r in recs {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_records<R: std::io::Read>(r: R) -> Result<Vec<CageRecord>, CatalogError> {
    let mut rd = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(r);
    let got: Vec<&str> = rd.headers()?.iter().collect();
    if got != HEADER {
        return Err(CatalogError::Invalid(format!("unexpected header {got:?}")));
    }
    let recs = rd.deserialize().collect::<Result<Vec<CageRecord>, _>>()?;
    Ok(recs)
}

pub const HEADER: [&str; 10] =
    ["k", "g", "d", "lower_bound", "order", "count", "exhaustive", "all_bipartite", "runtime_seconds", "graph_file"];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> CageRecord {
        CageRecord {
            k: 3,
            g: 6,
            d: 3,
            lower_bound: 14,
            order: Some(14),
            count: Some(1),
            exhaustive: true,
            all_bipartite: Some(true),
            runtime_seconds: 0.0125,
            graph_file: CageRecord::graph_file_name(3, 6, 3, 14),
        }
    }

    #[test]
    fn header_matches_field_order() {
        let mut buf = Vec::new();
        write_records(&mut buf, &[sample()], true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first, HEADER.join("\t"));
        assert_eq!(text.lines().nth(1).unwrap(), "3\t6\t3\t14\t14\t1\ttrue\ttrue\t0.0125\tcages_k3_g6_d3_n14.g6");
    }

    #[test]
    fn empty_fields_for_unknowns() {
        let r = CageRecord {
            order: None,
            count: None,
            all_bipartite: None,
            exhaustive: false,
            graph_file: String::new(),
            ..sample()
        };
        let mut buf = Vec::new();
        write_records(&mut buf, std::slice::from_ref(&r), true).unwrap();
        assert!(String::from_utf8(buf.clone()).unwrap().ends_with("3\t6\t3\t14\t\t\tfalse\t\t0.0125\t\n"));
        assert_eq!(read_records(&buf[..]).unwrap(), vec![r]);
    }

    #[test]
    fn validation() {
        assert!(sample().validate().is_ok());
        assert!(CageRecord { order: Some(12), ..sample() }.validate().is_err());
        assert!(CageRecord { count: Some(0), ..sample() }.validate().is_err());
        assert!(CageRecord { count: None, ..sample() }.validate().is_err());
        assert!(CageRecord { runtime_seconds: -1.0, ..sample() }.validate().is_err());
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(read_records("a\tb\n1\t2\n".as_bytes()).is_err());
    }

    fn record() -> impl Strategy<Value = CageRecord> {
        (
            (1u64..20, 3u64..20, 1u64..100, 0u64..1000),
            (proptest::option::of(0u64..500), proptest::option::of(1u64..100_000_000)),
            (any::<bool>(), proptest::option::of(any::<bool>())),
            0f64..1e7,
            "[a-z0-9_]{0,12}(\\.g6)?",
        )
            .prop_map(|((k, g, d, lb), (extra, count), (exhaustive, bip), rt, file)| CageRecord {
                k,
                g,
                d,
                lower_bound: lb,
                order: extra.map(|e| lb + e),
                count,
                exhaustive,
                all_bipartite: bip,
                runtime_seconds: rt,
                graph_file: file,
            })
    }

    proptest! {
        #[test]
        fn round_trip(recs in proptest::collection::vec(record(), 0..8)) {
            let mut buf = Vec::new();
            write_records(&mut buf, &recs, true).unwrap();
            prop_assert_eq!(read_records(&buf[..]).unwrap(), recs);
        }
    }
}
