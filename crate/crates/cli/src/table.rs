//! Cage search for a triple, and the per-`d` result tables.

use std::time::{Duration, Instant};

use gdcage::bounds::{lower_bound, BoundsError};
use gdcage::generator::{find_cage, CageStatus, GenConfig, GenError};
use gdcage::Graph;
use thiserror::Error;

use crate::catalog::{CageRecord, Catalog, CatalogError};

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("output: {0}")]
    Csv(#[from] csv::Error),
}

/// Outcome of a cage search, in catalog form.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub record: CageRecord,
    pub graphs: Vec<Graph>,
    pub status: CageStatus,
}

impl Resolved {
    /// The order is known and the list of cages is complete.
    pub fn is_complete(&self) -> bool {
        self.record.order.is_some() && self.record.exhaustive
    }
}

/// Searches orders upward from the lower bound, up to `n_max`.
pub fn resolve_cage(k: u64, g: u64, d: u64, n_max: usize, cfg: &GenConfig) -> Result<Resolved, TableError> {
    let started = Instant::now();
    let search = find_cage(k as usize, g as usize, d as usize, n_max, cfg)?;
    let runtime_seconds = started.elapsed().as_secs_f64();
    let found = search.status == CageStatus::Found;
    let (order, count, all_bipartite, exhaustive, graphs) = match (&search.result, found) {
        (Some(r), true) => (
            Some(r.order as u64),
            Some(r.count() as u64),
            r.exhaustive.then(|| r.all_bipartite()),
            r.exhaustive,
            r.graphs.clone(),
        ),
        _ => (None, None, None, false, Vec::new()),
    };
    let graph_file = order.map_or(String::new(), |n| CageRecord::graph_file_name(k, g, d, n));
    Ok(Resolved {
        record: CageRecord {
            k,
            g,
            d,
            lower_bound: search.lower_bound,
            order,
            count,
            exhaustive,
            all_bipartite,
            runtime_seconds,
            graph_file,
        },
        graphs,
        status: search.status,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub k: u64,
    pub g: u64,
    pub d: u64,
    pub lower_bound: u64,
    pub order: Option<u64>,
    /// `None` unless the cage list is complete.
    pub count: Option<u64>,
    pub all_bipartite: Option<bool>,
    pub runtime_seconds: f64,
}

impl From<&CageRecord> for TableRow {
    fn from(r: &CageRecord) -> Self {
        TableRow {
            k: r.k,
            g: r.g,
            d: r.d,
            lower_bound: r.lower_bound,
            order: r.order,
            count: if r.exhaustive { r.count } else { None },
            all_bipartite: if r.exhaustive { r.all_bipartite } else { None },
            runtime_seconds: r.runtime_seconds,
        }
    }
}

pub struct TableOptions<'a> {
    pub catalog: Option<&'a Catalog>,
    pub cfg: GenConfig,
    pub max_order: usize,
}

/// One row per `d` in `d_from..=d_to`. Complete catalog entries are reused;
/// other rows are searched live under the shared budget in `opts.cfg` and
/// appended to the catalog. Rows the budget does not reach are unresolved.
pub fn compute_table(k: u64, g: u64, d_from: u64, d_to: u64, opts: &TableOptions) -> Result<Vec<TableRow>, TableError> {
    let deadline = opts.cfg.budget.map(|b| Instant::now() + b);
    let mut rows = Vec::new();
    for d in d_from..=d_to {
        let lb = lower_bound(k, g, d)?;
        if let Some(cat) = opts.catalog {
            if let Some(rec) = cat.lookup(k, g, d)? {
                if rec.order.is_some() && rec.exhaustive {
                    rows.push(TableRow::from(&rec));
                    continue;
                }
            }
        }
        let remaining = deadline.map(|t| t.saturating_duration_since(Instant::now()));
        if remaining == Some(Duration::ZERO) {
            rows.push(TableRow {
                k,
                g,
                d,
                lower_bound: lb,
                order: None,
                count: None,
                all_bipartite: None,
                runtime_seconds: 0.0,
            });
            continue;
        }
        let cfg = GenConfig { budget: remaining, ..opts.cfg.clone() };
        let res = resolve_cage(k, g, d, opts.max_order, &cfg)?;
        if let Some(cat) = opts.catalog {
            cat.append(&res.record, &res.graphs)?;
        }
        rows.push(TableRow::from(&res.record));
    }
    Ok(rows)
}

pub const COLUMNS: [&str; 8] =
    ["k", "g", "d", "M(k;g,d)", "n(k;g,d)", "Number of cages", "All bipartite", "runtime_seconds"];

const UNRESOLVED: &str = "unresolved";

fn cells(r: &TableRow) -> [String; 8] {
    let opt = |x: Option<u64>| x.map_or(UNRESOLVED.to_string(), |v| v.to_string());
    [
        r.k.to_string(),
        r.g.to_string(),
        r.d.to_string(),
        r.lower_bound.to_string(),
        opt(r.order),
        opt(r.count),
        match r.all_bipartite {
            // odd girth rules it out; left blank as in the published tables
            _ if r.g % 2 == 1 => String::new(),
            Some(true) => "Yes".into(),
            Some(false) => "No".into(),
            None => UNRESOLVED.into(),
        },
        format!("{:.3}", r.runtime_seconds),
    ]
}

pub fn render_csv(rows: &[TableRow]) -> Result<String, TableError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(cells(r))?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Right-aligned columns separated by two spaces.
pub fn render_text(rows: &[TableRow]) -> String {
    let body: Vec<[String; 8]> = rows.iter().map(cells).collect();
    let mut width: Vec<usize> = COLUMNS.iter().map(|c| c.chars().count()).collect();
    for row in &body {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cs: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cs.zip(&width).map(|(c, &w)| format!("{c:>w$}")).collect();
        parts.join("  ") + "\n"
    };
    let mut out = line(&mut COLUMNS.iter().copied());
    for row in &body {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}
