//! Exhaustive generation of `(k;g,d)`-graphs of a given order.
//!
//! The search starts from a tree every such graph contains (see
//! [`tree::make_start_tree`]), pads it with isolated vertices and adds edges
//! one at a time while keeping the girth, degree and diameter constraints
//! satisfiable.

pub mod search;
pub mod state;
pub mod tree;

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rustc_hash::{FxBuildHasher, FxHashMap};
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::canon::CanonicalKey;
use crate::graph::{Graph, GraphError, MAX_ORDER};
use crate::graph6;
use crate::metrics::is_bipartite;
use search::{Shared, SharedSeen, Worker};
pub use state::{BuiltinRule, SearchState};
pub use tree::{make_start_tree, StartTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Extra pruning rule applied after the built-in feasibility checks.
///
/// Must only return `true` for states that have no valid completion.
pub trait PruneRule: Send + Sync {
    fn name(&self) -> &str;
    fn should_prune(&self, state: &SearchState) -> bool;
}

#[derive(Clone)]
pub struct GenConfig {
    pub use_seen_set: bool,
    pub use_pruning: bool,
    /// Start from the two end balls and the bare path only.
    pub safe_start_tree: bool,
    pub workers: usize,
    /// Number of added edges at which the search is split into subproblems
    /// when `workers > 1`.
    pub split_depth: usize,
    /// Approximate memory for the seen-set; insertions stop once reached.
    pub seen_memory_bytes: usize,
    pub budget: Option<Duration>,
    pub extra_rules: Vec<Arc<dyn PruneRule>>,
    /// Built-in rules to skip while pruning is on.
    pub disabled_rules: Vec<BuiltinRule>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            use_seen_set: true,
            use_pruning: true,
            safe_start_tree: false,
            workers: 1,
            split_depth: 6,
            seen_memory_bytes: 2 << 30,
            budget: None,
            extra_rules: Vec::new(),
            disabled_rules: Vec::new(),
        }
    }
}

impl std::fmt::Debug for GenConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GenConfig")
            .field("use_seen_set", &self.use_seen_set)
            .field("use_pruning", &self.use_pruning)
            .field("safe_start_tree", &self.safe_start_tree)
            .field("workers", &self.workers)
            .field("split_depth", &self.split_depth)
            .field("seen_memory_bytes", &self.seen_memory_bytes)
            .field("budget", &self.budget)
            .field("extra_rules", &self.extra_rules.len())
            .field("disabled_rules", &self.disabled_rules)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub seen_hits: u64,
    /// Prune count per rule name, built-in rules first.
    pub prunes: Vec<(String, u64)>,
    /// The seen-set hit its memory cap and stopped growing.
    pub seen_full: bool,
    pub subproblems: usize,
}

impl SearchStats {
    fn new(n_rules: usize) -> Self {
        SearchStats { prunes: vec![(String::new(), 0); n_rules], ..Default::default() }
    }

    fn absorb(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.leaves += o.leaves;
        self.seen_hits += o.seen_hits;
        self.seen_full |= o.seen_full;
        self.subproblems += o.subproblems;
        if self.prunes.len() < o.prunes.len() {
            self.prunes.resize(o.prunes.len(), (String::new(), 0));
        }
        for (a, b) in self.prunes.iter_mut().zip(&o.prunes) {
            if a.0.is_empty() {
                a.0 = b.0.clone();
            }
            a.1 += b.1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenerationResult {
    pub k: usize,
    pub girth: usize,
    pub diameter: usize,
    pub order: usize,
    /// Canonically labeled graphs sorted by canonical key.
    pub graphs: Vec<Graph>,
    pub keys: Vec<CanonicalKey>,
    /// `false` if the search stopped early, in which case `graphs` is a
    /// subset of all such graphs.
    pub exhaustive: bool,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

impl GenerationResult {
    pub fn count(&self) -> usize {
        self.graphs.len()
    }

    pub fn all_bipartite(&self) -> bool {
        self.graphs.iter().all(is_bipartite)
    }

    pub fn graph6_lines(&self) -> Vec<String> {
        self.graphs.iter().map(graph6::encode).collect()
    }
}

fn check_params(k: usize, g: usize, d: usize) -> Result<u64, GenError> {
    Ok(bounds::lower_bound(k as u64, g as u64, d as u64)?)
}

/// All `(k;g,d)`-graphs on exactly `n` vertices, up to isomorphism.
pub fn generate_all(k: usize, g: usize, d: usize, n: usize, cfg: &GenConfig) -> Result<GenerationResult, GenError> {
    let deadline = cfg.budget.map(|b| Instant::now() + b);
    generate_until(k, g, d, n, cfg, deadline)
}

fn empty_result(k: usize, g: usize, d: usize, n: usize, started: Instant) -> GenerationResult {
    GenerationResult {
        k,
        girth: g,
        diameter: d,
        order: n,
        graphs: Vec::new(),
        keys: Vec::new(),
        exhaustive: true,
        stats: SearchStats::default(),
        elapsed: started.elapsed(),
    }
}

fn generate_until(
    k: usize,
    g: usize,
    d: usize,
    n: usize,
    cfg: &GenConfig,
    deadline: Option<Instant>,
) -> Result<GenerationResult, GenError> {
    let started = Instant::now();
    let lower = check_params(k, g, d)?;
    if n > MAX_ORDER {
        return Err(GraphError::Capacity(n).into());
    }
    if (n as u64) < lower || (n * k) % 2 == 1 {
        return Ok(empty_result(k, g, d, n, started));
    }
    let tree = make_start_tree(k, g, d, cfg.safe_start_tree)?;
    if tree.graph.order() > n {
        return Ok(empty_result(k, g, d, n, started));
    }
    let mut gr = tree.graph;
    gr.add_vertices(n - gr.order())?;
    let mut root = SearchState::new(k, g as u32, d as u32, gr, tree.u, tree.v);

    let names = search::rule_names(&cfg.extra_rules);
    let key_bytes = 8 * (3 + ((n + 2) * (n + 1) / 2).div_ceil(64)) + 48;
    let sh = Shared {
        cfg,
        seen_shared: None,
        seen_len: AtomicUsize::new(0),
        seen_cap: cfg.seen_memory_bytes / key_bytes,
        deadline,
        timed_out: AtomicBool::new(false),
    };
    let mut stats = SearchStats::new(names.len());
    let mut found = std::collections::BTreeMap::new();

    let root_pruned = cfg.use_pruning && root.feasibility_prune_among(&cfg.disabled_rules).is_some();
    if !root_pruned {
        if cfg.workers <= 1 || cfg.split_depth == 0 {
            let mut w = Worker::new(&sh, Some(FxHashMap::default()), names.len());
            w.dfs(&mut root, None, 0);
            stats.absorb(&w.stats);
            found.append(&mut w.found);
        } else {
            let mut w = Worker::new(&sh, Some(FxHashMap::default()), names.len());
            w.split_at = Some(cfg.split_depth);
            w.dfs(&mut root, None, 0);
            let subs = std::mem::take(&mut w.subproblems);
            stats.absorb(&w.stats);
            stats.subproblems = subs.len();
            found.append(&mut w.found);
            drop(w);

            let seen: SharedSeen = SharedSeen::with_hasher(FxBuildHasher);
            let sh2 = Shared {
                cfg,
                seen_shared: Some(&seen),
                seen_len: AtomicUsize::new(0),
                seen_cap: sh.seen_cap,
                deadline,
                timed_out: AtomicBool::new(sh.timed_out.load(Ordering::Relaxed)),
            };
            let next = AtomicUsize::new(0);
            let subs: Vec<Mutex<Option<(SearchState, Option<usize>)>>> =
                subs.into_iter().map(|s| Mutex::new(Some(s))).collect();
            let merged = Mutex::new((stats, found));
            std::thread::scope(|scope| {
                for _ in 0..cfg.workers {
                    scope.spawn(|| {
                        let mut w = Worker::new(&sh2, None, names.len());
                        loop {
                            let i = next.fetch_add(1, Ordering::Relaxed);
                            if i >= subs.len() {
                                break;
                            }
                            let (mut st, active) = subs[i].lock().unwrap().take().expect("taken once");
                            w.tag = i as u32 + 1;
                            w.dfs(&mut st, active, cfg.split_depth);
                        }
                        let mut m = merged.lock().unwrap();
                        m.0.absorb(&w.stats);
                        m.1.append(&mut w.found);
                    });
                }
            });
            (stats, found) = merged.into_inner().unwrap();
            if sh2.timed_out.load(Ordering::Relaxed) {
                sh.timed_out.store(true, Ordering::Relaxed);
            }
        }
    }
    for (p, name) in stats.prunes.iter_mut().zip(&names) {
        p.0 = name.clone();
    }
    let (keys, graphs): (Vec<_>, Vec<_>) = found.into_iter().unzip();
    Ok(GenerationResult {
        k,
        girth: g,
        diameter: d,
        order: n,
        graphs,
        keys,
        exhaustive: !sh.timed_out.load(Ordering::Relaxed),
        stats,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CageStatus {
    /// The smallest order with a graph; `result` lists them.
    Found,
    /// Every order up to `n_max` was searched exhaustively without success.
    Unresolved { n_max: usize },
    /// The budget ran out while searching `at_order`.
    BudgetExhausted { at_order: usize },
}

#[derive(Debug, Clone)]
pub struct CageSearch {
    pub status: CageStatus,
    pub lower_bound: u64,
    /// Result at the last order searched.
    pub result: Option<GenerationResult>,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

/// Scans orders upward from the lower bound until a `(k;g,d)`-graph exists.
pub fn find_cage(k: usize, g: usize, d: usize, n_max: usize, cfg: &GenConfig) -> Result<CageSearch, GenError> {
    let started = Instant::now();
    let deadline = cfg.budget.map(|b| started + b);
    let lower = check_params(k, g, d)?;
    let mut stats = SearchStats::default();
    let mut n = lower as usize;
    let mut last = None;
    while n <= n_max.min(MAX_ORDER) {
        if (n * k) % 2 == 1 {
            n += 1;
            continue;
        }
        let r = generate_until(k, g, d, n, cfg, deadline)?;
        stats.absorb(&r.stats);
        let status = if r.count() > 0 {
            Some(CageStatus::Found)
        } else if !r.exhaustive {
            Some(CageStatus::BudgetExhausted { at_order: n })
        } else {
            None
        };
        last = Some(r);
        if let Some(status) = status {
            return Ok(CageSearch { status, lower_bound: lower, result: last, stats, elapsed: started.elapsed() });
        }
        n += 1;
    }
    Ok(CageSearch {
        status: CageStatus::Unresolved { n_max },
        lower_bound: lower,
        result: last,
        stats,
        elapsed: started.elapsed(),
    })
}
