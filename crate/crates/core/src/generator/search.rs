//! Depth-first edge-addition search with a seen-set of partial graphs.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};

use super::state::{BuiltinRule, SearchState};
use super::{GenConfig, PruneRule, SearchStats};
use crate::canon::{canonical_key, canonical_key_with_pair, CanonicalKey};
use crate::graph::Graph;
use crate::metrics::{diameter, girth};

pub(crate) type SharedSeen = DashMap<CanonicalKey, u32, FxBuildHasher>;

/// State shared by all workers of one generation run.
///
/// Seen-set entries are tagged with the index of the subproblem that
/// inserted them. Subproblems are numbered in depth-first order and a node
/// is only pruned by an entry from the same or an earlier subproblem, so
/// every prune refers to a node that precedes it in the serial search order.
pub(crate) struct Shared<'a> {
    pub cfg: &'a GenConfig,
    pub seen_shared: Option<&'a SharedSeen>,
    pub seen_len: AtomicUsize,
    pub seen_cap: usize,
    pub deadline: Option<Instant>,
    pub timed_out: AtomicBool,
}

/// Per-worker search driver.
pub(crate) struct Worker<'a, 'b> {
    pub sh: &'b Shared<'a>,
    pub local: Option<FxHashMap<CanonicalKey, u32>>,
    pub tag: u32,
    pub stats: SearchStats,
    pub found: BTreeMap<CanonicalKey, Graph>,
    /// Collect subproblem roots at this many added edges instead of
    /// descending.
    pub split_at: Option<usize>,
    pub subproblems: Vec<(SearchState, Option<usize>)>,
    stopped: bool,
    /// Saved parent states, one slot per depth, reused across siblings.
    pool: Vec<Option<SearchState>>,
}

impl<'a, 'b> Worker<'a, 'b> {
    pub fn new(sh: &'b Shared<'a>, local: Option<FxHashMap<CanonicalKey, u32>>, n_rules: usize) -> Self {
        Worker {
            sh,
            local,
            tag: 0,
            stats: SearchStats::new(n_rules),
            found: BTreeMap::new(),
            split_at: None,
            subproblems: Vec::new(),
            stopped: false,
            pool: Vec::new(),
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        if self.stats.nodes % 1024 == 0 {
            if self.sh.timed_out.load(Ordering::Relaxed) {
                self.stopped = true;
            } else if let Some(dl) = self.sh.deadline {
                if Instant::now() >= dl {
                    self.sh.timed_out.store(true, Ordering::Relaxed);
                    self.stopped = true;
                }
            }
        }
        self.stopped
    }

    /// Returns `true` if an equivalent node was already expanded.
    fn seen_before(&mut self, st: &SearchState) -> bool {
        let key = canonical_key_with_pair(st.graph(), st.u, st.v);
        let tag = self.tag;
        let cap = self.sh.seen_cap;
        if let Some(map) = self.local.as_mut() {
            if let Some(&t) = map.get(&key) {
                return t <= tag;
            }
            if map.len() < cap {
                map.insert(key, tag);
            } else {
                self.stats.seen_full = true;
            }
            return false;
        }
        let map = self.sh.seen_shared.expect("seen-set configured");
        if let Some(mut e) = map.get_mut(&key) {
            if *e <= tag {
                return true;
            }
            *e = tag;
            return false;
        }
        if self.sh.seen_len.load(Ordering::Relaxed) < cap {
            match map.entry(key) {
                dashmap::Entry::Occupied(mut e) => {
                    if *e.get() <= tag {
                        return true;
                    }
                    *e.get_mut() = tag;
                }
                dashmap::Entry::Vacant(e) => {
                    e.insert(tag);
                    self.sh.seen_len.fetch_add(1, Ordering::Relaxed);
                }
            }
        } else {
            self.stats.seen_full = true;
        }
        false
    }

    fn prune(&mut self, st: &SearchState) -> bool {
        if !self.sh.cfg.use_pruning {
            return false;
        }
        if let Some(rule) = st.feasibility_prune_among(&self.sh.cfg.disabled_rules) {
            self.stats.prunes[rule.index()].1 += 1;
            return true;
        }
        for (i, rule) in self.sh.cfg.extra_rules.iter().enumerate() {
            if rule.should_prune(st) {
                self.stats.prunes[3 + i].1 += 1;
                return true;
            }
        }
        false
    }

    /// Expands `st`, the state after `depth` added edges.
    pub fn dfs(&mut self, st: &mut SearchState, active: Option<usize>, depth: usize) {
        self.stats.nodes += 1;
        if self.out_of_time() {
            return;
        }
        if self.split_at == Some(depth) {
            self.subproblems.push((st.clone(), active));
            return;
        }
        if self.sh.cfg.use_seen_set && self.seen_before(st) {
            self.stats.seen_hits += 1;
            return;
        }
        if st.is_complete() {
            self.check_leaf(st);
            return;
        }
        let x = match active {
            Some(x) if st.deficiency(x) > 0 => x,
            _ => match st.choose_active_vertex() {
                Some(x) => x,
                None => return,
            },
        };
        let partners: Vec<usize> = st.addable_partners(x).collect();
        if self.pool.len() <= depth {
            self.pool.resize_with(depth + 1, || None);
        }
        let mut saved = match self.pool[depth].take() {
            Some(mut s) => {
                s.restore_from(st);
                s
            }
            None => st.clone(),
        };
        for w in partners {
            st.add_edge(x, w);
            if !self.prune(st) {
                self.dfs(st, Some(x), depth + 1);
            }
            if self.stopped {
                return;
            }
            st.restore_from(&saved);
            st.remove_addable(x, w);
            saved.remove_addable(x, w);
            if st.addable_count(x) < st.deficiency(x) {
                break;
            }
            if self.sh.cfg.use_pruning && self.prune(st) {
                break;
            }
        }
        self.pool[depth] = Some(saved);
    }

    fn check_leaf(&mut self, st: &SearchState) {
        let gr = st.graph();
        self.stats.leaves += 1;
        if girth(gr) == st.girth && diameter(gr) == st.diameter {
            let key = canonical_key(gr);
            if !self.found.contains_key(&key) {
                let g = key.to_graph();
                self.found.insert(key, g);
            }
        }
    }
}

pub(crate) fn rule_names(extra: &[Arc<dyn PruneRule>]) -> Vec<String> {
    let mut v: Vec<String> = BuiltinRule::ALL.iter().map(|r| r.name().to_string()).collect();
    v.extend(extra.iter().map(|r| r.name().to_string()));
    v
}
