//! Search state: partial graph, distance matrix and the addable-edge set.

use crate::graph::{words_for, BitIter, Graph};
use crate::metrics::bfs_distances;
use crate::INF;

const UNREACHED: u16 = u16::MAX;

/// Built-in feasibility rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinRule {
    /// A vertex has fewer addable incident edges than its deficiency.
    VertexStarved,
    /// Total deficiency is odd.
    OddDeficiency,
    /// Total deficiency exceeds twice the number of addable edges.
    TooFewEdges,
}

impl BuiltinRule {
    pub const ALL: [BuiltinRule; 3] =
        [BuiltinRule::VertexStarved, BuiltinRule::OddDeficiency, BuiltinRule::TooFewEdges];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinRule::VertexStarved => "vertex-starved",
            BuiltinRule::OddDeficiency => "odd-deficiency",
            BuiltinRule::TooFewEdges => "too-few-edges",
        }
    }
}

/// Partial graph during generation together with its constraint data.
#[derive(Clone)]
pub struct SearchState {
    pub k: usize,
    pub girth: u32,
    pub diameter: u32,
    pub u: usize,
    pub v: usize,
    graph: Graph,
    n: usize,
    words: usize,
    dist: Vec<u16>,
    /// Symmetric bit rows of addable pairs.
    eadd: Vec<u64>,
}

impl SearchState {
    pub fn new(k: usize, girth: u32, diameter: u32, graph: Graph, u: usize, v: usize) -> Self {
        let n = graph.order();
        let words = words_for(n);
        let mut dist = vec![UNREACHED; n * n];
        for s in 0..n {
            for (t, &x) in bfs_distances(&graph, s).iter().enumerate() {
                if x != INF {
                    dist[s * n + t] = x as u16;
                }
            }
        }
        let mut st = SearchState { k, girth, diameter, u, v, graph, n, words, dist, eadd: vec![0; n * words] };
        for a in 0..n {
            for b in a + 1..n {
                if st.is_addable(a, b) {
                    st.set_pair(a, b);
                }
            }
        }
        st
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> u32 {
        match self.dist[a * self.n + b] {
            UNREACHED => INF,
            x => x as u32,
        }
    }

    #[inline]
    fn dsum(&self, a: usize, b: usize, c: usize, e: usize) -> u32 {
        // d(a,b) + 1 + d(c,e), saturating at INF
        let (x, y) = (self.dist[a * self.n + b], self.dist[c * self.n + e]);
        if x == UNREACHED || y == UNREACHED {
            INF
        } else {
            x as u32 + 1 + y as u32
        }
    }

    /// Whether `ab` may be added without violating degree, girth or
    /// diameter constraints.
    pub fn is_addable(&self, a: usize, b: usize) -> bool {
        let k = self.k;
        a != b
            && self.graph.degree(a) < k
            && self.graph.degree(b) < k
            && !self.graph.has_edge(a, b)
            && self.dist(a, b) >= self.girth - 1
            && self.dsum(self.u, a, b, self.v).min(self.dsum(self.u, b, a, self.v)) >= self.diameter
    }

    #[inline]
    fn set_pair(&mut self, a: usize, b: usize) {
        let w = self.words;
        self.eadd[a * w + b / 64] |= 1 << (b % 64);
        self.eadd[b * w + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    fn clear_pair(&mut self, a: usize, b: usize) {
        let w = self.words;
        self.eadd[a * w + b / 64] &= !(1 << (b % 64));
        self.eadd[b * w + a / 64] &= !(1 << (a % 64));
    }

    pub fn addable_row(&self, a: usize) -> &[u64] {
        &self.eadd[a * self.words..(a + 1) * self.words]
    }

    pub fn addable_partners(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.addable_row(a))
    }

    pub fn addable_count(&self, a: usize) -> usize {
        self.addable_row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains_addable(&self, a: usize, b: usize) -> bool {
        self.eadd[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Current addable set as sorted pairs `(a, b)`, `a < b`.
    pub fn valid_addable_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| self.addable_partners(a).filter(move |&b| b > a).map(move |b| (a, b))).collect()
    }

    /// The addable set recomputed from scratch, ignoring removals made by
    /// the search. Used to cross-check the incremental filter.
    pub fn recompute_addable_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.is_addable(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[inline]
    pub fn deficiency(&self, a: usize) -> usize {
        self.k - self.graph.degree(a)
    }

    pub fn total_deficiency(&self) -> usize {
        (0..self.n).map(|a| self.deficiency(a)).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_regular(self.k)
    }

    /// Deficient vertex with the fewest addable incident edges, ties to the
    /// smallest index.
    pub fn choose_active_vertex(&self) -> Option<usize> {
        (0..self.n).filter(|&a| self.deficiency(a) > 0).min_by_key(|&a| (self.addable_count(a), a))
    }

    /// First built-in rule showing that no completion exists.
    pub fn feasibility_prune(&self) -> Option<BuiltinRule> {
        self.feasibility_prune_among(&[])
    }

    /// Like [`feasibility_prune`](Self::feasibility_prune), skipping the
    /// rules in `disabled`.
    pub fn feasibility_prune_among(&self, disabled: &[BuiltinRule]) -> Option<BuiltinRule> {
        let on = |r: BuiltinRule| !disabled.contains(&r);
        let mut total_def = 0;
        let mut twice_edges = 0;
        for a in 0..self.n {
            let def = self.deficiency(a);
            let c = self.addable_count(a);
            if c < def && on(BuiltinRule::VertexStarved) {
                return Some(BuiltinRule::VertexStarved);
            }
            total_def += def;
            twice_edges += c;
        }
        if total_def % 2 == 1 && on(BuiltinRule::OddDeficiency) {
            return Some(BuiltinRule::OddDeficiency);
        }
        if total_def > twice_edges && on(BuiltinRule::TooFewEdges) {
            return Some(BuiltinRule::TooFewEdges);
        }
        None
    }

    /// Adds `ab`, updates distances and drops pairs that became invalid.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.graph.add_edge(a, b).expect("valid edge");
        let n = self.n;
        let (ra, rb) = (a * n, b * n);
        for x in 0..n {
            let xa = self.dist[x * n + a];
            let xb = self.dist[x * n + b];
            if xa == UNREACHED && xb == UNREACHED {
                continue;
            }
            for y in 0..n {
                let cur = self.dist[x * n + y];
                let mut best = cur as u32;
                if xa != UNREACHED && self.dist[rb + y] != UNREACHED {
                    best = best.min(xa as u32 + 1 + self.dist[rb + y] as u32);
                }
                if xb != UNREACHED && self.dist[ra + y] != UNREACHED {
                    best = best.min(xb as u32 + 1 + self.dist[ra + y] as u32);
                }
                if best < cur as u32 {
                    self.dist[x * n + y] = best as u16;
                }
            }
        }
        self.clear_pair(a, b);
        for x in 0..n {
            let mut i = 0;
            while i < self.words {
                let mut bits = self.eadd[x * self.words + i];
                // visit each pair once, from its smaller endpoint
                if i * 64 <= x {
                    let lo = x + 1 - i * 64;
                    bits &= if lo >= 64 { 0 } else { !0u64 << lo };
                }
                while bits != 0 {
                    let y = i * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if !self.is_addable(x, y) {
                        self.clear_pair(x, y);
                    }
                }
                i += 1;
            }
        }
    }

    /// Removes `ab` from the addable set only.
    pub fn remove_addable(&mut self, a: usize, b: usize) {
        self.clear_pair(a, b);
    }

    /// Restores graph, distances and addable set from `other` without
    /// reallocating.
    pub fn restore_from(&mut self, other: &SearchState) {
        self.graph.clone_from(&other.graph);
        self.dist.copy_from_slice(&other.dist);
        self.eadd.copy_from_slice(&other.eadd);
    }
}
