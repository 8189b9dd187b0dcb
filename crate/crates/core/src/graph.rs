//! Dense bitset adjacency graphs.

use std::fmt;

use thiserror::Error;

/// Largest order a [`Graph`] can hold.
pub const MAX_ORDER: usize = 512;

/// Sentinel for an infinite distance, girth or diameter.
pub const INF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds capacity {MAX_ORDER}")]
    Capacity(usize),
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Simple undirected graph on vertices `0..n`, one bit row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    deg: Vec<u32>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::Capacity(n));
        }
        let words = words_for(n);
        Ok(Graph { n, words, rows: vec![0; n * words], deg: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.deg.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    /// Number of `u64` words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v] as usize
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.deg.iter().map(|&d| d as usize)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().all(|d| d == k)
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Adds edge `ab`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.has_edge(a, b) {
            return Ok(false);
        }
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
        self.deg[a] += 1;
        self.deg[b] += 1;
        Ok(true)
    }

    /// Removes edge `ab`. Returns `false` if it was absent.
    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<bool, GraphError> {
        self.check(a)?;
        self.check(b)?;
        if !self.has_edge(a, b) {
            return Ok(false);
        }
        self.rows[a * self.words + b / 64] &= !(1 << (b % 64));
        self.rows[b * self.words + a / 64] &= !(1 << (a % 64));
        self.deg[a] -= 1;
        self.deg[b] -= 1;
        Ok(true)
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        BitIter::new(self.row(v))
    }

    /// Edges `(a, b)` with `a < b`, ordered by `a` then `b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.neighbors(a).filter(move |&b| b > a).map(move |b| (a, b)))
    }

    /// Appends `m` isolated vertices and returns the index of the first one.
    pub fn add_vertices(&mut self, m: usize) -> Result<usize, GraphError> {
        let first = self.n;
        let n2 = self.n + m;
        if n2 > MAX_ORDER {
            return Err(GraphError::Capacity(n2));
        }
        let w2 = words_for(n2);
        if w2 != self.words {
            let mut rows = vec![0u64; n2 * w2];
            for v in 0..self.n {
                rows[v * w2..v * w2 + self.words].copy_from_slice(self.row(v));
            }
            self.rows = rows;
            self.words = w2;
        } else {
            self.rows.resize(n2 * w2, 0);
        }
        self.deg.resize(n2, 0);
        self.n = n2;
        Ok(first)
    }

    /// Graph induced on `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[usize]) -> Result<Graph, GraphError> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            self.check(v)?;
            pos[v] = i;
        }
        let mut h = Graph::new(vs.len())?;
        for (i, &v) in vs.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = pos[w];
                if j != usize::MAX && j > i {
                    h.add_edge(i, j)?;
                }
            }
        }
        Ok(h)
    }

    /// Graph with vertex `v` mapped to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut h = Graph::new(self.n).expect("same order");
        for (a, b) in self.edges() {
            h.add_edge(perm[a], perm[b]).expect("perm in range");
        }
        h
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut h = self.clone();
        let off = h.add_vertices(other.order())?;
        for (a, b) in other.edges() {
            h.add_edge(a + off, b + off)?;
        }
        Ok(h)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::encode(self))
    }
}

/// Iterator over set bit positions of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        BitIter { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
