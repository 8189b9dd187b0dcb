//! Canonical labeling by individualization and refinement.
//!
//! The search refines an ordered partition to an equitable one, then
//! individualizes each vertex of the first largest non-singleton cell in
//! turn. Leaves are compared by (refinement trace, relabeled adjacency) and
//! the largest wins. Automorphisms found at equal leaves prune the tree.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::graph::{words_for, Graph};

/// Isomorphism-invariant key: order, color classes and the relabeled upper
/// triangle.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u64]>);

impl CanonicalKey {
    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn words(&self) -> &[u64] {
        &self.0
    }

    fn matrix_offset(&self) -> usize {
        2 + self.0[1] as usize
    }

    /// The canonically relabeled graph encoded by this key.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let bits = &self.0[self.matrix_offset()..];
        let mut g = Graph::new(n).expect("key order within capacity");
        let mut p = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[p / 64] >> (63 - p % 64) & 1 == 1 {
                    g.add_edge(i, j).expect("in range");
                }
                p += 1;
            }
        }
        g
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|w| format!("{w:016x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// A canonical labeling: `lab[i]` is the vertex placed at position `i`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub lab: Vec<usize>,
    pub key: CanonicalKey,
}

impl Labeling {
    /// Vertex to canonical position.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.lab.len()];
        for (i, &v) in self.lab.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    canonical_labeling(g, None).key
}

/// Canonically relabeled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let l = canonical_labeling(g, None);
    g.relabel(&l.positions())
}

/// Key of `g` with the unordered pair `{u, v}` distinguished.
///
/// A pendant vertex is hung on each of `u` and `v`, and the attachment
/// points and pendants get their own colors.
pub fn canonical_key_with_pair(g: &Graph, u: usize, v: usize) -> CanonicalKey {
    assert!(u != v && u < g.order() && v < g.order(), "bad pair ({u}, {v})");
    let n = g.order();
    let mut h = g.clone();
    h.add_vertices(2).expect("pendants exceed capacity");
    h.add_edge(u, n).expect("in range");
    h.add_edge(v, n + 1).expect("in range");
    let mut colors = vec![0u32; n + 2];
    colors[u] = 1;
    colors[v] = 1;
    colors[n] = 2;
    colors[n + 1] = 2;
    canonical_labeling(&h, Some(&colors)).key
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_key(a) == canonical_key(b)
}

/// A color-preserving isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Graph, ca: &[u32], b: &Graph, cb: &[u32]) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let la = canonical_labeling(a, Some(ca));
    let lb = canonical_labeling(b, Some(cb));
    if la.key != lb.key {
        return None;
    }
    let mut map = vec![0; a.order()];
    for (i, &x) in la.lab.iter().enumerate() {
        map[x] = lb.lab[i];
    }
    Some(map)
}

/// Canonical labeling of `g`, optionally respecting a vertex coloring.
/// Color classes are ordered by color value.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Labeling {
    let n = g.order();
    let mut class_sizes: Vec<(u32, u32)> = Vec::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    if let Some(c) = colors {
        assert_eq!(c.len(), n, "one color per vertex");
        order.sort_by_key(|&v| c[v as usize]);
        for &v in &order {
            let col = c[v as usize];
            match class_sizes.last_mut() {
                Some((cc, sz)) if *cc == col => *sz += 1,
                _ => class_sizes.push((col, 1)),
            }
        }
    } else if n > 0 {
        class_sizes.push((0, n as u32));
    }
    let mut s = Searcher::new(g);
    let mut p = Partition::from_classes(order, &class_sizes);
    let starts: Vec<u32> = p.cell_starts().collect();
    s.refine(&mut p, &starts);
    s.node(&p);
    let lab: Vec<usize> = match &s.best {
        Some(b) => b.lab.iter().map(|&v| v as usize).collect(),
        None => Vec::new(),
    };
    let key = s.make_key(&lab, &class_sizes);
    Labeling { lab, key }
}

#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell containing each position.
    cs: Vec<u32>,
    /// Cell length, valid at cell starts.
    len: Vec<u32>,
    ncells: usize,
}

impl Partition {
    fn from_classes(lab: Vec<u32>, classes: &[(u32, u32)]) -> Self {
        let n = lab.len();
        let mut pos = vec![0; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut cs = vec![0; n];
        let mut len = vec![0; n];
        let mut s = 0u32;
        for &(_, sz) in classes {
            len[s as usize] = sz;
            for i in s..s + sz {
                cs[i as usize] = s;
            }
            s += sz;
        }
        Partition { lab, pos, cs, len, ncells: classes.len() }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let mut i = 0usize;
        std::iter::from_fn(move || {
            if i >= self.n() {
                return None;
            }
            let s = i as u32;
            i += self.len[i] as usize;
            Some(s)
        })
    }

    fn is_discrete(&self) -> bool {
        self.ncells == self.n()
    }

    /// First largest non-singleton cell.
    fn target_cell(&self) -> u32 {
        let mut best = (0u32, 0u32);
        for s in self.cell_starts() {
            let l = self.len[s as usize];
            if l > best.1 {
                best = (s, l);
            }
        }
        best.0
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Leaf {
    lab: Vec<u32>,
    cert: Vec<u64>,
    path: Vec<u32>,
    traces: Vec<u64>,
}

struct Searcher<'a> {
    g: &'a Graph,
    words: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    path: Vec<u32>,
    traces: Vec<u64>,
    autos: Vec<Vec<u32>>,
    // scratch
    cnt: Vec<u32>,
    touched: Vec<u32>,
    cells: Vec<u32>,
    cell_mark: Vec<bool>,
    queue: VecDeque<u32>,
    inq: Vec<bool>,
}

/// Generators kept for orbit pruning; further automorphisms only drive jumps.
const MAX_AUTOS: usize = 64;

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.order();
        Searcher {
            g,
            words: words_for(n),
            first: None,
            best: None,
            path: Vec::new(),
            traces: Vec::new(),
            autos: Vec::new(),
            cnt: vec![0; n],
            touched: Vec::new(),
            cells: Vec::new(),
            cell_mark: vec![false; n],
            queue: VecDeque::new(),
            inq: vec![false; n],
        }
    }

    /// Refines `p` to the coarsest equitable refinement, starting from the
    /// given splitter cells. Returns a hash of the refinement trace.
    fn refine(&mut self, p: &mut Partition, splitters: &[u32]) -> u64 {
        let mut trace = 0u64;
        self.queue.clear();
        for &s in splitters {
            self.queue.push_back(s);
            self.inq[s as usize] = true;
        }
        while let Some(ws) = self.queue.pop_front() {
            self.inq[ws as usize] = false;
            if p.is_discrete() {
                continue;
            }
            // count neighbors in the splitter, touching only adjacent vertices
            let wl = p.len[ws as usize];
            self.touched.clear();
            for i in ws..ws + wl {
                let v = p.lab[i as usize] as usize;
                for x in self.g.neighbors(v) {
                    if self.cnt[x] == 0 {
                        self.touched.push(x as u32);
                    }
                    self.cnt[x] += 1;
                }
            }
            self.cells.clear();
            for &x in &self.touched {
                let c = p.cs[p.pos[x as usize] as usize];
                if p.len[c as usize] > 1 && !self.cell_mark[c as usize] {
                    self.cell_mark[c as usize] = true;
                    self.cells.push(c);
                }
            }
            self.cells.sort_unstable();
            for ci in 0..self.cells.len() {
                let s = self.cells[ci] as usize;
                self.cell_mark[s] = false;
                let l = p.len[s] as usize;
                let c0 = self.cnt[p.lab[s] as usize];
                if p.lab[s..s + l].iter().any(|&v| self.cnt[v as usize] != c0) {
                    trace = self.split(p, s, l, trace);
                }
            }
            for &x in &self.touched {
                self.cnt[x as usize] = 0;
            }
        }
        mix(trace, p.ncells as u64)
    }

    fn split(&mut self, p: &mut Partition, s: usize, l: usize, mut trace: u64) -> u64 {
        let cnt = &self.cnt;
        p.lab[s..s + l].sort_unstable_by_key(|&v| cnt[v as usize]);
        let was_queued = self.inq[s];
        // runs of equal counts become the new cells
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut i = s;
        while i < s + l {
            let c = cnt[p.lab[i] as usize];
            let mut j = i + 1;
            while j < s + l && cnt[p.lab[j] as usize] == c {
                j += 1;
            }
            runs.push((i, j - i));
            trace = mix(trace, (s as u64) << 40 | (c as u64) << 20 | (j - i) as u64);
            i = j;
        }
        for &(rs, rl) in &runs {
            p.len[rs] = rl as u32;
            for k in rs..rs + rl {
                p.cs[k] = rs as u32;
                p.pos[p.lab[k] as usize] = k as u32;
            }
        }
        p.ncells += runs.len() - 1;
        let skip = if was_queued {
            runs[0].0
        } else {
            let mut big = runs[0];
            for &r in &runs[1..] {
                if r.1 > big.1 {
                    big = r;
                }
            }
            big.0
        };
        for &(rs, _) in &runs {
            if rs != skip && !self.inq[rs] {
                self.inq[rs] = true;
                self.queue.push_back(rs as u32);
            }
        }
        trace
    }

    fn individualize(&mut self, p: &mut Partition, v: u32) -> u64 {
        let i = p.pos[v as usize] as usize;
        let s = p.cs[i] as usize;
        let l = p.len[s] as usize;
        let other = p.lab[s];
        p.lab.swap(s, i);
        p.pos[v as usize] = s as u32;
        p.pos[other as usize] = i as u32;
        p.len[s] = 1;
        p.len[s + 1] = (l - 1) as u32;
        for k in s + 1..s + l {
            p.cs[k] = (s + 1) as u32;
        }
        p.ncells += 1;
        self.refine(p, &[s as u32])
    }

    fn certificate(&self, p: &Partition) -> Vec<u64> {
        let n = p.n();
        let w = self.words;
        let mut cert = vec![0u64; n * w];
        for i in 0..n {
            let v = p.lab[i] as usize;
            for x in self.g.neighbors(v) {
                let j = p.pos[x] as usize;
                cert[i * w + j / 64] |= 1 << (63 - j % 64);
            }
        }
        cert
    }

    fn trace_cmp(&self) -> Ordering {
        match &self.best {
            None => Ordering::Equal,
            Some(b) => {
                let m = self.traces.len().min(b.traces.len());
                match self.traces[..m].cmp(&b.traces[..m]) {
                    Ordering::Equal if self.traces.len() > b.traces.len() => Ordering::Greater,
                    o => o,
                }
            }
        }
    }

    fn node(&mut self, p: &Partition) -> Option<usize> {
        if p.is_discrete() {
            return self.leaf(p);
        }
        let level = self.path.len();
        let t = p.target_cell() as usize;
        let mut cell: Vec<u32> = p.lab[t..t + p.len[t] as usize].to_vec();
        cell.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut orbits: Option<(usize, Vec<u32>)> = None;
        for &w in &cell {
            if !explored.is_empty() && !self.autos.is_empty() {
                if orbits.as_ref().map(|o| o.0) != Some(self.autos.len()) {
                    orbits = Some((self.autos.len(), self.stabilizer_orbits(level)));
                }
                let orb = &orbits.as_ref().unwrap().1;
                if explored.iter().any(|&e| orb[e as usize] == orb[w as usize]) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = p.clone();
            let tr = self.individualize(&mut child, w);
            self.path.push(w);
            self.traces.push(tr);
            let res = if self.trace_cmp() == Ordering::Less { None } else { self.node(&child) };
            self.path.pop();
            self.traces.pop();
            if let Some(target) = res {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Orbit representatives under stored automorphisms fixing the current
    /// path prefix of length `level` pointwise.
    fn stabilizer_orbits(&self, level: usize) -> Vec<u32> {
        let n = self.g.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let prefix = &self.path[..level];
        for a in &self.autos {
            if prefix.iter().all(|&v| a[v as usize] == v) {
                for x in 0..n as u32 {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x as usize]));
                    if rx != ry {
                        parent[rx.max(ry) as usize] = rx.min(ry);
                    }
                }
            }
        }
        (0..n as u32).map(|x| find(&mut parent, x)).collect()
    }

    fn record_auto(&mut self, from: &[u32], to: &[u32]) {
        if self.autos.len() >= MAX_AUTOS {
            return;
        }
        let mut a = vec![0u32; from.len()];
        for (i, &x) in from.iter().enumerate() {
            a[x as usize] = to[i];
        }
        self.autos.push(a);
    }

    fn leaf(&mut self, p: &Partition) -> Option<usize> {
        let cert = self.certificate(p);
        let make =
            |s: &Self| Leaf { lab: p.lab.clone(), cert: cert.clone(), path: s.path.clone(), traces: s.traces.clone() };
        let Some(first) = &self.first else {
            self.first = Some(make(self));
            self.best = Some(make(self));
            return None;
        };
        if first.cert == cert {
            let (flab, fpath) = (first.lab.clone(), first.path.clone());
            self.record_auto(&flab, &p.lab);
            return Some(divergence(&self.path, &fpath));
        }
        let best = self.best.as_ref().unwrap();
        let ord = match self.trace_cmp() {
            Ordering::Equal => cert.cmp(&best.cert),
            o => o,
        };
        match ord {
            Ordering::Greater => {
                self.best = Some(make(self));
                None
            }
            Ordering::Equal => {
                let (blab, bpath) = (best.lab.clone(), best.path.clone());
                self.record_auto(&blab, &p.lab);
                Some(divergence(&self.path, &bpath))
            }
            Ordering::Less => None,
        }
    }

    fn make_key(&self, lab: &[usize], classes: &[(u32, u32)]) -> CanonicalKey {
        let n = lab.len();
        let mut pos = vec![0usize; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let nbits = n * n.saturating_sub(1) / 2;
        let off = 2 + classes.len();
        let mut w = vec![0u64; off + nbits.div_ceil(64)];
        w[0] = n as u64;
        w[1] = classes.len() as u64;
        for (i, &(c, sz)) in classes.iter().enumerate() {
            w[2 + i] = (c as u64) << 32 | sz as u64;
        }
        for (a, b) in self.g.edges() {
            let (i, j) = if pos[a] < pos[b] { (pos[a], pos[b]) } else { (pos[b], pos[a]) };
            // row-major index of (i, j) in the strict upper triangle
            let p = i * (2 * n - i - 1) / 2 + (j - i - 1);
            w[off + p / 64] |= 1 << (63 - p % 64);
        }
        CanonicalKey(w.into_boxed_slice())
    }
}

fn divergence(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).position(|(x, y)| x != y).unwrap_or(a.len().min(b.len()))
}
