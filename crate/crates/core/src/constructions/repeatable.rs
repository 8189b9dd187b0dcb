//! Repeatable graphs: layered graphs whose first and last `g` layers match,
//! so copies can be glued end to end.

use num_rational::Ratio;

use super::{precondition, Result};
use crate::canon::find_isomorphism;
use crate::graph::Graph;
use crate::metrics::{girth, layers, LayerPartition};

/// A graph with the layer partition `N_0, ..., N_d` grown from `N_0`.
#[derive(Debug, Clone)]
pub struct RepeatableBlock {
    pub graph: Graph,
    pub layers: LayerPartition,
    pub k: usize,
    pub g: usize,
}

/// One of the six defining conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    Girth,
    InteriorDegree,
    FirstParity,
    LastParity,
    Length,
    BoundaryIsomorphism,
}

impl RepeatableBlock {
    /// Layers `graph` from `n0`. Every vertex must be reachable.
    pub fn new(graph: Graph, n0: &[usize], k: usize, g: usize) -> Result<Self> {
        let layers = layers(&graph, n0).map_err(|e| super::ConstructionError::Precondition(e.to_string()))?;
        if !layers.unreachable.is_empty() {
            return precondition("graph is not covered by the layers of N0");
        }
        Ok(RepeatableBlock { graph, layers, k, g })
    }

    /// `d`, the index of the last layer.
    pub fn depth(&self) -> usize {
        self.layers.depth()
    }

    pub fn n0(&self) -> &[usize] {
        &self.layers.layers[0]
    }

    /// Conditions that fail.
    pub fn violations(&self) -> Vec<Condition> {
        let (k, g, d) = (self.k, self.g, self.depth());
        let gr = &self.graph;
        let mut out = Vec::new();
        if girth(gr) < g as u32 {
            out.push(Condition::Girth);
        }
        let interior = self.layers.layers[1..d.max(1)].iter().flatten();
        if d >= 2 && interior.clone().any(|&v| gr.degree(v) != k) {
            out.push(Condition::InteriorDegree);
        }
        let deg_sum = |i: usize| -> usize { self.layers.layers[i].iter().map(|&v| gr.degree(v)).sum() };
        if k % 2 == 0 && deg_sum(0) % 2 == 1 {
            out.push(Condition::FirstParity);
        }
        if k % 2 == 0 && deg_sum(d) % 2 == 1 {
            out.push(Condition::LastParity);
        }
        if d + 1 < 2 * g {
            out.push(Condition::Length);
        }
        if d + 1 < g || self.boundary_map().is_none() {
            out.push(Condition::BoundaryIsomorphism);
        }
        out
    }

    /// A layer-respecting isomorphism from the first `g` layers onto the last
    /// `g` layers, as `(first, last)` vertex pairs in graph labels.
    pub fn boundary_map(&self) -> Option<Vec<(usize, usize)>> {
        let (g, d) = (self.g, self.depth());
        if d + 1 < g {
            return None;
        }
        let (head, hc) = self.slab(0, g);
        let (tail, tc) = self.slab(d + 1 - g, g);
        let ha = self.graph.induced(&head).expect("vertices in range");
        let ta = self.graph.induced(&tail).expect("vertices in range");
        let map = find_isomorphism(&ha, &hc, &ta, &tc)?;
        Some(head.iter().enumerate().map(|(i, &x)| (x, tail[map[i]])).collect())
    }

    /// Vertices of layers `from..from+len`, with their relative layer as color.
    fn slab(&self, from: usize, len: usize) -> (Vec<usize>, Vec<u32>) {
        let mut vs = Vec::new();
        let mut cs = Vec::new();
        for (i, l) in self.layers.layers[from..from + len].iter().enumerate() {
            vs.extend(l.iter().copied());
            cs.extend(std::iter::repeat(i as u32).take(l.len()));
        }
        (vs, cs)
    }
}

pub fn is_repeatable(block: &RepeatableBlock) -> bool {
    block.violations().is_empty()
}

fn require(block: &RepeatableBlock) -> Result<()> {
    let v = block.violations();
    if !v.is_empty() {
        return precondition(format!("block is not repeatable: {v:?}"));
    }
    Ok(())
}

/// `|N_0 ∪ ... ∪ N_{d-g}| / (d + 1 - g)`, an upper bound on the limiting
/// order-to-diameter ratio.
pub fn repeatable_ratio(block: &RepeatableBlock) -> Result<Ratio<i64>> {
    require(block)?;
    let (g, d) = (block.g, block.depth());
    let head: usize = block.layers.layers[..=d - g].iter().map(Vec::len).sum();
    Ok(Ratio::new(head as i64, (d + 1 - g) as i64))
}

/// Glues two copies: layer `l` of the first copy is identified with layer
/// `l + d - g + 1` of the second, along the boundary isomorphism. The
/// second copy comes first in the result, so `N_0` is the second copy's.
pub fn double_repeatable(block: &RepeatableBlock) -> Result<RepeatableBlock> {
    require(block)?;
    let map = block.boundary_map().expect("checked by require");
    let gr = &block.graph;
    let n = gr.order();
    let mut out = gr.clone();
    // first copy: glued vertices go to their images in the tail
    let mut to_out = vec![usize::MAX; n];
    for &(x, y) in &map {
        to_out[x] = y;
    }
    let fresh = to_out.iter().filter(|&&m| m == usize::MAX).count();
    let mut next = out.add_vertices(fresh)?;
    for m in to_out.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    for (a, b) in gr.edges() {
        out.add_edge(to_out[a], to_out[b])?;
    }
    RepeatableBlock::new(out, block.n0(), block.k, block.g)
}

/// Removes the repeatable block formed by layers `a..=b` of `host`: keeps
/// layers `0..=a+g-2` and `b..`, and joins layer `a+g-2` to layer `b` the way
/// layer `b-1` was, transported along the block's boundary isomorphism.
pub fn splice_out_repeatable(
    host: &Graph,
    host_layers: &LayerPartition,
    a: usize,
    b: usize,
    k: usize,
    g: usize,
) -> Result<Graph> {
    let d = host_layers.depth();
    if a > b || b > d || g < 2 {
        return precondition("need a <= b <= depth and g >= 2");
    }
    let lay = &host_layers.layers;
    let inner: Vec<usize> = lay[a..=b].iter().flatten().copied().collect();
    let sub = host.induced(&inner)?;
    let pos = |v: usize| inner.iter().position(|&x| x == v).expect("vertex in block");
    let n0: Vec<usize> = lay[a].iter().map(|&v| pos(v)).collect();
    let block = RepeatableBlock::new(sub, &n0, k, g)?;
    let expect: Vec<Vec<usize>> = lay[a..=b].iter().map(|l| l.iter().map(|&v| pos(v)).collect()).collect();
    let mut got = block.layers.layers.clone();
    got.iter_mut().for_each(|l| l.sort_unstable());
    if got != expect {
        return precondition("block layers differ from the host layers");
    }
    require(&block)?;
    // block-local tail vertex -> host head vertex
    let mut back = vec![usize::MAX; inner.len()];
    for (x, y) in block.boundary_map().expect("checked by require") {
        back[y] = inner[x];
    }

    let keep: Vec<usize> = lay[..=a + g - 2].iter().chain(&lay[b..]).flatten().copied().collect();
    let mut idx = vec![usize::MAX; host.order()];
    for (i, &v) in keep.iter().enumerate() {
        idx[v] = i;
    }
    let mut out = host.induced(&keep)?;
    for &x in &lay[b - 1] {
        for y in host.neighbors(x).filter(|y| lay[b].contains(y)) {
            let h = back[pos(x)];
            out.add_edge(idx[h], idx[y])?;
        }
    }
    Ok(out)
}
