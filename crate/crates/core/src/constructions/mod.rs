//! Explicit constructions of `(k;g,d)`-graphs.

pub mod cages;
pub mod chain;
pub mod extremal;
pub mod multigraph;
pub mod ratio;
pub mod repeatable;

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::metrics::girth;
use crate::INF;

pub use chain::{chain_construction, ChainResult};
pub use extremal::{build_3_4_extremal, build_3_5_extremal, build_k_3_3};
pub use multigraph::{complete_repeatable_to_kgd, realize_degree_sequence, repair_girth, Multigraph};
pub use ratio::{chain_ratio, ratio_bounds, RatioBound};
pub use repeatable::{double_repeatable, is_repeatable, repeatable_ratio, splice_out_repeatable, RepeatableBlock};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("result failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(ConstructionError::Precondition(msg.into()))
}

/// A shortest cycle through `r`, as a vertex list, if `r` lies on a cycle
/// of length `girth(g)`.
fn shortest_cycle_through(g: &Graph, r: usize, len: u32) -> Option<Vec<usize>> {
    let n = g.order();
    let mut dist = vec![INF; n];
    let mut parent = vec![usize::MAX; n];
    let mut q = VecDeque::new();
    dist[r] = 0;
    q.push_back(r);
    while let Some(x) = q.pop_front() {
        for y in g.neighbors(x) {
            if dist[y] == INF {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                q.push_back(y);
            } else if y != parent[x] && dist[x] + dist[y] + 1 == len {
                let walk = |mut z: usize| {
                    let mut p = vec![z];
                    while z != r {
                        z = parent[z];
                        p.push(z);
                    }
                    p
                };
                let (px, py) = (walk(x), walk(y));
                // the two tree paths must meet only at r
                if px[..px.len() - 1].iter().any(|v| py.contains(v)) {
                    continue;
                }
                let mut cyc: Vec<usize> = px.into_iter().rev().collect();
                cyc.extend(py[..py.len() - 1].iter());
                return Some(cyc);
            }
        }
    }
    None
}

/// All shortest cycles found by rooting a BFS at each vertex, one per root.
fn some_shortest_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let len = girth(g);
    if len == INF {
        return Vec::new();
    }
    (0..g.order()).filter_map(|r| shortest_cycle_through(g, r, len)).collect()
}

/// Some shortest cycle, rooted at the lowest vertex on one.
pub(crate) fn any_shortest_cycle(g: &Graph) -> Option<Vec<usize>> {
    let len = girth(g);
    if len == INF {
        return None;
    }
    (0..g.order()).find_map(|r| shortest_cycle_through(g, r, len))
}

/// First edge (in edge order) vertex-disjoint from some shortest cycle.
pub fn edge_avoiding_shortest_cycle(g: &Graph) -> Option<(usize, usize)> {
    for cyc in some_shortest_cycles(g) {
        if let Some(e) = g.edges().find(|(a, b)| !cyc.contains(a) && !cyc.contains(b)) {
            return Some(e);
        }
    }
    None
}

/// First vertex not on some shortest cycle.
pub fn vertex_avoiding_shortest_cycle(g: &Graph) -> Option<usize> {
    for cyc in some_shortest_cycles(g) {
        if let Some(v) = (0..g.order()).find(|v| !cyc.contains(v)) {
            return Some(v);
        }
    }
    None
}

/// Graph without vertex `x`; returns the graph and old-to-new index map
/// (`usize::MAX` for `x`).
pub(crate) fn delete_vertex(g: &Graph, x: usize) -> Result<(Graph, Vec<usize>)> {
    let keep: Vec<usize> = (0..g.order()).filter(|&v| v != x).collect();
    let mut map = vec![usize::MAX; g.order()];
    for (i, &v) in keep.iter().enumerate() {
        map[v] = i;
    }
    Ok((g.induced(&keep)?, map))
}

/// Copies `h` into `g`, returning the index offset.
pub(crate) fn append(g: &mut Graph, h: &Graph) -> Result<usize> {
    let off = g.add_vertices(h.order())?;
    for (a, b) in h.edges() {
        g.add_edge(a + off, b + off)?;
    }
    Ok(off)
}
