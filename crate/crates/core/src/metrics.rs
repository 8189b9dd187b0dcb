//! BFS distances, girth, diameter and layer partitions.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, INF};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("empty source set")]
    EmptySource,
    #[error("source vertex {0} out of range")]
    SourceOutOfRange(usize),
}

/// Distances from `s`; unreachable vertices get [`INF`].
pub fn bfs_distances(g: &Graph, s: usize) -> Vec<u32> {
    multi_source_distances(g, std::slice::from_ref(&s))
}

fn multi_source_distances(g: &Graph, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![INF; g.order()];
    let mut q = VecDeque::new();
    for &s in sources {
        if dist[s] == INF {
            dist[s] = 0;
            q.push_back(s);
        }
    }
    while let Some(x) = q.pop_front() {
        for y in g.neighbors(x) {
            if dist[y] == INF {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

/// All-pairs distance matrix, row-major.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.order()).map(|s| bfs_distances(g, s)).collect()
}

/// Length of a shortest cycle, [`INF`] for forests.
pub fn girth(g: &Graph) -> u32 {
    let n = g.order();
    let mut best = INF;
    let mut dist = vec![INF; n];
    let mut parent = vec![usize::MAX; n];
    let mut q = VecDeque::new();
    for r in 0..n {
        dist.iter_mut().for_each(|d| *d = INF);
        dist[r] = 0;
        parent[r] = usize::MAX;
        q.clear();
        q.push_back(r);
        'bfs: while let Some(x) = q.pop_front() {
            // no cycle through r found below this depth can beat `best`
            if best != INF && 2 * dist[x] + 1 >= best {
                break;
            }
            for y in g.neighbors(x) {
                if dist[y] == INF {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                    if dist[y] == dist[x] {
                        break 'bfs;
                    }
                }
            }
        }
    }
    best
}

/// Largest distance between two vertices, [`INF`] if disconnected.
/// The empty graph has diameter 0.
pub fn diameter(g: &Graph) -> u32 {
    let mut best = 0;
    for s in 0..g.order() {
        let e = bfs_distances(g, s).into_iter().max().unwrap_or(0);
        if e == INF {
            return INF;
        }
        best = best.max(e);
    }
    best
}

pub fn is_connected(g: &Graph) -> bool {
    g.order() == 0 || bfs_distances(g, 0).iter().all(|&d| d != INF)
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.order();
    let mut side = vec![u8::MAX; n];
    let mut q = VecDeque::new();
    for r in 0..n {
        if side[r] != u8::MAX {
            continue;
        }
        side[r] = 0;
        q.push_back(r);
        while let Some(x) = q.pop_front() {
            for y in g.neighbors(x) {
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    q.push_back(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// Vertices grouped by distance from a source set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    /// `layers[i]` holds the vertices at distance `i`, ascending.
    pub layers: Vec<Vec<usize>>,
    pub unreachable: Vec<usize>,
}

impl LayerPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Index of the last layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    /// Layer index of every vertex, `usize::MAX` if unreachable.
    pub fn layer_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (i, l) in self.layers.iter().enumerate() {
            for &v in l {
                out[v] = i;
            }
        }
        out
    }
}

pub fn layers(g: &Graph, sources: &[usize]) -> Result<LayerPartition, MetricsError> {
    if sources.is_empty() {
        return Err(MetricsError::EmptySource);
    }
    if let Some(&s) = sources.iter().find(|&&s| s >= g.order()) {
        return Err(MetricsError::SourceOutOfRange(s));
    }
    let dist = multi_source_distances(g, sources);
    let depth = dist.iter().filter(|&&d| d != INF).max().copied().unwrap_or(0) as usize;
    let mut layers = vec![Vec::new(); depth + 1];
    let mut unreachable = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d == INF {
            unreachable.push(v);
        } else {
            layers[d as usize].push(v);
        }
    }
    Ok(LayerPartition { layers, unreachable })
}

/// `k`-regular with girth exactly `g` and diameter exactly `d`.
pub fn is_kgd_graph(graph: &Graph, k: usize, g: u32, d: u32) -> bool {
    graph.is_regular(k) && girth(graph) == g && diameter(graph) == d
}
