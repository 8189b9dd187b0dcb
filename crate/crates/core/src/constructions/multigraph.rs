//! Multigraphs with loops, and turning them into simple graphs of a given
//! girth by splicing in copies of a cage minus an edge.

use super::repeatable::{is_repeatable, RepeatableBlock};
use super::{any_shortest_cycle, append, edge_avoiding_shortest_cycle, precondition, ConstructionError, Result};
use crate::graph::Graph;
use crate::metrics::girth;
use crate::INF;

/// Undirected multigraph; a loop is stored as `(a, a)` and adds 2 to the
/// degree of `a`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.n && b < self.n, "vertex out of range");
        self.edges.push((a.min(b), a.max(b)));
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Edge instances that are loops or belong to a parallel class.
    fn bad_edges(&self) -> Vec<bool> {
        self.edges.iter().map(|&(a, b)| a == b || self.edges.iter().filter(|&&e| e == (a, b)).count() > 1).collect()
    }
}

/// Greedy realization of a degree sequence as a multigraph with loops: the
/// vertex with the largest remaining deficiency is joined to the next
/// largest, and a lone vertex left over takes loops.
pub fn realize_degree_sequence(degrees: &[usize]) -> Result<Multigraph> {
    if degrees.iter().sum::<usize>() % 2 == 1 {
        return precondition("degree sum is odd");
    }
    let mut rest = degrees.to_vec();
    let mut mg = Multigraph::new(degrees.len());
    loop {
        let mut order: Vec<usize> = (0..rest.len()).filter(|&v| rest[v] > 0).collect();
        // largest first, ties to the lower index
        order.sort_by_key(|&v| (std::cmp::Reverse(rest[v]), v));
        match order[..] {
            [] => break,
            [a] => {
                for _ in 0..rest[a] / 2 {
                    mg.add_edge(a, a);
                }
                rest[a] = 0;
            }
            [a, b, ..] => {
                mg.add_edge(a, b);
                rest[a] -= 1;
                rest[b] -= 1;
            }
        }
    }
    Ok(mg)
}

/// Splices copies of `template` minus an edge `pq` in place of edges.
struct Splicer {
    h_minus: Graph,
    p: usize,
    q: usize,
    /// Whether `h_minus` still contains a cycle of the template's girth.
    keeps_girth: bool,
}

impl Splicer {
    fn new(template: &Graph, k: usize, g: usize) -> Result<Self> {
        if template.order() == 0 || !template.is_regular(k) {
            return precondition(format!("template must be {k}-regular"));
        }
        if girth(template) != g as u32 {
            return precondition(format!("template must have girth {g}"));
        }
        let (keeps_girth, (p, q)) = match edge_avoiding_shortest_cycle(template) {
            Some(e) => (true, e),
            None => (false, template.edges().next().expect("template has edges")),
        };
        let mut h_minus = template.clone();
        h_minus.remove_edge(p, q)?;
        Ok(Splicer { h_minus, p, q, keeps_girth })
    }

    /// Joins `a` and `b` (possibly equal) through a fresh copy.
    fn splice(&self, gr: &mut Graph, a: usize, b: usize) -> Result<()> {
        let off = append(gr, &self.h_minus)?;
        gr.add_edge(a, off + self.p)?;
        gr.add_edge(b, off + self.q)?;
        Ok(())
    }
}

/// Replaces edges of the simple graph `gr` on cycles shorter than `g`, and
/// then fixes a girth above `g`. Only edges between vertices below `base`
/// are candidates; the rest belong to spliced copies.
fn settle_girth(gr: &mut Graph, base: usize, g: usize, sp: &Splicer, template: &Graph) -> Result<()> {
    loop {
        let cur = girth(gr);
        if cur == INF || cur >= g as u32 {
            break;
        }
        let cyc = any_shortest_cycle(gr).expect("a graph with finite girth has a shortest cycle");
        let len = cyc.len();
        let e = (0..len)
            .map(|i| (cyc[i], cyc[(i + 1) % len]))
            .find(|&(a, b)| a < base && b < base)
            .ok_or_else(|| ConstructionError::Verification("short cycle through a spliced copy".into()))?;
        gr.remove_edge(e.0, e.1)?;
        sp.splice(gr, e.0, e.1)?;
    }
    if girth(gr) != g as u32 {
        let plain = gr.edges().find(|&(a, b)| a < base && b < base);
        match plain {
            Some((a, b)) if sp.keeps_girth => {
                gr.remove_edge(a, b)?;
                sp.splice(gr, a, b)?;
            }
            _ => {
                append(gr, template)?;
            }
        }
    }
    Ok(())
}

/// Turns a `k`-regular multigraph into a simple `k`-regular graph of girth
/// exactly `g`. Every loop and every copy of a parallel edge is replaced by
/// a copy of `template - pq`, with `pq` avoiding a shortest cycle of the
/// `(k,g)`-graph `template` when possible; edges on cycles shorter than `g`
/// are replaced next.
///
/// When the result would have girth above `g` one more edge is replaced, or
/// a disjoint copy of `template` is added if `template - pq` has no
/// `g`-cycle left.
pub fn repair_girth(mg: &Multigraph, k: usize, g: usize, template: &Graph) -> Result<Graph> {
    if (0..mg.n).any(|v| mg.degree(v) != k) {
        return precondition(format!("multigraph must be {k}-regular"));
    }
    let sp = Splicer::new(template, k, g)?;
    let mut gr = Graph::new(mg.n)?;
    let bad = mg.bad_edges();
    for (&(a, b), &is_bad) in mg.edges.iter().zip(&bad) {
        if !is_bad {
            gr.add_edge(a, b)?;
        }
    }
    for (&(a, b), &is_bad) in mg.edges.iter().zip(&bad) {
        if is_bad {
            sp.splice(&mut gr, a, b)?;
        }
    }
    settle_girth(&mut gr, mg.n, g, &sp, template)?;
    Ok(gr)
}

/// Completes a repeatable block to a `k`-regular graph of girth `g` that
/// contains the block as an induced subgraph.
///
/// At each end the missing degrees of that boundary layer (plus one extra
/// vertex of degree `k` when their sum is odd) are realized by a
/// multigraph, and every edge of it is replaced by a copy of
/// `template - pq`.
pub fn complete_repeatable_to_kgd(block: &RepeatableBlock, template: &Graph) -> Result<Graph> {
    if !is_repeatable(block) {
        return precondition("block is not repeatable");
    }
    let (k, g) = (block.k, block.g);
    let sp = Splicer::new(template, k, g)?;
    let mut gr = block.graph.clone();
    if gr.max_degree() > k {
        return precondition("block has a vertex of degree above k");
    }
    let ends = [0, block.depth()];
    for &end in &ends[..if ends[0] == ends[1] { 1 } else { 2 }] {
        let mut verts: Vec<usize> = block.layers.layers[end].iter().copied().filter(|&v| gr.degree(v) < k).collect();
        let mut need: Vec<usize> = verts.iter().map(|&v| k - gr.degree(v)).collect();
        if need.iter().sum::<usize>() % 2 == 1 {
            if k % 2 == 0 {
                return precondition("odd boundary deficiency with even k");
            }
            verts.push(gr.add_vertices(1)?);
            need.push(k);
        }
        let mg = realize_degree_sequence(&need)?;
        for &(a, b) in &mg.edges {
            sp.splice(&mut gr, verts[a], verts[b])?;
        }
    }
    // every new edge is spliced, so no plain edge may be swapped out later
    settle_girth(&mut gr, 0, g, &sp, template)?;
    Ok(gr)
}
