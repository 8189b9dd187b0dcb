//! Extremal families: `(k;3,3)`, `(3;4,d)` and `(3;5,d)` graphs of the
//! smallest possible order.

use super::{append, precondition, ConstructionError, Result};
use crate::bounds;
use crate::graph::Graph;
use crate::metrics::is_kgd_graph;

/// `K_{k+1,k+1}` minus the perfect matching `u_i v_i` and the edges
/// `u_1 v_2`, `u_2 v_1`, plus `u_1 u_2` and `v_1 v_2`. Order `2(k+1)`.
pub fn build_k_3_3(k: usize) -> Result<Graph> {
    if k < 3 {
        return precondition("need k >= 3");
    }
    let m = k + 1;
    let mut g = Graph::new(2 * m)?;
    for i in 0..m {
        for j in 0..m {
            if i != j && (i, j) != (0, 1) && (i, j) != (1, 0) {
                g.add_edge(i, m + j)?;
            }
        }
    }
    g.add_edge(0, 1)?;
    g.add_edge(m, m + 1)?;
    verify(g, k, 3, 3)
}

/// A piece of a chain: a graph with the vertices that attach to the
/// previous and next piece.
struct Piece {
    graph: Graph,
    left: Option<usize>,
    right: Option<usize>,
}

impl Piece {
    fn end(n: usize, edges: &[(usize, usize)], port: usize) -> Piece {
        Piece { graph: Graph::from_edges(n, edges).expect("valid block"), left: None, right: Some(port) }
    }

    fn gadget(n: usize, edges: &[(usize, usize)], left: usize, right: usize) -> Piece {
        Piece { graph: Graph::from_edges(n, edges).expect("valid block"), left: Some(left), right: Some(right) }
    }

    /// The same end block facing the other way.
    fn mirrored(mut self) -> Piece {
        std::mem::swap(&mut self.left, &mut self.right);
        self
    }
}

/// Joins pieces in order by bridges `right_i -- left_{i+1}`. Returns the
/// graph and the bridges.
fn link(pieces: &[Piece]) -> Result<(Graph, Vec<(usize, usize)>)> {
    let mut g = Graph::new(0)?;
    let mut bridges = Vec::new();
    let mut prev: Option<usize> = None;
    for p in pieces {
        let off = append(&mut g, &p.graph)?;
        if let (Some(a), Some(l)) = (prev, p.left) {
            g.add_edge(a, off + l)?;
            bridges.push((a, off + l));
        }
        prev = p.right.map(|r| r + off);
    }
    Ok((g, bridges))
}

/// Deletes the bridge `xy` with both endpoints and joins the other two
/// neighbors of `x` to those of `y` (cubic graphs only).
fn merge_bridge(g: &Graph, x: usize, y: usize, cross: bool) -> Result<Graph> {
    let xs: Vec<usize> = g.neighbors(x).filter(|&z| z != y).collect();
    let mut ys: Vec<usize> = g.neighbors(y).filter(|&z| z != x).collect();
    if cross {
        ys.reverse();
    }
    let keep: Vec<usize> = (0..g.order()).filter(|&v| v != x && v != y).collect();
    let idx = |v: usize| keep.iter().position(|&w| w == v).expect("kept vertex");
    let mut out = g.induced(&keep)?;
    for (&a, &b) in xs.iter().zip(&ys) {
        out.add_edge(idx(a), idx(b))?;
    }
    Ok(out)
}

fn verify(g: Graph, k: usize, girth: u32, d: u32) -> Result<Graph> {
    if is_kgd_graph(&g, k, girth, d) {
        Ok(g)
    } else {
        Err(ConstructionError::Verification(format!("not a ({k};{girth},{d})-graph")))
    }
}

fn check_order(g: &Graph, expect: u64) -> Result<()> {
    if g.order() as u64 != expect {
        return Err(ConstructionError::Verification(format!("order {} instead of {expect}", g.order())));
    }
    Ok(())
}

// Cubic girth-4 pieces. Layer sizes from the root are in the names.

/// Root, three neighbors, three vertices; attaches at one of the latter,
/// at distance 2.
fn end_133() -> Piece {
    // u=0, a0..a2 = 1..3, b0..b2 = 4..6
    Piece::end(7, &[(0, 1), (0, 2), (0, 3), (2, 6), (3, 6), (1, 6), (3, 5), (5, 4), (1, 4), (2, 4)], 5)
}

/// Root, three, three, then two adjacent vertices; attaches at one of
/// them, at distance 3.
fn end_1332() -> Piece {
    // u=0, a1..a3 = 1..3, b1..b3 = 4..6, c1=7, c2=8
    Piece::end(
        9,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 5), (2, 6), (3, 4), (3, 6), (4, 7), (5, 8), (6, 8), (7, 8)],
        7,
    )
}

/// `K_{3,3}` minus an edge; with its bridge it adds 4 to the diameter.
fn gadget_1221() -> Piece {
    Piece::gadget(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)], 0, 5)
}

/// Two `K_{2,2}` layers joined by a matching; with its bridge it adds 6.
fn gadget_122221() -> Piece {
    Piece::gadget(
        10,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 5),
            (4, 6),
            (5, 7),
            (5, 8),
            (6, 7),
            (6, 8),
            (7, 9),
            (8, 9),
        ],
        0,
        9,
    )
}

/// A `(3;4,d)`-graph on `exact_order_3_4(d)` vertices, `d >= 9`: two end
/// blocks joined through a row of `K_{3,3}^-` gadgets.
pub fn build_3_4_extremal(d: usize) -> Result<Graph> {
    if d < 9 {
        return precondition("need d >= 9");
    }
    let rep = |m: usize| (0..m).map(|_| gadget_1221()).collect::<Vec<_>>();
    let mut pieces = Vec::new();
    match d % 4 {
        1 => {
            pieces.push(end_133());
            pieces.extend(rep((d - 5) / 4));
            pieces.push(end_133().mirrored());
        }
        2 => {
            pieces.push(end_1332());
            pieces.extend(rep((d - 6) / 4));
            pieces.push(end_133().mirrored());
        }
        3 => {
            pieces.push(end_1332());
            pieces.extend(rep((d - 7) / 4));
            pieces.push(end_1332().mirrored());
        }
        _ => {
            pieces.push(end_133());
            pieces.push(gadget_122221());
            pieces.extend(rep((d - 12) / 4));
            pieces.push(end_1332().mirrored());
        }
    }
    let (g, _) = link(&pieces)?;
    check_order(&g, bounds::exact_order_3_4(d as u64).map_err(|e| ConstructionError::Precondition(e.to_string()))?)?;
    verify(g, 3, 4, d as u32)
}

// Cubic girth-5 pieces.

/// Root, three, six, one: eccentricity 3 at the attachment vertex.
fn end_1361() -> Piece {
    // v=0; x0..x2 = 1..3; A..F = 4..9; z=10
    Piece::end(
        11,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 7),
            (3, 8),
            (3, 9),
            (8, 7),
            (5, 6),
            (8, 5),
            (9, 6),
            (7, 4),
            (10, 4),
            (10, 9),
        ],
        10,
    )
}

/// Root, three, six, two, one: eccentricity 4 at the attachment vertex.
fn end_13621() -> Piece {
    Piece::end(
        13,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (2, 7),
            (3, 8),
            (3, 9),
            (7, 4),
            (8, 5),
            (5, 10),
            (10, 6),
            (4, 11),
            (11, 9),
            (7, 8),
            (6, 9),
            (10, 12),
            (11, 12),
        ],
        12,
    )
}

/// Petersen graph minus an edge; with its bridge it adds 5.
fn gadget_petersen() -> Piece {
    Piece::gadget(
        10,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (2, 6),
            (5, 7),
            (7, 3),
            (4, 8),
            (8, 6),
            (6, 3),
            (5, 4),
            (7, 9),
            (8, 9),
        ],
        0,
        9,
    )
}

/// A `(3;5,d)`-graph on `exact_order_3_5(d)` vertices, `d >= 5`: end blocks
/// joined through a row of Petersen-minus-edge gadgets. For `d` of residue
/// 0 or 1 mod 5 the chain for `d + 2` is built and its last bridge merged,
/// which removes two vertices and shortens the diameter by 2.
pub fn build_3_5_extremal(d: usize) -> Result<Graph> {
    if d < 5 {
        return precondition("need d >= 5");
    }
    let rep = |m: usize| (0..m).map(|_| gadget_petersen()).collect::<Vec<_>>();
    let (first, m, last, merge) = match d % 5 {
        2 => (end_1361(), (d - 7) / 5, end_1361(), false),
        3 => (end_13621(), (d - 8) / 5, end_1361(), false),
        4 => (end_13621(), (d - 9) / 5, end_13621(), false),
        0 => (end_1361(), (d - 5) / 5, end_1361(), true),
        _ => (end_13621(), (d - 6) / 5, end_1361(), true),
    };
    let mut pieces = vec![first];
    pieces.extend(rep(m));
    pieces.push(last.mirrored());
    let (mut g, bridges) = link(&pieces)?;
    if merge {
        let &(x, y) = bridges.last().expect("at least one bridge");
        let straight = merge_bridge(&g, x, y, false)?;
        g = if is_kgd_graph(&straight, 3, 5, d as u32) { straight } else { merge_bridge(&g, x, y, true)? };
    }
    check_order(&g, bounds::exact_order_3_5(d as u64).map_err(|e| ConstructionError::Precondition(e.to_string()))?)?;
    verify(g, 3, 5, d as u32)
}
