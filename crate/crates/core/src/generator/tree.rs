//! Start trees: a `u`-`v` path of length `d` decorated with Moore-tree balls
//! that every `(k;g,d)`-graph contains around any diametral path.

use crate::bounds::{self, BoundsError};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone)]
pub struct StartTree {
    pub graph: Graph,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Center {
    /// Path vertex index.
    Vertex(usize),
    /// Path edge `(i, i + 1)`.
    Edge(usize),
}

/// A ball of the given radius around a center on the path.
#[derive(Debug, Clone, Copy)]
struct Part {
    center: Center,
    radius: usize,
}

fn layout(g: usize, d: usize, safe: bool) -> Vec<Part> {
    let t = g / 2;
    if g % 2 == 0 && d + 1 == g && g >= 4 && !safe {
        return layout(g - 1, d, false);
    }
    let mut parts = Vec::new();
    let ball = |q: usize, len: usize| -> Option<Part> {
        // ball covering path layers q+1 ..= q+len
        match len {
            0 => None,
            l if l % 2 == 1 => Some(Part { center: Center::Vertex(q + (l + 1) / 2), radius: (l - 1) / 2 }),
            l => Some(Part { center: Center::Edge(q + l / 2), radius: l / 2 - 1 }),
        }
    };
    // u side covers layers 0..=t
    parts.push(if g % 2 == 1 {
        Part { center: Center::Vertex(0), radius: t }
    } else {
        Part { center: Center::Edge(0), radius: t - 1 }
    });
    if d <= 2 * t {
        if d > t {
            parts.push(Part { center: Center::Vertex(d), radius: d - t - 1 });
        }
        return parts;
    }
    if !safe {
        let rest = d - 2 * t - 1;
        let (r, s) = (rest / g, rest % g);
        for j in 0..r {
            parts.extend(ball(t + j * g, g));
        }
        parts.extend(ball(t + r * g, s));
    }
    parts.push(if g % 2 == 1 {
        Part { center: Center::Vertex(d), radius: t }
    } else {
        Part { center: Center::Edge(d - 1), radius: t - 1 }
    });
    parts
}

/// Builds the start tree for `(k;g,d)`. Path vertex `i` gets label `i`, so
/// `u = 0` and `v = d`.
///
/// With `safe` set only the two end balls and the bare path are used.
pub fn make_start_tree(k: usize, g: usize, d: usize, safe: bool) -> Result<StartTree, BoundsError> {
    bounds::lower_bound(k as u64, g as u64, d as u64)?;
    build(k, d, &layout(g, d, safe)).map_err(|e| BoundsError::Invalid(e.to_string()))
}

fn build(k: usize, d: usize, parts: &[Part]) -> Result<StartTree, GraphError> {
    let mut gr = Graph::new(d + 1)?;
    for i in 0..d {
        gr.add_edge(i, i + 1)?;
    }
    for part in parts {
        // (vertex, distance from center); path vertices inside the ball first
        let mut frontier: Vec<(usize, usize)> = Vec::new();
        match part.center {
            Center::Vertex(c) => {
                frontier.push((c, 0));
                for s in 1..=part.radius {
                    if c >= s {
                        frontier.push((c - s, s));
                    }
                    if c + s <= d {
                        frontier.push((c + s, s));
                    }
                }
            }
            Center::Edge(c) => {
                frontier.push((c, 0));
                frontier.push((c + 1, 0));
                for s in 1..=part.radius {
                    if c >= s {
                        frontier.push((c - s, s));
                    }
                    if c + 1 + s <= d {
                        frontier.push((c + 1 + s, s));
                    }
                }
            }
        }
        frontier.sort_by_key(|&(_, s)| s);
        let mut i = 0;
        while i < frontier.len() {
            let (x, s) = frontier[i];
            i += 1;
            if s >= part.radius {
                continue;
            }
            while gr.degree(x) < k {
                let y = gr.add_vertices(1)?;
                gr.add_edge(x, y)?;
                frontier.push((y, s + 1));
            }
        }
    }
    Ok(StartTree { graph: gr, u: 0, v: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::lower_bound_prime;
    use crate::metrics::{bfs_distances, girth};
    use crate::INF;

    #[test]
    fn orders_of_examples() {
        assert_eq!(make_start_tree(3, 5, 5, false).unwrap().graph.order(), 20);
        assert_eq!(make_start_tree(3, 6, 5, false).unwrap().graph.order(), 20);
        assert_eq!(make_start_tree(3, 4, 2, false).unwrap().graph.order(), 6);
    }

    #[test]
    fn trees_match_m_prime() {
        for k in 3..=5 {
            for g in 3..=8 {
                for d in g / 2..=3 * g {
                    if lower_bound_prime(k as u64, g as u64, d as u64).unwrap() > 512 {
                        continue;
                    }
                    let st = make_start_tree(k, g, d, false).unwrap();
                    let tr = &st.graph;
                    assert_eq!(girth(tr), INF, "k={k} g={g} d={d}");
                    assert_eq!(tr.size() + 1, tr.order());
                    assert!(tr.degrees().all(|x| x <= k));
                    assert_eq!(bfs_distances(tr, st.u)[st.v], d as u32);
                    let expect = if g % 2 == 0 && d + 1 == g && g >= 4 {
                        lower_bound_prime(k as u64, g as u64 - 1, d as u64).unwrap()
                    } else {
                        lower_bound_prime(k as u64, g as u64, d as u64).unwrap()
                    };
                    assert_eq!(tr.order() as u64, expect, "k={k} g={g} d={d}");
                    let safe = make_start_tree(k, g, d, true).unwrap();
                    assert!(safe.graph.order() <= tr.order() || g % 2 == 0 && d + 1 == g);
                }
            }
        }
    }
}
