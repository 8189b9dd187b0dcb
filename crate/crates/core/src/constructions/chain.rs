//! Chains of cage copies capped by two end pieces, giving `(k;g,d)`-graphs
//! whose order grows linearly in `d`.

use super::{
    delete_vertex, edge_avoiding_shortest_cycle, precondition, vertex_avoiding_shortest_cycle, ConstructionError,
    Result,
};
use crate::graph::Graph;
use crate::metrics::{diameter, girth};

#[derive(Debug, Clone)]
pub struct ChainResult {
    pub graph: Graph,
    pub order: usize,
    pub diameter: u32,
    pub copies: usize,
}

/// Builds a graph by gluing pieces together. Glued vertices are shared,
/// all others get fresh indices.
struct Assembler {
    g: Graph,
}

impl Assembler {
    fn new() -> Self {
        Assembler { g: Graph::new(0).expect("empty graph") }
    }

    /// Places `h`, identifying each `(local, global)` pair in `glue`.
    /// Returns the local-to-global map.
    fn place(&mut self, h: &Graph, glue: &[(usize, usize)]) -> Result<Vec<usize>> {
        let mut map = vec![usize::MAX; h.order()];
        for &(l, gl) in glue {
            map[l] = gl;
        }
        let fresh = map.iter().filter(|&&m| m == usize::MAX).count();
        let mut next = self.g.add_vertices(fresh)?;
        for m in map.iter_mut().filter(|m| **m == usize::MAX) {
            *m = next;
            next += 1;
        }
        for (a, b) in h.edges() {
            if !self.g.add_edge(map[a], map[b])? {
                return Err(ConstructionError::Verification(format!("gluing doubled edge {}-{}", map[a], map[b])));
            }
        }
        Ok(map)
    }

    fn edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.g.add_edge(a, b)?;
        Ok(())
    }
}

fn check_regular(h: &Graph, k: usize, what: &str) -> Result<()> {
    if h.order() == 0 || !h.is_regular(k) {
        return precondition(format!("{what} must be {k}-regular"));
    }
    Ok(())
}

/// `aux` minus a vertex `x`, plus a matching on `k-1` of the neighbors of
/// `x`. Returns the graph and the remaining neighbor, now of degree `k-1`.
fn odd_end(aux: &Graph) -> Result<(Graph, usize)> {
    let nb: Vec<usize> = aux.neighbors(0).collect();
    let (mut h, map) = delete_vertex(aux, 0)?;
    let k = nb.len();
    for p in nb[..k - 1].chunks(2) {
        h.add_edge(map[p[0]], map[p[1]])?;
    }
    Ok((h, map[nb[k - 1]]))
}

/// `aux` minus a vertex `x` and an edge `yz` with `y ~ x`, plus a perfect
/// matching on the `k` vertices left with degree `k-1`. Returns the graph
/// and `y`, now of degree `k-2`.
fn even_end(aux: &Graph) -> Result<(Graph, usize)> {
    let nb: Vec<usize> = aux.neighbors(0).collect();
    let y = nb[0];
    let z = aux.neighbors(y).find(|&z| z != 0).expect("y has degree k > 1");
    let (mut h, map) = delete_vertex(aux, 0)?;
    h.remove_edge(map[y], map[z])?;
    let mut short: Vec<usize> = nb[1..].iter().map(|&x| map[x]).collect();
    short.push(map[z]);
    short.sort_unstable();
    for p in short.chunks(2) {
        if !h.add_edge(p[0], p[1])? {
            return precondition("auxiliary graph girth too small for the end piece");
        }
    }
    Ok((h, map[y]))
}

/// Chain of `r` copies of a `(k,g)`-cage between two end pieces cut from
/// `aux`, which must be `k`-regular of girth `g+1` (odd `k`) or `g+2`
/// (even `k`).
///
/// Odd `k`: each copy loses an edge `vw` avoiding a shortest cycle, copies
/// are joined `w_{i-1} v_i`, and the ends attach by bridges. Even `k`: each
/// copy has a vertex `u` split into `v` (degree 2) and `w` (degree `k-2`),
/// consecutive copies share `w_{i-1} = v_i`, and the far end is a copy of
/// the cage with one subdivided edge.
pub fn chain_construction(k: usize, g: usize, r: usize, cage: &Graph, aux: &Graph) -> Result<ChainResult> {
    if k < 3 || g < 3 || r == 0 {
        return precondition("need k >= 3, g >= 3, r >= 1");
    }
    check_regular(cage, k, "cage")?;
    check_regular(aux, k, "auxiliary graph")?;
    if girth(cage) != g as u32 {
        return precondition(format!("cage must have girth {g}"));
    }
    let aux_g = if k % 2 == 1 { g + 1 } else { g + 2 };
    if girth(aux) < aux_g as u32 {
        return precondition(format!("auxiliary graph must have girth at least {aux_g}"));
    }

    let mut asm = Assembler::new();
    if k % 2 == 1 {
        let (v, w) = edge_avoiding_shortest_cycle(cage)
            .ok_or_else(|| ConstructionError::Precondition("no edge avoids a shortest cycle".into()))?;
        let mut m = cage.clone();
        m.remove_edge(v, w)?;
        let (end, y) = odd_end(aux)?;
        let e1 = asm.place(&end, &[])?;
        let mut prev = e1[y];
        for _ in 0..r {
            let c = asm.place(&m, &[])?;
            asm.edge(prev, c[v])?;
            prev = c[w];
        }
        let e2 = asm.place(&end, &[])?;
        asm.edge(prev, e2[y])?;
    } else {
        let u = vertex_avoiding_shortest_cycle(cage)
            .ok_or_else(|| ConstructionError::Precondition("no vertex avoids a shortest cycle".into()))?;
        let nb: Vec<usize> = cage.neighbors(u).collect();
        let (mut m, map) = delete_vertex(cage, u)?;
        let v = m.add_vertices(2)?;
        let w = v + 1;
        for (i, &x) in nb.iter().enumerate() {
            m.add_edge(if i < 2 { v } else { w }, map[x])?;
        }
        let (end, y) = even_end(aux)?;
        let e1 = asm.place(&end, &[])?;
        let mut prev = e1[y];
        for _ in 0..r {
            let c = asm.place(&m, &[(v, prev)])?;
            prev = c[w];
        }
        let (a, b) = cage.edges().next().expect("cage has edges");
        let mut tail = cage.clone();
        tail.remove_edge(a, b)?;
        let s = tail.add_vertices(1)?;
        tail.add_edge(a, s)?;
        tail.add_edge(s, b)?;
        asm.place(&tail, &[(s, prev)])?;
    }

    let gr = asm.g;
    if !gr.is_regular(k) || girth(&gr) != g as u32 {
        return Err(ConstructionError::Verification(format!("chain is not {k}-regular of girth {g}")));
    }
    let d = diameter(&gr);
    Ok(ChainResult { order: gr.order(), diameter: d, graph: gr, copies: r })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::super::fixtures::*;
    use super::*;

    /// Point-line incidence graph of the projective plane over `F_q`,
    /// `q` prime: `(q+1)`-regular of girth 6.
    pub fn projective_incidence(q: usize) -> Graph {
        let mut pts = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let v = [a, b, c];
                    // normalized: first nonzero coordinate is 1
                    if let Some(&f) = v.iter().find(|&&x| x != 0) {
                        if f == 1 {
                            pts.push(v);
                        }
                    }
                }
            }
        }
        let m = pts.len();
        let mut g = Graph::new(2 * m).unwrap();
        for (i, p) in pts.iter().enumerate() {
            for (j, l) in pts.iter().enumerate() {
                if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                    g.add_edge(i, m + j).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn cubic_girth_four_chain() {
        let k33 = complete_bipartite(3, 3);
        let pet = petersen();
        let one = chain_construction(3, 4, 1, &k33, &pet).unwrap();
        assert_eq!(one.order, 24);
        let three = chain_construction(3, 4, 3, &k33, &pet).unwrap();
        assert_eq!(three.order, 36);
        for r in 1..=5 {
            let c = chain_construction(3, 4, r, &k33, &pet).unwrap();
            assert_eq!(c.order, 6 * r + 18);
            assert!(c.diameter >= 4 * r as u32, "r={r} d={}", c.diameter);
        }
    }

    #[test]
    fn even_degree_chain() {
        let k44 = complete_bipartite(4, 4);
        let pg = projective_incidence(3);
        assert_eq!(girth(&pg), 6);
        let mut last = 0;
        for r in 1..=4 {
            let c = chain_construction(4, 4, r, &k44, &pg).unwrap();
            // each copy and the subdivided tail share one vertex with the previous piece
            assert_eq!(c.order, 25 + r * 8 + 8);
            assert!(c.diameter > last);
            last = c.diameter;
        }
    }

    #[test]
    fn chains_of_bundled_cages() {
        for g in 5..=7 {
            let cage = crate::constructions::cages::cubic_cage(g).unwrap();
            let aux = crate::constructions::cages::cubic_cage(g + 1).unwrap();
            for r in 1..=3 {
                let c = chain_construction(3, g, r, &cage, &aux).unwrap();
                assert_eq!(c.order, r * cage.order() + 2 * (aux.order() - 1));
                assert!(c.diameter as usize >= g * r);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let k33 = complete_bipartite(3, 3);
        assert!(chain_construction(3, 4, 1, &k33, &k33).is_err());
        assert!(chain_construction(3, 5, 1, &k33, &petersen()).is_err());
        assert!(chain_construction(3, 4, 0, &k33, &petersen()).is_err());
    }
}
