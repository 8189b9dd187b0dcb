//! Naive enumeration of connected regular graphs, used to cross-check the
//! generator on small orders.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::generator::{generate_all, GenConfig, GenError};
use crate::graph::Graph;
use crate::metrics::{diameter, girth, is_connected};
use crate::INF;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n*k = {n}*{k} is odd")]
    Parity { n: usize, k: usize },
    #[error("order {n} exceeds the oracle ceiling {ceiling} for k = {k}")]
    Ceiling { n: usize, k: usize, ceiling: usize },
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// Largest order the oracle accepts by default.
pub fn default_ceiling(k: usize) -> usize {
    match k {
        0..=3 => 12,
        4 => 10,
        _ => 9,
    }
}

/// All connected `k`-regular graphs on `n` vertices up to isomorphism,
/// sorted by canonical key.
pub fn brute_force_regular(n: usize, k: usize) -> Result<Vec<Graph>, OracleError> {
    brute_force_regular_capped(n, k, default_ceiling(k))
}

/// [`brute_force_regular`] with an explicit ceiling on `n`.
///
/// Graphs are built in breadth-first labeling from vertex 0: the lowest
/// vertex with missing degree picks the rest of its neighbors among the
/// higher labels already in use plus the next unused labels. Every
/// connected graph has such a labeling.
pub fn brute_force_regular_capped(n: usize, k: usize, ceiling: usize) -> Result<Vec<Graph>, OracleError> {
    if (n * k) % 2 == 1 {
        return Err(OracleError::Parity { n, k });
    }
    if n > ceiling {
        return Err(OracleError::Ceiling { n, k, ceiling });
    }
    let mut out = BTreeMap::new();
    if n <= k {
        return Ok(Vec::new());
    }
    let mut g = Graph::new(n).expect("small order");
    for b in 1..=k {
        g.add_edge(0, b).expect("in range");
    }
    fill(&mut g, k, 1, k + 1, &mut out);
    Ok(out.into_values().collect())
}

/// `used` is the number of labels touched so far.
fn fill(g: &mut Graph, k: usize, mut a: usize, used: usize, out: &mut BTreeMap<CanonicalKey, Graph>) {
    let n = g.order();
    while a < n && g.degree(a) == k {
        a += 1;
    }
    if a == n {
        if is_connected(g) {
            let key = canonical_key(g);
            out.entry(key).or_insert_with_key(|k| k.to_graph());
        }
        return;
    }
    if a >= used {
        // the touched part is closed off: disconnected
        return;
    }
    let need = k - g.degree(a);
    let old: Vec<usize> = (a + 1..used).filter(|&b| g.degree(b) < k).collect();
    for fresh in 0..=need.min(n - used) {
        let mut chosen: Vec<usize> = (used..used + fresh).collect();
        choose(g, k, a, &old, 0, need, used + fresh, &mut chosen, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn choose(
    g: &mut Graph,
    k: usize,
    a: usize,
    cands: &[usize],
    from: usize,
    need: usize,
    used: usize,
    chosen: &mut Vec<usize>,
    out: &mut BTreeMap<CanonicalKey, Graph>,
) {
    if chosen.len() == need {
        for &b in chosen.iter() {
            g.add_edge(a, b).expect("fresh edge");
        }
        fill(g, k, a + 1, used, out);
        for &b in chosen.iter() {
            g.remove_edge(a, b).expect("present");
        }
        return;
    }
    for i in from..cands.len() {
        if cands.len() - i < need - chosen.len() {
            break;
        }
        chosen.push(cands[i]);
        choose(g, k, a, cands, i + 1, need, used, chosen, out);
        chosen.pop();
    }
}

/// Connected `k`-regular graphs on `n` vertices with girth `g` and
/// diameter `d`.
pub fn brute_force_kgd(n: usize, k: usize, g: u32, d: u32) -> Result<Vec<Graph>, OracleError> {
    Ok(brute_force_regular(n, k)?.into_iter().filter(|x| girth(x) == g && diameter(x) == d).collect())
}

/// Oracle graphs of one order split by girth and diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub k: usize,
    pub n: usize,
    pub graphs_by_gd: BTreeMap<(u32, u32), BTreeSet<CanonicalKey>>,
    pub total: usize,
}

pub fn oracle_report(n: usize, k: usize) -> Result<OracleReport, OracleError> {
    let mut graphs_by_gd: BTreeMap<(u32, u32), BTreeSet<CanonicalKey>> = BTreeMap::new();
    let all = brute_force_regular(n, k)?;
    let total = all.len();
    for gr in all {
        graphs_by_gd.entry((girth(&gr), diameter(&gr))).or_default().insert(canonical_key(&gr));
    }
    Ok(OracleReport { k, n, graphs_by_gd, total })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketCheck {
    pub n: usize,
    pub girth: usize,
    pub diameter: usize,
    pub oracle: Vec<CanonicalKey>,
    pub generator: Vec<CanonicalKey>,
    pub exhaustive: bool,
}

impl BucketCheck {
    pub fn agree(&self) -> bool {
        self.exhaustive && self.oracle == self.generator
    }
}

#[derive(Debug, Clone, Default)]
pub struct CrossValidation {
    pub buckets: Vec<BucketCheck>,
}

impl CrossValidation {
    pub fn all_agree(&self) -> bool {
        self.buckets.iter().all(BucketCheck::agree)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &BucketCheck> {
        self.buckets.iter().filter(|b| !b.agree())
    }
}

/// Compares the generator with brute force for every order up to
/// `n_ceiling`, every `(g,d)` bucket the oracle produces and every
/// `3 <= g <= 6`, `g/2 <= d <= 6` pair.
pub fn cross_validate(k: usize, n_ceiling: usize, cfg: &GenConfig) -> Result<CrossValidation, OracleError> {
    let mut report = CrossValidation::default();
    for n in k + 1..=n_ceiling {
        if (n * k) % 2 == 1 {
            continue;
        }
        let mut buckets: BTreeMap<(usize, usize), Vec<CanonicalKey>> = oracle_report(n, k)?
            .graphs_by_gd
            .into_iter()
            .map(|((g, d), keys)| ((g as usize, d as usize), keys.into_iter().collect()))
            .collect();
        for g in 3..=6 {
            for d in g / 2..=6 {
                buckets.entry((g, d)).or_default();
            }
        }
        for ((g, d), oracle) in buckets {
            if g == INF as usize || d == INF as usize {
                continue;
            }
            let got = generate_all(k, g, d, n, cfg)?;
            report.buckets.push(BucketCheck {
                n,
                girth: g,
                diameter: d,
                oracle,
                generator: got.keys,
                exhaustive: got.exhaustive,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_counts() {
        // connected cubic graphs on 4, 6, 8, 10 vertices
        let c: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| brute_force_regular(n, 3).unwrap().len()).collect();
        assert_eq!(c, [1, 2, 5, 19]);
    }

    #[test]
    fn larger_counts() {
        assert_eq!(brute_force_regular(12, 3).unwrap().len(), 85);
        assert_eq!(brute_force_regular(10, 4).unwrap().len(), 59);
    }

    #[test]
    fn small_buckets() {
        assert_eq!(brute_force_kgd(10, 3, 5, 2).unwrap().len(), 1);
        assert_eq!(brute_force_kgd(8, 3, 4, 3).unwrap().len(), 1);
        let r = oracle_report(6, 3).unwrap();
        assert_eq!(r.total, 2);
        assert_eq!(r.graphs_by_gd[&(4, 2)].len(), 1);
        assert_eq!(r.graphs_by_gd.values().map(BTreeSet::len).sum::<usize>(), r.total);
    }

    #[test]
    fn errors() {
        assert_eq!(brute_force_regular(7, 3), Err(OracleError::Parity { n: 7, k: 3 }));
        assert!(matches!(brute_force_regular(14, 3), Err(OracleError::Ceiling { .. })));
    }

    #[test]
    fn generator_agrees_on_small_orders() {
        let rep = cross_validate(3, 10, &GenConfig::default()).unwrap();
        assert!(rep.all_agree(), "{:?}", rep.mismatches().collect::<Vec<_>>());
        let rep = cross_validate(4, 10, &GenConfig::default()).unwrap();
        assert!(rep.all_agree(), "{:?}", rep.mismatches().collect::<Vec<_>>());
    }
}
