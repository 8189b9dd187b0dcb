//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use gdcage::bounds::{exact_count_3_4, exact_count_3_5, exact_order_3_4, exact_order_3_5, lower_bound};
use gdcage::canon::are_isomorphic;
use gdcage::constructions::cages::cubic_cage;
use gdcage::constructions::{
    build_3_4_extremal, build_3_5_extremal, build_k_3_3, chain_construction, double_repeatable, is_repeatable,
    splice_out_repeatable, RepeatableBlock,
};
use gdcage::generator::{find_cage, generate_all, CageStatus, GenConfig, GenerationResult};
use gdcage::metrics::{diameter, girth, is_kgd_graph, layers};
use gdcage::oracle::cross_validate;
use gdcage::{Graph, MAX_ORDER};

/// Published rows: k, g, d, M(k;g,d), n(k;g,d), count, count kind, bipartite.
const ROWS: &str = include_str!("data/published_rows.tsv");

#[derive(Debug, Clone)]
struct Row {
    k: u64,
    g: u64,
    d: u64,
    lower: u64,
    order: u64,
    count: u64,
    count_exact: bool,
    /// `None` when the published column is blank (odd girth).
    bipartite: Option<bool>,
}

fn rows() -> BTreeMap<(u64, u64, u64), Row> {
    let mut out = BTreeMap::new();
    for line in ROWS.lines().skip(1) {
        let f: Vec<&str> = line.split('\t').collect();
        let n = |i: usize| f[i].parse::<u64>().unwrap();
        let r = Row {
            k: n(0),
            g: n(1),
            d: n(2),
            lower: n(3),
            order: n(4),
            count: n(5),
            count_exact: f[6] == "=",
            bipartite: match f[7] {
                "yes" | "found-yes" => Some(true),
                "no" => Some(false),
                _ => None,
            },
        };
        out.insert((r.k, r.g, r.d), r);
    }
    out
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: u32, pass: bool, what: &str, detail: String, elapsed: Duration, limit: Duration) {
        let in_time = elapsed <= limit;
        let ok = pass && in_time;
        if !ok {
            self.failures += 1;
        }
        println!(
            "{} [{id}] {what}: {detail} ({:.2}s, limit {}s{})",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Cage search checked against its published row: order, exact count and
/// bipartiteness. Returns a mismatch description, if any.
fn check_cage(r: &Row, cfg: &GenConfig) -> Option<String> {
    let s = find_cage(r.k as usize, r.g as usize, r.d as usize, MAX_ORDER, cfg).unwrap();
    let tag = format!("({};{},{})", r.k, r.g, r.d);
    let res = match (&s.status, &s.result) {
        (CageStatus::Found, Some(res)) => res,
        _ => return Some(format!("{tag} not resolved: {:?}", s.status)),
    };
    let got = (res.order as u64, res.count() as u64, res.all_bipartite(), res.exhaustive);
    let want_bip = r.bipartite.unwrap_or(false);
    if got != (r.order, r.count, want_bip, true) {
        return Some(format!("{tag} got n={} count={} bip={} exhaustive={}", got.0, got.1, got.2, got.3));
    }
    if !res.graphs.iter().all(|h| is_kgd_graph(h, r.k as usize, r.g as u32, r.d as u32)) {
        return Some(format!("{tag} emitted a graph that does not verify"));
    }
    None
}

fn suite3() -> Vec<(u64, u64, u64)> {
    let mut t = Vec::new();
    t.extend((2..=8).map(|d| (3, 4, d)));
    t.extend((2..=6).map(|d| (3, 5, d)));
    t.extend((3..=5).map(|d| (3, 6, d)));
    t.extend((2..=4).map(|d| (4, 4, d)));
    t.extend([(4, 5, 3), (4, 5, 4)]);
    t
}

fn cage_suite(rep: &mut Report, id: u32, what: &str, triples: &[(u64, u64, u64)], per_run: Duration) {
    let table = rows();
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for t in triples {
        let t0 = Instant::now();
        if let Some(m) = check_cage(&table[t], &GenConfig::default()) {
            bad.push(m);
        }
        slowest = slowest.max(t0.elapsed());
    }
    let detail = if bad.is_empty() {
        format!(
            "{} triples match order, count and bipartiteness; slowest run {:.2}s",
            triples.len(),
            slowest.as_secs_f64()
        )
    } else {
        bad.join("; ")
    };
    // the limit is per run; report the slowest against it
    rep.line(id, bad.is_empty(), what, detail, slowest, per_run);
}

fn criterion_1(rep: &mut Report) {
    let t0 = Instant::now();
    let table = rows();
    let bad: Vec<String> = table
        .values()
        .filter_map(|r| match lower_bound(r.k, r.g, r.d) {
            Ok(m) if m == r.lower => None,
            got => Some(format!("({};{},{}) expected {} got {:?}", r.k, r.g, r.d, r.lower, got)),
        })
        .collect();
    let pass = bad.is_empty() && table.len() == 177;
    let detail = format!(
        "{}/{} rows reproduce M(k;g,d){}",
        table.len() - bad.len(),
        table.len(),
        if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
    );
    rep.line(1, pass, "lower bound column", detail, t0.elapsed(), secs(1));
}

fn criterion_2(rep: &mut Report) {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let want_3_4 = [(9, 20, 1), (10, 22, 4), (11, 24, 18), (12, 26, 40), (13, 26, 1)];
    for (d, n, c) in want_3_4 {
        if exact_order_3_4(d).ok() != Some(n) || exact_count_3_4(d).ok() != Some(c) {
            bad.push(format!("(3;4,{d})"));
        }
    }
    let table = rows();
    let mut checked = 0;
    for d in 6..=40u64 {
        let (Ok(n), Ok(c)) = (exact_order_3_5(d), exact_count_3_5(d)) else { continue };
        let Some(r) = table.get(&(3, 5, d)) else { continue };
        checked += 1;
        if (n, c) != (r.order, r.count) || !r.count_exact {
            bad.push(format!("(3;5,{d}) closed form {n}/{c} vs published {}/{}", r.order, r.count));
        }
    }
    for (d, n, c) in [(10, 30, 241), (15, 40, 308), (16, 42, 15)] {
        if exact_order_3_5(d).ok() != Some(n) || exact_count_3_5(d).ok() != Some(c) {
            bad.push(format!("(3;5,{d}) spot value"));
        }
    }
    let detail = format!(
        "5 rows of (3;4,d) and {checked} rows of (3;5,d) match{}",
        if bad.is_empty() { String::new() } else { format!("; mismatches: {}", bad.join(", ")) }
    );
    rep.line(2, bad.is_empty() && checked >= 30, "closed forms", detail, t0.elapsed(), secs(1));
}

fn criterion_5(rep: &mut Report) {
    let t0 = Instant::now();
    let cv = cross_validate(3, 10, &GenConfig::default()).unwrap();
    let bad: Vec<String> = cv
        .mismatches()
        .map(|b| {
            format!(
                "n={} g={} d={}: oracle {} generator {}",
                b.n,
                b.girth,
                b.diameter,
                b.oracle.len(),
                b.generator.len()
            )
        })
        .collect();
    let graphs: usize = cv.buckets.iter().map(|b| b.oracle.len()).sum();
    let detail = format!(
        "{} buckets, {graphs} graphs, {} mismatches{}",
        cv.buckets.len(),
        bad.len(),
        if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }
    );
    rep.line(5, bad.is_empty(), "oracle equivalence for k = 3, n <= 10", detail, t0.elapsed(), secs(600));
}

fn sorted_graph6(r: &GenerationResult) -> Vec<String> {
    let mut v = r.graph6_lines();
    v.sort();
    v
}

fn criterion_6(rep: &mut Report) {
    let t0 = Instant::now();
    let table = rows();
    let variants: [(&str, GenConfig); 4] = [
        ("seen-set off", GenConfig { use_seen_set: false, ..GenConfig::default() }),
        ("pruning off", GenConfig { use_pruning: false, ..GenConfig::default() }),
        ("2 workers", GenConfig { workers: 2, ..GenConfig::default() }),
        ("4 workers", GenConfig { workers: 4, ..GenConfig::default() }),
    ];
    let mut bad = Vec::new();
    let mut runs = 0;
    for (k, g, d) in suite3() {
        let n = table[&(k, g, d)].order as usize;
        let (k, g, d) = (k as usize, g as usize, d as usize);
        let base = generate_all(k, g, d, n, &GenConfig::default()).unwrap();
        let base_keys = &base.keys;
        let base_lines = sorted_graph6(&base);
        for (name, cfg) in &variants {
            let r = generate_all(k, g, d, n, cfg).unwrap();
            runs += 1;
            let same = if cfg.workers > 1 {
                sorted_graph6(&r) == base_lines && r.graph6_lines() == base.graph6_lines()
            } else {
                &r.keys == base_keys
            };
            if !same || !r.exhaustive {
                bad.push(format!("({k};{g},{d}) {name}: {} vs {}", r.count(), base.count()));
            }
        }
    }
    let detail = format!(
        "{runs} variant runs over {} triples agree with the default run{}",
        suite3().len(),
        if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
    );
    rep.line(6, bad.is_empty(), "robustness of suite 3 outputs", detail, t0.elapsed(), secs(3600));
}

/// Closes both ends of a layered block with a 4-cycle `a b c d`: `a, c`
/// meet one end vertex and `b, d` the other.
fn cap(g: &mut Graph, x: usize, y: usize) {
    let c = g.add_vertices(4).unwrap();
    for i in 0..4 {
        g.add_edge(c + i, c + (i + 1) % 4).unwrap();
    }
    for (v, w) in [(x, c), (x, c + 2), (y, c + 1), (y, c + 3)] {
        g.add_edge(v, w).unwrap();
    }
}

fn capped(b: &RepeatableBlock) -> (Graph, Vec<usize>) {
    let mut g = b.graph.clone();
    let first = b.n0().to_vec();
    let last = b.layers.layers[b.depth()].clone();
    cap(&mut g, first[0], first[1]);
    let n0: Vec<usize> = (g.order() - 4..g.order()).collect();
    cap(&mut g, last[0], last[1]);
    (g, n0)
}

/// Repeatable for k = 3, g = 4: layers 2,1,1,2,2,1,1,2.
fn period_block() -> RepeatableBlock {
    let e = [
        (0, 2),
        (1, 2),
        (2, 3),
        (3, 4),
        (3, 5),
        (4, 6),
        (4, 7),
        (5, 6),
        (5, 7),
        (6, 8),
        (7, 8),
        (8, 9),
        (9, 10),
        (9, 11),
    ];
    RepeatableBlock::new(Graph::from_edges(12, &e).unwrap(), &[0, 1], 3, 4).unwrap()
}

fn criterion_7(rep: &mut Report) {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for d in 9..=25 {
        let ok = build_3_4_extremal(d).is_ok_and(|h| {
            Some(h.order() as u64) == exact_order_3_4(d as u64).ok() && is_kgd_graph(&h, 3, 4, d as u32)
        });
        if !ok {
            bad.push(format!("(3;4,{d}) extremal"));
        }
    }
    if !build_3_5_extremal(13).is_ok_and(|h| h.order() == 34 && is_kgd_graph(&h, 3, 5, 13)) {
        bad.push("(3;5,13) extremal".into());
    }
    for k in 3..=7 {
        if !build_k_3_3(k).is_ok_and(|h| h.order() == 2 * (k + 1) && is_kgd_graph(&h, k, 3, 3)) {
            bad.push(format!("({k};3,3)"));
        }
    }
    let (k33, petersen) = (cubic_cage(4).unwrap(), cubic_cage(5).unwrap());
    for r in 1..=5 {
        let ok = chain_construction(3, 4, r, &k33, &petersen)
            .is_ok_and(|c| c.graph.is_regular(3) && girth(&c.graph) == 4 && diameter(&c.graph) as usize >= 4 * r);
        if !ok {
            bad.push(format!("chain r={r}"));
        }
    }
    let b = period_block();
    let (host, _) = capped(&b);
    let round_trip = is_repeatable(&b)
        && double_repeatable(&b).is_ok_and(|b2| {
            let (host2, n02) = capped(&b2);
            let l2 = layers(&host2, &n02).unwrap();
            splice_out_repeatable(&host2, &l2, 1, 8, 3, 4).is_ok_and(|out| are_isomorphic(&out, &host))
        });
    if !round_trip {
        bad.push("splice-out of a doubled block".into());
    }
    let detail = if bad.is_empty() {
        "(3;4,d) for 9..25, (3;5,13) on 34, (k;3,3) for 3..7, chains r <= 5, splice-out after doubling".to_string()
    } else {
        format!("failed: {}", bad.join(", "))
    };
    rep.line(7, bad.is_empty(), "constructions", detail, t0.elapsed(), secs(60));
}

/// Row beyond the generation suites, searched under a declared budget and
/// compared with its published value.
const SPOT_ROW: (u64, u64, u64) = (5, 4, 7);
const SPOT_BUDGET: Duration = Duration::from_secs(3 * 3600);

fn criterion_8(rep: &mut Report) {
    let t0 = Instant::now();
    let r = &rows()[&SPOT_ROW];
    let cfg = GenConfig { budget: Some(SPOT_BUDGET), ..GenConfig::default() };
    let mismatch = check_cage(r, &cfg);
    let detail = match &mismatch {
        None => format!(
            "spot row ({};{},{}) gives n={} with {} cages, {}, as published; large rows remain out of reach",
            r.k,
            r.g,
            r.d,
            r.order,
            r.count,
            match r.bipartite {
                Some(true) => "all bipartite",
                Some(false) => "not all bipartite",
                None => "odd girth",
            }
        ),
        Some(m) => m.clone(),
    };
    rep.line(8, mismatch.is_none(), "open-case substitute", detail, t0.elapsed(), SPOT_BUDGET);
}

fn main() {
    // tooling may ask a custom harness to list its tests
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        return;
    }
    let mut rep = Report { failures: 0 };
    criterion_1(&mut rep);
    criterion_2(&mut rep);
    cage_suite(&mut rep, 3, "small generation suite", &suite3(), secs(600));
    cage_suite(&mut rep, 4, "medium generation suite", &[(3, 6, 6), (3, 7, 5), (3, 8, 4)], secs(7200));
    criterion_5(&mut rep);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    if rep.failures > 0 {
        println!("{} criteria failed", rep.failures);
        std::process::exit(1);
    }
}
