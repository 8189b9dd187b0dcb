use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use gdcage::bounds::{bounds_report, BoundsError};
use gdcage::constructions::cages::cubic_cage;
use gdcage::constructions::{
    build_3_4_extremal, build_3_5_extremal, build_k_3_3, chain_construction, ConstructionError,
};
use gdcage::generator::{generate_all, BuiltinRule, CageStatus, GenConfig, GenError};
use gdcage::metrics::{diameter, girth, is_bipartite, is_kgd_graph};
use gdcage::oracle::cross_validate;
use gdcage::{graph6, Graph, MAX_ORDER};
use gdcage_cli::catalog::{read_graph6_file, Catalog};
use gdcage_cli::fetch::{check_reference, fetch_reference_graph, FetchConfig};
use gdcage_cli::table::{compute_table, render_csv, render_text, resolve_cage, TableOptions};

const OK: u8 = 0;
const NO_GRAPH: u8 = 1;
const USAGE: u8 = 2;
const VERIFY_FAILED: u8 = 3;
/// The budget ran out before the answer was certain.
const UNRESOLVED: u8 = 4;

#[derive(Parser)]
#[command(name = "gdcage", version, about = "Smallest regular graphs of given girth and diameter")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lower bounds and known exact values for (k;g,d)
    Bounds { k: u64, g: u64, d: u64 },
    /// All (k;g,d)-graphs on exactly n vertices, as graph6 lines
    Generate {
        k: usize,
        g: usize,
        d: usize,
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        gen: GenFlags,
    },
    /// Smallest order of a (k;g,d)-graph and all graphs of that order
    Cage {
        k: u64,
        g: u64,
        d: u64,
        #[arg(long, default_value_t = MAX_ORDER)]
        max_order: usize,
        /// graph6 output; defaults to cages_k{k}_g{g}_d{d}_n{n}.g6
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record the result in this catalog directory
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[command(flatten)]
        gen: GenFlags,
    },
    /// Checks that every graph in a graph6 file is a (k;g,d)-graph
    Verify { file: PathBuf, k: usize, g: u32, d: u32 },
    /// Builds a graph from one of the explicit constructions
    Construct {
        #[command(subcommand)]
        which: Construction,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Compares the generator against brute force for all orders up to n
    OracleCheck {
        k: usize,
        n: usize,
        #[command(flatten)]
        gen: GenFlags,
    },
    /// Table of bounds, cage orders, counts and bipartiteness over a range of d
    Table {
        k: u64,
        g: u64,
        d_from: u64,
        d_to: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        text: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = MAX_ORDER)]
        max_order: usize,
        #[command(flatten)]
        gen: GenFlags,
    },
    /// Downloads a reference graph by id
    Fetch {
        id: u64,
        /// URL template, `{id}` is substituted
        #[arg(long)]
        base_url: Option<String>,
        #[arg(long, default_value = ".gdcage-cache")]
        cache_dir: PathBuf,
        #[arg(long, default_value_t = 20.0)]
        timeout_seconds: f64,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// (k;3,3)-graph on 2(k+1) vertices
    K33 { k: usize },
    /// (3;4,d)-graph of least order, d >= 9
    #[command(name = "3-4")]
    ThreeFour { d: usize },
    /// (3;5,d)-graph of least order, d >= 5
    #[command(name = "3-5")]
    ThreeFive { d: usize },
    /// Chain of r copies of a (k,g)-cage
    Chain {
        k: usize,
        g: usize,
        r: usize,
        /// (k,g)-cage; bundled cubic cages are used for k = 3
        #[arg(long)]
        cage: Option<PathBuf>,
        /// k-regular graph of girth g+1 (odd k) or g+2 (even k)
        #[arg(long)]
        aux: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct GenFlags {
    /// Wall-clock budget; running out gives an unresolved answer
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Depth at which the search is split among workers
    #[arg(long)]
    split_depth: Option<usize>,
    #[arg(long)]
    no_seen_set: bool,
    #[arg(long)]
    no_pruning: bool,
    /// Start from the bare Moore tree of the diametral pair
    #[arg(long)]
    safe_tree: bool,
    /// Memory cap for the seen-set
    #[arg(long)]
    seen_memory_mb: Option<usize>,
    /// Turn off one built-in pruning rule (repeatable)
    #[arg(long, value_parser = parse_rule)]
    disable_rule: Vec<BuiltinRule>,
}

fn parse_rule(s: &str) -> Result<BuiltinRule, String> {
    BuiltinRule::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
        let names: Vec<_> = BuiltinRule::ALL.iter().map(|r| r.name()).collect();
        format!("unknown rule {s:?}; expected one of {}", names.join(", "))
    })
}

impl GenFlags {
    fn config(&self) -> Result<GenConfig, String> {
        let mut cfg = GenConfig::default();
        if let Some(b) = self.budget_seconds {
            cfg.budget = Some(Duration::try_from_secs_f64(b).map_err(|e| format!("--budget-seconds: {e}"))?);
        }
        if self.workers == 0 {
            return Err("--workers must be positive".into());
        }
        cfg.workers = self.workers;
        if let Some(s) = self.split_depth {
            cfg.split_depth = s;
        }
        cfg.use_seen_set = !self.no_seen_set;
        cfg.use_pruning = !self.no_pruning;
        cfg.safe_start_tree = self.safe_tree;
        if let Some(mb) = self.seen_memory_mb {
            cfg.seen_memory_bytes = mb << 20;
        }
        cfg.disabled_rules = self.disable_rule.clone();
        Ok(cfg)
    }
}

/// Error carrying the exit code it maps to.
struct Fail(u8, String);

impl Fail {
    fn usage(m: impl ToString) -> Self {
        Fail(USAGE, m.to_string())
    }
}

impl From<BoundsError> for Fail {
    fn from(e: BoundsError) -> Self {
        Fail::usage(e)
    }
}

impl From<GenError> for Fail {
    fn from(e: GenError) -> Self {
        Fail::usage(e)
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::usage(e)
    }
}

impl From<ConstructionError> for Fail {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Verification(_) => Fail(VERIFY_FAILED, e.to_string()),
            _ => Fail::usage(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("gdcage: {msg}");
            ExitCode::from(code)
        }
    }
}

fn write_graph6(path: Option<&Path>, graphs: &[Graph]) -> Result<(), Fail> {
    let mut text = String::new();
    for g in graphs {
        text += &graph6::encode(g);
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or("unknown".into(), |v| v.to_string())
}

fn run(cmd: Cmd) -> Result<u8, Fail> {
    match cmd {
        Cmd::Bounds { k, g, d } => {
            let r = bounds_report(k, g, d)?;
            println!("k {k}  g {g}  d {d}");
            println!("moore_bound     {}", r.moore);
            println!("m_prime         {}", r.m_prime);
            println!("m_double_prime  {}", r.m_double_prime.map_or("n/a".into(), |v| v.to_string()));
            println!("lower_bound     {}", r.lower_bound);
            println!("exact_order     {}", opt(r.exact_order));
            println!("exact_count     {}", opt(r.exact_count));
            Ok(OK)
        }
        Cmd::Generate { k, g, d, n, out, gen } => {
            let cfg = gen.config().map_err(Fail::usage)?;
            let r = generate_all(k, g, d, n, &cfg)?;
            write_graph6(out.as_deref(), &r.graphs)?;
            eprintln!("n={n} count={} exhaustive={} elapsed={:.3}s", r.count(), r.exhaustive, r.elapsed.as_secs_f64());
            eprintln!("{:?}", r.stats);
            Ok(match (r.exhaustive, r.count()) {
                (false, _) => UNRESOLVED,
                (true, 0) => NO_GRAPH,
                _ => OK,
            })
        }
        Cmd::Cage { k, g, d, max_order, out, catalog, gen } => {
            let cfg = gen.config().map_err(Fail::usage)?;
            let res = resolve_cage(k, g, d, max_order, &cfg).map_err(Fail::usage)?;
            let rec = &res.record;
            match &res.status {
                CageStatus::Found => {
                    let n = rec.order.expect("found implies an order");
                    let count = rec.count.unwrap_or(0);
                    if rec.exhaustive {
                        println!(
                            "n={n} count={count} all_bipartite={} lower_bound={}",
                            rec.all_bipartite.unwrap_or(false),
                            rec.lower_bound
                        );
                    } else {
                        println!(
                            "n={n} count>={count} (budget exhausted, list incomplete) lower_bound={}",
                            rec.lower_bound
                        );
                    }
                    let path = out.unwrap_or_else(|| PathBuf::from(&rec.graph_file));
                    write_graph6(Some(&path), &res.graphs)?;
                    eprintln!("wrote {}", path.display());
                }
                CageStatus::Unresolved { n_max } => println!("no graph up to order {n_max}"),
                CageStatus::BudgetExhausted { at_order } => {
                    println!("unresolved: budget exhausted at order {at_order} (lower_bound={})", rec.lower_bound)
                }
            }
            eprintln!("elapsed={:.3}s", rec.runtime_seconds);
            if let Some(dir) = catalog {
                let cat = Catalog::open(dir).map_err(Fail::usage)?;
                cat.append(rec, &res.graphs).map_err(Fail::usage)?;
            }
            Ok(match res.status {
                CageStatus::Found if rec.exhaustive => OK,
                CageStatus::Unresolved { .. } => NO_GRAPH,
                _ => UNRESOLVED,
            })
        }
        Cmd::Verify { file, k, g, d } => {
            let graphs = read_graph6_file(&file).map_err(Fail::usage)?;
            if graphs.is_empty() {
                return Err(Fail(NO_GRAPH, format!("{}: no graphs", file.display())));
            }
            let mut bad = 0;
            for (i, h) in graphs.iter().enumerate() {
                if !is_kgd_graph(h, k, g, d) {
                    bad += 1;
                    println!(
                        "graph {}: FAIL (order {}, {}-regular {}, girth {}, diameter {})",
                        i + 1,
                        h.order(),
                        k,
                        h.is_regular(k),
                        girth(h),
                        diameter(h)
                    );
                }
            }
            println!("{} of {} graphs are ({k};{g},{d})-graphs", graphs.len() - bad, graphs.len());
            Ok(if bad == 0 { OK } else { VERIFY_FAILED })
        }
        Cmd::Construct { which, out } => {
            let graph = match which {
                Construction::K33 { k } => build_k_3_3(k)?,
                Construction::ThreeFour { d } => build_3_4_extremal(d)?,
                Construction::ThreeFive { d } => build_3_5_extremal(d)?,
                Construction::Chain { k, g, r, cage, aux } => {
                    let cage = ingredient(cage.as_deref(), k, g)?;
                    let aux = ingredient(aux.as_deref(), k, if k % 2 == 1 { g + 1 } else { g + 2 })?;
                    let c = chain_construction(k, g, r, &cage, &aux)?;
                    eprintln!("copies={} diameter={}", c.copies, c.diameter);
                    c.graph
                }
            };
            write_graph6(out.as_deref(), std::slice::from_ref(&graph))?;
            let dm = diameter(&graph);
            eprintln!(
                "order={} girth={} diameter={} bipartite={}",
                graph.order(),
                girth(&graph),
                if dm == gdcage::INF { "inf".into() } else { dm.to_string() },
                is_bipartite(&graph)
            );
            Ok(OK)
        }
        Cmd::OracleCheck { k, n, gen } => {
            let cfg = gen.config().map_err(Fail::usage)?;
            let rep = cross_validate(k, n, &cfg).map_err(Fail::usage)?;
            println!("{:>3} {:>3} {:>3} {:>8} {:>9}  agree", "n", "g", "d", "oracle", "generator");
            for b in &rep.buckets {
                println!(
                    "{:>3} {:>3} {:>3} {:>8} {:>9}  {}",
                    b.n,
                    b.girth,
                    b.diameter,
                    b.oracle.len(),
                    b.generator.len(),
                    if b.agree() { "yes" } else { "NO" }
                );
            }
            let bad = rep.mismatches().count();
            println!("{} buckets, {bad} mismatches", rep.buckets.len());
            Ok(if bad == 0 { OK } else { VERIFY_FAILED })
        }
        Cmd::Table { k, g, d_from, d_to, csv, text, catalog, max_order, gen } => {
            let cfg = gen.config().map_err(Fail::usage)?;
            let cat = catalog.map(Catalog::open).transpose().map_err(Fail::usage)?;
            let opts = TableOptions { catalog: cat.as_ref(), cfg, max_order };
            let rows = compute_table(k, g, d_from, d_to, &opts).map_err(Fail::usage)?;
            let rendered = render_text(&rows);
            if let Some(p) = csv {
                fs::write(p, render_csv(&rows).map_err(Fail::usage)?)?;
            }
            match text {
                Some(p) => fs::write(p, &rendered)?,
                None => print!("{rendered}"),
            }
            Ok(if rows.iter().all(|r| r.count.is_some()) { OK } else { UNRESOLVED })
        }
        Cmd::Fetch { id, base_url, cache_dir, timeout_seconds } => {
            let mut cfg = FetchConfig::new(cache_dir);
            if let Some(u) = base_url {
                cfg.base_url = u;
            }
            cfg.timeout = Duration::try_from_secs_f64(timeout_seconds).map_err(Fail::usage)?;
            let f = fetch_reference_graph(id, &cfg).map_err(|e| Fail(NO_GRAPH, e.to_string()))?;
            println!("{}", f.graph6);
            eprintln!("order={} cached={}", f.graph.order(), f.from_cache);
            check_reference(id, &f.graph).map_err(|m| Fail(VERIFY_FAILED, m))?;
            Ok(OK)
        }
    }
}

fn ingredient(path: Option<&Path>, k: usize, g: usize) -> Result<Graph, Fail> {
    match path {
        Some(p) => read_graph6_file(p)
            .map_err(Fail::usage)?
            .into_iter()
            .next()
            .ok_or_else(|| Fail::usage(format!("{}: no graphs", p.display()))),
        None if k == 3 => {
            cubic_cage(g).ok_or_else(|| Fail::usage(format!("no bundled cubic cage of girth {g}; pass a file")))
        }
        None => Err(Fail::usage(format!("no bundled {k}-regular graphs; pass --cage and --aux"))),
    }
}
