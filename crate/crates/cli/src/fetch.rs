//! Downloads reference graphs by numeric id and caches them under a
//! content-addressed directory.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Duration;

use gdcage::graph6;
use gdcage::metrics::{diameter, girth, is_bipartite, is_connected};
use gdcage::Graph;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_BASE_URL: &str = "https://houseofgraphs.org/api/graphs/{id}";

/// Ids of the reference graphs this tool knows how to check.
pub const REFERENCE_IDS: [u64; 3] = [660, 54022, 54041];

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("network: {0}")]
    Network(String),
    #[error("HTTP status {0}")]
    Status(u16),
    #[error("cannot decode response: {0}")]
    Decode(String),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone)]
pub struct FetchConfig {
    /// URL template; `{id}` is replaced by the graph id.
    pub base_url: String,
    pub cache_dir: PathBuf,
    pub timeout: Duration,
}

impl FetchConfig {
    pub fn new(cache_dir: impl Into<PathBuf>) -> Self {
        FetchConfig { base_url: DEFAULT_BASE_URL.into(), cache_dir: cache_dir.into(), timeout: Duration::from_secs(20) }
    }

    pub fn url(&self, id: u64) -> String {
        if self.base_url.contains("{id}") {
            self.base_url.replace("{id}", &id.to_string())
        } else {
            format!("{}/{id}", self.base_url.trim_end_matches('/'))
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fetched {
    pub graph: Graph,
    pub graph6: String,
    pub from_cache: bool,
}

/// Cached copy if present, otherwise an HTTP GET.
pub fn fetch_reference_graph(id: u64, cfg: &FetchConfig) -> Result<Fetched, FetchError> {
    let objects = cfg.cache_dir.join("objects");
    let ids = cfg.cache_dir.join("ids");
    let pointer = ids.join(id.to_string());
    if let Ok(hash) = fs::read_to_string(&pointer) {
        if let Ok(text) = fs::read_to_string(objects.join(format!("{}.g6", hash.trim()))) {
            let s = text.trim().to_string();
            // a damaged cache entry falls through to a fresh download
            if let Ok(graph) = graph6::decode(&s) {
                if hex_digest(&s) == hash.trim() {
                    return Ok(Fetched { graph, graph6: s, from_cache: true });
                }
            }
        }
    }
    let body = http_get(&cfg.url(id), cfg.timeout)?;
    let s = extract_graph6(&body)?;
    let graph = graph6::decode(&s).map_err(|e| FetchError::Decode(e.to_string()))?;
    let hash = hex_digest(&s);
    fs::create_dir_all(&objects)?;
    fs::create_dir_all(&ids)?;
    fs::write(objects.join(format!("{hash}.g6")), format!("{s}\n"))?;
    fs::write(pointer, format!("{hash}\n"))?;
    Ok(Fetched { graph, graph6: s, from_cache: false })
}

fn hex_digest(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn http_get(url: &str, timeout: Duration) -> Result<String, FetchError> {
    let agent = ureq::AgentBuilder::new().timeout(timeout).build();
    match agent.get(url).call() {
        Ok(resp) => {
            let mut body = String::new();
            resp.into_reader()
                .take(16 << 20)
                .read_to_string(&mut body)
                .map_err(|e| FetchError::Network(e.to_string()))?;
            Ok(body)
        }
        Err(ureq::Error::Status(code, _)) => Err(FetchError::Status(code)),
        Err(e) => Err(FetchError::Network(e.to_string())),
    }
}

const JSON_KEYS: [&str; 4] = ["graph6", "g6", "canonicalForm", "canonical_form"];

/// Accepts a bare graph6 line (optionally with the `>>graph6<<` header) or
/// a JSON document with the graph6 string under one of a few known keys.
pub fn extract_graph6(body: &str) -> Result<String, FetchError> {
    let t = body.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| FetchError::Decode(e.to_string()))?;
        return find_key(&v).ok_or_else(|| FetchError::Decode("no graph6 field in JSON".into()));
    }
    let line =
        t.lines().map(str::trim).find(|l| !l.is_empty()).ok_or_else(|| FetchError::Decode("empty body".into()))?;
    Ok(line.strip_prefix(">>graph6<<").unwrap_or(line).to_string())
}

fn find_key(v: &Value) -> Option<String> {
    match v {
        Value::Object(m) => {
            for key in JSON_KEYS {
                if let Some(Value::String(s)) = m.get(key) {
                    return Some(s.trim().to_string());
                }
            }
            m.values().find_map(find_key)
        }
        Value::Array(a) => a.iter().find_map(find_key),
        _ => None,
    }
}

fn two_connected(g: &Graph) -> bool {
    let n = g.order();
    n >= 3
        && is_connected(g)
        && (0..n).all(|x| {
            let keep: Vec<usize> = (0..n).filter(|&v| v != x).collect();
            g.induced(&keep).is_ok_and(|h| is_connected(&h))
        })
}

/// Checks a downloaded graph against what is known about the reference id.
/// Unknown ids pass.
pub fn check_reference(id: u64, g: &Graph) -> Result<(), String> {
    let n = g.order();
    let fail = |m: String| Err(format!("id {id}: {m}"));
    match id {
        660 => {
            if !(n == 10 && g.is_regular(3) && girth(g) == 5 && diameter(g) == 2) {
                return fail(format!("expected the Petersen graph, got order {n}"));
            }
        }
        54022 => {
            if !(g.is_regular(4) && girth(g) == 4 && diameter(g) == 5) {
                return fail("expected a 4-regular graph of girth 4 and diameter 5".into());
            }
            if is_bipartite(g) || !two_connected(g) {
                return fail("expected a non-bipartite 2-connected graph".into());
            }
        }
        54041 => {
            let low = g.degrees().filter(|&x| x == 2).count();
            let rest = g.degrees().filter(|&x| x == 4).count();
            if !(n == 76 && low == 2 && rest == 74 && girth(g) == 7) {
                return fail("expected 76 vertices of girth 7, two of degree 2 and the rest of degree 4".into());
            }
        }
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_formats() {
        assert_eq!(extract_graph6("IheA@GUAo\n").unwrap(), "IheA@GUAo");
        assert_eq!(extract_graph6("\n>>graph6<<IheA@GUAo\n").unwrap(), "IheA@GUAo");
        assert_eq!(extract_graph6(r#"{"id":660,"graph6":"IheA@GUAo"}"#).unwrap(), "IheA@GUAo");
        assert_eq!(extract_graph6(r#"{"data":[{"canonicalForm":"IheA@GUAo"}]}"#).unwrap(), "IheA@GUAo");
        assert!(extract_graph6(r#"{"id":660}"#).is_err());
        assert!(extract_graph6("  ").is_err());
    }

    #[test]
    fn url_template() {
        let mut c = FetchConfig::new("/tmp/x");
        assert_eq!(c.url(660), "https://houseofgraphs.org/api/graphs/660");
        c.base_url = "http://127.0.0.1:9/g/".into();
        assert_eq!(c.url(5), "http://127.0.0.1:9/g/5");
    }

    #[test]
    fn reference_checks() {
        let p = graph6::decode("IheA@GUAo").unwrap();
        assert!(check_reference(660, &p).is_ok());
        assert!(check_reference(54022, &p).is_err());
        assert!(check_reference(54041, &p).is_err());
        assert!(check_reference(1, &p).is_ok());
    }
}
