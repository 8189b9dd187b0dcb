//! graph6 encoding.
//!
//! Order header is `n + 63` for `n < 63`, else byte 126 followed by three
//! 6-bit groups. The body packs the upper triangle column by column,
//! six bits per byte with offset 63, zero padded.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#x} outside 63..=126")]
    BadChar(u8),
    #[error("malformed order header")]
    BadHeader,
    #[error("expected {expected} body bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    NonzeroPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12 & 63) as u8 + 63);
        out.push((n >> 6 & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("ascii")
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(&c) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(Graph6Error::BadChar(c));
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &c| acc << 6 | (c - 63) as usize);
        if n < 63 {
            return Err(Graph6Error::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(GraphError::Capacity(n).into());
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::BadLength { expected, found: body.len() });
    }
    let mut g = Graph::new(n)?;
    let total = n * n.saturating_sub(1) / 2;
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let bit = (body[k / 6] - 63) >> (5 - k % 6) & 1;
            if bit == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
            if k == total {
                break 'outer;
            }
        }
    }
    let pad = expected * 6 - total;
    if pad > 0 && (body[expected - 1] - 63) & ((1u8 << pad) - 1) != 0 {
        return Err(Graph6Error::NonzeroPadding);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::new(1).unwrap()), "@");
        assert_eq!(encode(&Graph::new(0).unwrap()), "?");
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode(&k3), "Bw");
        assert_eq!(encode(&cycle(5)), "Dhc");
        assert_eq!(decode("Dhc").unwrap(), cycle(5));
    }

    #[test]
    fn long_header_round_trip() {
        let g = cycle(100);
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(decode(&s).unwrap(), g);
        let g = cycle(512);
        assert_eq!(decode(&encode(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("D h"), Err(Graph6Error::BadChar(b' ')));
        assert!(matches!(decode("Dh"), Err(Graph6Error::BadLength { .. })));
        // C5 body is 10 bits, so the last two bits of 'c' must be zero
        assert_eq!(decode("Dhd"), Err(Graph6Error::NonzeroPadding));
        assert_eq!(decode("~~"), Err(Graph6Error::BadHeader));
    }
}
