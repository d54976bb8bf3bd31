//! graph6 encoding plus a plain edge-list text format.
//!
//! graph6 packs the upper triangle of the adjacency matrix column by column
//! (`x(0,1) x(0,2) x(1,2) x(0,3) ...`) into 6-bit big-endian groups, each
//! offset by 63. Orders up to 62 use a single size byte; larger orders use
//! `~` followed by 18 bits.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + OFFSET) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + OFFSET) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + OFFSET) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + OFFSET) as char);
    }
    out
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {pos} is outside the printable range 63..=126")));
    }
    let (n, body) = if bytes[0] == b'~' {
        if bytes.get(1) == Some(&b'~') {
            return Err(Error::Graph6("orders above 258047 are not supported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - OFFSET) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };
    if n > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - OFFSET) >> (5 - k % 6) & 1 == 1;
    if (bit_count..expected * 6).any(bit) {
        return Err(Error::Graph6("non-zero padding bits".into()));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Edge-list text: the order followed by `u-v` tokens, separated by
/// whitespace, commas or semicolons, e.g. `4 0-1 1-2 2-3 3-0`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = g.order().to_string();
    for (u, v) in g.edges() {
        out.push_str(&format!(" {u}-{v}"));
    }
    out
}

pub fn parse_edge_list(s: &str) -> Result<Graph> {
    let mut tokens = s
        .split(|c: char| c.is_whitespace() || c == ',' || c == ';')
        .filter(|t| !t.is_empty());
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::GraphText("missing order".into()))?
        .parse()
        .map_err(|_| Error::GraphText("order is not an integer".into()))?;
    if n > MAX_ORDER {
        return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
    }
    let mut g = Graph::new(n);
    for tok in tokens {
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| Error::GraphText(format!("edge token {tok:?} is not of the form u-v")))?;
        let parse = |x: &str| -> Result<usize> {
            x.parse()
                .map_err(|_| Error::GraphText(format!("bad vertex {x:?} in {tok:?}")))
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u >= n || v >= n || u == v {
            return Err(Error::GraphText(format!("invalid edge {tok:?} for order {n}")));
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Accepts either graph6 or the edge-list text form.
pub fn parse_graph(s: &str) -> Result<Graph> {
    let t = s.trim();
    if t.starts_with(|c: char| c.is_ascii_digit()) {
        parse_edge_list(t)
    } else {
        decode(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::new(0)), "?");
        assert_eq!(encode(&Graph::new(1)), "@");
        assert_eq!(encode(&Graph::complete(2)), "A_");
        assert_eq!(encode(&Graph::complete(4)), "C~");
        // 0-1-2-3-0 sets x01 x12 x03 x23 -> 101101
        assert_eq!(encode(&Graph::cycle(4)), "Cl");
        // petgraph's five-vertex reference graph
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn cr_is_a_four_cycle() {
        let g = decode("Cr").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(g.is_isomorphic(&Graph::cycle(4)));
    }

    #[test]
    fn large_order_header() {
        let g = Graph::path(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
        assert_eq!(decode(&format!(">>graph6<<{s}\n")).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(decode(""), Err(Error::Graph6(_))));
        assert!(matches!(decode("C"), Err(Error::Graph6(_))));
        assert!(matches!(decode("Cll"), Err(Error::Graph6(_))));
        assert!(matches!(decode("C l"), Err(Error::Graph6(_))));
        // K2 with a padding bit set
        assert!(matches!(decode("A`"), Err(Error::Graph6(_))));
    }

    #[test]
    fn edge_list_form() {
        let g = parse_graph("4 0-1 1-2, 2-3; 3-0").unwrap();
        assert_eq!(g, Graph::cycle(4));
        assert_eq!(to_edge_list(&g), "4 0-1 0-3 1-2 2-3");
        assert!(parse_graph("3 0-3").is_err());
        assert!(parse_graph("3 1-1").is_err());
        assert!(parse_graph("x").is_err());
    }
}
