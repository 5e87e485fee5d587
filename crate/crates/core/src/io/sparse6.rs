use super::graph6::read_order;
use super::ParseError;
use crate::graph::Graph;

/// Parses a (non-incremental) sparse6 line. Self-loops and multi-edges
/// are rejected since only simple graphs are representable.
pub fn parse_sparse6(line: &str) -> Result<Graph, ParseError> {
    let bytes = line.as_bytes();
    let body = match bytes.split_first() {
        Some((b':', rest)) => rest,
        Some((&b, _)) => return Err(ParseError::ByteOutOfRange { offset: 0, byte: b }),
        None => return Err(ParseError::Empty),
    };
    let (n, header) = read_order(body, 1)?;
    let data = &body[header..];
    let start = 1 + header;
    let mut g = Graph::new(n).map_err(|source| ParseError::Graph { offset: 1, source })?;
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::ByteOutOfRange { offset: start + i, byte: b });
        }
    }
    // k = bits needed for n - 1, at least 1
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    let total = data.len() * 6;
    let bit = |p: usize| (data[p / 6] - 63) >> (5 - p % 6) & 1;
    let mut pos = 0;
    let mut v = 0usize;
    while pos + 1 + k <= total {
        let b = bit(pos);
        let mut x = 0usize;
        for q in 0..k {
            x = x << 1 | bit(pos + 1 + q) as usize;
        }
        let offset = start + pos / 6;
        pos += 1 + k;
        if b == 1 {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else {
            g.add_edge(x, v).map_err(|source| ParseError::Graph { offset, source })?;
        }
    }
    Ok(g)
}
