use super::ParseError;
use crate::graph::{Graph, GraphError, MAX_ORDER};

/// Largest order written with the single-byte size field; larger orders
/// use `~` followed by three bytes.
const SHORT_ORDER_LIMIT: usize = 62;

/// Reads the size field of a graph6 or sparse6 body. `base` is the offset
/// of `bytes` within the line, for error positions. Returns the order and
/// the length of the field.
pub(super) fn read_order(bytes: &[u8], base: usize) -> Result<(usize, usize), ParseError> {
    let (&head, rest) = bytes.split_first().ok_or(ParseError::Truncated { offset: base, expected: 1 })?;
    if !(63..=126).contains(&head) {
        return Err(ParseError::ByteOutOfRange { offset: base, byte: head });
    }
    if head != 126 {
        return Ok(((head - 63) as usize, 1));
    }
    if rest.first() == Some(&126) {
        // eight-byte form, only for orders beyond 258047
        return Err(ParseError::OrderUnsupported { offset: base, order: 258048 });
    }
    if rest.len() < 3 {
        return Err(ParseError::Truncated { offset: base + bytes.len(), expected: 3 });
    }
    let mut n = 0usize;
    for (i, &b) in rest[..3].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(ParseError::ByteOutOfRange { offset: base + 1 + i, byte: b });
        }
        n = n << 6 | (b - 63) as usize;
    }
    if n > MAX_ORDER {
        return Err(ParseError::OrderUnsupported { offset: base, order: n });
    }
    Ok((n, 4))
}

pub(super) fn write_order(n: usize, out: &mut Vec<u8>) {
    if n <= SHORT_ORDER_LIMIT {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([12, 6, 0].map(|s| ((n >> s) & 63) as u8 + 63));
    }
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    let (n, header) = read_order(bytes, 0)?;
    let body = &bytes[header..];
    if n == 0 {
        return Err(ParseError::Graph { offset: 0, source: GraphError::OrderOutOfRange(0) });
    }
    let expected = payload_len(n);
    for (i, &b) in body.iter().enumerate().take(expected) {
        if !(63..=126).contains(&b) {
            return Err(ParseError::ByteOutOfRange { offset: header + i, byte: b });
        }
    }
    if body.len() < expected {
        return Err(ParseError::Truncated { offset: bytes.len(), expected });
    }
    if body.len() > expected {
        return Err(ParseError::TrailingData { offset: header + expected });
    }
    let total_bits = n * (n - 1) / 2;
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if expected > 0 {
        let last = body[expected - 1] - 63;
        let pad = expected * 6 - total_bits;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(ParseError::NonzeroPadding { offset: header + expected - 1 });
        }
    }
    let mut g = Graph::new(n).map_err(|source| ParseError::Graph { offset: 0, source })?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j).expect("upper-triangle pairs are distinct");
            }
            k += 1;
        }
    }
    Ok(g)
}

/// graph6 line for `g` (without a newline). Fails only for the order-0
/// graph, which has no graph6 form here.
pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.order();
    if n == 0 {
        return Err(GraphError::OrderOutOfRange(0));
    }
    let mut out = Vec::with_capacity(4 + payload_len(n));
    write_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
