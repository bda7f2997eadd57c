//! graph6 encoding and decoding.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range")]
    BadByte { offset: usize, byte: u8 },
    #[error("graph6 size field is truncated")]
    TruncatedSize,
    #[error("graph has {0} vertices, limit is {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("nonzero padding bits in final byte")]
    Padding,
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<Graph6Error> },
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12 & 63) as u8 + 63);
        out.push((n >> 6 & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and trailing
/// line ending are accepted.
pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let s = s.trim_end_matches(['\n', '\r']);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    let (n, rest) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedSize);
        }
        if bytes[1] == 126 {
            // 8-byte size form; far beyond any graph this crate holds.
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if rest.len() != expected {
        return Err(Graph6Error::WrongLength { expected, found: rest.len() });
    }
    let mut g = Graph::empty(n).expect("checked size");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = rest[expected - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding);
        }
    }
    Ok(g)
}

/// Decodes a multi-line graph6 document, skipping blank lines. Errors carry
/// 1-based line numbers.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = if i == 0 { line.strip_prefix(HEADER).unwrap_or(line) } else { line };
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        out.push(decode(line).map_err(|e| Graph6Error::Line { line: i + 1, source: Box::new(e) })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::*;

    #[test]
    fn known_encodings() {
        assert_eq!(encode(&complete(4).unwrap()), "C~");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&path(3).unwrap()), "Bg");
        assert_eq!(encode(&cycle(5).unwrap()), "Dhc");
        assert_eq!(decode(">>graph6<<C~\n").unwrap(), complete(4).unwrap());
    }

    #[test]
    fn long_size_field() {
        for n in [62, 63, 64] {
            let g = cycle(n).unwrap();
            let s = encode(&g);
            assert_eq!(s.as_bytes()[0] == 126, n > 62);
            assert_eq!(decode(&s).unwrap(), g);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("C"), Err(Graph6Error::WrongLength { .. })));
        assert!(matches!(decode("C~~"), Err(Graph6Error::WrongLength { .. })));
        assert!(matches!(decode("B "), Err(Graph6Error::BadByte { .. })));
        assert_eq!(decode("Bh"), Err(Graph6Error::Padding));
        assert!(matches!(decode("~?@@"), Err(Graph6Error::TooLarge(65))));
        let err = decode_lines("C~\n\nC").unwrap_err();
        assert!(matches!(err, Graph6Error::Line { line: 3, .. }));
    }
}
