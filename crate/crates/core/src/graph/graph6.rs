//! graph6 encoding for graphs on at most 16 vertices.

use super::{Graph, MAX_ORDER};
use crate::error::FormatError;

/// Encodes `g` in graph6 (single byte header, since `n <= 62`).
pub fn graph6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

/// Parses a graph6 string (an optional `>>graph6<<` prefix is accepted).
pub fn graph6_decode(text: &str) -> Result<Graph, FormatError> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (trimmed.as_bytes(), 0),
    };
    let Some(&head) = bytes.first() else {
        return Err(FormatError::Empty);
    };
    if !(63..=126).contains(&head) {
        return Err(FormatError::BadByte {
            offset: base,
            byte: head,
        });
    }
    if head == 126 {
        return Err(FormatError::TooLarge {
            offset: base,
            n: None,
        });
    }
    let n = (head - 63) as usize;
    if n > MAX_ORDER {
        return Err(FormatError::TooLarge {
            offset: base,
            n: Some(n),
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() < nbytes {
        return Err(FormatError::Truncated {
            offset: base + bytes.len(),
            expected: nbytes + 1,
        });
    }
    if body.len() > nbytes {
        return Err(FormatError::TrailingBytes {
            offset: base + 1 + nbytes,
        });
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte_idx = k / 6;
            let b = body[byte_idx];
            if !(63..=126).contains(&b) {
                return Err(FormatError::BadByte {
                    offset: base + 1 + byte_idx,
                    byte: b,
                });
            }
            if ((b - 63) >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    // padding bits must be zero and every byte printable
    for (idx, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadByte {
                offset: base + 1 + idx,
                byte: b,
            });
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = body[nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(FormatError::NonzeroPadding {
                offset: base + nbytes,
            });
        }
    }
    Ok(g)
}
