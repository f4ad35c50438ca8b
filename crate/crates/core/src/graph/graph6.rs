//! graph6 encoding.
//!
//! Layout: an order header `N(n)` followed by the upper triangle of the
//! adjacency matrix in column-major order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed six bits per byte, most significant bit first, each byte offset by 63.
//! Orders up to 62 use one header byte; up to 258047 use `~` plus three bytes;
//! larger orders use `~~` plus six bytes.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const HEADER_MARKER: &[u8] = b">>graph6<<";

pub fn g6_encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend_from_slice(b"~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 0x3f) as u8 + BIAS);
        }
    }
}

/// Decodes one graph6 record. A trailing newline and the optional
/// `>>graph6<<` header are accepted.
pub fn g6_decode(bytes: &[u8]) -> Result<Graph> {
    let mut data = bytes.strip_prefix(HEADER_MARKER).unwrap_or(bytes);
    while let Some((&last, rest)) = data.split_last() {
        if last == b'\n' || last == b'\r' {
            data = rest;
        } else {
            break;
        }
    }
    if let Some(bad) = data.iter().position(|&b| !(BIAS..=BIAS + 63).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {bad} is outside the printable range 63..=126",
            data[bad]
        )));
    }
    let (n, body) = decode_order(data)?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }

    let pairs = n
        .checked_mul(n - 1)
        .map(|p| p / 2)
        .ok_or_else(|| Error::Graph6(format!("order {n} too large")))?;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let pad = expected * 6 - pairs;
    if pad > 0 {
        let last = body[expected - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits in final byte".into()));
        }
    }

    let mut g = Graph::new(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            bit += 1;
        }
    }
    Ok(g)
}

fn decode_order(data: &[u8]) -> Result<(usize, &[u8])> {
    let field = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
    match data {
        [] => Err(Error::Graph6("missing order header".into())),
        [b'~', b'~', rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte order header".into()));
            }
            let n = field(&rest[..6]);
            if n <= 258_047 {
                return Err(Error::Graph6(format!("non-canonical 8-byte header for order {n}")));
            }
            Ok((n, &rest[6..]))
        }
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte order header".into()));
            }
            let n = field(&rest[..3]);
            if n <= 62 {
                return Err(Error::Graph6(format!("non-canonical 4-byte header for order {n}")));
            }
            Ok((n, &rest[3..]))
        }
        [first, rest @ ..] => Ok(((first - BIAS) as usize, rest)),
    }
}
