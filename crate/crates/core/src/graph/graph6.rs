//! graph6 encoding: size header, then the upper triangle of the adjacency
//! matrix column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed into
//! 6-bit groups each offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(bytes: &[u8], at: usize) -> Result<u64> {
    match bytes.get(at) {
        Some(&b) if (BIAS..=BIAS + 63).contains(&b) => Ok((b - BIAS) as u64),
        Some(&b) => Err(Error::format(at, format!("byte 0x{b:02x} outside the graph6 range"))),
        None => Err(Error::format(at, "unexpected end of input")),
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; non-canonical size headers and nonzero padding
/// bits are rejected so that emit(parse(s)) == s for every accepted `s`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end();
    let (skip, body) = match text.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, text.as_bytes()),
    };
    let err = |at: usize, msg: &str| Error::format(skip + at, msg);
    if body.is_empty() {
        return Err(err(0, "empty graph6 string"));
    }
    let sx = |at: usize| {
        sextet(body, at).map_err(|e| match e {
            Error::Format { offset, message } => Error::format(skip + offset, message),
            other => other,
        })
    };

    let (n, mut pos) = if body[0] != 126 {
        (sx(0)? as usize, 1)
    } else if body.get(1) != Some(&126) {
        let n = (sx(1)? << 12 | sx(2)? << 6 | sx(3)?) as usize;
        if n < 63 {
            return Err(err(0, "non-canonical size header"));
        }
        (n, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = n << 6 | sx(i)?;
        }
        if n < 258_048 {
            return Err(err(0, "non-canonical size header"));
        }
        if n > 1 << 24 {
            return Err(err(0, "graph too large"));
        }
        (n as usize, 8)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != pos + need {
        return Err(err(
            body.len().min(pos + need),
            &format!(
                "expected {need} data bytes for {n} vertices, found {}",
                body.len() - pos
            ),
        ));
    }

    let mut g = Graph::edgeless(n);
    let mut k = 0;
    let mut cur = 0u64;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = sx(pos)?;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let pad = 6 - k % 6;
        if cur & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
