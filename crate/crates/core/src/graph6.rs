//! graph6 encoding for graphs with at most 62 vertices.
//!
//! One size byte `n + 63`, then the upper triangle `x(0,1), x(0,2), x(1,2), x(0,3), ...`
//! packed big-endian into 6-bit groups, each offset by 63.

use crate::error::{KsfError, Result};
use crate::graph::{check_capacity, Graph};

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(KsfError::Parse("empty graph6 string".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(KsfError::Parse(format!("bad graph6 size byte {first}")));
    }
    let n = (first - 63) as usize;
    check_capacity(n)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[1..];
    if body.len() != nbits.div_ceil(6) {
        return Err(KsfError::Parse(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            body.len(),
            nbits.div_ceil(6)
        )));
    }
    let mut stream = Vec::with_capacity(body.len() * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(KsfError::Parse(format!("bad graph6 byte {b}")));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            stream.push(v >> k & 1 == 1);
        }
    }
    if stream[nbits..].iter().any(|&b| b) {
        return Err(KsfError::Parse("nonzero graph6 padding".into()));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if stream[k] {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}
