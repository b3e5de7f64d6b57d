//! graph6 serialization: the compact printable format for labelled simple
//! graphs used by most graph enumeration tools.
//!
//! Layout: an order header (one byte `63 + n` for `n <= 62`, or `'~'` plus
//! three bytes carrying an 18-bit `n` up to 258047), then the upper triangle
//! of the adjacency matrix in column-major order, packed MSB-first into 6-bit
//! groups, each stored as `63 + value`. Parsing is strict: every deviation is
//! rejected with the byte offset where it occurred.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte 0x{byte:02x} at offset {offset} outside graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("long order header needs 3 bytes after '~', input ends after {len}")]
    TruncatedHeader { len: usize },
    #[error("order {0} uses the long header but fits in one byte")]
    NonMinimalHeader(usize),
    #[error("orders above 258047 ('~~' header) are not supported")]
    UnsupportedOrder,
    #[error("adjacency data truncated: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in final group at offset {offset}")]
    NonzeroPadding { offset: usize },
}

fn val(b: u8, offset: usize) -> Result<u32, Graph6Error> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as u32)
    } else {
        Err(Graph6Error::InvalidByte { offset, byte: b })
    }
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let b = s.as_bytes();
    if b.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, body_start) = if b[0] == b'~' {
        if b.len() >= 2 && b[1] == b'~' {
            return Err(Graph6Error::UnsupportedOrder);
        }
        if b.len() < 4 {
            return Err(Graph6Error::TruncatedHeader { len: b.len() });
        }
        let n = (val(b[1], 1)? << 12) | (val(b[2], 2)? << 6) | val(b[3], 3)?;
        if n < 63 {
            return Err(Graph6Error::NonMinimalHeader(n as usize));
        }
        (n as usize, 4)
    } else {
        (val(b[0], 0)? as usize, 1)
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let got = b.len() - body_start;
    if got < nbytes {
        return Err(Graph6Error::Truncated { expected: nbytes, got });
    }
    if got > nbytes {
        return Err(Graph6Error::TrailingData { offset: body_start + nbytes });
    }

    let mut g = Graph::empty(n);
    let (mut u, mut v) = (0usize, 1usize);
    let mut t = 0usize;
    for i in 0..nbytes {
        let offset = body_start + i;
        let x = val(b[offset], offset)?;
        for j in 0..6 {
            let bit = x >> (5 - j) & 1;
            if t < nbits {
                if bit == 1 {
                    g.set_edge(u, v);
                }
                u += 1;
                if u == v {
                    u = 0;
                    v += 1;
                }
                t += 1;
            } else if bit == 1 {
                return Err(Graph6Error::NonzeroPadding { offset });
            }
        }
    }
    Ok(g)
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258047 {
        out.push(b'~');
        out.push(63 + (n >> 12 & 63) as u8);
        out.push(63 + (n >> 6 & 63) as u8);
        out.push(63 + (n & 63) as u8);
    } else {
        panic!("graph6 encoding not supported beyond 258047 vertices");
    }
    let mut acc = 0u8;
    let mut nb = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            nb += 1;
            if nb == 6 {
                out.push(63 + acc);
                acc = 0;
                nb = 0;
            }
        }
    }
    if nb > 0 {
        out.push(63 + (acc << (6 - nb)));
    }
    String::from_utf8(out).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn edges_of(s: &str) -> Vec<(usize, usize)> {
        decode(s).unwrap().edges()
    }

    #[test]
    fn fixed_vectors() {
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(decode("@").unwrap().n(), 1);
        assert_eq!(decode("@").unwrap().edge_count(), 0);
        assert_eq!(edges_of("A_"), vec![(0, 1)]);
        assert_eq!(edges_of("A?"), vec![]);
        assert_eq!(decode("C~").unwrap(), constructions::complete(4));
        assert_eq!(decode("D??").unwrap(), Graph::empty(5));
        assert_eq!(edges_of("DQc"), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn encode_matches_fixed_vectors() {
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&constructions::complete(2)), "A_");
        assert_eq!(encode(&constructions::complete(4)), "C~");
        assert_eq!(encode(&Graph::empty(5)), "D??");
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn long_order_header() {
        let g = Graph::empty(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(s.len(), 4 + (63usize * 62 / 2).div_ceil(6));
        assert_eq!(decode(&s).unwrap(), g);

        let c = constructions::cycle(100).unwrap();
        assert_eq!(decode(&encode(&c)).unwrap(), c);
    }

    #[test]
    fn round_trips_preserve_labels() {
        for g in [
            constructions::petersen(),
            constructions::complete(7),
            constructions::cycle(9).unwrap(),
            constructions::complete_bipartite(3, 4),
        ] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("B "), Err(Graph6Error::InvalidByte { offset: 1, byte: b' ' }));
        assert_eq!(decode("\n"), Err(Graph6Error::InvalidByte { offset: 0, byte: b'\n' }));
        assert_eq!(decode("A"), Err(Graph6Error::Truncated { expected: 1, got: 0 }));
        assert_eq!(decode("A_?"), Err(Graph6Error::TrailingData { offset: 2 }));
        assert_eq!(decode("A@"), Err(Graph6Error::NonzeroPadding { offset: 1 }));
        assert_eq!(decode("~?"), Err(Graph6Error::TruncatedHeader { len: 2 }));
        assert_eq!(decode("~~????"), Err(Graph6Error::UnsupportedOrder));
        assert_eq!(decode("~??B"), Err(Graph6Error::NonMinimalHeader(3)));
    }
}
