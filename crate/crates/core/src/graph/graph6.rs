use super::Graph;
use crate::error::{Error, Result};

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn data_byte(bytes: &[u8], offset: usize) -> Result<u8> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(err(offset, format!("byte {b} outside 63..=126"))),
        None => Err(err(offset, "record is truncated")),
    }
}

fn parse_order(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = data_byte(bytes, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let (width, start) = if data_byte(bytes, 1)? == 63 {
        (6, 2)
    } else {
        (3, 1)
    };
    let mut n = 0usize;
    for i in 0..width {
        n = (n << 6) | data_byte(bytes, start + i)? as usize;
    }
    Ok((n, start + width))
}

/// Parses one graph6 record (no `>>graph6<<` header).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(err(0, "empty record"));
    }
    let (n, header) = parse_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    if bytes.len() != header + body_len {
        return Err(err(
            bytes.len().min(header + body_len),
            format!(
                "expected {} bytes for {n} vertices, found {}",
                header + body_len,
                bytes.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let offset = header + k / 6;
            let byte = data_byte(bytes, offset)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let offset = header + body_len - 1;
        let pad = 6 - bits % 6;
        if data_byte(bytes, offset)? & ((1 << pad) - 1) != 0 {
            return Err(err(offset, "nonzero padding bits"));
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_records() {
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
        assert_eq!(parse_graph6("Bg").unwrap(), Graph::path(3));
        assert_eq!(parse_graph6("@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6("?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn encodes_by_hand_values() {
        assert_eq!(to_graph6(&Graph::complete(2)), "A_");
        assert_eq!(to_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
    }

    #[test]
    fn malformed_records() {
        // truncated: K4 needs one body byte
        assert!(matches!(
            parse_graph6("C"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        // too long
        assert!(matches!(parse_graph6("A_?"), Err(Error::Graph6 { .. })));
        // byte below 63
        assert!(matches!(
            parse_graph6("A "),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        // padding bit set: "A" has one data bit, '`' = 33 sets a padding bit
        assert!(matches!(
            parse_graph6("A`"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn long_order_header() {
        let g = Graph::path(70);
        let text = to_graph6(&g);
        assert_eq!(text.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn bundled_corpus_round_trips() {
        for n in 1..=6 {
            let text = std::fs::read_to_string(format!(
                "{}/fixtures/graphs{n}.g6",
                env!("CARGO_MANIFEST_DIR")
            ))
            .unwrap();
            for line in text.lines() {
                let g = parse_graph6(line).unwrap();
                assert_eq!(g.order(), n);
                assert_eq!(to_graph6(&g), line);
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..14, bits in prop::collection::vec(any::<bool>(), 91)) {
            let edges = (0..n)
                .flat_map(|v| (0..v).map(move |u| (u, v)))
                .zip(bits)
                .filter_map(|(e, keep)| keep.then_some(e));
            let g = Graph::new(n, edges).unwrap();
            let text = to_graph6(&g);
            prop_assert_eq!(parse_graph6(&text).unwrap(), g);
        }
    }
}
