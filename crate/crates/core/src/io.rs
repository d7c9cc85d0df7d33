//! Edge-list and graph6 serialization.
//!
//! The edge-list form is canonical: a header line `n m`, then `m` lines
//! `u v` with `u < v`, sorted, 0-based, each terminated by `\n`.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(Error::invalid(format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader.lines().enumerate();
    let (n, m) = loop {
        let Some((idx, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                msg: "missing `n m` header".into(),
            });
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        break parse_pair(&line, idx + 1)?;
    };
    let mut g = Graph::empty(n);
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (u, v) = parse_pair(&line, idx + 1)?;
        seen += 1;
        if seen > m {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("more than the {m} edges announced in the header"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("vertex out of range for {n} vertices"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if g.has_edge(u, v) {
            log::warn!("line {}: duplicate edge {u} {v} ignored", idx + 1);
            continue;
        }
        g.add_edge(u, v);
    }
    if seen < m {
        return Err(Error::Parse {
            line: seen + 2,
            msg: format!("expected {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn to_edge_list_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("edge list is ASCII")
}

pub fn parse_edge_list(s: &str) -> Result<Graph> {
    read_edge_list(s.as_bytes())
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn decode_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::invalid("graph6: byte outside 63..=126"));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::invalid("graph6: empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::invalid("graph6: truncated size"));
            }
            (sextets_to_int(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::invalid("graph6: truncated size"));
            }
            (sextets_to_int(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::invalid(format!(
            "graph6: expected {need} data bytes for {n} vertices, got {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

fn sextets_to_int(b: &[u8]) -> usize {
    b.iter().fold(0usize, |acc, &x| (acc << 6) | (x - 63) as usize)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Guesses the format of a graph file from its first non-empty line.
pub fn sniff_format(text: &str) -> Format {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.starts_with(">>graph6<<") || (!first.contains(' ') && first.bytes().all(|b| (63..=126).contains(&b))) {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

pub fn parse_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    match format.unwrap_or_else(|| sniff_format(text)) {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            decode_graph6(line.trim())
        }
    }
}

pub fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph> {
    let text = fs::read_to_string(path)?;
    let format = format.or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => Some(Format::Graph6),
        _ => None,
    });
    parse_graph(&text, format)
}

pub fn write_graph(g: &Graph, path: &Path, format: Format) -> Result<()> {
    let body = match format {
        Format::EdgeList => to_edge_list_string(g),
        Format::Graph6 => encode_graph6(g) + "\n",
    };
    fs::write(path, body)?;
    Ok(())
}
