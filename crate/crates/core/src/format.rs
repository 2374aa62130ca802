//! Text formats: graphs (`.gr`), embeddings (`.emb`) and map witnesses (`.map`).
//!
//! All three are line oriented. Blank lines and lines starting with `#` are
//! skipped; a trailing `# ...` on a data line is ignored as well.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::embedding::{Crossing, OnePlanarEmbedding};
use crate::graph::{normalize, SimpleGraph};
use crate::witness::BipartiteMapWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, ParseError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| err(line, format!("bad {what} `{t}`"))),
    }
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    arity: usize,
) -> Result<Vec<usize>, ParseError> {
    let Some((ln, l)) = lines.next() else {
        return err(1, format!("empty input, expected `{keyword}` header"));
    };
    let mut toks = l.split_whitespace();
    if toks.next() != Some(keyword) {
        return err(ln, format!("expected `{keyword}` header"));
    }
    let vals = (0..arity)
        .map(|_| number(ln, toks.next(), "header value"))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(extra) = toks.next() {
        return err(ln, format!("unexpected `{extra}`"));
    }
    Ok(vals)
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = data_lines(text);
    let n = header(&mut lines, "graph", 1)?[0];
    let mut g = SimpleGraph::empty(n);
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("e") {
            return err(ln, format!("expected `e <u> <v>`, found `{l}`"));
        }
        let u = number(ln, toks.next(), "endpoint")?;
        let v = number(ln, toks.next(), "endpoint")?;
        if toks.next().is_some() {
            return err(ln, "trailing tokens after edge");
        }
        g.try_add_edge(u, v).or_else(|e| err(ln, e.to_string()))?;
    }
    Ok(g)
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = format!("graph {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

fn list(xs: &[usize], prefix: &str) -> String {
    xs.iter()
        .map(|x| format!("{prefix}{x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses `.emb`. The base graph is read off the rotations: adjacent
/// original vertices form planar edges, and every crossing contributes its
/// two edges.
pub fn parse_embedding(text: &str) -> Result<OnePlanarEmbedding, ParseError> {
    let mut lines = data_lines(text);
    let hv = header(&mut lines, "embedding", 2)?;
    let (n, k) = (hv[0], hv[1]);
    let mut crossings: Vec<Option<Crossing>> = vec![None; k];
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n + k];
    let mut last = 1;
    for (ln, l) in lines {
        last = ln;
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("cross") => {
                let i = number(ln, toks.next(), "crossing index")?;
                if i == 0 || i > k {
                    return err(ln, format!("crossing index {i} outside 1..={k}"));
                }
                let mut v = [0; 4];
                for slot in v.iter_mut() {
                    *slot = number(ln, toks.next(), "endpoint")?;
                    if *slot == 0 || *slot > n {
                        return err(ln, format!("endpoint {slot} outside 1..={n}"));
                    }
                }
                let flag = match toks.next() {
                    Some("0") => false,
                    Some("1") => true,
                    other => return err(ln, format!("flag must be 0 or 1, found {other:?}")),
                };
                if crossings[i - 1].is_some() {
                    return err(ln, format!("crossing {i} given twice"));
                }
                crossings[i - 1] = Some(Crossing::new((v[0], v[1]), (v[2], v[3]), flag));
            }
            Some(t) if t.starts_with("rot") => {
                let rest = l[3..].trim_start();
                let Some((vtok, nbrs)) = rest.split_once(':') else {
                    return err(ln, "expected `rot <v>: <neighbors>`");
                };
                let v = number(ln, Some(vtok.trim()), "vertex")?;
                if v == 0 || v > n + k {
                    return err(ln, format!("vertex {v} outside 1..={}", n + k));
                }
                let nb = nbrs
                    .split_whitespace()
                    .map(|t| number(ln, Some(t), "neighbor"))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(&w) = nb.iter().find(|&&w| w == 0 || w > n + k) {
                    return err(ln, format!("neighbor {w} outside 1..={}", n + k));
                }
                if rotation[v - 1].replace(nb).is_some() {
                    return err(ln, format!("rotation of {v} given twice"));
                }
            }
            _ => return err(ln, format!("unrecognized line `{l}`")),
        }
    }
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or(i + 1))
        .collect::<Result<_, _>>()
        .or_else(|i| err(last, format!("crossing {i} missing")))?;
    let rotation: Vec<Vec<usize>> = rotation
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(i + 1))
        .collect::<Result<_, _>>()
        .or_else(|v| err(last, format!("rotation of vertex {v} missing")))?;
    let mut edges = BTreeSet::new();
    for (i, r) in rotation.iter().take(n).enumerate() {
        for &w in r {
            if w <= n && w != i + 1 {
                edges.insert(normalize(i + 1, w));
            }
        }
    }
    for c in &crossings {
        for (a, b) in [c.first, c.second] {
            if a != b {
                edges.insert(normalize(a, b));
            }
        }
    }
    let g = SimpleGraph::new(n, edges).or_else(|e| err(last, e.to_string()))?;
    Ok(OnePlanarEmbedding::from_parts(g, crossings, rotation))
}

pub fn write_embedding(e: &OnePlanarEmbedding) -> String {
    let n = e.n();
    let mut out = format!("embedding {} {}\n", n, e.crossing_count());
    for (i, c) in e.crossings().iter().enumerate() {
        out.push_str(&format!(
            "cross {} {} {} {} {} {}\n",
            i + 1,
            c.first.0,
            c.first.1,
            c.second.0,
            c.second.1,
            c.flag as u8
        ));
    }
    for (i, r) in e.rotation().iter().enumerate() {
        out.push_str(&format!("rot {}: {}\n", i + 1, list(r, "")));
    }
    out
}

fn labelled(line: usize, tok: &str, prefix: char, max: usize) -> Result<usize, ParseError> {
    let Some(rest) = tok.strip_prefix(prefix) else {
        return err(line, format!("expected `{prefix}<index>`, found `{tok}`"));
    };
    let i = number(line, Some(rest), "index")?;
    if i == 0 || i > max {
        return err(line, format!("`{tok}` outside {prefix}1..{prefix}{max}"));
    }
    Ok(i)
}

pub fn parse_witness(text: &str) -> Result<BipartiteMapWitness, ParseError> {
    let mut lines = data_lines(text);
    let hv = header(&mut lines, "witness", 2)?;
    let (nv, nu) = (hv[0], hv[1]);
    let mut points: Vec<Option<Vec<usize>>> = vec![None; nu];
    let mut countries: Vec<Option<Vec<usize>>> = vec![None; nv];
    let mut last = 1;
    for (ln, l) in lines {
        last = ln;
        let Some((head, body)) = l.split_once(':') else {
            return err(ln, format!("unrecognized line `{l}`"));
        };
        let mut ht = head.split_whitespace();
        let kind = ht.next();
        let Some(label) = ht.next() else {
            return err(ln, "missing label");
        };
        match kind {
            Some("pt") => {
                let i = labelled(ln, label, 'u', nu)?;
                let r = body
                    .split_whitespace()
                    .map(|t| labelled(ln, t, 'v', nv))
                    .collect::<Result<Vec<_>, _>>()?;
                if points[i - 1].replace(r).is_some() {
                    return err(ln, format!("point u{i} given twice"));
                }
            }
            Some("rot") => {
                let j = labelled(ln, label, 'v', nv)?;
                let r = body
                    .split_whitespace()
                    .map(|t| labelled(ln, t, 'u', nu))
                    .collect::<Result<Vec<_>, _>>()?;
                if countries[j - 1].replace(r).is_some() {
                    return err(ln, format!("country v{j} given twice"));
                }
            }
            _ => return err(ln, format!("unrecognized line `{l}`")),
        }
    }
    let points = points
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or(i + 1))
        .collect::<Result<Vec<_>, _>>()
        .or_else(|i| err(last, format!("point u{i} missing")))?;
    let countries = countries
        .into_iter()
        .enumerate()
        .map(|(j, c)| c.ok_or(j + 1))
        .collect::<Result<Vec<_>, _>>()
        .or_else(|j| err(last, format!("country v{j} missing")))?;
    BipartiteMapWitness::new(nv, points, countries).or_else(|e| err(last, e.to_string()))
}

pub fn write_witness(w: &BipartiteMapWitness) -> String {
    let mut out = format!("witness {} {}\n", w.country_count(), w.point_count());
    for (i, p) in w.point_rotations().iter().enumerate() {
        out.push_str(&format!("pt u{}: {}\n", i + 1, list(p, "v")));
    }
    for (j, c) in w.country_rotations().iter().enumerate() {
        out.push_str(&format!("rot v{}: {}\n", j + 1, list(c, "u")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_roundtrip_and_comments() {
        let text = "# K3\ngraph 3\n\ne 2 1\ne 3 2 # trailing\ne 1 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, SimpleGraph::cycle(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let e = parse_graph("graph 3\ne 1 2\ne 2 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate"));
        let e = parse_graph("graph 3\ne 1 x\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_graph("gr 3\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn embedding_roundtrip() {
        for e in [
            fixtures::kite(),
            fixtures::k5(),
            fixtures::w_configuration(),
            fixtures::tetrahedron(),
        ] {
            let text = write_embedding(&e);
            assert_eq!(parse_embedding(&text).unwrap(), e);
        }
    }

    #[test]
    fn embedding_errors() {
        let e = parse_embedding("embedding 4 1\ncross 1 1 3 2 4 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_embedding("embedding 2 0\nrot 1: 2\n").unwrap_err();
        assert!(e.message.contains("missing"));
    }
}
