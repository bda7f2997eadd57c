//! Line-oriented text format for drawings.
//!
//! ```text
//! 1drawing v1
//! n 4
//! edges 0 1 0 2 0 3 1 2 1 3 2 3
//! cross 0 2 1 3
//! rot 0: 1 x0 3
//! rot 1: 2 x0 0
//! rot 2: 3 x0 1
//! rot 3: 0 x0 2
//! rot x0: 0 1 2 3
//! ```
//!
//! Rotation entries name the far end of each segment. When several
//! segments join the same two nodes, `q/k` picks the `k`-th of them in
//! segment order; the writer adds the suffix only in that case.

use thiserror::Error;

use super::{Node, OneDrawing};
use crate::graph::Graph;

pub const HEADER: &str = "1drawing v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

pub fn write(d: &OneDrawing) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("n {}\n", d.graph().n()));
    out.push_str("edges");
    for &(u, v) in d.edges() {
        out.push_str(&format!(" {u} {v}"));
    }
    out.push_str("\ncross");
    for &(a, b) in d.crossings() {
        out.push_str(&format!(" {} {} {} {}", a.0, a.1, b.0, b.1));
    }
    out.push('\n');
    for (p, list) in d.rotation().iter().enumerate() {
        out.push_str(&format!("rot {}:", d.node_of(p)));
        for &dart in list {
            let q = d.head(dart);
            let parallel: Vec<usize> = between(d, p, q);
            out.push_str(&format!(" {}", d.node_of(q)));
            if parallel.len() > 1 {
                let k = parallel.iter().position(|&s| s == dart / 2).expect("dart joins p and q");
                out.push_str(&format!("/{k}"));
            }
        }
        out.push('\n');
    }
    out
}

/// Segments joining `p` and `q`, in segment order.
fn between(d: &OneDrawing, p: usize, q: usize) -> Vec<usize> {
    d.segments()
        .iter()
        .enumerate()
        .filter(|(_, s)| (s.ends[0] == p && s.ends[1] == q) || (s.ends[0] == q && s.ends[1] == p))
        .map(|(i, _)| i)
        .collect()
}

fn parse_node(tok: &str, line: usize) -> Result<Node, ParseError> {
    if let Some(rest) = tok.strip_prefix('x') {
        rest.parse().map(Node::X).or_else(|_| err(line, format!("bad dummy name `{tok}`")))
    } else {
        tok.parse().map(Node::V).or_else(|_| err(line, format!("bad node name `{tok}`")))
    }
}

fn numbers(rest: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    rest.split_whitespace()
        .map(|t| t.parse().or_else(|_| err(line, format!("bad number `{t}`"))))
        .collect()
}

/// Parses one drawing. The result is structurally consistent but not
/// validated; call [`OneDrawing::validate`] for the drawing invariants.
pub fn parse(text: &str) -> Result<OneDrawing, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    let mut next = |what: &str| -> Result<(usize, &str), ParseError> {
        lines.next().map_or_else(|| err(0, format!("unexpected end of input, expected {what}")), Ok)
    };
    let (ln, header) = next("header")?;
    if header != HEADER {
        return err(ln, format!("expected `{HEADER}`"));
    }
    let (ln, l) = next("`n`")?;
    let n: usize = match l.strip_prefix("n ") {
        Some(r) => r.trim().parse().or_else(|_| err(ln, "bad vertex count"))?,
        None => return err(ln, "expected `n <count>`"),
    };
    let mut g = Graph::empty(n).or_else(|e| err(ln, e.to_string()))?;

    let (ln, l) = next("`edges`")?;
    let Some(rest) = l.strip_prefix("edges") else {
        return err(ln, "expected `edges`");
    };
    let nums = numbers(rest, ln)?;
    if nums.len() % 2 != 0 {
        return err(ln, "odd number of endpoints");
    }
    for p in nums.chunks(2) {
        if g.has_edge(p[0], p[1]) {
            return err(ln, format!("repeated edge {} {}", p[0], p[1]));
        }
        g.try_add_edge(p[0], p[1]).or_else(|e| err(ln, e.to_string()))?;
    }

    let (ln, l) = next("`cross`")?;
    let Some(rest) = l.strip_prefix("cross") else {
        return err(ln, "expected `cross`");
    };
    let nums = numbers(rest, ln)?;
    if nums.len() % 4 != 0 {
        return err(ln, "crossings need four endpoints each");
    }
    let crossings: Vec<_> = nums.chunks(4).map(|c| ((c[0], c[1]), (c[2], c[3]))).collect();
    for &(a, b) in &crossings {
        for e in [a, b] {
            if e.0 >= n || e.1 >= n || !g.has_edge(e.0, e.1) {
                return err(ln, format!("crossing uses non-edge {} {}", e.0, e.1));
            }
        }
    }
    let shell = OneDrawing::skeleton_only(g.clone(), crossings.clone()).or_else(|e| err(ln, e.to_string()))?;
    let nodes = shell.node_count();

    let mut rotation: Vec<Option<Vec<(Node, (usize, usize))>>> = vec![None; nodes];
    for (ln, l) in lines {
        if l.is_empty() {
            continue;
        }
        let Some(rest) = l.strip_prefix("rot ") else {
            return err(ln, "expected `rot <node>: ...`");
        };
        let Some((name, list)) = rest.split_once(':') else {
            return err(ln, "missing `:`");
        };
        let node = parse_node(name.trim(), ln)?;
        let Some(p) = shell.node_id(node) else {
            return err(ln, format!("unknown node {node}"));
        };
        if rotation[p].is_some() {
            return err(ln, format!("second rotation for {node}"));
        }
        let mut entries = Vec::new();
        for tok in list.split_whitespace() {
            let (name, k) = match tok.split_once('/') {
                Some((a, b)) => (a, b.parse::<usize>().or_else(|_| err(ln, format!("bad index in `{tok}`")))?),
                None => (tok, 0),
            };
            let q_node = parse_node(name, ln)?;
            let Some(q) = shell.node_id(q_node) else {
                return err(ln, format!("unknown node {q_node}"));
            };
            let segs = between(&shell, p, q);
            let Some(&s) = segs.get(k) else {
                return err(ln, format!("no segment joins {node} and {q_node}"));
            };
            entries.push((q_node, shell.edges()[shell.segments()[s].edge]));
        }
        rotation[p] = Some(entries);
    }
    let rotation: Vec<_> = rotation
        .into_iter()
        .enumerate()
        .map(|(p, r)| r.map_or_else(|| err(0, format!("no rotation for {}", shell.node_of(p))), Ok))
        .collect::<Result<_, _>>()?;
    OneDrawing::new(g, crossings, rotation).or_else(|e| err(0, e.to_string()))
}
