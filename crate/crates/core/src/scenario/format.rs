//! Whitespace-delimited text formats for scenarios and distributions.
//!
//! Scenario:
//!
//! ```text
//! outcomes 3
//! node a
//! node b
//! edge t1 a b
//! ```
//!
//! Distribution: one block per edge, `edge <id>` followed by `m` lines of `m`
//! rationals (`n` or `n/d`). A `node <id>` line followed by one line of `m`
//! rationals gives the vector of a node without edges. `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{GraphDistribution, Scenario};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational, RationalMatrix};

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Lines<'a> {
    path: PathBuf,
    lines: Vec<Vec<Token<'a>>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, path: &Path) -> Self {
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (j, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        toks.push(Token {
                            text: &content[s..j],
                            line: i + 1,
                            column: content[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            if !toks.is_empty() {
                lines.push(toks);
            }
        }
        Lines {
            path: path.to_path_buf(),
            lines,
            pos: 0,
            last_line: text.lines().count(),
        }
    }

    fn next(&mut self) -> Option<&[Token<'a>]> {
        let l = self.lines.get(self.pos)?;
        self.pos += 1;
        Some(l)
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    fn err_at(&self, tok: &Token<'_>, message: impl Into<String>) -> Error {
        self.err(tok.line, tok.column, message)
    }

    fn err_eof(&self, message: impl Into<String>) -> Error {
        self.err(self.last_line + 1, 1, message)
    }

    fn rationals(&mut self, m: usize, what: &str) -> Result<Vec<Rational>> {
        let toks = match self.lines.get(self.pos) {
            Some(t) => t,
            None => return Err(self.err_eof(format!("unexpected end of file in {what}"))),
        };
        self.pos += 1;
        if toks.len() != m {
            let at = toks.get(m).unwrap_or(&toks[0]);
            return Err(self.err_at(at, format!("{what}: expected {m} entries, found {}", toks.len())));
        }
        toks.iter()
            .map(|t| {
                parse_rational(t.text)
                    .ok_or_else(|| self.err_at(t, format!("malformed rational `{}`", t.text)))
            })
            .collect()
    }
}

pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let text = crate::error::read_file(path)?;
    parse_scenario_str(&text, path)
}

/// Parses scenario text; `path` is only used in diagnostics.
pub fn parse_scenario_str(text: &str, path: &Path) -> Result<Scenario> {
    let mut lines = Lines::new(text, path);
    let mut outcomes: Option<usize> = None;
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut pending = Vec::new();
    while let Some(toks) = lines.next() {
        let toks: Vec<(String, usize, usize)> =
            toks.iter().map(|t| (t.text.to_string(), t.line, t.column)).collect();
        let (kw, line, col) = &toks[0];
        let tok_err = |i: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: toks[i].1,
            column: toks[i].2,
            message: msg,
        };
        let arity = |n: usize, usage: &str| -> Result<()> {
            if toks.len() != n {
                let i = n.min(toks.len() - 1);
                return Err(tok_err(i, format!("expected `{usage}`")));
            }
            Ok(())
        };
        match kw.as_str() {
            "outcomes" => {
                arity(2, "outcomes <m>")?;
                if outcomes.is_some() {
                    return Err(tok_err(0, "duplicate `outcomes` line".into()));
                }
                let m: usize = toks[1]
                    .0
                    .parse()
                    .map_err(|_| tok_err(1, format!("invalid outcome count `{}`", toks[1].0)))?;
                if m < 2 {
                    return Err(tok_err(1, format!("need at least 2 outcomes, got {m}")));
                }
                outcomes = Some(m);
            }
            "node" => {
                arity(2, "node <id>")?;
                if nodes.contains(&toks[1].0) {
                    return Err(tok_err(1, format!("duplicate node `{}`", toks[1].0)));
                }
                nodes.push(toks[1].0.clone());
            }
            "edge" => {
                arity(4, "edge <id> <source> <target>")?;
                if edges.iter().any(|e| e.0 == toks[1].0) {
                    return Err(tok_err(1, format!("duplicate edge `{}`", toks[1].0)));
                }
                edges.push((toks[1].0.clone(), toks[2].0.clone(), toks[3].0.clone()));
                pending.push(((toks[2].1, toks[2].2), (toks[3].1, toks[3].2)));
            }
            other => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: *line,
                    column: *col,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    let m = outcomes.ok_or_else(|| lines.err(1, 1, "missing `outcomes` line"))?;
    for (e, ((sl, sc), (tl, tc))) in edges.iter().zip(&pending) {
        for (v, l, c) in [(&e.1, sl, sc), (&e.2, tl, tc)] {
            if !nodes.contains(v) {
                return Err(lines.err(*l, *c, format!("edge `{}` references unknown node `{v}`", e.0)));
            }
        }
    }
    Scenario::new(m, nodes, edges)
}

pub fn parse_distribution(path: &Path, s: &Scenario) -> Result<GraphDistribution> {
    let text = crate::error::read_file(path)?;
    parse_distribution_str(&text, path, s)
}

/// Parses distribution text against `s` and validates it.
pub fn parse_distribution_str(text: &str, path: &Path, s: &Scenario) -> Result<GraphDistribution> {
    let m = s.outcomes();
    let mut lines = Lines::new(text, path);
    let mut mats: Vec<Option<RationalMatrix>> = vec![None; s.edges().len()];
    let mut nodes: Vec<Option<Vec<Rational>>> = vec![None; s.nodes().len()];
    while lines.pos < lines.lines.len() {
        let toks = &lines.lines[lines.pos];
        let head = (toks[0].text, toks[0].line, toks[0].column);
        let id = toks.get(1).map(|t| (t.text, t.line, t.column));
        let n = toks.len();
        lines.pos += 1;
        let err = |l: usize, c: usize, msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: l,
            column: c,
            message: msg,
        };
        match head.0 {
            "edge" | "node" if n != 2 => {
                return Err(err(head.1, head.2, format!("expected `{} <id>`", head.0)));
            }
            "edge" => {
                let (id, l, c) = id.expect("arity checked");
                let e = s
                    .edge_index(id)
                    .ok_or_else(|| err(l, c, format!("unknown edge `{id}`")))?;
                if mats[e].is_some() {
                    return Err(err(l, c, format!("duplicate block for edge `{id}`")));
                }
                let what = format!("matrix of edge `{id}`");
                let rows = (0..m)
                    .map(|_| lines.rationals(m, &what))
                    .collect::<Result<Vec<_>>>()?;
                mats[e] = Some(RationalMatrix::from_rows(rows)?);
            }
            "node" => {
                let (id, l, c) = id.expect("arity checked");
                let v = s
                    .node_index(id)
                    .ok_or_else(|| err(l, c, format!("unknown node `{id}`")))?;
                if nodes[v].is_some() {
                    return Err(err(l, c, format!("duplicate block for node `{id}`")));
                }
                nodes[v] = Some(lines.rationals(m, &format!("vector of node `{id}`"))?);
            }
            other => {
                return Err(err(head.1, head.2, format!("unknown keyword `{other}`")));
            }
        }
    }
    let mats = mats
        .into_iter()
        .zip(s.edges())
        .map(|(q, e)| {
            q.ok_or_else(|| lines.err_eof(format!("missing block for edge `{}`", e.id)))
        })
        .collect::<Result<Vec<_>>>()?;
    if nodes.iter().all(Option::is_none) {
        return GraphDistribution::from_edges(s, mats);
    }
    // Explicit node vectors: fill the rest from incident edges, then validate.
    let derived = fill_node_vectors(s, &mats, nodes)?;
    GraphDistribution::from_parts(s, Some(derived), mats)
}

fn fill_node_vectors(
    s: &Scenario,
    mats: &[RationalMatrix],
    mut nodes: Vec<Option<Vec<Rational>>>,
) -> Result<Vec<Vec<Rational>>> {
    for (e, q) in s.edges().iter().zip(mats) {
        if nodes[e.source].is_none() {
            nodes[e.source] = Some((0..q.rows()).map(|r| q.row(r).iter().sum()).collect());
        }
        if nodes[e.target].is_none() {
            nodes[e.target] = Some(q.transpose().to_rows().iter().map(|r| r.iter().sum()).collect());
        }
    }
    nodes
        .into_iter()
        .zip(s.nodes())
        .map(|(v, id)| {
            v.ok_or_else(|| {
                Error::InvalidDistribution(format!("node `{id}` has no edge and no vector"))
            })
        })
        .collect()
}

/// Canonical scenario text; parsing it returns an equal scenario.
pub fn write_scenario(s: &Scenario) -> String {
    let mut out = format!("outcomes {}\n", s.outcomes());
    for v in s.nodes() {
        let _ = writeln!(out, "node {v}");
    }
    for e in s.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.id, s.source_id(e), s.target_id(e));
    }
    out
}

/// Canonical distribution text. Node vectors are written only for nodes
/// without incident edges.
pub fn write_distribution(s: &Scenario, p: &GraphDistribution) -> String {
    let mut out = String::new();
    for v in s.isolated_nodes() {
        let vec = p.node(v).unwrap_or(&[]);
        let parts: Vec<String> = vec.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "node {v}\n{}", parts.join(" "));
    }
    for (id, q) in p.edge_ids().iter().zip(p.edge_matrices()) {
        let _ = writeln!(out, "edge {id}");
        for r in 0..q.rows() {
            let parts: Vec<String> = q.row(r).iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", parts.join(" "));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const D2: &str = "# two parallel edges\noutcomes 3\nnode a\nnode b\nedge t1 a b\nedge t2 a b\n";

    #[test]
    fn scenario_round_trip() {
        let s = parse_scenario_str(D2, Path::new("d2.scn")).unwrap();
        assert_eq!(s.nodes().len(), 2);
        assert_eq!(s.edges().len(), 2);
        let again = parse_scenario_str(&write_scenario(&s), Path::new("x")).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn scenario_errors_have_positions() {
        let err = parse_scenario_str("outcomes 2\nnode a\nedge e a  zz\n", Path::new("f"))
            .unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (3, 11)),
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_scenario_str("outcome 2\n", Path::new("f")),
            Err(Error::Parse { line: 1, column: 1, .. })
        ));
        assert!(parse_scenario_str("node a\n", Path::new("f")).is_err());
    }

    #[test]
    fn distribution_round_trip_and_errors() {
        let s = parse_scenario_str(D2, Path::new("d2.scn")).unwrap();
        let text = "edge t1\n1/3 0 0\n0 1/3 0\n0 0 1/3\nedge t2\n0 1/3 0\n0 0 1/3\n1/3 0 0\n";
        let p = parse_distribution_str(text, Path::new("p"), &s).unwrap();
        let again = parse_distribution_str(&write_distribution(&s, &p), Path::new("q"), &s).unwrap();
        assert_eq!(p, again);

        let bad = "edge t1\n1/3 0 0\n0 1/3 0\n0 0 1/3\nedge t2\n1/2 1/2 0\n0 0 0\n0 0 0\n";
        let err = parse_distribution_str(bad, Path::new("p"), &s).unwrap_err();
        assert!(err.to_string().contains("node `a`"), "{err}");

        let malformed = "edge t1\n1/3 0 0\n0 1/x 0\n";
        assert!(matches!(
            parse_distribution_str(malformed, Path::new("p"), &s),
            Err(Error::Parse { line: 3, column: 3, .. })
        ));

        let unnormalized = "edge t1\n1 0 0\n0 1 0\n0 0 1\nedge t2\n1 0 0\n0 1 0\n0 0 1\n";
        let err = parse_distribution_str(unnormalized, Path::new("p"), &s).unwrap_err();
        assert!(err.to_string().contains("edge `t1`"), "{err}");
    }
}
