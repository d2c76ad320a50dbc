//! A-set files for `distpoly construct`.
//!
//! ```text
//! family dipole            # or bipartite, rose
//! outcomes 3
//! set 0,0 0,2 1,1 2,0      # dipole: one (a,b) pair per element
//! ```
//!
//! Bipartite files add `left <n1>` and write each element as `blocks>image`,
//! e.g. `set 0,0,0>0 2,2,2>1`. Rose files list cycles: `lift 0,1 0,2,4`.

use std::path::{Path, PathBuf};

use crate::criteria::{
    construct_bipartite_vertex, construct_dipole_vertex, construct_rose_vertex, ProductSimplexVertex,
};
use crate::error::{Error, Result};
use crate::scenario::{bipartite, dipole, rose, CyclePerm, GraphDistribution, Scenario};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Dipole {
        m: usize,
        sets: Vec<Vec<ProductSimplexVertex>>,
    },
    Bipartite {
        m: usize,
        n1: usize,
        sets: Vec<Vec<ProductSimplexVertex>>,
        injections: Vec<Vec<usize>>,
    },
    Rose {
        m: usize,
        lifts: Vec<Vec<CyclePerm>>,
    },
}

impl Recipe {
    pub fn scenario(&self) -> Result<Scenario> {
        match self {
            Recipe::Dipole { m, sets } => dipole(sets.len(), *m),
            Recipe::Bipartite { m, n1, sets, .. } => bipartite(*n1, sets.len(), *m),
            Recipe::Rose { m, lifts } => rose(lifts.len(), *m),
        }
    }

    pub fn build(&self) -> Result<GraphDistribution> {
        match self {
            Recipe::Dipole { m, sets } => construct_dipole_vertex(*m, sets),
            Recipe::Bipartite {
                m,
                n1,
                sets,
                injections,
            } => construct_bipartite_vertex(*n1, *m, sets, injections),
            Recipe::Rose { m, lifts } => construct_rose_vertex(*m, lifts),
        }
    }
}

struct Ctx<'a> {
    path: &'a Path,
}

impl Ctx<'_> {
    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: PathBuf::from(self.path),
            line,
            column,
            message: message.into(),
        }
    }
}

fn words(line: &str) -> Vec<(usize, &str)> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (j, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(j),
            (true, Some(s)) => {
                out.push((content[..s].chars().count() + 1, &content[s..j]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn numbers(s: &str) -> Option<Vec<usize>> {
    s.split(',').map(|x| x.parse().ok()).collect()
}

pub fn parse_recipe(path: &Path) -> Result<Recipe> {
    let text = crate::error::read_file(path)?;
    parse_recipe_str(&text, path)
}

pub fn parse_recipe_str(text: &str, path: &Path) -> Result<Recipe> {
    let ctx = Ctx { path };
    let mut family: Option<(usize, String)> = None;
    let mut m: Option<usize> = None;
    let mut n1: Option<usize> = None;
    // Raw elements with positions, checked once the header is known.
    let mut sets: Vec<(usize, &str, Vec<(usize, &str)>)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let w = words(raw);
        let Some(&(col, head)) = w.first() else {
            continue;
        };
        last = line;
        let single = |what: &str| -> Result<&str> {
            if w.len() != 2 {
                return Err(ctx.err(line, col, format!("`{what}` takes one argument")));
            }
            Ok(w[1].1)
        };
        match head {
            "family" => family = Some((line, single("family")?.to_string())),
            "outcomes" | "left" => {
                let v: usize = single(head)?
                    .parse()
                    .map_err(|_| ctx.err(line, w[1].0, format!("expected a count, got `{}`", w[1].1)))?;
                if head == "outcomes" {
                    m = Some(v);
                } else {
                    n1 = Some(v);
                }
            }
            "set" | "lift" => sets.push((line, head, w[1..].to_vec())),
            other => return Err(ctx.err(line, col, format!("unknown keyword `{other}`"))),
        }
    }
    let (fline, family) = family.ok_or_else(|| ctx.err(last.max(1), 1, "missing `family` line"))?;
    let m = m.ok_or_else(|| ctx.err(last.max(1), 1, "missing `outcomes` line"))?;
    let expect = if family == "rose" { "lift" } else { "set" };
    if let Some((line, head, _)) = sets.iter().find(|s| s.1 != expect) {
        return Err(ctx.err(*line, 1, format!("`{head}` lines do not belong in a {family} file")));
    }
    if sets.is_empty() {
        return Err(ctx.err(last.max(1), 1, format!("no `{expect}` lines")));
    }
    match family.as_str() {
        "dipole" | "bipartite" => {
            let blocks = if family == "dipole" {
                2
            } else {
                n1.ok_or_else(|| ctx.err(fline, 1, "bipartite files need a `left` line"))?
            };
            let mut out = Vec::new();
            let mut injections = Vec::new();
            for (line, _, elems) in &sets {
                let mut set = Vec::new();
                let mut f = Vec::new();
                for &(col, tok) in elems {
                    let (tuple, image) = match (family.as_str(), tok.split_once('>')) {
                        ("bipartite", Some((t, img))) => (t, Some(img)),
                        ("bipartite", None) => {
                            return Err(ctx.err(*line, col, format!("`{tok}` lacks a `>image`")))
                        }
                        _ => (tok, None),
                    };
                    let b = numbers(tuple)
                        .filter(|b| b.len() == blocks)
                        .ok_or_else(|| ctx.err(*line, col, format!("expected {blocks} comma-separated outcomes, got `{tuple}`")))?;
                    let v = ProductSimplexVertex::new(b, m).map_err(|e| ctx.err(*line, col, e.to_string()))?;
                    set.push(v);
                    if let Some(img) = image {
                        f.push(img.parse().map_err(|_| ctx.err(*line, col, format!("bad image `{img}`")))?);
                    }
                }
                out.push(set);
                injections.push(f);
            }
            Ok(if family == "dipole" {
                Recipe::Dipole { m, sets: out }
            } else {
                Recipe::Bipartite {
                    m,
                    n1: blocks,
                    sets: out,
                    injections,
                }
            })
        }
        "rose" => {
            let mut lifts = Vec::new();
            for (line, _, elems) in &sets {
                let mut lift = Vec::new();
                for &(col, tok) in elems {
                    let c = numbers(tok).ok_or_else(|| ctx.err(*line, col, format!("bad cycle `{tok}`")))?;
                    lift.push(CyclePerm::new(c, m).map_err(|e| ctx.err(*line, col, e.to_string()))?);
                }
                lifts.push(lift);
            }
            Ok(Recipe::Rose { m, lifts })
        }
        other => Err(ctx.err(fline, 8, format!("unknown family `{other}`"))),
    }
}
