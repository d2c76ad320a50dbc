//! The `distpoly` command-line front end.

mod recipe;

pub use recipe::{parse_recipe, parse_recipe_str, Recipe};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::collapse::{
    collapse_with, general_lower_bound, lower_bound_dipole, lower_bound_rose, CountEngine, Counter,
    MemoStore,
};
use crate::criteria::{dipole_is_vertex, rose_is_vertex, CriterionReport, Family, Shape};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix};
use crate::polytope::{
    enumerate_vertices_with, is_vertex, support, Engine, EnumerationOptions, DEFAULT_NAIVE_BUDGET,
};
use crate::scenario::{
    build_polytope, contextuality, parse_distribution, parse_scenario, write_distribution,
    write_scenario, Contextuality, GraphDistribution, Scenario,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "distpoly", version, about = "Vertices and contextuality of graph-distribution polytopes")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Step budget for the naive engine and the forest search.
    #[arg(long, env = "DISTPOLY_BUDGET", global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Dd,
    Naive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountEngineArg {
    Auto,
    Dd,
    Criterion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Rose,
    Dipole,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Rose => Family::Rose,
            FamilyArg::Dipole => Family::Dipole,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the vertices of Dist(X, m), tagged deterministic or contextual.
    Vertices {
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Dd)]
        engine: EngineArg,
    },
    /// Decide whether a distribution is a vertex, with a certificate.
    Check { scenario: PathBuf, distribution: PathBuf },
    /// Decide whether a distribution is contextual.
    Classify { scenario: PathBuf, distribution: PathBuf },
    /// Count vertices of rose or dipole polytopes.
    Count(CountArgs),
    /// Lower bounds on contextual vertices.
    Bound(BoundArgs),
    /// Contract edges and print the quotient scenario.
    Collapse {
        scenario: PathBuf,
        /// Comma-separated edge ids.
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<String>,
        /// Also collapse edges whose endpoints are already identified.
        #[arg(long)]
        allow_cycles: bool,
    },
    /// Build a vertex from an A-set file.
    Construct { recipe: PathBuf },
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(short)]
    pub n: usize,
    #[arg(short)]
    pub m: usize,
    /// Count vertices without collapsed edges (and, for dipoles, not deterministic).
    #[arg(long)]
    pub tilde: bool,
    #[arg(long, value_enum, default_value_t = CountEngineArg::Auto)]
    pub engine: CountEngineArg,
    /// Also run the other engine where feasible and compare.
    #[arg(long)]
    pub cross_check: bool,
    /// Directory for memoized counts.
    #[arg(long)]
    pub memo: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Bound for K_{n1,n2}.
    #[arg(long, num_args = 2, value_names = ["N1", "N2"], conflicts_with = "scenario")]
    pub bipartite: Option<Vec<usize>>,
    /// Bound for an arbitrary connected scenario file.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[arg(short)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = FamilyArg::Rose)]
    pub via: FamilyArg,
    #[arg(long)]
    pub memo: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command. Reports
/// go to `out` or the `-o` file, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                    s.push('\n');
                    s
                }
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => out.write_all(text.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidDistribution(_)
        | Error::InvalidScenario(_)
        | Error::Infeasible(_)
        | Error::DimensionMismatch(_) => EXIT_PARSE,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

struct Report {
    text: String,
    json: Value,
}

fn rat_str(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn matrix_json(q: &RationalMatrix) -> Value {
    Value::Array(
        (0..q.rows())
            .map(|r| Value::Array(q.row(r).iter().map(rat_str).collect()))
            .collect(),
    )
}

fn distribution_json(p: &GraphDistribution) -> Value {
    let edges: serde_json::Map<String, Value> = p
        .edge_ids()
        .iter()
        .zip(p.edge_matrices())
        .map(|(id, q)| (id.clone(), matrix_json(q)))
        .collect();
    let nodes: serde_json::Map<String, Value> = p
        .node_ids()
        .iter()
        .zip(p.node_vectors())
        .map(|(id, v)| (id.clone(), Value::Array(v.iter().map(rat_str).collect())))
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

fn criterion_json(r: &CriterionReport) -> Value {
    json!({
        "graphs": r.graphs.iter().zip(&r.acyclic).map(|(h, a)| json!({
            "edges": h.edges().iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
            "acyclic": a,
            "components": h.components_with_singletons().iter()
                .map(|c| json!({ "left": c.left, "right": c.right }))
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "q": matrix_json(&r.q.matrix),
        "rank": r.rank,
        "required_rank": r.required_rank,
    })
}

fn counter(budget: Option<u64>, memo: &Option<PathBuf>) -> Result<Counter> {
    let mut c = Counter::default();
    if let Some(b) = budget {
        c.budget = b;
    }
    if let Some(dir) = memo {
        c.memo = Some(MemoStore::open(dir)?);
    }
    Ok(c)
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Vertices { scenario, engine } => {
            let s = parse_scenario(scenario)?;
            let opts = EnumerationOptions {
                engine: match engine {
                    EngineArg::Dd => Engine::DoubleDescription,
                    EngineArg::Naive => Engine::Naive,
                },
                naive_budget: cli.budget.unwrap_or(DEFAULT_NAIVE_BUDGET),
            };
            let verts = enumerate_vertices_with(&build_polytope(&s)?, &opts)?;
            let mut text = String::new();
            let mut list = Vec::new();
            let mut contextual = 0;
            for (i, v) in verts.iter().enumerate() {
                let p = GraphDistribution::from_point(&s, v)?;
                let tag = if p.is_deterministic() {
                    "deterministic"
                } else {
                    contextual += 1;
                    "contextual"
                };
                text.push_str(&format!("# vertex {} {tag}\n", i + 1));
                text.push_str(&write_distribution(&s, &p));
                list.push(json!({ "tag": tag, "distribution": distribution_json(&p) }));
            }
            text.push_str(&format!(
                "# {} vertices, {} deterministic, {contextual} contextual\n",
                verts.len(),
                verts.len() - contextual
            ));
            Ok(Report {
                text,
                json: json!({ "count": verts.len(), "contextual": contextual, "vertices": list }),
            })
        }
        Command::Check {
            scenario,
            distribution,
        } => {
            let s = parse_scenario(scenario)?;
            let p = parse_distribution(distribution, &s)?;
            check(&s, &p)
        }
        Command::Classify {
            scenario,
            distribution,
        } => {
            let s = parse_scenario(scenario)?;
            let p = parse_distribution(distribution, &s)?;
            match contextuality(&s, &p)? {
                Contextuality::Contextual => Ok(Report {
                    text: "contextual: no convex combination of deterministic distributions matches\n"
                        .into(),
                    json: json!({ "contextual": true }),
                }),
                Contextuality::NonContextual(w) => {
                    let mut text = String::from("non-contextual\n");
                    for (a, l) in &w {
                        let assign: Vec<String> = s
                            .nodes()
                            .iter()
                            .zip(a)
                            .map(|(v, x)| format!("{v}={x}"))
                            .collect();
                        text.push_str(&format!("{l} * [{}]\n", assign.join(" ")));
                    }
                    let witness: Vec<Value> = w
                        .iter()
                        .map(|(a, l)| json!({ "assignment": a, "weight": l.to_string() }))
                        .collect();
                    Ok(Report {
                        text,
                        json: json!({ "contextual": false, "witness": witness }),
                    })
                }
            }
        }
        Command::Count(a) => {
            let mut c = counter(cli.budget, &a.memo)?;
            c.engine = match a.engine {
                CountEngineArg::Auto => CountEngine::Auto,
                CountEngineArg::Dd => CountEngine::DoubleDescription,
                CountEngineArg::Criterion => CountEngine::Criterion,
            };
            c.cross_check = a.cross_check;
            let family: Family = a.family.into();
            if a.tilde {
                let k = c.kappa_tilde_paths(family, a.n, a.m)?;
                if k.direct != k.inclusion_exclusion {
                    return Err(Error::Precondition(format!(
                        "direct filter gives {} but inclusion-exclusion gives {}",
                        k.direct, k.inclusion_exclusion
                    )));
                }
                Ok(Report {
                    text: format!(
                        "{}\n# direct filter {}, inclusion-exclusion {}\n",
                        k.direct, k.direct, k.inclusion_exclusion
                    ),
                    json: json!({
                        "family": family.name(), "n": a.n, "m": a.m,
                        "kappa_tilde": k.direct.to_string(),
                        "direct": k.direct.to_string(),
                        "inclusion_exclusion": k.inclusion_exclusion.to_string(),
                    }),
                })
            } else {
                let r = c.kappa(family, a.n, a.m)?;
                let mut text = format!("{}\n", r.total);
                for line in r.to_string().lines() {
                    text.push_str(&format!("# {line}\n"));
                }
                Ok(Report {
                    text,
                    json: json!({
                        "family": family.name(), "n": a.n, "m": a.m,
                        "kappa": r.total.to_string(),
                        "deterministic": r.deterministic.to_string(),
                        "contextual": r.contextual.to_string(),
                        "contextual_without_collapsed": r.contextual_without_collapsed.to_string(),
                        "by_collapsed_edges": r.by_collapsed_edges.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    }),
                })
            }
        }
        Command::Bound(a) => {
            let c = counter(cli.budget, &a.memo)?;
            let (value, what) = match (&a.bipartite, &a.scenario) {
                (Some(ns), None) => {
                    let (n1, n2) = (ns[0], ns[1]);
                    let v = match a.via {
                        FamilyArg::Rose => lower_bound_rose(&c, n1, n2, a.m)?,
                        FamilyArg::Dipole => lower_bound_dipole(&c, n1, n2, a.m)?,
                    };
                    (v, format!("K_{{{n1},{n2}}} via {}", Family::from(a.via).name()))
                }
                (None, Some(path)) => {
                    let s = parse_scenario(path)?;
                    (general_lower_bound(&c, &s, a.m)?, path.display().to_string())
                }
                _ => {
                    return Err(Error::Precondition(
                        "give either --bipartite N1 N2 or --scenario FILE".into(),
                    ))
                }
            };
            Ok(Report {
                text: format!("{value}\n# lower bound on contextual vertices, {what}, m={}\n", a.m),
                json: json!({ "bound": value.to_string(), "instance": what, "m": a.m }),
            })
        }
        Command::Collapse {
            scenario,
            edges,
            allow_cycles,
        } => {
            let s = parse_scenario(scenario)?;
            let ids: Vec<&str> = edges.iter().map(String::as_str).collect();
            let cm = collapse_with(&s, &ids, *allow_cycles)?;
            let q = cm.quotient();
            Ok(Report {
                text: write_scenario(q),
                json: json!({
                    "outcomes": q.outcomes(),
                    "nodes": q.nodes(),
                    "edges": q.edges().iter().map(|e| json!({
                        "id": e.id, "source": q.source_id(e), "target": q.target_id(e)
                    })).collect::<Vec<_>>(),
                    "collapsed": cm.collapsed_edges(),
                }),
            })
        }
        Command::Construct { recipe } => {
            let r = parse_recipe(recipe)?;
            let s = r.scenario()?;
            let p = r.build()?;
            Ok(Report {
                text: format!("# vertex (verified)\n{}", write_distribution(&s, &p)),
                json: json!({ "vertex": true, "distribution": distribution_json(&p) }),
            })
        }
    }
}

fn check(s: &Scenario, p: &GraphDistribution) -> Result<Report> {
    let shape = Shape::of(s);
    let (vertex, mut text, mut json) = match shape {
        Shape::Dipole | Shape::Rose => {
            let r = if shape == Shape::Dipole {
                dipole_is_vertex(s, p)?
            } else {
                rose_is_vertex(s, p)?
            };
            let method = if shape == Shape::Dipole {
                "dipole criterion (acyclic support graphs, rank Q = 2m - 1)"
            } else {
                "rose criterion (acyclic support graphs, rank Q~ = 2m - 1)"
            };
            let text = format!("method: {method}\n{r}\n");
            let mut j = criterion_json(&r);
            j["method"] = json!(if shape == Shape::Dipole { "dipole" } else { "rose" });
            (r.is_vertex, text, j)
        }
        Shape::Other => {
            let poly = build_polytope(s)?;
            let x = p.flatten();
            let v = is_vertex(&poly, &x)?;
            let supp = support(&x);
            let cols: Vec<&str> = supp.indices().iter().map(|&i| poly.labels()[i].as_str()).collect();
            let rank = poly.a().select_columns(supp.indices()).rank();
            let text = format!(
                "method: support columns\nsupport ({}): {}\nrank of support columns: {rank}\nverdict: {}\n",
                cols.len(),
                cols.join(" "),
                if v { "vertex" } else { "not a vertex" }
            );
            let j = json!({ "method": "support-columns", "support": cols, "rank": rank });
            (v, text, j)
        }
    };
    let contextual = if vertex {
        !p.is_deterministic()
    } else {
        contextuality(s, p)? == Contextuality::Contextual
    };
    text.push_str(&format!(
        "contextual: {}\n",
        if contextual { "yes" } else { "no" }
    ));
    json["vertex"] = json!(vertex);
    json["contextual"] = json!(contextual);
    Ok(Report { text, json })
}
