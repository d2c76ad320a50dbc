//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines print in order; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{fixture, load, midpoint, random_combination, random_tree, random_tree_distribution};
use distpoly::collapse::{lower_bound_dipole, lower_bound_rose, spanning_tree_count, Counter, MemoStore};
use distpoly::criteria::*;
use distpoly::exact::rat;
use distpoly::polytope::{enumerate_vertices, enumerate_vertices_with, is_vertex, Engine, EnumerationOptions, Point};
use distpoly::scenario::{
    bipartite, build_polytope, deterministic_distributions, dipole, is_contextual, parse_scenario, rose,
};
use distpoly::{GraphDistribution, RationalMatrix, Scenario};
use num_bigint::BigInt;
use num_integer::binomial;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn vertex_count(s: &Scenario) -> Result<usize, String> {
    Ok(enumerate_vertices(&build_polytope(s).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .len())
}

fn c1_single_loop(_: &Counter) -> Outcome {
    let start = Instant::now();
    let got = vertex_count(&rose(1, 3).unwrap())?;
    let took = start.elapsed();
    // Cycles on subsets of three outcomes: C(3,k) (k-1)!.
    let want: u64 = (1..=3u64).map(|k| binomial(3, k) * (1..k).product::<u64>()).sum();
    ensure(got as u64 == want, || format!("{got} vertices, expected {want}"))?;
    ensure(took < Duration::from_secs(1), || format!("took {}", secs(took)))?;
    Ok(format!("kappa1(1,3) = {got} in {}", secs(took)))
}

fn c2_small_roses(_: &Counter) -> Outcome {
    let start = Instant::now();
    let a = vertex_count(&rose(2, 3).unwrap())?;
    let b = vertex_count(&rose(3, 3).unwrap())?;
    ensure((a, b) == (56, 488), || format!("got {a} and {b}"))?;
    Ok(format!("kappa1(2,3) = {a}, kappa1(3,3) = {b} by double description in {}", secs(start.elapsed())))
}

fn c3_four_loops(counter: &Counter) -> Outcome {
    let start = Instant::now();
    let k = counter.kappa(Family::Rose, 4, 3).map_err(|e| e.to_string())?;
    let t = counter.kappa_tilde_paths(Family::Rose, 4, 3).map_err(|e| e.to_string())?;
    ensure(k.total == 4088, || format!("kappa1(4,3) = {}", k.total))?;
    ensure(t.direct == 2443 && t.inclusion_exclusion == 2443, || format!("{t:?}"))?;
    ensure(k.total - t.direct == 1645, || "difference is not 1645".into())?;
    Ok(format!(
        "kappa1(4,3) = {}, kappa~1(4,3) = {} (direct) = {} (inclusion-exclusion) in {}",
        k.total,
        t.direct,
        t.inclusion_exclusion,
        secs(start.elapsed())
    ))
}

fn c4_three_edge_dipole(counter: &Counter) -> Outcome {
    let start = Instant::now();
    let k = counter.kappa(Family::Dipole, 3, 3).map_err(|e| e.to_string())?;
    let t = counter.kappa_tilde_paths(Family::Dipole, 3, 3).map_err(|e| e.to_string())?;
    ensure(k.total == 561, || format!("kappa2(3,3) = {}", k.total))?;
    ensure(t.direct == 408 && t.inclusion_exclusion == 408, || format!("{t:?}"))?;
    let mut by_criterion: Vec<Point> = enumerate_dipole_vertices(3, 3)
        .map_err(|e| e.to_string())?
        .iter()
        .map(GraphDistribution::flatten)
        .collect();
    by_criterion.sort();
    let by_dd = enumerate_vertices(&build_polytope(&dipole(3, 3).unwrap()).unwrap()).unwrap();
    ensure(by_criterion == by_dd, || {
        format!("criterion gives {} vertices, double description {}", by_criterion.len(), by_dd.len())
    })?;
    Ok(format!(
        "kappa2(3,3) = 561, kappa~2(3,3) = 408; enumerators agree vertex by vertex in {}",
        secs(start.elapsed())
    ))
}

fn c5_bounds(counter: &Counter) -> Outcome {
    let start = Instant::now();
    let r = lower_bound_rose(counter, 3, 3, 3).map_err(|e| e.to_string())?;
    let d = lower_bound_dipole(counter, 3, 2, 3).map_err(|e| e.to_string())?;
    ensure(r == BigInt::from(197883), || format!("rose bound {r}"))?;
    ensure(d == BigInt::from(4896), || format!("dipole bound {d}"))?;
    // 2443 * 3^2 * 3^2 and 12 * 408.
    ensure(r == BigInt::from(2443 * 81) && d == BigInt::from(12 * 408), || "arithmetic differs".into())?;
    Ok(format!("K33 via rose {r}, K32 via dipole {d} in {}", secs(start.elapsed())))
}

fn c6_spanning_trees(_: &Counter) -> Outcome {
    for n1 in 2..=4usize {
        for n2 in 2..=4usize {
            let t = spanning_tree_count(&bipartite(n1, n2, 2).unwrap()).map_err(|e| e.to_string())?;
            let want = BigInt::from(n1).pow(n2 as u32 - 1) * BigInt::from(n2).pow(n1 as u32 - 1);
            ensure(t == want, || format!("K_{n1},{n2}: {t}, expected {want}"))?;
        }
    }
    Ok("T(K_{n1,n2}) = n1^(n2-1) n2^(n1-1) for 2 <= n1, n2 <= 4".into())
}

fn c7_rank_fixtures(_: &Counter) -> Outcome {
    let graphs = |scn: &str, dist: &str| {
        let (s, p) = load(scn, dist);
        let hs: Vec<SupportBipartiteGraph> = a_sets(&s, &p)
            .unwrap()
            .iter()
            .map(|a| SupportBipartiteGraph::from_a_set(a).unwrap())
            .collect();
        (s, p, hs)
    };
    let (_, _, h) = graphs("d4_m3.scn", "d4_fifths.dist");
    let r = q_matrix(&h, 3, QVariant::Plain).unwrap().rank();
    ensure(r == 5, || format!("rank Q = {r} on the four-edge dipole"))?;
    for dist in ["r3_tenths.dist", "r3_sixths.dist"] {
        let (_, _, h) = graphs("r3_m4.scn", dist);
        let r = q_matrix(&h, 4, QVariant::Tilde).unwrap().rank();
        ensure(r == 7, || format!("rank Q~ = {r} on {dist}"))?;
    }
    for (scn, dist) in [
        ("d4_m3.scn", "d4_quarters.dist"),
        ("d4_m3.scn", "d4_fifths.dist"),
        ("r2_m3.scn", "r2_thirds.dist"),
        ("r3_m4.scn", "r3_tenths.dist"),
        ("r3_m4.scn", "r3_sixths.dist"),
    ] {
        let (s, p) = load(scn, dist);
        let report = match Shape::of(&s) {
            Shape::Dipole => dipole_is_vertex(&s, &p),
            _ => rose_is_vertex(&s, &p),
        }
        .map_err(|e| e.to_string())?;
        ensure(report.is_vertex, || format!("{dist} is not certified"))?;
    }
    Ok("rank Q = 5, both rank Q~ = 7, five fixtures certified".into())
}

struct Instance {
    scenario: Scenario,
    vertices: Vec<Point>,
}

fn instance(s: Scenario) -> Instance {
    let vertices = enumerate_vertices(&build_polytope(&s).unwrap()).unwrap();
    Instance { scenario: s, vertices }
}

fn criterion_verdict(s: &Scenario, p: &GraphDistribution) -> Result<bool, String> {
    let r = match Shape::of(s) {
        Shape::Dipole => dipole_is_vertex(s, p),
        Shape::Rose => rose_is_vertex(s, p),
        Shape::Other => unreachable!(),
    };
    r.map(|r| r.is_vertex).map_err(|e| e.to_string())
}

fn c8_completeness(_: &Counter) -> Outcome {
    let mut pool = Vec::new();
    for n in 1..=3 {
        for m in 2..=3 {
            pool.push(instance(dipole(n, m).unwrap()));
            pool.push(instance(rose(n, m).unwrap()));
        }
    }
    let mut checked = 0;
    for inst in &pool {
        for v in &inst.vertices {
            let p = GraphDistribution::from_point(&inst.scenario, v).unwrap();
            ensure(criterion_verdict(&inst.scenario, &p)?, || {
                format!("enumerated vertex rejected on {:?}", Shape::of(&inst.scenario))
            })?;
            checked += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(8);
    let mut midpoints = 0;
    while midpoints < 1000 {
        let inst = &pool[rng.gen_range(0..pool.len())];
        let n = inst.vertices.len();
        if n < 2 {
            continue;
        }
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let x = midpoint(&inst.vertices[i], &inst.vertices[j]);
        let p = GraphDistribution::from_point(&inst.scenario, &x).unwrap();
        let direct = is_vertex(&build_polytope(&inst.scenario).unwrap(), &x).unwrap();
        let crit = criterion_verdict(&inst.scenario, &p)?;
        ensure(!direct && !crit, || format!("disagreement: direct {direct}, criterion {crit}"))?;
        midpoints += 1;
    }
    Ok(format!("{checked} vertices and {midpoints} midpoints, no disagreements"))
}

fn c9_fiber_soundness(_: &Counter) -> Outcome {
    let glued: Vec<(Instance, Gluing)> = [
        dipole(2, 3).unwrap(),
        dipole(3, 2).unwrap(),
        rose(2, 3).unwrap(),
        rose(3, 2).unwrap(),
        bipartite(2, 2, 2).unwrap(),
        bipartite(2, 3, 2).unwrap(),
        bipartite(2, 2, 3).unwrap(),
    ]
    .into_iter()
    .map(|s| {
        let g = match Shape::of(&s) {
            Shape::Other => Gluing::bipartite(&s, 2, s.nodes().len() - 2).unwrap(),
            _ => Gluing::per_edge(&s).unwrap(),
        };
        (instance(s), g)
    })
    .collect();
    let mut rng = StdRng::seed_from_u64(9);
    let mut certified = 0;
    for _ in 0..1000 {
        let (inst, g) = &glued[rng.gen_range(0..glued.len())];
        let k = rng.gen_range(1..=3);
        let x = random_combination(&mut rng, &inst.vertices, k);
        let p = GraphDistribution::from_point(&inst.scenario, &x).unwrap();
        let r = fiber_sufficient_vertex(g, &p).map_err(|e| e.to_string())?;
        if r.verdict == FiberVerdict::Vertex {
            certified += 1;
            ensure(is_vertex(&build_polytope(&inst.scenario).unwrap(), &x).unwrap(), || {
                "vertex verdict on a non-vertex".into()
            })?;
        }
    }
    let (s, p) = load("k25_m4.scn", "k25_inconclusive.dist");
    let r = fiber_sufficient_vertex(&Gluing::bipartite(&s, 2, 5).unwrap(), &p).map_err(|e| e.to_string())?;
    ensure(r.verdict == FiberVerdict::Inconclusive, || "K25 fixture not inconclusive".into())?;
    ensure(is_vertex(&build_polytope(&s).unwrap(), &p.flatten()).unwrap(), || "K25 fixture is not a vertex".into())?;
    Ok(format!("1000 instances, {certified} vertex verdicts all sound; K25 fixture inconclusive and a vertex"))
}

fn c10_trees(_: &Counter) -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for i in 0..50 {
        let m = rng.gen_range(2..=3);
        let s = random_tree(&mut rng, 6, m);
        let p = random_tree_distribution(&mut rng, &s);
        ensure(!is_contextual(&s, &p).map_err(|e| e.to_string())?, || format!("tree {i} contextual"))?;
    }
    Ok("50 random trees, none contextual".into())
}

fn c11_pr_box(_: &Counter) -> Outcome {
    let (s, p) = load("c4_m2.scn", "pr_box.dist");
    let poly = build_polytope(&s).unwrap();
    ensure(is_vertex(&poly, &p.flatten()).unwrap(), || "PR box is not a vertex".into())?;
    ensure(is_contextual(&s, &p).unwrap(), || "PR box is not contextual".into())?;
    // Oracle: deterministic points plus, for every choice of identity or swap
    // per edge whose composite around the square is a 2-cycle, the uniform
    // mixture of that permutation pattern.
    let mut oracle: BTreeSet<Point> = deterministic_distributions(&s).unwrap().iter().map(GraphDistribution::flatten).collect();
    let perm = |swap: bool| {
        let mut q = RationalMatrix::zeros(2, 2);
        for a in 0..2 {
            let b = if swap { 1 - a } else { a };
            q.set(a, b, rat(1, 2));
        }
        q
    };
    for mask in 0u32..16 {
        if mask.count_ones() % 2 == 1 {
            let mats = (0..4).map(|e| perm(mask >> e & 1 == 1)).collect();
            oracle.insert(GraphDistribution::from_edges(&s, mats).unwrap().flatten());
        }
    }
    let got: BTreeSet<Point> = enumerate_vertices(&poly).unwrap().into_iter().collect();
    ensure(got == oracle && got.len() == 24, || format!("{} vertices, oracle {}", got.len(), oracle.len()))?;
    Ok("PR box is a contextual vertex; Dist(C4,2) has 24 vertices matching the oracle".into())
}

fn c12_engines(_: &Counter) -> Outcome {
    let naive = EnumerationOptions {
        engine: Engine::Naive,
        ..EnumerationOptions::default()
    };
    let dir = fixture("");
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".scn"))
        .collect();
    names.sort();
    let mut compared = Vec::new();
    for name in names {
        let s = parse_scenario(&dir.join(&name)).map_err(|e| e.to_string())?;
        let poly = build_polytope(&s).unwrap();
        if poly.dim() > 30 {
            continue;
        }
        let a = enumerate_vertices_with(&poly, &naive).map_err(|e| e.to_string())?;
        let b = enumerate_vertices(&poly).unwrap();
        ensure(a == b, || format!("{name}: naive {} vs double description {}", a.len(), b.len()))?;
        compared.push(name.trim_end_matches(".scn").to_string());
    }
    Ok(format!("{} polytopes agree: {}", compared.len(), compared.join(" ")))
}

fn main() {
    let memo = tempfile::tempdir().unwrap();
    let counter = Counter {
        memo: Some(MemoStore::open(memo.path()).unwrap()),
        cross_check: true,
        ..Counter::default()
    };
    let criteria: [(&str, fn(&Counter) -> Outcome); 12] = [
        ("single loop vertex count", c1_single_loop),
        ("rose counts with two and three loops", c2_small_roses),
        ("four-loop rose counts", c3_four_loops),
        ("three-edge dipole counts", c4_three_edge_dipole),
        ("bipartite lower bounds", c5_bounds),
        ("spanning trees of complete bipartite graphs", c6_spanning_trees),
        ("rank fixtures", c7_rank_fixtures),
        ("criterion completeness", c8_completeness),
        ("fiber soundness", c9_fiber_soundness),
        ("trees are non-contextual", c10_trees),
        ("PR box and the square", c11_pr_box),
        ("naive and double description agree", c12_engines),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(|| f(&counter)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
