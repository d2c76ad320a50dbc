//! Vertex counts `kappa` and `kappa~` for roses and dipoles.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::binomial;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::collapsed_edge_count;
use crate::criteria::{count_vertices_by_criterion, Family, VertexCensus, DEFAULT_SEARCH_BUDGET};
use crate::error::{Error, Result};
use crate::polytope::enumerate_vertices;
use crate::scenario::{build_polytope, GraphDistribution};

/// Version tag mixed into memo keys; bump when counting semantics change.
pub const COUNT_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+census1");

/// Largest variable count `Auto` hands to double description.
pub const DD_VARIABLE_LIMIT: usize = 36;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CountEngine {
    /// Double description for small roses, the forest criterion otherwise.
    #[default]
    Auto,
    DoubleDescription,
    Criterion,
}

/// Directory of JSON files keyed by a hash of `(family, n, m, version)`.
#[derive(Clone, Debug)]
pub struct MemoStore {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl MemoStore {
    pub fn open(dir: impl AsRef<Path>) -> Result<MemoStore> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(MemoStore {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(family: Family, n: usize, m: usize) -> String {
        let mut h = Sha256::new();
        h.update(format!("family={};n={n};m={m};version={COUNT_VERSION}", family.name()));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored census, or `None` when absent or unreadable.
    pub fn get(&self, key: &str) -> Option<VertexCensus> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Writes to a private temporary file, then renames over the target.
    pub fn put(&self, key: &str, census: &VertexCensus) -> Result<()> {
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_string_pretty(census).expect("census serializes"))?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}

/// Count of the vertices of `Dist(R_n, m)` or `Dist(D_n, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub total: u128,
    pub deterministic: u128,
    pub contextual: u128,
    /// Non-deterministic vertices without collapsed edge matrices.
    pub contextual_without_collapsed: u128,
    /// Entry `k` counts vertices with exactly `k` collapsed edge matrices.
    pub by_collapsed_edges: Vec<u128>,
}

impl CountReport {
    fn from_census(family: Family, n: usize, m: usize, c: &VertexCensus) -> CountReport {
        CountReport {
            family,
            n,
            m,
            total: c.total,
            deterministic: c.deterministic,
            contextual: c.total - c.deterministic,
            contextual_without_collapsed: c.contextual_without_collapsed,
            by_collapsed_edges: c.by_collapsed_edges.clone(),
        }
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {} n={} m={}", self.family.name(), self.n, self.m)?;
        writeln!(f, "vertices: {}", self.total)?;
        writeln!(f, "deterministic: {}", self.deterministic)?;
        writeln!(f, "contextual: {}", self.contextual)?;
        writeln!(f, "contextual without collapsed edges: {}", self.contextual_without_collapsed)?;
        for (k, c) in self.by_collapsed_edges.iter().enumerate() {
            writeln!(f, "with {k} collapsed edges: {c}")?;
        }
        Ok(())
    }
}

/// `kappa~` from both independent computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KappaTilde {
    pub direct: u128,
    pub inclusion_exclusion: u128,
}

/// Counting configuration shared by the `kappa` functions and the bounds.
#[derive(Clone, Debug)]
pub struct Counter {
    pub engine: CountEngine,
    pub budget: u64,
    /// Run both engines where double description is feasible and compare.
    pub cross_check: bool,
    pub memo: Option<MemoStore>,
}

impl Default for Counter {
    fn default() -> Self {
        Counter {
            engine: CountEngine::Auto,
            budget: DEFAULT_SEARCH_BUDGET,
            cross_check: false,
            memo: None,
        }
    }
}

fn dd_census(family: Family, n: usize, m: usize) -> Result<VertexCensus> {
    let s = family.scenario(n, m)?;
    let mut c = VertexCensus::default();
    for v in enumerate_vertices(&build_polytope(&s)?)? {
        let p = GraphDistribution::from_point(&s, &v)?;
        c.record(1, p.is_deterministic(), collapsed_edge_count(&p));
    }
    Ok(c)
}

/// The scenario without edges: `m` points for a rose, `m^2` for a dipole.
fn edgeless_census(family: Family, m: usize) -> VertexCensus {
    let total = match family {
        Family::Rose => m as u128,
        Family::Dipole => (m * m) as u128,
    };
    VertexCensus {
        total,
        deterministic: total,
        with_collapsed_edge: 0,
        contextual_without_collapsed: 0,
        by_collapsed_edges: vec![total],
    }
}

impl Counter {
    fn use_dd(&self, family: Family, n: usize, m: usize) -> bool {
        match self.engine {
            CountEngine::DoubleDescription => true,
            CountEngine::Criterion => false,
            CountEngine::Auto => family == Family::Rose && n * m * m <= DD_VARIABLE_LIMIT,
        }
    }

    /// Vertex census, from the memo store when present.
    pub fn census(&self, family: Family, n: usize, m: usize) -> Result<VertexCensus> {
        if m < 2 {
            return Err(Error::Precondition("need m >= 2".into()));
        }
        if n == 0 {
            return Ok(edgeless_census(family, m));
        }
        let key = MemoStore::key(family, n, m);
        if let Some(c) = self.memo.as_ref().and_then(|s| s.get(&key)) {
            return Ok(c);
        }
        let dd = self.use_dd(family, n, m);
        let c = if dd {
            dd_census(family, n, m)?
        } else {
            count_vertices_by_criterion(family, n, m, self.budget)?
        };
        if self.cross_check {
            let other = if dd {
                Some(count_vertices_by_criterion(family, n, m, self.budget)?)
            } else if n * m * m <= DD_VARIABLE_LIMIT {
                Some(dd_census(family, n, m)?)
            } else {
                None
            };
            if let Some(o) = other {
                if o != c {
                    return Err(Error::Precondition(format!(
                        "engines disagree on {} n={n} m={m}: {} vs {} vertices",
                        family.name(),
                        c.total,
                        o.total
                    )));
                }
            }
        }
        if let Some(s) = &self.memo {
            s.put(&key, &c)?;
        }
        Ok(c)
    }

    pub fn kappa(&self, family: Family, n: usize, m: usize) -> Result<CountReport> {
        Ok(CountReport::from_census(family, n, m, &self.census(family, n, m)?))
    }

    /// `kappa~` by direct filtering and by inclusion-exclusion over the set of
    /// collapsed edges. Fixing `k` edges collapsed leaves the vertices of the
    /// scenario with those edges contracted, a rose with `n - k` loops.
    pub fn kappa_tilde_paths(&self, family: Family, n: usize, m: usize) -> Result<KappaTilde> {
        if n == 0 {
            return Ok(KappaTilde {
                direct: 0,
                inclusion_exclusion: 0,
            });
        }
        let direct = self.census(family, n, m)?.contextual_without_collapsed;
        let mut sum: i128 = 0;
        for k in 0..=n {
            let nk = match (family, k) {
                (Family::Dipole, 0) => self.census(Family::Dipole, n, m)?.total,
                _ => self.census(Family::Rose, n - k, m)?.total,
            };
            let term = binomial(n as i128, k as i128) * nk as i128;
            sum += if k % 2 == 0 { term } else { -term };
        }
        if family == Family::Dipole {
            // Deterministic E_{a,b} with a != b collapse no edge.
            sum -= (m * (m - 1)) as i128;
        }
        Ok(KappaTilde {
            direct,
            inclusion_exclusion: u128::try_from(sum).map_err(|_| {
                Error::Precondition(format!("inclusion-exclusion gave a negative count {sum}"))
            })?,
        })
    }

    /// `kappa~`, failing if the two computations disagree.
    pub fn kappa_tilde(&self, family: Family, n: usize, m: usize) -> Result<u128> {
        let k = self.kappa_tilde_paths(family, n, m)?;
        if k.direct != k.inclusion_exclusion {
            return Err(Error::Precondition(format!(
                "kappa~ mismatch for {} n={n} m={m}: direct {} vs inclusion-exclusion {}",
                family.name(),
                k.direct,
                k.inclusion_exclusion
            )));
        }
        Ok(k.direct)
    }
}

/// [`Counter::kappa`] with default settings.
pub fn kappa(family: Family, n: usize, m: usize) -> Result<CountReport> {
    Counter::default().kappa(family, n, m)
}

/// [`Counter::kappa_tilde`] with default settings.
pub fn kappa_tilde(family: Family, n: usize, m: usize) -> Result<u128> {
    Counter::default().kappa_tilde(family, n, m)
}
