//! File-backed α cache.
//!
//! One JSON file per connected component, named by the SHA-256 of
//! `graph6 + "\n" + op`. Entries are checked against their stored graph6
//! and witness on load; `verify` additionally recomputes every hit.

use std::cell::RefCell;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alpha::{alpha, alpha_by_components, whole, AlphaResult, AlphaSource, SolverConfig, SolverStats};
use crate::error::Result;
use crate::graph::{emit_graph6, is_stable, Graph, StableSetWitness};

const OP_ALPHA: &str = "alpha";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub graph6: String,
    pub op: String,
    pub value: usize,
    pub witness: StableSetWitness,
    pub stats: SolverStats,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub enabled: bool,
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
    /// Hits recomputed under `--verify-cache`.
    pub verified: u64,
    pub mismatches: u64,
    /// Files that failed to parse or validate and were ignored.
    pub rejected: u64,
}

pub struct DiskCache {
    dir: Option<PathBuf>,
    verify: bool,
    cfg: SolverConfig,
    stats: RefCell<CacheStats>,
}

pub fn cache_key(graph6: &str, op: &str) -> String {
    let mut h = Sha256::new();
    h.update(graph6.as_bytes());
    h.update(b"\n");
    h.update(op.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl DiskCache {
    /// `dir = None` disables the cache; solves then go straight to the solver.
    pub fn new(dir: Option<PathBuf>, verify: bool, cfg: SolverConfig) -> Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)?;
        }
        Ok(DiskCache {
            stats: RefCell::new(CacheStats {
                enabled: dir.is_some(),
                ..CacheStats::default()
            }),
            dir,
            verify,
            cfg,
        })
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.borrow()
    }

    fn path(&self, dir: &Path, graph6: &str) -> PathBuf {
        dir.join(format!("{}.json", cache_key(graph6, OP_ALPHA)))
    }

    fn load(&self, dir: &Path, g: &Graph, graph6: &str) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(dir, graph6)).ok()?;
        let entry: Option<CacheEntry> = serde_json::from_str(&text).ok();
        let valid = entry.filter(|e| {
            e.graph6 == graph6
                && e.op == OP_ALPHA
                && e.witness.len() == e.value
                && is_stable(g, &e.witness).unwrap_or(false)
        });
        if valid.is_none() {
            self.stats.borrow_mut().rejected += 1;
        }
        valid
    }

    fn store(&self, dir: &Path, entry: &CacheEntry) -> Result<()> {
        let path = self.path(dir, &entry.graph6);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        self.stats.borrow_mut().writes += 1;
        Ok(())
    }

    fn component(&self, g: &Graph) -> Result<AlphaResult> {
        let cfg = whole(&self.cfg);
        let Some(dir) = &self.dir else {
            return alpha(g, &cfg);
        };
        let graph6 = emit_graph6(g);
        if let Some(e) = self.load(dir, g, &graph6) {
            self.stats.borrow_mut().hits += 1;
            if self.verify {
                let fresh = alpha(g, &cfg)?;
                let mut st = self.stats.borrow_mut();
                st.verified += 1;
                if fresh.value != e.value {
                    st.mismatches += 1;
                    return Ok(fresh);
                }
            }
            return Ok(AlphaResult {
                value: e.value,
                witness: e.witness,
                stats: e.stats,
            });
        }
        self.stats.borrow_mut().misses += 1;
        let r = alpha(g, &cfg)?;
        self.store(
            dir,
            &CacheEntry {
                graph6,
                op: OP_ALPHA.into(),
                value: r.value,
                witness: r.witness.clone(),
                stats: r.stats,
            },
        )?;
        Ok(r)
    }
}

impl AlphaSource for DiskCache {
    fn alpha(&self, g: &Graph) -> Result<AlphaResult> {
        alpha_by_components(g, |sub| self.component(sub))
    }
}
