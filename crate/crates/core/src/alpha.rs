//! Exact maximum stable set.
//!
//! Complete branch-and-bound over bit rows. Each node covers the residual
//! candidate set greedily by cliques; a stable set meets every clique at most
//! once, so `|current| + #cliques` bounds anything reachable below the node.
//! Branching is include/exclude on the residual vertex of largest residual
//! degree (lowest index on ties).

use std::cell::RefCell;
use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{BudgetKind, Error, Result};
use crate::graph::{bitset, emit_graph6, is_stable, Graph, StableSetWitness};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_nodes: u64,
    pub max_time: Duration,
    /// Solve connected components separately and add the results.
    pub split_components: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(300),
            split_components: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    pub nodes: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub value: usize,
    pub witness: StableSetWitness,
    pub stats: SolverStats,
}

struct Search<'g> {
    g: &'g Graph,
    cfg: SolverConfig,
    start: Instant,
    nodes: u64,
    best: Vec<usize>,
    cur: Vec<usize>,
}

impl<'g> Search<'g> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cfg.max_nodes {
            return Err(self.exhausted(BudgetKind::Nodes));
        }
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.cfg.max_time {
            return Err(self.exhausted(BudgetKind::Time));
        }
        Ok(())
    }

    fn exhausted(&self, kind: BudgetKind) -> Error {
        Error::Budget {
            kind,
            nodes: self.nodes,
            best: self.best.len(),
        }
    }

    /// Number of greedy cliques needed to cover `p`, stopping early once
    /// it exceeds `cap`.
    fn clique_cover(&self, p: &[u64], cap: usize) -> usize {
        let mut rest = p.to_vec();
        let mut cand = vec![0u64; rest.len()];
        let mut count = 0;
        while let Some(v) = bitset::first(&rest) {
            count += 1;
            if count > cap {
                break;
            }
            bitset::clear(&mut rest, v);
            for (c, (r, n)) in cand.iter_mut().zip(rest.iter().zip(self.g.row(v))) {
                *c = r & n;
            }
            while let Some(u) = bitset::first(&cand) {
                bitset::clear(&mut rest, u);
                for (c, n) in cand.iter_mut().zip(self.g.row(u)) {
                    *c &= n;
                }
            }
        }
        count
    }

    fn branch(&mut self, p: Vec<u64>) -> Result<()> {
        self.tick()?;
        let size = bitset::count(&p);
        if size == 0 {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            return Ok(());
        }
        if self.cur.len() + size <= self.best.len() {
            return Ok(());
        }
        let cap = self.best.len() - self.cur.len();
        if self.clique_cover(&p, cap) <= cap {
            return Ok(());
        }

        let (v, deg) = bitset::ones(&p)
            .map(|v| (v, bitset::count_and(self.g.row(v), &p)))
            .fold((usize::MAX, 0), |acc, (v, d)| {
                if acc.0 == usize::MAX || d > acc.1 {
                    (v, d)
                } else {
                    acc
                }
            });

        if deg == 0 {
            // residual is edgeless
            let mark = self.cur.len();
            self.cur.extend(bitset::ones(&p));
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            self.cur.truncate(mark);
            return Ok(());
        }

        let mut with_v: Vec<u64> = p.iter().zip(self.g.row(v)).map(|(a, n)| a & !n).collect();
        bitset::clear(&mut with_v, v);
        self.cur.push(v);
        self.branch(with_v)?;
        self.cur.pop();

        let mut without_v = p;
        bitset::clear(&mut without_v, v);
        self.branch(without_v)
    }
}

/// Minimum-degree greedy stable set; seeds the incumbent.
fn greedy(g: &Graph) -> Vec<usize> {
    let mut p = bitset::full(g.n());
    let mut out = Vec::new();
    while !bitset::is_empty(&p) {
        let v = bitset::ones(&p)
            .min_by_key(|&v| (bitset::count_and(g.row(v), &p), v))
            .expect("nonempty");
        out.push(v);
        bitset::clear(&mut p, v);
        for (a, n) in p.iter_mut().zip(g.row(v)) {
            *a &= !n;
        }
    }
    out
}

fn solve_whole(g: &Graph, cfg: &SolverConfig, start: Instant, nodes_used: u64) -> Result<(Vec<usize>, u64)> {
    let mut search = Search {
        g,
        cfg: SolverConfig {
            max_nodes: cfg.max_nodes.saturating_sub(nodes_used),
            ..*cfg
        },
        start,
        nodes: 0,
        best: greedy(g),
        cur: Vec::new(),
    };
    search.branch(bitset::full(g.n())).map_err(|e| match e {
        Error::Budget { kind, nodes, best } => Error::Budget {
            kind,
            nodes: nodes + nodes_used,
            best,
        },
        other => other,
    })?;
    Ok((search.best, search.nodes))
}

fn finish(mut vertices: Vec<usize>, nodes: u64, start: Instant) -> AlphaResult {
    vertices.sort_unstable();
    AlphaResult {
        value: vertices.len(),
        witness: StableSetWitness::new(vertices),
        stats: SolverStats {
            nodes,
            elapsed: start.elapsed(),
        },
    }
}

/// Exact α(G) with a witness.
pub fn alpha(g: &Graph, cfg: &SolverConfig) -> Result<AlphaResult> {
    if cfg.split_components {
        return alpha_components(g, cfg);
    }
    let start = Instant::now();
    let (best, nodes) = solve_whole(g, cfg, start, 0)?;
    Ok(finish(best, nodes, start))
}

/// Solves each connected component separately; α is additive over them.
pub fn alpha_components(g: &Graph, cfg: &SolverConfig) -> Result<AlphaResult> {
    let start = Instant::now();
    let mut all = Vec::new();
    let mut nodes = 0;
    for comp in g.components() {
        if comp.len() == 1 {
            all.push(comp[0]);
            continue;
        }
        let sub = g.induced(&comp);
        let (best, used) = solve_whole(&sub, cfg, start, nodes)?;
        nodes += used;
        all.extend(best.into_iter().map(|i| comp[i]));
    }
    Ok(finish(all, nodes, start))
}

/// Anything that can produce exact α values, such as a cache in front of the solver.
pub trait AlphaSource {
    fn alpha(&self, g: &Graph) -> Result<AlphaResult>;
}

impl AlphaSource for SolverConfig {
    fn alpha(&self, g: &Graph) -> Result<AlphaResult> {
        alpha(g, self)
    }
}

/// In-memory memo keyed by the graph6 of each connected component, so
/// repeated blocks of sums and powers are solved once.
#[derive(Debug, Default)]
pub struct MemoSource {
    cfg: SolverConfig,
    memo: RefCell<HashMap<String, AlphaResult>>,
}

impl MemoSource {
    pub fn new(cfg: SolverConfig) -> Self {
        MemoSource {
            cfg,
            memo: RefCell::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.memo.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl AlphaSource for MemoSource {
    fn alpha(&self, g: &Graph) -> Result<AlphaResult> {
        alpha_by_components(g, |sub| {
            let key = emit_graph6(sub);
            if let Some(r) = self.memo.borrow().get(&key) {
                return Ok(r.clone());
            }
            let r = alpha(sub, &whole(&self.cfg))?;
            self.memo.borrow_mut().insert(key, r.clone());
            Ok(r)
        })
    }
}

/// `cfg` with component splitting turned off.
pub fn whole(cfg: &SolverConfig) -> SolverConfig {
    SolverConfig {
        split_components: false,
        ..*cfg
    }
}

/// Assembles α(G) from per-component results; isolated vertices are taken
/// directly and every larger component goes through `solve`.
pub fn alpha_by_components(g: &Graph, mut solve: impl FnMut(&Graph) -> Result<AlphaResult>) -> Result<AlphaResult> {
    let start = Instant::now();
    let mut all = Vec::new();
    let mut nodes = 0;
    for comp in g.components() {
        if comp.len() == 1 {
            all.push(comp[0]);
            continue;
        }
        let r = solve(&g.induced(&comp))?;
        nodes += r.stats.nodes;
        all.extend(r.witness.vertices().iter().map(|&i| comp[i]));
    }
    Ok(finish(all, nodes, start))
}

/// `{(u, v) : u ∈ wg, v ∈ wh}` as flat indices `u·|H| + v` in the strong product.
pub fn product_witness(wg: &StableSetWitness, wh: &StableSetWitness, g: &Graph, h: &Graph) -> Result<StableSetWitness> {
    if !is_stable(g, wg)? || !is_stable(h, wh)? {
        return Err(Error::param("product witness needs stable factors"));
    }
    let nh = h.n();
    Ok(StableSetWitness::new(
        wg.vertices()
            .iter()
            .flat_map(|&u| wh.vertices().iter().map(move |&v| u * nh + v))
            .collect(),
    ))
}
