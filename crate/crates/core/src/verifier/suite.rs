use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::checks::*;
use super::pclass::{check_pclass_closure, PClassCertificate, PClassOptions};
use super::{check_id, CheckResult, Relation, Status};
use crate::alpha::{AlphaSource, MemoSource, SolverConfig};
use crate::capacity::CapacityConfig;
use crate::error::{Error, Result};
use crate::graph::{random_graph, Graph, GraphSpec};
use crate::poly::Polynomial;

pub const STOCK: [&str; 8] = ["k1", "e2", "e3", "k3", "k5", "c5", "c7", "petersen"];

pub fn stock_graphs() -> Vec<Graph> {
    STOCK
        .iter()
        .map(|s| {
            s.parse::<GraphSpec>()
                .and_then(|g| g.build())
                .expect("stock specs are valid")
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PClassCase {
    pub p: String,
    pub q: String,
    pub graphs: Vec<String>,
}

/// Suite settings; every field has a default so a config file may set any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub graphs: Vec<String>,
    /// Graphs for the diagonal witness check only; these may be too large
    /// for exact solves.
    pub witness_graphs: Vec<String>,
    pub kmax: u32,
    pub tol: f64,
    pub theta_tol: f64,
    pub seed: u64,
    pub random_pairs: usize,
    pub random_max_vertices: usize,
    pub edge_probability: f64,
    pub expansion_powers: Vec<u32>,
    /// Pairs (from `graphs`) whose sum is raised to these powers; larger
    /// graphs are left to the random set.
    pub pair_max_vertices: usize,
    /// `(n, t)` pairs for the power-sum lower bound link.
    pub link_pairs: Vec<(u32, u32)>,
    pub pclass: Vec<PClassCase>,
    pub pclass_max_power: u32,
    pub budget_nodes: u64,
    pub budget_seconds: u64,
    /// Adds a comparison that must fail, to exercise the failure path.
    pub inject_failure: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            graphs: STOCK.iter().map(|s| s.to_string()).collect(),
            witness_graphs: vec!["petersen".into(), "schlafli".into()],
            kmax: 2,
            tol: 1e-4,
            theta_tol: 1e-6,
            seed: 42,
            random_pairs: 10,
            random_max_vertices: 6,
            edge_probability: 0.5,
            expansion_powers: vec![2],
            pair_max_vertices: 10,
            link_pairs: vec![(2, 1), (2, 2)],
            pclass: vec![
                PClassCase {
                    p: "x".into(),
                    q: "y".into(),
                    graphs: vec!["e2".into(), "e3".into()],
                },
                PClassCase {
                    p: "x^2".into(),
                    q: "x".into(),
                    graphs: vec!["c5".into()],
                },
            ],
            pclass_max_power: 3,
            budget_nodes: 10_000_000,
            budget_seconds: 60,
            inject_failure: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.kmax == 0 {
            return bad("kmax must be at least 1".into());
        }
        if self.tol.is_nan() || self.tol <= 0.0 || self.theta_tol.is_nan() || self.theta_tol < 1e-9 {
            return bad("tolerances must be positive (theta_tol at least 1e-9)".into());
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return bad(format!("edge_probability {} outside [0, 1]", self.edge_probability));
        }
        if self.pclass_max_power > 3 {
            return bad("pclass_max_power is at most 3".into());
        }
        for &(n, t) in &self.link_pairs {
            if t == 0 || t > n {
                return bad(format!("link pair (n={n}, t={t}) needs 1 <= t <= n"));
            }
        }
        if self.expansion_powers.contains(&0) {
            return bad("expansion powers must be positive".into());
        }
        for s in self.graphs.iter().chain(&self.witness_graphs) {
            s.parse::<GraphSpec>()
                .map_err(|e| Error::Config(format!("graph '{s}': {e}")))?;
        }
        Ok(())
    }

    pub fn capacity(&self) -> CapacityConfig {
        let mut cap = CapacityConfig {
            kmax: self.kmax,
            solver: SolverConfig {
                max_nodes: self.budget_nodes,
                max_time: Duration::from_secs(self.budget_seconds),
                ..SolverConfig::default()
            },
            ..CapacityConfig::default()
        };
        cap.theta.tol = self.theta_tol;
        cap
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
    pub certificates: Vec<PClassCertificate>,
}

impl VerificationReport {
    pub fn from_checks(mut checks: Vec<CheckResult>, certificates: Vec<PClassCertificate>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            total: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            inconclusive: count(Status::Inconclusive),
            budget: count(Status::Budget),
        };
        VerificationReport {
            summary,
            checks,
            certificates,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    /// 0 when everything passed, 1 on a hard failure, 3 when only budgets
    /// stopped some checks.
    pub fn exit_code(&self) -> i32 {
        if self.has_failures() {
            1
        } else if self.summary.budget > 0 {
            3
        } else {
            0
        }
    }
}

fn build(spec: &str) -> Result<Graph> {
    spec.parse::<GraphSpec>()
        .and_then(|s| s.build())
        .map_err(|e| Error::Config(format!("graph '{spec}': {e}")))
}

/// Seeded random pairs, labelled `r<i>a` / `r<i>b`.
pub fn random_pairs(cfg: &SuiteConfig) -> Vec<(Graph, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.random_pairs)
        .map(|i| {
            let mut draw = |tag: &str| {
                let n = rng.gen_range(1..=cfg.random_max_vertices.max(1));
                random_graph(n, cfg.edge_probability, &mut rng).with_provenance(format!("r{i}{tag}"))
            };
            let g = draw("a");
            (g, draw("b"))
        })
        .collect()
}

fn pair_checks(
    g: &Graph,
    h: &Graph,
    cfg: &SuiteConfig,
    ctx: &CheckContext,
    small: bool,
    out: &mut Vec<CheckResult>,
) -> Result<()> {
    out.push(check_alpha_additivity(g, h, ctx)?);
    out.push(check_alpha_supermult(g, h, ctx)?);
    out.push(check_theta_multiplicativity(g, h, ctx)?);
    if small {
        for &n in &cfg.expansion_powers {
            out.push(check_sum_power_expansion(g, h, n, ctx)?);
        }
        for &(n, t) in &cfg.link_pairs {
            out.push(check_theorem1_link(g, h, n, t, ctx)?);
        }
        out.push(check_shannon_superadditivity(g, h, ctx)?);
        out.push(check_theorem2_converse(g, h, 2, ctx)?);
    }
    Ok(())
}

/// Runs every check over the configured graphs, all unordered pairs of them,
/// the seeded random pairs and the 𝒫-class cases. Results are sorted by id.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    run_suite_with(cfg, &MemoSource::new(cfg.capacity().solver))
}

pub fn run_suite_with(cfg: &SuiteConfig, source: &dyn AlphaSource) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut ctx = CheckContext::new(cfg.capacity(), source);
    ctx.tol = cfg.tol;
    let graphs: Vec<Graph> = cfg.graphs.iter().map(|s| build(s)).collect::<Result<_>>()?;

    let mut out = vec![check_harness_self_test()];
    if cfg.inject_failure {
        out.push(CheckResult::new(
            check_id("injected_failure", &[] as &[&str]),
            vec![],
            1usize,
            Relation::Eq,
            2usize,
            0.0,
        ));
    }
    for g in &graphs {
        if g.n() > 0 {
            out.push(check_theta_sandwich(g, &ctx)?);
        }
    }
    for spec in &cfg.witness_graphs {
        out.push(check_diagonal_witness(&build(spec)?)?);
    }
    for (i, g) in graphs.iter().enumerate() {
        for h in &graphs[i..] {
            if g.n() == 0 || h.n() == 0 {
                continue;
            }
            let small = g.n() + h.n() <= cfg.pair_max_vertices;
            pair_checks(g, h, cfg, &ctx, small, &mut out)?;
        }
    }
    for (g, h) in random_pairs(cfg) {
        pair_checks(&g, &h, cfg, &ctx, true, &mut out)?;
    }

    let opts = PClassOptions {
        tol: cfg.tol,
        max_power: cfg.pclass_max_power,
        ..PClassOptions::default()
    };
    let mut certificates = Vec::new();
    for (i, case) in cfg.pclass.iter().enumerate() {
        let gs: Vec<Graph> = case.graphs.iter().map(|s| build(s)).collect::<Result<_>>()?;
        let parse =
            |s: &str| Polynomial::parse(s, Some(gs.len())).map_err(|e| Error::Config(format!("polynomial '{s}': {e}")));
        let (checks, certs) = check_pclass_closure(
            &format!("case{i}"),
            &parse(&case.p)?,
            &parse(&case.q)?,
            &gs,
            &opts,
            &ctx,
        )?;
        out.extend(checks);
        certificates.extend(certs);
    }
    Ok(VerificationReport::from_checks(out, certificates))
}
