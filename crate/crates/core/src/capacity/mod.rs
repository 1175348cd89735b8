//! Certified enclosures of the Shannon capacity Θ(G).
//!
//! Θ itself is not computed. A [`CapacityInterval`] brackets it between
//! `α(G^k)^{1/k}` for an exactly solved power (rounded down) and a certified
//! ϑ upper bound (inflated by the certificate gap).

mod rank;
mod strict;

pub use rank::{check_fitting, rank_bound, rank_bound_search, FpMatrix, RankBound};
pub use strict::{
    derive_sum_certificate, product_certificate_from, product_strictness, strict_product_certificate, sum_chain,
    theorem2_converse_bound, theorem2_converse_bound_with, AlphaEvidence, AssumedCapacities, CertificateKind,
    ConverseBound, StrictnessCertificate, ThetaEvidence,
};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::alpha::{AlphaSource, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, power, Graph, StableSetWitness};
use crate::poly::{Polynomial, SizeBudget};
use crate::theta::{theta, ThetaConfig, ThetaResult};

pub(crate) const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Digits kept when rounding `α^{1/k}` down.
const ROOT_DIGITS: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityConfig {
    pub kmax: u32,
    pub theta: ThetaConfig,
    pub solver: SolverConfig,
    pub size: SizeBudget,
    /// Stop the power sweep once `upper - lower` is at most this.
    pub collapse_tol: Option<f64>,
    /// Only use ϑ multiplicativity in polynomial upper bounds, which limits
    /// them to single monomials with coefficient one.
    pub products_only: bool,
}

impl Default for CapacityConfig {
    fn default() -> Self {
        CapacityConfig {
            kmax: 2,
            theta: ThetaConfig::default(),
            solver: SolverConfig::default(),
            size: SizeBudget::default(),
            collapse_tol: Some(1e-6),
            products_only: false,
        }
    }
}

/// Largest 12-digit decimal not above `alpha^{1/k}`, as an `f64` rounded down.
///
/// The root is found by bisection on integers: the largest `r` with
/// `r^k ≤ alpha·10^{12k}`.
pub fn root_floor(alpha: u64, k: u32) -> f64 {
    if k == 0 {
        return if alpha >= 1 { 1.0 } else { 0.0 };
    }
    let scale = BigUint::from(10u32).pow(ROOT_DIGITS);
    let target = BigUint::from(alpha) * scale.pow(k);
    let (mut lo, mut hi) = (BigUint::zero(), BigUint::from(alpha.max(1)) * &scale + 1u32);
    // invariant: lo^k <= target < hi^k
    while &hi - &lo > BigUint::from(1u32) {
        let mid: BigUint = (&lo + &hi) >> 1;
        if mid.pow(k) <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = lo.to_f64().expect("fits in f64");
    let q = r / 1e12;
    if r == 0.0 {
        0.0
    } else {
        q.next_down()
    }
}

/// `x` rounded up by the given number of unit roundoffs (relative).
pub(crate) fn inflate(x: f64, ops: usize) -> f64 {
    let g = ops as f64 * UNIT_ROUNDOFF;
    (x + x.abs() * g / (1.0 - g)).next_up()
}

pub(crate) fn deflate(x: f64, ops: usize) -> f64 {
    let g = ops as f64 * UNIT_ROUNDOFF;
    (x - x.abs() * g / (1.0 - g)).next_down()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedPower {
    pub k: u32,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerProvenance {
    pub k: u32,
    pub alpha: usize,
    pub witness: StableSetWitness,
    pub skipped: Vec<SkippedPower>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum UpperProvenance {
    Theta { lower_cert: f64, upper_cert: f64, gap: f64 },
    Rank(RankBound),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_provenance: LowerProvenance,
    pub upper_provenance: UpperProvenance,
    /// graph6 of the literal graph.
    pub graph_ref: String,
    #[serde(skip)]
    pub theta: Option<ThetaResult>,
}

impl CapacityInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_collapsed(&self, tol: f64) -> bool {
        self.width() <= tol
    }

    /// Replaces the upper end by a rank bound when that is smaller.
    pub fn tighten_with_rank(&mut self, bound: RankBound) {
        if (bound.rank as f64) < self.upper {
            self.upper = bound.rank as f64;
            self.upper_provenance = UpperProvenance::Rank(bound);
        }
    }
}

/// Enclosure `[max_k α(G^k)^{1/k}, ϑ(G) + gap]` over `1 ≤ k ≤ kmax`.
///
/// Powers over the size budget or whose solve runs out of budget are skipped
/// and recorded. With `collapse_tol` set, the sweep stops early once the
/// interval is that narrow.
pub fn capacity_interval(g: &Graph, cfg: &CapacityConfig) -> Result<CapacityInterval> {
    capacity_interval_with(g, cfg, &cfg.solver)
}

/// [`capacity_interval`] with α values drawn from `source`.
pub fn capacity_interval_with(g: &Graph, cfg: &CapacityConfig, source: &dyn AlphaSource) -> Result<CapacityInterval> {
    if cfg.kmax == 0 {
        return Err(Error::param("kmax must be at least 1"));
    }
    let th = theta(g, &cfg.theta)?;
    let upper = inflate(th.upper_cert + th.gap, 2);

    let mut best: Option<(f64, u32, usize, StableSetWitness)> = None;
    let mut skipped = Vec::new();
    for k in 1..=cfg.kmax {
        if let (Some(tol), Some(b)) = (cfg.collapse_tol, &best) {
            if upper - b.0 <= tol {
                skipped.push(SkippedPower {
                    k,
                    reason: "interval already collapsed".into(),
                });
                continue;
            }
        }
        if let Err(e) = cfg.size.check_power(g, k) {
            skipped.push(SkippedPower {
                k,
                reason: e.to_string(),
            });
            continue;
        }
        let gk = power(g, k);
        match source.alpha(&gk) {
            Ok(r) => {
                let low = root_floor(r.value as u64, k);
                if best.as_ref().is_none_or(|b| low > b.0) {
                    best = Some((low, k, r.value, r.witness));
                }
            }
            Err(e) if e.is_budget() => skipped.push(SkippedPower {
                k,
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    let Some((lower, k, value, witness)) = best else {
        return Err(Error::NoLowerBound {
            skipped: skipped.iter().map(|s| s.k).collect(),
        });
    };
    Ok(CapacityInterval {
        lower,
        upper,
        lower_provenance: LowerProvenance {
            k,
            alpha: value,
            witness,
            skipped,
        },
        upper_provenance: UpperProvenance::Theta {
            lower_cert: th.lower_cert,
            upper_cert: th.upper_cert,
            gap: th.gap,
        },
        graph_ref: emit_graph6(g),
        theta: Some(th),
    })
}

/// Rounding slack for evaluating `p` at nonnegative reals.
fn poly_ops(p: &Polynomial) -> usize {
    let deg = p.terms().map(|(m, _)| m.degree()).max().unwrap_or(0) as usize;
    deg + p.num_terms() + 2
}

/// `p` at the interval lower ends, rounded down.
pub fn poly_lower_from(p: &Polynomial, intervals: &[CapacityInterval]) -> Result<f64> {
    let lows: Vec<f64> = intervals.iter().map(|i| i.lower).collect();
    Ok(deflate(p.eval_real(&lows)?, poly_ops(p)).max(0.0))
}

/// `p` at the interval upper ends, rounded up.
pub fn poly_upper_from(p: &Polynomial, intervals: &[CapacityInterval], products_only: bool) -> Result<f64> {
    if products_only {
        let single = p.num_terms() == 1 && p.terms().all(|(_, c)| *c == BigUint::from(1u32));
        if !single && !p.is_zero() {
            return Err(Error::param(
                "upper bounds restricted to single monomials with coefficient one",
            ));
        }
    }
    let ups: Vec<f64> = intervals.iter().map(|i| i.upper).collect();
    Ok(inflate(p.eval_real(&ups)?, poly_ops(p)))
}

fn intervals_for(p: &Polynomial, gs: &[Graph], cfg: &CapacityConfig) -> Result<Vec<CapacityInterval>> {
    if gs.len() != p.nvars() {
        return Err(Error::param(format!(
            "polynomial has {} variables but {} graphs were given",
            p.nvars(),
            gs.len()
        )));
    }
    gs.iter().map(|g| capacity_interval(g, cfg)).collect()
}

/// Lower bound on Θ(p(G⃗)) from p(Θ(G⃗)) ≤ Θ(p(G⃗)).
pub fn poly_capacity_lower(p: &Polynomial, gs: &[Graph], cfg: &CapacityConfig) -> Result<f64> {
    poly_lower_from(p, &intervals_for(p, gs, cfg)?)
}

/// Upper bound on Θ(p(G⃗)) from ϑ upper certificates. Uses ϑ(GH) = ϑ(G)ϑ(H)
/// and, unless `products_only`, ϑ(G+H) = ϑ(G) + ϑ(H).
pub fn poly_capacity_upper(p: &Polynomial, gs: &[Graph], cfg: &CapacityConfig) -> Result<f64> {
    poly_upper_from(p, &intervals_for(p, gs, cfg)?, cfg.products_only)
}
