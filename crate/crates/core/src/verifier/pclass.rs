//! Membership of polynomials in 𝒫 for a fixed graph tuple, and the closure
//! rules relating p, q, p+q, pq and p^k.
//!
//! Θ(p(G⃗)) is enclosed by the composed bounds [p(L), p(U)] (superadditivity
//! and supermultiplicativity below, ϑ additivity and multiplicativity above),
//! intersected with a direct interval of p(G⃗) when that graph is small. p(Θ⃗)
//! lies in the same composed range.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{check_id, CheckContext, CheckResult, Relation};
use crate::capacity::{
    capacity_interval_with, inflate, poly_lower_from, poly_upper_from, CapacityConfig, CapacityInterval,
};
use crate::error::{Error, Result};
use crate::graph::{emit_graph6, Graph};
use crate::poly::{evaluate, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    In,
    NotIn,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::In => "in",
            Verdict::NotIn => "not-in",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PClassOptions {
    /// Relative tolerance: widths up to `tol·max(1, value)` count as collapsed.
    pub tol: f64,
    /// Largest k for the p ⇒ p^k rule.
    pub max_power: u32,
    /// p(G⃗) gets its own interval only up to this many vertices.
    pub direct_max_vertices: usize,
    pub direct_kmax: u32,
}

impl Default for PClassOptions {
    fn default() -> Self {
        PClassOptions {
            tol: 1e-4,
            max_power: 3,
            direct_max_vertices: 64,
            direct_kmax: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PClassCertificate {
    pub polynomial: String,
    pub graphs: Vec<String>,
    /// Θ(Gᵢ) enclosures.
    pub intervals: Vec<[f64; 2]>,
    /// Enclosure of p(Θ(G⃗)).
    pub p_of_theta: [f64; 2],
    /// Direct enclosure of Θ(p(G⃗)), when computed.
    pub direct: Option<[f64; 2]>,
    /// Enclosure of Θ(p(G⃗)): the composed range meet the direct one.
    pub theta_of_p: [f64; 2],
    /// The composed and direct enclosures overlap.
    pub consistent: bool,
    pub verdict: Verdict,
}

fn collapsed(lo: f64, hi: f64, tol: f64) -> bool {
    hi - lo <= tol * hi.abs().max(1.0)
}

/// Decides p ∈ 𝒫 for the tuple whose intervals are given.
pub fn membership(
    p: &Polynomial,
    gs: &[Graph],
    intervals: &[CapacityInterval],
    opts: &PClassOptions,
    ctx: &CheckContext,
) -> Result<PClassCertificate> {
    let graphs = gs.iter().map(emit_graph6).collect();
    let ivs: Vec<[f64; 2]> = intervals.iter().map(|i| [i.lower, i.upper]).collect();
    let pl = poly_lower_from(p, intervals)?;
    let pu = poly_upper_from(p, intervals, false)?;

    let ns: Vec<usize> = gs.iter().map(Graph::n).collect();
    let size = p.evaluated_size(&ns)?;
    let direct = if p.is_zero() || size > BigUint::from(opts.direct_max_vertices) {
        None
    } else {
        let pg = evaluate(p, gs, &ctx.cap.size)?;
        let cfg = CapacityConfig {
            kmax: opts.direct_kmax,
            ..ctx.cap
        };
        match capacity_interval_with(&pg, &cfg, ctx.source) {
            Ok(iv) => Some([iv.lower, iv.upper]),
            Err(e) if e.is_budget() || matches!(e, Error::Convergence { .. }) => None,
            Err(e) => return Err(e),
        }
    };

    let (mut lo, mut hi) = (pl, pu);
    if let Some([dl, du]) = direct {
        lo = lo.max(dl);
        hi = hi.min(du);
    }
    let scale = pu.abs().max(1.0);
    let slack = inflate(opts.tol * scale, 1);
    let consistent = lo <= hi + slack;

    let occurring = p.variables_occurring();
    let inputs_collapsed = occurring
        .iter()
        .all(|&i| collapsed(intervals[i].lower, intervals[i].upper, opts.tol));
    let verdict = if !consistent {
        Verdict::Inconclusive
    } else if inputs_collapsed && hi.max(pu) - lo.min(pl) <= slack {
        Verdict::In
    } else if lo > pu + slack {
        Verdict::NotIn
    } else {
        Verdict::Inconclusive
    };
    Ok(PClassCertificate {
        polynomial: p.to_string(),
        graphs,
        intervals: ivs,
        p_of_theta: [pl, pu],
        direct,
        theta_of_p: [lo, hi],
        consistent,
        verdict,
    })
}

fn implication(name: &str, tag: &[String], premise: &PClassCertificate, conclusion: &PClassCertificate) -> CheckResult {
    let id = check_id(name, tag);
    let inputs = vec![premise.polynomial.clone(), conclusion.polynomial.clone()];
    let r = CheckResult::new(
        id,
        inputs,
        premise.verdict.to_string().as_str(),
        Relation::Implies,
        conclusion.verdict.to_string().as_str(),
        0.0,
    );
    if r.pass && !(premise.verdict == Verdict::In && conclusion.verdict == Verdict::In) {
        r.inconclusive()
    } else {
        r
    }
}

/// Runs the closure rules for p and q on `gs`: p+q ∈ 𝒫 ⇒ p, q ∈ 𝒫;
/// pq ∈ 𝒫 ⇒ p ∈ 𝒫 (q ≠ 0); p ∈ 𝒫 ⇒ p^k ∈ 𝒫 for 2 ≤ k ≤ max_power.
///
/// `tag` names the case in check ids.
pub fn check_pclass_closure(
    tag: &str,
    p: &Polynomial,
    q: &Polynomial,
    gs: &[Graph],
    opts: &PClassOptions,
    ctx: &CheckContext,
) -> Result<(Vec<CheckResult>, Vec<PClassCertificate>)> {
    if gs.iter().any(|g| g.n() == 0) {
        return Err(Error::param("closure rules need graphs with at least one vertex"));
    }
    if q.is_zero() {
        return Err(Error::param("q must be nonzero"));
    }
    let p = p.widen(gs.len())?;
    let q = q.widen(gs.len())?;
    let intervals: Vec<CapacityInterval> = gs
        .iter()
        .map(|g| capacity_interval_with(g, &ctx.cap, ctx.source))
        .collect::<Result<_>>()?;

    let cert = |poly: &Polynomial| membership(poly, gs, &intervals, opts, ctx);
    let cp = cert(&p)?;
    let cq = cert(&q)?;
    let csum = cert(&p.add(&q)?)?;
    let cprod = cert(&p.mul(&q)?)?;
    let cpows = (2..=opts.max_power)
        .map(|k| Ok((k, cert(&p.pow(k))?)))
        .collect::<Result<Vec<_>>>()?;

    let t = |rule: &str| vec![tag.to_string(), rule.to_string()];
    let mut checks = vec![
        implication("pclass_sum_rule", &t("p"), &csum, &cp),
        implication("pclass_sum_rule", &t("q"), &csum, &cq),
        implication("pclass_product_rule", &t("p"), &cprod, &cp),
    ];
    if !p.is_zero() {
        checks.push(implication("pclass_product_rule", &t("q"), &cprod, &cq));
    }
    for (k, c) in &cpows {
        checks.push(implication("pclass_power_rule", &t(&format!("k={k}")), &cp, c));
    }
    let mut certs = vec![cp, cq, csum, cprod];
    certs.extend(cpows.into_iter().map(|(_, c)| c));
    for c in &certs {
        let id = check_id("pclass_enclosure", &[tag, c.polynomial.as_str()]);
        let [lo, hi] = c.theta_of_p;
        let slack = opts.tol * c.p_of_theta[1].abs().max(1.0);
        checks.push(CheckResult::new(
            id,
            vec![c.polynomial.clone()],
            lo,
            Relation::Le,
            hi,
            slack,
        ));
    }
    Ok((checks, certs))
}
