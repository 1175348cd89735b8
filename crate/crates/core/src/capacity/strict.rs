//! Strictness certificates for products and sums, and the converse bound.

use serde::{Deserialize, Serialize};

use super::{capacity_interval, deflate, inflate, CapacityConfig, CapacityInterval, UpperProvenance};
use crate::alpha::{alpha, AlphaSource};
use crate::error::{Error, Result};
use crate::graph::{is_stable, parse_graph6, power, strong_product, sum, Graph, StableSetWitness};
use crate::theta::theta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    ProductStrict,
    SumStrict,
}

/// An exact α value of a power, with the witness that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaEvidence {
    pub graph6: String,
    pub power: u32,
    pub alpha: usize,
    pub witness: StableSetWitness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaEvidence {
    pub graph6: String,
    pub lower_cert: f64,
    pub upper_cert: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictnessCertificate {
    pub kind: CertificateKind,
    /// Certified lower bound on the left side.
    pub lhs: f64,
    /// Certified upper bound on the right side.
    pub rhs: f64,
    /// `lhs - rhs` rounded down; always positive.
    pub slack: f64,
    /// Sum certificates compare squares.
    pub squared: bool,
    pub alpha_evidence: Vec<AlphaEvidence>,
    pub theta_evidence: Vec<ThetaEvidence>,
}

impl StrictnessCertificate {
    /// Re-checks every quoted α: the witness is stable in the stored power and
    /// a fresh exact solve returns the same value.
    pub fn reverify(&self, cfg: &CapacityConfig) -> Result<bool> {
        for ev in &self.alpha_evidence {
            let g = parse_graph6(&ev.graph6)?;
            let gk = power(&g, ev.power);
            if ev.witness.len() != ev.alpha || !is_stable(&gk, &ev.witness)? {
                return Ok(false);
            }
            if alpha(&gk, &cfg.solver)?.value != ev.alpha {
                return Ok(false);
            }
        }
        Ok(self.slack > 0.0 && self.lhs > self.rhs)
    }
}

fn alpha_evidence(iv: &CapacityInterval) -> AlphaEvidence {
    AlphaEvidence {
        graph6: iv.graph_ref.clone(),
        power: iv.lower_provenance.k,
        alpha: iv.lower_provenance.alpha,
        witness: iv.lower_provenance.witness.clone(),
    }
}

fn theta_evidence(iv: &CapacityInterval) -> Option<ThetaEvidence> {
    match iv.upper_provenance {
        UpperProvenance::Theta {
            lower_cert,
            upper_cert,
            gap,
        } => Some(ThetaEvidence {
            graph6: iv.graph_ref.clone(),
            lower_cert,
            upper_cert,
            gap,
        }),
        UpperProvenance::Rank(_) => None,
    }
}

/// Upper bound on `U(G)·U(H)` and the rounded-down slack of `L(GH)` over it,
/// when that slack is positive.
pub fn product_strictness(l_gh: f64, u_g: f64, u_h: f64) -> Option<(f64, f64)> {
    let rhs = inflate(u_g * u_h, 1);
    let slack = deflate(l_gh - rhs, 1);
    (slack > 0.0).then_some((rhs, slack))
}

/// Certificate for Θ(GH) > Θ(G)Θ(H) from three intervals, if their ends
/// separate.
pub fn product_certificate_from(
    ig: &CapacityInterval,
    ih: &CapacityInterval,
    igh: &CapacityInterval,
) -> Option<StrictnessCertificate> {
    let (rhs, slack) = product_strictness(igh.lower, ig.upper, ih.upper)?;
    Some(StrictnessCertificate {
        kind: CertificateKind::ProductStrict,
        lhs: igh.lower,
        rhs,
        slack,
        squared: false,
        alpha_evidence: vec![alpha_evidence(igh)],
        theta_evidence: [ig, ih].into_iter().filter_map(theta_evidence).collect(),
    })
}

/// Computes the intervals of G, H and GH and compares them. `None` means
/// inconclusive, not equality.
pub fn strict_product_certificate(g: &Graph, h: &Graph, cfg: &CapacityConfig) -> Result<Option<StrictnessCertificate>> {
    let ig = capacity_interval(g, cfg)?;
    let ih = capacity_interval(h, cfg)?;
    let igh = capacity_interval(&strong_product(g, h), cfg)?;
    Ok(product_certificate_from(&ig, &ih, &igh))
}

/// Squared-level comparison `L(G)² + 2L(GH) + L(H)²` against `(U(G)+U(H))²`.
///
/// Returns `(lhs, rhs, slack)` with the left side rounded down and the right
/// side rounded up, or the deficit when the slack is not positive.
pub fn sum_chain(lg: f64, lh: f64, lgh: f64, ug: f64, uh: f64) -> Result<(f64, f64, f64)> {
    let lhs = deflate(lg * lg + 2.0 * lgh + lh * lh, 4);
    let rhs = inflate((ug + uh) * (ug + uh), 2);
    let slack = deflate(lhs - rhs, 1);
    if slack > 0.0 {
        Ok((lhs, rhs, slack))
    } else {
        Err(Error::DerivationFailed { deficit: rhs - lhs })
    }
}

/// Turns a product certificate into one for Θ(G+H) > Θ(G) + Θ(H), using
/// Θ((G+H)²) ≥ Θ(G)² + 2Θ(GH) + Θ(H)².
pub fn derive_sum_certificate(
    c: &StrictnessCertificate,
    ig: &CapacityInterval,
    ih: &CapacityInterval,
) -> Result<StrictnessCertificate> {
    if c.kind != CertificateKind::ProductStrict {
        return Err(Error::param("sum derivation needs a product-strict certificate"));
    }
    let (lhs, rhs, slack) = sum_chain(ig.lower, ih.lower, c.lhs, ig.upper, ih.upper)?;
    let mut alphas = c.alpha_evidence.clone();
    alphas.extend([alpha_evidence(ig), alpha_evidence(ih)]);
    let mut theta = c.theta_evidence.clone();
    for ev in [ig, ih].into_iter().filter_map(theta_evidence) {
        if !theta.contains(&ev) {
            theta.push(ev);
        }
    }
    Ok(StrictnessCertificate {
        kind: CertificateKind::SumStrict,
        lhs,
        rhs,
        slack,
        squared: true,
        alpha_evidence: alphas,
        theta_evidence: theta,
    })
}

/// Values of Θ(G), Θ(H) taken as hypotheses rather than computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AssumedCapacities {
    pub g: f64,
    pub h: f64,
}

impl AssumedCapacities {
    /// Uses the interval upper ends.
    pub fn from_upper(ig: &CapacityInterval, ih: &CapacityInterval) -> Self {
        AssumedCapacities {
            g: ig.upper,
            h: ih.upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConverseBound {
    /// Θ(G)^i Θ(H)^j under the hypothesis Θ(GH) ≤ Θ(G)Θ(H).
    pub power_bound: f64,
    /// (Θ(G) + Θ(H))^n under the same hypothesis.
    pub sum_bound: f64,
    /// (ϑ(G) + ϑ(H))^n from the certified upper ends; holds unconditionally.
    pub theta_sum_bound: f64,
    /// α((G+H)^n), or `None` when over budget.
    pub alpha_sum_power: Option<usize>,
    pub skipped_reason: Option<String>,
    /// α((G+H)^n) ≤ theta_sum_bound; vacuously true when skipped.
    pub holds: bool,
}

/// The converse direction of the sum/product equivalence, made numeric.
pub fn theorem2_converse_bound(
    g: &Graph,
    h: &Graph,
    i: u32,
    j: u32,
    n: u32,
    assumed: AssumedCapacities,
    cfg: &CapacityConfig,
) -> Result<ConverseBound> {
    theorem2_converse_bound_with(g, h, i, j, n, assumed, cfg, &cfg.solver)
}

/// [`theorem2_converse_bound`] with α values drawn from `source`.
#[allow(clippy::too_many_arguments)]
pub fn theorem2_converse_bound_with(
    g: &Graph,
    h: &Graph,
    i: u32,
    j: u32,
    n: u32,
    assumed: AssumedCapacities,
    cfg: &CapacityConfig,
    source: &dyn AlphaSource,
) -> Result<ConverseBound> {
    if i + j == 0 {
        return Err(Error::param("need i + j >= 1"));
    }
    if n == 0 {
        return Err(Error::param("need n >= 1"));
    }
    let ops = (i + j + n) as usize + 2;
    let power_bound = inflate(assumed.g.powi(i as i32) * assumed.h.powi(j as i32), ops);
    let sum_bound = inflate((assumed.g + assumed.h).powi(n as i32), ops);

    let tg = theta(g, &cfg.theta)?;
    let th = theta(h, &cfg.theta)?;
    let ug = inflate(tg.upper_cert + tg.gap, 2);
    let uh = inflate(th.upper_cert + th.gap, 2);
    let theta_sum_bound = inflate((ug + uh).powi(n as i32), ops);

    let s = sum(g, h);
    let solved = cfg.size.check_power(&s, n).and_then(|_| source.alpha(&power(&s, n)));
    let (alpha_sum_power, skipped_reason) = match solved {
        Ok(r) => (Some(r.value), None),
        Err(e) if e.is_budget() => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let holds = alpha_sum_power.is_none_or(|a| a as f64 <= theta_sum_bound);
    Ok(ConverseBound {
        power_bound,
        sum_bound,
        theta_sum_bound,
        alpha_sum_power,
        skipped_reason,
        holds,
    })
}
