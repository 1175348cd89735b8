use num_bigint::BigUint;

use super::{check_id, CheckResult, Relation};
use crate::alpha::AlphaSource;
use crate::capacity::{
    capacity_interval_with, root_floor, theorem2_converse_bound_with, AssumedCapacities, CapacityConfig,
};
use crate::error::{Error, Result};
use crate::graph::{diagonal_witness, emit_graph6, is_stable, power, strong_product, sum, times_complement, Graph};
use crate::poly::expand_sum_power;
use crate::theta::theta;

/// Shared settings for the individual checks.
pub struct CheckContext<'a> {
    pub cap: CapacityConfig,
    pub source: &'a dyn AlphaSource,
    /// Tolerance for comparisons that involve ϑ.
    pub tol: f64,
}

impl<'a> CheckContext<'a> {
    pub fn new(cap: CapacityConfig, source: &'a dyn AlphaSource) -> Self {
        CheckContext { cap, source, tol: 1e-4 }
    }

    fn alpha(&self, g: &Graph) -> Result<usize> {
        self.cap.size.check(&BigUint::from(g.n()))?;
        Ok(self.source.alpha(g)?.value)
    }
}

fn labels(gs: &[&Graph]) -> Vec<String> {
    gs.iter().map(|g| g.label()).collect()
}

fn inputs(gs: &[&Graph], params: &[String]) -> Vec<String> {
    gs.iter()
        .map(|g| emit_graph6(g))
        .chain(params.iter().cloned())
        .collect()
}

/// Turns budget and convergence errors into a `budget` record.
fn guarded(
    id: String,
    inputs: Vec<String>,
    rel: Relation,
    run: impl FnOnce() -> Result<CheckResult>,
) -> Result<CheckResult> {
    match run() {
        Err(e) if e.is_budget() || matches!(e, Error::Convergence { .. }) => {
            Ok(CheckResult::budget(id, inputs, rel, e.to_string()))
        }
        other => other,
    }
}

/// α(G+H) = α(G) + α(H).
pub fn check_alpha_additivity(g: &Graph, h: &Graph, ctx: &CheckContext) -> Result<CheckResult> {
    let id = check_id("alpha_additivity", &labels(&[g, h]));
    let inp = inputs(&[g, h], &[]);
    guarded(id.clone(), inp.clone(), Relation::Eq, || {
        let lhs = ctx.alpha(&sum(g, h))?;
        let rhs = ctx.alpha(g)? + ctx.alpha(h)?;
        Ok(CheckResult::new(id, inp, lhs, Relation::Eq, rhs, 0.0))
    })
}

/// α(GH) ≥ α(G)·α(H); `strict` marks a strict gap.
pub fn check_alpha_supermult(g: &Graph, h: &Graph, ctx: &CheckContext) -> Result<CheckResult> {
    let id = check_id("alpha_supermult", &labels(&[g, h]));
    let inp = inputs(&[g, h], &[]);
    guarded(id.clone(), inp.clone(), Relation::Ge, || {
        ctx.cap.size.check_product(g, h)?;
        let lhs = ctx.alpha(&strong_product(g, h))?;
        let rhs = ctx.alpha(g)? * ctx.alpha(h)?;
        Ok(CheckResult::new(id, inp, lhs, Relation::Ge, rhs, 0.0))
    })
}

/// α((G+H)^n) = α(Σₖ C(n,k) G^k H^{n−k}).
pub fn check_sum_power_expansion(g: &Graph, h: &Graph, n: u32, ctx: &CheckContext) -> Result<CheckResult> {
    let params = [format!("n={n}")];
    let id = check_id("sum_power_expansion", &[g.label(), h.label(), params[0].clone()]);
    let inp = inputs(&[g, h], &params);
    guarded(id.clone(), inp.clone(), Relation::Eq, || {
        let s = sum(g, h);
        ctx.cap.size.check_power(&s, n)?;
        let lhs = ctx.alpha(&power(&s, n))?;
        let rhs = ctx.alpha(&expand_sum_power(g, h, n, &ctx.cap.size)?)?;
        Ok(CheckResult::new(id, inp, lhs, Relation::Eq, rhs, 0.0))
    })
}

/// α((G+H)^n) ≥ (α(G^t)^{1/t} + α(H^t)^{1/t})^n / (α(G^t)·α(H^t)), with the
/// roots and the right side rounded down.
pub fn check_theorem1_link(g: &Graph, h: &Graph, n: u32, t: u32, ctx: &CheckContext) -> Result<CheckResult> {
    if t == 0 || t > n {
        return Err(Error::param(format!("need 1 <= t <= n, got t={t}, n={n}")));
    }
    let params = [format!("n={n}"), format!("t={t}")];
    let id = check_id(
        "theorem1_link",
        &[g.label(), h.label(), params[0].clone(), params[1].clone()],
    );
    let inp = inputs(&[g, h], &params);
    guarded(id.clone(), inp.clone(), Relation::Ge, || {
        let s = sum(g, h);
        ctx.cap.size.check_power(&s, n)?;
        ctx.cap.size.check_power(g, t)?;
        ctx.cap.size.check_power(h, t)?;
        let ag = ctx.alpha(&power(g, t))?;
        let ah = ctx.alpha(&power(h, t))?;
        let lhs = ctx.alpha(&power(&s, n))?;
        let roots = root_floor(ag as u64, t) + root_floor(ah as u64, t);
        let raw = roots.powi(n as i32) / (ag as f64 * ah as f64);
        let rhs = crate::capacity::deflate(raw, n as usize + 4).max(0.0);
        Ok(CheckResult::new(id, inp, lhs, Relation::Ge, rhs, 0.0)
            .with_detail(format!("alpha(G^t)={ag}, alpha(H^t)={ah}")))
    })
}

/// Interval consistency with Θ(G+H) ≥ Θ(G) + Θ(H): the upper end for G+H
/// must reach the sum of the lower ends.
pub fn check_shannon_superadditivity(g: &Graph, h: &Graph, ctx: &CheckContext) -> Result<CheckResult> {
    let id = check_id("shannon_superadditivity", &labels(&[g, h]));
    let inp = inputs(&[g, h], &[format!("kmax={}", ctx.cap.kmax)]);
    guarded(id.clone(), inp.clone(), Relation::Ge, || {
        let ig = capacity_interval_with(g, &ctx.cap, ctx.source)?;
        let ih = capacity_interval_with(h, &ctx.cap, ctx.source)?;
        let is = capacity_interval_with(&sum(g, h), &ctx.cap, ctx.source)?;
        let rhs = crate::capacity::deflate(ig.lower + ih.lower, 1);
        Ok(CheckResult::new(id, inp, is.upper, Relation::Ge, rhs, ctx.tol)
            .with_detail(format!("interval(G+H) = [{:.9}, {:.9}]", is.lower, is.upper)))
    })
}

/// ϑ(GH) = ϑ(G)ϑ(H), compared within the combined certificate widths.
pub fn check_theta_multiplicativity(g: &Graph, h: &Graph, ctx: &CheckContext) -> Result<CheckResult> {
    let id = check_id("theta_multiplicativity", &labels(&[g, h]));
    let inp = inputs(&[g, h], &[]);
    guarded(id.clone(), inp.clone(), Relation::Eq, || {
        let tg = theta(g, &ctx.cap.theta)?;
        let th = theta(h, &ctx.cap.theta)?;
        let tgh = theta(&strong_product(g, h), &ctx.cap.theta)?;
        let prod_lo = tg.lower_cert * th.lower_cert;
        let prod_hi = tg.upper_cert * th.upper_cert;
        let width = (tgh.upper_cert - tgh.lower_cert) + (prod_hi - prod_lo);
        let tol = crate::capacity::inflate(width, 4) + 4.0 * f64::EPSILON * prod_hi.max(1.0);
        let rhs = tg.value * th.value;
        Ok(CheckResult::new(id, inp, tgh.value, Relation::Eq, rhs, tol)
            .with_detail(format!("|diff| = {:e}", (tgh.value - rhs).abs())))
    })
}

/// The diagonal of G·Ḡ is stable of size |V(G)|, so |V(G)| ≤ α(GḠ).
pub fn check_diagonal_witness(g: &Graph) -> Result<CheckResult> {
    let id = check_id("diagonal_witness", &[g.label()]);
    let gc = times_complement(g);
    let w = diagonal_witness(g);
    let size = if is_stable(&gc, &w)? { w.len() } else { 0 };
    Ok(CheckResult::new(id, inputs(&[g], &[]), size, Relation::Eq, g.n(), 0.0))
}

/// α(G) ≤ ϑ(G) with the certified upper end.
pub fn check_theta_sandwich(g: &Graph, ctx: &CheckContext) -> Result<CheckResult> {
    let id = check_id("theta_sandwich", &[g.label()]);
    let inp = inputs(&[g], &[]);
    guarded(id.clone(), inp.clone(), Relation::Le, || {
        let a = ctx.alpha(g)?;
        let t = theta(g, &ctx.cap.theta)?;
        Ok(CheckResult::new(id, inp, a, Relation::Le, t.upper_cert + t.gap, 0.0))
    })
}

/// Unconditional form of the converse bound: α((G+H)^n) ≤ (ϑ(G) + ϑ(H))^n.
pub fn check_theorem2_converse(g: &Graph, h: &Graph, n: u32, ctx: &CheckContext) -> Result<CheckResult> {
    let params = [format!("n={n}")];
    let id = check_id("theorem2_converse", &[g.label(), h.label(), params[0].clone()]);
    let inp = inputs(&[g, h], &params);
    guarded(id.clone(), inp.clone(), Relation::Le, || {
        let tg = theta(g, &ctx.cap.theta)?;
        let th = theta(h, &ctx.cap.theta)?;
        let assumed = AssumedCapacities {
            g: tg.upper_cert + tg.gap,
            h: th.upper_cert + th.gap,
        };
        let b = theorem2_converse_bound_with(g, h, 1, 1, n, assumed, &ctx.cap, ctx.source)?;
        Ok(match b.alpha_sum_power {
            Some(lhs) => CheckResult::new(id, inp, lhs, Relation::Le, b.theta_sum_bound, 0.0),
            None => CheckResult::budget(id, inp, Relation::Le, b.skipped_reason.unwrap_or_default()),
        })
    })
}

/// A comparison that must fail; passes when the harness flags it.
pub fn check_harness_self_test() -> CheckResult {
    let adversarial = CheckResult::new(
        check_id("adversarial", &[] as &[&str]),
        vec![],
        1usize,
        Relation::Eq,
        2usize,
        0.0,
    );
    let seen = if adversarial.is_hard_failure() {
        "flagged"
    } else {
        "missed"
    };
    CheckResult::new(
        check_id("harness_self_test", &[] as &[&str]),
        vec!["1 = 2".into()],
        seen,
        Relation::Eq,
        "flagged",
        0.0,
    )
}
