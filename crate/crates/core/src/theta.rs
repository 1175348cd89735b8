//! Lovász number ϑ(G) with two-sided certificates.
//!
//! Primal: maximize ⟨J, X⟩ subject to tr X = 1, X_uv = 0 on edges, X ⪰ 0.
//! Dual: minimize λ_max(D) over symmetric D that are 1 on the diagonal and on
//! non-edges (edge entries free).
//!
//! Both are solved together by a primal-dual interior point method (HKM
//! direction, Mehrotra predictor-corrector). The returned bounds do not trust
//! the iterates: the primal point is repaired into an exactly feasible matrix
//! and its value bounded with rounding-error terms, and the largest eigenvalue
//! of the dual matrix is bounded by a floating-point Cholesky factorization
//! that succeeds only when a shifted matrix is provably positive definite.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{BudgetKind, Error, Result};
use crate::graph::Graph;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaConfig {
    pub tol: f64,
    pub max_iterations: usize,
    pub max_vertices: usize,
    /// Cap on 1 + |E|, the size of the dense Schur complement system.
    pub max_constraints: usize,
}

impl Default for ThetaConfig {
    fn default() -> Self {
        ThetaConfig {
            tol: 1e-6,
            max_iterations: 150,
            max_vertices: 1000,
            max_constraints: 8000,
        }
    }
}

impl ThetaConfig {
    pub fn with_tol(tol: f64) -> Self {
        ThetaConfig {
            tol,
            ..ThetaConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaResult {
    pub value: f64,
    pub lower_cert: f64,
    pub upper_cert: f64,
    pub gap: f64,
    pub tol: f64,
    pub iterations: usize,
    #[serde(skip)]
    pub certificate: Option<ThetaCertificate>,
}

/// The matrices behind a [`ThetaResult`], kept for re-validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaCertificate {
    /// Primal matrix before normalization: PSD, zero on edges.
    pub primal: DMatrix<f64>,
    /// Free entries of the dual matrix, one per edge in `Graph::edges()` order.
    pub dual_edge_entries: Vec<f64>,
    /// Number claimed to dominate λ_max of the dual matrix.
    pub dual_bound: f64,
}

#[inline]
fn gamma(k: usize) -> f64 {
    let ku = k as f64 * UNIT_ROUNDOFF;
    ku / (1.0 - ku)
}

/// Floating-point Cholesky; `false` on a non-positive pivot.
fn cholesky_succeeds(a: &DMatrix<f64>) -> bool {
    let n = a.nrows();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d.is_nan() || d <= 0.0 {
            return false;
        }
        let djj = d.sqrt();
        l[(j, j)] = djj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / djj;
        }
    }
    true
}

/// Sufficient test for positive definiteness that accounts for rounding.
///
/// If floating-point Cholesky runs to completion on `B - cI` with
/// `c ≥ γ(n+1)/(1-2γ(n+1))·tr(B) + (underflow term)` then `B` is positive
/// definite (Rump's criterion). We use three times that shift.
pub fn certify_positive_definite(b: &DMatrix<f64>) -> bool {
    let n = b.nrows();
    if n == 0 {
        return true;
    }
    let trace: f64 = (0..n).map(|i| b[(i, i)]).sum();
    if trace.is_nan() || trace <= 0.0 || b.iter().any(|x| !x.is_finite()) {
        return false;
    }
    let g = gamma(n + 2);
    let c = 3.0 * (g / (1.0 - 2.0 * g)) * trace * (1.0 + 4.0 * UNIT_ROUNDOFF)
        + 4.0 * (n as f64 + 1.0) * (2.0 * (n as f64 + 2.0) + trace) * f64::MIN_POSITIVE;
    let mut shifted = b.clone();
    for i in 0..n {
        shifted[(i, i)] -= c;
    }
    cholesky_succeeds(&shifted)
}

/// Lower bound on ϑ from a candidate primal matrix: zero the edge entries,
/// shift by a certified multiple of the identity, and bound ⟨J,B⟩/tr(B)
/// from below with explicit rounding terms.
fn primal_bound(g: &Graph, x: &DMatrix<f64>) -> Option<(f64, DMatrix<f64>)> {
    let n = g.n();
    let mut b = (x + x.transpose()) * 0.5;
    for (u, v) in g.edges() {
        b[(u, v)] = 0.0;
        b[(v, u)] = 0.0;
    }
    let lmin = SymmetricEigen::new(b.clone()).eigenvalues.min();
    let trace: f64 = (0..n).map(|i| b[(i, i)]).sum();
    let mut pad = 4.0 * gamma(n + 2) * trace.abs() + 1e-15 * trace.abs();
    for _ in 0..8 {
        let shift = (-lmin).max(0.0) + pad;
        let mut cand = b.clone();
        for i in 0..n {
            cand[(i, i)] += shift;
        }
        if certify_positive_definite(&cand) {
            return Some((normalized_value_lower(&cand), cand));
        }
        pad *= 16.0;
    }
    None
}

/// Lower bound on ⟨J, B⟩ / tr(B) including summation rounding.
fn normalized_value_lower(b: &DMatrix<f64>) -> f64 {
    let n = b.nrows();
    let s: f64 = b.iter().sum();
    let abs: f64 = b.iter().map(|v| v.abs()).sum();
    let t: f64 = (0..n).map(|i| b[(i, i)]).sum();
    let s_low = s - gamma(n * n + 1) * abs;
    let t_high = t * (1.0 + gamma(n + 1));
    let q = s_low / t_high;
    q - 4.0 * UNIT_ROUNDOFF * q.abs()
}

/// Dual matrix with the given free edge entries.
fn dual_matrix(g: &Graph, edge_entries: &[f64]) -> DMatrix<f64> {
    let n = g.n();
    let mut d = DMatrix::from_element(n, n, 1.0);
    for ((u, v), &w) in g.edges().zip(edge_entries) {
        d[(u, v)] = w;
        d[(v, u)] = w;
    }
    d
}

/// `(mu, bound)` where `mu·I − d` is certified positive definite and
/// `bound ≥ mu` absorbs the rounding in forming that diagonal.
fn lambda_max_bound(d: &DMatrix<f64>) -> Option<(f64, f64)> {
    let n = d.nrows();
    let lmax = SymmetricEigen::new(d.clone()).eigenvalues.max();
    let scale = d.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0) * n as f64;
    let mut pad = 8.0 * gamma(n + 2) * scale + 1e-14 * lmax.abs();
    for _ in 0..8 {
        let mu = lmax + pad;
        let mut b = -d.clone();
        for i in 0..n {
            b[(i, i)] += mu;
        }
        if certify_positive_definite(&b) {
            // the diagonal of b was formed with one rounding each
            return Some((mu, mu + 2.0 * UNIT_ROUNDOFF * (mu.abs() + 1.0)));
        }
        pad *= 16.0;
    }
    None
}

/// Re-checks a certificate from scratch; returns `(lower, upper)`.
pub fn revalidate(g: &Graph, cert: &ThetaCertificate) -> Result<(f64, f64)> {
    let n = g.n();
    if cert.primal.nrows() != n || cert.primal.ncols() != n || cert.dual_edge_entries.len() != g.edge_count() {
        return Err(Error::param("certificate dimensions do not match the graph"));
    }
    for (u, v) in g.edges() {
        if cert.primal[(u, v)] != 0.0 || cert.primal[(v, u)] != 0.0 {
            return Err(Error::param(format!("primal certificate nonzero on edge ({u}, {v})")));
        }
    }
    if cert.primal != cert.primal.transpose() || !certify_positive_definite(&cert.primal) {
        return Err(Error::param("primal certificate is not certifiably positive definite"));
    }
    let lower = normalized_value_lower(&cert.primal);
    let d = dual_matrix(g, &cert.dual_edge_entries);
    let mut b = -d;
    for i in 0..n {
        b[(i, i)] += cert.dual_bound;
    }
    if !certify_positive_definite(&b) {
        return Err(Error::param("dual bound does not dominate the dual matrix"));
    }
    Ok((
        lower,
        cert.dual_bound + 2.0 * UNIT_ROUNDOFF * (cert.dual_bound.abs() + 1.0),
    ))
}

/// Largest step in [0, ∞) keeping `x + t·dx` positive semidefinite, given
/// the Cholesky factor of `x`.
fn max_step(l: &DMatrix<f64>, dx: &DMatrix<f64>) -> f64 {
    let linv = l
        .clone()
        .solve_lower_triangular(&DMatrix::identity(l.nrows(), l.nrows()))
        .expect("nonsingular factor");
    let s = &linv * dx * linv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    let lmin = SymmetricEigen::new(s).eigenvalues.min();
    if lmin >= 0.0 {
        f64::INFINITY
    } else {
        -1.0 / lmin
    }
}

struct Problem {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Problem {
    fn m(&self) -> usize {
        1 + self.edges.len()
    }

    /// 𝒜(Q): (tr Q, Q_ab + Q_ba for each edge).
    fn apply(&self, q: &DMatrix<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.m());
        out[0] = q.trace();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            out[k + 1] = q[(a, b)] + q[(b, a)];
        }
        out
    }

    /// 𝒜ᵀ(y) − J.
    fn slack(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n;
        let mut z = DMatrix::from_element(n, n, -1.0);
        for i in 0..n {
            z[(i, i)] += y[0];
        }
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            z[(a, b)] += y[k + 1];
            z[(b, a)] += y[k + 1];
        }
        z
    }

    fn adjoint(&self, dy: &DVector<f64>) -> DMatrix<f64> {
        let n = self.n;
        let mut z = DMatrix::zeros(n, n);
        for i in 0..n {
            z[(i, i)] = dy[0];
        }
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            z[(a, b)] += dy[k + 1];
            z[(b, a)] += dy[k + 1];
        }
        z
    }

    /// Schur complement M_ij = tr(A_i X A_j W).
    fn schur(&self, x: &DMatrix<f64>, w: &DMatrix<f64>) -> DMatrix<f64> {
        let m = self.m();
        let mut mat = DMatrix::zeros(m, m);
        mat[(0, 0)] = x.component_mul(w).sum();
        let p = w * x;
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let v = p[(a, b)] + p[(b, a)];
            mat[(0, k + 1)] = v;
            mat[(k + 1, 0)] = v;
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            for (j, &(c, d)) in self.edges.iter().enumerate().skip(i) {
                let v = x[(b, c)] * w[(d, a)] + x[(b, d)] * w[(c, a)] + x[(a, c)] * w[(d, b)] + x[(a, d)] * w[(c, b)];
                mat[(i + 1, j + 1)] = v;
                mat[(j + 1, i + 1)] = v;
            }
        }
        mat
    }
}

/// Best certified bounds seen so far.
struct Best {
    lower: f64,
    upper: f64,
    primal: Option<DMatrix<f64>>,
    dual: Option<(Vec<f64>, f64)>,
}

impl Best {
    fn update(&mut self, g: &Graph, x: &DMatrix<f64>, y: &DVector<f64>) {
        if let Some((low, mat)) = primal_bound(g, x) {
            if low > self.lower {
                self.lower = low;
                self.primal = Some(mat);
            }
        }
        let entries: Vec<f64> = (1..y.len()).map(|k| -y[k]).map(|w| 1.0 + w).collect();
        let d = dual_matrix(g, &entries);
        if let Some((mu, up)) = lambda_max_bound(&d) {
            if up < self.upper {
                self.upper = up;
                self.dual = Some((entries, mu));
            }
        }
    }

    fn gap(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Cholesky of the Schur complement, retried with a growing diagonal shift
/// when it turns numerically indefinite near the optimum. Only the search
/// direction is affected; the bounds are certified separately.
fn factor_schur(m: DMatrix<f64>) -> Option<nalgebra::Cholesky<f64, nalgebra::Dyn>> {
    let scale = m.diagonal().amax().max(f64::MIN_POSITIVE);
    if let Some(c) = m.clone().cholesky() {
        return Some(c);
    }
    [1e-14, 1e-12, 1e-10, 1e-8].into_iter().find_map(|d| {
        let mut shifted = m.clone();
        for i in 0..shifted.nrows() {
            shifted[(i, i)] += d * scale;
        }
        shifted.cholesky()
    })
}

/// Computes ϑ(G) to within `cfg.tol` with certified bounds.
pub fn theta(g: &Graph, cfg: &ThetaConfig) -> Result<ThetaResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::param("theta is undefined on the empty graph"));
    }
    if cfg.tol.is_nan() || cfg.tol < 1e-9 {
        return Err(Error::param(format!("tolerance {} below the supported 1e-9", cfg.tol)));
    }
    if n > cfg.max_vertices {
        return Err(Error::Budget {
            kind: BudgetKind::Vertices,
            nodes: 0,
            best: n,
        });
    }
    let prob = Problem {
        n,
        edges: g.edges().collect(),
    };
    if prob.m() > cfg.max_constraints {
        return Err(Error::Budget {
            kind: BudgetKind::Vertices,
            nodes: 0,
            best: n,
        });
    }

    let nf = n as f64;
    let mut x = DMatrix::<f64>::identity(n, n) / nf;
    let mut y = DVector::<f64>::zeros(prob.m());
    y[0] = nf + 1.0;
    let mut z = prob.slack(&y);
    let b = {
        let mut b = DVector::zeros(prob.m());
        b[0] = 1.0;
        b
    };

    let mut best = Best {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
        primal: None,
        dual: None,
    };
    best.update(g, &x, &y);

    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        if best.gap() <= cfg.tol {
            break;
        }
        iterations += 1;

        let Some(lz) = z.clone().cholesky() else { break };
        let Some(lx) = x.clone().cholesky() else { break };
        let w = lz.inverse();
        let mu = x.component_mul(&z).sum() / nf;
        let r_p = &b - prob.apply(&x);

        let schur = prob.schur(&x, &w);
        let Some(schur) = factor_schur(schur) else { break };

        let direction = |target: &DMatrix<f64>| {
            // M dy = 𝒜(target) - r_p, target = σμW - X (- second-order term)
            let rhs = prob.apply(target) - &r_p;
            let dy = schur.solve(&rhs);
            let dz = prob.adjoint(&dy);
            let dx = target - &x * &dz * &w;
            let dx = (&dx + dx.transpose()) * 0.5;
            (dx, dy, dz)
        };

        // predictor
        let (dx_a, _, dz_a) = direction(&(-&x));
        let ap = (0.95 * max_step(lx.l_dirty(), &dx_a)).min(1.0);
        let ad = (0.95 * max_step(lz.l_dirty(), &dz_a)).min(1.0);
        let mu_aff = (&x + &dx_a * ap).component_mul(&(&z + &dz_a * ad)).sum() / nf;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // corrector
        let target = &w * (sigma * mu) - &x - &dx_a * &dz_a * &w;
        let (dx, dy, dz) = direction(&target);
        let ap = (0.95 * max_step(lx.l_dirty(), &dx)).min(1.0);
        let ad = (0.95 * max_step(lz.l_dirty(), &dz)).min(1.0);

        x += &dx * ap;
        x = (&x + x.transpose()) * 0.5;
        y += &dy * ad;
        z = prob.slack(&y);

        if mu < 1e-2 || iterations % 5 == 0 {
            best.update(g, &x, &y);
        }
    }
    best.update(g, &x, &y);

    let gap = best.gap();
    if gap.is_nan() || gap > cfg.tol {
        return Err(Error::Convergence {
            iterations,
            gap,
            lower: best.lower,
            upper: best.upper,
        });
    }
    let value = (0.5 * (best.lower + best.upper)).clamp(best.lower, best.upper);
    let certificate = match (best.primal, best.dual) {
        (Some(primal), Some((dual_edge_entries, dual_bound))) => Some(ThetaCertificate {
            primal,
            dual_edge_entries,
            dual_bound,
        }),
        _ => None,
    };
    Ok(ThetaResult {
        value,
        lower_cert: best.lower,
        upper_cert: best.upper,
        gap,
        tol: cfg.tol,
        iterations,
        certificate,
    })
}
