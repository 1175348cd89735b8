//! Polynomials in ℕ[x1, …, xn] and their evaluation on tuples of graphs,
//! where `+` is disjoint union and `·` is the strong product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Limits on the graphs that evaluation is allowed to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBudget {
    pub max_vertices: u64,
    /// Bit-row adjacency costs n²/8 bytes; this caps it independently.
    pub max_adjacency_bytes: u64,
}

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget {
            max_vertices: 5_000_000,
            max_adjacency_bytes: 1 << 30,
        }
    }
}

impl SizeBudget {
    pub fn check(&self, vertices: &BigUint) -> Result<()> {
        let over = || Error::Size {
            vertices: vertices.to_string(),
            budget: self.max_vertices,
        };
        let n = vertices.to_u64().ok_or_else(over)?;
        if n > self.max_vertices {
            return Err(over());
        }
        let words = n.div_ceil(64) as u128;
        if n as u128 * words * 8 > self.max_adjacency_bytes as u128 {
            return Err(over());
        }
        Ok(())
    }

    pub fn check_product(&self, g: &Graph, h: &Graph) -> Result<()> {
        self.check(&(BigUint::from(g.n()) * h.n()))
    }

    pub fn check_power(&self, g: &Graph, k: u32) -> Result<()> {
        self.check(&BigUint::from(g.n()).pow(k))
    }
}

/// Exponent vector of a monomial; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u64) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Every variable has exponent at least one.
    pub fn is_full_support(&self) -> bool {
        self.0.iter().all(|&e| e >= 1)
    }
}

/// True iff `mu` divides `q^n`, i.e. `mu ≤ n·q` componentwise.
pub fn monomial_divides(mu: &Monomial, q: &Monomial, n: u64) -> Result<bool> {
    if mu.nvars() != q.nvars() {
        return Err(Error::param("monomials over different variable counts"));
    }
    Ok(mu.0.iter().zip(&q.0).all(|(&m, &e)| m <= n.saturating_mul(e)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigUint>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: u64) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial::term(Monomial::var(nvars, i), 1u32)
    }

    pub fn term(m: Monomial, c: impl Into<BigUint>) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c.into());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigUint) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        *self.terms.entry(m).or_insert_with(BigUint::zero) += c;
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Same polynomial seen in a larger variable set.
    pub fn widen(&self, nvars: usize) -> Result<Polynomial> {
        if nvars < self.nvars {
            return Err(Error::param(format!(
                "cannot narrow a polynomial in {} variables to {nvars}",
                self.nvars
            )));
        }
        let mut p = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.resize(nvars, 0);
            p.add_term(Monomial(e), c.clone());
        }
        Ok(p)
    }

    fn same_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::param("polynomials over different variable counts"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_arity(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_arity(other)?;
        let mut p = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, 1);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// Indices of variables with a positive exponent in some term.
    pub fn variables_occurring(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
            .collect()
    }

    /// Evaluates at real points; `values.len()` must equal `nvars`.
    pub fn eval_real(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.nvars {
            return Err(Error::param("arity mismatch in real evaluation"));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::INFINITY);
                m.0.iter().zip(values).fold(c, |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Vertex count of `p(G⃗)` without building it.
    pub fn evaluated_size(&self, ns: &[usize]) -> Result<BigUint> {
        if ns.len() != self.nvars {
            return Err(Error::param(format!(
                "polynomial has {} variables but {} graphs were given",
                self.nvars,
                ns.len()
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(ns)
                    .fold(c.clone(), |acc, (&e, &n)| acc * BigUint::from(n).pow(e as u32))
            })
            .sum())
    }

    /// Parses terms such as `3 x1^2 x2 + x2^3 + 1`.
    ///
    /// Variables are `x1, x2, …`; the single letters `x, y, z, w` name
    /// variables 1 to 4. Factors may be separated by spaces or `*`. The
    /// variable count is the largest index used, or `nvars` when given.
    pub fn parse(text: &str, nvars: Option<usize>) -> Result<Polynomial> {
        let terms = parse_terms(text)?;
        let used = terms
            .iter()
            .flat_map(|(_, vars)| vars.iter().map(|&(i, _)| i + 1))
            .max()
            .unwrap_or(0);
        let nvars = match nvars {
            Some(n) if n < used => {
                return Err(Error::param(format!(
                    "polynomial uses x{used} but only {n} variables are available"
                )))
            }
            Some(n) => n,
            None => used,
        };
        let mut p = Polynomial::zero(nvars);
        for (coef, vars) in terms {
            let mut e = vec![0u64; nvars];
            for (i, k) in vars {
                e[i] += k;
            }
            p.add_term(Monomial(e), coef);
        }
        Ok(p)
    }
}

type ParsedTerm = (BigUint, Vec<(usize, u64)>);

fn parse_terms(text: &str) -> Result<Vec<ParsedTerm>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut terms = Vec::new();
    let mut coef = BigUint::one();
    let mut vars: Vec<(usize, u64)> = Vec::new();
    let mut factors = 0;

    let number = |i: &mut usize| -> &str {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        &text[start..*i]
    };

    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'*' => i += 1,
            b'+' => {
                if factors == 0 {
                    return Err(Error::format(i, "empty term"));
                }
                terms.push((std::mem::replace(&mut coef, BigUint::one()), std::mem::take(&mut vars)));
                factors = 0;
                i += 1;
            }
            b'0'..=b'9' => {
                let digits = number(&mut i);
                coef *= digits.parse::<BigUint>().expect("digits");
                factors += 1;
            }
            b'x' | b'y' | b'z' | b'w' => {
                let at = i;
                i += 1;
                let digits = number(&mut i);
                let index = if digits.is_empty() {
                    match b {
                        b'x' => 0,
                        b'y' => 1,
                        b'z' => 2,
                        _ => 3,
                    }
                } else if b == b'x' {
                    match digits.parse::<usize>() {
                        Ok(k) if k >= 1 => k - 1,
                        _ => return Err(Error::format(at, "variable indices start at x1")),
                    }
                } else {
                    return Err(Error::format(at, "only x takes a numeric index"));
                };
                let mut exp = 1u64;
                while i < bytes.len() && bytes[i] == b' ' {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    while i < bytes.len() && bytes[i] == b' ' {
                        i += 1;
                    }
                    let at = i;
                    let digits = number(&mut i);
                    exp = digits
                        .parse::<u64>()
                        .map_err(|_| Error::format(at, "expected an exponent after '^'"))?;
                    if exp > u32::MAX as u64 {
                        return Err(Error::format(at, "exponent too large"));
                    }
                }
                vars.push((index, exp));
                factors += 1;
            }
            _ => return Err(Error::format(i, format!("unexpected character '{}'", b as char))),
        }
    }
    if factors == 0 {
        return Err(Error::format(bytes.len(), "empty term"));
    }
    terms.push((coef, vars));
    Ok(terms)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut parts = Vec::new();
            if !c.is_one() || m.degree() == 0 {
                parts.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("x{}", i + 1)),
                    _ => parts.push(format!("x{}^{}", i + 1, e)),
                }
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

/// `∏ᵢ Gᵢ^{eᵢ}`, left-associated in variable order.
pub fn evaluate_monomial(m: &Monomial, gs: &[Graph]) -> Graph {
    let mut acc = Graph::unit();
    for (g, &e) in gs.iter().zip(&m.0) {
        if e > 0 {
            acc = graph::strong_product(&acc, &graph::power(g, e as u32));
        }
    }
    acc
}

/// Builds `p(G₁, …, Gₙ)`: for each term `c·x^e` in ascending exponent order,
/// `c` contiguous copies of the monomial graph, all joined by disjoint union.
pub fn evaluate(p: &Polynomial, gs: &[Graph], budget: &SizeBudget) -> Result<Graph> {
    let ns: Vec<usize> = gs.iter().map(Graph::n).collect();
    budget.check(&p.evaluated_size(&ns)?)?;
    let mut blocks: Vec<(Graph, usize)> = Vec::with_capacity(p.terms.len());
    for (m, c) in &p.terms {
        let copies = c.to_usize().expect("checked against the vertex budget");
        blocks.push((evaluate_monomial(m, gs), copies));
    }
    let parts = blocks.iter().flat_map(|(g, copies)| std::iter::repeat_n(g, *copies));
    Ok(graph::sum_all(parts))
}

/// Binomial coefficient as a big natural.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Σₖ C(n,k)·G^k·H^(n−k)` built directly as a disjoint union, k = 0..=n.
pub fn expand_sum_power(g: &Graph, h: &Graph, n: u32, budget: &SizeBudget) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("expansion power must be at least 1"));
    }
    let total: BigUint = (0..=n)
        .map(|k| binomial(n as u64, k as u64) * BigUint::from(g.n()).pow(k) * BigUint::from(h.n()).pow(n - k))
        .sum();
    budget.check(&total)?;
    let mut blocks = Vec::new();
    for k in 0..=n {
        let block = graph::strong_product(&graph::power(g, k), &graph::power(h, n - k));
        let copies = binomial(n as u64, k as u64).to_usize().expect("within budget");
        blocks.push((block, copies));
    }
    Ok(graph::sum_all(
        blocks.iter().flat_map(|(b, c)| std::iter::repeat_n(b, *c)),
    ))
}

/// One term of `(q₁ + … + q_t)^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultinomialTerm {
    /// `(i₁, …, i_t)` with `Σ i_j = k`.
    pub exponents: Vec<u64>,
    /// `k! / (i₁! ⋯ i_t!)`.
    pub coefficient: BigUint,
    /// `∏ q_j^{i_j}`.
    pub monomial: Monomial,
}

/// All terms of the multinomial expansion of `(q₁ + … + q_t)^k`, in
/// lexicographic order of the exponent tuples.
pub fn multinomial_expand(qs: &[Monomial], k: u64) -> Result<Vec<MultinomialTerm>> {
    let t = qs.len();
    if t == 0 || k == 0 {
        return Err(Error::param("multinomial expansion needs t >= 1 and k >= 1"));
    }
    let nvars = qs[0].nvars();
    if qs.iter().any(|q| q.nvars() != nvars) {
        return Err(Error::param("monomials over different variable counts"));
    }

    fn rec(j: usize, left: u64, coef: BigUint, acc: &mut Vec<u64>, qs: &[Monomial], out: &mut Vec<MultinomialTerm>) {
        if j + 1 == qs.len() {
            acc.push(left);
            let monomial = acc
                .iter()
                .zip(qs)
                .fold(Monomial::one(qs[0].nvars()), |m, (&i, q)| m.mul(&q.pow(i)));
            out.push(MultinomialTerm {
                exponents: acc.clone(),
                coefficient: coef,
                monomial,
            });
            acc.pop();
            return;
        }
        for i in 0..=left {
            acc.push(i);
            rec(j + 1, left - i, &coef * binomial(left, i), acc, qs, out);
            acc.pop();
        }
    }

    let mut out = Vec::new();
    rec(0, k, BigUint::one(), &mut Vec::with_capacity(t), qs, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, empty};

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, None).unwrap()
    }

    #[test]
    fn parse_forms() {
        let a = p("3 x1^2 x2 + x2^3 + 1");
        assert_eq!(a.nvars(), 2);
        assert_eq!(a.num_terms(), 3);
        assert_eq!(a.to_string(), "3 x1^2 x2 + x2^3 + 1");
        let b = p("x^2+2 x y");
        assert_eq!(b, p("x1^2 + 2*x1*x2"));
        assert_eq!(p("x + x"), p("2 x"));
        assert_eq!(
            Polynomial::parse("y^3", Some(2)).unwrap().variables_occurring(),
            BTreeSet::from([1])
        );
        assert!(Polynomial::parse("x3", Some(2)).is_err());
        for bad in ["", "x +", "+ x", "x^", "x0", "q", "y2"] {
            assert!(Polynomial::parse(bad, None).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.add(&y).unwrap();
        assert_eq!(s.pow(2), p("x^2 + 2 x y + y^2"));
        assert_eq!(s.mul(&Polynomial::zero(2)).unwrap(), Polynomial::zero(2));
        assert_eq!(s.pow(0), Polynomial::constant(2, 1));
        assert!(x.add(&Polynomial::var(3, 0)).is_err());
        assert_eq!(p("x^2 + 2 x y").eval_real(&[2.0, 3.0]).unwrap(), 16.0);
    }

    #[test]
    fn evaluate_examples() {
        let budget = SizeBudget::default();
        let c5 = cycle(5).unwrap();
        let g = evaluate(&p("x^2"), std::slice::from_ref(&c5), &budget).unwrap();
        assert_eq!(g, graph::power(&c5, 2));

        let g = evaluate(&p("x^2 + 2 x y"), &[empty(2), empty(3)], &budget).unwrap();
        assert_eq!(g.n(), 16);
        assert!(g.is_edgeless());

        let one = Polynomial::constant(1, 1);
        assert_eq!(
            evaluate(&one, std::slice::from_ref(&c5), &budget).unwrap(),
            Graph::unit()
        );
        assert_eq!(
            evaluate(&Polynomial::zero(1), std::slice::from_ref(&c5), &budget)
                .unwrap()
                .n(),
            0
        );
        assert!(matches!(
            evaluate(&p("x y"), std::slice::from_ref(&c5), &budget),
            Err(Error::Parameter(_))
        ));

        let tight = SizeBudget {
            max_vertices: 100,
            ..budget
        };
        assert!(matches!(evaluate(&p("x^3"), &[c5], &tight), Err(Error::Size { .. })));
    }

    #[test]
    fn evaluate_layout_is_ascending_term_order() {
        // x + 1 over C5: the constant term (exponent 0) comes first.
        let g = evaluate(&p("x + 1"), &[cycle(5).unwrap()], &SizeBudget::default()).unwrap();
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.induced(&[1, 2, 3, 4, 5]), cycle(5).unwrap());
    }

    #[test]
    fn sum_power_expansion_sizes() {
        let budget = SizeBudget::default();
        let k1 = Graph::unit();
        let g = expand_sum_power(&k1, &k1, 2, &budget).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.is_edgeless());
        let g = expand_sum_power(&cycle(5).unwrap(), &k1, 2, &budget).unwrap();
        assert_eq!(g.n(), 36);
        assert!(expand_sum_power(&k1, &k1, 0, &budget).is_err());
    }

    #[test]
    fn multinomials() {
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        let row: Vec<u64> = multinomial_expand(&[x.clone(), y.clone()], 3)
            .unwrap()
            .iter()
            .map(|t| t.coefficient.to_u64().unwrap())
            .collect();
        assert_eq!(row, vec![1, 3, 3, 1]);

        let z = Monomial::var(3, 2);
        let three = [Monomial::var(3, 0), Monomial::var(3, 1), z];
        let terms = multinomial_expand(&three, 2).unwrap();
        assert_eq!(terms.len(), 6);
        for t in &terms {
            let mixed = t.exponents.iter().filter(|&&i| i > 0).count() == 2;
            assert_eq!(t.coefficient, BigUint::from(if mixed { 2u32 } else { 1 }));
        }
        let total: BigUint = terms.iter().map(|t| t.coefficient.clone()).sum();
        assert_eq!(total, BigUint::from(9u32));

        let single = multinomial_expand(std::slice::from_ref(&x), 5).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].exponents, vec![5]);
        assert_eq!(single[0].monomial, Monomial::new(vec![5, 0]));
        assert!(multinomial_expand(&[], 2).is_err());
        assert!(multinomial_expand(&[x], 0).is_err());
    }

    #[test]
    fn divisibility() {
        let q = Monomial::new(vec![1, 1]);
        assert!(monomial_divides(&Monomial::new(vec![1, 2]), &q, 2).unwrap());
        assert!(!monomial_divides(&Monomial::new(vec![3, 0]), &q, 2).unwrap());
        assert!(monomial_divides(&Monomial::one(2), &q, 1).unwrap());
        assert!(monomial_divides(&Monomial::one(3), &q, 1).is_err());
    }

    #[test]
    fn variables() {
        assert_eq!(p("x^2 + 2 x y").variables_occurring(), BTreeSet::from([0, 1]));
        assert!(Polynomial::constant(2, 7).variables_occurring().is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
