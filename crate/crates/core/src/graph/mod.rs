//! Loopless undirected graphs and the semiring operations on them.
//!
//! Adjacency is stored as one fixed-width bit row per vertex. Graphs are
//! immutable once built; every operation returns a fresh graph. Equality is
//! literal: same vertex count and same adjacency, never isomorphism.

pub mod bitset;
mod generators;
mod graph6;
mod witness;

pub use generators::{complete, cycle, empty, kneser, petersen, random_graph, schlafli, GraphSpec};
pub use graph6::{emit_graph6, parse_graph6};
pub use witness::{diagonal_witness, is_stable, times_complement, StableSetWitness};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    provenance: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is the additive identity.
    pub fn edgeless(n: usize) -> Self {
        let words = bitset::words_for(n);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            provenance: None,
        }
    }

    /// The one-vertex graph, unit of the strong product.
    pub fn unit() -> Self {
        Graph::edgeless(1).with_provenance("K1")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::param(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            for u in 0..v {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        let w = self.words;
        bitset::set(&mut self.rows[u * w..(u + 1) * w], v);
        bitset::set(&mut self.rows[v * w..(v + 1) * w], u);
    }

    pub fn with_provenance(mut self, tag: impl Into<String>) -> Self {
        self.provenance = Some(tag.into());
        self
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    /// Provenance tag, or the vertex count when none was recorded.
    pub fn label(&self) -> String {
        self.provenance.clone().unwrap_or_else(|| format!("graph[{}]", self.n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    /// Open neighbourhood of `v` as a bit row.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bitset::get(self.row(u), v)
    }

    pub fn degree(&self, v: usize) -> usize {
        bitset::count(self.row(v))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bitset::ones(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in increasing order of `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows.iter().all(|&w| w == 0)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::edgeless(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`. `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::param("permutation length differs from vertex count"));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::param("relabelling map is not a permutation"));
            }
        }
        let mut g = Graph::edgeless(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g.provenance = self.provenance.clone();
        Ok(g)
    }

    pub fn sum(&self, other: &Graph) -> Graph {
        sum(self, other)
    }

    pub fn strong_product(&self, other: &Graph) -> Graph {
        strong_product(self, other)
    }

    pub fn power(&self, k: u32) -> Graph {
        power(self, k)
    }

    pub fn complement(&self) -> Graph {
        complement(self)
    }
}

fn combine_tags(a: &Graph, op: &str, b: &Graph) -> Option<String> {
    match (&a.provenance, &b.provenance) {
        (Some(x), Some(y)) => Some(format!("({x}{op}{y})")),
        _ => None,
    }
}

/// Disjoint union. `h`'s vertices are shifted by `g.n()`.
pub fn sum(g: &Graph, h: &Graph) -> Graph {
    let n = g.n + h.n;
    let mut out = Graph::edgeless(n);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(g.n + u, g.n + v);
    }
    out.provenance = combine_tags(g, "+", h);
    out
}

/// Disjoint union of many graphs, blocks laid out in order.
pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a Graph>) -> Graph {
    let parts: Vec<&Graph> = parts.into_iter().collect();
    let n = parts.iter().map(|g| g.n).sum();
    let mut out = Graph::edgeless(n);
    let mut offset = 0;
    for g in parts {
        for (u, v) in g.edges() {
            out.add_edge(offset + u, offset + v);
        }
        offset += g.n;
    }
    out
}

/// Strong product with vertex `(u, v)` at flat index `u * h.n() + v`.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n;
    let n = g.n * nh;
    let mut out = Graph::edgeless(n);
    let w = out.words;
    for u in 0..g.n {
        let closed_u: Vec<usize> = std::iter::once(u).chain(g.neighbors(u)).collect();
        for v in 0..nh {
            let closed_v: Vec<usize> = std::iter::once(v).chain(h.neighbors(v)).collect();
            let me = u * nh + v;
            let row = &mut out.rows[me * w..(me + 1) * w];
            for &a in &closed_u {
                for &b in &closed_v {
                    bitset::set(row, a * nh + b);
                }
            }
            bitset::clear(row, me);
        }
    }
    out.provenance = combine_tags(g, "*", h);
    out
}

/// `k`-fold strong product, left-associated; `power(g, 0)` is K1.
pub fn power(g: &Graph, k: u32) -> Graph {
    let mut out = match k {
        0 => return Graph::unit(),
        _ => g.clone(),
    };
    for _ in 1..k {
        out = strong_product(&out, g);
    }
    out.provenance = g
        .provenance
        .as_ref()
        .map(|t| if k == 1 { t.clone() } else { format!("{t}^{k}") });
    out
}

pub fn complement(g: &Graph) -> Graph {
    let mut out = Graph::edgeless(g.n);
    let full = bitset::full(g.n);
    let w = g.words;
    for v in 0..g.n {
        let row = &mut out.rows[v * w..(v + 1) * w];
        for (i, word) in row.iter_mut().enumerate() {
            *word = !g.rows[v * w + i] & full[i];
        }
        bitset::clear(row, v);
    }
    out.provenance = g.provenance.as_ref().map(|t| format!("co({t})"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_c5_and_k1() {
        let g = sum(&cycle(5).unwrap(), &Graph::unit());
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degree(5), 0);
    }

    #[test]
    fn empty_graph_is_additive_identity() {
        let c5 = cycle(5).unwrap();
        assert_eq!(sum(&empty(0), &c5), c5);
        assert_eq!(sum(&c5, &empty(0)), c5);
    }

    #[test]
    fn c5_squared_has_100_edges() {
        let sq = strong_product(&cycle(5).unwrap(), &cycle(5).unwrap());
        assert_eq!(sq.n(), 25);
        // brute-force count straight from the definition
        let c5 = cycle(5).unwrap();
        let close = |a: usize, b: usize| a == b || c5.has_edge(a, b);
        let mut edges = 0;
        for x in 0..25 {
            for y in x + 1..25 {
                if close(x / 5, y / 5) && close(x % 5, y % 5) {
                    edges += 1;
                    assert!(sq.has_edge(x, y));
                } else {
                    assert!(!sq.has_edge(x, y));
                }
            }
        }
        assert_eq!(edges, 100);
        assert_eq!(sq.edge_count(), 100);
        assert!((0..25).all(|v| sq.degree(v) == 8));
    }

    #[test]
    fn unit_and_edgeless_products() {
        let h = petersen();
        assert_eq!(strong_product(&Graph::unit(), &h), h);
        assert_eq!(strong_product(&h, &Graph::unit()), h);
        assert_eq!(strong_product(&empty(2), &empty(3)), empty(6));
    }

    #[test]
    fn powers() {
        let c5 = cycle(5).unwrap();
        assert_eq!(power(&c5, 0), Graph::unit());
        assert_eq!(power(&c5, 1), c5);
        assert_eq!(power(&c5, 2).n(), 25);
        assert_eq!(power(&c5, 3), strong_product(&power(&c5, 2), &c5));
    }

    #[test]
    fn complement_basics() {
        let g = petersen();
        assert_eq!(complement(&complement(&g)), g);
        assert_eq!(complement(&empty(6)), complete(6));
        assert_eq!(complement(&cycle(5).unwrap()).edge_count(), 5);
        assert_eq!(complement(&empty(0)).n(), 0);
    }

    #[test]
    fn components_and_induced() {
        let g = sum(&cycle(5).unwrap(), &complete(3));
        let comps = g.components();
        assert_eq!(comps, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7]]);
        assert_eq!(g.induced(&comps[1]), complete(3));
    }

    #[test]
    fn from_edges_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 2)]).is_ok());
    }

    #[test]
    fn relabel_checks_permutation() {
        let g = cycle(5).unwrap();
        assert!(g.relabel(&[0, 1, 2, 3]).is_err());
        assert!(g.relabel(&[0, 1, 2, 3, 3]).is_err());
        assert_eq!(g.relabel(&[0, 1, 2, 3, 4]).unwrap(), g);
    }
}
