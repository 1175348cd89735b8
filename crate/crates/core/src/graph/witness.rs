use serde::{Deserialize, Serialize};

use super::{complement, Graph};
use crate::error::{Error, Result};

/// A vertex set offered as proof that a graph has a stable set of this size.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StableSetWitness {
    vertices: Vec<usize>,
}

impl StableSetWitness {
    /// Sorts and deduplicates.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        StableSetWitness { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn is_stable(g: &Graph, s: &StableSetWitness) -> Result<bool> {
    if let Some(&v) = s.vertices.iter().find(|&&v| v >= g.n()) {
        return Err(Error::param(format!("vertex {v} out of range for {} vertices", g.n())));
    }
    Ok(s.vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| s.vertices[i + 1..].iter().all(|&v| !g.has_edge(u, v))))
}

/// The diagonal `{(v, v)}` in the strong product of `g` with its complement.
///
/// Two diagonal vertices `(u, u)` and `(v, v)` would need `u ~ v` in both `g`
/// and its complement, so the set is stable and has `|V(g)|` elements.
pub fn diagonal_witness(g: &Graph) -> StableSetWitness {
    let n = g.n();
    StableSetWitness {
        vertices: (0..n).map(|v| v * n + v).collect(),
    }
}

/// `g` times its complement, the host graph of [`diagonal_witness`].
pub fn times_complement(g: &Graph) -> Graph {
    super::strong_product(g, &complement(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, petersen, schlafli};

    #[test]
    fn stable_sets_on_c5() {
        let c5 = cycle(5).unwrap();
        assert!(is_stable(&c5, &StableSetWitness::new(vec![0, 2])).unwrap());
        assert!(!is_stable(&c5, &StableSetWitness::new(vec![0, 1])).unwrap());
        assert!(is_stable(&c5, &StableSetWitness::default()).unwrap());
        assert!(is_stable(&c5, &StableSetWitness::new(vec![5])).is_err());
    }

    #[test]
    fn diagonal_witnesses() {
        for (g, size) in [(petersen(), 10), (schlafli(), 27), (Graph::unit(), 1)] {
            let w = diagonal_witness(&g);
            assert_eq!(w.len(), size);
            assert!(is_stable(&times_complement(&g), &w).unwrap());
        }
        assert_eq!(diagonal_witness(&Graph::unit()).vertices(), &[0]);
    }
}
