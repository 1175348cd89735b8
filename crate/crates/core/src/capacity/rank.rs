//! Rank of fitting matrices over prime fields.
//!
//! A matrix B fits G when every diagonal entry is nonzero and B_uv = 0 for
//! distinct nonadjacent u, v. Its rank over any field bounds Θ(G) from above.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Square matrix with entries reduced modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpMatrix {
    prime: u64,
    n: usize,
    entries: Vec<u64>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FpMatrix {
    pub fn from_rows(prime: u64, rows: &[Vec<u64>]) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::param(format!("{prime} is not prime")));
        }
        if prime > u32::MAX as u64 {
            return Err(Error::param("prime must fit in 32 bits"));
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::param("matrix is not square"));
        }
        Ok(FpMatrix {
            prime,
            n,
            entries: rows.iter().flatten().map(|&x| x % prime).collect(),
        })
    }

    /// A + c·I for the adjacency matrix A of `g`.
    pub fn adjacency_shift(g: &Graph, prime: u64, shift: u64) -> Result<Self> {
        let n = g.n();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| if u == v { shift } else { g.has_edge(u, v) as u64 })
                    .collect()
            })
            .collect();
        FpMatrix::from_rows(prime, &rows)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Rank by Gaussian elimination over GF(p).
    pub fn rank(&self) -> usize {
        let (n, p) = (self.n, self.prime);
        let mut a = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| a[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                a.swap(piv * n + j, rank * n + j);
            }
            let inv = pow_mod(a[rank * n + col], p - 2, p);
            for j in col..n {
                a[rank * n + j] = a[rank * n + j] * inv % p;
            }
            for r in 0..n {
                let f = a[r * n + col];
                if r != rank && f != 0 {
                    for j in col..n {
                        a[r * n + j] = (a[r * n + j] + p - f * a[rank * n + j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Checks that `b` fits `g`, naming the first offending entry.
pub fn check_fitting(g: &Graph, b: &FpMatrix) -> Result<()> {
    if b.dim() != g.n() {
        return Err(Error::param(format!(
            "matrix is {0}x{0} but the graph has {1} vertices",
            b.dim(),
            g.n()
        )));
    }
    for u in 0..g.n() {
        if b.get(u, u) == 0 {
            return Err(Error::FittingViolation {
                row: u,
                col: u,
                reason: "diagonal entry is zero".into(),
            });
        }
        for v in 0..g.n() {
            if u != v && !g.has_edge(u, v) && b.get(u, v) != 0 {
                return Err(Error::FittingViolation {
                    row: u,
                    col: v,
                    reason: "nonzero entry on a nonadjacent pair".into(),
                });
            }
        }
    }
    Ok(())
}

pub fn rank_bound(g: &Graph, b: &FpMatrix) -> Result<usize> {
    check_fitting(g, b)?;
    Ok(b.rank())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBound {
    pub prime: u64,
    pub shift: u64,
    pub rank: usize,
}

/// Tries `A + c·I` over GF(p) for each shift `c` and keeps the smallest rank.
/// Shifts that vanish mod p do not fit and are skipped.
pub fn rank_bound_search(g: &Graph, prime: u64, shifts: &[u64]) -> Result<Option<RankBound>> {
    let mut best: Option<RankBound> = None;
    for &shift in shifts {
        if shift % prime == 0 {
            continue;
        }
        let b = FpMatrix::adjacency_shift(g, prime, shift)?;
        let rank = rank_bound(g, &b)?;
        if best.is_none_or(|r| rank < r.rank) {
            best = Some(RankBound { prime, shift, rank });
        }
    }
    Ok(best)
}
