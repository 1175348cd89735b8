#![allow(dead_code)]

use graphcap::Graph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest stable set by enumerating every vertex subset.
///
/// A subset is stable when dropping its lowest vertex leaves a stable set and
/// that vertex has no neighbour in it.
pub fn brute_alpha(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 26, "subset oracle limited to 26 vertices");
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).fold(0u32, |m, u| m | (1 << u))).collect();
    let mut stable = vec![false; 1usize << n];
    stable[0] = true;
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        if stable[rest as usize] && adj[low] & mask == 0 {
            stable[mask as usize] = true;
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with a vertex count drawn from `lo..=hi` and edge
/// probability 1/2.
pub fn random_graph(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Graph {
    use rand::Rng;
    let n = rng.gen_range(lo..=hi);
    graphcap::graph::random_graph(n, 0.5, rng)
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Same as [`arb_graph`] with at least one vertex.
pub fn arb_nonempty(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("nonempty", |g| g.n() > 0)
}
