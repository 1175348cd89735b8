use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Ok(Graph::from_fn(n, |u, v| v - u == 1 || (u == 0 && v == n - 1)).with_provenance(format!("c{n}")))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_fn(n, |_, _| true).with_provenance(format!("k{n}"))
}

pub fn empty(n: usize) -> Graph {
    Graph::edgeless(n).with_provenance(format!("e{n}"))
}

/// k-subsets of `0..n` in lexicographic order, as bitmasks.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n - left {
            rec(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

/// Kneser graph: k-subsets of an n-set, adjacent when disjoint.
/// G(n, p); coins are drawn in graph6 bit order.
pub fn random_graph<R: rand::Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    Graph::from_fn(n, |_, _| rng.gen_bool(p.clamp(0.0, 1.0))).with_provenance(format!("gnp:{n}"))
}

pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::param(format!("kneser({n},{k}) needs k >= 1 and n >= 2k")));
    }
    if n > 24 {
        return Err(Error::param(format!("kneser ground set of {n} is too large")));
    }
    let sets = subsets(n, k);
    Ok(Graph::from_fn(sets.len(), |u, v| sets[u] & sets[v] == 0).with_provenance(format!("kneser:{n},{k}")))
}

pub fn petersen() -> Graph {
    kneser(5, 2).expect("kneser(5,2) is valid").with_provenance("petersen")
}

/// The Schläfli graph: the 27 lines on a cubic surface, adjacent when skew.
///
/// Lines are `a_i`, `b_i` (i in 0..6) and `c_ij` (i < j). Intersections:
/// `a_i` meets `b_j` for i != j, `a_i` and `b_i` meet `c_jk` when i is in {j, k},
/// and `c_ij` meets `c_kl` when the pairs are disjoint.
pub fn schlafli() -> Graph {
    #[derive(Clone, Copy)]
    enum Line {
        A(usize),
        B(usize),
        C(usize, usize),
    }
    let mut lines: Vec<Line> = (0..6).map(Line::A).collect();
    lines.extend((0..6).map(Line::B));
    for i in 0..6 {
        for j in i + 1..6 {
            lines.push(Line::C(i, j));
        }
    }
    let meets = |x: Line, y: Line| match (x, y) {
        (Line::A(_), Line::A(_)) | (Line::B(_), Line::B(_)) => false,
        (Line::A(i), Line::B(j)) | (Line::B(j), Line::A(i)) => i != j,
        (Line::A(i), Line::C(j, k))
        | (Line::C(j, k), Line::A(i))
        | (Line::B(i), Line::C(j, k))
        | (Line::C(j, k), Line::B(i)) => i == j || i == k,
        (Line::C(i, j), Line::C(k, l)) => i != k && i != l && j != k && j != l,
    };
    Graph::from_fn(27, |u, v| !meets(lines[u], lines[v])).with_provenance("schlafli")
}

/// Named graph constructions accepted on the command line:
/// `c5`, `k7`, `e3`, `petersen`, `kneser:5,2`, `schlafli`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    Petersen,
    Kneser(usize, usize),
    Schlafli,
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            GraphSpec::Cycle(n) => cycle(n),
            GraphSpec::Complete(n) => Ok(complete(n)),
            GraphSpec::Empty(n) => Ok(empty(n)),
            GraphSpec::Petersen => Ok(petersen()),
            GraphSpec::Kneser(n, k) => kneser(n, k),
            GraphSpec::Schlafli => Ok(schlafli()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::param(format!("unknown graph spec '{s}'"));
        match s.as_str() {
            "petersen" => return Ok(GraphSpec::Petersen),
            "schlafli" => return Ok(GraphSpec::Schlafli),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("kneser:") {
            let (n, k) = rest.split_once(',').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let k = k.trim().parse().map_err(|_| bad())?;
            let spec = GraphSpec::Kneser(n, k);
            spec.build()?;
            return Ok(spec);
        }
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let spec = match head {
            'c' => GraphSpec::Cycle(n),
            'k' => GraphSpec::Complete(n),
            'e' => GraphSpec::Empty(n),
            _ => return Err(bad()),
        };
        if let GraphSpec::Cycle(n) = spec {
            cycle(n)?;
        }
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Cycle(n) => write!(f, "c{n}"),
            GraphSpec::Complete(n) => write!(f, "k{n}"),
            GraphSpec::Empty(n) => write!(f, "e{n}"),
            GraphSpec::Petersen => f.write_str("petersen"),
            GraphSpec::Kneser(n, k) => write!(f, "kneser:{n},{k}"),
            GraphSpec::Schlafli => f.write_str("schlafli"),
        }
    }
}
