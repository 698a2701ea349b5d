//! Graph families used for testing and benchmarking.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path ids in range")
}

/// Needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// `rows × cols` grid, vertex `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push((v, v + 1));
            }
            if r + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("grid ids in range")
}

/// Hub 0 with `legs` paths of `len` vertices each; leg `l` occupies
/// `1 + l*len ..= (l+1)*len`, nearest vertex first.
pub fn spider(legs: usize, len: usize) -> Graph {
    let mut edges = Vec::new();
    for l in 0..legs {
        let first = 1 + l * len;
        if len > 0 {
            edges.push((0, first));
        }
        for i in 1..len {
            edges.push((first + i - 1, first + i));
        }
    }
    Graph::from_edges(1 + legs * len, &edges).expect("spider ids in range")
}

fn pair_of(mut idx: usize, n: usize) -> (usize, usize) {
    // row u holds pairs (u, u+1..n)
    let mut u = 0;
    while idx >= n - u - 1 {
        idx -= n - u - 1;
        u += 1;
    }
    (u, u + 1 + idx)
}

/// Uniform graph with exactly `m` edges, reproducible from `seed`.
pub fn random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::InvalidInput(format!("{m} edges do not fit in {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, total, m).into_vec();
    picks.sort_unstable();
    let edges: Vec<_> = picks.into_iter().map(|i| pair_of(i, n)).collect();
    Graph::from_edges(n, &edges)
}

/// Each edge present independently with probability `prob`.
pub fn random_gnp<R: Rng>(n: usize, prob: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("ids in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let s = spider(10, 4);
        assert_eq!((s.n(), s.m()), (41, 40));
        assert_eq!(s.degree(0), 10);
        assert_eq!((grid(3, 4).n(), grid(3, 4).m()), (12, 17));
        assert_eq!(cycle(5).unwrap().m(), 5);
        assert!(cycle(2).is_err());
        assert_eq!(path(1).m(), 0);
    }

    #[test]
    fn gnm_is_reproducible() {
        let a = random_gnm(20, 30, 7).unwrap();
        assert_eq!(a.m(), 30);
        assert_eq!(a, random_gnm(20, 30, 7).unwrap());
        assert_ne!(a, random_gnm(20, 30, 8).unwrap());
        assert_eq!(random_gnm(5, 10, 1).unwrap().m(), 10);
        assert!(random_gnm(5, 11, 1).is_err());
    }

    #[test]
    fn pair_indexing_covers_all_pairs() {
        let n = 6;
        let pairs: Vec<_> = (0..15).map(|i| pair_of(i, n)).collect();
        let mut expected = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                expected.push((u, v));
            }
        }
        assert_eq!(pairs, expected);
    }
}
