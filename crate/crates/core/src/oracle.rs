//! Exact p-size separators for small graphs.
//!
//! [`min_p_separator`] is a branch-and-bound search: every connected
//! `(p + 1)`-vertex subgraph must lose a vertex, so it branches over the
//! vertices of one such subgraph. Vertices skipped by earlier branches are
//! marked as kept, which makes the branches disjoint and lets kept clusters
//! steer the next choice. [`min_p_separator_exhaustive`] is the independent
//! check: plain enumeration of vertex subsets by increasing size.

use crate::error::{Error, Result};
use crate::graph::{components_within, connected_components, induced_subgraph, Graph, VertexSet};

/// Components larger than this cannot be handled by the bitset search.
pub const MAX_COMPONENT: usize = 128;
/// Vertex limit of the exhaustive enumeration.
pub const MAX_EXHAUSTIVE: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub separator: VertexSet,
    pub size: usize,
    pub optimal: bool,
}

/// True iff every component of `G - s` has at most `p` vertices.
pub fn is_p_size_separator(g: &Graph, s: &VertexSet, p: usize) -> bool {
    let alive: Vec<bool> = g.vertices().map(|v| !s.contains(v)).collect();
    components_within(g, &alive).iter().all(|c| c.len() <= p)
}

/// Minimum p-size separator, or `None` when every separator is larger than
/// `cap` (which defaults to `n`).
pub fn min_p_separator(g: &Graph, p: usize, cap: Option<usize>) -> Result<Option<OracleResult>> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    let cap = cap.unwrap_or(g.n());
    let mut separator = Vec::new();
    for comp in connected_components(g) {
        if comp.len() <= p {
            continue;
        }
        if comp.len() > MAX_COMPONENT {
            return Err(Error::InvalidInput(format!(
                "component of {} vertices exceeds oracle capacity {MAX_COMPONENT}",
                comp.len()
            )));
        }
        let Some(budget) = cap.checked_sub(separator.len()) else {
            return Ok(None);
        };
        let (sub, map) = induced_subgraph(g, &comp)?;
        match solve_component(&sub, p, budget) {
            Some(found) => separator.extend(found.into_iter().map(|v| map[v])),
            None => return Ok(None),
        }
    }
    let separator: VertexSet = separator.into_iter().collect();
    Ok(Some(OracleResult { size: separator.len(), separator, optimal: true }))
}

type Bits = u128;

fn bit(v: usize) -> Bits {
    1 << v
}

fn members(mut s: Bits) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(v)
        }
    })
}

struct Search {
    adj: Vec<Bits>,
    p: usize,
    best: Option<Bits>,
    /// Solutions must be strictly smaller than this.
    bound: usize,
}

impl Search {
    /// Component of `start` inside `within`.
    fn component(&self, start: usize, within: Bits) -> Bits {
        let mut comp = bit(start);
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & within & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        comp
    }

    /// First `count` vertices of a BFS inside `within`, seeded by `seeds` in
    /// ascending order.
    fn bfs_prefix(&self, seeds: Bits, within: Bits, count: usize) -> Vec<usize> {
        let mut order: Vec<usize> = members(seeds).collect();
        let mut seen = seeds;
        let mut head = 0;
        while order.len() < count && head < order.len() {
            let v = order[head];
            head += 1;
            for w in members(self.adj[v] & within & !seen) {
                seen |= bit(w);
                order.push(w);
                if order.len() == count {
                    break;
                }
            }
        }
        order.truncate(count);
        order
    }

    /// Vertices of `alive` lying in components of more than `p` vertices.
    fn large_part(&self, alive: Bits) -> Bits {
        let mut rest = alive;
        let mut large = 0;
        while rest != 0 {
            let comp = self.component(rest.trailing_zeros() as usize, alive);
            rest &= !comp;
            if comp.count_ones() as usize > self.p {
                large |= comp;
            }
        }
        large
    }

    /// Number of disjoint connected (p+1)-sets found greedily: a lower bound
    /// on the deletions still needed.
    fn packing_bound(&self, mut alive: Bits) -> usize {
        let mut count = 0;
        loop {
            alive = self.large_part(alive);
            if alive == 0 {
                return count;
            }
            let start = alive.trailing_zeros() as usize;
            let part = self.bfs_prefix(bit(start), alive, self.p + 1);
            for v in part {
                alive &= !bit(v);
            }
            count += 1;
        }
    }

    fn run(&mut self, alive: Bits, kept: Bits, deleted: Bits) {
        let used = deleted.count_ones() as usize;
        if used >= self.bound {
            return;
        }
        let live = self.large_part(alive);
        if live == 0 {
            self.bound = used;
            self.best = Some(deleted);
            return;
        }
        let kept = kept & live;

        // largest kept cluster; a cluster over p vertices can never be fixed
        let mut anchor: Bits = 0;
        let mut rest = kept;
        while rest != 0 {
            let cluster = self.component(rest.trailing_zeros() as usize, kept);
            rest &= !cluster;
            if cluster.count_ones() as usize > self.p {
                return;
            }
            if cluster.count_ones() > anchor.count_ones() {
                anchor = cluster;
            }
        }
        if used + self.packing_bound(live) >= self.bound {
            return;
        }

        if anchor == 0 {
            // no kept vertex: start from a maximum-degree vertex
            let start = members(live)
                .max_by_key(|&v| ((self.adj[v] & live).count_ones(), std::cmp::Reverse(v)))
                .expect("live is non-empty");
            anchor = bit(start);
        }
        let target = self.bfs_prefix(anchor, live, self.p + 1);
        debug_assert_eq!(target.len(), self.p + 1);
        let mut candidates: Vec<usize> = target.into_iter().filter(|&v| kept & bit(v) == 0).collect();
        candidates.sort_unstable();

        let mut keep = kept;
        for v in candidates {
            self.run(live & !bit(v), keep, deleted | bit(v));
            keep |= bit(v);
        }
    }
}

/// Minimum separator of a connected graph with at most [`MAX_COMPONENT`]
/// vertices, if one of size `<= budget` exists.
fn solve_component(g: &Graph, p: usize, budget: usize) -> Option<Vec<usize>> {
    let adj: Vec<Bits> =
        g.vertices().map(|v| g.neighbors(v).iter().fold(0, |acc, &w| acc | bit(w))).collect();
    let all: Bits = if g.n() == MAX_COMPONENT { Bits::MAX } else { bit(g.n()) - 1 };
    let mut search = Search { adj, p, best: None, bound: budget + 1 };
    search.run(all, 0, 0);
    search.best.map(|s| members(s).collect())
}

/// Lexicographically first minimum separator, by enumerating all vertex
/// subsets in order of increasing size. Limited to [`MAX_EXHAUSTIVE`] vertices.
pub fn min_p_separator_exhaustive(g: &Graph, p: usize) -> Result<OracleResult> {
    let n = g.n();
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    if n > MAX_EXHAUSTIVE {
        return Err(Error::InvalidInput(format!(
            "exhaustive search is limited to {MAX_EXHAUSTIVE} vertices, got {n}"
        )));
    }
    let adj: Vec<u32> =
        g.vertices().map(|v| g.neighbors(v).iter().fold(0, |acc, &w| acc | 1 << w)).collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };

    let feasible = |removed: u32| -> bool {
        let mut rest = full & !removed;
        while rest != 0 {
            let mut comp = rest & rest.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros();
                frontier &= frontier - 1;
                let fresh = adj[v as usize] & rest & !comp;
                comp |= fresh;
                frontier |= fresh;
                if comp.count_ones() as usize > p {
                    return false;
                }
            }
            rest &= !comp;
        }
        true
    };

    for size in 0..=n {
        // combinations of `size` indices in lexicographic order
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mask = idx.iter().fold(0u32, |acc, &v| acc | 1 << v);
            if feasible(mask) {
                let separator: VertexSet = idx.iter().copied().collect();
                return Ok(OracleResult { size, separator, optimal: true });
            }
            let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("deleting every vertex is always a separator")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn separator_check_examples() {
        let p3 = path(3);
        assert!(is_p_size_separator(&p3, &VertexSet::from([0, 1, 2]), 1));
        assert!(is_p_size_separator(&p3, &VertexSet::from([1]), 1));
        assert!(!is_p_size_separator(&cycle(6), &VertexSet::from([0]), 2));
    }

    #[test]
    fn small_optima() {
        let r = min_p_separator(&path(3), 1, None).unwrap().unwrap();
        assert_eq!(r.separator, VertexSet::from([1]));
        assert_eq!(min_p_separator(&cycle(6), 2, None).unwrap().unwrap().size, 2);
        assert_eq!(min_p_separator(&complete(5), 1, None).unwrap().unwrap().size, 4);
        assert_eq!(min_p_separator(&Graph::new(4), 1, None).unwrap().unwrap().size, 0);
    }

    #[test]
    fn cap_exhaustion_gives_none() {
        assert_eq!(min_p_separator(&complete(5), 1, Some(3)).unwrap(), None);
        assert!(min_p_separator(&complete(5), 1, Some(4)).unwrap().is_some());
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(min_p_separator_exhaustive(&cycle(4), 1).unwrap().size, 2);
        assert_eq!(min_p_separator_exhaustive(&cycle(4), 1).unwrap().separator, VertexSet::from([0, 2]));
        assert_eq!(min_p_separator_exhaustive(&Graph::new(6), 1).unwrap().size, 0);
        let p4 = path(4);
        assert_eq!(
            min_p_separator_exhaustive(&p4, 1).unwrap().size,
            min_p_separator(&p4, 1, None).unwrap().unwrap().size
        );
        assert!(min_p_separator_exhaustive(&Graph::new(26), 1).is_err());
    }

    #[test]
    fn large_sparse_component() {
        // a 100-vertex path needs every third vertex for p = 2
        let r = min_p_separator(&path(100), 2, None).unwrap().unwrap();
        assert_eq!(r.size, 33);
        assert!(is_p_size_separator(&path(100), &r.separator, 2));
        assert!(min_p_separator(&path(129), 1, None).is_err());
    }
}
