//! Splitting a connected graph into two disjoint connected pieces of at least
//! `p + 1` vertices each. Possible whenever the graph has more than `3p`
//! vertices and no single vertex whose removal leaves only components of
//! size at most `p`.

use crate::error::{Error, Result};
use crate::graph::{components_within, is_connected, is_connected_within, neighborhood, Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub v1: VertexSet,
    pub v2: VertexSet,
}

impl SplitPair {
    /// Checks disjointness, sizes and connectivity; returns the failures.
    pub fn check(&self, g: &Graph, p: usize) -> Vec<String> {
        let mut bad = Vec::new();
        if !self.v1.is_disjoint(&self.v2) {
            bad.push("v1 and v2 intersect".to_string());
        }
        for (name, s) in [("v1", &self.v1), ("v2", &self.v2)] {
            if s.len() < p + 1 {
                bad.push(format!("|{name}| = {} < p + 1", s.len()));
            }
            if s.is_empty() || !is_connected_within(g, &g.mask(s)) {
                bad.push(format!("{name} is not connected"));
            }
        }
        bad
    }
}

fn max_component_without(g: &Graph, removed: &[bool]) -> usize {
    let alive: Vec<bool> = removed.iter().map(|&r| !r).collect();
    components_within(g, &alive).iter().map(Vec::len).max().unwrap_or(0)
}

/// Smallest vertex whose removal leaves only components of at most `p` vertices.
pub fn p_separator_vertex(g: &Graph, p: usize) -> Option<usize> {
    let mut removed = vec![false; g.n()];
    for v in g.vertices() {
        removed[v] = true;
        let ok = max_component_without(g, &removed) <= p;
        removed[v] = false;
        if ok {
            return Some(v);
        }
    }
    None
}

pub fn connect(g: &Graph, p: usize) -> Result<SplitPair> {
    let n = g.n();
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    if n <= 3 * p {
        return Err(Error::Precondition(format!("graph has {n} <= 3p = {} vertices", 3 * p)));
    }
    if !is_connected(g) {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if let Some(v) = p_separator_vertex(g, p) {
        return Err(Error::Precondition(format!("vertex {v} is a {p}-size separator vertex")));
    }

    let mut in_v1 = vec![false; n];
    let mut size_v1 = 0;
    let mut v2: Vec<usize> = g.vertices().collect();
    while size_v1 <= p {
        let candidates = neighborhood(g, &VertexSet::from_mask(&in_v1));
        let mut chosen = None;
        for v in candidates.iter() {
            in_v1[v] = true;
            let separates = max_component_without(g, &in_v1) <= p;
            in_v1[v] = false;
            if !separates {
                chosen = Some(v);
                break;
            }
        }
        let Some(v) = chosen else {
            return Err(Error::Internal(format!(
                "no vertex extends V1 of size {size_v1} without separating the graph"
            )));
        };
        in_v1[v] = true;

        // keep the largest remaining component (first by smallest id on ties)
        let outside: Vec<bool> = in_v1.iter().map(|&x| !x).collect();
        let mut best: Vec<usize> = Vec::new();
        for comp in components_within(g, &outside) {
            if comp.len() > best.len() {
                best = comp;
            }
        }
        in_v1 = vec![true; n];
        for &u in &best {
            in_v1[u] = false;
        }
        size_v1 = n - best.len();
        v2 = best;
        debug_assert!(is_connected_within(g, &in_v1));
    }

    let pair = SplitPair { v1: VertexSet::from_mask(&in_v1), v2: v2.into_iter().collect() };
    let bad = pair.check(g, p);
    if !bad.is_empty() {
        return Err(Error::Internal(format!("split postcondition failed: {}", bad.join("; "))));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn grid(r: usize, c: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let v = i * c + j;
                if j + 1 < c {
                    edges.push((v, v + 1));
                }
                if i + 1 < r {
                    edges.push((v, v + c));
                }
            }
        }
        Graph::from_edges(r * c, &edges).unwrap()
    }

    #[test]
    fn separator_vertex_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(p_separator_vertex(&star, 1), Some(0));
        assert_eq!(p_separator_vertex(&cycle(4), 1), None);
        // n <= p + 1: any vertex leaves at most p vertices
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p_separator_vertex(&path, 2), Some(0));
        assert_eq!(p_separator_vertex(&Graph::new(0), 1), None);
    }

    #[test]
    fn connect_on_c4() {
        let split = connect(&cycle(4), 1).unwrap();
        // N({0}) = {1, 3}; vertex 1 keeps {2, 3} connected, so it is taken first
        assert_eq!(split.v1, VertexSet::from([0, 1]));
        assert_eq!(split.v2, VertexSet::from([2, 3]));
    }

    #[test]
    fn connect_on_c7_and_grid() {
        let g = cycle(7);
        let split = connect(&g, 2).unwrap();
        assert!(split.check(&g, 2).is_empty());

        let g = grid(3, 3);
        assert_eq!(p_separator_vertex(&g, 2), None);
        let split = connect(&g, 2).unwrap();
        assert!(split.check(&g, 2).is_empty());
        assert_eq!(split.v1.len() + split.v2.len(), 9);
    }

    #[test]
    fn connect_refuses_bad_inputs() {
        // triangle: 3 = 3p vertices, tight case
        let tri = cycle(3);
        assert!(matches!(connect(&tri, 1), Err(Error::Precondition(_))));
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(matches!(connect(&star, 1), Err(Error::Precondition(_))));
        let split = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]).unwrap();
        assert!(matches!(connect(&split, 1), Err(Error::Precondition(_))));
    }
}
