//! Simple undirected graphs over dense vertex ids and the component
//! machinery shared by every reduction in the crate.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and free of loops and duplicates.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Loops and repeated edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Bitmap with `true` at every member of `s`.
    pub fn mask(&self, s: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for v in s.iter() {
            mask[v] = true;
        }
        mask
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if v >= self.n() => Err(Error::InvalidInput(format!(
                "vertex {v} out of range for {} vertices",
                self.n()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Set of vertex ids, kept sorted and deduplicated.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Wraps a vector that is already sorted and deduplicated.
    pub(crate) fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    /// Members of `mask` in ascending order.
    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(arr: [usize; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Vertex-disjoint connected subgraphs of exactly `p + 1` vertices each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphPacking {
    pub parts: Vec<VertexSet>,
    pub p: usize,
}

impl SubgraphPacking {
    pub fn vertices(&self) -> VertexSet {
        self.parts.iter().flat_map(|s| s.iter()).collect()
    }
}

/// Components of the subgraph induced by the `alive` vertices, each sorted,
/// ordered by smallest member.
pub fn components_within(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Size of the largest component among the `alive` vertices (0 if none).
pub fn largest_component_within(g: &Graph, alive: &[bool]) -> usize {
    components_within(g, alive).iter().map(Vec::len).max().unwrap_or(0)
}

/// True when the `alive` vertices induce a connected subgraph.
/// The empty set counts as connected.
pub fn is_connected_within(g: &Graph, alive: &[bool]) -> bool {
    components_within(g, alive).len() <= 1
}

pub fn is_connected_set(g: &Graph, s: &VertexSet) -> bool {
    is_connected_within(g, &g.mask(s))
}

/// Maximal connected vertex sets, ordered by smallest contained id.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, &vec![true; g.n()])
        .into_iter()
        .map(VertexSet::from_sorted)
        .collect()
}

pub fn is_connected(g: &Graph) -> bool {
    is_connected_within(g, &vec![true; g.n()])
}

/// `G[s]` with vertices renumbered `0..|s|` in ascending original order, and
/// the map from new ids back to original ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    g.check_set(s)?;
    let map: Vec<usize> = s.iter().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        index[v] = i;
    }
    let mut adj = Vec::with_capacity(map.len());
    let mut m = 0;
    for &v in &map {
        // ascending original order keeps the relabelled lists sorted
        let list: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&&w| index[w] != usize::MAX)
            .map(|&w| index[w])
            .collect();
        m += list.len();
        adj.push(list);
    }
    Ok((Graph { adj, m: m / 2 }, map))
}

/// Vertices outside `s` with a neighbour in `s`. By convention `N(∅)` is every vertex.
pub fn neighborhood(g: &Graph, s: &VertexSet) -> VertexSet {
    if s.is_empty() {
        return g.vertices().collect();
    }
    let inside = g.mask(s);
    let mut hit = vec![false; g.n()];
    for v in s.iter() {
        for &w in g.neighbors(v) {
            if !inside[w] {
                hit[w] = true;
            }
        }
    }
    VertexSet::from_mask(&hit)
}

/// First `target` vertices visited by a BFS from the smallest member of
/// `alive`, restricted to `alive`. Returns fewer when the start's component is small.
pub(crate) fn bfs_prefix(g: &Graph, alive: &[bool], start: usize, target: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(target);
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        if order.len() == target {
            break;
        }
        for &w in g.neighbors(u) {
            if alive[w] && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

/// Exactly `target` vertices of `s` that induce a connected subgraph:
/// the first `target` vertices reached by BFS from `min(s)` inside `G[s]`.
pub fn connected_truncate(g: &Graph, s: &VertexSet, target: usize) -> Result<VertexSet> {
    g.check_set(s)?;
    if target == 0 || s.len() < target {
        return Err(Error::InvalidInput(format!(
            "cannot take {target} connected vertices from a set of {}",
            s.len()
        )));
    }
    let alive = g.mask(s);
    let start = s.first().expect("non-empty");
    let prefix = bfs_prefix(g, &alive, start, target);
    if prefix.len() < target {
        return Err(Error::Precondition(format!(
            "set containing {start} does not induce a connected subgraph of {target} vertices"
        )));
    }
    Ok(prefix.into_iter().collect())
}

/// Greedy maximal packing of connected `(p + 1)`-vertex subgraphs.
///
/// While some component of the residual graph has more than `p` vertices,
/// the first `p + 1` vertices of a BFS from its smallest id are packed.
pub fn maximal_p1_packing(g: &Graph, p: usize) -> SubgraphPacking {
    let alive = vec![true; g.n()];
    extend_packing(g, p, alive, Vec::new())
}

/// Greedily packs more `(p + 1)`-subgraphs into the `residual` vertices until
/// every residual component has at most `p` vertices. New parts are appended to `parts`.
pub(crate) fn extend_packing(
    g: &Graph,
    p: usize,
    mut residual: Vec<bool>,
    mut parts: Vec<VertexSet>,
) -> SubgraphPacking {
    let d = p + 1;
    loop {
        let comps = components_within(g, &residual);
        let Some(comp) = comps.into_iter().find(|c| c.len() > p) else {
            break;
        };
        let mut comp_alive = vec![false; g.n()];
        for &v in &comp {
            comp_alive[v] = true;
        }
        let part = bfs_prefix(g, &comp_alive, comp[0], d);
        debug_assert_eq!(part.len(), d);
        for &v in &part {
            residual[v] = false;
        }
        parts.push(part.into_iter().collect());
    }
    SubgraphPacking { parts, p }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

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

    #[test]
    fn loops_and_duplicates_dropped() {
        let g = Graph::from_edges(3, &[(0, 0), (0, 1), (1, 0), (1, 2), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
    }

    #[test]
    fn components_examples() {
        assert!(connected_components(&Graph::new(0)).is_empty());
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            connected_components(&g),
            vec![VertexSet::from([0, 1, 2]), VertexSet::from([3])]
        );
        assert_eq!(connected_components(&cycle(4)), vec![VertexSet::from([0, 1, 2, 3])]);
    }

    #[test]
    fn induced_examples() {
        let (h, map) = induced_subgraph(&complete(3), &VertexSet::from([0, 1])).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(map, vec![0, 1]);

        let (h, _) = induced_subgraph(&path(4), &VertexSet::new()).unwrap();
        assert_eq!(h.n(), 0);

        let (h, map) = induced_subgraph(&path(4), &VertexSet::from([0, 2, 3])).unwrap();
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(1, 2));
        assert_eq!(map, vec![0, 2, 3]);

        assert!(induced_subgraph(&path(3), &VertexSet::from([5])).is_err());
    }

    #[test]
    fn neighborhood_examples() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(neighborhood(&star, &VertexSet::from([0])), VertexSet::from([1, 2, 3]));
        assert_eq!(neighborhood(&star, &VertexSet::new()), VertexSet::from([0, 1, 2, 3]));
        assert!(neighborhood(&star, &VertexSet::from([0, 1, 2, 3])).is_empty());
    }

    #[test]
    fn packing_examples() {
        let pk = maximal_p1_packing(&path(5), 1);
        assert_eq!(pk.parts, vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);

        let small = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        assert!(maximal_p1_packing(&small, 2).parts.is_empty());

        let pk = maximal_p1_packing(&complete(4), 1);
        assert_eq!(pk.parts, vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
    }

    #[test]
    fn truncate_examples() {
        let g = path(5);
        let all = VertexSet::from([0, 1, 2, 3, 4]);
        assert_eq!(connected_truncate(&g, &all, 3).unwrap(), VertexSet::from([0, 1, 2]));
        assert_eq!(connected_truncate(&g, &all, 5).unwrap(), all);
        let s = VertexSet::from([2, 3, 4]);
        assert_eq!(connected_truncate(&g, &s, 1).unwrap(), VertexSet::from([2]));
        assert!(connected_truncate(&g, &s, 4).is_err());
    }
}
