//! The vertex-weighted auxiliary bipartite graph of a partition `(A, B)`,
//! star assignments over it, their load classes, and the alternating-level
//! hierarchy that drives redundant-vertex elimination.
//!
//! A-side nodes are the connected components of `G[A]`, weighted by size.
//! B-side nodes are the vertices of `B` with weight zero. An A-node and a
//! B-node are adjacent when some member of the component touches the
//! B-vertex in `G`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{components_within, Graph, VertexSet};

/// One component of `G[A]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ANode {
    pub weight: usize,
    pub members: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxBipartite {
    pub p: usize,
    pub a_nodes: Vec<ANode>,
    /// Original id of the B-vertex behind each B-node, ascending.
    pub b_nodes: Vec<usize>,
    /// Sorted B-node indices adjacent to each A-node.
    pub a_adj: Vec<Vec<usize>>,
    /// Sorted A-node indices adjacent to each B-node.
    pub b_adj: Vec<Vec<usize>>,
    /// A-node index of every A-vertex of `G`, `None` for B-vertices.
    pub a_node_of: Vec<Option<usize>>,
}

impl AuxBipartite {
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.a_adj[a].binary_search(&b).is_ok()
    }

    pub fn b_index(&self, vertex: usize) -> Option<usize> {
        self.b_nodes.binary_search(&vertex).ok()
    }
}

/// Builds the auxiliary graph of `g` with `B = b`.
///
/// Fails when some component of `G[V \ b]` has more than `p` vertices.
pub fn build_aux(g: &Graph, b: &VertexSet, p: usize) -> Result<AuxBipartite> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    if let Some(v) = b.last() {
        if v >= g.n() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
    }
    let in_b = g.mask(b);
    let in_a: Vec<bool> = in_b.iter().map(|&x| !x).collect();
    let comps = components_within(g, &in_a);
    let b_nodes: Vec<usize> = b.iter().collect();
    let mut b_index = vec![usize::MAX; g.n()];
    for (j, &v) in b_nodes.iter().enumerate() {
        b_index[v] = j;
    }

    let mut a_nodes = Vec::with_capacity(comps.len());
    let mut a_adj = Vec::with_capacity(comps.len());
    let mut b_adj = vec![Vec::new(); b_nodes.len()];
    let mut a_node_of = vec![None; g.n()];
    for (i, comp) in comps.into_iter().enumerate() {
        if comp.len() > p {
            return Err(Error::Precondition(format!(
                "component of G[A] containing {} has {} > p = {p} vertices",
                comp[0],
                comp.len()
            )));
        }
        let mut touched = Vec::new();
        for &v in &comp {
            a_node_of[v] = Some(i);
            for &w in g.neighbors(v) {
                if in_b[w] {
                    touched.push(b_index[w]);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for &j in &touched {
            b_adj[j].push(i);
        }
        a_adj.push(touched);
        a_nodes.push(ANode { weight: comp.len(), members: comp.into_iter().collect() });
    }
    Ok(AuxBipartite { p, a_nodes, b_nodes, a_adj, b_adj, a_node_of })
}

/// `assign[a]` is the B-node partner of A-node `a`; together these edges
/// form a star packing from B′ to A′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarAssignment {
    pub assign: Vec<usize>,
}

impl StarAssignment {
    /// A-nodes assigned to each B-node, ascending.
    pub fn stars(&self, b_count: usize) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); b_count];
        for (a, &b) in self.assign.iter().enumerate() {
            stars[b].push(a);
        }
        stars
    }

    pub fn is_valid_for(&self, h: &AuxBipartite) -> bool {
        self.assign.len() == h.a_nodes.len()
            && self.assign.iter().enumerate().all(|(a, &b)| b < h.b_nodes.len() && h.has_edge(a, b))
    }
}

/// Assigns each A-node to its smallest B-neighbour.
pub fn init_assignment(h: &AuxBipartite) -> Result<StarAssignment> {
    let mut assign = Vec::with_capacity(h.a_nodes.len());
    for (a, adj) in h.a_adj.iter().enumerate() {
        match adj.first() {
            Some(&b) => assign.push(b),
            None => {
                return Err(Error::Precondition(format!(
                    "component of G[A] containing {} is not adjacent to B",
                    h.a_nodes[a].members.first().unwrap_or(0)
                )))
            }
        }
    }
    Ok(StarAssignment { assign })
}

/// Load class of a star: heavy (`load ≥ 2p`), full (`p ≤ load < 2p`) or light (`load < p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarClass {
    Heavy,
    Full,
    Light,
}

impl StarClass {
    pub fn of(load: usize, p: usize) -> Self {
        if load >= 2 * p {
            StarClass::Heavy
        } else if load >= p {
            StarClass::Full
        } else {
            StarClass::Light
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadClasses {
    pub p: usize,
    /// Total weight assigned to each B-node.
    pub load: Vec<usize>,
    pub class: Vec<StarClass>,
}

impl LoadClasses {
    fn b_nodes_in(&self, c: StarClass) -> Vec<usize> {
        (0..self.class.len()).filter(|&b| self.class[b] == c).collect()
    }

    pub fn heavy(&self) -> Vec<usize> {
        self.b_nodes_in(StarClass::Heavy)
    }

    pub fn full(&self) -> Vec<usize> {
        self.b_nodes_in(StarClass::Full)
    }

    pub fn light(&self) -> Vec<usize> {
        self.b_nodes_in(StarClass::Light)
    }

    /// A-nodes whose partner lies in class `c`.
    pub fn a_nodes_in(&self, m: &StarAssignment, c: StarClass) -> Vec<usize> {
        (0..m.assign.len()).filter(|&a| self.class[m.assign[a]] == c).collect()
    }
}

pub fn classify(h: &AuxBipartite, m: &StarAssignment, p: usize) -> LoadClasses {
    let mut load = vec![0; h.b_nodes.len()];
    for (a, &b) in m.assign.iter().enumerate() {
        load[b] += h.a_nodes[a].weight;
    }
    let class = load.iter().map(|&l| StarClass::of(l, p)).collect();
    LoadClasses { p, load, class }
}

/// Levels of the alternating hierarchy. B-nodes sit on even levels,
/// A-nodes on odd levels; unreached nodes are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    pub a_level: Vec<Option<usize>>,
    pub b_level: Vec<Option<usize>>,
}

impl Hierarchy {
    pub fn is_empty(&self) -> bool {
        self.a_level.iter().all(Option::is_none) && self.b_level.iter().all(Option::is_none)
    }

    pub fn b_members(&self) -> Vec<usize> {
        (0..self.b_level.len()).filter(|&b| self.b_level[b].is_some()).collect()
    }

    pub fn a_members(&self) -> Vec<usize> {
        (0..self.a_level.len()).filter(|&a| self.a_level[a].is_some()).collect()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.a_level.iter().chain(self.b_level.iter()).flatten().copied().max()
    }

    /// Checks the structural properties of a hierarchy against `(h, m)`:
    /// level 0 is exactly the heavy set, odd levels hold A-nodes reached by
    /// their assignment edge, and every even node `≥ 2` has a non-assignment
    /// edge down to the previous level. Returns the violated conditions.
    pub fn check(&self, h: &AuxBipartite, m: &StarAssignment, classes: &LoadClasses) -> Vec<String> {
        let mut bad = Vec::new();
        for b in 0..h.b_nodes.len() {
            let heavy = classes.class[b] == StarClass::Heavy;
            let level = self.b_level[b];
            if heavy != (level == Some(0)) {
                bad.push(format!("B-node {b}: heavy={heavy} but level {level:?}"));
            }
            match level {
                Some(l) if l % 2 == 1 => bad.push(format!("B-node {b} on odd level {l}")),
                Some(l) if l >= 2 => {
                    let linked = h.b_adj[b]
                        .iter()
                        .any(|&a| m.assign[a] != b && self.a_level[a] == Some(l - 1));
                    if !linked {
                        bad.push(format!("B-node {b} on level {l} has no link to level {}", l - 1));
                    }
                }
                _ => {}
            }
        }
        for a in 0..h.a_nodes.len() {
            if let Some(l) = self.a_level[a] {
                if l % 2 == 0 {
                    bad.push(format!("A-node {a} on even level {l}"));
                } else if self.b_level[m.assign[a]] != Some(l - 1) {
                    bad.push(format!("A-node {a} on level {l} but its partner is not on level {}", l - 1));
                }
            } else if self.b_level[m.assign[a]].is_some() {
                bad.push(format!("A-node {a} missing although its partner is leveled"));
            }
        }
        bad
    }
}

/// Breadth-first leveling from the heavy B-nodes, following assignment
/// edges from B to A and non-assignment edges from A to B.
pub fn build_hierarchy(h: &AuxBipartite, m: &StarAssignment, classes: &LoadClasses) -> Hierarchy {
    let stars = m.stars(h.b_nodes.len());
    let mut a_level = vec![None; h.a_nodes.len()];
    let mut b_level = vec![None; h.b_nodes.len()];
    let mut queue = VecDeque::new();
    for b in classes.heavy() {
        b_level[b] = Some(0);
        queue.push_back(b);
    }
    // the queue holds B-nodes only; A-nodes are expanded immediately
    while let Some(b) = queue.pop_front() {
        let lb = b_level[b].expect("queued nodes are leveled");
        for &a in &stars[b] {
            if a_level[a].is_some() {
                continue;
            }
            a_level[a] = Some(lb + 1);
            for &u in &h.a_adj[a] {
                if u != b && b_level[u].is_none() {
                    b_level[u] = Some(lb + 2);
                    queue.push_back(u);
                }
            }
        }
    }
    Hierarchy { a_level, b_level }
}

/// First redundant A-node, ordered by level, then A-node index, then B-node
/// index: an odd-level node `v` with a neighbour `u` one level deeper such
/// that moving `v` onto `u` keeps `u` below the heavy threshold.
pub fn find_redundant(
    h: &AuxBipartite,
    m: &StarAssignment,
    classes: &LoadClasses,
    hier: &Hierarchy,
) -> Option<(usize, usize)> {
    let p = classes.p;
    let mut best: Option<(usize, usize, usize)> = None;
    for (a, level) in hier.a_level.iter().enumerate() {
        let Some(l) = *level else { continue };
        if best.is_some_and(|(bl, _, _)| bl <= l) {
            continue;
        }
        let w = h.a_nodes[a].weight;
        let hit = h.a_adj[a].iter().copied().find(|&u| {
            u != m.assign[a] && hier.b_level[u] == Some(l + 1) && classes.load[u] + w < 2 * p
        });
        if let Some(u) = hit {
            best = Some((l, a, u));
        }
    }
    best.map(|(_, a, u)| (a, u))
}

/// Moves A-node `v` onto B-node `u`.
pub fn eliminate_redundant(
    h: &AuxBipartite,
    m: &StarAssignment,
    v: usize,
    u: usize,
) -> Result<StarAssignment> {
    if v >= h.a_nodes.len() || !h.has_edge(v, u) {
        return Err(Error::Internal(format!("({v}, {u}) is not an edge of the auxiliary graph")));
    }
    let mut next = m.clone();
    next.assign[v] = u;
    Ok(next)
}
