//! Weighted crown decompositions.
//!
//! [`crown`] starts from an arbitrary star assignment over the auxiliary
//! bipartite graph and eliminates redundant A-nodes until none is left.
//! At that fixed point no alternating path leads from a heavy star to a
//! light one, so everything reachable from the heavy stars forms the head
//! `C` of the crown and the components hanging off it form `I`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bipartite::{
    build_aux, build_hierarchy, classify, eliminate_redundant, find_redundant, init_assignment,
    AuxBipartite, LoadClasses, StarAssignment, StarClass,
};
use crate::error::{Error, Result};
use crate::graph::{components_within, Graph, VertexSet};

/// A star of the packing witness: a head vertex and the components of `G[I]` it owns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: usize,
    pub leaves: Vec<VertexSet>,
}

impl Star {
    pub fn weight(&self) -> usize {
        self.leaves.iter().map(VertexSet::len).sum()
    }
}

/// Partition `(I, C, J)` of the vertex set together with a full star packing
/// from `C` into the components of `G[I]`, each star weighing at least `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrownDecomposition {
    pub p: usize,
    pub i_set: VertexSet,
    pub c_set: VertexSet,
    pub j_set: VertexSet,
    pub stars: Vec<Star>,
}

impl CrownDecomposition {
    /// `(∅, ∅, V)`.
    pub fn trivial(g: &Graph, p: usize) -> Self {
        CrownDecomposition {
            p,
            i_set: VertexSet::new(),
            c_set: VertexSet::new(),
            j_set: g.vertices().collect(),
            stars: Vec::new(),
        }
    }
}

/// Everything a crown run produced, for callers that need the final
/// assignment (the kernelizer reuses it as a packing witness).
#[derive(Clone, Debug)]
pub struct CrownRun {
    pub decomposition: CrownDecomposition,
    pub aux: AuxBipartite,
    pub assignment: StarAssignment,
    pub classes: LoadClasses,
    /// B-node indices forming the head.
    pub head: Vec<usize>,
    /// A-node indices forming the crown body.
    pub body: Vec<usize>,
    pub eliminations: usize,
}

pub fn crown(g: &Graph, b: &VertexSet, p: usize) -> Result<CrownDecomposition> {
    crown_run(g, b, p).map(|run| run.decomposition)
}

pub fn crown_run(g: &Graph, b: &VertexSet, p: usize) -> Result<CrownRun> {
    let aux = build_aux(g, b, p)?;
    let mut m = init_assignment(&aux)?;
    let cap = g.n() * g.n();
    let mut eliminations = 0;
    let (classes, hier) = loop {
        let classes = classify(&aux, &m, p);
        let hier = build_hierarchy(&aux, &m, &classes);
        match find_redundant(&aux, &m, &classes, &hier) {
            None => break (classes, hier),
            Some((v, u)) => {
                if eliminations >= cap {
                    return Err(Error::Internal(format!(
                        "redundant-vertex elimination exceeded {cap} rounds"
                    )));
                }
                m = eliminate_redundant(&aux, &m, v, u)?;
                eliminations += 1;
            }
        }
    };

    // strong alternating reachability from the heavy stars is exactly the hierarchy
    let head = hier.b_members();
    let body = hier.a_members();
    if let Some(&b) = head.iter().find(|&&b| classes.class[b] == StarClass::Light) {
        return Err(Error::Internal(format!(
            "light B-vertex {} reachable from a heavy star after elimination",
            aux.b_nodes[b]
        )));
    }

    let stars_by_b = m.stars(aux.b_nodes.len());
    let stars = head
        .iter()
        .map(|&c| Star {
            center: aux.b_nodes[c],
            leaves: stars_by_b[c].iter().map(|&a| aux.a_nodes[a].members.clone()).collect(),
        })
        .collect();
    let i_set: VertexSet = body.iter().flat_map(|&a| aux.a_nodes[a].members.iter()).collect();
    let c_set: VertexSet = head.iter().map(|&c| aux.b_nodes[c]).collect();
    let j_set = g
        .vertices()
        .filter(|&v| !i_set.contains(v) && !c_set.contains(v))
        .collect();

    Ok(CrownRun {
        decomposition: CrownDecomposition { p, i_set, c_set, j_set, stars },
        aux,
        assignment: m,
        classes,
        head,
        body,
        eliminations,
    })
}

/// A failed condition found by [`verify_crown`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrownViolation {
    NotAPartition(String),
    EdgeBetweenIAndJ(usize, usize),
    OversizedComponent { min_vertex: usize, size: usize },
    Star(String),
}

impl fmt::Display for CrownViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrownViolation::NotAPartition(msg) => write!(f, "not a partition: {msg}"),
            CrownViolation::EdgeBetweenIAndJ(u, v) => write!(f, "edge {u}-{v} joins I and J"),
            CrownViolation::OversizedComponent { min_vertex, size } => {
                write!(f, "component of G[I] at {min_vertex} has {size} vertices")
            }
            CrownViolation::Star(msg) => write!(f, "star packing: {msg}"),
        }
    }
}

/// Checks every defining condition of a `p`-weighted crown decomposition from
/// scratch. An empty result means `cd` is valid for `g`.
pub fn verify_crown(g: &Graph, cd: &CrownDecomposition) -> Vec<CrownViolation> {
    let n = g.n();
    let p = cd.p;
    let mut bad = Vec::new();

    // 0 = unseen, 1 = I, 2 = C, 3 = J
    let mut part = vec![0u8; n];
    for (tag, set) in [(1u8, &cd.i_set), (2, &cd.c_set), (3, &cd.j_set)] {
        for v in set.iter() {
            if v >= n {
                bad.push(CrownViolation::NotAPartition(format!("vertex {v} out of range")));
            } else if part[v] != 0 {
                bad.push(CrownViolation::NotAPartition(format!("vertex {v} listed twice")));
            } else {
                part[v] = tag;
            }
        }
    }
    if let Some(v) = part.iter().position(|&t| t == 0) {
        bad.push(CrownViolation::NotAPartition(format!("vertex {v} missing")));
    }
    if !bad.is_empty() {
        return bad;
    }

    for (u, v) in g.edges() {
        if (part[u] == 1 && part[v] == 3) || (part[u] == 3 && part[v] == 1) {
            bad.push(CrownViolation::EdgeBetweenIAndJ(u, v));
        }
    }

    let in_i: Vec<bool> = part.iter().map(|&t| t == 1).collect();
    let comps = components_within(g, &in_i);
    let mut comp_of = vec![usize::MAX; n];
    for (idx, comp) in comps.iter().enumerate() {
        if comp.len() > p {
            bad.push(CrownViolation::OversizedComponent { min_vertex: comp[0], size: comp.len() });
        }
        for &v in comp {
            comp_of[v] = idx;
        }
    }

    let mut centered = vec![false; n];
    let mut used = vec![false; comps.len()];
    for star in &cd.stars {
        let c = star.center;
        if c >= n || part[c] != 2 {
            bad.push(CrownViolation::Star(format!("center {c} is not in C")));
            continue;
        }
        if std::mem::replace(&mut centered[c], true) {
            bad.push(CrownViolation::Star(format!("center {c} has two stars")));
        }
        for leaf in &star.leaves {
            let Some(first) = leaf.first() else {
                bad.push(CrownViolation::Star(format!("empty leaf at center {c}")));
                continue;
            };
            if first >= n || comp_of[first] == usize::MAX {
                bad.push(CrownViolation::Star(format!("leaf at {first} is not inside I")));
                continue;
            }
            let idx = comp_of[first];
            if comps[idx].as_slice() != leaf.as_slice() {
                bad.push(CrownViolation::Star(format!(
                    "leaf at {first} is not a whole component of G[I]"
                )));
                continue;
            }
            if std::mem::replace(&mut used[idx], true) {
                bad.push(CrownViolation::Star(format!("leaf at {first} used by two stars")));
            }
            if !leaf.iter().any(|v| g.has_edge(v, c)) {
                bad.push(CrownViolation::Star(format!("leaf at {first} not adjacent to center {c}")));
            }
        }
        if star.weight() < p {
            bad.push(CrownViolation::Star(format!(
                "star at {c} weighs {} < p = {p}",
                star.weight()
            )));
        }
    }
    for c in cd.c_set.iter() {
        if !centered[c] {
            bad.push(CrownViolation::Star(format!("C-vertex {c} has no star")));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn star_center_becomes_head() {
        let g = star(3);
        let cd = crown(&g, &VertexSet::from([0]), 1).unwrap();
        assert_eq!(cd.c_set, VertexSet::from([0]));
        assert_eq!(cd.i_set, VertexSet::from([1, 2, 3]));
        assert!(cd.j_set.is_empty());
        assert!(verify_crown(&g, &cd).is_empty());
    }

    #[test]
    fn single_edge_gives_empty_crown() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cd = crown(&g, &VertexSet::from([1]), 1).unwrap();
        assert!(cd.c_set.is_empty() && cd.i_set.is_empty());
        assert_eq!(cd.j_set, VertexSet::from([0, 1]));
    }

    #[test]
    fn whole_vertex_set_as_b() {
        let g = star(3);
        let cd = crown(&g, &VertexSet::from([0, 1, 2, 3]), 2).unwrap();
        assert_eq!(cd, CrownDecomposition::trivial(&g, 2));
    }

    #[test]
    fn tampered_decomposition_rejected() {
        let g = star(3);
        let mut cd = crown(&g, &VertexSet::from([0]), 1).unwrap();
        // move the center from C to J: its leaves now touch J
        cd.c_set = VertexSet::new();
        cd.j_set = VertexSet::from([0]);
        cd.stars.clear();
        let bad = verify_crown(&g, &cd);
        assert!(bad.iter().any(|v| matches!(v, CrownViolation::EdgeBetweenIAndJ(0, 1))));
    }

    #[test]
    fn trivial_decomposition_is_valid() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert!(verify_crown(&g, &CrownDecomposition::trivial(&g, 1)).is_empty());
    }

    #[test]
    fn verify_catches_light_star_and_partition_errors() {
        let g = star(3);
        let mut cd = crown(&g, &VertexSet::from([0]), 1).unwrap();
        cd.p = 4;
        assert!(verify_crown(&g, &cd).iter().any(|v| matches!(v, CrownViolation::Star(_))));

        let mut cd = crown(&g, &VertexSet::from([0]), 1).unwrap();
        cd.j_set.insert(1);
        assert!(matches!(verify_crown(&g, &cd)[0], CrownViolation::NotAPartition(_)));
    }

    #[test]
    fn redundant_vertex_is_moved_before_extraction() {
        // vertex 0 holds three unit leaves, vertex 1 shares leaf 2 and owns nothing
        let g = Graph::from_edges(5, &[(2, 0), (2, 1), (3, 0), (4, 0)]).unwrap();
        let run = crown_run(&g, &VertexSet::from([0, 1]), 1).unwrap();
        assert_eq!(run.eliminations, 1);
        // leaf 2 moved onto vertex 1, which is then no longer reachable
        assert_eq!(run.decomposition.c_set, VertexSet::from([0]));
        assert_eq!(run.decomposition.i_set, VertexSet::from([3, 4]));
        assert_eq!(run.decomposition.j_set, VertexSet::from([1, 2]));
        assert!(verify_crown(&g, &run.decomposition).is_empty());
    }

    #[test]
    fn rejects_components_not_touching_b() {
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert!(matches!(crown(&g, &VertexSet::from([0]), 1), Err(Error::Precondition(_))));
    }
}
