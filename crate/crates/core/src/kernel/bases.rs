//! Bases of the separator side `B`: single vertices and connected groups of
//! `p + 1` vertices, plus the operations that reshape them.

use std::collections::BTreeMap;

use crate::adjust::SplitPair;
use crate::error::{Error, Result};
use crate::graph::{
    bfs_prefix, components_within, connected_truncate, extend_packing, induced_subgraph,
    is_connected_within, Graph, SubgraphPacking, VertexSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Single,
    Group,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    pub kind: BaseKind,
    pub vertices: VertexSet,
}

impl Base {
    pub fn single(v: usize) -> Self {
        Base { kind: BaseKind::Single, vertices: VertexSet::from([v]) }
    }

    pub fn group(vertices: VertexSet) -> Self {
        Base { kind: BaseKind::Group, vertices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSet {
    pub p: usize,
    pub bases: Vec<Base>,
}

impl BaseSet {
    /// Every part of the packing becomes a group-base.
    pub fn from_packing(packing: &SubgraphPacking) -> Self {
        BaseSet { p: packing.p, bases: packing.parts.iter().cloned().map(Base::group).collect() }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Union of all base vertices.
    pub fn vertex_set(&self) -> VertexSet {
        self.bases.iter().flat_map(|b| b.vertices.iter()).collect()
    }

    pub fn in_b(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for b in &self.bases {
            for v in b.vertices.iter() {
                mask[v] = true;
            }
        }
        mask
    }

    /// Vertices of the single-bases, ascending.
    pub fn single_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .bases
            .iter()
            .filter(|b| b.kind == BaseKind::Single)
            .map(|b| b.vertices.first().expect("single-base holds a vertex"))
            .collect();
        out.sort_unstable();
        out
    }

    /// Components of `G[V \ B]`.
    pub fn a_components(&self, g: &Graph) -> Vec<Vec<usize>> {
        let alive: Vec<bool> = self.in_b(g.n()).into_iter().map(|x| !x).collect();
        components_within(g, &alive)
    }

    /// Structural checks: bases are disjoint, singles hold one vertex,
    /// groups hold `p + 1` connected vertices, and `B` is a p-size separator.
    pub fn check(&self, g: &Graph) -> Vec<String> {
        let p = self.p;
        let mut bad = Vec::new();
        let mut owner = vec![usize::MAX; g.n()];
        for (i, base) in self.bases.iter().enumerate() {
            let want = match base.kind {
                BaseKind::Single => 1,
                BaseKind::Group => p + 1,
            };
            if base.vertices.len() != want {
                bad.push(format!("base {i} has {} vertices, expected {want}", base.vertices.len()));
            }
            if base.kind == BaseKind::Group && !is_connected_within(g, &g.mask(&base.vertices)) {
                bad.push(format!("group-base {i} is not connected"));
            }
            for v in base.vertices.iter() {
                if owner[v] != usize::MAX {
                    bad.push(format!("vertex {v} lies in bases {} and {i}", owner[v]));
                }
                owner[v] = i;
            }
        }
        for comp in self.a_components(g) {
            if comp.len() > p {
                bad.push(format!("component of G[A] at {} has {} > p vertices", comp[0], comp.len()));
            }
        }
        bad
    }
}

/// Star packing from the single-base vertices into components of `G[A]`,
/// each star of weight at least `4p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SingleBaseStars {
    pub stars: BTreeMap<usize, Vec<VertexSet>>,
}

impl SingleBaseStars {
    pub fn weight(&self, center: usize) -> usize {
        self.stars.get(&center).map_or(0, |leaves| leaves.iter().map(VertexSet::len).sum())
    }

    /// Checks the witness against the current bases: one star per
    /// single-base, leaves are whole components of `G[A]` adjacent to their
    /// center and used once, and every star weighs at least `4p`.
    pub fn check(&self, g: &Graph, bases: &BaseSet) -> Vec<String> {
        let p = bases.p;
        let mut bad = Vec::new();
        let comps = bases.a_components(g);
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let singles = bases.single_vertices();
        for &v in &singles {
            if !self.stars.contains_key(&v) {
                bad.push(format!("single-base {v} has no star"));
            }
        }
        let mut used = vec![false; comps.len()];
        for (&center, leaves) in &self.stars {
            if singles.binary_search(&center).is_err() {
                bad.push(format!("star center {center} is not a single-base"));
            }
            for leaf in leaves {
                let first = leaf.first().unwrap_or(usize::MAX);
                let idx = comp_of.get(first).copied().unwrap_or(usize::MAX);
                if idx == usize::MAX || comps[idx].as_slice() != leaf.as_slice() {
                    bad.push(format!("leaf at {first} of star {center} is not a component of G[A]"));
                    continue;
                }
                if std::mem::replace(&mut used[idx], true) {
                    bad.push(format!("leaf at {first} shared between stars"));
                }
                if !leaf.iter().any(|u| g.has_edge(u, center)) {
                    bad.push(format!("leaf at {first} not adjacent to {center}"));
                }
            }
            let w = self.weight(center);
            if w < 4 * p {
                bad.push(format!("star at {center} weighs {w} < 4p = {}", 4 * p));
            }
        }
        bad
    }

    /// Re-expresses the stars over the components of the current `G[A]`
    /// after `A` grew. Each new component goes to a star that owned part of
    /// it; a component claimed by several stars goes to the neediest one.
    pub(crate) fn regroup(&self, g: &Graph, bases: &BaseSet) -> SingleBaseStars {
        let need = 4 * bases.p;
        let comps = bases.a_components(g);
        let mut comp_of = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut claims: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
        for (&center, leaves) in &self.stars {
            for leaf in leaves {
                if let Some(idx) = leaf.iter().map(|v| comp_of[v]).find(|&i| i != usize::MAX) {
                    if claims[idx].last() != Some(&center) {
                        claims[idx].push(center);
                    }
                }
            }
        }
        let mut out: BTreeMap<usize, Vec<VertexSet>> =
            self.stars.keys().map(|&c| (c, Vec::new())).collect();
        let mut load: BTreeMap<usize, usize> = self.stars.keys().map(|&c| (c, 0)).collect();
        let mut contested = Vec::new();
        for (idx, owners) in claims.iter().enumerate() {
            match owners.as_slice() {
                [] => {}
                [only] => {
                    out.get_mut(only).unwrap().push(comps[idx].iter().copied().collect());
                    *load.get_mut(only).unwrap() += comps[idx].len();
                }
                _ => contested.push(idx),
            }
        }
        for idx in contested {
            let owner = claims[idx]
                .iter()
                .copied()
                .max_by_key(|c| (need.saturating_sub(load[c]), std::cmp::Reverse(*c)))
                .expect("contested component has owners");
            out.get_mut(&owner).unwrap().push(comps[idx].iter().copied().collect());
            *load.get_mut(&owner).unwrap() += comps[idx].len();
        }
        for leaves in out.values_mut() {
            leaves.sort();
        }
        SingleBaseStars { stars: out }
    }
}

/// Vertices of `S` plus every component of `G[A]` adjacent to `S`.
pub(crate) fn associate_vertices(g: &Graph, bases: &BaseSet, idx: usize) -> VertexSet {
    let s = &bases.bases[idx].vertices;
    let in_s = g.mask(s);
    let mut out: Vec<usize> = s.iter().collect();
    for comp in bases.a_components(g) {
        if comp.iter().any(|&v| g.neighbors(v).iter().any(|&w| in_s[w])) {
            out.extend(comp);
        }
    }
    out.into_iter().collect()
}

/// The associate subgraph `G(S)` of base `idx`, with its id map back to `g`.
pub fn associate_subgraph(g: &Graph, bases: &BaseSet, idx: usize) -> Result<(Graph, Vec<usize>)> {
    if idx >= bases.len() {
        return Err(Error::InvalidInput(format!("no base with index {idx}")));
    }
    induced_subgraph(g, &associate_vertices(g, bases, idx))
}

/// Where a vertex of the contracted graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Vertex(usize),
    Group(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedGraph {
    pub graph: Graph,
    /// Contracted id of each base's group-vertex (`None` for single-bases).
    pub group_vertex_of: Vec<Option<usize>>,
    pub origin: Vec<Origin>,
    /// Contracted id of every original vertex.
    pub image: Vec<usize>,
}

impl ContractedGraph {
    /// The contracted image of `B`: group-vertices and single-base vertices.
    pub fn b_star(&self, bases: &BaseSet) -> VertexSet {
        bases
            .bases
            .iter()
            .enumerate()
            .map(|(i, b)| match b.kind {
                BaseKind::Group => self.group_vertex_of[i].expect("group-vertex exists"),
                BaseKind::Single => self.image[b.vertices.first().expect("non-empty")],
            })
            .collect()
    }

    /// Original vertices behind contracted vertex `c`.
    pub fn expand(&self, c: usize, bases: &BaseSet) -> Vec<usize> {
        match self.origin[c] {
            Origin::Vertex(v) => vec![v],
            Origin::Group(i) => bases.bases[i].vertices.iter().collect(),
        }
    }
}

/// Merges every group-base into one vertex. Other vertices keep their
/// relative order; group-vertices follow in base order.
pub fn contract(g: &Graph, bases: &BaseSet) -> ContractedGraph {
    let n = g.n();
    let mut group_of = vec![None; n];
    for (i, b) in bases.bases.iter().enumerate() {
        if b.kind == BaseKind::Group {
            for v in b.vertices.iter() {
                group_of[v] = Some(i);
            }
        }
    }
    let mut image = vec![usize::MAX; n];
    let mut origin = Vec::new();
    for v in 0..n {
        if group_of[v].is_none() {
            image[v] = origin.len();
            origin.push(Origin::Vertex(v));
        }
    }
    let mut group_vertex_of = vec![None; bases.len()];
    for (i, b) in bases.bases.iter().enumerate() {
        if b.kind == BaseKind::Group {
            let id = origin.len();
            group_vertex_of[i] = Some(id);
            origin.push(Origin::Group(i));
            for v in b.vertices.iter() {
                image[v] = id;
            }
        }
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (image[u], image[v]))
        .filter(|(a, b)| a != b)
        .collect();
    let graph = Graph::from_edges(origin.len(), &edges).expect("contracted ids are in range");
    ContractedGraph { graph, group_vertex_of, origin, image }
}

/// Replaces group-base `idx` by two group-bases cut out of `split` (a split
/// of its associate subgraph, in original ids) and grows every single-base
/// into a group-base using the vertices of its own star in `stars`.
pub fn extension_operation(
    g: &Graph,
    bases: &BaseSet,
    idx: usize,
    split: &SplitPair,
    stars: &SingleBaseStars,
) -> Result<BaseSet> {
    let p = bases.p;
    let Some(target) = bases.bases.get(idx) else {
        return Err(Error::InvalidInput(format!("no base with index {idx}")));
    };
    if target.kind != BaseKind::Group {
        return Err(Error::InvalidInput(format!("base {idx} is not a group-base")));
    }
    let in_s = g.mask(&target.vertices);

    let mut halves = Vec::with_capacity(2);
    for part in [&split.v1, &split.v2] {
        let mut keep = g.mask(part);
        let mut size = part.len();
        // drop whole pieces outside S while the rest stays connected
        while size > 2 * p {
            let outside: Vec<bool> = keep.iter().zip(&in_s).map(|(&k, &s)| k && !s).collect();
            let removable = components_within(g, &outside).into_iter().find(|piece| {
                let mut rest = keep.clone();
                for &v in piece {
                    rest[v] = false;
                }
                is_connected_within(g, &rest)
            });
            let Some(piece) = removable else { break };
            for &v in &piece {
                keep[v] = false;
            }
            size -= piece.len();
        }
        halves.push(connected_truncate(g, &VertexSet::from_mask(&keep), p + 1)?);
    }
    let mut taken = vec![false; g.n()];
    for h in &halves {
        for v in h.iter() {
            taken[v] = true;
        }
    }

    let mut out = bases.bases.clone();
    out[idx] = Base::group(halves[0].clone());
    out.push(Base::group(halves[1].clone()));
    for base in out.iter_mut() {
        if base.kind != BaseKind::Single {
            continue;
        }
        let v = base.vertices.first().expect("single-base holds a vertex");
        let Some(leaves) = stars.stars.get(&v) else {
            return Err(Error::Internal(format!("single-base {v} has no star to grow from")));
        };
        let mut avail = vec![false; g.n()];
        avail[v] = true;
        for u in leaves.iter().flat_map(VertexSet::iter) {
            if !taken[u] {
                avail[u] = true;
            }
        }
        let grown = bfs_prefix(g, &avail, v, p + 1);
        if grown.len() < p + 1 {
            return Err(Error::Internal(format!(
                "single-base {v} reaches only {} free vertices of its star",
                grown.len()
            )));
        }
        *base = Base::group(grown.into_iter().collect());
    }
    Ok(BaseSet { p, bases: out })
}

/// Packs further group-bases into `G[A]` until every component there has at
/// most `p` vertices. Returns how many were added.
pub(crate) fn refill(g: &Graph, bases: &mut BaseSet) -> usize {
    let residual: Vec<bool> = bases.in_b(g.n()).into_iter().map(|x| !x).collect();
    let extra = extend_packing(g, bases.p, residual, Vec::new());
    let added = extra.parts.len();
    bases.bases.extend(extra.parts.into_iter().map(Base::group));
    added
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn associate_subgraph_examples() {
        let g = path(5);
        let bases = BaseSet { p: 2, bases: vec![Base::single(2)] };
        let (h, map) = associate_subgraph(&g, &bases, 0).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);

        // nothing attached
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let bases = BaseSet { p: 1, bases: vec![Base::group(VertexSet::from([0, 1]))] };
        let (h, map) = associate_subgraph(&g, &bases, 0).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(map, vec![0, 1]);

        // component {2} touches both bases
        let g = Graph::from_edges(3, &[(0, 2), (1, 2)]).unwrap();
        let bases = BaseSet { p: 1, bases: vec![Base::single(0), Base::single(1)] };
        assert_eq!(associate_vertices(&g, &bases, 0), VertexSet::from([0, 2]));
        assert_eq!(associate_vertices(&g, &bases, 1), VertexSet::from([1, 2]));
    }

    #[test]
    fn contract_examples() {
        let g = path(4);
        let bases = BaseSet { p: 1, bases: vec![Base::single(1)] };
        let c = contract(&g, &bases);
        assert_eq!(c.graph, g);

        // triangle as one group-base, pendant 3 on vertex 0
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let bases = BaseSet { p: 2, bases: vec![Base::group(VertexSet::from([0, 1, 2]))] };
        let c = contract(&g, &bases);
        assert_eq!((c.graph.n(), c.graph.m()), (2, 1));
        assert_eq!(c.origin, vec![Origin::Vertex(3), Origin::Group(0)]);
        assert_eq!(c.b_star(&bases), VertexSet::from([1]));

        // two groups joined by three edges
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (0, 2), (0, 3), (1, 3)]).unwrap();
        let bases = BaseSet {
            p: 1,
            bases: vec![Base::group(VertexSet::from([0, 1])), Base::group(VertexSet::from([2, 3]))],
        };
        let c = contract(&g, &bases);
        assert_eq!((c.graph.n(), c.graph.m()), (2, 1));
    }

    #[test]
    fn base_checks() {
        let g = path(5);
        let ok = BaseSet { p: 1, bases: vec![Base::group(VertexSet::from([0, 1])), Base::single(3)] };
        assert!(ok.check(&g).is_empty());
        let big_a = BaseSet { p: 1, bases: vec![Base::single(0)] };
        assert!(!big_a.check(&g).is_empty());
        let overlap =
            BaseSet { p: 1, bases: vec![Base::group(VertexSet::from([0, 1])), Base::single(1)] };
        assert!(!overlap.check(&g).is_empty());
    }

    #[test]
    fn extension_with_minimal_split() {
        // cycle of 8, p = 1, one group-base {0, 1}; G(S) is the whole cycle
        let edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        let mut bases = BaseSet { p: 1, bases: vec![Base::group(VertexSet::from([0, 1]))] };
        let split = SplitPair { v1: VertexSet::from([0, 7]), v2: VertexSet::from([1, 2]) };
        let out = extension_operation(&g, &bases, 0, &split, &SingleBaseStars::default()).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out.bases[0].vertices, VertexSet::from([0, 7]));
        assert_eq!(out.bases[1].vertices, VertexSet::from([1, 2]));
        assert!(extension_operation(&g, &out, 5, &split, &SingleBaseStars::default()).is_err());

        bases.bases[0] = Base::single(0);
        assert!(extension_operation(&g, &bases, 0, &split, &SingleBaseStars::default()).is_err());
    }

    #[test]
    fn single_base_grows_inside_its_star() {
        // p = 1. Group-base {0, 1} on a 4-cycle 0-1-2-3; single-base 10 with
        // four pendant leaves 11..14 (star weight 4 = 4p).
        let g = Graph::from_edges(
            15,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (10, 11), (10, 12), (10, 13), (10, 14)],
        )
        .unwrap();
        let bases = BaseSet {
            p: 1,
            bases: vec![Base::group(VertexSet::from([0, 1])), Base::single(10)],
        };
        let mut stars = SingleBaseStars::default();
        stars.stars.insert(10, (11..15).map(|v| VertexSet::from([v])).collect());
        assert!(stars.check(&g, &bases).is_empty());
        let split = SplitPair { v1: VertexSet::from([0, 3]), v2: VertexSet::from([1, 2]) };
        let out = extension_operation(&g, &bases, 0, &split, &stars).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out.bases[1], Base::group(VertexSet::from([10, 11])));
        assert!(out.bases.iter().all(|b| b.kind == BaseKind::Group));
    }

    #[test]
    fn regroup_merges_leaves() {
        // single-base 0 with leaves {2} and {4}; vertex 3 joins A and glues them
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (2, 3), (3, 4), (1, 3)]).unwrap();
        let before = BaseSet { p: 1, bases: vec![Base::single(0), Base::group(VertexSet::from([1, 3]))] };
        let mut stars = SingleBaseStars::default();
        stars.stars.insert(0, vec![VertexSet::from([2]), VertexSet::from([4])]);
        assert!(stars.check(&g, &before).iter().any(|m| m.contains("weighs")));
        let after = BaseSet { p: 3, bases: vec![Base::single(0), Base::single(1)] };
        let mut both = stars.clone();
        both.stars.insert(1, vec![]);
        let regrouped = both.regroup(&g, &after);
        assert_eq!(regrouped.stars[&0], vec![VertexSet::from([2, 3, 4])]);
        assert!(regrouped.stars[&1].is_empty());
    }
}
