//! Crown decomposition with a small remainder, driven by a set of bases.

use std::collections::BTreeMap;

use super::bases::{
    associate_subgraph, contract, extension_operation, refill, BaseKind, BaseSet, ContractedGraph,
    Origin, SingleBaseStars,
};
use super::KernelConfig;
use crate::adjust::{connect, p_separator_vertex, SplitPair};
use crate::crown::{crown_run, CrownDecomposition, CrownRun, Star};
use crate::error::{Error, Result};
use crate::graph::{is_connected, maximal_p1_packing, Graph, VertexSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SccStats {
    /// Extension operations (one per extendable group-base handled).
    pub extensions: usize,
    /// Group-bases packed into `G[A]` after extensions.
    pub refilled: usize,
    pub crown_runs: usize,
    /// Group-vertices in the head replaced by a single-base.
    pub replacements: usize,
    /// Redundant-vertex eliminations summed over all crown runs.
    pub eliminations: usize,
}

#[derive(Clone, Debug)]
pub struct SccOutcome {
    pub decomposition: CrownDecomposition,
    pub bases: BaseSet,
    /// `|B*|`: bases, equivalently vertices of the contracted `B`.
    pub base_count: usize,
    /// `|B* \ C|`.
    pub bases_outside_c: usize,
    /// Group-vertices in `B* \ C`.
    pub groups_outside_c: usize,
    /// `|B \ C|` in original vertices.
    pub b_outside_c: usize,
    /// `|V \ (B ∪ I)|`.
    pub rest_outside_b_and_i: usize,
    pub stats: SccStats,
}

fn checked(cfg: &KernelConfig, what: &str, bad: Vec<String>) -> Result<()> {
    if cfg.checks && !bad.is_empty() {
        return Err(Error::Invariant(format!("{what}: {}", bad.join("; "))));
    }
    Ok(())
}

struct State<'a> {
    g: &'a Graph,
    p: usize,
    cfg: &'a KernelConfig,
    bases: BaseSet,
    stars: SingleBaseStars,
    count_floor: usize,
}

impl State<'_> {
    fn check(&mut self, stage: &str) -> Result<()> {
        if !self.cfg.checks {
            return Ok(());
        }
        checked(self.cfg, &format!("bases after {stage}"), self.bases.check(self.g))?;
        let count = self.bases.len();
        let mut q3 = Vec::new();
        if count < self.count_floor {
            q3.push(format!("base count fell from {} to {count}", self.count_floor));
        }
        if let Some(gamma) = self.cfg.gamma_hint {
            if count > gamma {
                q3.push(format!("{count} bases exceed gamma {gamma}"));
            }
        }
        checked(self.cfg, &format!("base count after {stage}"), q3)?;
        self.count_floor = count;
        checked(self.cfg, &format!("single-base stars after {stage}"), self.stars.check(self.g, &self.bases))
    }

    /// First group-base whose associate subgraph has more than `3p` vertices
    /// and no p-size separator vertex.
    fn extendable(&self) -> Result<Option<(usize, Graph, Vec<usize>)>> {
        for (idx, base) in self.bases.bases.iter().enumerate() {
            if base.kind != BaseKind::Group {
                continue;
            }
            let (sub, map) = associate_subgraph(self.g, &self.bases, idx)?;
            if sub.n() > 3 * self.p && p_separator_vertex(&sub, self.p).is_none() {
                return Ok(Some((idx, sub, map)));
            }
        }
        Ok(None)
    }
}

/// Stars of the crown head expressed in original vertex ids. Only
/// single-base centers and group-vertex centers occur.
fn lifted_stars(contracted: &ContractedGraph, run: &CrownRun) -> BTreeMap<usize, Vec<VertexSet>> {
    run.decomposition
        .stars
        .iter()
        .map(|star| {
            let leaves = star
                .leaves
                .iter()
                .map(|leaf| leaf.iter().map(|c| origin_vertex(contracted, c)).collect())
                .collect();
            (star.center, leaves)
        })
        .collect()
}

fn origin_vertex(contracted: &ContractedGraph, c: usize) -> usize {
    match contracted.origin[c] {
        Origin::Vertex(v) => v,
        Origin::Group(_) => panic!("group-vertex {c} outside B*"),
    }
}

/// Runs the whole procedure on a connected graph with more than `p`
/// vertices. The result has no group-vertex in its head, so `C` consists of
/// original vertices.
pub fn scc(g: &Graph, p: usize, cfg: &KernelConfig) -> Result<SccOutcome> {
    let n = g.n();
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    if n <= p || !is_connected(g) {
        return Err(Error::Precondition(format!(
            "expected a connected graph with more than p = {p} vertices"
        )));
    }
    let limit = cfg.gamma_hint.unwrap_or(n);
    let crown_cap = (limit + 1) * (limit + 1);
    let mut stats = SccStats::default();
    let bases = BaseSet::from_packing(&maximal_p1_packing(g, p));
    let mut st = State {
        g,
        p,
        cfg,
        count_floor: bases.len(),
        bases,
        stars: SingleBaseStars::default(),
    };
    st.check("packing")?;

    loop {
        while let Some((idx, sub, map)) = st.extendable()? {
            stats.extensions += 1;
            if stats.extensions > limit {
                return Err(Error::Internal(format!("more than {limit} extension operations")));
            }
            let local = connect(&sub, p)?;
            let split = SplitPair {
                v1: local.v1.iter().map(|v| map[v]).collect(),
                v2: local.v2.iter().map(|v| map[v]).collect(),
            };
            let mut next = extension_operation(g, &st.bases, idx, &split, &st.stars)?;
            stats.refilled += refill(g, &mut next);
            st.bases = next;
            st.stars = SingleBaseStars::default();
            st.check("extension")?;
        }

        let contracted = contract(g, &st.bases);
        let b_star = contracted.b_star(&st.bases);
        let run = crown_run(&contracted.graph, &b_star, 4 * p)?;
        stats.crown_runs += 1;
        stats.eliminations += run.eliminations;
        if stats.crown_runs > crown_cap {
            return Err(Error::Internal(format!("more than {crown_cap} crown runs")));
        }
        let head = &run.decomposition.c_set;

        // refresh the witness of single-bases in the head from the crown
        let lifted = lifted_stars(&contracted, &run);
        for (&c, leaves) in &lifted {
            if let Origin::Vertex(v) = contracted.origin[c] {
                st.stars.stars.insert(v, leaves.clone());
            }
        }
        st.check("crown")?;

        let group_in_head = head.iter().find_map(|c| match contracted.origin[c] {
            Origin::Group(i) => Some((c, i)),
            Origin::Vertex(_) => None,
        });
        if let Some((c, idx)) = group_in_head {
            let (sub, map) = associate_subgraph(g, &st.bases, idx)?;
            let Some(local) = p_separator_vertex(&sub, p) else {
                return Err(Error::Internal(format!(
                    "group-base {idx} in the head has no p-size separator vertex"
                )));
            };
            let v = map[local];
            if !st.bases.bases[idx].vertices.contains(v) {
                return Err(Error::Internal(format!(
                    "separator vertex {v} of group-base {idx} lies outside the base"
                )));
            }
            st.bases.bases[idx] = super::bases::Base::single(v);
            st.stars.stars.insert(v, lifted[&c].clone());
            st.stars = st.stars.regroup(g, &st.bases);
            stats.replacements += 1;
            st.check("replacement")?;
            continue;
        }

        return Ok(finish(g, &st.bases, &contracted, &run, stats));
    }
}

fn finish(
    g: &Graph,
    bases: &BaseSet,
    contracted: &ContractedGraph,
    run: &CrownRun,
    stats: SccStats,
) -> SccOutcome {
    let p = bases.p;
    let cd = &run.decomposition;
    let c_set: VertexSet = cd.c_set.iter().map(|c| origin_vertex(contracted, c)).collect();
    let i_set: VertexSet = cd.i_set.iter().map(|c| origin_vertex(contracted, c)).collect();
    let j_set: VertexSet =
        g.vertices().filter(|&v| !c_set.contains(v) && !i_set.contains(v)).collect();
    let stars = lifted_stars(contracted, run)
        .into_iter()
        .map(|(c, leaves)| Star { center: origin_vertex(contracted, c), leaves })
        .collect();

    let b_all = bases.vertex_set();
    let b_star = contracted.b_star(bases);
    let bases_outside_c = b_star.len() - cd.c_set.len();
    let groups_outside_c = b_star
        .iter()
        .filter(|&c| matches!(contracted.origin[c], Origin::Group(_)) && !cd.c_set.contains(c))
        .count();
    let b_outside_c = b_all.difference(&c_set).len();
    let rest_outside_b_and_i =
        g.vertices().filter(|&v| !b_all.contains(v) && !i_set.contains(v)).count();

    SccOutcome {
        decomposition: CrownDecomposition { p, i_set, c_set, j_set, stars },
        base_count: bases.len(),
        bases: bases.clone(),
        bases_outside_c,
        groups_outside_c,
        b_outside_c,
        rest_outside_b_and_i,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::verify_crown;

    fn cfg() -> KernelConfig {
        KernelConfig { checks: true, gamma_hint: None }
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn big_star_puts_center_in_head() {
        let g = star(9);
        let out = scc(&g, 1, &cfg()).unwrap();
        assert_eq!(out.decomposition.c_set, VertexSet::from([0]));
        assert_eq!(out.decomposition.i_set.len(), 9);
        assert!(verify_crown(&g, &out.decomposition).is_empty());
        assert_eq!(out.stats.replacements, 1);
    }

    #[test]
    fn short_path_stays_in_j() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let out = scc(&g, 1, &cfg()).unwrap();
        assert!(out.decomposition.c_set.is_empty());
        assert_eq!(out.decomposition.j_set.len(), 5);
        assert_eq!(out.base_count, 2);
    }

    #[test]
    fn bound_chain_on_spider() {
        // ten legs of length four around a hub, p = 2
        let legs = 10;
        let len = 4;
        let mut edges = Vec::new();
        for l in 0..legs {
            let first = 1 + l * len;
            edges.push((0, first));
            for i in 1..len {
                edges.push((first + i - 1, first + i));
            }
        }
        let g = Graph::from_edges(1 + legs * len, &edges).unwrap();
        let p = 2;
        let out = scc(&g, p, &cfg()).unwrap();
        assert!(verify_crown(&g, &out.decomposition).is_empty());
        assert!(out.rest_outside_b_and_i <= (8 * p - 1) * out.bases_outside_c);
        assert_eq!(out.b_outside_c, out.bases_outside_c + out.groups_outside_c * p);
    }

    #[test]
    fn refuses_bad_inputs() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(scc(&g, 1, &cfg()), Err(Error::Precondition(_))));
        assert!(matches!(scc(&star(1), 2, &cfg()), Err(Error::Precondition(_))));
        assert!(matches!(scc(&star(3), 0, &cfg()), Err(Error::InvalidInput(_))));
    }
}
