//! Kernelization for p-size separator.
//!
//! The linear mode runs [`scc`] on every component with more than `p`
//! vertices and keeps `G[J]`. The quadratic mode repeatedly computes a
//! maximal `(p+1)`-packing and peels off crowns until `G[A]` is small
//! relative to the packing.

mod bases;
mod scc;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use bases::{
    associate_subgraph, contract, extension_operation, Base, BaseKind, BaseSet, ContractedGraph,
    Origin, SingleBaseStars,
};
pub use scc::{scc, SccOutcome, SccStats};

use crate::crown::{crown_run, CrownDecomposition, Star};
use crate::error::{Error, Result};
use crate::graph::{
    components_within, connected_components, induced_subgraph, maximal_p1_packing, Graph, VertexSet,
};
use crate::oracle::{is_p_size_separator, min_p_separator};

/// Environment variable that turns on the invariant checks.
pub const DEBUG_ASSERT_ENV: &str = "PSEP_DEBUG_ASSERT";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KernelConfig {
    /// Check base, witness and counting invariants after every step and
    /// fail with [`Error::Invariant`] on the first violation.
    pub checks: bool,
    /// Known upper bound on `γ_p(G)`; tightens iteration caps and the base
    /// count check. Defaults to `n`.
    pub gamma_hint: Option<usize>,
}

impl KernelConfig {
    pub fn from_env() -> Self {
        let checks = std::env::var(DEBUG_ASSERT_ENV).is_ok_and(|v| v == "1");
        KernelConfig { checks, gamma_hint: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Linear,
    Quadratic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Linear => "linear",
            Mode::Quadratic => "quadratic",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Mode::Linear),
            "quadratic" => Ok(Mode::Quadratic),
            _ => Err(Error::InvalidInput(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Reduced,
    NoInstance,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reduced => "reduced",
            Verdict::NoInstance => "no_instance",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KernelStats {
    /// Components with at most `p` vertices, dropped outright.
    pub small_components: usize,
    pub scc_runs: usize,
    pub extensions: usize,
    pub refilled: usize,
    pub crown_runs: usize,
    pub replacements: usize,
    pub eliminations: usize,
    /// Packing rounds of the quadratic mode.
    pub rounds: usize,
}

impl KernelStats {
    fn absorb(&mut self, s: &SccStats) {
        self.scc_runs += 1;
        self.extensions += s.extensions;
        self.refilled += s.refilled;
        self.crown_runs += s.crown_runs;
        self.replacements += s.replacements;
        self.eliminations += s.eliminations;
    }
}

#[derive(Clone, Debug)]
pub struct KernelOutcome {
    pub mode: Mode,
    pub p: usize,
    pub k: Option<usize>,
    pub verdict: Verdict,
    /// `G[J]` with vertices renumbered in ascending original order.
    pub kernel: Graph,
    /// Original id of each kernel vertex.
    pub kernel_map: Vec<usize>,
    /// Vertices that go into the separator (`C`).
    pub forced: VertexSet,
    /// `|C|`, charged against the budget.
    pub budget_used: usize,
    /// Kernel size limit implied by `k`, when `k` is given.
    pub bound: Option<usize>,
    /// The combined crown decomposition `(I, C, J)` of the input.
    pub decomposition: CrownDecomposition,
    pub stats: KernelStats,
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    Ok(())
}

fn outcome(
    g: &Graph,
    mode: Mode,
    p: usize,
    k: Option<usize>,
    decomposition: CrownDecomposition,
    stats: KernelStats,
    early_no: bool,
) -> Result<KernelOutcome> {
    let (kernel, kernel_map) = induced_subgraph(g, &decomposition.j_set)?;
    let forced = decomposition.c_set.clone();
    let budget_used = forced.len();
    let bound = k.map(|k| {
        let rest = k.saturating_sub(budget_used);
        match mode {
            Mode::Linear => 9 * p * rest,
            Mode::Quadratic => 2 * p * (p + 1) * rest,
        }
    });
    let over = match (k, bound) {
        (Some(k), Some(b)) => budget_used > k || kernel.n() > b,
        _ => false,
    };
    let verdict = if early_no || over { Verdict::NoInstance } else { Verdict::Reduced };
    Ok(KernelOutcome {
        mode,
        p,
        k,
        verdict,
        kernel,
        kernel_map,
        forced,
        budget_used,
        bound,
        decomposition,
        stats,
    })
}

/// Parts of a decomposition gathered from independent pieces of the input.
#[derive(Default)]
struct Assembly {
    i: Vec<usize>,
    c: Vec<usize>,
    stars: Vec<Star>,
}

impl Assembly {
    fn add(&mut self, cd: &CrownDecomposition, map: &[usize]) {
        self.i.extend(cd.i_set.iter().map(|v| map[v]));
        self.c.extend(cd.c_set.iter().map(|v| map[v]));
        self.stars.extend(cd.stars.iter().map(|s| Star {
            center: map[s.center],
            leaves: s.leaves.iter().map(|l| l.iter().map(|v| map[v]).collect()).collect(),
        }));
    }

    fn finish(mut self, g: &Graph, p: usize) -> CrownDecomposition {
        let i_set: VertexSet = self.i.drain(..).collect();
        let c_set: VertexSet = self.c.drain(..).collect();
        let j_set = g.vertices().filter(|&v| !i_set.contains(v) && !c_set.contains(v)).collect();
        self.stars.sort_by_key(|s| s.center);
        CrownDecomposition { p, i_set, c_set, j_set, stars: self.stars }
    }
}

/// Moves every component of `G[alive]` with at most `p` vertices into `dropped`.
fn strip_small(g: &Graph, alive: &mut [bool], p: usize, dropped: &mut Vec<usize>) -> usize {
    let mut count = 0;
    for comp in components_within(g, alive) {
        if comp.len() <= p {
            for &v in &comp {
                alive[v] = false;
            }
            dropped.extend(comp);
            count += 1;
        }
    }
    count
}

/// Linear kernel: at most `9p·(k - |C|)` vertices on yes-instances.
pub fn kernelize(g: &Graph, p: usize, k: Option<usize>, cfg: &KernelConfig) -> Result<KernelOutcome> {
    check_p(p)?;
    let mut stats = KernelStats::default();
    let mut asm = Assembly::default();
    for comp in connected_components(g) {
        if comp.len() <= p {
            stats.small_components += 1;
            asm.i.extend(comp.iter());
            continue;
        }
        let (sub, map) = induced_subgraph(g, &comp)?;
        let out = scc(&sub, p, cfg)?;
        stats.absorb(&out.stats);
        asm.add(&out.decomposition, &map);
    }
    // pieces of G[J] that are already small need no deletions
    let mut alive = vec![true; g.n()];
    for &v in asm.i.iter().chain(&asm.c) {
        alive[v] = false;
    }
    stats.small_components += strip_small(g, &mut alive, p, &mut asm.i);
    let cd = asm.finish(g, p);
    outcome(g, Mode::Linear, p, k, cd, stats, false)
}

/// Quadratic kernel: at most `2p(p+1)·(k - |C|)` vertices on yes-instances.
pub fn kernelize_quadratic(
    g: &Graph,
    p: usize,
    k: Option<usize>,
    cfg: &KernelConfig,
) -> Result<KernelOutcome> {
    check_p(p)?;
    let mut stats = KernelStats::default();
    let mut asm = Assembly::default();
    let mut alive = vec![true; g.n()];
    let mut early_no = false;
    loop {
        stats.small_components += strip_small(g, &mut alive, p, &mut asm.i);
        let (h, map) = induced_subgraph(g, &VertexSet::from_mask(&alive))?;
        let packing = maximal_p1_packing(&h, p);
        if let Some(k) = k {
            if asm.c.len() + packing.parts.len() > k {
                early_no = true;
                break;
            }
        }
        let b = packing.vertices();
        if h.n() - b.len() <= (2 * p - 1) * b.len() {
            break;
        }
        stats.rounds += 1;
        let run = crown_run(&h, &b, p)?;
        stats.crown_runs += 1;
        stats.eliminations += run.eliminations;
        let cd = &run.decomposition;
        if cd.c_set.is_empty() {
            return Err(Error::Internal(format!(
                "no crown although |A| = {} > (2p-1)|B| = {}",
                h.n() - b.len(),
                (2 * p - 1) * b.len()
            )));
        }
        if cfg.checks {
            let bad = crate::crown::verify_crown(&h, cd);
            if !bad.is_empty() {
                let msgs: Vec<String> = bad.iter().map(ToString::to_string).collect();
                return Err(Error::Invariant(format!("round crown: {}", msgs.join("; "))));
            }
        }
        for v in cd.i_set.iter().chain(cd.c_set.iter()) {
            alive[map[v]] = false;
        }
        asm.add(cd, &map);
    }
    let cd = asm.finish(g, p);
    outcome(g, Mode::Quadratic, p, k, cd, stats, early_no)
}

/// Dispatches on `mode`.
pub fn kernelize_with(
    g: &Graph,
    p: usize,
    k: Option<usize>,
    mode: Mode,
    cfg: &KernelConfig,
) -> Result<KernelOutcome> {
    match mode {
        Mode::Linear => kernelize(g, p, k, cfg),
        Mode::Quadratic => kernelize_quadratic(g, p, k, cfg),
    }
}

#[derive(Clone, Debug)]
pub enum Solved {
    /// A minimum separator of the input: the forced vertices plus an
    /// optimal separator of the kernel.
    Exact { outcome: KernelOutcome, separator: VertexSet },
    /// The kernel has more than the allowed number of vertices.
    KernelTooLarge { outcome: KernelOutcome },
}

/// Kernelizes, then solves the kernel exactly if it has at most `limit`
/// vertices.
pub fn solve(
    g: &Graph,
    p: usize,
    k: Option<usize>,
    mode: Mode,
    cfg: &KernelConfig,
    limit: usize,
) -> Result<Solved> {
    let outcome = kernelize_with(g, p, k, mode, cfg)?;
    if outcome.kernel.n() > limit {
        return Ok(Solved::KernelTooLarge { outcome });
    }
    let inner = min_p_separator(&outcome.kernel, p, None)?
        .ok_or_else(|| Error::Internal("exact solver found no separator of the kernel".into()))?;
    let separator: VertexSet = outcome
        .forced
        .iter()
        .chain(inner.separator.iter().map(|v| outcome.kernel_map[v]))
        .collect();
    if !is_p_size_separator(g, &separator, p) {
        return Err(Error::Internal("assembled separator leaves a component larger than p".into()));
    }
    Ok(Solved::Exact { outcome, separator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crown::verify_crown;

    fn cfg() -> KernelConfig {
        KernelConfig { checks: true, gamma_hint: None }
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn linear_examples() {
        let out = kernelize(&path(5), 1, Some(2), &cfg()).unwrap();
        assert_eq!(out.kernel, path(5));
        assert!(out.forced.is_empty());
        assert_eq!(out.verdict, Verdict::Reduced);

        let out = kernelize(&star(9), 1, Some(1), &cfg()).unwrap();
        assert_eq!(out.forced, VertexSet::from([0]));
        assert_eq!(out.kernel.n(), 0);
        assert_eq!(out.verdict, Verdict::Reduced);
        assert!(verify_crown(&star(9), &out.decomposition).is_empty());

        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let out = kernelize(&c4, 1, Some(0), &cfg()).unwrap();
        assert_eq!(out.verdict, Verdict::NoInstance);
        assert_eq!(out.bound, Some(0));
    }

    #[test]
    fn small_components_vanish() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        let out = kernelize(&g, 2, Some(0), &cfg()).unwrap();
        assert_eq!(out.kernel.n(), 0);
        assert_eq!(out.stats.small_components, 3);
        assert_eq!(out.verdict, Verdict::Reduced);
        assert!(matches!(kernelize(&g, 0, None, &cfg()), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn quadratic_examples() {
        // packing of K_{1,9} is the edge {0, 1}; 8 > 1 leaves trigger a crown
        let out = kernelize_quadratic(&star(9), 1, Some(1), &cfg()).unwrap();
        assert_eq!(out.forced, VertexSet::from([0]));
        assert_eq!(out.kernel.n(), 0);
        assert_eq!(out.verdict, Verdict::Reduced);
        assert_eq!(out.stats.rounds, 1);

        // P5 packs {0,1} and {2,3}; A = {4} is small, nothing removed
        let out = kernelize_quadratic(&path(5), 1, Some(2), &cfg()).unwrap();
        assert_eq!(out.kernel, path(5));
        assert_eq!(out.stats.rounds, 0);

        let out = kernelize_quadratic(&path(5), 1, Some(1), &cfg()).unwrap();
        assert_eq!(out.verdict, Verdict::NoInstance);
    }

    #[test]
    fn solve_examples() {
        let two_c4 = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)],
        )
        .unwrap();
        for (g, want) in [(star(9), 1), (path(3), 1), (two_c4, 4)] {
            match solve(&g, 1, None, Mode::Linear, &cfg(), 60).unwrap() {
                Solved::Exact { separator, .. } => assert_eq!(separator.len(), want),
                other => panic!("{other:?}"),
            }
        }
        let big = crate::gen::cycle(70).unwrap();
        assert!(matches!(
            solve(&big, 1, None, Mode::Linear, &cfg(), 60).unwrap(),
            Solved::KernelTooLarge { .. }
        ));
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("linear".parse::<Mode>().unwrap(), Mode::Linear);
        assert_eq!("quadratic".parse::<Mode>().unwrap(), Mode::Quadratic);
        assert!("cubic".parse::<Mode>().is_err());
        assert_eq!(Verdict::NoInstance.to_string(), "no_instance");
    }
}
