//! DSATUR branch and bound for the equitable chromatic number.
//!
//! The search is depth first. Each node colors the uncolored vertex of
//! highest saturation (then degree, then lowest index) with every admissible
//! color in increasing order; a child is entered only if it survives the
//! class-size rule and, depending on the variant, the flow test or the
//! counting rules. Every complete equitable coloring with fewer colors than
//! the incumbent replaces it.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::coloring::{is_equitable, size_bound_prune, PartialColoring};
use crate::decomposition::{
    find_non_adjacent_cliques, restarted_decomposition, CliqueDecomposition,
};
use crate::flownet::flow_prune_counted;
use crate::graph::{greedy_maximal_clique, Graph};
use crate::hallrules::comb_prune_detailed;

/// Pruning engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Class-size rule only.
    Std,
    /// Class-size rule, then the extendability flow.
    Flow,
    /// Class-size rule, then the counting rules.
    Comb,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Std, Variant::Flow, Variant::Comb];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Std => "std",
            Variant::Flow => "flow",
            Variant::Comb => "comb",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "std" => Ok(Variant::Std),
            "flow" => Ok(Variant::Flow),
            "comb" => Ok(Variant::Comb),
            other => Err(format!(
                "unknown variant `{other}` (expected std, flow or comb)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub variant: Variant,
    pub time_limit: Option<Duration>,
    /// Recompute the clique decomposition at every `cd_stride`-th node and
    /// filter the previous one elsewhere.
    pub cd_stride: usize,
    /// Restarts for the decomposition at the root.
    pub cd_tries: usize,
    /// Reserved for randomized tie-breaking; the search is deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Flow,
            time_limit: None,
            cd_stride: 1,
            cd_tries: 5,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_variant(variant: Variant) -> Self {
        Self {
            variant,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search tree nodes entered, root included.
    pub nodes: u64,
    pub prunes_size_bound: u64,
    pub prunes_flow: u64,
    pub prunes_hall: u64,
    /// Target counts rejected per counting rule, indexed by
    /// [`crate::hallrules::HallRule::index`].
    pub hall_failures_by_rule: [u64; 4],
    pub flow_solves: u64,
    /// Decompositions computed from scratch.
    pub decompositions: u64,
    pub incumbent_updates: u64,
    pub elapsed: Duration,
    pub timed_out: bool,
    /// Bounds met before any branching.
    pub closed_at_root: bool,
    pub k_lower: usize,
    pub k_upper_initial: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub chi_eq: usize,
    /// Color of each vertex, `0..chi_eq`.
    pub coloring: Vec<usize>,
    /// `false` when the time limit stopped the search.
    pub optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialBounds {
    pub k_lower: usize,
    pub k_upper: usize,
    /// Equitable coloring with `k_upper` colors.
    pub coloring: Vec<usize>,
    /// Largest greedy clique found; colored first by the search.
    pub clique: Vec<usize>,
}

/// Lower bound from greedy maximal cliques grown from every vertex, upper
/// bound from [`capped_dsatur`] with increasing color counts.
pub fn initial_bounds(g: &Graph) -> InitialBounds {
    let n = g.n();
    let mut clique = Vec::new();
    for v in 0..n {
        let q = greedy_maximal_clique(g, v);
        if q.len() > clique.len() {
            clique = q;
        }
    }
    let k_lower = clique.len();
    let (k_upper, coloring) = (k_lower.max(1)..=n)
        .find_map(|k| capped_dsatur(g, k).map(|c| (k, c)))
        .unwrap_or((0, Vec::new()));
    InitialBounds {
        k_lower,
        k_upper,
        coloring,
        clique,
    }
}

/// Greedy equitable coloring attempt with exactly `k` colors: vertices in
/// DSATUR order (saturation, then degree, then lowest index) take the lowest
/// color that is free and below its size cap. Classes may reach
/// `ceil(n / k)` only while fewer than `n mod k` have done so.
pub fn capped_dsatur(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 || k > n {
        return None;
    }
    let ceil = n.div_ceil(k);
    let ceil_slots = if n.is_multiple_of(k) { k } else { n % k };
    let mut pc = PartialColoring::new(g);
    let mut at_ceil = 0;
    while let Some(v) = select_vertex(&pc) {
        let c = (0..k).find(|&c| {
            let s = pc.class_size(c);
            !pc.is_forbidden(v, c) && s < ceil && (s + 1 < ceil || at_ceil < ceil_slots)
        })?;
        if pc.class_size(c) + 1 == ceil {
            at_ceil += 1;
        }
        pc.extend(v, c);
    }
    is_equitable(&pc, k).then(|| pc.assignment().iter().map(|c| c.unwrap()).collect())
}

/// Uncolored vertex of maximum saturation, then degree, then lowest index.
fn select_vertex(pc: &PartialColoring<'_>) -> Option<usize> {
    let g = pc.graph();
    let mut best: Option<(usize, usize, usize)> = None;
    for v in pc.uncolored() {
        let key = (pc.saturation(v), g.degree(v), v);
        best = match best {
            Some(b) if (b.0, b.1) >= (key.0, key.1) => Some(b),
            _ => Some(key),
        };
    }
    best.map(|b| b.2)
}

/// Solves with bounds from [`initial_bounds`].
pub fn solve(g: &Graph, cfg: &SolverConfig) -> (Solution, SearchStats) {
    let bounds = initial_bounds(g);
    solve_with_bounds(g, cfg, &bounds)
}

/// Solves starting from the given bounds. `bounds.coloring` must be an
/// equitable coloring with `bounds.k_upper` colors, `bounds.k_lower` a valid
/// lower bound and `bounds.clique` a clique.
pub fn solve_with_bounds(
    g: &Graph,
    cfg: &SolverConfig,
    bounds: &InitialBounds,
) -> (Solution, SearchStats) {
    assert!(cfg.cd_stride >= 1, "cd_stride must be positive");
    assert!(cfg.cd_tries >= 1, "cd_tries must be positive");
    let start = Instant::now();
    let mut search = Search {
        cfg,
        start,
        k_lower: bounds.k_lower,
        k_upper: bounds.k_upper,
        incumbent: bounds.coloring.clone(),
        stats: SearchStats {
            k_lower: bounds.k_lower,
            k_upper_initial: bounds.k_upper,
            ..SearchStats::default()
        },
        stop: false,
    };
    if g.n() > 0 {
        let mut pc = PartialColoring::new(g);
        for (c, &v) in bounds.clique.iter().enumerate() {
            pc.extend(v, c);
        }
        if search.k_lower >= search.k_upper {
            search.stats.nodes = 1;
            search.stats.closed_at_root = true;
        } else {
            search.visit(&mut pc, None);
        }
    }
    search.stats.elapsed = start.elapsed();
    let stats = search.stats;
    let solution = Solution {
        chi_eq: search.k_upper,
        coloring: search.incumbent,
        optimal: !stats.timed_out,
    };
    (solution, stats)
}

struct Search<'c> {
    cfg: &'c SolverConfig,
    start: Instant,
    k_lower: usize,
    k_upper: usize,
    incumbent: Vec<usize>,
    stats: SearchStats,
    stop: bool,
}

impl Search<'_> {
    /// Enters a node. `decomp` partitions its uncolored vertices (absent at
    /// the root and for the class-size-only variant).
    fn visit(&mut self, pc: &mut PartialColoring<'_>, decomp: Option<&CliqueDecomposition>) {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.cfg.time_limit {
                if self.start.elapsed() >= limit {
                    self.stats.timed_out = true;
                    self.stop = true;
                    return;
                }
            }
        }
        if pc.color_span() >= self.k_upper {
            return;
        }
        let Some(v) = select_vertex(pc) else {
            self.leaf(pc);
            return;
        };
        let child_decomp = self.child_decomposition(pc, decomp, v);

        let mut c = 0;
        while !self.stop && c < (pc.color_span() + 1).min(self.k_upper - 1) {
            if !pc.is_forbidden(v, c) {
                pc.extend(v, c);
                if !self.prune(pc, child_decomp.as_ref()) {
                    self.visit(pc, child_decomp.as_ref());
                }
                pc.retract(v);
            }
            c += 1;
        }
    }

    fn leaf(&mut self, pc: &PartialColoring<'_>) {
        let k = pc.colors_used();
        if k < self.k_upper && is_equitable(pc, k) {
            self.incumbent = pc.assignment().iter().map(|c| c.unwrap()).collect();
            debug_assert!(crate::coloring::check_equitable_assignment(
                pc.graph(),
                &self.incumbent,
                k
            )
            .is_ok());
            self.k_upper = k;
            self.stats.incumbent_updates += 1;
            log::debug!(
                "equitable coloring with {k} colors after {} nodes",
                self.stats.nodes
            );
            if self.k_upper <= self.k_lower {
                self.stop = true;
            }
        }
    }

    /// Decomposition of the uncolored vertices other than `v`, shared by all
    /// children of the current node.
    fn child_decomposition(
        &mut self,
        pc: &PartialColoring<'_>,
        decomp: Option<&CliqueDecomposition>,
        v: usize,
    ) -> Option<CliqueDecomposition> {
        if self.cfg.variant == Variant::Std {
            return None;
        }
        let mut keep: FixedBitSet = pc.uncolored_set().clone();
        keep.set(v, false);
        match decomp {
            Some(d) if !self.stats.nodes.is_multiple_of(self.cfg.cd_stride as u64) => {
                Some(d.restrict(&keep))
            }
            _ => {
                self.stats.decompositions += 1;
                let rest: Vec<usize> = keep.ones().collect();
                Some(if decomp.is_none() {
                    restarted_decomposition(pc.graph(), &rest, self.cfg.cd_tries)
                } else {
                    find_non_adjacent_cliques(pc.graph(), &rest)
                })
            }
        }
    }

    fn prune(&mut self, pc: &PartialColoring<'_>, decomp: Option<&CliqueDecomposition>) -> bool {
        if size_bound_prune(pc, self.k_lower) {
            self.stats.prunes_size_bound += 1;
            return true;
        }
        let Some(decomp) = decomp else {
            return false;
        };
        match self.cfg.variant {
            Variant::Std => false,
            Variant::Flow => {
                let (prune, solves) = flow_prune_counted(pc, decomp, self.k_lower, self.k_upper);
                self.stats.flow_solves += solves;
                self.stats.prunes_flow += u64::from(prune);
                prune
            }
            Variant::Comb => {
                let out = comb_prune_detailed(pc, decomp, self.k_lower, self.k_upper);
                for (total, f) in self
                    .stats
                    .hall_failures_by_rule
                    .iter_mut()
                    .zip(out.failures)
                {
                    *total += f;
                }
                self.stats.prunes_hall += u64::from(out.prune);
                out.prune
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::check_equitable_assignment;
    use crate::families;
    use crate::oracle::brute_chi_eq;

    fn check(g: &Graph, sol: &Solution) {
        assert!(g.edges().all(|(u, v)| sol.coloring[u] != sol.coloring[v]));
        check_equitable_assignment(g, &sol.coloring, sol.chi_eq).unwrap();
    }

    #[test]
    fn bounds_examples() {
        let b = initial_bounds(&families::complete(5));
        assert_eq!((b.k_lower, b.k_upper), (5, 5));
        let mut sorted = b.coloring.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);

        let b = initial_bounds(&families::star(12));
        assert_eq!(b.k_lower, 2);
        assert!((7..=12).contains(&b.k_upper));

        let b = initial_bounds(&Graph::empty(6));
        assert_eq!((b.k_lower, b.k_upper), (1, 1));
    }

    #[test]
    fn capped_dsatur_respects_sizes() {
        for seed in 0..100 {
            let g = crate::graph::gen_gnp(15, 0.3, seed);
            for k in 1..=15 {
                if let Some(c) = capped_dsatur(&g, k) {
                    check_equitable_assignment(&g, &c, k).unwrap();
                    assert!(g.edges().all(|(u, v)| c[u] != c[v]));
                }
            }
            assert!(capped_dsatur(&g, 15).is_some());
        }
    }

    #[test]
    fn star_all_variants() {
        for variant in Variant::ALL {
            let (sol, stats) = solve(&families::star(12), &SolverConfig::with_variant(variant));
            assert_eq!(sol.chi_eq, 7, "{variant}");
            assert!(sol.optimal);
            assert!(stats.nodes >= 1);
            check(&families::star(12), &sol);
        }
    }

    #[test]
    fn complete_graph_closes_at_root() {
        let (sol, stats) = solve(&families::complete(6), &SolverConfig::default());
        assert_eq!(sol.chi_eq, 6);
        assert_eq!(stats.nodes, 1);
        assert!(stats.closed_at_root);
    }

    #[test]
    fn small_random_graphs_match_oracle() {
        for seed in 0..200u64 {
            let n = 3 + (seed % 8) as usize;
            let g = crate::graph::gen_gnp(n, (seed % 9 + 1) as f64 / 10.0, seed);
            let expected = brute_chi_eq(&g).unwrap();
            for variant in Variant::ALL {
                let (sol, _) = solve(&g, &SolverConfig::with_variant(variant));
                assert_eq!(sol.chi_eq, expected, "seed {seed} {variant}");
                check(&g, &sol);
            }
        }
    }

    #[test]
    fn mixed_example_with_tight_incumbent() {
        let g = families::mixed_example();
        let mut bounds = initial_bounds(&g);
        bounds.k_upper = 4;
        bounds.coloring = crate::oracle::brute_equitable_coloring(&g, 4).unwrap();
        let run = |v| solve_with_bounds(&g, &SolverConfig::with_variant(v), &bounds);
        let (flow, flow_stats) = run(Variant::Flow);
        let (comb, comb_stats) = run(Variant::Comb);
        let (std, std_stats) = run(Variant::Std);
        assert_eq!((flow.chi_eq, comb.chi_eq, std.chi_eq), (4, 4, 4));
        assert_eq!(flow_stats.nodes, 1);
        assert_eq!(comb_stats.nodes, 1);
        assert!(std_stats.nodes > flow_stats.nodes);
    }

    #[test]
    fn zero_time_limit_times_out_on_hard_instance() {
        let g = crate::graph::gen_gnp(70, 0.5, 1);
        let cfg = SolverConfig {
            variant: Variant::Std,
            time_limit: Some(Duration::ZERO),
            ..SolverConfig::default()
        };
        let (sol, stats) = solve(&g, &cfg);
        assert!(stats.timed_out);
        assert!(!sol.optimal);
        check(&g, &sol);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("dsatur".parse::<Variant>().is_err());
    }
}
