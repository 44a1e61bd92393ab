//! Counting conditions necessary for a feasible flow in the extendability
//! network. Each check is cheap arithmetic over per-color availability
//! counts, except the per-clique matching test.
//!
//! All free-color sets are restricted to the target colors `0..k0`.

use crate::coloring::{target_color_range, PartialColoring};
use crate::decomposition::CliqueDecomposition;

/// Which check rejected a target color count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HallRule {
    /// Some color cannot reach its minimum size with one vertex per clique.
    PositiveSingle,
    /// Some clique has no system of distinct free colors.
    CliqueHall,
    /// Vertices forced into one color overflow it, or vertices avoiding a
    /// color overflow all the others.
    Negative,
    /// Too few vertices can take any color except one.
    PositiveComplement,
}

impl HallRule {
    pub const ALL: [HallRule; 4] = [
        HallRule::PositiveSingle,
        HallRule::CliqueHall,
        HallRule::Negative,
        HallRule::PositiveComplement,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            HallRule::PositiveSingle => "positive_single",
            HallRule::CliqueHall => "clique_hall",
            HallRule::Negative => "negative",
            HallRule::PositiveComplement => "positive_complement",
        }
    }
}

/// Aggregate counts of a partial coloring, a decomposition of its uncolored
/// vertices and a target color count.
#[derive(Clone, Debug)]
pub struct HallContext {
    pub n: usize,
    pub k0: usize,
    pub class_sizes: Vec<usize>,
    /// Free colors below `k0` of the vertices of each clique, in clique order.
    pub clique_free: Vec<Vec<Vec<usize>>>,
    /// `clique_avail[j][c]`: vertices of clique `j` with `c` free.
    pub clique_avail: Vec<Vec<usize>>,
    /// Residual vertices with `c` free.
    pub residual_avail: Vec<usize>,
    /// All uncolored vertices with `c` free.
    pub total_avail: Vec<usize>,
    /// Uncolored vertices with no free color.
    pub no_free: usize,
    /// Uncolored vertices whose only free color is `c`.
    pub only_free: Vec<usize>,
    pub uncolored: usize,
}

impl HallContext {
    pub fn new(pc: &PartialColoring<'_>, decomp: &CliqueDecomposition, k0: usize) -> Self {
        let mut ctx = Self {
            n: pc.n(),
            k0,
            class_sizes: (0..k0).map(|c| pc.class_size(c)).collect(),
            clique_free: Vec::with_capacity(decomp.cliques.len()),
            clique_avail: Vec::with_capacity(decomp.cliques.len()),
            residual_avail: vec![0; k0],
            total_avail: vec![0; k0],
            no_free: 0,
            only_free: vec![0; k0],
            uncolored: decomp.len(),
        };
        for clique in &decomp.cliques {
            let mut avail = vec![0; k0];
            let mut free_sets = Vec::with_capacity(clique.len());
            for &v in clique {
                let free: Vec<usize> = pc.free_colors(v, k0).collect();
                for &c in &free {
                    avail[c] += 1;
                }
                ctx.tally(&free);
                free_sets.push(free);
            }
            ctx.clique_free.push(free_sets);
            ctx.clique_avail.push(avail);
        }
        for &v in &decomp.residual {
            let free: Vec<usize> = pc.free_colors(v, k0).collect();
            for &c in &free {
                ctx.residual_avail[c] += 1;
            }
            ctx.tally(&free);
        }
        ctx
    }

    fn tally(&mut self, free: &[usize]) {
        for &c in free {
            self.total_avail[c] += 1;
        }
        match free {
            [] => self.no_free += 1,
            [c] => self.only_free[*c] += 1,
            _ => {}
        }
    }

    /// Minimum number of vertices color `c` still has to receive.
    pub fn demand(&self, c: usize) -> usize {
        (self.n / self.k0).saturating_sub(self.class_sizes[c])
    }

    /// Maximum number of vertices color `c` may still receive.
    pub fn room(&self, c: usize) -> usize {
        self.n.div_ceil(self.k0).saturating_sub(self.class_sizes[c])
    }
}

/// Every color can reach its minimum size taking at most one vertex per
/// clique plus any residual vertex where it is free.
pub fn check_positive_single(ctx: &HallContext) -> bool {
    (0..ctx.k0).all(|f| {
        let from_cliques = ctx.clique_avail.iter().filter(|a| a[f] > 0).count();
        ctx.demand(f) <= from_cliques + ctx.residual_avail[f]
    })
}

/// For every color `g`, the minimum sizes of the other colors can be met by
/// vertices having some free color other than `g`.
pub fn check_positive_complement(ctx: &HallContext) -> bool {
    let total_demand: usize = (0..ctx.k0).map(|c| ctx.demand(c)).sum();
    (0..ctx.k0).all(|g| {
        let eligible = ctx.uncolored - ctx.no_free - ctx.only_free[g];
        total_demand - ctx.demand(g) <= eligible
    })
}

/// Every clique can be colored with pairwise distinct free colors.
pub fn check_clique_hall(ctx: &HallContext) -> bool {
    ctx.clique_free
        .iter()
        .all(|free| has_perfect_matching(free, ctx.k0))
}

/// Vertices whose free colors lie within `{f}` fit into the room left in `f`,
/// and vertices lacking `g` fit into the room left in all other colors.
pub fn check_negative_single_and_complement(ctx: &HallContext) -> bool {
    let total_room: usize = (0..ctx.k0).map(|c| ctx.room(c)).sum();
    (0..ctx.k0).all(|f| {
        let forced = ctx.no_free + ctx.only_free[f];
        let lacking = ctx.uncolored - ctx.total_avail[f];
        forced <= ctx.room(f) && lacking <= total_room - ctx.room(f)
    })
}

/// First failing check in evaluation order, or `None` if all pass.
pub fn first_failing_rule(ctx: &HallContext) -> Option<HallRule> {
    if !check_positive_single(ctx) {
        Some(HallRule::PositiveSingle)
    } else if !check_clique_hall(ctx) {
        Some(HallRule::CliqueHall)
    } else if !check_negative_single_and_complement(ctx) {
        Some(HallRule::Negative)
    } else if !check_positive_complement(ctx) {
        Some(HallRule::PositiveComplement)
    } else {
        None
    }
}

/// Result of [`comb_prune_detailed`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CombOutcome {
    pub prune: bool,
    /// Target counts rejected by each rule, indexed by [`HallRule::index`].
    pub failures: [u64; 4],
    pub targets_tested: u64,
}

/// Rule-based pruning: `true` iff every target color count in range fails
/// at least one check.
pub fn comb_prune(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k_lower: usize,
    k_upper: usize,
) -> bool {
    comb_prune_detailed(pc, decomp, k_lower, k_upper).prune
}

pub fn comb_prune_detailed(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k_lower: usize,
    k_upper: usize,
) -> CombOutcome {
    let mut out = CombOutcome {
        prune: true,
        ..CombOutcome::default()
    };
    for k0 in target_color_range(pc, k_lower, k_upper) {
        out.targets_tested += 1;
        let ctx = HallContext::new(pc, decomp, k0);
        match first_failing_rule(&ctx) {
            Some(rule) => out.failures[rule.index()] += 1,
            None => {
                out.prune = false;
                break;
            }
        }
    }
    out
}

/// Whether every left vertex can be matched to a distinct right vertex in
/// `0..right` (Kuhn's augmenting paths).
fn has_perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    if adj.len() > right {
        return false;
    }
    let mut owner = vec![usize::MAX; right];
    let mut seen = vec![false; right];
    for left in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        if !augment(left, adj, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(left: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &r in &adj[left] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r] == usize::MAX || augment(owner[r], adj, owner, seen) {
            owner[r] = left;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::size_bound_prune;
    use crate::decomposition::find_non_adjacent_cliques;
    use crate::families;
    use crate::graph::{gen_gnp, Graph};
    use rand::{Rng, SeedableRng};

    fn matching_brute(adj: &[Vec<usize>]) -> bool {
        fn go(i: usize, adj: &[Vec<usize>], used: &mut Vec<usize>) -> bool {
            if i == adj.len() {
                return true;
            }
            for &c in &adj[i] {
                if !used.contains(&c) {
                    used.push(c);
                    if go(i + 1, adj, used) {
                        return true;
                    }
                    used.pop();
                }
            }
            false
        }
        go(0, adj, &mut Vec::new())
    }

    fn context_for(g: &Graph, assignment: &[Option<usize>], k0: usize) -> HallContext {
        let pc = PartialColoring::from_assignment(g, assignment).unwrap();
        let u: Vec<usize> = pc.uncolored().collect();
        let d = find_non_adjacent_cliques(g, &u);
        HallContext::new(&pc, &d, k0)
    }

    #[test]
    fn k2_positive_single() {
        let g = families::complete(2);
        let ctx = context_for(&g, &[None, None], 2);
        assert_eq!(ctx.clique_avail, vec![vec![2, 2]]);
        assert!(check_positive_single(&ctx));
        assert_eq!(first_failing_rule(&ctx), None);
    }

    #[test]
    fn mixed_example_fails_positive_single() {
        let g = families::mixed_example();
        let mut a = vec![None; 12];
        a[0] = Some(0);
        let ctx = context_for(&g, &a, 3);
        assert_eq!(ctx.demand(0), 3);
        assert!(!check_positive_single(&ctx));
        assert_eq!(first_failing_rule(&ctx), Some(HallRule::PositiveSingle));
        let pc = PartialColoring::from_assignment(&g, &a).unwrap();
        let d = find_non_adjacent_cliques(&g, &(1..12).collect::<Vec<_>>());
        let out = comb_prune_detailed(&pc, &d, 3, 4);
        assert!(out.prune);
        assert_eq!(out.failures, [1, 0, 0, 0]);
        assert!(!comb_prune(&pc, &d, 3, 5));
    }

    #[test]
    fn full_class_is_vacuous() {
        // Color 0 already at ceil(5 / 2) = 3.
        let g = Graph::empty(5);
        let ctx = context_for(&g, &[Some(0), Some(0), Some(0), None, None], 2);
        assert_eq!(ctx.demand(0), 0);
        assert!(check_positive_single(&ctx));
    }

    #[test]
    fn positive_complement_examples() {
        let g = Graph::empty(4);
        let ctx = context_for(&g, &[None; 4], 2);
        assert!(check_positive_complement(&ctx));

        // n = 9, k0 = 3, class sizes (3, 2, 2); the two uncolored vertices are
        // adjacent to colors 1 and 2 so that only color 0 is free.
        let g = Graph::from_edges(9, [(7, 3), (7, 4), (8, 5), (8, 6)]).unwrap();
        let a = [
            Some(0),
            Some(0),
            Some(0),
            Some(1),
            Some(2),
            Some(1),
            Some(2),
            None,
            None,
        ];
        let ctx = context_for(&g, &a, 3);
        assert_eq!(ctx.only_free, vec![2, 0, 0]);
        assert!(!check_positive_complement(&ctx));
        assert!(!crate::flownet::extendable_by_flow(
            &PartialColoring::from_assignment(&g, &a).unwrap(),
            &CliqueDecomposition::trivial([7, 8]),
            3
        ));

        let ctx = context_for(&Graph::empty(3), &[None; 3], 1);
        assert!(check_positive_complement(&ctx));
    }

    #[test]
    fn clique_hall_examples() {
        assert!(!has_perfect_matching(&[vec![1], vec![1]], 4));
        assert!(has_perfect_matching(
            &[vec![1, 2], vec![2, 3], vec![1, 3]],
            4
        ));
        let four = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]];
        assert!(!has_perfect_matching(&four, 5));
        assert!(!matching_brute(&four));
    }

    #[test]
    fn matching_agrees_with_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3000 {
            let right = rng.gen_range(1..6);
            let left = rng.gen_range(0..6);
            let adj: Vec<Vec<usize>> = (0..left)
                .map(|_| (0..right).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            assert_eq!(
                has_perfect_matching(&adj, right),
                matching_brute(&adj),
                "{adj:?}"
            );
        }
    }

    #[test]
    fn negative_examples() {
        // Three uncolored vertices seeing colors 1 and 2 only leave color 0,
        // which has room for two.
        let g = Graph::from_edges(9, [(6, 1), (6, 2), (7, 1), (7, 2), (8, 1), (8, 2)]).unwrap();
        let a = [
            Some(0),
            Some(1),
            Some(2),
            Some(1),
            Some(2),
            Some(1),
            None,
            None,
            None,
        ];
        let ctx = context_for(&g, &a, 3);
        assert_eq!(ctx.room(0), 2);
        assert!(!check_negative_single_and_complement(&ctx));

        let ctx = context_for(&Graph::empty(6), &[None; 6], 3);
        assert!(check_negative_single_and_complement(&ctx));
    }

    #[test]
    fn unfillable_example_state() {
        let g = families::unfillable_example();
        let a = [
            Some(0),
            Some(1),
            Some(2),
            Some(3),
            Some(0),
            Some(0),
            None,
            None,
        ];
        let ctx = context_for(&g, &a, 4);
        // Vertex 6 sees colors 0 and 3, vertex 7 sees color 0.
        assert_eq!(ctx.no_free, 0);
        assert!(ctx.only_free.iter().all(|&c| c == 0));
        // Color 0 already holds three vertices, beyond ceil(8 / 4) = 2.
        assert_eq!(ctx.room(0), 0);
        assert!(check_negative_single_and_complement(&ctx));
    }

    #[test]
    fn context_counts_match_recomputation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for seed in 0..300u64 {
            let n = rng.gen_range(3..14);
            let g = gen_gnp(n, rng.gen_range(0.1..0.8), seed);
            let mut pc = PartialColoring::new(&g);
            for v in 0..n {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(0..n.min(4));
                    if !pc.is_forbidden(v, c) {
                        pc.extend(v, c);
                    }
                }
            }
            let u: Vec<usize> = pc.uncolored().collect();
            let d = find_non_adjacent_cliques(&g, &u);
            let k0 = (pc.color_span().max(1) + rng.gen_range(0..3)).min(n);
            let ctx = HallContext::new(&pc, &d, k0);
            for c in 0..k0 {
                let free_in = |v: usize| !pc.is_forbidden(v, c);
                assert_eq!(
                    ctx.total_avail[c],
                    u.iter().filter(|&&v| free_in(v)).count()
                );
                assert_eq!(
                    ctx.residual_avail[c],
                    d.residual.iter().filter(|&&v| free_in(v)).count()
                );
                for (j, clique) in d.cliques.iter().enumerate() {
                    assert_eq!(
                        ctx.clique_avail[j][c],
                        clique.iter().filter(|&&v| free_in(v)).count()
                    );
                }
                let only = u
                    .iter()
                    .filter(|&&v| (0..k0).filter(|&x| !pc.is_forbidden(v, x)).eq([c]))
                    .count();
                assert_eq!(ctx.only_free[c], only);
            }
            let none = u
                .iter()
                .filter(|&&v| (0..k0).all(|x| pc.is_forbidden(v, x)))
                .count();
            assert_eq!(ctx.no_free, none);
            assert_eq!(ctx.uncolored, u.len());
        }
    }

    #[test]
    fn rules_cover_size_bound_on_edgeless_relaxation() {
        // On an edgeless graph every uncolored vertex is free for every color.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let mut fired = 0;
        for _ in 0..5000 {
            let n = rng.gen_range(2..16);
            let g = Graph::empty(n);
            let mut pc = PartialColoring::new(&g);
            let colors = rng.gen_range(1..=n);
            for v in 0..n {
                if rng.gen_bool(0.5) {
                    pc.extend(v, rng.gen_range(0..colors));
                }
            }
            let k_lower = rng.gen_range(0..=n);
            if !size_bound_prune(&pc, k_lower) {
                continue;
            }
            fired += 1;
            let d = CliqueDecomposition::trivial(pc.uncolored());
            for k0 in target_color_range(&pc, k_lower.max(pc.colors_used()), n + 1) {
                let ctx = HallContext::new(&pc, &d, k0);
                assert!(
                    first_failing_rule(&ctx).is_some(),
                    "k0={k0} {:?}",
                    pc.assignment()
                );
            }
        }
        assert!(fired > 100);
    }

    #[test]
    fn cycle_root_is_not_pruned() {
        let g = families::cycle(5);
        let pc = PartialColoring::new(&g);
        let d = find_non_adjacent_cliques(&g, &[0, 1, 2, 3, 4]);
        assert!(!comb_prune(&pc, &d, 3, 5));
    }
}
