//! Partial colorings with incremental forbidden-color bookkeeping, plus the
//! class-size arithmetic every equitable coloring must obey.
//!
//! Colors are `0..n` internally. A partial coloring is extended one vertex at
//! a time with [`PartialColoring::extend`] and undone with
//! [`PartialColoring::retract`]; both cost `O(deg(v))`. The largest class size
//! `M` and the number `t` of classes attaining it are read in `O(1)` from a
//! size histogram.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

/// Class sizes forced on any equitable coloring of `n` vertices with `k0`
/// colors: `ceil_count` classes of `ceil_size`, the rest of `floor_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSizeProfile {
    pub ceil_count: usize,
    pub floor_count: usize,
    pub ceil_size: usize,
    pub floor_size: usize,
}

pub fn class_size_profile(n: usize, k0: usize) -> ClassSizeProfile {
    assert!(k0 >= 1 && k0 <= n, "need 1 <= k0 <= n, got k0={k0}, n={n}");
    let rem = n % k0;
    ClassSizeProfile {
        ceil_count: rem,
        floor_count: k0 - rem,
        ceil_size: n.div_ceil(k0),
        floor_size: n / k0,
    }
}

#[derive(Clone, Debug)]
pub struct PartialColoring<'g> {
    graph: &'g Graph,
    color_of: Vec<Option<usize>>,
    classes: Vec<Vec<usize>>,
    /// `conflicts[v * n + c]`: colored neighbors of `v` holding color `c`.
    conflicts: Vec<u32>,
    saturation: Vec<usize>,
    uncolored: FixedBitSet,
    uncolored_count: usize,
    /// `size_hist[s]`: number of nonempty classes of size `s`.
    size_hist: Vec<usize>,
    max_size: usize,
    nonempty: usize,
    span: usize,
}

impl<'g> PartialColoring<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        let mut uncolored = FixedBitSet::with_capacity(n);
        uncolored.insert_range(..);
        Self {
            graph,
            color_of: vec![None; n],
            classes: vec![Vec::new(); n],
            conflicts: vec![0; n * n],
            saturation: vec![0; n],
            uncolored,
            uncolored_count: n,
            size_hist: vec![0; n + 1],
            max_size: 0,
            nonempty: 0,
            span: 0,
        }
    }

    /// Builds a partial coloring from a per-vertex assignment, checking that
    /// every class is stable.
    pub fn from_assignment(graph: &'g Graph, assignment: &[Option<usize>]) -> Result<Self, String> {
        if assignment.len() != graph.n() {
            return Err(format!(
                "assignment covers {} vertices, graph has {}",
                assignment.len(),
                graph.n()
            ));
        }
        let mut pc = Self::new(graph);
        for (v, &c) in assignment.iter().enumerate() {
            let Some(c) = c else { continue };
            if c >= graph.n() {
                return Err(format!("color {c} of vertex {v} out of range"));
            }
            if pc.is_forbidden(v, c) {
                return Err(format!("vertex {v} conflicts with a neighbor on color {c}"));
            }
            pc.extend(v, c);
        }
        Ok(pc)
    }

    #[inline]
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.color_of.len()
    }

    #[inline]
    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.color_of[v]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.color_of
    }

    #[inline]
    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    #[inline]
    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Uncolored vertices in increasing order.
    pub fn uncolored(&self) -> impl Iterator<Item = usize> + '_ {
        self.uncolored.ones()
    }

    pub fn uncolored_set(&self) -> &FixedBitSet {
        &self.uncolored
    }

    #[inline]
    pub fn uncolored_count(&self) -> usize {
        self.uncolored_count
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.uncolored_count == 0
    }

    /// `c` is used by some colored neighbor of `v`.
    #[inline]
    pub fn is_forbidden(&self, v: usize, c: usize) -> bool {
        self.conflicts[v * self.n() + c] > 0
    }

    /// Free colors of `v` among `0..k0`.
    pub fn free_colors(&self, v: usize, k0: usize) -> impl Iterator<Item = usize> + '_ {
        (0..k0).filter(move |&c| !self.is_forbidden(v, c))
    }

    /// Forbidden colors of `v`, ascending.
    pub fn forbidden_colors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&c| self.is_forbidden(v, c)).collect()
    }

    /// Number of distinct colors on colored neighbors of `v`.
    #[inline]
    pub fn saturation(&self, v: usize) -> usize {
        self.saturation[v]
    }

    /// Size of the largest class (`M`).
    #[inline]
    pub fn max_class_size(&self) -> usize {
        self.max_size
    }

    /// Number of classes of maximum size (`t`); zero for the empty coloring.
    #[inline]
    pub fn largest_class_count(&self) -> usize {
        if self.max_size == 0 {
            0
        } else {
            self.size_hist[self.max_size]
        }
    }

    /// Number of nonempty classes.
    #[inline]
    pub fn colors_used(&self) -> usize {
        self.nonempty
    }

    /// One past the highest color in use. Equals [`Self::colors_used`] when
    /// colors are opened in order, as the search does; any target number of
    /// colors must be at least this large.
    #[inline]
    pub fn color_span(&self) -> usize {
        self.span
    }

    /// Colors `v` with `c`. `v` must be uncolored and `c` free for `v`.
    pub fn extend(&mut self, v: usize, c: usize) {
        assert!(self.color_of[v].is_none(), "vertex {v} already colored");
        assert!(
            !self.is_forbidden(v, c),
            "color {c} forbidden for vertex {v}"
        );
        let n = self.n();
        self.color_of[v] = Some(c);
        self.uncolored.set(v, false);
        self.uncolored_count -= 1;

        let size = self.classes[c].len();
        self.classes[c].push(v);
        if size == 0 {
            self.nonempty += 1;
            self.span = self.span.max(c + 1);
        } else {
            self.size_hist[size] -= 1;
        }
        self.size_hist[size + 1] += 1;
        self.max_size = self.max_size.max(size + 1);

        for &w in self.graph.neighbors(v) {
            let slot = &mut self.conflicts[w * n + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    /// Undoes the coloring of `v`, returning the color it held.
    pub fn retract(&mut self, v: usize) -> usize {
        let c = self.color_of[v]
            .take()
            .expect("retract of an uncolored vertex");
        let n = self.n();
        self.uncolored.insert(v);
        self.uncolored_count += 1;

        let class = &mut self.classes[c];
        let pos = class
            .iter()
            .rposition(|&w| w == v)
            .expect("vertex listed in its class");
        class.swap_remove(pos);
        let size = class.len();
        self.size_hist[size + 1] -= 1;
        if size == 0 {
            self.nonempty -= 1;
            if c + 1 == self.span {
                self.span = (0..c)
                    .rev()
                    .find(|&d| !self.classes[d].is_empty())
                    .map_or(0, |d| d + 1);
            }
        } else {
            self.size_hist[size] += 1;
        }
        if self.size_hist[self.max_size] == 0 && self.max_size == size + 1 {
            self.max_size = size;
        }

        for &w in self.graph.neighbors(v) {
            let slot = &mut self.conflicts[w * n + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
        c
    }
}

/// Numbers of colors `k0` worth testing for extendability of `pc` when only
/// colorings strictly better than `k_upper` matter: at least the colors in
/// use and `k_lower`, at most `k_upper - 1`, and small enough that the
/// largest class still fits (`M <= ceil(n / k0)`). May be empty.
pub fn target_color_range(
    pc: &PartialColoring<'_>,
    k_lower: usize,
    k_upper: usize,
) -> std::ops::RangeInclusive<usize> {
    let n = pc.n();
    let lo = pc.color_span().max(k_lower).max(1);
    let m = pc.max_class_size();
    let fit = if m <= 1 { n } else { (n - 1) / (m - 1) };
    let hi = k_upper.saturating_sub(1).min(n).min(fit);
    lo..=hi
}

/// Class-fill pruning test on a partial coloring: returns `true` (prune) iff
/// `n < (M - 1) * max(k_lower, k) + t`, where `k` is the number of colors in
/// use. Every equitable completion with at least `max(k_lower, k)` colors
/// needs each class filled to `M - 1`, so a `true` answer is conclusive;
/// `false` proves nothing.
pub fn size_bound_prune(pc: &PartialColoring<'_>, k_lower: usize) -> bool {
    let m = pc.max_class_size();
    if m == 0 {
        return false;
    }
    let k = k_lower.max(pc.colors_used());
    pc.n() < (m - 1) * k + pc.largest_class_count()
}

/// A complete coloring is equitable with `k0` colors: classes `0..k0` are
/// nonempty, later ones empty, and sizes differ by at most one.
pub fn is_equitable(pc: &PartialColoring<'_>, k0: usize) -> bool {
    if !pc.is_complete() || k0 == 0 || pc.color_span() != k0 || pc.colors_used() != k0 {
        return false;
    }
    let sizes = (0..k0).map(|c| pc.class_size(c));
    let (lo, hi) = sizes.fold((usize::MAX, 0), |(lo, hi), s| (lo.min(s), hi.max(s)));
    hi - lo <= 1
}

/// Checks a full assignment for properness and equitability with exactly
/// `k` colors `0..k`.
pub fn check_equitable_assignment(g: &Graph, colors: &[usize], k: usize) -> Result<(), String> {
    if colors.len() != g.n() {
        return Err("assignment length differs from vertex count".into());
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| colors[u] == colors[v]) {
        return Err(format!("edge ({u}, {v}) is monochromatic"));
    }
    let mut sizes = vec![0usize; k];
    for (v, &c) in colors.iter().enumerate() {
        if c >= k {
            return Err(format!("vertex {v} has color {c} >= {k}"));
        }
        sizes[c] += 1;
    }
    let lo = sizes.iter().min().copied().unwrap_or(0);
    let hi = sizes.iter().max().copied().unwrap_or(0);
    if g.n() > 0 && lo == 0 {
        return Err("some color class is empty".into());
    }
    if hi - lo > 1 {
        return Err(format!("class sizes range over [{lo}, {hi}]"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::gen_gnp;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `|U| >= sum over nonempty classes smaller than M-1 of (M - 1 - |C_i|)`:
    /// the deficit form of the class-fill rule.
    fn deficit_form_holds(pc: &PartialColoring<'_>) -> bool {
        let m = pc.max_class_size();
        if m == 0 {
            return true;
        }
        let deficit: usize = (0..pc.n())
            .map(|c| pc.class_size(c))
            .filter(|&s| s > 0 && s + 1 < m)
            .map(|s| m - 1 - s)
            .sum();
        pc.uncolored_count() >= deficit
    }

    fn random_partial<'g>(g: &'g Graph, rng: &mut ChaCha8Rng) -> PartialColoring<'g> {
        let mut pc = PartialColoring::new(g);
        let mut order: Vec<usize> = (0..g.n()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let stop = rng.gen_range(0..=g.n());
        for &v in &order[..stop] {
            let limit = pc.color_span() + 1;
            let free: Vec<usize> = pc.free_colors(v, limit.min(g.n())).collect();
            if !free.is_empty() {
                pc.extend(v, free[rng.gen_range(0..free.len())]);
            }
        }
        pc
    }

    fn path3() -> Graph {
        families::path(3)
    }

    #[test]
    fn extend_updates_forbidden_sets() {
        let g = path3();
        let mut pc = PartialColoring::new(&g);
        pc.extend(1, 0);
        assert_eq!(pc.class(0), &[1]);
        assert_eq!(pc.forbidden_colors(0), vec![0]);
        assert_eq!(pc.forbidden_colors(2), vec![0]);
        assert_eq!(pc.saturation(0), 1);
        assert!(pc.is_forbidden(0, 0));
        assert_eq!(pc.uncolored().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    #[should_panic(expected = "forbidden")]
    fn extend_with_forbidden_color_panics() {
        let g = path3();
        let mut pc = PartialColoring::new(&g);
        pc.extend(1, 0);
        pc.extend(0, 0);
    }

    #[test]
    fn unfillable_state_statistics() {
        let g = families::unfillable_example();
        let assignment = [
            Some(0),
            Some(1),
            Some(2),
            Some(3),
            Some(0),
            Some(0),
            None,
            None,
        ];
        let pc = PartialColoring::from_assignment(&g, &assignment).unwrap();
        assert_eq!(pc.max_class_size(), 3);
        assert_eq!(pc.largest_class_count(), 1);
        assert_eq!(pc.colors_used(), 4);
        assert_eq!(pc.uncolored_count(), 2);
        assert!(size_bound_prune(&pc, 4));
        assert!(size_bound_prune(&pc, 0));
    }

    #[test]
    fn size_bound_edge_cases() {
        let g = families::complete(3);
        let empty = PartialColoring::new(&g);
        assert!(!size_bound_prune(&empty, 3));
        let full = PartialColoring::from_assignment(&g, &[Some(0), Some(1), Some(2)]).unwrap();
        assert!(!size_bound_prune(&full, 3));
    }

    #[test]
    fn class_size_profiles() {
        let p = class_size_profile(12, 4);
        assert_eq!((p.ceil_count, p.floor_count, p.floor_size), (0, 4, 3));
        let p = class_size_profile(11, 4);
        assert_eq!(
            (p.ceil_count, p.ceil_size, p.floor_count, p.floor_size),
            (3, 3, 1, 2)
        );
        let p = class_size_profile(12, 7);
        assert_eq!(
            (p.ceil_count, p.ceil_size, p.floor_count, p.floor_size),
            (5, 2, 2, 1)
        );
    }

    #[test]
    fn target_range_respects_largest_class() {
        // n = 12 with a class of five: ceil(12 / k0) >= 5 only for k0 <= 2.
        let g = Graph::empty(12);
        let mut pc = PartialColoring::new(&g);
        for v in 0..5 {
            pc.extend(v, 0);
        }
        assert!(target_color_range(&pc, 3, 4).is_empty());
        assert_eq!(target_color_range(&pc, 1, 4), 1..=2);
        assert_eq!(target_color_range(&pc, 1, 13), 1..=2);
        for k0 in 1..=12 {
            let fits = 12usize.div_ceil(k0) >= 5;
            assert_eq!(
                target_color_range(&pc, 1, 13).contains(&k0),
                fits,
                "k0={k0}"
            );
        }
        let empty = PartialColoring::new(&g);
        assert_eq!(target_color_range(&empty, 3, 8), 3..=7);
    }

    #[test]
    fn class_size_profile_sums() {
        for n in 1..=200 {
            for k0 in 1..=n {
                let p = class_size_profile(n, k0);
                assert_eq!(p.ceil_count + p.floor_count, k0);
                assert_eq!(p.ceil_count * p.ceil_size + p.floor_count * p.floor_size, n);
            }
        }
    }

    #[test]
    fn equitability_examples() {
        let p4 = families::path(4);
        let pc =
            PartialColoring::from_assignment(&p4, &[Some(0), Some(1), Some(0), Some(1)]).unwrap();
        assert!(is_equitable(&pc, 2));
        assert!(!is_equitable(&pc, 3));

        let star = families::star(12);
        let mut two = vec![Some(1); 12];
        two[0] = Some(0);
        let pc = PartialColoring::from_assignment(&star, &two).unwrap();
        assert!(!is_equitable(&pc, 2));

        let k4 = families::complete(4);
        let pc =
            PartialColoring::from_assignment(&k4, &[Some(0), Some(1), Some(2), Some(3)]).unwrap();
        assert!(is_equitable(&pc, 4));
    }

    #[test]
    fn retract_restores_span_and_max() {
        let g = Graph::empty(4);
        let mut pc = PartialColoring::new(&g);
        pc.extend(0, 0);
        pc.extend(1, 0);
        pc.extend(2, 2);
        assert_eq!(
            (pc.color_span(), pc.colors_used(), pc.max_class_size()),
            (3, 2, 2)
        );
        assert_eq!(pc.retract(2), 2);
        assert_eq!((pc.color_span(), pc.colors_used()), (1, 1));
        pc.retract(0);
        assert_eq!((pc.max_class_size(), pc.largest_class_count()), (1, 1));
        pc.retract(1);
        assert_eq!(
            (
                pc.max_class_size(),
                pc.largest_class_count(),
                pc.color_span()
            ),
            (0, 0, 0)
        );
    }

    #[test]
    fn deficit_form_agrees_with_size_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for i in 0..10_000u64 {
            let n = rng.gen_range(1..=14);
            let g = gen_gnp(n, rng.gen_range(0.0..=1.0), i);
            let pc = random_partial(&g, &mut rng);
            // With k_lower = 0 the bound uses exactly the colors in use.
            assert_eq!(
                size_bound_prune(&pc, 0),
                !deficit_form_holds(&pc),
                "instance {i}"
            );
        }
    }

    #[test]
    fn incremental_state_matches_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..300u64 {
            let n = rng.gen_range(1..=16);
            let g = gen_gnp(n, rng.gen_range(0.0..=1.0), i);
            let mut pc = PartialColoring::new(&g);
            let mut colored: Vec<usize> = Vec::new();
            for _ in 0..3 * n {
                let grow = colored.is_empty() || (pc.uncolored_count() > 0 && rng.gen_bool(0.6));
                if grow {
                    let u: Vec<usize> = pc.uncolored().collect();
                    let v = u[rng.gen_range(0..u.len())];
                    let free: Vec<usize> = pc.free_colors(v, n).collect();
                    pc.extend(v, free[rng.gen_range(0..free.len())]);
                    colored.push(v);
                } else {
                    let v = colored.swap_remove(rng.gen_range(0..colored.len()));
                    pc.retract(v);
                }
                let fresh = PartialColoring::from_assignment(&g, pc.assignment()).unwrap();
                for v in 0..n {
                    assert_eq!(pc.forbidden_colors(v), fresh.forbidden_colors(v));
                    assert_eq!(pc.saturation(v), fresh.forbidden_colors(v).len());
                    let direct: Vec<usize> = {
                        let mut d: Vec<usize> = g
                            .neighbors(v)
                            .iter()
                            .filter_map(|&w| pc.color_of(w))
                            .collect();
                        d.sort_unstable();
                        d.dedup();
                        d
                    };
                    assert_eq!(pc.forbidden_colors(v), direct);
                }
                let sizes: Vec<usize> = (0..n).map(|c| pc.class_size(c)).collect();
                let m = sizes.iter().copied().max().unwrap_or(0);
                assert_eq!(pc.max_class_size(), m);
                if m > 0 {
                    assert_eq!(
                        pc.largest_class_count(),
                        sizes.iter().filter(|&&s| s == m).count()
                    );
                }
                assert_eq!(pc.colors_used(), sizes.iter().filter(|&&s| s > 0).count());
                assert_eq!(pc.uncolored_count(), pc.uncolored().count());
                for c in 0..n {
                    assert!(g.is_stable(pc.class(c)));
                }
            }
        }
    }
}
