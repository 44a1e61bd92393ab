//! Greedy decomposition of the uncolored vertices into pairwise non-adjacent
//! cliques plus a residual set.
//!
//! Each clique part has stability number 1; the residual part is bounded by
//! its own size. Singleton cliques are folded into the residual.

use fixedbitset::FixedBitSet;

use crate::graph::{argmax_degree, Graph};

/// One part of a partition of the uncolored vertices, with an upper bound on
/// the stability number of the subgraph it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPart {
    pub vertices: Vec<usize>,
    pub alpha: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueDecomposition {
    pub cliques: Vec<Vec<usize>>,
    pub residual: Vec<usize>,
}

impl CliqueDecomposition {
    /// Everything in the residual part.
    pub fn trivial(uncolored: impl IntoIterator<Item = usize>) -> Self {
        let mut residual: Vec<usize> = uncolored.into_iter().collect();
        residual.sort_unstable();
        Self {
            cliques: Vec::new(),
            residual,
        }
    }

    pub fn covered(&self) -> usize {
        self.cliques.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.covered() + self.residual.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parts with stability bounds: every clique with bound 1, then the
    /// residual (when nonempty) bounded by its size.
    pub fn parts(&self) -> Vec<VertexPart> {
        let mut parts: Vec<VertexPart> = self
            .cliques
            .iter()
            .map(|c| VertexPart {
                vertices: c.clone(),
                alpha: 1,
            })
            .collect();
        if !self.residual.is_empty() {
            parts.push(VertexPart {
                vertices: self.residual.clone(),
                alpha: self.residual.len(),
            });
        }
        parts
    }

    /// Restricts to the still-uncolored vertices in `keep`. A clique minus
    /// some members is still a clique; those shrunk below two vertices move
    /// to the residual.
    pub fn restrict(&self, keep: &FixedBitSet) -> Self {
        let mut residual: Vec<usize> = self
            .residual
            .iter()
            .copied()
            .filter(|&v| keep.contains(v))
            .collect();
        let mut cliques = Vec::with_capacity(self.cliques.len());
        for clique in &self.cliques {
            let kept: Vec<usize> = clique
                .iter()
                .copied()
                .filter(|&v| keep.contains(v))
                .collect();
            if kept.len() >= 2 {
                cliques.push(kept);
            } else {
                residual.extend(kept);
            }
        }
        residual.sort_unstable();
        Self { cliques, residual }
    }

    /// Checks the partition against `uncolored`: disjoint parts covering it
    /// exactly, each clique of size at least two, no edge between cliques.
    pub fn validate(&self, g: &Graph, uncolored: &[usize]) -> Result<(), String> {
        let mut seen = FixedBitSet::with_capacity(g.n());
        let all = self.cliques.iter().flatten().chain(self.residual.iter());
        for &v in all {
            if v >= g.n() {
                return Err(format!("vertex {v} out of range"));
            }
            if seen.put(v) {
                return Err(format!("vertex {v} appears in two parts"));
            }
        }
        let mut expected = FixedBitSet::with_capacity(g.n());
        expected.extend(uncolored.iter().copied());
        if seen != expected {
            return Err("parts do not cover the uncolored set exactly".into());
        }
        for (j, clique) in self.cliques.iter().enumerate() {
            if clique.len() < 2 {
                return Err(format!("clique {j} has fewer than two vertices"));
            }
            if !g.is_clique(clique) {
                return Err(format!("part {j} is not a clique"));
            }
        }
        for (i, a) in self.cliques.iter().enumerate() {
            for b in &self.cliques[i + 1..] {
                if a.iter().any(|&u| b.iter().any(|&v| g.has_edge(u, v))) {
                    return Err("two cliques are adjacent".into());
                }
            }
        }
        Ok(())
    }
}

/// Greedy clique decomposition of `uncolored`.
///
/// Repeatedly takes the remaining vertex of highest degree in `g`, grows a
/// clique through remaining common neighbors of highest degree, removes the
/// clique and sends its remaining neighbors to the residual. Degree ties go
/// to the lowest index.
pub fn find_non_adjacent_cliques(g: &Graph, uncolored: &[usize]) -> CliqueDecomposition {
    decompose_from(g, uncolored, None)
}

/// Runs [`find_non_adjacent_cliques`] with the first pick forced to each of
/// the `tries` highest-degree uncolored vertices and keeps the result that
/// covers the most vertices by cliques (first found on ties).
pub fn restarted_decomposition(
    g: &Graph,
    uncolored: &[usize],
    tries: usize,
) -> CliqueDecomposition {
    assert!(tries >= 1, "need at least one try");
    let mut order: Vec<usize> = uncolored.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order.dedup();
    let mut best = find_non_adjacent_cliques(g, uncolored);
    for &first in order.iter().take(tries).skip(1) {
        let candidate = decompose_from(g, uncolored, Some(first));
        if candidate.covered() > best.covered() {
            best = candidate;
        }
    }
    best
}

fn decompose_from(g: &Graph, uncolored: &[usize], first: Option<usize>) -> CliqueDecomposition {
    let mut remaining = FixedBitSet::with_capacity(g.n());
    remaining.extend(uncolored.iter().copied());
    let mut cliques = Vec::new();
    let mut residual = Vec::new();
    let mut forced = first;

    loop {
        let seed = match forced.take() {
            Some(v) => v,
            None => match argmax_degree(g, remaining.ones()) {
                Some(v) => v,
                None => break,
            },
        };
        let mut clique = vec![seed];
        let mut candidates = remaining.clone();
        candidates.intersect_with(g.neighbor_set(seed));
        while let Some(next) = argmax_degree(g, candidates.ones()) {
            clique.push(next);
            candidates.intersect_with(g.neighbor_set(next));
        }

        for &v in &clique {
            remaining.set(v, false);
        }
        for &v in &clique {
            for &w in g.neighbors(v) {
                if remaining.contains(w) {
                    remaining.set(w, false);
                    residual.push(w);
                }
            }
        }
        if clique.len() >= 2 {
            clique.sort_unstable();
            cliques.push(clique);
        } else {
            residual.push(seed);
        }
    }

    residual.sort_unstable();
    CliqueDecomposition { cliques, residual }
}
