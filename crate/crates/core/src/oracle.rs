//! Brute-force ground truth for tests: exact equitable chromatic number,
//! exact extendability of partial colorings, and exhaustive enumeration of
//! the signed-set inequalities characterizing flow feasibility.
//!
//! Everything here is exponential and guarded by explicit size caps.

use thiserror::Error;

use crate::coloring::PartialColoring;
use crate::flownet::{ArcFamily, FlowNetwork, NodeKind};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    /// Cap on inner (non source/sink) nodes for the signed-set enumeration.
    pub max_network_nodes: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_n: 12,
            max_network_nodes: 14,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} is {got}, above the oracle cap of {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("source arcs must be saturated by the target value")]
    UnsupportedNetwork,
}

fn check_cap(what: &'static str, got: usize, cap: usize) -> Result<(), OracleError> {
    if got > cap {
        Err(OracleError::CapExceeded { what, got, cap })
    } else {
        Ok(())
    }
}

/// Exact equitable chromatic number with the default caps.
pub fn brute_chi_eq(g: &Graph) -> Result<usize, OracleError> {
    brute_chi_eq_with(g, &OracleLimits::default())
}

pub fn brute_chi_eq_with(g: &Graph, limits: &OracleLimits) -> Result<usize, OracleError> {
    check_cap("vertex count", g.n(), limits.max_n)?;
    if g.n() == 0 {
        return Ok(0);
    }
    Ok((1..=g.n())
        .find(|&k| brute_equitable_coloring(g, k).is_some())
        .expect("n colors always suffice"))
}

/// Some equitable coloring with exactly `k` colors, if one exists. Vertices
/// are colored in index order, a new color only after all smaller ones, and
/// class sizes are capped while enumerating. Ignores the oracle vertex cap.
pub fn brute_equitable_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k == 0 || k > n {
        return None;
    }
    let mut search = Completion::new(g, k, vec![None; n], vec![0; k]);
    search.symmetric_from = 0;
    search
        .run(0)
        .then(|| search.colors.into_iter().map(Option::unwrap).collect())
}

/// Whether `pc` extends to an equitable coloring with exactly `k0` colors
/// in which every existing class keeps its members.
pub fn brute_extendable(
    g: &Graph,
    pc: &PartialColoring<'_>,
    k0: usize,
) -> Result<bool, OracleError> {
    brute_extendable_with(g, pc, k0, &OracleLimits::default())
}

pub fn brute_extendable_with(
    g: &Graph,
    pc: &PartialColoring<'_>,
    k0: usize,
    limits: &OracleLimits,
) -> Result<bool, OracleError> {
    check_cap("vertex count", g.n(), limits.max_n)?;
    let n = g.n();
    if k0 == 0 || k0 > n || pc.color_span() > k0 {
        return Ok(false);
    }
    let sizes: Vec<usize> = (0..k0).map(|c| pc.class_size(c)).collect();
    let mut search = Completion::new(g, k0, pc.assignment().to_vec(), sizes);
    // Colors without members are interchangeable: open them in order.
    search.symmetric_from = pc.color_span();
    Ok(search.run(0))
}

/// Backtracking completion with class-size caps.
struct Completion<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<Option<usize>>,
    sizes: Vec<usize>,
    floor: usize,
    ceil: usize,
    /// Classes allowed to reach `ceil` when it exceeds `floor`.
    ceil_slots: usize,
    /// Colors from this index on start empty and are opened in order.
    symmetric_from: usize,
    opened: usize,
}

impl<'g> Completion<'g> {
    fn new(g: &'g Graph, k: usize, colors: Vec<Option<usize>>, sizes: Vec<usize>) -> Self {
        let n = g.n();
        let (floor, ceil) = (n / k, n.div_ceil(k));
        Self {
            g,
            k,
            colors,
            sizes,
            floor,
            ceil,
            ceil_slots: n % k,
            symmetric_from: k,
            opened: 0,
        }
    }

    fn sizes_admissible(&self, remaining: usize) -> bool {
        if self.sizes.iter().any(|&s| s > self.ceil) {
            return false;
        }
        if self.ceil > self.floor
            && self.sizes.iter().filter(|&&s| s == self.ceil).count() > self.ceil_slots
        {
            return false;
        }
        let deficit: usize = self
            .sizes
            .iter()
            .map(|&s| self.floor.saturating_sub(s))
            .sum();
        deficit <= remaining
    }

    fn run(&mut self, from: usize) -> bool {
        let n = self.g.n();
        let Some(v) = (from..n).find(|&v| self.colors[v].is_none()) else {
            return self.sizes_admissible(0);
        };
        let remaining = (v..n).filter(|&u| self.colors[u].is_none()).count();
        if !self.sizes_admissible(remaining) {
            return false;
        }
        let limit = (self.symmetric_from + self.opened + 1).min(self.k);
        for c in 0..limit {
            if self.sizes[c] >= self.ceil
                || self
                    .g
                    .neighbors(v)
                    .iter()
                    .any(|&u| self.colors[u] == Some(c))
            {
                continue;
            }
            let opens = c == self.symmetric_from + self.opened;
            self.colors[v] = Some(c);
            self.sizes[c] += 1;
            self.opened += usize::from(opens);
            if self.run(v + 1) {
                return true;
            }
            self.opened -= usize::from(opens);
            self.sizes[c] -= 1;
            self.colors[v] = None;
        }
        false
    }
}

/// Inner part of an extendability network: every node except source and
/// sink, with bounds `lo <= outflow - inflow <= hi` over inner arcs.
///
/// Source arcs are saturated (their uppers sum to the target value), so each
/// of their heads receives a fixed amount; sink arcs turn into bounds on
/// their tails. Copy nodes without incoming arcs carry no flow and are
/// dropped.
#[derive(Clone, Debug)]
pub struct SignedSetSystem {
    /// Network node of each inner node.
    pub labels: Vec<usize>,
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    /// `(tail, head, lower, upper)` over inner node indices.
    pub arcs: Vec<(usize, usize, i64, i64)>,
}

impl SignedSetSystem {
    pub fn from_network(net: &FlowNetwork) -> Result<Self, OracleError> {
        let source_total: i64 = net
            .arcs
            .iter()
            .filter(|a| a.family == ArcFamily::Source)
            .map(|a| a.upper)
            .sum();
        if source_total != net.value_target {
            return Err(OracleError::UnsupportedNetwork);
        }
        let mut has_in = vec![false; net.node_count];
        for a in &net.arcs {
            has_in[a.head] = true;
        }
        let mut local = vec![usize::MAX; net.node_count];
        let mut labels = Vec::new();
        for x in 2..net.node_count {
            let droppable = matches!(net.node_kind(x), NodeKind::Copy { .. })
                && !has_in[x]
                && net.arcs.iter().all(|a| a.tail != x || a.lower == 0);
            if !droppable {
                local[x] = labels.len();
                labels.push(x);
            }
        }
        let mut lo = vec![0; labels.len()];
        let mut hi = vec![0; labels.len()];
        let mut arcs = Vec::new();
        for a in &net.arcs {
            match (a.tail, a.head) {
                (FlowNetwork::SOURCE, h) => {
                    lo[local[h]] += a.upper;
                    hi[local[h]] += a.upper;
                }
                (t, FlowNetwork::SINK) => {
                    lo[local[t]] -= a.upper;
                    hi[local[t]] -= a.lower;
                }
                (t, h) if local[t] != usize::MAX => {
                    arcs.push((local[t], local[h], a.lower, a.upper))
                }
                _ => {}
            }
        }
        Ok(Self {
            labels,
            lo,
            hi,
            arcs,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `rhs - lhs` of the inequality induced by node signs `w`, or `None`
    /// when some arc joins a `+1` node and a `-1` node.
    ///
    /// With `v = w(tail) - w(head)` per arc, the inequality reads
    /// `sum_{w=-1} lo + sum_{v=+1} lower <= sum_{w=+1} hi + sum_{v=-1} upper`.
    pub fn slack(&self, w: &[i8]) -> Option<i64> {
        let mut slack = 0;
        for (i, &s) in w.iter().enumerate() {
            slack += node_term(s, self.lo[i], self.hi[i]);
        }
        for &(t, h, lower, upper) in &self.arcs {
            slack += arc_term(w[t] - w[h], lower, upper)?;
        }
        Some(slack)
    }
}

fn node_term(sign: i8, lo: i64, hi: i64) -> i64 {
    match sign {
        1 => hi,
        -1 => -lo,
        _ => 0,
    }
}

fn arc_term(v: i8, lower: i64, upper: i64) -> Option<i64> {
    match v {
        0 => Some(0),
        1 => Some(-lower),
        -1 => Some(upper),
        _ => None,
    }
}

/// A violated inequality: node signs and the (negative) slack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub signs: Vec<i8>,
    pub slack: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoffmanReport {
    pub all_hold: bool,
    pub violation: Option<Violation>,
    /// Sign vectors evaluated to completion.
    pub checked: u64,
}

/// Enumerates every compatible sign vector on the inner nodes of `net` and
/// reports whether all induced inequalities hold. Stops at the first
/// violation.
pub fn enumerate_hoffman(net: &FlowNetwork) -> Result<HoffmanReport, OracleError> {
    enumerate_hoffman_with(net, &OracleLimits::default())
}

pub fn enumerate_hoffman_with(
    net: &FlowNetwork,
    limits: &OracleLimits,
) -> Result<HoffmanReport, OracleError> {
    let sys = SignedSetSystem::from_network(net)?;
    check_cap("inner node count", sys.len(), limits.max_network_nodes)?;
    Ok(enumerate_system(&sys))
}

pub fn enumerate_system(sys: &SignedSetSystem) -> HoffmanReport {
    // Arcs are charged when their later endpoint gets its sign.
    let mut back: Vec<Vec<(usize, bool, i64, i64)>> = vec![Vec::new(); sys.len()];
    for &(t, h, lower, upper) in &sys.arcs {
        if t > h {
            back[t].push((h, true, lower, upper));
        } else {
            back[h].push((t, false, lower, upper));
        }
    }
    let mut walk = SignWalk {
        sys,
        back,
        signs: vec![0; sys.len()],
        checked: 0,
        violation: None,
    };
    walk.descend(0, 0);
    HoffmanReport {
        all_hold: walk.violation.is_none(),
        violation: walk.violation,
        checked: walk.checked,
    }
}

struct SignWalk<'a> {
    sys: &'a SignedSetSystem,
    /// Per node: `(earlier node, this node is the tail, lower, upper)`.
    back: Vec<Vec<(usize, bool, i64, i64)>>,
    signs: Vec<i8>,
    checked: u64,
    violation: Option<Violation>,
}

impl SignWalk<'_> {
    fn descend(&mut self, i: usize, slack: i64) -> bool {
        if i == self.signs.len() {
            self.checked += 1;
            if slack < 0 {
                self.violation = Some(Violation {
                    signs: self.signs.clone(),
                    slack,
                });
                return true;
            }
            return false;
        }
        'sign: for s in [0i8, 1, -1] {
            let mut delta = node_term(s, self.sys.lo[i], self.sys.hi[i]);
            for &(j, tail_here, lower, upper) in &self.back[i] {
                let v = if tail_here {
                    s - self.signs[j]
                } else {
                    self.signs[j] - s
                };
                match arc_term(v, lower, upper) {
                    Some(d) => delta += d,
                    None => continue 'sign,
                }
            }
            self.signs[i] = s;
            if self.descend(i + 1, slack + delta) {
                return true;
            }
        }
        self.signs[i] = 0;
        false
    }
}

/// Splits signs into the positive-only and negative-only vectors.
pub fn split_signs(w: &[i8]) -> (Vec<i8>, Vec<i8>) {
    (
        w.iter().map(|&s| s.max(0)).collect(),
        w.iter().map(|&s| s.min(0)).collect(),
    )
}
