//! Extendability network of a partial coloring and its feasibility test.
//!
//! For a target of `k0` colors the network has five layers:
//!
//! ```text
//! s -> U (uncolored vertices) -> F (one copy of the colors per part) -> C (colors) -> t
//! ```
//!
//! | arcs    | from -> to         | bounds                                             |
//! |---------|--------------------|----------------------------------------------------|
//! | source  | `s -> v`           | `[0, 1]`                                           |
//! | choice  | `v -> f_j(i)`      | `[0, 1]` for each free color `i` of `v` in part `j` |
//! | bundle  | `f_j(i) -> i`      | `[0, alpha_j]`                                     |
//! | sink    | `i -> t`           | `[max(0, floor(n/k0) - |C_i|), ceil(n/k0) - |C_i|]` |
//!
//! Any equitable `k0`-coloring extending the partial coloring induces an
//! admissible flow of value `|U|`. When every part is a clique (`alpha = 1`),
//! the converse holds too and the flow decodes into such a coloring.

use std::fmt::Write as _;

use thiserror::Error;

use crate::coloring::{target_color_range, PartialColoring};
use crate::decomposition::{CliqueDecomposition, VertexPart};
use crate::maxflow::FlowGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcFamily {
    Source,
    Choice,
    Bundle,
    Sink,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetArc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub upper: i64,
    pub family: ArcFamily,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("target of {k0} colors is below the {span} colors already in use")]
    TooFewColors { k0: usize, span: usize },
    #[error("largest class has {largest} vertices but classes hold at most {cap}")]
    ClassTooLarge { largest: usize, cap: usize },
    #[error("target of {k0} colors outside [1, {n}]")]
    BadTarget { k0: usize, n: usize },
}

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    pub k0: usize,
    pub node_count: usize,
    pub arcs: Vec<NetArc>,
    /// Required flow value out of the source, `|U|`.
    pub value_target: i64,
    /// Graph vertex behind each uncolored-layer node, in node order.
    pub vertices: Vec<usize>,
    /// Part index of each entry of `vertices`.
    pub vertex_part: Vec<usize>,
    pub parts: Vec<VertexPart>,
}

impl FlowNetwork {
    pub const SOURCE: usize = 0;
    pub const SINK: usize = 1;

    pub fn vertex_node(&self, idx: usize) -> usize {
        2 + idx
    }

    /// Node `f_j(i)`: copy of color `i` belonging to part `j`.
    pub fn copy_node(&self, part: usize, color: usize) -> usize {
        2 + self.vertices.len() + part * self.k0 + color
    }

    pub fn color_node(&self, color: usize) -> usize {
        2 + self.vertices.len() + self.parts.len() * self.k0 + color
    }

    /// Layer membership of node `x`.
    pub fn node_kind(&self, x: usize) -> NodeKind {
        let u_end = 2 + self.vertices.len();
        let f_end = u_end + self.parts.len() * self.k0;
        match x {
            Self::SOURCE => NodeKind::Source,
            Self::SINK => NodeKind::Sink,
            _ if x < u_end => NodeKind::Vertex(x - 2),
            _ if x < f_end => {
                let off = x - u_end;
                NodeKind::Copy {
                    part: off / self.k0,
                    color: off % self.k0,
                }
            }
            _ => NodeKind::Color(x - f_end),
        }
    }

    /// One `tail head lower upper` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for a in &self.arcs {
            let _ = writeln!(out, "{} {} {} {}", a.tail, a.head, a.lower, a.upper);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Source,
    Sink,
    /// Index into [`FlowNetwork::vertices`].
    Vertex(usize),
    Copy {
        part: usize,
        color: usize,
    },
    Color(usize),
}

/// Outcome of [`feasible_flow`]: the witness holds one value per arc of the
/// network when feasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowResult {
    pub feasible: bool,
    pub flow: Option<Vec<i64>>,
}

pub fn build_network(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k0: usize,
) -> Result<FlowNetwork, NetworkError> {
    build_network_from_parts(pc, &decomp.parts(), k0)
}

/// Builds the network for arbitrary parts with stability bounds. The parts
/// must partition the uncolored vertices of `pc`.
pub fn build_network_from_parts(
    pc: &PartialColoring<'_>,
    parts: &[VertexPart],
    k0: usize,
) -> Result<FlowNetwork, NetworkError> {
    let n = pc.n();
    if k0 == 0 || k0 > n {
        return Err(NetworkError::BadTarget { k0, n });
    }
    if k0 < pc.color_span() {
        return Err(NetworkError::TooFewColors {
            k0,
            span: pc.color_span(),
        });
    }
    let cap = n.div_ceil(k0);
    if pc.max_class_size() > cap {
        return Err(NetworkError::ClassTooLarge {
            largest: pc.max_class_size(),
            cap,
        });
    }
    debug_assert_eq!(
        parts.iter().map(|p| p.vertices.len()).sum::<usize>(),
        pc.uncolored_count(),
        "parts must partition the uncolored vertices"
    );

    let mut net = FlowNetwork {
        k0,
        node_count: 0,
        arcs: Vec::new(),
        value_target: pc.uncolored_count() as i64,
        vertices: Vec::with_capacity(pc.uncolored_count()),
        vertex_part: Vec::with_capacity(pc.uncolored_count()),
        parts: parts.to_vec(),
    };
    for (j, part) in parts.iter().enumerate() {
        for &v in &part.vertices {
            debug_assert!(pc.color_of(v).is_none(), "vertex {v} is colored");
            net.vertices.push(v);
            net.vertex_part.push(j);
        }
    }
    net.node_count = 2 + net.vertices.len() + parts.len() * k0 + k0;

    for idx in 0..net.vertices.len() {
        net.arcs.push(NetArc {
            tail: FlowNetwork::SOURCE,
            head: net.vertex_node(idx),
            lower: 0,
            upper: 1,
            family: ArcFamily::Source,
        });
    }
    for idx in 0..net.vertices.len() {
        let (v, j) = (net.vertices[idx], net.vertex_part[idx]);
        for c in pc.free_colors(v, k0) {
            net.arcs.push(NetArc {
                tail: net.vertex_node(idx),
                head: net.copy_node(j, c),
                lower: 0,
                upper: 1,
                family: ArcFamily::Choice,
            });
        }
    }
    for (j, part) in parts.iter().enumerate() {
        for c in 0..k0 {
            net.arcs.push(NetArc {
                tail: net.copy_node(j, c),
                head: net.color_node(c),
                lower: 0,
                upper: part.alpha as i64,
                family: ArcFamily::Bundle,
            });
        }
    }
    let floor = (n / k0) as i64;
    for c in 0..k0 {
        let size = pc.class_size(c) as i64;
        net.arcs.push(NetArc {
            tail: net.color_node(c),
            head: FlowNetwork::SINK,
            lower: (floor - size).max(0),
            upper: cap as i64 - size,
            family: ArcFamily::Sink,
        });
    }
    Ok(net)
}

/// Decides whether `net` admits a flow within all arc bounds whose value
/// out of the source equals `net.value_target`.
///
/// Lower bounds are shifted into node excesses served from an auxiliary
/// source/sink pair, with an uncapacitated `t -> s` arc closing the
/// circulation. If that auxiliary flow saturates, the remaining `s -> t`
/// capacity is filled in the residual graph and the total compared against
/// the target.
pub fn feasible_flow(net: &FlowNetwork) -> FlowResult {
    let infeasible = FlowResult {
        feasible: false,
        flow: None,
    };
    let (s, t) = (FlowNetwork::SOURCE, FlowNetwork::SINK);
    let super_source = net.node_count;
    let super_sink = net.node_count + 1;
    let mut graph = FlowGraph::new(net.node_count + 2);
    let mut excess = vec![0i64; net.node_count];

    let mut ids = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        if a.lower > a.upper {
            return infeasible;
        }
        ids.push(graph.add_edge(a.tail, a.head, a.upper - a.lower));
        excess[a.head] += a.lower;
        excess[a.tail] -= a.lower;
    }
    let closing = graph.add_edge(t, s, i64::MAX / 4);
    let mut demand = 0;
    let mut auxiliary = Vec::new();
    for (x, &e) in excess.iter().enumerate() {
        if e > 0 {
            demand += e;
            auxiliary.push(graph.add_edge(super_source, x, e));
        } else if e < 0 {
            auxiliary.push(graph.add_edge(x, super_sink, -e));
        }
    }
    if graph.max_flow(super_source, super_sink) != demand {
        return infeasible;
    }
    for id in auxiliary {
        graph.disable(id);
    }
    let circulating = graph.disable(closing);
    let value = circulating + graph.max_flow(s, t);
    if value != net.value_target {
        return infeasible;
    }
    let flow = net
        .arcs
        .iter()
        .zip(&ids)
        .map(|(a, &id)| a.lower + graph.flow(id))
        .collect();
    FlowResult {
        feasible: true,
        flow: Some(flow),
    }
}

/// Checks bounds on every arc, conservation at every inner node and the
/// source value.
pub fn validate_flow(net: &FlowNetwork, flow: &[i64]) -> Result<(), String> {
    if flow.len() != net.arcs.len() {
        return Err(format!(
            "{} flow values for {} arcs",
            flow.len(),
            net.arcs.len()
        ));
    }
    let mut balance = vec![0i64; net.node_count];
    for (i, (a, &x)) in net.arcs.iter().zip(flow).enumerate() {
        if x < a.lower || x > a.upper {
            return Err(format!(
                "arc {i} ({} -> {}) carries {x} outside [{}, {}]",
                a.tail, a.head, a.lower, a.upper
            ));
        }
        balance[a.tail] -= x;
        balance[a.head] += x;
    }
    for (x, &b) in balance.iter().enumerate().skip(2) {
        if b != 0 {
            return Err(format!("node {x} has imbalance {b}"));
        }
    }
    let value = -balance[FlowNetwork::SOURCE];
    if value != net.value_target {
        return Err(format!("flow value {value}, expected {}", net.value_target));
    }
    Ok(())
}

/// Flow induced by a complete coloring extending the network's partial
/// coloring: one unit along the arc of each vertex's color, bundle and sink
/// arcs carrying the per-part and per-color counts.
pub fn flow_from_coloring(net: &FlowNetwork, colors: &[usize]) -> Vec<i64> {
    let mut per_copy = vec![0i64; net.parts.len() * net.k0];
    for (idx, &v) in net.vertices.iter().enumerate() {
        per_copy[net.vertex_part[idx] * net.k0 + colors[v]] += 1;
    }
    net.arcs
        .iter()
        .map(
            |a| match (a.family, net.node_kind(a.tail), net.node_kind(a.head)) {
                (ArcFamily::Source, _, _) => 1,
                (ArcFamily::Choice, NodeKind::Vertex(idx), NodeKind::Copy { color, .. }) => {
                    i64::from(colors[net.vertices[idx]] == color)
                }
                (ArcFamily::Bundle, NodeKind::Copy { part, color }, _) => {
                    per_copy[part * net.k0 + color]
                }
                (ArcFamily::Sink, NodeKind::Color(color), _) => (0..net.parts.len())
                    .map(|j| per_copy[j * net.k0 + color])
                    .sum(),
                _ => unreachable!("arc family does not match its endpoints"),
            },
        )
        .collect()
}

/// Reads off the color of each uncolored vertex from the unit choice arcs
/// of a feasible flow, as `(vertex, color)` pairs.
pub fn decode_coloring(net: &FlowNetwork, flow: &[i64]) -> Vec<(usize, usize)> {
    net.arcs
        .iter()
        .zip(flow)
        .filter(|(a, &x)| a.family == ArcFamily::Choice && x == 1)
        .map(
            |(a, _)| match (net.node_kind(a.tail), net.node_kind(a.head)) {
                (NodeKind::Vertex(idx), NodeKind::Copy { color, .. }) => (net.vertices[idx], color),
                _ => unreachable!(),
            },
        )
        .collect()
}

/// Whether the network for `k0` colors carries a flow of value `|U|`. A
/// largest class that cannot fit counts as infeasible.
pub fn extendable_by_flow(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k0: usize,
) -> bool {
    match build_network(pc, decomp, k0) {
        Ok(net) => feasible_flow(&net).feasible,
        Err(_) => false,
    }
}

/// Flow-based pruning: `true` iff no target color count between
/// `max(k_used, k_lower)` and `k_upper - 1` admits a feasible network.
pub fn flow_prune(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k_lower: usize,
    k_upper: usize,
) -> bool {
    flow_prune_counted(pc, decomp, k_lower, k_upper).0
}

/// [`flow_prune`] that also reports how many flow problems were solved.
pub fn flow_prune_counted(
    pc: &PartialColoring<'_>,
    decomp: &CliqueDecomposition,
    k_lower: usize,
    k_upper: usize,
) -> (bool, u64) {
    let mut solves = 0;
    for k0 in target_color_range(pc, k_lower, k_upper) {
        solves += 1;
        if extendable_by_flow(pc, decomp, k0) {
            return (false, solves);
        }
    }
    (true, solves)
}
