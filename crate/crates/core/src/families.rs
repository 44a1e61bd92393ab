//! Deterministic graph families: small textbook graphs plus generators for
//! the Mycielski, queen, insertion and full-insertion benchmark series.

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// Star on `k` vertices: center 0 joined to leaves `1..k`.
pub fn star(k: usize) -> Graph {
    assert!(k >= 1);
    Graph::from_edges(k, (1..k).map(|l| (0, l))).unwrap()
}

/// Mycielskian of `g`: vertex `n + i` copies the neighborhood of `i`, and
/// vertex `2n` is joined to every copy.
pub fn mycielskian(g: &Graph) -> Graph {
    generalized_mycielskian(g, 1)
}

/// Generalized Mycielskian with `layers` copies of the vertex set. Layer 0 is
/// `g`; vertex `i` of layer `l` is joined to the neighbors of `i` in layers
/// `l - 1` and `l + 1`; a final vertex is joined to the whole last layer.
pub fn generalized_mycielskian(g: &Graph, layers: usize) -> Graph {
    assert!(layers >= 1);
    let n = g.n();
    let apex = (layers + 1) * n;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for l in 0..layers {
        for (a, b) in g.edges() {
            edges.push((l * n + a, (l + 1) * n + b));
            edges.push((l * n + b, (l + 1) * n + a));
        }
    }
    edges.extend((0..n).map(|i| (layers * n + i, apex)));
    Graph::from_edges(apex + 1, edges).unwrap()
}

/// Layered construction with one apex per layer: the apexes form a clique
/// and apex `l` is joined to every vertex of layer `l`.
pub fn full_insertion(g: &Graph, layers: usize) -> Graph {
    assert!(layers >= 1);
    let n = g.n();
    let base = (layers + 1) * n;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for l in 0..layers {
        for (a, b) in g.edges() {
            edges.push((l * n + a, (l + 1) * n + b));
            edges.push((l * n + b, (l + 1) * n + a));
        }
    }
    for l in 0..=layers {
        edges.extend((0..n).map(|i| (l * n + i, base + l)));
        edges.extend((l + 1..=layers).map(|m| (base + l, base + m)));
    }
    Graph::from_edges(base + layers + 1, edges).unwrap()
}

/// The 5-cycle numbered as in the DIMACS Mycielski series.
fn mycielski_base() -> Graph {
    Graph::from_edges(5, [(0, 1), (0, 3), (1, 2), (2, 4), (3, 4)]).unwrap()
}

/// DIMACS `myciel<order>`: `myciel3` has 11 vertices, each step doubles plus one.
pub fn myciel(order: usize) -> Graph {
    assert!(order >= 2);
    (2..order).fold(mycielski_base(), |g, _| mycielskian(&g))
}

/// `<k>-Insertions_<order>`: `order - 1` generalized Mycielski steps with
/// `k + 1` layers, starting from an edge.
pub fn insertions(k: usize, order: usize) -> Graph {
    assert!(k >= 1 && order >= 1);
    (1..order).fold(complete(2), |g, _| generalized_mycielskian(&g, k + 1))
}

/// `<k>-FullIns_<order>`: like [`insertions`] but with one apex per layer.
pub fn full_ins(k: usize, order: usize) -> Graph {
    assert!(k >= 1 && order >= 1);
    (1..order).fold(complete(2), |g, _| full_insertion(&g, k + 1))
}

/// Queen graph on a `rows x cols` board, squares numbered row-major.
pub fn queen(rows: usize, cols: usize) -> Graph {
    let n = rows * cols;
    let mut edges = Vec::new();
    for a in 0..n {
        let (ra, ca) = ((a / cols) as isize, (a % cols) as isize);
        for b in a + 1..n {
            let (rb, cb) = ((b / cols) as isize, (b % cols) as isize);
            if ra == rb || ca == cb || (ra - rb).abs() == (ca - cb).abs() {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Builds a benchmark graph from its DIMACS-style name, e.g. `myciel4`,
/// `queen6_6`, `2-Insertions_3`, `1-FullIns_3`.
pub fn by_name(name: &str) -> Option<Graph> {
    let name = name.trim_end_matches(".col");
    if let Some(order) = name.strip_prefix("myciel") {
        return order.parse().ok().filter(|&o| o >= 2).map(myciel);
    }
    if let Some(dims) = name.strip_prefix("queen") {
        let (r, c) = dims.split_once('_')?;
        return Some(queen(r.parse().ok()?, c.parse().ok()?));
    }
    let (k, rest) = name.split_once('-')?;
    let k: usize = k.parse().ok().filter(|&k| k >= 1)?;
    if let Some(order) = rest.strip_prefix("Insertions_") {
        return order
            .parse()
            .ok()
            .filter(|&o| o >= 1)
            .map(|o| insertions(k, o));
    }
    if let Some(order) = rest.strip_prefix("FullIns_") {
        return order
            .parse()
            .ok()
            .filter(|&o| o >= 1)
            .map(|o| full_ins(k, o));
    }
    None
}

/// Twelve vertices: vertex 0 joined to vertices 1..=5, plus the disjoint
/// triangles {6, 7, 8} and {9, 10, 11}. Has an equitable 4-coloring but no
/// equitable 3-coloring, since the class of vertex 0 can take at most one
/// vertex per triangle.
pub fn mixed_example() -> Graph {
    Graph::from_edges(
        12,
        [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (6, 7),
            (7, 8),
            (6, 8),
            (9, 10),
            (10, 11),
            (9, 11),
        ],
    )
    .unwrap()
}

/// Eight vertices; with classes {0, 4, 5}, {1}, {2}, {3} colored and
/// {6, 7} left, the classes cannot all be filled to size two.
pub fn unfillable_example() -> Graph {
    Graph::from_edges(
        8,
        [
            (0, 1),
            (1, 3),
            (3, 2),
            (2, 0),
            (2, 4),
            (3, 4),
            (5, 1),
            (6, 3),
            (7, 4),
            (5, 6),
            (7, 6),
        ],
    )
    .unwrap()
}
