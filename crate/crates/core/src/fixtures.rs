//! Small hand-drawn embeddings used throughout tests and the CLI.
//!
//! Each fixture is given by coordinates; rotations come from sorting the
//! neighbors of every planarization vertex by angle.

use crate::embedding::{Crossing, OnePlanarEmbedding};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::cyclic_eq;

/// Builds an embedding from a drawing. `coords[v - 1]` positions vertex `v`
/// for `v = 1..=n`, followed by one point per entry of `crossings`.
pub fn from_drawing(
    n: usize,
    edges: &[Edge],
    crossings: &[(Edge, Edge)],
    coords: &[(f64, f64)],
) -> OnePlanarEmbedding {
    let g = SimpleGraph::new(n, edges.iter().copied()).expect("fixture graph");
    let k = crossings.len();
    assert_eq!(
        coords.len(),
        n + k,
        "one coordinate per planarization vertex"
    );
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n + k + 1];
    let mut via = std::collections::BTreeMap::new();
    for (i, (e, f)) in crossings.iter().enumerate() {
        via.insert(normalize(e.0, e.1), n + i + 1);
        via.insert(normalize(f.0, f.1), n + i + 1);
    }
    for (u, v) in g.edges() {
        match via.get(&(u, v)) {
            Some(&x) => {
                nbrs[u].push(x);
                nbrs[v].push(x);
                nbrs[x].push(u);
                nbrs[x].push(v);
            }
            None => {
                nbrs[u].push(v);
                nbrs[v].push(u);
            }
        }
    }
    let angle = |v: usize, w: usize| {
        let (x0, y0) = coords[v - 1];
        let (x1, y1) = coords[w - 1];
        (y1 - y0).atan2(x1 - x0)
    };
    let rotation: Vec<Vec<usize>> = (1..=n + k)
        .map(|v| {
            let mut l = nbrs[v].clone();
            l.sort_by(|&a, &b| angle(v, a).partial_cmp(&angle(v, b)).unwrap());
            l
        })
        .collect();
    let crossings = crossings
        .iter()
        .enumerate()
        .map(|(i, &(e, f))| {
            let plain = Crossing::new(e, f, false);
            let flag = !cyclic_eq(&rotation[n + i], &plain.around());
            Crossing::new(e, f, flag)
        })
        .collect();
    OnePlanarEmbedding::from_parts(g, crossings, rotation)
}

/// `K4` drawn without crossings.
pub fn tetrahedron() -> OnePlanarEmbedding {
    from_drawing(
        4,
        &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        &[],
        &[(0.0, 0.0), (0.0, 3.0), (-3.0, -2.0), (3.0, -2.0)],
    )
}

const SQUARE: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)];

/// `K4` drawn as a square with crossing diagonals `13 x 24`.
pub fn kite() -> OnePlanarEmbedding {
    from_drawing(
        4,
        &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4)],
        &[((1, 3), (2, 4))],
        &SQUARE,
    )
}

/// Two crossing edges and nothing else.
pub fn bare_cross() -> OnePlanarEmbedding {
    from_drawing(4, &[(1, 3), (2, 4)], &[((1, 3), (2, 4))], &SQUARE)
}

const K5_COORDS: [(f64, f64); 6] = [
    (0.0, 1.0),
    (5.0, -3.0),
    (-2.0, 0.0),
    (2.0, 0.0),
    (0.0, 3.0),
    (1.25, 0.0),
];

/// `K5` with the single crossing `12 x 34`.
pub fn k5() -> OnePlanarEmbedding {
    let edges: Vec<Edge> = SimpleGraph::complete(5).edges().collect();
    from_drawing(5, &edges, &[((1, 2), (3, 4))], &K5_COORDS)
}

/// `K5` minus the edge `12`, drawn planar.
pub fn k5_minus_edge() -> OnePlanarEmbedding {
    let edges: Vec<Edge> = SimpleGraph::complete(5)
        .without_edge(1, 2)
        .edges()
        .collect();
    from_drawing(5, &edges, &[], &K5_COORDS[..5])
}

/// Closed configuration around the edge `ab = 12`: `a` and `b` are both
/// enclosed by crossing pairs, so removing `ab` exposes only crossing points.
pub fn w_configuration() -> OnePlanarEmbedding {
    from_drawing(
        6,
        &[
            (1, 2),
            (1, 3),
            (2, 4),
            (1, 5),
            (2, 6),
            (3, 5),
            (4, 6),
            (3, 4),
            (5, 6),
        ],
        &[((1, 3), (2, 4)), ((1, 5), (2, 6))],
        &[
            (-1.0, 0.0),
            (1.0, 0.0),
            (2.0, -2.0),
            (-2.0, -2.0),
            (2.0, 2.0),
            (-2.0, 2.0),
            (0.0, -2.0 / 3.0),
            (0.0, 2.0 / 3.0),
        ],
    )
}

/// Edge `ab = 12` closed below by the crossing `13 x 24` and open above.
pub fn b_configuration() -> OnePlanarEmbedding {
    from_drawing(
        4,
        &[(1, 2), (1, 3), (2, 4), (3, 4), (2, 3)],
        &[((1, 3), (2, 4))],
        &[
            (-1.0, 0.0),
            (1.0, 0.0),
            (1.0, -2.0),
            (-1.0, -2.0),
            (0.0, -1.0),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_1planar;

    #[test]
    fn all_fixtures_validate() {
        for (name, e) in [
            ("tetrahedron", tetrahedron()),
            ("kite", kite()),
            ("bare", bare_cross()),
            ("k5", k5()),
            ("k5-e", k5_minus_edge()),
            ("w", w_configuration()),
            ("b", b_configuration()),
        ] {
            let c = validate_1planar(&e);
            assert!(c.is_accept(), "{name}: {:?}", c.violations);
        }
    }
}
