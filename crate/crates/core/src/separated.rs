//! Separated embeddings: parallel copies of `(u, v)` between consecutive
//! components at each separation pair, and the fully-triangulated test.

use crate::certificate::{Certificate, Witness};
use crate::embedding::{validate_1planar, EmbeddingError, OnePlanarEmbedding, Planarization};
use crate::graph::{normalize, Edge};
use crate::rotation::{edge_of, twin, Dart};
use crate::witness::{planarization_to_witness, BipartiteMapWitness};

const UV: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct SeparatedEmbedding {
    pub base: OnePlanarEmbedding,
    pub planarization: Planarization,
    /// The separation pair behind each added copy, in insertion order.
    pub copies: Vec<Edge>,
}

impl SeparatedEmbedding {
    pub fn copy_count(&self) -> usize {
        self.copies.len()
    }

    /// Drops the copies again.
    pub fn recover(&self) -> OnePlanarEmbedding {
        self.planarization.to_embedding(self.base.graph())
    }

    /// Witness of the planarization with every parallel copy kept as its
    /// own degree-2 point.
    pub fn flattened_witness(&self) -> BipartiteMapWitness {
        planarization_to_witness(&self.planarization)
    }
}

/// Component class of a dart leaving `u` or `v`: the component of the far
/// original endpoint, or `UV` for the edge `uv` and its copies.
fn class_of(p: &Planarization, d: Dart, comp: &[usize]) -> usize {
    let tail = p.map.tail(d);
    let (a, b) = p.origin[edge_of(d)];
    let other = if a == tail { b } else { a };
    comp[other]
}

pub fn separated_embedding(e: &OnePlanarEmbedding) -> Result<SeparatedEmbedding, EmbeddingError> {
    separate(e, None)
}

/// `protect` names a dart whose face must not be split.
pub(crate) fn separate(
    e: &OnePlanarEmbedding,
    protect: Option<Dart>,
) -> Result<SeparatedEmbedding, EmbeddingError> {
    let g = e.graph();
    let pairs = g
        .separation_pairs()
        .map_err(|_| EmbeddingError::NotBiconnected)?;
    let mut p = e.planarize()?;
    let mut copies = Vec::new();
    for pair in pairs {
        let (u, v) = (pair.u, pair.v);
        if !g.has_edge(u, v) {
            continue;
        }
        let mut comp = vec![0; g.n() + 1];
        for (i, c) in pair.components.iter().enumerate() {
            for &w in c {
                comp[w] = i;
            }
        }
        comp[u] = UV;
        comp[v] = UV;
        while let Some((du, dv)) = next_split(&p, u, v, &comp, protect) {
            p.add_edge(u, Some(du), v, Some(dv), normalize(u, v), true);
            copies.push(normalize(u, v));
        }
    }
    Ok(SeparatedEmbedding {
        base: e.clone(),
        planarization: p,
        copies,
    })
}

/// Finds a corner at `u` between darts of two different components and the
/// first corner at `v` along the same face where the classes change back.
fn next_split(
    p: &Planarization,
    u: usize,
    v: usize,
    comp: &[usize],
    protect: Option<Dart>,
) -> Option<(Dart, Dart)> {
    let protected = protect.map(|d| {
        let (id, _) = p.map.face_ids();
        id[d]
    });
    let (id, _) = p.map.face_ids();
    for &d in p.map.rotation(u) {
        let s = p.map.succ(d);
        let (cd, cs) = (class_of(p, d, comp), class_of(p, s, comp));
        if cd == cs || cd == UV || cs == UV || Some(id[s]) == protected {
            continue;
        }
        let mut x = s;
        loop {
            let arrive = x;
            x = p.map.face_next(x);
            if x == s {
                break;
            }
            if p.map.tail(x) == v {
                let back = twin(arrive);
                let (ca, cx) = (class_of(p, back, comp), class_of(p, x, comp));
                if ca != cx && ca != UV && cx != UV {
                    return Some((d, back));
                }
            }
        }
    }
    None
}

/// Every face of the separated planarization is a triangle. Inputs must be
/// 2-connected.
pub fn is_fully_triangulated(e: &OnePlanarEmbedding) -> Certificate {
    let cert = validate_1planar(e);
    if !cert.is_accept() {
        return cert;
    }
    if !e.graph().is_biconnected() {
        return Certificate::reject().violation(
            "not-2-connected",
            "fully triangulated needs a 2-connected graph",
        );
    }
    match separated_embedding(e) {
        Err(err) => Certificate::reject().violation("invalid", err.to_string()),
        Ok(s) => first_non_triangle(&s.planarization).map_or_else(
            || Certificate::accept().note("copies", s.copy_count().to_string()),
            |face| {
                Certificate::reject()
                    .violation("face-length", format!("{} {:?}", face.len(), face))
                    .with_witness(Witness::Face(face))
            },
        ),
    }
}

pub(crate) fn first_non_triangle(p: &Planarization) -> Option<Vec<usize>> {
    p.map
        .trace_faces()
        .into_iter()
        .find(|f| f.len() != 3)
        .map(|f| p.map.face_vertices(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn three_connected_unchanged() {
        let t = fixtures::tetrahedron();
        let s = separated_embedding(&t).unwrap();
        assert_eq!(s.copy_count(), 0);
        assert_eq!(s.recover(), t);
        assert!(is_fully_triangulated(&t).is_accept());
    }

    #[test]
    fn kite_alone_not_triangulated() {
        let c = is_fully_triangulated(&fixtures::kite());
        assert!(c.is_reject());
        assert!(c.violations[0].location.starts_with("4 "));
    }

    #[test]
    fn two_tetrahedra_share_an_edge() {
        // Vertices 1, 2 shared; 3, 4 on one side and 5, 6 on the other.
        let e = fixtures::from_drawing(
            6,
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (1, 5),
                (1, 6),
                (2, 5),
                (2, 6),
                (5, 6),
            ],
            &[],
            &[
                (0.0, 3.0),
                (0.0, -3.0),
                (-1.0, 0.0),
                (-3.0, 0.0),
                (1.0, 0.0),
                (3.0, 0.0),
            ],
        );
        assert!(validate_1planar(&e).is_accept());
        let s = separated_embedding(&e).unwrap();
        assert_eq!(s.copy_count(), 1);
        assert_eq!(s.recover(), e);
        assert!(is_fully_triangulated(&e).is_accept());
    }
}
