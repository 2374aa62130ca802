//! Bipartite map witnesses: countries `v1..` and points `u1..`, embedded in
//! the sphere. The half square on the countries is the map graph.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::certificate::{Certificate, Witness};
use crate::embedding::{
    is_crossing_augmented, validate_1planar, Crossing, OnePlanarEmbedding, Planarization,
};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::{edge_of, twin, RotationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("point u{0} has degree {1}; points need degree 2, 3 or 4")]
    PointDegree(usize, usize),
    #[error("point u{0} touches country v{1} twice")]
    RepeatedCountry(usize, usize),
    #[error("rotations of u{0} and v{1} disagree")]
    Mismatch(usize, usize),
    #[error("witness embedding is not planar")]
    NotPlanar,
    #[error("embedding is invalid: {0}")]
    InvalidEmbedding(String),
    #[error("crossing ({0},{1})x({2},{3}) is not surrounded by a kite; the half square would exceed the graph")]
    NotCrossingAugmented(usize, usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMapWitness {
    countries: usize,
    /// `points[i]` lists the countries around point `u(i+1)` in cyclic order.
    points: Vec<Vec<usize>>,
    /// `rot[j]` lists the points around country `v(j+1)` in cyclic order.
    rot: Vec<Vec<usize>>,
}

impl BipartiteMapWitness {
    pub fn new(
        countries: usize,
        points: Vec<Vec<usize>>,
        rot: Vec<Vec<usize>>,
    ) -> Result<Self, WitnessError> {
        for (i, p) in points.iter().enumerate() {
            if !(2..=4).contains(&p.len()) {
                return Err(WitnessError::PointDegree(i + 1, p.len()));
            }
            let distinct: BTreeSet<usize> = p.iter().copied().collect();
            if distinct.len() != p.len() {
                let v = *p
                    .iter()
                    .find(|&&v| p.iter().filter(|&&w| w == v).count() > 1)
                    .unwrap();
                return Err(WitnessError::RepeatedCountry(i + 1, v));
            }
        }
        for (i, p) in points.iter().enumerate() {
            for &v in p {
                if v == 0
                    || v > countries
                    || rot[v - 1].iter().filter(|&&u| u == i + 1).count() != 1
                {
                    return Err(WitnessError::Mismatch(i + 1, v));
                }
            }
        }
        for (j, r) in rot.iter().enumerate() {
            for &u in r {
                if u == 0 || u > points.len() || !points[u - 1].contains(&(j + 1)) {
                    return Err(WitnessError::Mismatch(u, j + 1));
                }
            }
        }
        let w = BipartiteMapWitness {
            countries,
            points,
            rot,
        };
        if !w.map().is_genus_zero() {
            return Err(WitnessError::NotPlanar);
        }
        Ok(w)
    }

    pub fn country_count(&self) -> usize {
        self.countries
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point_rotations(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn country_rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    /// Combined rotation system: countries are `1..=V`, point `u_i` is `V + i`.
    pub fn map(&self) -> RotationSystem {
        let nv = self.countries;
        let mut lists: Vec<Vec<usize>> = self
            .rot
            .iter()
            .map(|r| r.iter().map(|&u| nv + u).collect())
            .collect();
        lists.extend(self.points.iter().cloned());
        RotationSystem::from_neighbor_lists(&lists).expect("witness rotations are consistent")
    }
}

pub fn half_square(b: &BipartiteMapWitness) -> SimpleGraph {
    let mut g = SimpleGraph::empty(b.countries);
    let mut edges = BTreeSet::new();
    for p in &b.points {
        for (i, &x) in p.iter().enumerate() {
            for &y in &p[i + 1..] {
                edges.insert(normalize(x, y));
            }
        }
    }
    for (x, y) in edges {
        g.try_add_edge(x, y).unwrap();
    }
    g
}

pub fn max_point_degree(b: &BipartiteMapWitness) -> usize {
    b.points.iter().map(Vec::len).max().unwrap_or(0)
}

/// Subdivides every planar edge with a degree-2 point and turns every
/// crossing into a degree-4 point.
pub fn embedding_to_witness(e: &OnePlanarEmbedding) -> Result<BipartiteMapWitness, WitnessError> {
    let cert = validate_1planar(e);
    if !cert.is_accept() {
        let v = &cert.violations[0];
        return Err(WitnessError::InvalidEmbedding(format!(
            "{} {}",
            v.rule, v.location
        )));
    }
    if let Some(c) = e.crossings().iter().find(|c| {
        c.kite_pairs()
            .iter()
            .any(|&(x, y)| !e.graph().has_edge(x, y))
    }) {
        return Err(WitnessError::NotCrossingAugmented(
            c.first.0, c.first.1, c.second.0, c.second.1,
        ));
    }
    debug_assert!(is_crossing_augmented(e).is_accept());
    let p = e
        .planarize()
        .map_err(|x| WitnessError::InvalidEmbedding(x.to_string()))?;
    Ok(planarization_to_witness(&p))
}

/// Same construction on a planarization that may hold parallel copies;
/// each copy gets its own degree-2 point.
pub(crate) fn planarization_to_witness(p: &Planarization) -> BipartiteMapWitness {
    let n = p.n;
    let map = &p.map;
    let mut point_of_edge = vec![usize::MAX; map.edge_slots()];
    let mut point_of_dummy = vec![usize::MAX; map.vertex_count() + 1];
    let mut points: Vec<Vec<usize>> = Vec::new();
    let mut planar: Vec<(Edge, usize)> = map
        .live_edges()
        .filter(|&e| map.ends(e).iter().all(|&v| v <= n))
        .map(|e| {
            let [a, b] = map.ends(e);
            (normalize(a, b), e)
        })
        .collect();
    planar.sort();
    for ((a, b), e) in planar {
        points.push(vec![a, b]);
        point_of_edge[e] = points.len();
    }
    for x in p.live_dummies() {
        points.push(map.rotation(x).iter().map(|&d| map.head(d)).collect());
        point_of_dummy[x] = points.len();
    }
    let rot = (1..=n)
        .map(|v| {
            map.rotation(v)
                .iter()
                .map(|&d| {
                    let w = map.head(d);
                    if w <= n {
                        point_of_edge[edge_of(d)]
                    } else {
                        point_of_dummy[w]
                    }
                })
                .collect()
        })
        .collect();
    BipartiteMapWitness::new(n, points, rot).expect("planarization yields a valid witness")
}

/// Rebuilds a crossing-augmented 1-planar embedding of the half square.
///
/// Degree-2 points become planar edges. A degree-4 point becomes a crossing
/// when neither of its diagonals is drawn elsewhere; if one is, the other is
/// routed planar through the point. Missing side edges of degree-3 and
/// degree-4 points are drawn next to the point.
pub fn witness_to_embedding(b: &BipartiteMapWitness) -> OnePlanarEmbedding {
    let nv = b.countries;
    let target = half_square(b);
    let mut map = b.map();
    let mut drawn: BTreeSet<Edge> = BTreeSet::new();
    let point = |i: usize| nv + i + 1;

    for (i, p) in b.points.iter().enumerate() {
        if p.len() != 2 {
            continue;
        }
        let e = normalize(p[0], p[1]);
        let u = point(i);
        if drawn.insert(e) {
            map.smooth(u);
        } else {
            for d in map.rotation(u).to_vec() {
                map.remove_edge(edge_of(d));
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Fate {
        Cross,
        Route(usize, usize),
        Drop,
    }
    let mut fate = vec![Fate::Drop; b.points.len()];
    for (i, p) in b.points.iter().enumerate() {
        if p.len() != 4 {
            continue;
        }
        let d1 = normalize(p[0], p[2]);
        let d2 = normalize(p[1], p[3]);
        fate[i] = match (drawn.contains(&d1), drawn.contains(&d2)) {
            (false, false) => {
                drawn.insert(d1);
                drawn.insert(d2);
                Fate::Cross
            }
            (true, false) => {
                drawn.insert(d2);
                Fate::Route(1, 3)
            }
            (false, true) => {
                drawn.insert(d1);
                Fate::Route(0, 2)
            }
            (true, true) => Fate::Drop,
        };
    }

    for (i, p) in b.points.iter().enumerate() {
        if p.len() < 3 {
            continue;
        }
        let u = point(i);
        for d in map.rotation(u).to_vec() {
            let x = map.head(d);
            let y = map.head(map.succ(d));
            if drawn.insert(normalize(x, y)) {
                map.insert_beside(d);
            }
        }
    }

    let mut pl = Planarization::empty(nv);
    pl.crossing_at = vec![None; map.vertex_count() + 1];
    for (i, p) in b.points.iter().enumerate() {
        let u = point(i);
        match (p.len(), fate[i]) {
            (4, Fate::Cross) => {
                pl.crossing_at[u] = Some(Crossing::new((p[0], p[2]), (p[1], p[3]), false));
            }
            (4, Fate::Route(s, t)) => {
                let keep = [p[s], p[t]];
                for d in map.rotation(u).to_vec() {
                    if !keep.contains(&map.head(d)) {
                        map.remove_edge(edge_of(d));
                    }
                }
                map.smooth(u);
            }
            (3, _) | (4, Fate::Drop) => {
                for d in map.rotation(u).to_vec() {
                    map.remove_edge(edge_of(d));
                }
            }
            _ => {}
        }
    }
    pl.origin = vec![(0, 0); map.edge_slots()];
    pl.copy = vec![false; map.edge_slots()];
    pl.map = map;
    let emb = pl.to_embedding(&target);
    debug_assert!(
        validate_1planar(&emb).is_accept(),
        "{:?}",
        validate_1planar(&emb)
    );
    emb
}

/// Every face of the witness has length 4 or 6.
pub fn is_hole_free(b: &BipartiteMapWitness) -> Certificate {
    let map = b.map();
    let nv = b.countries;
    for face in map.trace_faces() {
        if face.len() != 4 && face.len() != 6 {
            let labels: Vec<String> = map
                .face_vertices(&face)
                .into_iter()
                .map(|v| {
                    if v <= nv {
                        format!("v{v}")
                    } else {
                        format!("u{}", v - nv)
                    }
                })
                .collect();
            return Certificate::reject()
                .violation(
                    "face-length",
                    format!("{} [{}]", face.len(), labels.join(" ")),
                )
                .with_witness(Witness::Map(b.clone()));
        }
    }
    Certificate::accept()
}

/// Witness whose points are the faces of a planar embedding: each face
/// becomes a point touching the countries on its boundary.
pub fn face_witness(e: &OnePlanarEmbedding) -> Result<BipartiteMapWitness, WitnessError> {
    if e.crossing_count() > 0 {
        return Err(WitnessError::InvalidEmbedding(
            "face witness needs a planar embedding".into(),
        ));
    }
    let p = e
        .planarize()
        .map_err(|x| WitnessError::InvalidEmbedding(x.to_string()))?;
    let map = &p.map;
    let faces = map.trace_faces();
    let (id, _) = map.face_ids();
    let mut index = vec![0; faces.len()];
    let mut points = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        index[id[f.0[0]]] = i + 1;
        let mut around = map.face_vertices(f);
        around.reverse();
        points.push(around);
    }
    let rot = (1..=e.n())
        .map(|v| {
            map.rotation(v)
                .iter()
                .map(|&d| index[id[twin(d)]])
                .collect()
        })
        .collect();
    BipartiteMapWitness::new(e.n(), points, rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pizza() -> BipartiteMapWitness {
        BipartiteMapWitness::new(4, vec![vec![1, 2, 3, 4]], vec![vec![1]; 4]).unwrap()
    }

    #[test]
    fn half_square_examples() {
        let path = BipartiteMapWitness::new(2, vec![vec![1, 2]], vec![vec![1], vec![1]]).unwrap();
        assert_eq!(half_square(&path), SimpleGraph::new(2, [(1, 2)]).unwrap());
        assert_eq!(half_square(&pizza()), SimpleGraph::complete(4));
        let double = BipartiteMapWitness::new(
            2,
            vec![vec![1, 2], vec![1, 2]],
            vec![vec![1, 2], vec![2, 1]],
        )
        .unwrap();
        assert_eq!(half_square(&double).m(), 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(max_point_degree(&pizza()), 4);
        let rice = face_witness(&fixtures::tetrahedron()).unwrap();
        assert_eq!(max_point_degree(&rice), 3);
        assert_eq!(half_square(&rice), SimpleGraph::complete(4));
        let w = embedding_to_witness(&fixtures::tetrahedron()).unwrap();
        assert_eq!(max_point_degree(&w), 2);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            BipartiteMapWitness::new(1, vec![vec![1]], vec![vec![1]]),
            Err(WitnessError::PointDegree(1, 1))
        );
        assert!(matches!(
            BipartiteMapWitness::new(2, vec![vec![1, 2]], vec![vec![1], vec![]]),
            Err(WitnessError::Mismatch(1, 2))
        ));
    }

    #[test]
    fn kite_witness() {
        let w = embedding_to_witness(&fixtures::kite()).unwrap();
        let mut degs: Vec<usize> = w.point_rotations().iter().map(Vec::len).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2, 2, 2, 4]);
        assert_eq!(half_square(&w), SimpleGraph::complete(4));
        let c = is_hole_free(&w);
        assert!(c.is_reject());
        assert!(c.violations[0].location.starts_with("8 "));
    }

    #[test]
    fn bare_cross_rejected() {
        assert!(matches!(
            embedding_to_witness(&fixtures::bare_cross()),
            Err(WitnessError::NotCrossingAugmented(..))
        ));
    }

    #[test]
    fn tetrahedron_is_hole_free() {
        let w = embedding_to_witness(&fixtures::tetrahedron()).unwrap();
        assert_eq!(w.point_count(), 6);
        assert!(is_hole_free(&w).is_accept());
    }

    #[test]
    fn back_to_embeddings() {
        let k = witness_to_embedding(&pizza());
        assert!(validate_1planar(&k).is_accept());
        assert_eq!(k.crossing_count(), 1);
        assert_eq!(k.graph(), &SimpleGraph::complete(4));
        let tri = BipartiteMapWitness::new(3, vec![vec![1, 2, 3]], vec![vec![1]; 3]).unwrap();
        let t = witness_to_embedding(&tri);
        assert_eq!(t.graph(), &SimpleGraph::cycle(3));
        assert_eq!(t.crossing_count(), 0);
        assert!(validate_1planar(&t).is_accept());
        for e in [fixtures::kite(), fixtures::k5(), fixtures::tetrahedron()] {
            let back = witness_to_embedding(&embedding_to_witness(&e).unwrap());
            assert!(validate_1planar(&back).is_accept());
            assert_eq!(back.graph(), e.graph());
            assert_eq!(back.crossing_count(), e.crossing_count());
        }
    }
}
