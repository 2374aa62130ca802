//! 1-planar embeddings, their planarizations, and the embedding-level
//! class validators.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::certificate::{Certificate, Witness};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::{cyclic_eq, edge_of, twin, Dart, RotationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid embedding: {0}")]
    Invalid(String),
    #[error("embedding is not crossing-augmented: crossing {0:?} x {1:?} lacks edge {2:?}")]
    NotCrossingAugmented(Edge, Edge, Edge),
    #[error("edge ({0},{1}) is crossed")]
    EdgeCrossed(usize, usize),
    #[error("edge ({0},{1}) is not in the graph")]
    NoSuchEdge(usize, usize),
    #[error("graph is not 2-connected")]
    NotBiconnected,
}

/// One crossing between edges `first = (a, b)` and `second = (c, d)`.
///
/// Around the crossing point the segments alternate: `a, c, b, d` when
/// `flag` is false and `a, d, b, c` when it is true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub first: Edge,
    pub second: Edge,
    pub flag: bool,
}

impl Crossing {
    pub fn new(first: Edge, second: Edge, flag: bool) -> Self {
        Crossing {
            first,
            second,
            flag,
        }
    }

    /// Cyclic order of the four endpoints around the crossing point.
    pub fn around(&self) -> [usize; 4] {
        let (a, b) = self.first;
        let (c, d) = self.second;
        if self.flag {
            [a, d, b, c]
        } else {
            [a, c, b, d]
        }
    }

    pub fn endpoints(&self) -> [usize; 4] {
        [self.first.0, self.first.1, self.second.0, self.second.1]
    }

    /// The four quadrilateral ("kite") pairs: consecutive entries of `around`.
    pub fn kite_pairs(&self) -> [Edge; 4] {
        let r = self.around();
        [0, 1, 2, 3].map(|i| normalize(r[i], r[(i + 1) % 4]))
    }

    /// Canonical orientation: both edges normalized and `first < second`,
    /// with the flag adjusted so the cyclic order around the point is kept.
    pub fn canonical(&self) -> Crossing {
        let around = self.around();
        let (e1, e2) = {
            let a = normalize(self.first.0, self.first.1);
            let b = normalize(self.second.0, self.second.1);
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let flag = !cyclic_eq(&around, &Crossing::new(e1, e2, false).around());
        Crossing::new(e1, e2, flag)
    }
}

/// A graph together with its crossings and the rotation system of its
/// planarization. Crossing `i` (0-based) is the dummy vertex `n + i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePlanarEmbedding {
    graph: SimpleGraph,
    crossings: Vec<Crossing>,
    /// `rotation[v - 1]` is the cyclic neighbor list of planarization vertex `v`.
    rotation: Vec<Vec<usize>>,
}

impl OnePlanarEmbedding {
    /// Assembles an embedding without checking it; see [`validate_1planar`].
    pub fn from_parts(
        graph: SimpleGraph,
        crossings: Vec<Crossing>,
        rotation: Vec<Vec<usize>>,
    ) -> Self {
        OnePlanarEmbedding {
            graph,
            crossings,
            rotation,
        }
    }

    /// A crossing-free embedding from cyclic neighbor lists.
    pub fn planar(graph: SimpleGraph, rotation: Vec<Vec<usize>>) -> Self {
        Self::from_parts(graph, Vec::new(), rotation)
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn dummy(&self, i: usize) -> usize {
        self.graph.n() + i + 1
    }

    /// Edges that take part in some crossing.
    pub fn crossed_edges(&self) -> BTreeSet<Edge> {
        self.crossings
            .iter()
            .flat_map(|c| {
                [
                    normalize(c.first.0, c.first.1),
                    normalize(c.second.0, c.second.1),
                ]
            })
            .collect()
    }

    pub fn is_crossed(&self, u: usize, v: usize) -> bool {
        self.crossed_edges().contains(&normalize(u, v))
    }

    /// Planarization as a dart map. Fails on structurally broken input.
    pub fn planarize(&self) -> Result<Planarization, EmbeddingError> {
        let n = self.n();
        let k = self.crossings.len();
        if self.rotation.len() != n + k {
            return Err(EmbeddingError::Invalid(format!(
                "expected {} rotation lines, found {}",
                n + k,
                self.rotation.len()
            )));
        }
        let map = RotationSystem::from_neighbor_lists(&self.rotation)
            .map_err(|e| EmbeddingError::Invalid(e.to_string()))?;
        let mut crossing_at = vec![None; n + k + 1];
        for (i, c) in self.crossings.iter().enumerate() {
            crossing_at[n + i + 1] = Some(*c);
        }
        let mut origin = Vec::with_capacity(map.edge_slots());
        for e in 0..map.edge_slots() {
            let [u, w] = map.ends(e);
            let o = match (crossing_at[u], crossing_at[w]) {
                (None, None) => normalize(u, w),
                (Some(c), None) | (None, Some(c)) => {
                    let end = if u <= n { u } else { w };
                    if c.first.0 == end || c.first.1 == end {
                        normalize(c.first.0, c.first.1)
                    } else {
                        normalize(c.second.0, c.second.1)
                    }
                }
                (Some(_), Some(_)) => {
                    return Err(EmbeddingError::Invalid(format!(
                        "dummies {u} and {w} adjacent"
                    )));
                }
            };
            origin.push(o);
        }
        let copy = vec![false; origin.len()];
        Ok(Planarization {
            n,
            map,
            origin,
            copy,
            crossing_at,
        })
    }
}

/// Planarization of an embedding: original vertices `1..=n`, crossing
/// points above `n`. Each map edge remembers the graph edge it is part of.
#[derive(Debug, Clone)]
pub struct Planarization {
    pub n: usize,
    pub map: RotationSystem,
    pub origin: Vec<Edge>,
    /// Marks parallel copies added by the separated embedding.
    pub copy: Vec<bool>,
    pub crossing_at: Vec<Option<Crossing>>,
}

impl Planarization {
    pub fn empty(n: usize) -> Self {
        Planarization {
            n,
            map: RotationSystem::with_vertices(n),
            origin: Vec::new(),
            copy: Vec::new(),
            crossing_at: vec![None; n + 1],
        }
    }

    pub fn is_original(&self, v: usize) -> bool {
        v <= self.n
    }

    /// Original vertices appearing on a face, in face order, without repeats.
    pub fn original_vertices_of(&self, darts: &[Dart]) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        darts
            .iter()
            .map(|&d| self.map.tail(d))
            .filter(|&v| self.is_original(v) && seen.insert(v))
            .collect()
    }

    pub fn add_edge(
        &mut self,
        u: usize,
        after_u: Option<Dart>,
        v: usize,
        after_v: Option<Dart>,
        origin: Edge,
        copy: bool,
    ) -> usize {
        let e = self.map.insert_edge(u, after_u, v, after_v);
        self.origin.push(origin);
        self.copy.push(copy);
        e
    }

    pub fn remove_edge(&mut self, e: usize) {
        self.map.remove_edge(e);
    }

    /// Adds a crossing point on edge `e`; returns the new dummy and the edge
    /// created for the far half.
    pub fn subdivide(&mut self, e: usize) -> (usize, usize) {
        let (w, f) = self.map.subdivide(e);
        self.origin.push(self.origin[e]);
        self.copy.push(self.copy[e]);
        if self.crossing_at.len() <= w {
            self.crossing_at.resize(w + 1, None);
        }
        (w, f)
    }

    pub fn live_dummies(&self) -> Vec<usize> {
        (self.n + 1..=self.map.vertex_count())
            .filter(|&v| self.map.degree(v) > 0)
            .collect()
    }

    /// Converts back to an embedding of `graph`. Crossings are sorted
    /// canonically and dummies relabelled in that order. Copy edges are
    /// dropped.
    pub fn to_embedding(&self, graph: &SimpleGraph) -> OnePlanarEmbedding {
        let n = self.n;
        let mut dummies: Vec<(Crossing, usize)> = self
            .live_dummies()
            .into_iter()
            .map(|x| {
                let around: Vec<usize> = self
                    .map
                    .rotation(x)
                    .iter()
                    .map(|&d| self.map.head(d))
                    .collect();
                let c = self.crossing_at[x].expect("dummy without crossing record");
                let mut c = c.canonical();
                c.flag = !cyclic_eq(&around, &Crossing::new(c.first, c.second, false).around());
                (c, x)
            })
            .collect();
        dummies.sort();
        let mut label: Vec<usize> = (0..=self.map.vertex_count())
            .map(|v| if v <= n { v } else { 0 })
            .collect();
        for (i, (_, x)) in dummies.iter().enumerate() {
            label[*x] = n + i + 1;
        }
        let mut rotation = Vec::with_capacity(n + dummies.len());
        let order: Vec<usize> = (1..=n).chain(dummies.iter().map(|(_, x)| *x)).collect();
        for v in order {
            rotation.push(
                self.map
                    .rotation(v)
                    .iter()
                    .filter(|&&d| !self.copy[edge_of(d)])
                    .map(|&d| label[self.map.head(d)])
                    .collect(),
            );
        }
        OnePlanarEmbedding::from_parts(
            graph.clone(),
            dummies.into_iter().map(|(c, _)| c).collect(),
            rotation,
        )
    }
}

/// Checks a rotation system for planarity with Euler's formula.
pub fn is_planar_rotation(r: &RotationSystem) -> Certificate {
    if !r.is_connected() {
        return Certificate::reject().violation(
            "disconnected",
            "rotation system has more than one component",
        );
    }
    let v = r.vertex_count() as i64;
    let e = r.edge_count() as i64;
    let f = if e == 0 { 1 } else { r.face_ids().1 as i64 };
    let chi = v - e + f;
    let cert = if chi == 2 {
        Certificate::accept()
    } else {
        Certificate::reject().violation("euler", format!("V-E+F={v}-{e}+{f}={chi}"))
    };
    cert.note("faces", f.to_string())
}

/// Full structural check of a 1-planar embedding.
pub fn validate_1planar(emb: &OnePlanarEmbedding) -> Certificate {
    let g = emb.graph();
    let n = g.n();
    let mut cert = Certificate::accept();
    let mut crossed: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, c) in emb.crossings().iter().enumerate() {
        let loc = format!(
            "crossing {} ({},{})x({},{})",
            i + 1,
            c.first.0,
            c.first.1,
            c.second.0,
            c.second.1
        );
        let ends: BTreeSet<usize> = c.endpoints().into_iter().collect();
        if ends.len() != 4 {
            cert = cert.violation("incident-edges-cross", loc.clone());
        }
        for e in [c.first, c.second] {
            if !g.has_edge(e.0, e.1) {
                cert = cert.violation(
                    "crossing-edge-missing",
                    format!("{loc} edge ({},{})", e.0, e.1),
                );
            }
            let e = normalize(e.0, e.1);
            if let Some(prev) = crossed.insert(e, i) {
                if prev != i {
                    cert = cert.violation(
                        "edge-crossed-twice",
                        format!(
                            "edge ({},{}) in crossings {} and {}",
                            e.0,
                            e.1,
                            prev + 1,
                            i + 1
                        ),
                    );
                }
            }
        }
    }
    let k = emb.crossing_count();
    if emb.rotation().len() != n + k {
        return cert.violation(
            "rotation-count",
            format!(
                "expected {} rotations, found {}",
                n + k,
                emb.rotation().len()
            ),
        );
    }
    for (i, c) in emb.crossings().iter().enumerate() {
        let x = n + i + 1;
        let rot = &emb.rotation()[x - 1];
        if rot.len() != 4 {
            cert = cert.violation(
                "dummy-degree",
                format!("vertex {x} has degree {}", rot.len()),
            );
        } else if !cyclic_eq(rot, &c.around()) {
            cert = cert.violation(
                "dummy-alternation",
                format!("vertex {x} rotation {rot:?} expected {:?}", c.around()),
            );
        }
    }
    // Each original rotation lists exactly the expected neighbors.
    let mut via: BTreeMap<Edge, usize> = BTreeMap::new();
    for (i, c) in emb.crossings().iter().enumerate() {
        via.insert(normalize(c.first.0, c.first.1), n + i + 1);
        via.insert(normalize(c.second.0, c.second.1), n + i + 1);
    }
    for v in 1..=n {
        let mut expected: Vec<usize> = g
            .neighbors(v)
            .map(|w| via.get(&normalize(v, w)).copied().unwrap_or(w))
            .collect();
        let mut got = emb.rotation()[v - 1].clone();
        expected.sort();
        got.sort();
        if expected != got {
            cert = cert.violation(
                "rotation-mismatch",
                format!("vertex {v} lists {got:?}, expected {expected:?}"),
            );
        }
    }
    if !cert.violations.is_empty() {
        return Certificate::from_violations(cert.violations);
    }
    let cert = match emb.planarize() {
        Err(e) => cert.violation("rotation-asymmetric", e.to_string()),
        Ok(p) => {
            if p.map.is_genus_zero() {
                cert.note("crossings", k.to_string())
            } else {
                let (_, f) = p.map.face_ids();
                cert.violation(
                    "euler",
                    format!(
                        "planarization V={} E={} F={f} is not genus zero",
                        n + k,
                        p.map.edge_count()
                    ),
                )
            }
        }
    };
    cert.finish()
}

/// Every vertex is an endpoint of at most one crossed edge.
pub fn is_ic(emb: &OnePlanarEmbedding) -> bool {
    let mut count = vec![0usize; emb.n() + 1];
    for (a, b) in emb.crossed_edges() {
        count[a] += 1;
        count[b] += 1;
    }
    count.iter().all(|&c| c <= 1)
}

/// Every crossing's four endpoints induce `K4` in the graph.
pub fn is_crossing_augmented(emb: &OnePlanarEmbedding) -> Certificate {
    let g = emb.graph();
    let mut cert = Certificate::accept();
    for c in emb.crossings() {
        for (u, v) in c.kite_pairs() {
            if !g.has_edge(u, v) {
                cert = cert.violation(
                    "missing-kite-edge",
                    format!(
                        "({},{})x({},{}) needs ({u},{v})",
                        c.first.0, c.first.1, c.second.0, c.second.1
                    ),
                );
            }
        }
    }
    cert.finish()
}

/// No face of the planarization holds two non-adjacent original vertices.
pub fn is_planar_maximal_embedding(emb: &OnePlanarEmbedding) -> Certificate {
    let p = match emb.planarize() {
        Ok(p) => p,
        Err(e) => return Certificate::reject().violation("invalid", e.to_string()),
    };
    planarization_addable_pair(&p, emb.graph()).map_or_else(
        Certificate::accept,
        |(face, (u, v))| {
            Certificate::reject()
                .violation("addable-edge", format!("({u},{v}) in face {face:?}"))
                .with_witness(Witness::Face(face))
                .with_witness(Witness::Edge((u, v)))
        },
    )
}

/// First face (in canonical order) containing a non-adjacent pair of original vertices.
pub(crate) fn planarization_addable_pair(
    p: &Planarization,
    g: &SimpleGraph,
) -> Option<(Vec<usize>, Edge)> {
    for face in p.map.trace_faces() {
        let verts = p.original_vertices_of(&face.0);
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                if !g.has_edge(u, v) {
                    return Some((p.map.face_vertices(&face), normalize(u, v)));
                }
            }
        }
    }
    None
}

/// Whether a component with a distinguished outer edge exposes further
/// vertices once that edge is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpenClosed {
    Closed,
    OpenOneSided,
    OpenTwoSided,
}

impl OpenClosed {
    pub fn is_open(self) -> bool {
        self != OpenClosed::Closed
    }
}

/// Removes the planar edge `(a, b)` and inspects the two boundary walks
/// from `a` to `b` of the merged face. A side is open when its walk passes
/// an original vertex other than `a` and `b`.
pub fn classify_open_closed(
    emb: &OnePlanarEmbedding,
    a: usize,
    b: usize,
) -> Result<OpenClosed, EmbeddingError> {
    if !emb.graph().has_edge(a, b) {
        return Err(EmbeddingError::NoSuchEdge(a, b));
    }
    if emb.is_crossed(a, b) {
        return Err(EmbeddingError::EdgeCrossed(a, b));
    }
    let p = emb.planarize()?;
    classify_in_planarization(&p, a, b)
}

pub(crate) fn classify_in_planarization(
    p: &Planarization,
    a: usize,
    b: usize,
) -> Result<OpenClosed, EmbeddingError> {
    let d = p
        .map
        .dart_between(a, b)
        .ok_or(EmbeddingError::NoSuchEdge(a, b))?;
    if p.map.head(d) != b || !p.is_original(a) || !p.is_original(b) {
        return Err(EmbeddingError::EdgeCrossed(a, b));
    }
    let side = |start: Dart| -> bool {
        // Walk the face of `start` from the dart after it back to `start`.
        let mut x = p.map.face_next(start);
        while x != start {
            let v = p.map.tail(x);
            if p.is_original(v) && v != a && v != b {
                return true;
            }
            x = p.map.face_next(x);
        }
        false
    };
    let open = side(d) as u8 + side(twin(d)) as u8;
    Ok(match open {
        0 => OpenClosed::Closed,
        1 => OpenClosed::OpenOneSided,
        _ => OpenClosed::OpenTwoSided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tetrahedron_and_kite_validate() {
        let t = fixtures::tetrahedron();
        assert!(validate_1planar(&t).is_accept());
        let k = fixtures::kite();
        let c = validate_1planar(&k);
        assert!(c.is_accept(), "{:?}", c);
        assert_eq!(c.note_value("crossings"), Some("1"));
        assert!(is_ic(&k));
        assert!(is_ic(&t));
    }

    #[test]
    fn edge_crossed_twice_rejected() {
        let k = fixtures::kite();
        let mut crossings = k.crossings().to_vec();
        let c = crossings[0];
        crossings.push(Crossing::new(c.first, (2, 4), false));
        let mut rot = k.rotation().to_vec();
        rot.push(vec![]);
        let bad = OnePlanarEmbedding::from_parts(k.graph().clone(), crossings, rot);
        let cert = validate_1planar(&bad);
        assert!(cert.is_reject());
        assert!(cert
            .violations
            .iter()
            .any(|v| v.rule == "edge-crossed-twice"));
    }

    #[test]
    fn incident_edges_cannot_cross() {
        let g = SimpleGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let bad = OnePlanarEmbedding::from_parts(
            g,
            vec![Crossing::new((1, 2), (2, 3), false)],
            vec![vec![4], vec![4, 4], vec![4], vec![1, 2, 2, 3]],
        );
        let cert = validate_1planar(&bad);
        assert!(cert
            .violations
            .iter()
            .any(|v| v.rule == "incident-edges-cross"));
    }

    #[test]
    fn planar_rotation_checks() {
        let t = fixtures::tetrahedron();
        let r = RotationSystem::from_neighbor_lists(t.rotation()).unwrap();
        let c = is_planar_rotation(&r);
        assert!(c.is_accept());
        assert_eq!(c.note_value("faces"), Some("4"));
        // Swap two neighbors at vertex 1.
        let mut lists = t.rotation().to_vec();
        lists[0].swap(0, 1);
        let r = RotationSystem::from_neighbor_lists(&lists).unwrap();
        let c = is_planar_rotation(&r);
        assert!(c.is_reject());
        assert_eq!(c.note_value("faces"), Some("2"));
    }

    #[test]
    fn crossing_augmented_checks() {
        assert!(is_crossing_augmented(&fixtures::kite()).is_accept());
        let bare = fixtures::bare_cross();
        let c = is_crossing_augmented(&bare);
        assert!(c.is_reject());
        assert_eq!(c.violations.len(), 4);
    }

    #[test]
    fn planar_maximal_embedding_checks() {
        assert!(is_planar_maximal_embedding(&fixtures::tetrahedron()).is_accept());
        let c4 = OnePlanarEmbedding::planar(
            SimpleGraph::cycle(4),
            vec![vec![2, 4], vec![3, 1], vec![4, 2], vec![1, 3]],
        );
        assert!(validate_1planar(&c4).is_accept());
        let c = is_planar_maximal_embedding(&c4);
        assert!(c.is_reject());
        assert!(c
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::Edge((1, 3)))));
    }

    #[test]
    fn open_closed_fixtures() {
        let w = fixtures::w_configuration();
        assert!(validate_1planar(&w).is_accept());
        assert_eq!(classify_open_closed(&w, 1, 2).unwrap(), OpenClosed::Closed);
        let b = fixtures::b_configuration();
        assert!(validate_1planar(&b).is_accept());
        assert_eq!(
            classify_open_closed(&b, 1, 2).unwrap(),
            OpenClosed::OpenOneSided
        );
        let tri = OnePlanarEmbedding::planar(
            SimpleGraph::cycle(3),
            vec![vec![2, 3], vec![3, 1], vec![1, 2]],
        );
        assert_eq!(
            classify_open_closed(&tri, 1, 3).unwrap(),
            OpenClosed::OpenTwoSided
        );
        let k = fixtures::kite();
        let c = k.crossings()[0].first;
        assert_eq!(
            classify_open_closed(&k, c.0, c.1),
            Err(EmbeddingError::EdgeCrossed(c.0, c.1))
        );
    }
}
