//! Rotation systems stored as combinatorial maps over darts.
//!
//! Vertices carry 1-based labels (slot 0 is unused). Edge `e` owns the two
//! darts `2e` (first end -> second end) and `2e + 1` (reverse). The rotation
//! of a vertex lists its outgoing darts in cyclic order. Faces are traced
//! with `next(d) = succ(twin(d))`: arrive at a vertex, leave by the dart
//! following the arrival edge in that vertex's rotation.

use std::collections::BTreeSet;

use thiserror::Error;

pub type Dart = usize;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("vertex {0} lists neighbor {1} more often than vertex {1} lists {0}")]
    Unmatched(usize, usize),
    #[error("vertex {0} lists itself")]
    SelfLoop(usize),
    #[error("neighbor {1} of vertex {0} is out of range")]
    OutOfRange(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    ends: Vec<[usize; 2]>,
    alive: Vec<bool>,
    rot: Vec<Vec<Dart>>,
}

/// A face as its cyclic sequence of darts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub Vec<Dart>);

impl Face {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl RotationSystem {
    /// Map with vertices `1..=n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        RotationSystem {
            ends: Vec::new(),
            alive: Vec::new(),
            rot: vec![Vec::new(); n + 1],
        }
    }

    /// Builds a simple-graph rotation system from cyclic neighbor lists
    /// `lists[v - 1]` for `v = 1..=lists.len()`. Each edge must be listed once
    /// at each endpoint.
    pub fn from_neighbor_lists(lists: &[Vec<usize>]) -> Result<Self, RotationError> {
        let n = lists.len();
        let mut rs = RotationSystem::with_vertices(n);
        let mut pending: std::collections::HashMap<(usize, usize), Vec<usize>> = Default::default();
        // First pass: create edges when seen from the smaller endpoint.
        let mut dart_at: Vec<Vec<Option<Dart>>> =
            lists.iter().map(|l| vec![None; l.len()]).collect();
        for (i, list) in lists.iter().enumerate() {
            let u = i + 1;
            for (k, &w) in list.iter().enumerate() {
                if w == u {
                    return Err(RotationError::SelfLoop(u));
                }
                if w == 0 || w > n {
                    return Err(RotationError::OutOfRange(u, w));
                }
                if u < w {
                    let e = rs.ends.len();
                    rs.ends.push([u, w]);
                    rs.alive.push(true);
                    dart_at[i][k] = Some(2 * e);
                    pending.entry((u, w)).or_default().push(e);
                }
            }
        }
        for (i, list) in lists.iter().enumerate() {
            let u = i + 1;
            for (k, &w) in list.iter().enumerate() {
                if w < u {
                    let queue = pending
                        .get_mut(&(w, u))
                        .ok_or(RotationError::Unmatched(u, w))?;
                    if queue.is_empty() {
                        return Err(RotationError::Unmatched(u, w));
                    }
                    let e = queue.remove(0);
                    dart_at[i][k] = Some(2 * e + 1);
                }
            }
        }
        if let Some(((u, w), _)) = pending.iter().find(|(_, q)| !q.is_empty()) {
            return Err(RotationError::Unmatched(*u, *w));
        }
        for (i, darts) in dart_at.into_iter().enumerate() {
            rs.rot[i + 1] = darts.into_iter().map(|d| d.unwrap()).collect();
        }
        Ok(rs)
    }

    /// Cyclic neighbor lists, one per vertex `1..=n`.
    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        (1..self.rot.len())
            .map(|v| self.rot[v].iter().map(|&d| self.head(d)).collect())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    pub fn edge_slots(&self) -> usize {
        self.ends.len()
    }

    pub fn is_alive(&self, e: usize) -> bool {
        self.alive[e]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ends.len()).filter(move |&e| self.alive[e])
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn tail(&self, d: Dart) -> usize {
        self.ends[d >> 1][d & 1]
    }

    pub fn head(&self, d: Dart) -> usize {
        self.ends[d >> 1][1 - (d & 1)]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rot.push(Vec::new());
        self.rot.len() - 1
    }

    fn position(&self, d: Dart) -> usize {
        let v = self.tail(d);
        self.rot[v]
            .iter()
            .position(|&x| x == d)
            .expect("dart missing from rotation of its tail")
    }

    /// Dart following `d` in the rotation of its tail.
    pub fn succ(&self, d: Dart) -> Dart {
        let v = self.tail(d);
        let i = self.position(d);
        self.rot[v][(i + 1) % self.rot[v].len()]
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let v = self.tail(d);
        let i = self.position(d);
        let k = self.rot[v].len();
        self.rot[v][(i + k - 1) % k]
    }

    /// Next dart along the face containing `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.succ(twin(d))
    }

    /// Adds edge `u - v`. The new dart at `u` is placed right after `after_u`
    /// (a dart leaving `u`), or appended when `None`; likewise at `v`.
    pub fn insert_edge(
        &mut self,
        u: usize,
        after_u: Option<Dart>,
        v: usize,
        after_v: Option<Dart>,
    ) -> usize {
        let e = self.ends.len();
        self.ends.push([u, v]);
        self.alive.push(true);
        self.place(2 * e, u, after_u);
        self.place(2 * e + 1, v, after_v);
        e
    }

    fn place(&mut self, d: Dart, v: usize, after: Option<Dart>) {
        match after {
            Some(a) => {
                debug_assert_eq!(self.tail(a), v);
                let i = self.position(a);
                self.rot[v].insert(i + 1, d);
            }
            None => self.rot[v].push(d),
        }
    }

    /// For a dart `d = p -> a` whose rotation successor is `p -> b`, adds the
    /// edge `a - b` so that `a, p, b` bound a new triangular face.
    pub fn insert_beside(&mut self, d: Dart) -> usize {
        let next = self.succ(d);
        let a = self.head(d);
        let b = self.head(next);
        let after_a = self.pred(twin(d));
        self.insert_edge(a, Some(after_a), b, Some(twin(next)))
    }

    pub fn remove_edge(&mut self, e: usize) {
        assert!(self.alive[e], "edge {e} already removed");
        for d in [2 * e, 2 * e + 1] {
            let v = self.tail(d);
            let i = self.position(d);
            self.rot[v].remove(i);
        }
        self.alive[e] = false;
    }

    /// Splits edge `e = (a, b)` with a new degree-2 vertex `w`. Edge `e`
    /// becomes `a - w`; the returned new edge is `w - b`.
    pub fn subdivide(&mut self, e: usize) -> (usize, usize) {
        let [a, b] = self.ends[e];
        let w = self.add_vertex();
        let f = self.ends.len();
        self.ends.push([w, b]);
        self.alive.push(true);
        let back = 2 * e + 1;
        let i = self.position(back);
        self.rot[b][i] = 2 * f + 1;
        self.ends[e] = [a, w];
        self.rot[w] = vec![2 * e + 1, 2 * f];
        (w, f)
    }

    /// Removes a degree-2 vertex by merging its two edges into one. Returns the surviving edge.
    pub fn smooth(&mut self, w: usize) -> usize {
        assert_eq!(self.rot[w].len(), 2, "smoothing needs degree 2");
        let d1 = self.rot[w][0];
        let d2 = self.rot[w][1];
        let (e1, e2) = (edge_of(d1), edge_of(d2));
        let a = self.head(d1);
        let b = self.head(d2);
        // Keep e1 as a - b; the dart of e2 at b now belongs to e1.
        let back_b = twin(d2);
        let ib = self.position(back_b);
        let a_side = twin(d1);
        self.ends[e1] = [a, b];
        // Dart numbering: 2*e1 leaves a, 2*e1+1 leaves b.
        let ia = {
            let v = a;
            self.rot[v].iter().position(|&x| x == a_side).unwrap()
        };
        self.rot[a][ia] = 2 * e1;
        self.rot[b][ib] = 2 * e1 + 1;
        self.rot[w].clear();
        self.alive[e2] = false;
        e1
    }

    /// Face index of every dart (dead darts get `usize::MAX`) and the face count.
    pub fn face_ids(&self) -> (Vec<usize>, usize) {
        let mut id = vec![usize::MAX; 2 * self.ends.len()];
        let mut count = 0;
        for d in 0..id.len() {
            if !self.alive[d >> 1] || id[d] != usize::MAX {
                continue;
            }
            let mut x = d;
            loop {
                id[x] = count;
                x = self.face_next(x);
                if x == d {
                    break;
                }
            }
            count += 1;
        }
        (id, count)
    }

    /// All faces, canonicalized: each starts at its least dart; sorted.
    pub fn trace_faces(&self) -> Vec<Face> {
        let (id, count) = self.face_ids();
        let mut faces: Vec<Vec<Dart>> = vec![Vec::new(); count];
        let mut started = vec![false; count];
        for d in 0..id.len() {
            if id[d] == usize::MAX || started[id[d]] {
                continue;
            }
            started[id[d]] = true;
            let mut x = d;
            loop {
                faces[id[d]].push(x);
                x = self.face_next(x);
                if x == d {
                    break;
                }
            }
        }
        let mut faces: Vec<Face> = faces.into_iter().map(Face).collect();
        faces.sort();
        faces
    }

    /// Vertex sequence of a face (tails of its darts).
    pub fn face_vertices(&self, face: &Face) -> Vec<usize> {
        face.0.iter().map(|&d| self.tail(d)).collect()
    }

    /// Vertex sets of connected components that contain at least one edge.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let n = self.rot.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 1..n {
            if seen[s] || self.rot[s].is_empty() {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &d in &self.rot[u] {
                    let w = self.head(d);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let isolated = (1..self.rot.len())
            .filter(|&v| self.rot[v].is_empty())
            .count();
        let comps = self.components().len();
        comps + isolated <= 1
    }

    /// Euler characteristic summed per component: true iff every component
    /// satisfies `V - E + F = 2`.
    pub fn is_genus_zero(&self) -> bool {
        let (id, _) = self.face_ids();
        for comp in self.components() {
            let v = comp.len() as i64;
            let mut darts = 0i64;
            let mut faces = BTreeSet::new();
            for &u in &comp {
                for &d in &self.rot[u] {
                    darts += 1;
                    faces.insert(id[d]);
                }
            }
            if v - darts / 2 + faces.len() as i64 != 2 {
                return false;
            }
        }
        true
    }

    /// Orientable genus of a connected map; `None` when disconnected.
    pub fn genus(&self) -> Option<usize> {
        if !self.is_connected() {
            return None;
        }
        let v = (1..self.rot.len())
            .filter(|&x| !self.rot[x].is_empty())
            .count()
            .max(1) as i64;
        let e = self.edge_count() as i64;
        let f = if e == 0 { 1 } else { self.face_ids().1 as i64 };
        Some(((2 - (v - e + f)) / 2) as usize)
    }

    /// Finds the live dart from `u` to `v` (first one if parallel).
    pub fn dart_between(&self, u: usize, v: usize) -> Option<Dart> {
        self.rot[u].iter().copied().find(|&d| self.head(d) == v)
    }

    /// Rebuilds with contiguous edge ids, dropping removed edges. Every
    /// vertex is kept, isolated or not.
    pub fn compacted(&self) -> RotationSystem {
        let mut map = vec![usize::MAX; self.ends.len()];
        let mut ends = Vec::new();
        for (e, slot) in map.iter_mut().enumerate() {
            if self.alive[e] {
                *slot = ends.len();
                ends.push(self.ends[e]);
            }
        }
        let rot = self
            .rot
            .iter()
            .map(|r| r.iter().map(|&d| 2 * map[d >> 1] + (d & 1)).collect())
            .collect();
        RotationSystem {
            alive: vec![true; ends.len()],
            ends,
            rot,
        }
    }
}

/// Canonical form of a cyclic sequence: least rotation.
pub fn canonical_cycle<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len())
        .map(|i| {
            seq[i..]
                .iter()
                .chain(seq[..i].iter())
                .cloned()
                .collect::<Vec<T>>()
        })
        .min()
        .unwrap_or_default()
}

/// Canonical form up to rotation and reversal.
pub fn canonical_cycle_unoriented<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let mut rev: Vec<T> = seq.to_vec();
    rev.reverse();
    canonical_cycle(seq).min(canonical_cycle(&rev))
}

/// True iff `a` and `b` are equal as cyclic sequences.
pub fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tetrahedron() -> RotationSystem {
        // Vertex 4 in the middle of triangle 1,2,3 (counter-clockwise).
        RotationSystem::from_neighbor_lists(&[
            vec![2, 4, 3],
            vec![3, 4, 1],
            vec![1, 4, 2],
            vec![1, 2, 3],
        ])
        .unwrap()
    }

    #[test]
    fn tetrahedron_faces() {
        let r = tetrahedron();
        let faces = r.trace_faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(r.is_genus_zero());
        assert_eq!(r.genus(), Some(0));
    }

    #[test]
    fn triangle_and_edge() {
        let c3 =
            RotationSystem::from_neighbor_lists(&[vec![2, 3], vec![3, 1], vec![1, 2]]).unwrap();
        let f = c3.trace_faces();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|f| f.len() == 3));
        let k2 = RotationSystem::from_neighbor_lists(&[vec![2], vec![1]]).unwrap();
        let f = k2.trace_faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].len(), 2);
    }

    #[test]
    fn faces_partition_darts() {
        let r = tetrahedron();
        let mut all: Vec<Dart> = r.trace_faces().into_iter().flat_map(|f| f.0).collect();
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn unmatched_lists_rejected() {
        assert!(RotationSystem::from_neighbor_lists(&[vec![2], vec![]]).is_err());
        assert!(RotationSystem::from_neighbor_lists(&[vec![1]]).is_err());
    }

    #[test]
    fn subdivide_and_smooth_roundtrip() {
        let mut r = tetrahedron();
        let e = r.dart_between(1, 2).unwrap() >> 1;
        let (w, _) = r.subdivide(e);
        assert_eq!(r.degree(w), 2);
        assert!(r.is_genus_zero());
        assert_eq!(r.trace_faces().iter().filter(|f| f.len() == 4).count(), 2);
        r.smooth(w);
        assert!(r.is_genus_zero());
        let lists = r.neighbor_lists();
        assert_eq!(&lists[..4], &tetrahedron().neighbor_lists()[..]);
    }

    #[test]
    fn cyclic_helpers() {
        assert!(cyclic_eq(&[1, 2, 3], &[3, 1, 2]));
        assert!(!cyclic_eq(&[1, 2, 3], &[1, 3, 2]));
        assert_eq!(canonical_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle_unoriented(&[1, 3, 2]), vec![1, 2, 3]);
    }
}
