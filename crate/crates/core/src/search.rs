//! Exhaustive search over 1-planar embeddings by incremental edge insertion.
//!
//! Vertices are placed one at a time; each edge is inserted either inside a
//! face shared by its endpoints or across one uncrossed edge separating two
//! faces. Every rotation system of the planarization is produced exactly
//! once (mirror images count as different runs of the search).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::embedding::{Crossing, Planarization};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::{canonical_cycle_unoriented, Dart};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Search nodes (partial embeddings or crossing sets) across a whole call.
    pub max_candidates: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 14,
            max_edges: 48,
            max_candidates: 200_000_000,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_vertices: usize::MAX,
            max_edges: usize::MAX,
            max_candidates: u64::MAX,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetExceeded {
    #[error("graph has {0} vertices, budget allows {1}")]
    Vertices(usize, usize),
    #[error("graph has {0} edges, budget allows {1}")]
    Edges(usize, usize),
    #[error("more than {0} search candidates")]
    Candidates(u64),
    #[error("time limit of {0:?} reached")]
    Time(Duration),
}

/// Running cost of one recognizer call, shared by nested searches.
#[derive(Debug, Clone)]
pub struct Meter {
    budget: SearchBudget,
    start: Instant,
    candidates: u64,
}

impl Meter {
    pub fn new(budget: SearchBudget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            candidates: 0,
        }
    }

    pub fn candidates(&self) -> u64 {
        self.candidates
    }

    pub fn check_size(&self, g: &SimpleGraph) -> Result<(), BudgetExceeded> {
        if g.n() > self.budget.max_vertices {
            return Err(BudgetExceeded::Vertices(g.n(), self.budget.max_vertices));
        }
        if g.m() > self.budget.max_edges {
            return Err(BudgetExceeded::Edges(g.m(), self.budget.max_edges));
        }
        Ok(())
    }

    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.candidates += 1;
        if self.candidates > self.budget.max_candidates {
            return Err(BudgetExceeded::Candidates(self.budget.max_candidates));
        }
        if let Some(limit) = self.budget.time_limit {
            if self.candidates.is_multiple_of(1024) && self.start.elapsed() > limit {
                return Err(BudgetExceeded::Time(limit));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Only allow crossings whose four endpoints induce `K4`.
    pub require_kites: bool,
    /// Every vertex is incident to at most one crossed edge.
    pub ic: bool,
    /// This edge must stay uncrossed.
    pub uncrossed: Option<Edge>,
    pub max_crossings: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Clone)]
struct State {
    p: Planarization,
    /// Map edge of each inserted, still uncrossed graph edge.
    seg: Vec<Option<usize>>,
    crossed: Vec<bool>,
    touched: Vec<bool>,
    crossings: usize,
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Planar(Option<Dart>, Option<Dart>),
    /// Cross graph edge `s`; `u` sits on the side of dart `2 * seg` when `forward`.
    Cross {
        s: usize,
        du: Option<Dart>,
        dv: Option<Dart>,
        forward: bool,
    },
}

struct Search<'a> {
    g: &'a SimpleGraph,
    opts: &'a SearchOptions,
    edges: Vec<Edge>,
    /// Insertion order: (graph edge index, first endpoint already placed, second endpoint, places second).
    seq: Vec<(usize, usize, usize, bool)>,
}

/// Calls `visit` on every 1-planar embedding of `g` allowed by `opts`.
/// Returns `Flow::Stop` if the visitor stopped the search.
pub fn enumerate_embeddings(
    g: &SimpleGraph,
    opts: &SearchOptions,
    meter: &mut Meter,
    visit: &mut dyn FnMut(&Planarization) -> Flow,
) -> Result<Flow, BudgetExceeded> {
    meter.check_size(g)?;
    let edges: Vec<Edge> = g.edges().collect();
    let s = Search {
        g,
        opts,
        seq: insertion_order(g),
        edges,
    };
    let state = State {
        p: Planarization::empty(g.n()),
        seg: vec![None; s.edges.len()],
        crossed: vec![false; s.edges.len()],
        touched: vec![false; g.n() + 1],
        crossings: 0,
    };
    s.rec(state, 0, meter, visit)
}

/// Maximum-cardinality order; each vertex lists its edges back to placed vertices.
fn insertion_order(g: &SimpleGraph) -> Vec<(usize, usize, usize, bool)> {
    let n = g.n();
    let mut placed = vec![false; n + 1];
    let mut pos = vec![usize::MAX; n + 1];
    let mut seq = Vec::new();
    for step in 0..n {
        let pick = (1..=n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = g.neighbors(v).filter(|&w| placed[w]).count();
                (back, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[pick] = true;
        pos[pick] = step;
        let mut back: Vec<usize> = g.neighbors(pick).filter(|&w| pos[w] < step).collect();
        back.sort_by_key(|&w| pos[w]);
        for (k, w) in back.into_iter().enumerate() {
            seq.push((0, w, pick, k == 0));
        }
    }
    let edges: Vec<Edge> = g.edges().collect();
    for item in seq.iter_mut() {
        item.0 = edges.binary_search(&normalize(item.1, item.2)).unwrap();
    }
    seq
}

impl Search<'_> {
    fn rec(
        &self,
        st: State,
        k: usize,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&Planarization) -> Flow,
    ) -> Result<Flow, BudgetExceeded> {
        meter.tick()?;
        if k == self.seq.len() {
            return Ok(visit(&st.p));
        }
        let (ei, u, v, fresh) = self.seq[k];
        for mv in self.moves(&st, ei, u, v, fresh) {
            let next = self.apply(&st, ei, u, v, mv);
            if !self.feasible(&next, k + 1) {
                continue;
            }
            if self.rec(next, k + 1, meter, visit)? == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn may_cross(&self, st: &State, ei: usize, si: usize, u: usize, v: usize) -> bool {
        let (x, y) = self.edges[si];
        if x == u || x == v || y == u || y == v || st.crossed[si] || st.seg[si].is_none() {
            return false;
        }
        if let Some(e) = self.opts.uncrossed {
            if self.edges[ei] == e || self.edges[si] == e {
                return false;
            }
        }
        if let Some(max) = self.opts.max_crossings {
            if st.crossings >= max {
                return false;
            }
        }
        if self.opts.ic && [u, v, x, y].iter().any(|&w| st.touched[w]) {
            return false;
        }
        if self.opts.require_kites
            && ![(u, x), (u, y), (v, x), (v, y)]
                .iter()
                .all(|&(a, b)| self.g.has_edge(a, b))
        {
            return false;
        }
        true
    }

    fn moves(&self, st: &State, ei: usize, u: usize, v: usize, fresh: bool) -> Vec<Move> {
        let map = &st.p.map;
        let (fid, _) = map.face_ids();
        let corner = |d: Dart| fid[map.succ(d)];
        let mut out = Vec::new();
        let ru = map.rotation(u);
        if ru.is_empty() {
            // Root of a new component.
            out.push(Move::Planar(None, None));
            return out;
        }
        if fresh {
            out.extend(ru.iter().map(|&du| Move::Planar(Some(du), None)));
        } else {
            for &du in ru {
                for &dv in map.rotation(v) {
                    if corner(du) == corner(dv) {
                        out.push(Move::Planar(Some(du), Some(dv)));
                    }
                }
            }
        }
        for si in 0..self.edges.len() {
            if !self.may_cross(st, ei, si, u, v) {
                continue;
            }
            let es = st.seg[si].unwrap();
            for (forward, side_u, side_v) in [
                (true, fid[2 * es], fid[2 * es + 1]),
                (false, fid[2 * es + 1], fid[2 * es]),
            ] {
                for &du in ru.iter().filter(|&&du| corner(du) == side_u) {
                    if fresh {
                        out.push(Move::Cross {
                            s: si,
                            du: Some(du),
                            dv: None,
                            forward,
                        });
                    } else {
                        for &dv in map.rotation(v).iter().filter(|&&dv| corner(dv) == side_v) {
                            out.push(Move::Cross {
                                s: si,
                                du: Some(du),
                                dv: Some(dv),
                                forward,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    fn apply(&self, st: &State, ei: usize, u: usize, v: usize, mv: Move) -> State {
        let mut next = st.clone();
        let e = normalize(u, v);
        match mv {
            Move::Planar(du, dv) => {
                let id = next.p.add_edge(u, du, v, dv, e, false);
                next.seg[ei] = Some(id);
            }
            Move::Cross { s, du, dv, forward } => {
                let es = next.seg[s].unwrap();
                let (w, f) = next.p.subdivide(es);
                let (side_a, side_b) = (2 * es + 1, 2 * f);
                let (wu, wv) = if forward {
                    (side_a, side_b)
                } else {
                    (side_b, side_a)
                };
                next.p.add_edge(u, du, w, Some(wu), e, false);
                next.p.add_edge(w, Some(wv), v, dv, e, false);
                next.p.crossing_at[w] = Some(Crossing::new(e, self.edges[s], false));
                next.seg[s] = None;
                next.crossed[s] = true;
                next.crossed[ei] = true;
                let (x, y) = self.edges[s];
                for t in [u, v, x, y] {
                    next.touched[t] = true;
                }
                next.crossings += 1;
            }
        }
        next
    }

    /// Remaining edges between placed vertices must still fit somewhere.
    fn feasible(&self, st: &State, k: usize) -> bool {
        let map = &st.p.map;
        let mut fid = None;
        for &(ei, u, v, fresh) in &self.seq[k..] {
            if fresh {
                break;
            }
            let fid = fid.get_or_insert_with(|| map.face_ids().0);
            let faces = |w: usize| -> BTreeSet<usize> {
                map.rotation(w).iter().map(|&d| fid[map.succ(d)]).collect()
            };
            let fu = faces(u);
            let fv = faces(v);
            if fu.intersection(&fv).next().is_some() {
                continue;
            }
            let crossable = (0..self.edges.len()).any(|si| {
                self.may_cross(st, ei, si, u, v) && {
                    let es = st.seg[si].unwrap();
                    let (a, b) = (fid[2 * es], fid[2 * es + 1]);
                    (fu.contains(&a) && fv.contains(&b)) || (fu.contains(&b) && fv.contains(&a))
                }
            });
            if !crossable {
                return false;
            }
        }
        true
    }
}

/// Identifies embeddings up to homeomorphism of the sphere (including
/// reflection): the multiset of faces, each an unoriented cyclic sequence
/// of labels, where a crossing point is labelled by its two edges.
pub fn signature(p: &Planarization) -> Vec<Vec<(usize, usize, usize, usize)>> {
    let label = |v: usize| match p.crossing_at.get(v).copied().flatten() {
        Some(c) => {
            let c = c.canonical();
            (c.first.0, c.first.1, c.second.0, c.second.1)
        }
        None => (0, 0, 0, v),
    };
    let mut faces: Vec<Vec<(usize, usize, usize, usize)>> = p
        .map
        .trace_faces()
        .iter()
        .map(|f| {
            canonical_cycle_unoriented(
                &p.map
                    .face_vertices(f)
                    .into_iter()
                    .map(label)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    faces.sort();
    faces
}

/// First embedding allowed by `opts`, if any.
pub fn find_embedding(
    g: &SimpleGraph,
    opts: &SearchOptions,
    meter: &mut Meter,
) -> Result<Option<Planarization>, BudgetExceeded> {
    let mut found = None;
    enumerate_embeddings(g, opts, meter, &mut |p| {
        found = Some(p.clone());
        Flow::Stop
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::validate_1planar;

    fn count(g: &SimpleGraph, opts: &SearchOptions) -> (usize, usize) {
        let mut meter = Meter::new(SearchBudget::unlimited());
        let mut total = 0;
        let mut distinct = BTreeSet::new();
        enumerate_embeddings(g, opts, &mut meter, &mut |p| {
            total += 1;
            let e = p.to_embedding(g);
            assert!(
                validate_1planar(&e).is_accept(),
                "{:?}",
                validate_1planar(&e)
            );
            distinct.insert(signature(p));
            Flow::Continue
        })
        .unwrap();
        (total, distinct.len())
    }

    #[test]
    fn triangle_has_one_embedding() {
        let (total, distinct) = count(&SimpleGraph::cycle(3), &SearchOptions::default());
        assert_eq!(total, 1);
        assert_eq!(distinct, 1);
    }

    #[test]
    fn k4_embeddings() {
        // Planar: the tetrahedron and its mirror. With crossings: one kite
        // per choice of crossing pair, three pairs, each with a mirror.
        let planar = SearchOptions {
            max_crossings: Some(0),
            ..Default::default()
        };
        let (t, d) = count(&SimpleGraph::complete(4), &planar);
        assert_eq!((t, d), (2, 1));
        let (t, d) = count(&SimpleGraph::complete(4), &SearchOptions::default());
        assert!(t > 2);
        assert!(d >= 4, "tetrahedron plus kites, got {d}");
    }

    #[test]
    fn k5_needs_a_crossing() {
        let g = SimpleGraph::complete(5);
        let mut meter = Meter::new(SearchBudget::unlimited());
        let planar = SearchOptions {
            max_crossings: Some(0),
            ..Default::default()
        };
        assert!(find_embedding(&g, &planar, &mut meter).unwrap().is_none());
        let p = find_embedding(&g, &SearchOptions::default(), &mut meter)
            .unwrap()
            .unwrap();
        assert!(validate_1planar(&p.to_embedding(&g)).is_accept());
    }

    #[test]
    fn k7_is_not_found() {
        let g = SimpleGraph::complete(7);
        let mut meter = Meter::new(SearchBudget::unlimited());
        assert!(find_embedding(&g, &SearchOptions::default(), &mut meter)
            .unwrap()
            .is_none());
    }

    #[test]
    fn budget_is_enforced() {
        let g = SimpleGraph::complete(6);
        let mut meter = Meter::new(SearchBudget {
            max_candidates: 10,
            ..SearchBudget::default()
        });
        let r = enumerate_embeddings(&g, &SearchOptions::default(), &mut meter, &mut |_| {
            Flow::Continue
        });
        assert_eq!(r, Err(BudgetExceeded::Candidates(10)));
    }
}
