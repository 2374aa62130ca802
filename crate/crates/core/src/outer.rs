//! Outer 1-planarity by the chord model: vertices on a circle in some
//! cyclic order, edges as chords, two chords crossing iff their ends
//! interleave.

use std::fmt;
use std::str::FromStr;

use crate::certificate::{Certificate, Witness};
use crate::embedding::{Crossing, OnePlanarEmbedding};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::cyclic_eq;
use crate::search::{BudgetExceeded, Flow, Meter, SearchBudget};
use crate::separated::separate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterVariant {
    OnePlanar,
    CrossingAugmented,
    FullyTriangulated,
    PlaneMaximal,
    PlanarMaximal,
    Maximal,
    Optimal,
}

impl OuterVariant {
    pub const ALL: [OuterVariant; 7] = [
        OuterVariant::OnePlanar,
        OuterVariant::CrossingAugmented,
        OuterVariant::FullyTriangulated,
        OuterVariant::PlaneMaximal,
        OuterVariant::PlanarMaximal,
        OuterVariant::Maximal,
        OuterVariant::Optimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OuterVariant::OnePlanar => "1planar",
            OuterVariant::CrossingAugmented => "crossing-augmented",
            OuterVariant::FullyTriangulated => "fully-triangulated",
            OuterVariant::PlaneMaximal => "plane-maximal",
            OuterVariant::PlanarMaximal => "planar-maximal",
            OuterVariant::Maximal => "maximal",
            OuterVariant::Optimal => "optimal",
        }
    }
}

impl fmt::Display for OuterVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OuterVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        OuterVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown outer variant '{s}'"))
    }
}

fn interleave(pos: &[usize], (a, b): Edge, (c, d): Edge) -> bool {
    let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let inside = |w: usize| x < pos[w] && pos[w] < y;
    let ends = [a, b];
    if ends.contains(&c) || ends.contains(&d) {
        return false;
    }
    inside(c) != inside(d)
}

/// Crossing chord pairs for the given positions, or `None` if some chord
/// is crossed twice.
pub fn chord_crossings(g: &SimpleGraph, pos: &[usize]) -> Option<Vec<(Edge, Edge)>> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut crossed = vec![false; edges.len()];
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if interleave(pos, edges[i], edges[j]) {
                if crossed[i] || crossed[j] {
                    return None;
                }
                crossed[i] = true;
                crossed[j] = true;
                out.push((edges[i], edges[j]));
            }
        }
    }
    Some(out)
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len() + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

type CrossingPair = (Edge, Edge);

/// Called with each order and its crossing chord pairs.
pub type OrderVisitor<'a> = dyn FnMut(&[usize], &[CrossingPair]) -> Flow + 'a;

/// Visits every cyclic order (starting at 1, one of each mirror pair) in
/// which `g` is outer 1-planar, in lexicographic order.
pub fn for_each_outer_order(
    g: &SimpleGraph,
    meter: &mut Meter,
    f: &mut OrderVisitor,
) -> Result<Flow, BudgetExceeded> {
    fn rec(
        g: &SimpleGraph,
        order: &mut Vec<usize>,
        used: &mut [bool],
        meter: &mut Meter,
        f: &mut OrderVisitor,
    ) -> Result<Flow, BudgetExceeded> {
        let n = g.n();
        if order.len() == n {
            if n >= 3 && order[1] > order[n - 1] {
                return Ok(Flow::Continue);
            }
            meter.tick()?;
            if let Some(pairs) = chord_crossings(g, &positions(order)) {
                return Ok(f(order, &pairs));
            }
            return Ok(Flow::Continue);
        }
        for v in 2..=n {
            if used[v] {
                continue;
            }
            used[v] = true;
            order.push(v);
            let flow = rec(g, order, used, meter, f)?;
            order.pop();
            used[v] = false;
            if flow == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
    if g.n() == 0 {
        return Ok(f(&[], &[]));
    }
    let mut used = vec![false; g.n() + 1];
    used[1] = true;
    rec(g, &mut vec![1], &mut used, meter, f)
}

/// The outer 1-planar embedding drawn by `order`.
pub fn order_embedding(g: &SimpleGraph, order: &[usize]) -> OnePlanarEmbedding {
    let n = g.n();
    let pos = positions(order);
    let pairs = chord_crossings(g, &pos).expect("order draws an outer 1-planar embedding");
    let ccw = |v: usize, w: usize| (pos[w] + n - pos[v]) % n;
    let mut crossings: Vec<Crossing> = pairs
        .iter()
        .map(|&(a, b)| {
            let mut around = vec![a.0, a.1, b.0, b.1];
            around.sort_by_key(|&w| pos[w]);
            Crossing::new(
                a,
                b,
                !cyclic_eq(&Crossing::new(a, b, false).around(), &around),
            )
        })
        .collect();
    crossings.sort();
    let dummy_of = |e: Edge| {
        crossings
            .iter()
            .position(|c| c.first == e || c.second == e)
            .map(|i| n + i + 1)
    };
    let mut rotation: Vec<Vec<usize>> = (1..=n)
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).collect();
            nb.sort_by_key(|&w| ccw(v, w));
            nb.into_iter()
                .map(|w| dummy_of(normalize(v, w)).unwrap_or(w))
                .collect()
        })
        .collect();
    for c in &crossings {
        let mut around = c.endpoints().to_vec();
        around.sort_by_key(|&w| pos[w]);
        rotation.push(around);
    }
    OnePlanarEmbedding::from_parts(g.clone(), crossings, rotation)
}

/// A non-edge whose chord crosses nothing.
pub fn addable_chord(g: &SimpleGraph, order: &[usize]) -> Option<Edge> {
    let pos = positions(order);
    g.non_edges()
        .into_iter()
        .find(|&e| g.edges().all(|f| !interleave(&pos, e, f)))
}

fn is_kite_closed(g: &SimpleGraph, pairs: &[(Edge, Edge)]) -> bool {
    pairs.iter().all(|&((a, b), (c, d))| {
        [(a, c), (a, d), (b, c), (b, d)]
            .iter()
            .all(|&(x, y)| g.has_edge(x, y))
    })
}

/// Every face but the outer one is a triangle once separation copies are
/// drawn inside the disk.
pub fn outer_fully_triangulated(g: &SimpleGraph, order: &[usize]) -> bool {
    let e = order_embedding(g, order);
    let Ok(p) = e.planarize() else { return false };
    let v = order[0];
    let first = e.rotation()[v - 1][0];
    let Some(d) = p
        .map
        .rotation(v)
        .iter()
        .copied()
        .find(|&d| p.map.head(d) == first)
    else {
        return false;
    };
    let Ok(s) = separate(&e, Some(d)) else {
        return false;
    };
    let map = &s.planarization.map;
    let (id, _) = map.face_ids();
    map.trace_faces()
        .iter()
        .all(|f| f.len() == 3 || id[f.0[0]] == id[d])
}

fn is_outer_1planar(
    g: &SimpleGraph,
    meter: &mut Meter,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    if violates_outer_density(g) {
        return Ok(None);
    }
    let mut found = None;
    for_each_outer_order(g, meter, &mut |o, _| {
        found = Some(o.to_vec());
        Flow::Stop
    })?;
    Ok(found)
}

fn violates_outer_density(g: &SimpleGraph) -> bool {
    g.n() >= 3 && 2 * g.m() + 8 > 5 * g.n()
}

fn accept_order(g: &SimpleGraph, order: Vec<usize>) -> Certificate {
    let e = order_embedding(g, &order);
    Certificate::accept()
        .note("crossings", e.crossing_count().to_string())
        .with_witness(Witness::Order(order))
        .with_witness(Witness::Embedding(e))
}

/// Searches for an order satisfying `pred`.
fn exists_order(
    g: &SimpleGraph,
    meter: &mut Meter,
    pred: &mut dyn FnMut(&[usize], &[CrossingPair]) -> bool,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    let mut found = None;
    for_each_outer_order(g, meter, &mut |o, pairs| {
        if pred(o, pairs) {
            found = Some(o.to_vec());
            Flow::Stop
        } else {
            Flow::Continue
        }
    })?;
    Ok(found)
}

pub fn outer_1planar_suite(
    g: &SimpleGraph,
    variant: OuterVariant,
    budget: SearchBudget,
) -> Certificate {
    if violates_outer_density(g) {
        return Certificate::reject()
            .violation(
                "density",
                format!("2m={} exceeds 5n-8={}", 2 * g.m(), 5 * g.n() - 8),
            )
            .note("reason", "density bound 2.5n-4");
    }
    if variant == OuterVariant::FullyTriangulated && !g.is_biconnected() {
        return Certificate::reject().violation(
            "not-2-connected",
            "fully triangulated needs a 2-connected graph",
        );
    }
    if variant == OuterVariant::Optimal && 2 * g.m() + 8 != 5 * g.n() {
        return Certificate::reject().violation(
            "edge-count",
            format!("2m={} but 5n-8={}", 2 * g.m(), 5 * g.n() as i64 - 8),
        );
    }
    let mut meter = Meter::new(budget);
    let body = |meter: &mut Meter| -> Result<Certificate, BudgetExceeded> {
        let none = |what: &str| {
            Certificate::reject().note("reason", format!("no outer 1-planar order is {what}"))
        };
        Ok(match variant {
            OuterVariant::OnePlanar | OuterVariant::Optimal => match is_outer_1planar(g, meter)? {
                Some(o) => accept_order(g, o),
                None => none("valid"),
            },
            OuterVariant::CrossingAugmented => {
                match exists_order(g, meter, &mut |_, p| is_kite_closed(g, p))? {
                    Some(o) => accept_order(g, o),
                    None => none("crossing-augmented"),
                }
            }
            OuterVariant::FullyTriangulated => {
                match exists_order(g, meter, &mut |o, _| outer_fully_triangulated(g, o))? {
                    Some(o) => accept_order(g, o),
                    None => none("fully triangulated"),
                }
            }
            OuterVariant::PlaneMaximal => {
                match exists_order(g, meter, &mut |o, _| addable_chord(g, o).is_none())? {
                    Some(o) => accept_order(g, o),
                    None => none("planar-maximal"),
                }
            }
            OuterVariant::PlanarMaximal => {
                let Some(any) = is_outer_1planar(g, meter)? else {
                    return Ok(none("valid"));
                };
                match exists_order(g, meter, &mut |o, _| addable_chord(g, o).is_some())? {
                    Some(o) => {
                        let (u, v) = addable_chord(g, &o).unwrap();
                        Certificate::reject()
                            .violation("addable-edge", format!("({u},{v})"))
                            .with_witness(Witness::Order(o))
                            .with_witness(Witness::Edge((u, v)))
                    }
                    None => accept_order(g, any),
                }
            }
            OuterVariant::Maximal => {
                let Some(any) = is_outer_1planar(g, meter)? else {
                    return Ok(none("valid"));
                };
                for (u, v) in g.non_edges() {
                    let h = g.with_edge(u, v).unwrap();
                    if let Some(o) = is_outer_1planar(&h, meter)? {
                        return Ok(Certificate::reject()
                            .violation("addable-edge", format!("({u},{v})"))
                            .with_witness(Witness::Edge((u, v)))
                            .with_witness(Witness::Order(o)));
                    }
                }
                accept_order(g, any)
            }
        })
    };
    match body(&mut meter) {
        Ok(c) => c.note("orders", meter.candidates().to_string()),
        Err(e) => Certificate::indeterminate(format!("budget exceeded: {e}")),
    }
}
