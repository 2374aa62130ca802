//! Exact recognizers for 1-planar graph classes, each returning a certificate.
//!
//! The main engine is the insertion search in [`crate::search`]. An
//! independent crossing-set oracle (planarity of every candidate
//! planarization) backs it up in tests.

use crate::certificate::{Certificate, Witness};
use crate::embedding::{planarization_addable_pair, Crossing, OnePlanarEmbedding, Planarization};
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::planarity::is_planar_edges;
use crate::rotation::RotationSystem;
use crate::search::{
    enumerate_embeddings, find_embedding, signature, BudgetExceeded, Flow, Meter, SearchBudget,
    SearchOptions,
};
use crate::separated::is_fully_triangulated;
use crate::witness::embedding_to_witness;

/// Crossing pairs with one orientation flag each.
pub type FlaggedSet = (Vec<(Edge, Edge)>, Vec<bool>);

type SetVisitor<'a> = dyn FnMut(&[(Edge, Edge)]) -> Flow + 'a;

fn indeterminate(e: BudgetExceeded) -> Certificate {
    Certificate::indeterminate(format!("budget exceeded: {e}"))
}

/// Runs a recognizer body, mapping budget exhaustion to an indeterminate verdict.
fn metered(
    budget: SearchBudget,
    body: impl FnOnce(&mut Meter) -> Result<Certificate, BudgetExceeded>,
) -> Certificate {
    let mut meter = Meter::new(budget);
    match body(&mut meter) {
        Ok(c) => c.note("candidates", meter.candidates().to_string()),
        Err(e) => indeterminate(e),
    }
}

fn violates_density(g: &SimpleGraph) -> bool {
    g.n() >= 3 && g.m() + 8 > 4 * g.n()
}

/// Some 1-planar embedding with the fewest crossings the search can find,
/// or `None` if `g` is not 1-planar.
pub fn min_crossing_embedding(
    g: &SimpleGraph,
    prune: bool,
    meter: &mut Meter,
) -> Result<Option<Planarization>, BudgetExceeded> {
    if prune && violates_density(g) {
        return Ok(None);
    }
    let planar = SearchOptions {
        max_crossings: Some(0),
        ..Default::default()
    };
    if let Some(p) = find_embedding(g, &planar, meter)? {
        return Ok(Some(p));
    }
    let Some(mut best) = find_embedding(g, &SearchOptions::default(), meter)? else {
        return Ok(None);
    };
    let lower = (g.m() + 6).saturating_sub(3 * g.n()).max(1);
    for c in lower..best.live_dummies().len() {
        let opts = SearchOptions {
            max_crossings: Some(c),
            ..Default::default()
        };
        if let Some(p) = find_embedding(g, &opts, meter)? {
            best = p;
            break;
        }
    }
    Ok(Some(best))
}

/// 1-planarity with an embedding witness using as few crossings as possible.
pub fn oracle_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    oracle_1planar_with(g, budget, true)
}

/// `prune` toggles the `4n - 8` shortcut.
pub fn oracle_1planar_with(g: &SimpleGraph, budget: SearchBudget, prune: bool) -> Certificate {
    if prune && violates_density(g) {
        return Certificate::reject()
            .violation(
                "density",
                format!("m={} exceeds 4n-8={}", g.m(), 4 * g.n() - 8),
            )
            .note("reason", "density bound 4n-8");
    }
    metered(budget, |meter| {
        Ok(match min_crossing_embedding(g, prune, meter)? {
            Some(p) => {
                let e = p.to_embedding(g);
                Certificate::accept()
                    .note("crossings", e.crossing_count().to_string())
                    .with_witness(Witness::Embedding(e))
            }
            None => Certificate::reject().note("reason", "no 1-planar embedding"),
        })
    })
}

/// Pairs of independent edges, in lexicographic order.
pub fn crossing_candidates(g: &SimpleGraph) -> Vec<(Edge, Edge)> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                out.push((e, f));
            }
        }
    }
    out
}

/// Visits every set of `k` candidate pairs with pairwise disjoint edges,
/// in lexicographic order.
fn for_each_crossing_set(
    cands: &[(Edge, Edge)],
    k: usize,
    meter: &mut Meter,
    f: &mut SetVisitor,
) -> Result<Flow, BudgetExceeded> {
    fn rec(
        cands: &[(Edge, Edge)],
        start: usize,
        k: usize,
        chosen: &mut Vec<(Edge, Edge)>,
        meter: &mut Meter,
        f: &mut SetVisitor,
    ) -> Result<Flow, BudgetExceeded> {
        meter.tick()?;
        if chosen.len() == k {
            return Ok(f(chosen));
        }
        for i in start..cands.len() {
            let (e, g) = cands[i];
            if chosen
                .iter()
                .any(|&(a, b)| a == e || a == g || b == e || b == g)
            {
                continue;
            }
            chosen.push(cands[i]);
            let flow = rec(cands, i + 1, k, chosen, meter, f)?;
            chosen.pop();
            if flow == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
    rec(cands, 0, k, &mut Vec::new(), meter, f)
}

/// Edge list of the planarization for a crossing set; crossing `i` becomes
/// vertex `n + i + 1`.
fn planarization_edges(g: &SimpleGraph, set: &[(Edge, Edge)]) -> Vec<Edge> {
    let n = g.n();
    let crossed: Vec<Edge> = set.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut out: Vec<Edge> = g.edges().filter(|e| !crossed.contains(e)).collect();
    for (i, &((a, b), (c, d))) in set.iter().enumerate() {
        let x = n + i + 1;
        out.extend([(a, x), (b, x), (c, x), (d, x)]);
    }
    out
}

/// Second oracle: smallest crossing set (then lexicographically least)
/// whose planarization is planar.
pub fn crossing_set_oracle(
    g: &SimpleGraph,
    meter: &mut Meter,
) -> Result<Option<Vec<(Edge, Edge)>>, BudgetExceeded> {
    let cands = crossing_candidates(g);
    for k in 0..=g.m() / 2 {
        let mut found = None;
        for_each_crossing_set(&cands, k, meter, &mut |set| {
            if is_planar_edges(g.n() + set.len(), &planarization_edges(g, set)) {
                found = Some(set.to_vec());
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Planarization rotation for fixed original rotations, a crossing set and
/// one flag per crossing. `None` if the rotations do not describe `g`.
fn rotation_with_crossings(
    g: &SimpleGraph,
    lists: &[Vec<usize>],
    set: &[(Edge, Edge)],
    flags: &[bool],
) -> Option<RotationSystem> {
    let n = g.n();
    let mut via = std::collections::BTreeMap::new();
    for (i, &(a, b)) in set.iter().enumerate() {
        via.insert(a, n + i + 1);
        via.insert(b, n + i + 1);
    }
    let mut all: Vec<Vec<usize>> = lists
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.iter()
                .map(|&w| via.get(&normalize(i + 1, w)).copied().unwrap_or(w))
                .collect()
        })
        .collect();
    for (i, &(a, b)) in set.iter().enumerate() {
        all.push(Crossing::new(a, b, flags[i]).around().to_vec());
    }
    RotationSystem::from_neighbor_lists(&all).ok()
}

fn rotation_matches(g: &SimpleGraph, r: &RotationSystem) -> bool {
    r.vertex_count() == g.n()
        && (1..=g.n()).all(|v| {
            let mut a: Vec<usize> = r.rotation(v).iter().map(|&d| r.head(d)).collect();
            a.sort();
            a == g.neighbors(v).collect::<Vec<_>>()
        })
}

/// Accepting crossing set and flags for a fixed rotation system, searched
/// by size from the genus lower bound upward, then lexicographically.
pub fn rotation_crossing_search(
    g: &SimpleGraph,
    r: &RotationSystem,
    meter: &mut Meter,
) -> Result<Option<FlaggedSet>, BudgetExceeded> {
    let lists = r.neighbor_lists();
    let lower = r.genus().unwrap_or(0);
    let cands = crossing_candidates(g);
    for k in lower..=g.m() / 2 {
        let mut found = None;
        for_each_crossing_set(&cands, k, meter, &mut |set| {
            for mask in 0..1u64 << set.len() {
                let flags: Vec<bool> = (0..set.len())
                    .map(|i| mask >> (set.len() - 1 - i) & 1 == 1)
                    .collect();
                if let Some(rs) = rotation_with_crossings(g, &lists, set, &flags) {
                    if rs.is_genus_zero() {
                        found = Some((set.to_vec(), flags));
                        return Flow::Stop;
                    }
                }
            }
            Flow::Continue
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Flag-exhaustive variant: every crossing set of every size and every flag
/// vector is tried; the least accepting one in (size, lexicographic) order wins.
pub fn rotation_crossing_exhaustive(g: &SimpleGraph, r: &RotationSystem) -> Option<FlaggedSet> {
    let lists = r.neighbor_lists();
    let cands = crossing_candidates(g);
    let mut best: Option<FlaggedSet> = None;
    let mut meter = Meter::new(SearchBudget::unlimited());
    for k in 0..=g.m() / 2 {
        for_each_crossing_set(&cands, k, &mut meter, &mut |set| {
            for mask in 0..1u64 << set.len() {
                let flags: Vec<bool> = (0..set.len())
                    .map(|i| mask >> (set.len() - 1 - i) & 1 == 1)
                    .collect();
                let ok = rotation_with_crossings(g, &lists, set, &flags)
                    .is_some_and(|rs| rs.is_genus_zero());
                let key = (set.len(), set.to_vec(), flags.clone());
                if ok
                    && best
                        .as_ref()
                        .is_none_or(|(s, f)| key < (s.len(), s.clone(), f.clone()))
                {
                    best = Some((set.to_vec(), flags));
                }
            }
            Flow::Continue
        })
        .unwrap();
    }
    best
}

/// Whether the fixed rotation system `r` of `g` extends to a 1-planar embedding.
pub fn rotation_1planar(g: &SimpleGraph, r: &RotationSystem, budget: SearchBudget) -> Certificate {
    if !rotation_matches(g, r) {
        return Certificate::reject().violation(
            "rotation-mismatch",
            "rotation system does not describe the graph",
        );
    }
    metered(budget, |meter| {
        meter.check_size(g)?;
        Ok(match rotation_crossing_search(g, r, meter)? {
            None => {
                Certificate::reject().note("reason", "no crossing set makes the rotation planar")
            }
            Some((set, flags)) => {
                let lists = r.neighbor_lists();
                let rs = rotation_with_crossings(g, &lists, &set, &flags).unwrap();
                let crossings = set
                    .iter()
                    .zip(&flags)
                    .map(|(&(a, b), &f)| Crossing::new(a, b, f))
                    .collect();
                let e = OnePlanarEmbedding::from_parts(g.clone(), crossings, rs.neighbor_lists());
                Certificate::accept()
                    .note("crossings", set.len().to_string())
                    .with_witness(Witness::Embedding(e))
            }
        })
    })
}

fn first_accepting(
    g: &SimpleGraph,
    meter: &mut Meter,
) -> Result<Option<Planarization>, BudgetExceeded> {
    if violates_density(g) {
        return Ok(None);
    }
    find_embedding(g, &SearchOptions::default(), meter)
}

/// 1-planar and no single added edge keeps it 1-planar.
pub fn is_maximal_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    metered(budget, |meter| {
        if first_accepting(g, meter)?.is_none() {
            return Ok(Certificate::reject().note("reason", "not 1-planar"));
        }
        for (u, v) in g.non_edges() {
            let h = g.with_edge(u, v).unwrap();
            if let Some(p) = first_accepting(&h, meter)? {
                return Ok(Certificate::reject()
                    .violation("addable-edge", format!("({u},{v})"))
                    .with_witness(Witness::Edge((u, v)))
                    .with_witness(Witness::Embedding(p.to_embedding(&h))));
            }
        }
        Ok(Certificate::accept())
    })
}

/// `m = 4n - 8` and 1-planar.
pub fn is_optimal_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    let n = g.n();
    if n < 8 || n == 9 {
        return Certificate::reject().note(
            "reason",
            format!("no optimal 1-planar graph exists for n={n}"),
        );
    }
    if g.m() != 4 * n - 8 {
        return Certificate::reject()
            .violation("edge-count", format!("m={} but 4n-8={}", g.m(), 4 * n - 8));
    }
    oracle_1planar(g, budget)
}

/// Some embedding has no face with two non-adjacent vertices.
pub fn is_plane_maximal_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    metered(budget, |meter| {
        let opts = SearchOptions {
            require_kites: true,
            ..Default::default()
        };
        let mut found = None;
        enumerate_embeddings(g, &opts, meter, &mut |p| {
            if planarization_addable_pair(p, g).is_none() {
                found = Some(p.to_embedding(g));
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
        Ok(match found {
            Some(e) => Certificate::accept().with_witness(Witness::Embedding(e)),
            None => Certificate::reject().note("reason", "every embedding leaves an addable edge"),
        })
    })
}

/// Drops the map edges of graph edge `e` (which must be uncrossed).
fn without_edge(p: &Planarization, e: Edge) -> Planarization {
    let mut q = p.clone();
    let id = q
        .map
        .live_edges()
        .find(|&i| q.origin[i] == e)
        .expect("edge present");
    q.remove_edge(id);
    q
}

/// Every embedding is planar-maximal. Decided by asking, for each non-edge
/// `uv`, whether `G + uv` has an embedding with `uv` uncrossed; such an
/// embedding minus `uv` is one of `G` with `u, v` on a common face.
pub fn is_planar_maximal_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    metered(budget, |meter| {
        if first_accepting(g, meter)?.is_none() {
            return Ok(Certificate::reject().note("reason", "not 1-planar"));
        }
        for (u, v) in g.non_edges() {
            let h = g.with_edge(u, v).unwrap();
            let opts = SearchOptions {
                uncrossed: Some((u, v)),
                ..Default::default()
            };
            if let Some(p) = find_embedding(&h, &opts, meter)? {
                let e = without_edge(&p, (u, v)).to_embedding(g);
                return Ok(Certificate::reject()
                    .violation("addable-edge", format!("({u},{v}) fits in a face"))
                    .with_witness(Witness::Edge((u, v)))
                    .with_witness(Witness::Embedding(e)));
            }
        }
        Ok(Certificate::accept())
    })
}

/// All embeddings of `g` up to homeomorphism.
pub fn all_embeddings(
    g: &SimpleGraph,
    opts: &SearchOptions,
    meter: &mut Meter,
) -> Result<Vec<Planarization>, BudgetExceeded> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    enumerate_embeddings(g, opts, meter, &mut |p| {
        if seen.insert(signature(p)) {
            out.push(p.clone());
        }
        Flow::Continue
    })?;
    Ok(out)
}

/// Direct form of the planar-maximal test: enumerate every embedding.
pub fn is_planar_maximal_by_enumeration(
    g: &SimpleGraph,
    meter: &mut Meter,
) -> Result<bool, BudgetExceeded> {
    let embs = all_embeddings(g, &SearchOptions::default(), meter)?;
    Ok(!embs.is_empty()
        && embs
            .iter()
            .all(|p| planarization_addable_pair(p, g).is_none()))
}

/// Some embedding is crossing-augmented; the certificate carries its map witness.
pub fn is_crossing_augmented_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    metered(budget, |meter| {
        let opts = SearchOptions {
            require_kites: true,
            ..Default::default()
        };
        Ok(match find_embedding(g, &opts, meter)? {
            Some(p) => {
                let e = p.to_embedding(g);
                let b =
                    embedding_to_witness(&e).expect("kite-only embedding is crossing-augmented");
                Certificate::accept()
                    .with_witness(Witness::Embedding(e))
                    .with_witness(Witness::Map(b))
            }
            None => Certificate::reject().note("reason", "no crossing-augmented embedding"),
        })
    })
}

/// Some embedding is fully triangulated; the certificate carries the hole-free witness.
pub fn is_fully_triangulated_1planar(g: &SimpleGraph, budget: SearchBudget) -> Certificate {
    if !g.is_biconnected() {
        return Certificate::reject().violation(
            "not-2-connected",
            "fully triangulated needs a 2-connected graph",
        );
    }
    metered(budget, |meter| {
        let opts = SearchOptions {
            require_kites: true,
            ..Default::default()
        };
        let mut found = None;
        enumerate_embeddings(g, &opts, meter, &mut |p| {
            let e = p.to_embedding(g);
            if is_fully_triangulated(&e).is_accept() {
                found = Some(e);
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
        Ok(match found {
            Some(e) => {
                let b = crate::separated::separated_embedding(&e)
                    .unwrap()
                    .flattened_witness();
                Certificate::accept()
                    .with_witness(Witness::Embedding(e))
                    .with_witness(Witness::Map(b))
            }
            None => Certificate::reject().note("reason", "no fully triangulated embedding"),
        })
    })
}
