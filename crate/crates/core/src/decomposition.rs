//! Reduction of the maximality questions to the components at a
//! separation pair.
//!
//! At a pair `{u, v}` every component `G_i` is completed to `G_i + uv`
//! and profiled over its embeddings with `uv` uncrossed. The whole-graph
//! verdict then only depends on how many components can be drawn closed,
//! open on one side, or open on both sides.

use std::collections::BTreeSet;

use crate::certificate::{Certificate, Witness};
use crate::embedding::{classify_in_planarization, planarization_addable_pair, OpenClosed};
use crate::graph::{Edge, GraphError, SeparationPair, SimpleGraph};
use crate::recognition::{is_planar_maximal_1planar, is_plane_maximal_1planar};
use crate::search::{
    enumerate_embeddings, BudgetExceeded, Flow, Meter, SearchBudget, SearchOptions,
};

/// `G_i + uv` on local labels. `labels[i - 1]` is the original label of
/// local vertex `i`; `u` and `v` are always local `1` and `2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: SimpleGraph,
    pub labels: Vec<usize>,
    pub marked: Edge,
}

impl Component {
    pub fn original_vertices(&self) -> BTreeSet<usize> {
        self.labels.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub pair: SeparationPair,
    pub components: Vec<Component>,
}

fn component(g: &SimpleGraph, u: usize, v: usize, part: &BTreeSet<usize>) -> Component {
    let mut labels = vec![u, v];
    labels.extend(part.iter().copied());
    let mut index = vec![0; g.n() + 1];
    for (i, &w) in labels.iter().enumerate() {
        index[w] = i + 1;
    }
    let keep: BTreeSet<usize> = labels.iter().copied().collect();
    let edges = g
        .edges()
        .filter(|&(a, b)| keep.contains(&a) && keep.contains(&b) && (a, b) != (u.min(v), u.max(v)))
        .map(|(a, b)| (index[a], index[b]))
        .chain([(1, 2)]);
    Component {
        graph: SimpleGraph::new(labels.len(), edges).expect("component graph"),
        labels,
        marked: (1, 2),
    }
}

/// Components at every separation pair, in pair order.
pub fn decompose(g: &SimpleGraph) -> Result<Vec<Decomposition>, GraphError> {
    Ok(g.separation_pairs()?
        .into_iter()
        .map(|pair| {
            let components = pair
                .components
                .iter()
                .map(|c| component(g, pair.u, pair.v, c))
                .collect();
            Decomposition { pair, components }
        })
        .collect())
}

/// Which shapes a component admits around its marked edge. The `maximal_*`
/// flags only count embeddings that are planar-maximal on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComponentProfile {
    pub admits_planar_e: bool,
    pub admits_closed: bool,
    pub admits_one_sided_open: bool,
    pub admits_two_sided_open: bool,
    pub maximal_closed: bool,
    pub maximal_one_sided_open: bool,
    pub maximal_two_sided_open: bool,
    /// Every embedding with the marked edge uncrossed is planar-maximal.
    pub all_maximal: bool,
}

impl ComponentProfile {
    pub fn admits_open(&self) -> bool {
        self.admits_one_sided_open || self.admits_two_sided_open
    }

    /// Best shape among planar-maximal embeddings: closed before one-sided
    /// before two-sided.
    pub fn best_maximal(&self) -> Option<OpenClosed> {
        if self.maximal_closed {
            Some(OpenClosed::Closed)
        } else if self.maximal_one_sided_open {
            Some(OpenClosed::OpenOneSided)
        } else if self.maximal_two_sided_open {
            Some(OpenClosed::OpenTwoSided)
        } else {
            None
        }
    }
}

pub fn profile_component(
    c: &Component,
    meter: &mut Meter,
) -> Result<ComponentProfile, BudgetExceeded> {
    let (a, b) = c.marked;
    let opts = SearchOptions {
        uncrossed: Some(c.marked),
        ..Default::default()
    };
    let mut pr = ComponentProfile {
        all_maximal: true,
        ..Default::default()
    };
    enumerate_embeddings(&c.graph, &opts, meter, &mut |p| {
        pr.admits_planar_e = true;
        let shape = classify_in_planarization(p, a, b).expect("marked edge is uncrossed");
        let maximal = planarization_addable_pair(p, &c.graph).is_none();
        pr.all_maximal &= maximal;
        match shape {
            OpenClosed::Closed => {
                pr.admits_closed = true;
                pr.maximal_closed |= maximal;
            }
            OpenClosed::OpenOneSided => {
                pr.admits_one_sided_open = true;
                pr.maximal_one_sided_open |= maximal;
            }
            OpenClosed::OpenTwoSided => {
                pr.admits_two_sided_open = true;
                pr.maximal_two_sided_open |= maximal;
            }
        }
        Flow::Continue
    })?;
    Ok(pr)
}

/// Outcome of a reduction, with the reason for a rejection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    Accept,
    Reject(String),
}

/// Every embedding is planar-maximal iff `uv` is an edge, every component
/// is planar-maximal in each of its embeddings, and at most one component
/// can be drawn open (two open sides could otherwise face each other).
pub fn reduce_planar_maximal(profiles: &[ComponentProfile], uv_edge: bool) -> Reduced {
    if let Some(i) = profiles.iter().position(|p| !p.admits_planar_e) {
        return Reduced::Reject(format!(
            "component {} has no embedding with the pair edge planar",
            i + 1
        ));
    }
    if !uv_edge {
        return Reduced::Reject("the separation pair is not adjacent and shares a face".into());
    }
    if let Some(i) = profiles.iter().position(|p| !p.all_maximal) {
        return Reduced::Reject(format!(
            "component {} has an embedding with an addable edge",
            i + 1
        ));
    }
    let open = profiles.iter().filter(|p| p.admits_open()).count();
    if open > 1 {
        return Reduced::Reject(format!("{open} components can be drawn open"));
    }
    Reduced::Accept
}

/// Some embedding is planar-maximal iff `uv` is an edge and, choosing for
/// each component its best planar-maximal shape, the two-sided open
/// components can be separated: at most one more than the closed ones,
/// since the gap holding `uv` itself separates.
pub fn reduce_plane_maximal(profiles: &[ComponentProfile], uv_edge: bool) -> Reduced {
    if let Some(i) = profiles.iter().position(|p| !p.admits_planar_e) {
        return Reduced::Reject(format!(
            "component {} has no embedding with the pair edge planar",
            i + 1
        ));
    }
    if !uv_edge {
        return Reduced::Reject("the separation pair is not adjacent and shares a face".into());
    }
    let mut closed = 0;
    let mut two = 0;
    for (i, p) in profiles.iter().enumerate() {
        match p.best_maximal() {
            None => {
                return Reduced::Reject(format!(
                    "component {} has no planar-maximal embedding",
                    i + 1
                ))
            }
            Some(OpenClosed::Closed) => closed += 1,
            Some(OpenClosed::OpenOneSided) => {}
            Some(OpenClosed::OpenTwoSided) => two += 1,
        }
    }
    if two > closed + 1 {
        return Reduced::Reject(format!(
            "{two} two-sided open components but only {closed} closed"
        ));
    }
    Reduced::Accept
}

/// Checks every assignment of admitted shapes against the separation
/// rule on a line of components whose two ends meet at `uv`.
pub fn plane_maximal_exhaustive(profiles: &[ComponentProfile], uv_edge: bool) -> bool {
    if !uv_edge || profiles.iter().any(|p| !p.admits_planar_e) {
        return false;
    }
    let choices: Vec<Vec<OpenClosed>> = profiles
        .iter()
        .map(|p| {
            let mut c = Vec::new();
            if p.maximal_closed {
                c.push(OpenClosed::Closed);
            }
            if p.maximal_one_sided_open {
                c.push(OpenClosed::OpenOneSided);
            }
            if p.maximal_two_sided_open {
                c.push(OpenClosed::OpenTwoSided);
            }
            c
        })
        .collect();
    fn sides(s: OpenClosed, flip: bool) -> (bool, bool) {
        match s {
            OpenClosed::Closed => (false, false),
            OpenClosed::OpenOneSided => (!flip, flip),
            OpenClosed::OpenTwoSided => (true, true),
        }
    }
    fn arrange(pool: &mut Vec<OpenClosed>, right_open: bool) -> bool {
        if pool.is_empty() {
            return true;
        }
        for i in 0..pool.len() {
            let s = pool.remove(i);
            for flip in [false, true] {
                let (l, r) = sides(s, flip);
                if !(right_open && l) && arrange(pool, r) {
                    pool.insert(i, s);
                    return true;
                }
            }
            pool.insert(i, s);
        }
        false
    }
    fn pick(choices: &[Vec<OpenClosed>], chosen: &mut Vec<OpenClosed>) -> bool {
        if chosen.len() == choices.len() {
            return arrange(&mut chosen.clone(), false);
        }
        for &s in &choices[chosen.len()] {
            chosen.push(s);
            if pick(choices, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    pick(&choices, &mut Vec::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximalityKind {
    Plane,
    Planar,
}

/// Decides plane- or planar-maximality through the first separation pair.
/// Graphs without separation pairs go straight to the direct recognizer.
pub fn maximal_by_decomposition(
    g: &SimpleGraph,
    kind: MaximalityKind,
    budget: SearchBudget,
) -> Certificate {
    let direct = || match kind {
        MaximalityKind::Plane => is_plane_maximal_1planar(g, budget),
        MaximalityKind::Planar => is_planar_maximal_1planar(g, budget),
    };
    let decomposition = match decompose(g) {
        Ok(d) => d,
        Err(e) => return Certificate::reject().violation("not-2-connected", e.to_string()),
    };
    let Some(first) = decomposition.into_iter().next() else {
        return direct().note("reduction", "none");
    };
    let (u, v) = (first.pair.u, first.pair.v);
    let mut meter = Meter::new(budget);
    let mut profiles = Vec::new();
    for c in &first.components {
        match profile_component(c, &mut meter) {
            Ok(p) => profiles.push(p),
            Err(e) => return Certificate::indeterminate(format!("budget exceeded: {e}")),
        }
    }
    let uv_edge = g.has_edge(u, v);
    let verdict = match kind {
        MaximalityKind::Plane => reduce_plane_maximal(&profiles, uv_edge),
        MaximalityKind::Planar => reduce_planar_maximal(&profiles, uv_edge),
    };
    let cert = match verdict {
        Reduced::Accept => Certificate::accept(),
        Reduced::Reject(why) => Certificate::reject().note("reason", why),
    };
    cert.note("pair", format!("{u} {v}"))
        .note("components", first.components.len().to_string())
        .with_witness(Witness::Edge((u, v)))
}
