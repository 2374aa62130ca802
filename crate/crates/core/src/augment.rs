//! Kite augmentation: draw the four quadrilateral edges of every crossing
//! next to it.

use crate::embedding::{validate_1planar, EmbeddingError, OnePlanarEmbedding};
use crate::graph::normalize;
use crate::rotation::edge_of;

/// Adds every missing kite edge beside its crossing. A kite edge that exists
/// but is itself crossed loses that crossing and is redrawn beside the kite,
/// so the crossing count never grows.
pub fn kite_augment(e: &OnePlanarEmbedding) -> Result<OnePlanarEmbedding, EmbeddingError> {
    let cert = validate_1planar(e);
    if !cert.is_accept() {
        let v = &cert.violations[0];
        return Err(EmbeddingError::Invalid(format!(
            "{} {}",
            v.rule, v.location
        )));
    }
    let mut g = e.graph().clone();
    let mut p = e.planarize()?;
    let n = p.n;
    for x in n + 1..=p.map.vertex_count() {
        if p.crossing_at[x].is_none() || p.map.degree(x) != 4 {
            continue;
        }
        for i in 0..4 {
            let d = p.map.rotation(x)[i];
            let a = p.map.head(d);
            let b = p.map.head(p.map.succ(d));
            if g.has_edge(a, b) {
                if p.map.dart_between(a, b).is_some() {
                    continue;
                }
                // The edge is crossed at some other point y: undo that crossing.
                let y = (n + 1..=p.map.vertex_count())
                    .find(|&y| {
                        p.crossing_at[y].is_some_and(|c| {
                            normalize(c.first.0, c.first.1) == normalize(a, b)
                                || normalize(c.second.0, c.second.1) == normalize(a, b)
                        }) && p.map.degree(y) == 4
                    })
                    .expect("crossed edge has a crossing point");
                for dy in p.map.rotation(y).to_vec() {
                    let h = p.map.head(dy);
                    if h == a || h == b {
                        p.remove_edge(edge_of(dy));
                    }
                }
                p.map.smooth(y);
                p.crossing_at[y] = None;
            } else {
                g.try_add_edge(a, b).expect("new kite edge");
            }
            let d = p.map.rotation(x)[i];
            let f = p.map.insert_beside(d);
            p.origin.push(normalize(a, b));
            p.copy.push(false);
            debug_assert_eq!(f + 1, p.origin.len());
        }
    }
    Ok(p.to_embedding(&g))
}
