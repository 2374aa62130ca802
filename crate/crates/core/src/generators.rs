//! Deterministic fixtures and parametric families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::embedding::{
    is_crossing_augmented, is_ic, validate_1planar, Crossing, OnePlanarEmbedding, Planarization,
};
use crate::fixtures;
use crate::graph::{normalize, Edge, SimpleGraph};
use crate::rotation::{twin, Dart, RotationSystem};
use crate::witness::{embedding_to_witness, face_witness, BipartiteMapWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("no optimal 1-planar graph exists for n={0}")]
    NoOptimal(usize),
    #[error("2.5n-4 is not an integer for odd n={0}")]
    OddOuter(usize),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("no embedding with {crossings} crossings on {n} vertices after {tries} tries")]
    Infeasible {
        n: usize,
        crossings: usize,
        tries: usize,
    },
}

/// A pseudo double wheel: poles `1` (north) and `2` (south) and an even rim
/// `3..=n`, rim vertices alternately joined to the two poles. All faces
/// are quadrilaterals. Returned as neighbour lists in rotation order.
fn pseudo_double_wheel(n: usize) -> Vec<Vec<usize>> {
    let k = n - 2;
    let r = |i: usize| 3 + i % k;
    let mut lists = vec![Vec::new(); n];
    lists[0] = (0..k).step_by(2).map(r).collect();
    lists[1] = (1..k).step_by(2).rev().map(r).collect();
    for i in 0..k {
        let v = r(i);
        let pole = if i % 2 == 0 { 1 } else { 2 };
        let (prev, next) = (r(i + k - 1), r(i + 1));
        lists[v - 1] = if i % 2 == 0 {
            vec![next, pole, prev]
        } else {
            vec![prev, pole, next]
        };
    }
    lists
}

/// Splits vertex `v` along the neighbours at rotation positions `i < j`:
/// a new vertex takes over the arc `i..=j`, both stay adjacent to the two
/// ends, and the quadrilateral between them becomes a new face.
fn split_vertex(lists: &mut Vec<Vec<usize>>, v: usize, i: usize, j: usize) {
    let w = lists.len() + 1;
    let rot = lists[v - 1].clone();
    let d = rot.len();
    let arc: Vec<usize> = rot[i..=j].to_vec();
    let rest: Vec<usize> = (j..=i + d).map(|k| rot[k % d]).collect();
    for &x in &arc[1..arc.len() - 1] {
        for y in lists[x - 1].iter_mut() {
            if *y == v {
                *y = w;
            }
        }
    }
    let (a, b) = (arc[0], arc[arc.len() - 1]);
    // `a` sees v then w going towards the arc; `b` sees w then v.
    let pa = lists[a - 1].iter().position(|&y| y == v).unwrap();
    lists[a - 1].insert(pa, w);
    let pb = lists[b - 1].iter().position(|&y| y == v).unwrap();
    lists[b - 1].insert(pb + 1, w);
    lists[v - 1] = rest;
    lists.push(arc);
}

/// Quadrangulation with crossing diagonals in every face, as a validated
/// embedding.
fn fill_quadrangulation(lists: &[Vec<usize>]) -> OnePlanarEmbedding {
    let n = lists.len();
    let map = RotationSystem::from_neighbor_lists(lists).expect("quadrangulation rotation");
    let (face, count) = map.face_ids();
    let faces = map.trace_faces();
    debug_assert!(faces.iter().all(|f| f.len() == 4));
    let mut rotation: Vec<Vec<usize>> = (1..=n)
        .map(|v| {
            map.rotation(v)
                .iter()
                .flat_map(|&d| [map.head(d), n + 1 + face[map.succ(d)]])
                .collect()
        })
        .collect();
    rotation.resize(n + count, Vec::new());
    let mut crossings = vec![Crossing::new((0, 0), (0, 0), false); count];
    let mut edges: Vec<Edge> = map
        .live_edges()
        .map(|e| {
            let [u, v] = map.ends(e);
            normalize(u, v)
        })
        .collect();
    for f in &faces {
        let t: Vec<usize> = f.0.iter().map(|&d| map.tail(d)).collect();
        let id = face[f.0[0]];
        rotation[n + id] = t.iter().rev().copied().collect();
        crossings[id] = Crossing::new(normalize(t[0], t[2]), normalize(t[1], t[3]), false);
        edges.push(normalize(t[0], t[2]));
        edges.push(normalize(t[1], t[3]));
    }
    let g = SimpleGraph::new(n, edges).expect("diagonals form a simple graph");
    let raw = OnePlanarEmbedding::from_parts(g.clone(), crossings, rotation);
    raw.planarize()
        .expect("well-formed planarization")
        .to_embedding(&g)
}

/// An optimal 1-planar embedding on `n` vertices: a pseudo double wheel
/// (with one vertex split for odd `n`) and both diagonals in every face.
pub fn optimal_1planar_embedding(n: usize) -> Result<OnePlanarEmbedding, GenerateError> {
    if n < 8 || n == 9 {
        return Err(GenerateError::NoOptimal(n));
    }
    let lists = if n.is_multiple_of(2) {
        pseudo_double_wheel(n)
    } else {
        let mut l = pseudo_double_wheel(n - 1);
        split_vertex(&mut l, 1, 0, 2);
        l
    };
    let e = fill_quadrangulation(&lists);
    assert!(
        validate_1planar(&e).is_accept(),
        "optimal embedding for n={n} fails validation"
    );
    assert_eq!(e.graph().m(), 4 * n - 8);
    Ok(e)
}

pub fn gen_optimal_1planar(n: usize) -> Result<SimpleGraph, GenerateError> {
    optimal_1planar_embedding(n).map(|e| e.graph().clone())
}

/// A chain of `K4`s glued along rungs of a ladder, outer 1-planar in the
/// order `1..=n`.
pub fn gen_outer_optimal(n: usize) -> Result<SimpleGraph, GenerateError> {
    if n % 2 == 1 {
        return Err(GenerateError::OddOuter(n));
    }
    if n < 4 {
        return Err(GenerateError::Invalid(format!(
            "outer optimal family needs n >= 4, got {n}"
        )));
    }
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..=(n - 2) / 2 {
        let quad = [i, i + 1, n - i, n + 1 - i];
        for a in 0..4 {
            for b in a + 1..4 {
                edges.insert(normalize(quad[a], quad[b]));
            }
        }
    }
    let g = SimpleGraph::new(n, edges).expect("simple ladder");
    assert_eq!(2 * g.m() + 8, 5 * n);
    Ok(g)
}

/// The `r x c` grid; vertex `(i, j)` is `i * c + j + 1`.
pub fn grid(r: usize, c: usize) -> SimpleGraph {
    let id = |i: usize, j: usize| i * c + j + 1;
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    SimpleGraph::new(r * c, edges).expect("grid")
}

/// Double wheel (poles `1`, `2`, rim `3..=n`) plus the pole edge `12`
/// crossing the rim edge `34`: IC-planar with `3n - 5` edges.
pub fn sparse_ic(n: usize) -> Result<OnePlanarEmbedding, GenerateError> {
    if n < 5 {
        return Err(GenerateError::Invalid(format!(
            "sparse-ic needs n >= 5, got {n}"
        )));
    }
    let k = n - 2;
    let r = |i: usize| 3 + i % k;
    let x = n + 1;
    let mut rotation = vec![Vec::new(); n + 1];
    rotation[0] = (0..k).map(r).collect();
    rotation[1] = (0..k).rev().map(r).collect();
    rotation[0].insert(1, x);
    rotation[1].insert(k - 1, x);
    for i in 0..k {
        let (prev, next) = (r(i + k - 1), r(i + 1));
        rotation[r(i) - 1] = vec![next, 1, prev, 2];
    }
    rotation[2][0] = x;
    rotation[3][2] = x;
    rotation[n] = vec![1, 3, 2, 4];
    let mut edges: Vec<Edge> = (0..k)
        .flat_map(|i| [(1, r(i)), (2, r(i)), normalize(r(i), r(i + 1))])
        .collect();
    edges.push((1, 2));
    let g = SimpleGraph::new(n, edges).expect("double wheel");
    let c = Crossing::new((1, 2), (3, 4), false).canonical();
    let flag = !crate::rotation::cyclic_eq(
        &rotation[n],
        &Crossing::new(c.first, c.second, false).around(),
    );
    let e =
        OnePlanarEmbedding::from_parts(g, vec![Crossing::new(c.first, c.second, flag)], rotation);
    assert!(validate_1planar(&e).is_accept());
    assert!(is_ic(&e));
    assert_eq!(e.graph().m(), 3 * n - 5);
    Ok(e)
}

/// Five components hanging off the separation pair `{1, 2}`: a
/// B-configuration, a W-configuration, a single vertex, another
/// W-configuration and another single vertex.
pub fn pearls_chain() -> SimpleGraph {
    let mut edges = vec![(1, 2)];
    let relabel = |e: &OnePlanarEmbedding, base: usize, edges: &mut Vec<Edge>| {
        for (a, b) in e.graph().edges() {
            let m = |v: usize| if v <= 2 { v } else { base + v - 3 };
            if (a, b) != (1, 2) {
                edges.push(normalize(m(a), m(b)));
            }
        }
    };
    relabel(&fixtures::b_configuration(), 3, &mut edges);
    relabel(&fixtures::w_configuration(), 5, &mut edges);
    edges.extend([(1, 9), (2, 9)]);
    relabel(&fixtures::w_configuration(), 10, &mut edges);
    edges.extend([(1, 14), (2, 14)]);
    SimpleGraph::new(14, edges).expect("pearls")
}

/// `K4` as four regions around a point: the witness of the kite.
pub fn pizza_witness() -> BipartiteMapWitness {
    embedding_to_witness(&fixtures::kite()).expect("kite is crossing-augmented")
}

/// `K4` as a rice-ball: one point per face of the tetrahedron.
pub fn riceball_witness() -> BipartiteMapWitness {
    face_witness(&fixtures::tetrahedron()).expect("tetrahedron faces")
}

/// Darts at `u` and `v` whose following corners share a face; `None` for a
/// vertex without edges.
fn common_corner(map: &RotationSystem, u: usize, v: usize) -> Option<(Option<Dart>, Option<Dart>)> {
    let (id, _) = map.face_ids();
    let ru = map.rotation(u);
    let rv = map.rotation(v);
    match (ru.is_empty(), rv.is_empty()) {
        (true, true) => Some((None, None)),
        (true, false) => Some((None, Some(rv[0]))),
        (false, true) => Some((Some(ru[0]), None)),
        (false, false) => ru.iter().find_map(|&du| {
            rv.iter()
                .find(|&&dv| id[map.succ(du)] == id[map.succ(dv)])
                .map(|&dv| (Some(du), Some(dv)))
        }),
    }
}

fn connect(p: &mut Planarization, u: usize, v: usize, origin: Edge) -> usize {
    let (du, dv) = common_corner(&p.map, u, v).expect("common face");
    p.add_edge(u, du, v, dv, origin, false)
}

/// Random stacked triangulation on `n` vertices.
fn stacked(n: usize, rng: &mut ChaCha8Rng) -> Planarization {
    let mut p = Planarization::empty(n);
    let base = n.min(3);
    for v in 2..=base {
        for u in 1..v {
            connect(&mut p, u, v, (u, v));
        }
    }
    for v in 4..=n {
        let faces = p.map.trace_faces();
        let f = faces.choose(rng).unwrap();
        let corners: Vec<usize> = f.0.iter().map(|&d| p.map.tail(d)).collect();
        let first = f.0[0];
        p.add_edge(
            corners[0],
            Some(p.map.pred(first)),
            v,
            None,
            normalize(corners[0], v),
            false,
        );
        for &c in &corners[1..] {
            connect(&mut p, c, v, normalize(c, v));
        }
    }
    p
}

/// Replaces a triangulated edge `ac` with apexes `b`, `d` by a crossing
/// of `ac` and the new edge `bd`.
fn try_cross(p: &mut Planarization, e: usize) -> bool {
    let n = p.n;
    if !p.map.is_alive(e) {
        return false;
    }
    let [a, c] = p.map.ends(e);
    if a > n || c > n {
        return false;
    }
    let side = |d: Dart| -> Option<usize> {
        let f: Vec<Dart> = {
            let mut out = vec![d];
            let mut x = p.map.face_next(d);
            while x != d && out.len() < 4 {
                out.push(x);
                x = p.map.face_next(x);
            }
            out
        };
        (f.len() == 3).then(|| p.map.tail(f[2])).filter(|&w| w <= n)
    };
    let (Some(b), Some(d)) = (side(2 * e), side(twin(2 * e))) else {
        return false;
    };
    let crossed_bd = p
        .map
        .live_edges()
        .any(|x| p.origin[x] == normalize(b, d) && p.map.ends(x).iter().any(|&w| w > n));
    if b == d || crossed_bd {
        return false;
    }
    if let Some(bd) = p.map.dart_between(b, d) {
        // A planar bd elsewhere is rerouted through the crossing.
        p.remove_edge(crate::rotation::edge_of(bd));
    }
    let (x, _) = p.subdivide(e);
    p.crossing_at[x] = Some(Crossing::new(normalize(a, c), normalize(b, d), false));
    connect(p, b, x, normalize(b, d));
    connect(p, x, d, normalize(b, d));
    true
}

/// Seeded random 1-planar embedding with exactly `crossings` crossings.
pub fn random_1planar_embedding(
    n: usize,
    crossings: usize,
    seed: u64,
) -> Result<OnePlanarEmbedding, GenerateError> {
    if n == 0 {
        return Err(GenerateError::Invalid("n must be positive".into()));
    }
    if crossings > 0 && n < 4 || crossings > n.saturating_sub(2) {
        return Err(GenerateError::Invalid(format!(
            "at most n-2 crossings, got {crossings}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tries = 20;
    for _ in 0..tries {
        let mut p = stacked(n, &mut rng);
        let mut placed = 0;
        let mut ids: Vec<usize> = p.map.live_edges().collect();
        ids.shuffle(&mut rng);
        for e in ids {
            if placed == crossings {
                break;
            }
            if try_cross(&mut p, e) {
                placed += 1;
            }
        }
        if placed < crossings {
            continue;
        }
        let planar: Vec<usize> = p
            .map
            .live_edges()
            .filter(|&e| p.map.ends(e).iter().all(|&v| v <= n))
            .collect();
        for e in planar {
            if rng.gen_bool(0.25) {
                let [u, v] = p.map.ends(e);
                let (du, dv) = (2 * e, twin(2 * e));
                let after = |d: Dart| Some(p.map.pred(d)).filter(|&x| x != d);
                let (au, av) = (after(du), after(dv));
                p.remove_edge(e);
                if !p.map.is_connected() {
                    // A bridge goes back where it was.
                    p.add_edge(u, au, v, av, normalize(u, v), false);
                }
            }
        }
        let edges: std::collections::BTreeSet<Edge> =
            p.map.live_edges().map(|e| p.origin[e]).collect();
        let g = SimpleGraph::new(n, edges).expect("simple");
        let out = p.to_embedding(&g);
        assert!(
            validate_1planar(&out).is_accept(),
            "random embedding n={n} seed={seed}"
        );
        return Ok(out);
    }
    Err(GenerateError::Infeasible {
        n,
        crossings,
        tries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    Tetrahedron,
    Kite,
    BareCross,
    RiceballWitness,
    PizzaWitness,
    K5,
    K5MinusE,
    WConfig,
    BConfig,
    PearlsChain,
    SparseIc(usize),
    Grid(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureObject {
    Graph(SimpleGraph),
    Embedding(OnePlanarEmbedding),
    Witness(BipartiteMapWitness),
}

impl FixtureName {
    pub const PLAIN: [FixtureName; 10] = [
        FixtureName::Tetrahedron,
        FixtureName::Kite,
        FixtureName::BareCross,
        FixtureName::RiceballWitness,
        FixtureName::PizzaWitness,
        FixtureName::K5,
        FixtureName::K5MinusE,
        FixtureName::WConfig,
        FixtureName::BConfig,
        FixtureName::PearlsChain,
    ];
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureName::Tetrahedron => write!(f, "tetrahedron"),
            FixtureName::Kite => write!(f, "kite"),
            FixtureName::BareCross => write!(f, "bare-cross"),
            FixtureName::RiceballWitness => write!(f, "riceball-witness"),
            FixtureName::PizzaWitness => write!(f, "pizza-witness"),
            FixtureName::K5 => write!(f, "k5"),
            FixtureName::K5MinusE => write!(f, "k5-minus-e"),
            FixtureName::WConfig => write!(f, "w-config"),
            FixtureName::BConfig => write!(f, "b-config"),
            FixtureName::PearlsChain => write!(f, "pearls-chain"),
            FixtureName::SparseIc(n) => write!(f, "sparse-ic({n})"),
            FixtureName::Grid(r, c) => write!(f, "grid({r},{c})"),
        }
    }
}

impl FromStr for FixtureName {
    type Err = GenerateError;

    /// Accepts the display form, case-insensitively; `sparse-ic(n)` and
    /// `grid(r,c)` carry parameters.
    fn from_str(s: &str) -> Result<Self, GenerateError> {
        let t = s.trim().to_ascii_lowercase();
        if let Some(f) = FixtureName::PLAIN.into_iter().find(|f| f.to_string() == t) {
            return Ok(f);
        }
        let bad = || GenerateError::UnknownFixture(s.to_string());
        let args = |prefix: &str| -> Option<Vec<usize>> {
            let inner = t
                .strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?;
            inner.split(',').map(|x| x.trim().parse().ok()).collect()
        };
        if let Some(a) = args("sparse-ic") {
            return match a[..] {
                [n] => Ok(FixtureName::SparseIc(n)),
                _ => Err(bad()),
            };
        }
        if let Some(a) = args("grid") {
            return match a[..] {
                [r, c] => Ok(FixtureName::Grid(r, c)),
                _ => Err(bad()),
            };
        }
        Err(bad())
    }
}

pub fn fixture(name: FixtureName) -> Result<FixtureObject, GenerateError> {
    use FixtureObject::*;
    Ok(match name {
        FixtureName::Tetrahedron => Embedding(fixtures::tetrahedron()),
        FixtureName::Kite => Embedding(fixtures::kite()),
        FixtureName::BareCross => Embedding(fixtures::bare_cross()),
        FixtureName::RiceballWitness => Witness(riceball_witness()),
        FixtureName::PizzaWitness => Witness(pizza_witness()),
        FixtureName::K5 => Embedding(fixtures::k5()),
        FixtureName::K5MinusE => Embedding(fixtures::k5_minus_edge()),
        FixtureName::WConfig => Embedding(fixtures::w_configuration()),
        FixtureName::BConfig => Embedding(fixtures::b_configuration()),
        FixtureName::PearlsChain => Graph(pearls_chain()),
        FixtureName::SparseIc(n) => Embedding(sparse_ic(n)?),
        FixtureName::Grid(r, c) => {
            if r == 0 || c == 0 {
                return Err(GenerateError::Invalid(format!(
                    "grid needs positive sides, got {r}x{c}"
                )));
            }
            Graph(grid(r, c))
        }
    })
}

/// Every embedding fixture that is crossing-augmented, kite-augmented
/// otherwise.
pub fn augmented_fixture_embeddings() -> Vec<(String, OnePlanarEmbedding)> {
    let mut out = Vec::new();
    for name in FixtureName::PLAIN
        .into_iter()
        .chain([FixtureName::SparseIc(6), FixtureName::SparseIc(8)])
    {
        if let Ok(FixtureObject::Embedding(e)) = fixture(name) {
            let e = if is_crossing_augmented(&e).is_accept() {
                e
            } else {
                crate::augment::kite_augment(&e).expect("fixture validates")
            };
            out.push((name.to_string(), e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{half_square, max_point_degree};

    #[test]
    fn optimal_sizes() {
        for n in [8, 10, 11, 12, 13, 14, 15] {
            let e = optimal_1planar_embedding(n).unwrap();
            assert_eq!(e.graph().m(), 4 * n - 8);
            assert!(is_crossing_augmented(&e).is_accept());
        }
        assert_eq!(gen_optimal_1planar(9), Err(GenerateError::NoOptimal(9)));
        assert_eq!(
            gen_optimal_1planar(9).unwrap_err().to_string(),
            "no optimal 1-planar graph exists for n=9"
        );
        assert!(gen_optimal_1planar(7).is_err());
    }

    #[test]
    fn outer_optimal_sizes() {
        assert_eq!(gen_outer_optimal(4).unwrap(), SimpleGraph::complete(4));
        assert_eq!(gen_outer_optimal(8).unwrap().m(), 16);
        assert!(matches!(
            gen_outer_optimal(5),
            Err(GenerateError::OddOuter(5))
        ));
    }

    #[test]
    fn sparse_ic_counts() {
        for n in 5..=9 {
            let e = sparse_ic(n).unwrap();
            assert_eq!(e.graph().m(), 3 * n - 5);
        }
        assert!(sparse_ic(4).is_err());
    }

    #[test]
    fn witnesses_of_k4() {
        let p = pizza_witness();
        assert_eq!(half_square(&p), SimpleGraph::complete(4));
        assert_eq!(max_point_degree(&p), 4);
        let r = riceball_witness();
        assert_eq!(half_square(&r), SimpleGraph::complete(4));
        assert_eq!(max_point_degree(&r), 3);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        for n in 1..=10usize {
            for k in 0..=n.saturating_sub(2) {
                for seed in 0..5 {
                    match random_1planar_embedding(n, k, seed) {
                        Ok(a) => {
                            assert_eq!(a, random_1planar_embedding(n, k, seed).unwrap());
                            assert_eq!(a.crossing_count(), k);
                            assert!(a.graph().is_connected());
                        }
                        Err(e) => {
                            assert!(k > (n - 2) / 2, "{n} {k} {seed}");
                            assert!(matches!(
                                e,
                                GenerateError::Infeasible { .. } | GenerateError::Invalid(_)
                            ));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fixture_names_roundtrip() {
        for name in FixtureName::PLAIN
            .into_iter()
            .chain([FixtureName::SparseIc(7), FixtureName::Grid(3, 4)])
        {
            assert_eq!(name.to_string().parse::<FixtureName>().unwrap(), name);
            assert!(fixture(name).is_ok());
        }
        assert!("nope".parse::<FixtureName>().is_err());
    }

    #[test]
    fn pearls_has_five_components() {
        let g = pearls_chain();
        let pairs = g.separation_pairs().unwrap();
        let p = pairs.iter().find(|p| (p.u, p.v) == (1, 2)).unwrap();
        assert_eq!(p.components.len(), 5);
    }
}
