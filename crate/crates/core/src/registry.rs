//! Named checks, selected at runtime.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::certificate::Certificate;
use crate::decomposition::{maximal_by_decomposition, MaximalityKind};
use crate::embedding::{
    is_crossing_augmented, is_ic, is_planar_maximal_embedding, is_planar_rotation,
    validate_1planar, OnePlanarEmbedding,
};
use crate::format::{parse_embedding, parse_graph, parse_witness, ParseError};
use crate::graph::SimpleGraph;
use crate::outer::{outer_1planar_suite, OuterVariant};
use crate::recognition::{
    crossing_set_oracle, is_crossing_augmented_1planar, is_fully_triangulated_1planar,
    is_maximal_1planar, is_optimal_1planar, is_planar_maximal_1planar, is_plane_maximal_1planar,
    oracle_1planar, rotation_1planar,
};
use crate::rotation::RotationSystem;
use crate::search::{Meter, SearchBudget};
use crate::separated::is_fully_triangulated;
use crate::witness::{is_hole_free, BipartiteMapWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Graph,
    Embedding,
    Witness,
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputKind::Graph => "graph",
            InputKind::Embedding => "embedding",
            InputKind::Witness => "witness",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Graph(SimpleGraph),
    Embedding(OnePlanarEmbedding),
    Witness(BipartiteMapWitness),
}

impl Input {
    /// Dispatches on the header keyword of the first non-comment line.
    pub fn parse(text: &str) -> Result<Input, ParseError> {
        let head = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        match head.split_whitespace().next() {
            Some("graph") => parse_graph(text).map(Input::Graph),
            Some("embedding") => parse_embedding(text).map(Input::Embedding),
            Some("witness") => parse_witness(text).map(Input::Witness),
            _ => Err(ParseError {
                line: 1,
                message: "expected a 'graph', 'embedding' or 'witness' header".into(),
            }),
        }
    }

    pub fn kind(&self) -> InputKind {
        match self {
            Input::Graph(_) => InputKind::Graph,
            Input::Embedding(_) => InputKind::Embedding,
            Input::Witness(_) => InputKind::Witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown property '{0}'")]
    Unknown(String),
    #[error("property '{name}' expects a {expected} file, got a {got} file")]
    WrongInput {
        name: String,
        expected: InputKind,
        got: InputKind,
    },
    #[error("{0}")]
    Precondition(String),
}

pub trait Check: Send + Sync {
    fn name(&self) -> &str;
    fn input(&self) -> InputKind;
    fn describe(&self) -> &str;
    fn run(&self, input: &Input, budget: SearchBudget) -> Result<Certificate, CheckError>;
}

type Body<T> = Box<dyn Fn(&T, SearchBudget) -> Result<Certificate, CheckError> + Send + Sync>;

enum Runner {
    Graph(Body<SimpleGraph>),
    Embedding(Body<OnePlanarEmbedding>),
    Witness(Body<BipartiteMapWitness>),
}

struct FnCheck {
    name: String,
    describe: String,
    runner: Runner,
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        &self.name
    }

    fn input(&self) -> InputKind {
        match self.runner {
            Runner::Graph(_) => InputKind::Graph,
            Runner::Embedding(_) => InputKind::Embedding,
            Runner::Witness(_) => InputKind::Witness,
        }
    }

    fn describe(&self) -> &str {
        &self.describe
    }

    fn run(&self, input: &Input, budget: SearchBudget) -> Result<Certificate, CheckError> {
        let wrong = || CheckError::WrongInput {
            name: self.name.clone(),
            expected: self.input(),
            got: input.kind(),
        };
        match (&self.runner, input) {
            (Runner::Graph(f), Input::Graph(g)) => f(g, budget),
            // Graph checks read the graph of an embedding file.
            (Runner::Graph(f), Input::Embedding(e)) => f(e.graph(), budget),
            (Runner::Embedding(f), Input::Embedding(e)) => f(e, budget),
            (Runner::Witness(f), Input::Witness(w)) => f(w, budget),
            _ => Err(wrong()),
        }
    }
}

/// Checks by property name.
pub struct Registry {
    checks: BTreeMap<String, Box<dyn Check>>,
}

fn ok(c: Certificate) -> Result<Certificate, CheckError> {
    Ok(c)
}

fn rotation_of(e: &OnePlanarEmbedding) -> Result<RotationSystem, CheckError> {
    RotationSystem::from_neighbor_lists(e.rotation())
        .map_err(|err| CheckError::Precondition(err.to_string()))
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            checks: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        self.checks.insert(check.name().to_string(), check);
    }

    fn graph(
        &mut self,
        name: &str,
        describe: &str,
        f: impl Fn(&SimpleGraph, SearchBudget) -> Result<Certificate, CheckError>
            + Send
            + Sync
            + 'static,
    ) {
        self.register(Box::new(FnCheck {
            name: name.into(),
            describe: describe.into(),
            runner: Runner::Graph(Box::new(f)),
        }));
    }

    fn embedding(
        &mut self,
        name: &str,
        describe: &str,
        f: impl Fn(&OnePlanarEmbedding, SearchBudget) -> Result<Certificate, CheckError>
            + Send
            + Sync
            + 'static,
    ) {
        self.register(Box::new(FnCheck {
            name: name.into(),
            describe: describe.into(),
            runner: Runner::Embedding(Box::new(f)),
        }));
    }

    fn witness(
        &mut self,
        name: &str,
        describe: &str,
        f: impl Fn(&BipartiteMapWitness, SearchBudget) -> Result<Certificate, CheckError>
            + Send
            + Sync
            + 'static,
    ) {
        self.register(Box::new(FnCheck {
            name: name.into(),
            describe: describe.into(),
            runner: Runner::Witness(Box::new(f)),
        }));
    }

    /// Every built-in check.
    pub fn standard() -> Self {
        let mut r = Registry::empty();
        r.embedding(
            "planar-rotation",
            "rotation system satisfies Euler's formula",
            |e, _| ok(is_planar_rotation(&rotation_of(e)?)),
        );
        r.embedding(
            "1planar-embedding",
            "embedding is a valid 1-planar embedding",
            |e, _| ok(validate_1planar(e)),
        );
        r.embedding(
            "ic",
            "every vertex is on at most one crossed edge",
            |e, _| {
                let v = validate_1planar(e);
                if !v.is_accept() {
                    return ok(v);
                }
                ok(if is_ic(e) {
                    Certificate::accept()
                } else {
                    Certificate::reject().violation("ic", "a vertex is on two crossed edges")
                })
            },
        );
        r.embedding("crossing-augmented", "every crossing spans a K4", |e, _| {
            let v = validate_1planar(e);
            ok(if v.is_accept() {
                is_crossing_augmented(e)
            } else {
                v
            })
        });
        r.embedding(
            "fully-triangulated",
            "separated planarization has only triangles",
            |e, _| ok(is_fully_triangulated(e)),
        );
        r.embedding(
            "planar-maximal-embedding",
            "no face holds two non-adjacent vertices",
            |e, _| {
                let v = validate_1planar(e);
                ok(if v.is_accept() {
                    is_planar_maximal_embedding(e)
                } else {
                    v
                })
            },
        );
        r.witness(
            "hole-free",
            "every face of the witness has length 4 or 6",
            |w, _| ok(is_hole_free(w)),
        );
        r.graph("1planar", "graph has a 1-planar embedding", |g, b| {
            ok(oracle_1planar(g, b))
        });
        r.graph(
            "1planar:crossing-sets",
            "1-planarity by planarity of crossing-set planarizations",
            |g, b| {
                let mut meter = Meter::new(b);
                ok(match crossing_set_oracle(g, &mut meter) {
                    Ok(Some(set)) => Certificate::accept().note("crossings", set.len().to_string()),
                    Ok(None) => Certificate::reject()
                        .note("reason", "no crossing set gives a planar planarization"),
                    Err(e) => Certificate::indeterminate(format!("budget exceeded: {e}")),
                })
            },
        );
        r.embedding("rotation-1planar", "the rotations at the vertices extend to a 1-planar embedding", |e, b| {
            if e.crossing_count() > 0 {
                return Err(CheckError::Precondition(
                    "rotation-1planar reads the rotation of an embedding file without crossings".into(),
                ));
            }
            ok(rotation_1planar(e.graph(), &rotation_of(e)?, b))
        });
        r.graph("maximal", "1-planar and no edge can be added", |g, b| {
            ok(is_maximal_1planar(g, b))
        });
        r.graph("optimal", "1-planar with 4n-8 edges", |g, b| {
            ok(is_optimal_1planar(g, b))
        });
        r.graph(
            "plane-maximal",
            "some embedding is planar-maximal",
            |g, b| ok(is_plane_maximal_1planar(g, b)),
        );
        r.graph(
            "planar-maximal",
            "every embedding is planar-maximal",
            |g, b| ok(is_planar_maximal_1planar(g, b)),
        );
        r.graph(
            "plane-maximal:reduction",
            "plane-maximality through a separation pair",
            |g, b| ok(maximal_by_decomposition(g, MaximalityKind::Plane, b)),
        );
        r.graph(
            "planar-maximal:reduction",
            "planar-maximality through a separation pair",
            |g, b| ok(maximal_by_decomposition(g, MaximalityKind::Planar, b)),
        );
        r.graph(
            "crossing-augmented-graph",
            "some embedding is crossing-augmented (4-map graph)",
            |g, b| ok(is_crossing_augmented_1planar(g, b)),
        );
        r.graph(
            "fully-triangulated-graph",
            "some embedding is fully triangulated (hole-free 4-map graph)",
            |g, b| ok(is_fully_triangulated_1planar(g, b)),
        );
        for v in OuterVariant::ALL {
            r.graph(
                &format!("outer:{v}"),
                "outer 1-planar variant by the chord model",
                move |g, b| ok(outer_1planar_suite(g, v, b)),
            );
        }
        r
    }

    pub fn get(&self, name: &str) -> Result<&dyn Check, CheckError> {
        self.checks
            .get(name)
            .map(|c| c.as_ref())
            .ok_or_else(|| CheckError::Unknown(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.checks.keys().map(|k| k.as_str())
    }

    pub fn run(
        &self,
        name: &str,
        input: &Input,
        budget: SearchBudget,
    ) -> Result<Certificate, CheckError> {
        self.get(name)?.run(input, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{write_embedding, write_graph};
    use crate::{fixtures, Verdict};

    #[test]
    fn dispatch_by_name() {
        let r = Registry::standard();
        assert!(r.names().count() >= 20);
        let kite = Input::parse(&write_embedding(&fixtures::kite())).unwrap();
        assert!(r
            .run("crossing-augmented", &kite, SearchBudget::default())
            .unwrap()
            .is_accept());
        assert!(r
            .run("1planar", &kite, SearchBudget::default())
            .unwrap()
            .is_accept());
        let k7 = Input::parse(&write_graph(&SimpleGraph::complete(7))).unwrap();
        let c = r.run("1planar", &k7, SearchBudget::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Reject);
        assert!(matches!(
            r.run("nope", &k7, SearchBudget::default()),
            Err(CheckError::Unknown(_))
        ));
        assert!(matches!(
            r.run("hole-free", &k7, SearchBudget::default()),
            Err(CheckError::WrongInput { .. })
        ));
        assert!(r
            .run(
                "outer:optimal",
                &Input::Graph(SimpleGraph::complete(4)),
                SearchBudget::default()
            )
            .unwrap()
            .is_accept());
    }
}
