//! Structured verdicts shared by validators and recognizers.

use std::fmt;

use crate::embedding::OnePlanarEmbedding;
use crate::graph::Edge;
use crate::witness::BipartiteMapWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    /// The search budget ran out before a verdict was reached.
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub location: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Embedding(OnePlanarEmbedding),
    Map(BipartiteMapWitness),
    /// A face given by its vertex cycle.
    Face(Vec<usize>),
    Edge(Edge),
    /// Cyclic vertex order of an outer drawing.
    Order(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub violations: Vec<Violation>,
    /// Free-form `key value` facts (crossing counts, reasons).
    pub notes: Vec<(String, String)>,
}

impl Certificate {
    pub fn accept() -> Self {
        Certificate {
            verdict: Verdict::Accept,
            witnesses: Vec::new(),
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn reject() -> Self {
        Certificate {
            verdict: Verdict::Reject,
            ..Certificate::accept()
        }
    }

    pub fn indeterminate(reason: impl Into<String>) -> Self {
        Certificate {
            verdict: Verdict::Indeterminate,
            ..Certificate::accept()
        }
        .note("reason", reason)
    }

    /// Accept if no violations were collected, reject otherwise.
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        let verdict = if violations.is_empty() {
            Verdict::Accept
        } else {
            Verdict::Reject
        };
        Certificate {
            verdict,
            violations,
            ..Certificate::accept()
        }
    }

    /// Turns an accept into a reject once violations have been recorded.
    pub fn finish(mut self) -> Self {
        if !self.violations.is_empty() && self.verdict == Verdict::Accept {
            self.verdict = Verdict::Reject;
        }
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn violation(mut self, rule: impl Into<String>, location: impl Into<String>) -> Self {
        self.violations.push(Violation {
            rule: rule.into(),
            location: location.into(),
        });
        self
    }

    pub fn note(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.notes.push((key.into(), value.into()));
        self
    }

    pub fn is_accept(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    pub fn is_reject(&self) -> bool {
        self.verdict == Verdict::Reject
    }

    pub fn embedding(&self) -> Option<&OnePlanarEmbedding> {
        self.witnesses.iter().find_map(|w| match w {
            Witness::Embedding(e) => Some(e),
            _ => None,
        })
    }

    pub fn map_witness(&self) -> Option<&BipartiteMapWitness> {
        self.witnesses.iter().find_map(|w| match w {
            Witness::Map(m) => Some(m),
            _ => None,
        })
    }

    pub fn note_value(&self, key: &str) -> Option<&str> {
        self.notes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Line-oriented rendering: `verdict`, notes, violations, then witnesses
    /// in their file formats.
    pub fn render(&self) -> String {
        let mut out = format!("verdict {}\n", self.verdict);
        for (k, v) in &self.notes {
            out.push_str(&format!("note {k} {v}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!("violation {} {}\n", v.rule, v.location));
        }
        for w in &self.witnesses {
            match w {
                Witness::Embedding(e) => out.push_str(&crate::format::write_embedding(e)),
                Witness::Map(m) => out.push_str(&crate::format::write_witness(m)),
                Witness::Face(f) => out.push_str(&format!("face {}\n", join(f))),
                Witness::Edge((u, v)) => out.push_str(&format!("edge {u} {v}\n")),
                Witness::Order(o) => out.push_str(&format!("order {}\n", join(o))),
            }
        }
        out
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
