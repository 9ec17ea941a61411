//! The standard and positive semidefinite color-change rules.
//!
//! All forces available in one iteration are computed against the coloring
//! at the start of that iteration and applied together.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// A blue vertex with exactly one white neighbor forces it.
    Standard,
    /// The standard rule applied separately inside each connected component
    /// of the white subgraph.
    #[serde(rename = "psd")]
    PositiveSemidefinite,
}

impl Rule {
    pub const ALL: [Rule; 2] = [Rule::Standard, Rule::PositiveSemidefinite];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Standard => "standard",
            Rule::PositiveSemidefinite => "psd",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "standard" => Ok(Rule::Standard),
            "psd" | "positive-semidefinite" => Ok(Rule::PositiveSemidefinite),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("unknown rule `{s}`"),
            }),
        }
    }
}

/// One force `forcer -> forced`, made during iteration `iteration` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Force {
    pub forcer: usize,
    pub forced: usize,
    pub iteration: usize,
}

/// Forces in chronological order; within an iteration, by forced vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingTrace {
    pub steps: Vec<Force>,
}

impl ForcingTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn iterations(&self) -> usize {
        self.steps.last().map_or(0, |f| f.iteration + 1)
    }

    /// Replays the trace from `initial`, checking that every forcer is blue
    /// and every forced vertex white when its force happens. Returns the
    /// final coloring, or `None` if the trace is not sound.
    pub fn replay(&self, initial: VertexSet) -> Option<VertexSet> {
        let mut blue = initial;
        let mut pending = initial;
        let mut iteration = 0;
        for force in &self.steps {
            if force.iteration != iteration {
                if force.iteration < iteration {
                    return None;
                }
                blue = pending;
                iteration = force.iteration;
            }
            if !blue.contains(force.forcer) || pending.contains(force.forced) {
                return None;
            }
            pending.insert(force.forced);
        }
        Some(pending)
    }
}

/// Vertices forced in one iteration, as `(forcer, forced)` pairs sorted by
/// forced vertex. When several blue vertices can force the same vertex the
/// least-indexed one is recorded.
pub fn step(g: &Graph, blue: VertexSet, rule: Rule) -> (VertexSet, Vec<(usize, usize)>) {
    let blue = blue & g.vertices();
    let mut forced = VertexSet::EMPTY;
    let mut forces = Vec::new();
    let mut record = |u: usize, v: usize| {
        if !forced.contains(v) {
            forced.insert(v);
            forces.push((u, v));
        }
    };
    let white = g.vertices() - blue;
    match rule {
        Rule::Standard => {
            for u in blue.iter() {
                if let Some(v) = (g.neighbors(u) & white).only() {
                    record(u, v);
                }
            }
        }
        Rule::PositiveSemidefinite => {
            for part in g.components_within(white) {
                for u in blue.iter() {
                    if let Some(v) = (g.neighbors(u) & part).only() {
                        record(u, v);
                    }
                }
            }
        }
    }
    forces.sort_by_key(|&(_, v)| v);
    (blue | forced, forces)
}

/// One iteration without recording forces.
#[inline]
pub fn step_set(g: &Graph, blue: VertexSet, rule: Rule) -> VertexSet {
    let white = g.vertices() - blue;
    let mut forced = VertexSet::EMPTY;
    match rule {
        Rule::Standard => {
            for u in blue.iter() {
                let w = g.neighbors(u) & white;
                if w.only().is_some() {
                    forced = forced | w;
                }
            }
        }
        Rule::PositiveSemidefinite => {
            let mut rest = white;
            while let Some(root) = rest.first() {
                let part = g.reach(root, rest);
                rest = rest - part;
                for u in blue.iter() {
                    let w = g.neighbors(u) & part;
                    if w.only().is_some() {
                        forced = forced | w;
                    }
                }
            }
        }
    }
    blue | forced
}

/// The derived coloring of `blue` under `rule`.
pub fn derived_set(g: &Graph, blue: VertexSet, rule: Rule) -> VertexSet {
    let mut current = blue & g.vertices();
    loop {
        let next = step_set(g, current, rule);
        if next == current {
            return current;
        }
        current = next;
    }
}

/// The derived coloring together with the forces that produced it.
pub fn closure(g: &Graph, blue: VertexSet, rule: Rule) -> (VertexSet, ForcingTrace) {
    let mut current = blue & g.vertices();
    let mut trace = ForcingTrace::default();
    for iteration in 0.. {
        let (next, forces) = step(g, current, rule);
        if forces.is_empty() {
            break;
        }
        trace
            .steps
            .extend(forces.into_iter().map(|(forcer, forced)| Force {
                forcer,
                forced,
                iteration,
            }));
        current = next;
    }
    (current, trace)
}

pub fn is_forcing_set(g: &Graph, set: VertexSet, rule: Rule) -> bool {
    derived_set(g, set, rule) == g.vertices()
}

pub fn is_failed_set(g: &Graph, set: VertexSet, rule: Rule) -> bool {
    !is_forcing_set(g, set, rule)
}

/// A proper subset from which no color change is possible. The full vertex
/// set is never stalled.
pub fn is_stalled(g: &Graph, set: VertexSet, rule: Rule) -> bool {
    let set = set & g.vertices();
    set != g.vertices() && step_set(g, set, rule) == set
}
