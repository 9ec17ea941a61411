//! Named graph families and the small DSL used to describe them
//! (`"wheel:7"`, `"biclique:3,2"`, `"cycle:3+path:2"`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// A named family instance, or a disjoint union of instances.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilySpec {
    /// `P_n`.
    Path(usize),
    /// `C_n`, `n >= 3`.
    Cycle(usize),
    /// `K_n`.
    Complete(usize),
    /// `W_n` on `n >= 4` vertices: rim `0..n-1` in cyclic order, hub `n-1`.
    Wheel(usize),
    /// `K_{m,n}`: first part `0..m`, second part `m..m+n`.
    Biclique(usize, usize),
    /// `Q_d` on `2^d` vertices; labels adjacent iff they differ in one bit.
    Hypercube(usize),
    /// `H_s`: `v_i ~ v_{s+j}` iff `i <= j` (1-based), vertex `v_k` labeled `k-1`.
    HalfGraph(usize),
    /// Complete `arity`-ary tree on `order` vertices, filled level by level.
    MaryTree {
        arity: usize,
        order: usize,
    },
    /// `\overline{K_n}`.
    Empty(usize),
    Union(Vec<FamilySpec>),
}

impl FamilySpec {
    /// Number of vertices of the instance. Saturates instead of overflowing
    /// so that out-of-range hypercubes can still be rejected cleanly.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Wheel(n)
            | FamilySpec::Empty(n) => n,
            FamilySpec::Biclique(m, n) => m.saturating_add(n),
            FamilySpec::Hypercube(d) => 1usize.checked_shl(d as u32).unwrap_or(usize::MAX),
            FamilySpec::HalfGraph(s) => s.saturating_mul(2),
            FamilySpec::MaryTree { order, .. } => order,
            FamilySpec::Union(ref parts) => parts
                .iter()
                .fold(0usize, |acc, p| acc.saturating_add(p.order())),
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::Family {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(self.invalid(reason))
            }
        };
        match *self {
            FamilySpec::Path(n) => check(n >= 1, "path needs n >= 1")?,
            FamilySpec::Cycle(n) => check(n >= 3, "cycle needs n >= 3")?,
            FamilySpec::Complete(n) => check(n >= 1, "complete graph needs n >= 1")?,
            FamilySpec::Wheel(n) => check(n >= 4, "wheel needs n >= 4")?,
            FamilySpec::Biclique(m, n) => check(m >= 1 && n >= 1, "biclique needs m, n >= 1")?,
            FamilySpec::Hypercube(d) => check(d >= 1, "hypercube needs dimension >= 1")?,
            FamilySpec::HalfGraph(s) => check(s >= 1, "half-graph needs s >= 1")?,
            FamilySpec::MaryTree { arity, order } => {
                check(arity >= 2, "m-ary tree needs arity >= 2")?;
                check(order >= 1, "m-ary tree needs at least one vertex")?;
            }
            FamilySpec::Empty(n) => check(n >= 1, "empty graph needs n >= 1")?,
            FamilySpec::Union(ref parts) => {
                check(parts.len() >= 2, "union needs at least two parts")?;
                for part in parts {
                    part.validate()?;
                }
            }
        }
        check(
            self.order() <= MAX_VERTICES,
            &format!("more than {MAX_VERTICES} vertices"),
        )
    }

    /// The canonical labeled instance.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match *self {
            FamilySpec::Path(n) => Graph::from_edges(n, (1..n).map(|v| (v - 1, v))),
            FamilySpec::Cycle(n) => Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))),
            FamilySpec::Complete(n) => {
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            FamilySpec::Wheel(n) => {
                let rim = n - 1;
                let hub = n - 1;
                let edges = (0..rim).flat_map(|v| [(v, (v + 1) % rim), (v, hub)]);
                Graph::from_edges(n, edges)
            }
            FamilySpec::Biclique(m, n) => {
                Graph::from_edges(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
            }
            FamilySpec::Hypercube(d) => {
                let n = 1usize << d;
                let edges = (0..n).flat_map(|u| {
                    (0..d)
                        .map(move |b| (u, u ^ (1 << b)))
                        .filter(|&(u, v)| u < v)
                });
                Graph::from_edges(n, edges)
            }
            FamilySpec::HalfGraph(s) => {
                let edges = (0..s).flat_map(|i| (i..s).map(move |j| (i, s + j)));
                Graph::from_edges(2 * s, edges)
            }
            FamilySpec::MaryTree { arity, order } => {
                Graph::from_edges(order, (1..order).map(|v| ((v - 1) / arity, v)))
            }
            FamilySpec::Empty(n) => Graph::empty(n),
            FamilySpec::Union(ref parts) => {
                let mut g = parts[0].build()?;
                for part in &parts[1..] {
                    g = g.disjoint_union(&part.build()?)?;
                }
                Ok(g)
            }
        }
    }

    /// Whether the generated m-ary tree is full: every internal vertex has
    /// exactly `arity` children. `None` for other families.
    pub fn is_full_mary_tree(&self) -> Option<bool> {
        match *self {
            FamilySpec::MaryTree { arity, order } => Some(order >= 2 && (order - 1) % arity == 0),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Wheel(n) => write!(f, "wheel:{n}"),
            FamilySpec::Biclique(m, n) => write!(f, "biclique:{m},{n}"),
            FamilySpec::Hypercube(d) => write!(f, "hypercube:{d}"),
            FamilySpec::HalfGraph(s) => write!(f, "halfgraph:{s}"),
            FamilySpec::MaryTree { arity, order } => write!(f, "marytree:{arity},{order}"),
            FamilySpec::Empty(n) => write!(f, "empty:{n}"),
            FamilySpec::Union(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Family {
            spec: text.to_string(),
            reason: reason.to_string(),
        };
        let text = text.trim();
        if text.contains('+') {
            let parts = text
                .split('+')
                .map(str::parse)
                .collect::<Result<Vec<FamilySpec>>>()?;
            let spec = FamilySpec::Union(parts);
            spec.validate()?;
            return Ok(spec);
        }
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| bad("expected `kind:params`"))?;
        let params = args
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("parameters must be non-negative integers"))?;
        let one = |make: fn(usize) -> FamilySpec| match params[..] {
            [n] => Ok(make(n)),
            _ => Err(bad("expected exactly one parameter")),
        };
        let spec = match kind.trim() {
            "path" => one(FamilySpec::Path)?,
            "cycle" => one(FamilySpec::Cycle)?,
            "complete" => one(FamilySpec::Complete)?,
            "wheel" => one(FamilySpec::Wheel)?,
            "hypercube" => one(FamilySpec::Hypercube)?,
            "halfgraph" => one(FamilySpec::HalfGraph)?,
            "empty" => one(FamilySpec::Empty)?,
            "biclique" => match params[..] {
                [m, n] => FamilySpec::Biclique(m, n),
                _ => return Err(bad("biclique takes m,n")),
            },
            "marytree" => match params[..] {
                [arity, order] => FamilySpec::MaryTree { arity, order },
                _ => return Err(bad("marytree takes arity,order")),
            },
            other => return Err(bad(&format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<FamilySpec> for String {
    fn from(spec: FamilySpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;

    fn try_from(text: String) -> Result<Self> {
        text.parse()
    }
}
