//! Executable forms of the characterization theorems. Each check compares a
//! structural prediction with the computed parameters and yields one
//! [`TheoremReport`] per statement.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::formulas::{
    claims_f_equals_mr, claims_fplus_below_zplus, claims_fplus_equals_mrplus, table51_value,
    Parameter,
};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Flag(bool),
    Int(i64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Flag(b) => write!(f, "{b}"),
            Value::Int(v) => write!(f, "{v}"),
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Flag(b)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub graph: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    pub detail: String,
}

impl TheoremReport {
    pub fn new(
        theorem: &str,
        graph: &str,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        detail: String,
    ) -> Self {
        let (expected, observed) = (expected.into(), observed.into());
        TheoremReport {
            theorem: theorem.to_string(),
            graph: graph.to_string(),
            expected,
            observed,
            pass: expected == observed,
            detail,
        }
    }
}

/// Computed parameters of one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub f: usize,
    pub fplus: usize,
    pub z: usize,
    pub zplus: usize,
}

/// `F = n - 1` iff there is an isolated vertex, for both rules.
pub fn check_isolated_characterizations(
    g: &Graph,
    label: &str,
    f: usize,
    fplus: usize,
) -> Vec<TheoremReport> {
    let n = g.order();
    let isolated = g.has_isolated_vertex();
    vec![
        TheoremReport::new(
            "Obs 3.4",
            label,
            isolated,
            f + 1 == n,
            format!("F={f}, n={n}, isolated={isolated}"),
        ),
        TheoremReport::new(
            "Thm 4.2",
            label,
            isolated,
            fplus + 1 == n,
            format!("F+={fplus}, n={n}, isolated={isolated}"),
        ),
    ]
}

/// For connected graphs: `F = n - 2` iff a module of order 2 exists, and
/// `F_+ = n - 2` iff a module of two adjacent vertices exists.
pub fn check_module_characterizations(
    g: &Graph,
    label: &str,
    f: usize,
    fplus: usize,
) -> Result<Vec<TheoremReport>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    let modules = g.modules_of_order_two();
    let any = !modules.is_empty();
    let adjacent = modules.iter().any(|&(_, _, adj)| adj);
    Ok(vec![
        TheoremReport::new(
            "Thm 3.5",
            label,
            any,
            f + 2 == n,
            format!("F={f}, n={n}, modules={}", modules.len()),
        ),
        TheoremReport::new(
            "Thm 4.12",
            label,
            adjacent,
            fplus + 2 == n,
            format!("F+={fplus}, n={n}, adjacent module={adjacent}"),
        ),
    ])
}

/// Every module of two adjacent vertices gives `F_+ >= n - 2`.
pub fn check_adjacent_module_bound(g: &Graph, label: &str, fplus: usize) -> Option<TheoremReport> {
    let n = g.order();
    g.modules_of_order_two()
        .into_iter()
        .find(|&(_, _, adj)| adj)
        .map(|(u, v, _)| {
            TheoremReport::new(
                "Prop 4.10",
                label,
                true,
                fplus + 2 >= n,
                format!("module {{{u},{v}}}, F+={fplus}, n={n}"),
            )
        })
}

/// `F_+ = 0` iff tree, `F_+ = 0` iff `Z_+ = 1`, `F_+ = 1` iff the graph is
/// two isolated vertices or a cycle.
pub fn check_low_fplus(g: &Graph, label: &str, fplus: usize, zplus: usize) -> Vec<TheoremReport> {
    let tree = g.is_tree();
    let cycle_or_pair = g.is_cycle() || (g.order() == 2 && g.edge_count() == 0);
    vec![
        TheoremReport::new(
            "Thm 4.16",
            label,
            tree,
            fplus == 0,
            format!("F+={fplus}, tree={tree}"),
        ),
        TheoremReport::new(
            "Cor 4.17",
            label,
            zplus == 1,
            fplus == 0,
            format!("F+={fplus}, Z+={zplus}"),
        ),
        TheoremReport::new(
            "Thm 4.18",
            label,
            cycle_or_pair,
            fplus == 1,
            format!("F+={fplus}, cycle or 2K1={cycle_or_pair}"),
        ),
    ]
}

/// Sandwich bounds for both rules, `F < Z` iff complete or edgeless, and
/// `F_+ <= F`.
pub fn check_f_vs_z(g: &Graph, label: &str, p: &Params) -> Vec<TheoremReport> {
    let n = g.order();
    let extreme = g.is_complete() || g.edge_count() == 0;
    vec![
        TheoremReport::new(
            "Obs 3.1",
            label,
            true,
            p.z <= p.f + 1 && p.f < n,
            format!("Z={}, F={}, n={n}", p.z, p.f),
        ),
        TheoremReport::new(
            "Prop 4.1",
            label,
            true,
            p.zplus <= p.fplus + 1 && p.fplus < n,
            format!("Z+={}, F+={}, n={n}", p.zplus, p.fplus),
        ),
        TheoremReport::new(
            "Thm 5.1",
            label,
            extreme,
            p.f < p.z,
            format!("F={}, Z={}, complete or edgeless={extreme}", p.f, p.z),
        ),
        TheoremReport::new(
            "Thm 4.19",
            label,
            true,
            p.fplus <= p.f,
            format!("F+={}, F={}", p.fplus, p.f),
        ),
    ]
}

/// Equality pattern of `F` vs `mr` and `F_+` vs `mr_+`, with `mr` and
/// `mr_+` taken from the published maximum-nullity table.
pub fn check_minrank_equalities(
    spec: &FamilySpec,
    f: usize,
    fplus: usize,
) -> Result<Vec<TheoremReport>> {
    let label = spec.to_string();
    let mr = table51_value(spec, Parameter::Mr)?;
    let mr_plus = table51_value(spec, Parameter::MrPlus)?;
    Ok(vec![
        TheoremReport::new(
            "Thm 5.7",
            &label,
            claims_f_equals_mr(spec)?,
            f == mr,
            format!("F={f}, mr={mr}"),
        ),
        TheoremReport::new(
            "Thm 5.8",
            &label,
            claims_fplus_equals_mrplus(spec)?,
            fplus == mr_plus,
            format!("F+={fplus}, mr+={mr_plus}"),
        ),
    ])
}

/// The family cases of `F_+ < Z_+`.
pub fn check_fplus_lt_zplus_cases(
    spec: &FamilySpec,
    fplus: usize,
    zplus: usize,
) -> Result<Vec<TheoremReport>> {
    Ok(vec![TheoremReport::new(
        "Thm 5.2",
        &spec.to_string(),
        claims_fplus_below_zplus(spec)?,
        fplus < zplus,
        format!("F+={fplus}, Z+={zplus}"),
    )])
}

/// Every graph-level check that applies to `g`.
pub fn check_graph(g: &Graph, label: &str, p: &Params) -> Vec<TheoremReport> {
    let mut out = check_isolated_characterizations(g, label, p.f, p.fplus);
    if let Ok(reports) = check_module_characterizations(g, label, p.f, p.fplus) {
        out.extend(reports);
    }
    out.extend(check_adjacent_module_bound(g, label, p.fplus));
    out.extend(check_low_fplus(g, label, p.fplus, p.zplus));
    out.extend(check_f_vs_z(g, label, p));
    out
}
