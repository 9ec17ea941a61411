//! Closed-form parameter values for the named families, the published
//! maximum-nullity table, and the composition rule for disconnected graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    F,
    Fplus,
    Z,
    Zplus,
    M,
    Mplus,
    #[serde(rename = "mr")]
    Mr,
    #[serde(rename = "mrplus")]
    MrPlus,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::F => "F",
            Parameter::Fplus => "Fplus",
            Parameter::Z => "Z",
            Parameter::Zplus => "Zplus",
            Parameter::M => "M",
            Parameter::Mplus => "Mplus",
            Parameter::Mr => "mr",
            Parameter::MrPlus => "mrplus",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub parameter: Parameter,
    pub value: usize,
    pub exactness: Exactness,
    pub source: String,
}

impl Prediction {
    fn exact(parameter: Parameter, value: usize, source: &str) -> Self {
        Prediction {
            parameter,
            value,
            exactness: Exactness::Exact,
            source: source.to_string(),
        }
    }

    fn lower(parameter: Parameter, value: usize, source: &str) -> Self {
        Prediction {
            exactness: Exactness::LowerBound,
            ..Prediction::exact(parameter, value, source)
        }
    }

    /// Whether an observed value is consistent with the prediction.
    pub fn admits(&self, observed: usize) -> bool {
        match self.exactness {
            Exactness::Exact => observed == self.value,
            Exactness::LowerBound => observed >= self.value,
        }
    }
}

fn outside(spec: &FamilySpec, what: &str) -> Error {
    Error::OutsideHypotheses {
        family: spec.to_string(),
        what: what.to_string(),
    }
}

/// Predicted `F(G)` for a single family instance.
pub fn predicted_f(spec: &FamilySpec) -> Result<Prediction> {
    spec.validate()?;
    use FamilySpec::*;
    let p = |v: usize, src: &str| Ok(Prediction::exact(Parameter::F, v, src));
    match *spec {
        Path(n) => p((n - 1) / 2, "Thm 3.6"),
        Cycle(n) => p(n / 2, "Thm 3.6"),
        Complete(1) | Empty(_) => p(spec.order() - 1, "Obs 3.4"),
        Complete(n) => p(n - 2, "Thm 3.6"),
        MaryTree { order, .. } => {
            if spec.is_full_mary_tree() == Some(true) {
                p(order - 2, "Thm 3.6")
            } else {
                Err(outside(spec, "Thm 3.6 (full m-ary trees only)"))
            }
        }
        Wheel(5) => p(3, "Thm 3.6"),
        Wheel(n) => p((2 * n - 2) / 3, "Thm 3.6"),
        Biclique(1, 1) => p(0, "Thm 3.6 (K_{1,1} = P_2)"),
        Biclique(m, n) => p(m + n - 2, "Thm 3.6"),
        Hypercube(1) => p(0, "Thm 3.7"),
        Hypercube(2) => p(2, "Thm 3.7"),
        Hypercube(d) => Ok(Prediction::lower(Parameter::F, (1 << d) - d, "Thm 3.7")),
        HalfGraph(1) => p(0, "Thm 3.8"),
        HalfGraph(s) => p(2 * s - 3, "Thm 3.8"),
        Union(_) => Err(outside(spec, "single-family formulas")),
    }
}

/// Predicted `F_+(G)` for a single family instance.
pub fn predicted_fplus(spec: &FamilySpec) -> Result<Prediction> {
    spec.validate()?;
    use FamilySpec::*;
    let p = |v: usize, src: &str| Ok(Prediction::exact(Parameter::Fplus, v, src));
    match *spec {
        Path(_) => p(0, "Thm 4.5"),
        MaryTree { .. } | Complete(1) => p(0, "Thm 4.16"),
        Cycle(_) => p(1, "Thm 4.6"),
        Complete(n) => p(n - 2, "Cor 4.13"),
        Wheel(n) => p((2 * n - 2) / 3, "Thm 4.20"),
        Biclique(m, n) => match m.min(n) {
            1 => p(0, "Thm 4.21"),
            2 => p(m + n - 3, "Thm 4.21"),
            _ => p(m + n - 4, "Thm 4.21"),
        },
        Hypercube(1) => p(0, "Thm 4.22"),
        Hypercube(2) => p(1, "Thm 4.22"),
        Hypercube(d) => Ok(Prediction::lower(
            Parameter::Fplus,
            (1 << d) - d - 1,
            "Thm 4.22",
        )),
        HalfGraph(1) => p(0, "Thm 4.23"),
        HalfGraph(s) => p(2 * s - 4, "Thm 4.23"),
        Empty(n) => p(n - 1, "Thm 4.2"),
        Union(_) => Err(outside(spec, "single-family formulas")),
    }
}

/// The published maximum-nullity / zero-forcing row for `spec`, extended by
/// rank-nullity: `M, Z, M_+, Z_+, mr, mr_+` in that order.
pub fn predicted_table51(spec: &FamilySpec) -> Result<Vec<Prediction>> {
    spec.validate()?;
    use FamilySpec::*;
    const SRC: &str = "Table 5.1";
    let order = spec.order();
    let (m, z, mp, zp) = match *spec {
        Path(_) => (1, 1, 1, 1),
        Cycle(_) => (2, 2, 2, 2),
        Complete(n) if n >= 2 => (n - 1, n - 1, n - 1, n - 1),
        Hypercube(d) => {
            let v = 1 << (d - 1);
            (v, v, v, v)
        }
        Wheel(_) => (3, 3, 3, 3),
        Biclique(a, b) if a + b >= 3 => {
            let small = a.min(b);
            (a + b - 2, a + b - 2, small, small)
        }
        HalfGraph(s) => (s, s, s, s),
        _ => return Err(outside(spec, SRC)),
    };
    let rank_nullity = "Table 5.1 + rank-nullity";
    Ok(vec![
        Prediction::exact(Parameter::M, m, SRC),
        Prediction::exact(Parameter::Z, z, SRC),
        Prediction::exact(Parameter::Mplus, mp, SRC),
        Prediction::exact(Parameter::Zplus, zp, SRC),
        Prediction::exact(Parameter::Mr, order - m, rank_nullity),
        Prediction::exact(Parameter::MrPlus, order - mp, rank_nullity),
    ])
}

/// Looks up one parameter in a [`predicted_table51`] row.
pub fn table51_value(spec: &FamilySpec, parameter: Parameter) -> Result<usize> {
    predicted_table51(spec)?
        .into_iter()
        .find(|p| p.parameter == parameter)
        .map(|p| p.value)
        .ok_or_else(|| outside(spec, "Table 5.1"))
}

/// `F` (or `F_+`) of a disjoint union from `(|G_i|, F(G_i))` of its
/// components: `sum |G_i| - min (|G_i| - F(G_i))`.
pub fn compose_disconnected(parts: &[(usize, usize)]) -> Result<usize> {
    let total: usize = parts.iter().map(|&(n, _)| n).sum();
    let slack = parts
        .iter()
        .map(|&(n, f)| n - f)
        .min()
        .ok_or(Error::EmptyComposition)?;
    Ok(total - slack)
}

/// Instances for which `F(G) = mr(G)` is claimed, family by family, with
/// `mr` read from the published table. Paths follow the summary table
/// (equality only at `n = 1`) and half-graphs equality only at `s = 3`.
pub fn claims_f_equals_mr(spec: &FamilySpec) -> Result<bool> {
    predicted_table51(spec)?;
    use FamilySpec::*;
    Ok(match *spec {
        Path(n) => n == 1,
        Cycle(n) => n == 3 || n == 4,
        Complete(n) => n == 3,
        Hypercube(d) => d == 2,
        Wheel(n) => n == 6 || n == 7,
        Biclique(a, b) => a + b == 4,
        HalfGraph(s) => s == 3,
        _ => unreachable!("predicted_table51 accepted the family"),
    })
}

/// Instances for which `F_+(G) = mr_+(G)` is claimed (half-graphs read as
/// the `F_+`/`mr_+` statement, equality only at `s = 4`).
pub fn claims_fplus_equals_mrplus(spec: &FamilySpec) -> Result<bool> {
    predicted_table51(spec)?;
    use FamilySpec::*;
    Ok(match *spec {
        Path(n) => n == 1,
        Cycle(n) => n == 3,
        Complete(n) => n == 3,
        Hypercube(d) => d == 3,
        Wheel(n) => (5..=7).contains(&n),
        Biclique(a, b) => a.min(b) == 4,
        HalfGraph(s) => s == 4,
        _ => unreachable!("predicted_table51 accepted the family"),
    })
}

/// Instances for which `F_+(G) < Z_+(G)` is claimed.
pub fn claims_fplus_below_zplus(spec: &FamilySpec) -> Result<bool> {
    spec.validate()?;
    use FamilySpec::*;
    Ok(match *spec {
        Path(_) | Cycle(_) | Complete(_) | MaryTree { .. } | Empty(_) => true,
        Hypercube(d) => d <= 2,
        Wheel(n) => n == 4 || n == 5,
        Biclique(a, b) => a.min(b) == 1 || (a, b) == (2, 2) || (a, b) == (3, 3),
        HalfGraph(s) => s <= 3,
        Union(_) => return Err(outside(spec, "Thm 5.2")),
    })
}
