//! Per-graph parameter reports.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checks::{
    check_fplus_lt_zplus_cases, check_graph, check_minrank_equalities, Params, TheoremReport,
};
use crate::error::Result;
use crate::family::FamilySpec;
use crate::forcing::Rule;
use crate::formulas::{predicted_f, predicted_fplus, predicted_table51, Parameter, Prediction};
use crate::graph::Graph;
use crate::search::{
    failed_number_within, zero_forcing_number_within, ExtremalResult, SearchBudget,
};

/// The four computed parameters, in the order `Z, Z_+, F, F_+`.
pub const COMPUTED: [Parameter; 4] = [
    Parameter::Z,
    Parameter::Zplus,
    Parameter::F,
    Parameter::Fplus,
];

/// Computes one of `Z, Z_+, F, F_+`.
pub fn compute(g: &Graph, parameter: Parameter, budget: SearchBudget) -> Result<ExtremalResult> {
    match parameter {
        Parameter::Z => zero_forcing_number_within(g, Rule::Standard, budget),
        Parameter::Zplus => zero_forcing_number_within(g, Rule::PositiveSemidefinite, budget),
        Parameter::F => failed_number_within(g, Rule::Standard, budget),
        Parameter::Fplus => failed_number_within(g, Rule::PositiveSemidefinite, budget),
        other => panic!("{other} is not computed by search"),
    }
}

/// `F, F_+, Z, Z_+` of `g`.
pub fn compute_params(g: &Graph, budget: SearchBudget) -> Result<Params> {
    Ok(Params {
        f: compute(g, Parameter::F, budget)?.value,
        fplus: compute(g, Parameter::Fplus, budget)?.value,
        z: compute(g, Parameter::Z, budget)?.value,
        zplus: compute(g, Parameter::Zplus, budget)?.value,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Computed {
    pub parameter: Parameter,
    #[serde(flatten)]
    pub result: ExtremalResult,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedPrediction {
    #[serde(flatten)]
    pub prediction: Prediction,
    /// `None` when the parameter was not computed.
    pub observed: Option<usize>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamReport {
    pub graph: String,
    pub n: usize,
    pub edges: usize,
    pub computed: Vec<Computed>,
    pub predictions: Vec<CheckedPrediction>,
    pub theorems: Vec<TheoremReport>,
    /// Sandwich bounds `Z - 1 <= F <= n - 1` (and the PSD analogue) and
    /// dominance `Z_+ <= Z`, `F_+ <= F` among the computed values.
    pub consistent: bool,
}

impl ParamReport {
    pub fn value(&self, parameter: Parameter) -> Option<usize> {
        self.computed
            .iter()
            .find(|c| c.parameter == parameter)
            .map(|c| c.result.value)
    }
}

/// Computes the requested parameters of `g`, compares them with the closed
/// forms when `spec` names a family, and runs the structural checks when all
/// four parameters are available.
pub fn analyze(
    g: &Graph,
    label: &str,
    spec: Option<&FamilySpec>,
    wanted: &[Parameter],
    budget: SearchBudget,
    timings: bool,
) -> Result<ParamReport> {
    let mut computed = Vec::new();
    for &parameter in COMPUTED.iter().filter(|p| wanted.contains(p)) {
        let start = Instant::now();
        let result = compute(g, parameter, budget)?;
        computed.push(Computed {
            parameter,
            result,
            millis: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        });
    }
    let mut report = ParamReport {
        graph: label.to_string(),
        n: g.order(),
        edges: g.edge_count(),
        computed,
        predictions: Vec::new(),
        theorems: Vec::new(),
        consistent: true,
    };
    let get = |p| report.value(p);
    let (f, fplus, z, zplus) = (
        get(Parameter::F),
        get(Parameter::Fplus),
        get(Parameter::Z),
        get(Parameter::Zplus),
    );
    let n = g.order();
    let sandwich = |zz: Option<usize>, ff: Option<usize>| match (zz, ff) {
        (_, Some(ff)) if ff >= n => false,
        (Some(zz), Some(ff)) => zz <= ff + 1,
        _ => true,
    };
    let dominated = |small: Option<usize>, big: Option<usize>| !matches!((small, big), (Some(s), Some(b)) if s > b);
    report.consistent =
        sandwich(z, f) && sandwich(zplus, fplus) && dominated(zplus, z) && dominated(fplus, f);

    if let Some(spec) = spec {
        let mut predictions: Vec<Prediction> = Vec::new();
        predictions.extend(predicted_f(spec).ok());
        predictions.extend(predicted_fplus(spec).ok());
        predictions.extend(predicted_table51(spec).unwrap_or_default());
        report.predictions = predictions
            .into_iter()
            .map(|prediction| {
                let observed = report.value(prediction.parameter);
                CheckedPrediction {
                    agrees: observed.map(|o| prediction.admits(o)),
                    observed,
                    prediction,
                }
            })
            .collect();
    }

    if let (Some(f), Some(fplus), Some(z), Some(zplus)) = (f, fplus, z, zplus) {
        let params = Params { f, fplus, z, zplus };
        report.theorems = check_graph(g, label, &params);
        if let Some(spec) = spec {
            if let Ok(reports) = check_minrank_equalities(spec, f, fplus) {
                report.theorems.extend(reports);
            }
            let zplus_52 = crate::formulas::table51_value(spec, Parameter::Zplus).unwrap_or(zplus);
            if let Ok(reports) = check_fplus_lt_zplus_cases(spec, fplus, zplus_52) {
                report.theorems.extend(reports);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(s: &str) -> ParamReport {
        let spec: FamilySpec = s.parse().unwrap();
        let g = spec.build().unwrap();
        analyze(
            &g,
            s,
            Some(&spec),
            &COMPUTED,
            SearchBudget::default(),
            false,
        )
        .unwrap()
    }

    #[test]
    fn wheel_seven() {
        let r = run("wheel:7");
        assert_eq!(r.value(Parameter::F), Some(4));
        assert_eq!(r.value(Parameter::Fplus), Some(4));
        assert_eq!(r.value(Parameter::Z), Some(3));
        assert_eq!(r.value(Parameter::Zplus), Some(3));
        assert!(r.consistent);
        assert!(r
            .predictions
            .iter()
            .all(|p| p.agrees == Some(true) || p.observed.is_none()));
        assert!(r.theorems.iter().all(|t| t.pass), "{:?}", r.theorems);
    }

    #[test]
    fn small_examples() {
        assert_eq!(run("path:1").value(Parameter::F), Some(0));
        let k22 = run("biclique:2,2");
        assert_eq!(
            (k22.value(Parameter::F), k22.value(Parameter::Fplus)),
            (Some(2), Some(1))
        );
    }

    #[test]
    fn partial_parameters() {
        let g: Graph = "cycle:5".parse::<FamilySpec>().unwrap().build().unwrap();
        let r = analyze(
            &g,
            "c5",
            None,
            &[Parameter::F],
            SearchBudget::default(),
            true,
        )
        .unwrap();
        assert_eq!(r.computed.len(), 1);
        assert!(r.computed[0].millis.is_some());
        assert!(r.theorems.is_empty() && r.predictions.is_empty());
    }

    #[test]
    fn budget_propagates() {
        let g = "hypercube:4"
            .parse::<FamilySpec>()
            .unwrap()
            .build()
            .unwrap();
        assert!(analyze(&g, "q4", None, &COMPUTED, SearchBudget::new(3), false).is_err());
    }
}
