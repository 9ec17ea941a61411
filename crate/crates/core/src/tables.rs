//! The two summary tables, with computed values next to the printed ones.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::formulas::{predicted_f, predicted_fplus, table51_value, Parameter};
use crate::report::compute;
use crate::search::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Table {
    #[serde(rename = "1")]
    Failed,
    #[serde(rename = "2")]
    FailedPsd,
}

impl Table {
    pub fn from_number(which: u8) -> Result<Table> {
        match which {
            1 => Ok(Table::Failed),
            2 => Ok(Table::FailedPsd),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("no table {which}; expected 1 or 2"),
            }),
        }
    }

    fn parameter(self) -> Parameter {
        match self {
            Table::Failed => Parameter::F,
            Table::FailedPsd => Parameter::Fplus,
        }
    }

    fn rank(self) -> Parameter {
        match self {
            Table::Failed => Parameter::Mr,
            Table::FailedPsd => Parameter::MrPlus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub result: String,
    pub family: String,
    pub formula: String,
    pub equality_claim: String,
    pub instances: Vec<String>,
    /// Instances whose computed value matches the printed formula.
    pub formula_holds: usize,
    /// Instances where the computed value equals the minimum rank.
    pub equality_at: Vec<String>,
}

struct RowSpec {
    result: &'static str,
    family: &'static str,
    formula: &'static str,
    claim: &'static str,
    instances: Vec<FamilySpec>,
}

fn row(
    result: &'static str,
    family: &'static str,
    formula: &'static str,
    claim: &'static str,
    instances: impl IntoIterator<Item = FamilySpec>,
) -> RowSpec {
    RowSpec {
        result,
        family,
        formula,
        claim,
        instances: instances.into_iter().collect(),
    }
}

fn bicliques(second: impl Fn(usize) -> bool) -> Vec<FamilySpec> {
    (1..=5)
        .flat_map(|m| (1..=m).map(move |n| (m, n)))
        .filter(|&(_, n)| second(n))
        .map(|(m, n)| FamilySpec::Biclique(m, n))
        .collect()
}

fn rows(table: Table) -> Vec<RowSpec> {
    use FamilySpec::*;
    match table {
        Table::Failed => {
            let r = "Thm 3.6, Thm 5.7";
            let q = "Thm 3.7, Thm 5.7";
            let h = "Thm 3.8, Thm 5.7";
            vec![
                row(r, "P_n", "ceil((n-2)/2)", "iff n=1", (1..=12).map(Path)),
                row(
                    r,
                    "C_n, n>=3",
                    "floor(n/2)",
                    "iff n=3, 4",
                    (3..=12).map(Cycle),
                ),
                row(r, "K_n, n>=2", "n-2", "iff n=3", (2..=10).map(Complete)),
                row(r, "W_4", "2", "no", [Wheel(4)]),
                row(r, "W_5", "3", "no", [Wheel(5)]),
                row(
                    r,
                    "W_n, n>=6",
                    "floor((2n-2)/3)",
                    "iff n=6, 7",
                    (6..=12).map(Wheel),
                ),
                row(r, "K_{m,1}, m>=1", "m-1", "iff m=3", bicliques(|n| n == 1)),
                row(r, "K_{m,2}, m>=2", "m", "iff m=2", bicliques(|n| n == 2)),
                row(
                    r,
                    "K_{m,n}, m>=n>=2",
                    "m+n-2",
                    "iff m+n=4",
                    bicliques(|n| n >= 2),
                ),
                row(q, "Q_1", "0", "no", [Hypercube(1)]),
                row(q, "Q_2", "2", "yes", [Hypercube(2)]),
                row(q, "Q_n, n>=3", ">= 2^n-n", "no", (3..=4).map(Hypercube)),
                row(h, "H_1", "0", "no", [HalfGraph(1)]),
                row(h, "H_s, s>=2", "2s-3", "iff s=3", (2..=5).map(HalfGraph)),
            ]
        }
        Table::FailedPsd => {
            vec![
                row(
                    "Thm 4.5, Thm 5.8",
                    "P_n",
                    "0",
                    "iff n=1",
                    (1..=12).map(Path),
                ),
                row(
                    "Thm 4.6, Thm 5.8",
                    "C_n, n>=3",
                    "1",
                    "iff n=3",
                    (3..=12).map(Cycle),
                ),
                row(
                    "Cor 4.13, Thm 5.8",
                    "K_n, n>=2",
                    "n-2",
                    "iff n=3",
                    (2..=10).map(Complete),
                ),
                row("Thm 4.20, Thm 5.8", "W_4", "2", "no", [Wheel(4)]),
                row("Thm 4.20, Thm 5.8", "W_5", "2", "yes", [Wheel(5)]),
                row(
                    "Thm 4.20, Thm 5.8",
                    "W_n, n>=6",
                    "floor((2n-2)/3)",
                    "iff n=5, 6, 7",
                    (6..=12).map(Wheel),
                ),
                row(
                    "Thm 4.21, Thm 5.8",
                    "K_{m,1}, m>=1",
                    "0",
                    "no",
                    bicliques(|n| n == 1),
                ),
                row(
                    "Thm 4.21, Thm 5.8",
                    "K_{m,2}, m>=2",
                    "m-1",
                    "no",
                    bicliques(|n| n == 2),
                ),
                row(
                    "Thm 4.21, Thm 5.8",
                    "K_{m,n}, m>=n>=2",
                    "m+n-4",
                    "iff n=4",
                    bicliques(|n| n >= 2),
                ),
                row("Thm 4.22, Thm 5.8", "Q_1", "0", "no", [Hypercube(1)]),
                row("Thm 4.22, Thm 5.8", "Q_2", "1", "no", [Hypercube(2)]),
                row(
                    "Thm 4.22, Thm 5.8",
                    "Q_n, n>=3",
                    ">= 2^n-n-1",
                    "iff n=3",
                    (3..=4).map(Hypercube),
                ),
                row("Thm 4.23, Thm 5.8", "H_1", "0", "no", [HalfGraph(1)]),
                row(
                    "Thm 4.23, Thm 5.8",
                    "H_s, s>=2",
                    "2s-4",
                    "iff s=4",
                    (2..=5).map(HalfGraph),
                ),
            ]
        }
    }
}

/// Computes every row of `table` over its default instance range.
pub fn build_table(table: Table, budget: SearchBudget) -> Result<Vec<TableRow>> {
    rows(table)
        .into_par_iter()
        .map(|spec| {
            let mut formula_holds = 0;
            let mut equality_at = Vec::new();
            for instance in &spec.instances {
                let g = instance.build()?;
                let value = compute(&g, table.parameter(), budget)?.value;
                let prediction = match table {
                    Table::Failed => predicted_f(instance)?,
                    Table::FailedPsd => predicted_fplus(instance)?,
                };
                if prediction.admits(value) {
                    formula_holds += 1;
                }
                if table51_value(instance, table.rank()).is_ok_and(|mr| mr == value) {
                    equality_at.push(instance.to_string());
                }
            }
            Ok(TableRow {
                result: spec.result.to_string(),
                family: spec.family.to_string(),
                formula: spec.formula.to_string(),
                equality_claim: spec.claim.to_string(),
                instances: spec.instances.iter().map(ToString::to_string).collect(),
                formula_holds,
                equality_at,
            })
        })
        .collect()
}

/// Tab-separated rendering with a fixed header.
pub fn render_tsv(table: Table, rows: &[TableRow]) -> String {
    let (value, equality) = match table {
        Table::Failed => ("F(G)", "F(G) = mr(G)?"),
        Table::FailedPsd => ("F+(G)", "F+(G) = mr+(G)?"),
    };
    let mut out = format!("result\tG\t{value}\t{equality}\tformula holds\tcomputed equality at\n");
    for r in rows {
        let at = if r.equality_at.is_empty() {
            "none".to_string()
        } else {
            r.equality_at.join(" ")
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}/{}\t{}\n",
            r.result,
            r.family,
            r.formula,
            r.equality_claim,
            r.formula_holds,
            r.instances.len(),
            at
        ));
    }
    out
}
