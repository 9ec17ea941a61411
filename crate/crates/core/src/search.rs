//! Exact zero forcing numbers and failed zero forcing numbers.
//!
//! `F(G)` is computed from the smallest *fort*: a nonempty `W` whose
//! complement is stalled. Maximum failed sets are stalled, so
//! `F(G) = n - min |W|`. A plain scan over all `2^n` subsets is kept as an
//! independent oracle for small graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forcing::{derived_set, is_forcing_set, Rule};
use crate::graph::{Graph, VertexSet};

/// Exhaustive subset scans refuse graphs larger than this.
pub const MAX_SCAN_VERTICES: usize = 20;

/// Default node cap for budgeted searches.
pub const DEFAULT_BUDGET: u64 = 500_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalKind {
    MinForcing,
    MaxFailed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Increasing-size search over candidate forts.
    FortSearch,
    /// Increasing-size search over candidate forcing sets, skipping
    /// vertices already in the closure of the partial set.
    LayeredSearch,
    /// Scan over every subset.
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub value: usize,
    pub witness: VertexSet,
    pub rule: Rule,
    pub kind: ExtremalKind,
    pub method: Method,
}

/// Cap on the number of search nodes (closure or fort evaluations).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: u64::MAX,
    };

    pub fn new(max_nodes: u64) -> Self {
        SearchBudget { max_nodes }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(DEFAULT_BUDGET)
    }
}

struct Meter {
    used: u64,
    cap: u64,
}

impl Meter {
    fn new(budget: SearchBudget) -> Self {
        Meter {
            used: 0,
            cap: budget.max_nodes,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(Error::BudgetExceeded { budget: self.cap })
        } else {
            Ok(())
        }
    }
}

/// `k`-subsets of `0..n` in lexicographic order of their sorted elements.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().copied().collect();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `Z(G)` (standard rule) or `Z_+(G)` (PSD rule), unbounded.
pub fn zero_forcing_number(g: &Graph, rule: Rule) -> ExtremalResult {
    zero_forcing_number_within(g, rule, SearchBudget::UNLIMITED)
        .expect("unlimited budget cannot be exceeded")
}

/// `Z(G)` / `Z_+(G)` with a cap on search nodes. The witness is the
/// lexicographically first minimum forcing set.
pub fn zero_forcing_number_within(
    g: &Graph,
    rule: Rule,
    budget: SearchBudget,
) -> Result<ExtremalResult> {
    let mut meter = Meter::new(budget);
    for k in 1..=g.order() {
        if let Some(witness) = forcing_layer(g, rule, k, 0, VertexSet::EMPTY, &mut meter)? {
            return Ok(ExtremalResult {
                value: k,
                witness,
                rule,
                kind: ExtremalKind::MinForcing,
                method: Method::LayeredSearch,
            });
        }
    }
    unreachable!("the full vertex set always forces")
}

// A vertex already in the closure of the partial set can be dropped without
// changing the final closure, so minimum forcing sets never contain one.
fn forcing_layer(
    g: &Graph,
    rule: Rule,
    remaining: usize,
    start: usize,
    chosen: VertexSet,
    meter: &mut Meter,
) -> Result<Option<VertexSet>> {
    meter.tick()?;
    let reached = derived_set(g, chosen, rule);
    if remaining == 0 {
        return Ok((reached == g.vertices()).then_some(chosen));
    }
    let n = g.order();
    for v in start..=n - remaining {
        if reached.contains(v) {
            continue;
        }
        if let Some(found) = forcing_layer(g, rule, remaining - 1, v + 1, chosen.with(v), meter)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Whether `w` is nonempty and `V \ w` is stalled under `rule`.
pub fn is_fort(g: &Graph, w: VertexSet, rule: Rule) -> bool {
    let w = w & g.vertices();
    if w.is_empty() {
        return false;
    }
    let outside = g.vertices() - w;
    match rule {
        Rule::Standard => outside.iter().all(|u| (g.neighbors(u) & w).len() != 1),
        Rule::PositiveSemidefinite => {
            let mut rest = w;
            while let Some(root) = rest.first() {
                let part = g.reach(root, rest);
                rest = rest - part;
                if outside.iter().any(|u| (g.neighbors(u) & part).len() == 1) {
                    return false;
                }
            }
            true
        }
    }
}

/// A minimum fort, lexicographically first among those of minimum size.
pub fn min_fort(g: &Graph, rule: Rule) -> VertexSet {
    min_fort_within(g, rule, SearchBudget::UNLIMITED).expect("unlimited budget cannot be exceeded")
}

pub fn min_fort_within(g: &Graph, rule: Rule, budget: SearchBudget) -> Result<VertexSet> {
    let mut meter = Meter::new(budget);
    for k in 1..=g.order() {
        for w in Combinations::new(g.order(), k) {
            meter.tick()?;
            if is_fort(g, w, rule) {
                return Ok(w);
            }
        }
    }
    unreachable!("the full vertex set is always a fort")
}

/// `F(G)` / `F_+(G)` via the minimum fort; the witness is its complement.
pub fn failed_number(g: &Graph, rule: Rule) -> ExtremalResult {
    failed_number_within(g, rule, SearchBudget::UNLIMITED)
        .expect("unlimited budget cannot be exceeded")
}

pub fn failed_number_within(g: &Graph, rule: Rule, budget: SearchBudget) -> Result<ExtremalResult> {
    let fort = min_fort_within(g, rule, budget)?;
    Ok(ExtremalResult {
        value: g.order() - fort.len(),
        witness: g.vertices() - fort,
        rule,
        kind: ExtremalKind::MaxFailed,
        method: Method::FortSearch,
    })
}

fn scan_guard(g: &Graph) -> Result<()> {
    if g.order() > MAX_SCAN_VERTICES {
        return Err(Error::TooLargeForScan {
            n: g.order(),
            max: MAX_SCAN_VERTICES,
        });
    }
    Ok(())
}

/// `F(G)` / `F_+(G)` by checking every subset, largest first. The witness is
/// the lexicographically first failed set of maximum size.
pub fn brute_failed_number(g: &Graph, rule: Rule) -> Result<ExtremalResult> {
    scan_guard(g)?;
    let n = g.order();
    for k in (0..n).rev() {
        if let Some(witness) = Combinations::new(n, k).find(|&s| !is_forcing_set(g, s, rule)) {
            return Ok(ExtremalResult {
                value: k,
                witness,
                rule,
                kind: ExtremalKind::MaxFailed,
                method: Method::BruteForce,
            });
        }
    }
    unreachable!("the empty set is failed on any graph")
}

/// Every maximal failed set (equivalently, every stalled set with no stalled
/// proper superset), in increasing bitmask order.
pub fn enumerate_maximal_failed(g: &Graph, rule: Rule) -> Result<Vec<VertexSet>> {
    scan_guard(g)?;
    let n = g.order();
    let total = 1usize << n;
    let failed: Vec<bool> = (0..total)
        .map(|bits| !is_forcing_set(g, VertexSet::from_bits(bits as u64), rule))
        .collect();
    // failed sets are closed under subsets, so single-vertex extensions suffice
    Ok((0..total)
        .filter(|&bits| {
            failed[bits] && (0..n).all(|v| bits >> v & 1 == 1 || !failed[bits | 1 << v])
        })
        .map(|bits| VertexSet::from_bits(bits as u64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::forcing::{is_failed_set, is_stalled};

    fn family(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).map(|s| s.to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
        assert_eq!(Combinations::new(10, 5).count(), 252);
    }

    #[test]
    fn zero_forcing_examples() {
        assert_eq!(
            zero_forcing_number(&family("path:7"), Rule::Standard).value,
            1
        );
        assert_eq!(
            zero_forcing_number(&family("wheel:6"), Rule::Standard).value,
            3
        );
        let k32 = zero_forcing_number(&family("biclique:3,2"), Rule::PositiveSemidefinite);
        assert_eq!(k32.value, 2);
        assert_eq!(k32.kind, ExtremalKind::MinForcing);
        let p7 = zero_forcing_number(&family("path:7"), Rule::Standard);
        assert_eq!(p7.witness, set(&[0]));
    }

    #[test]
    fn min_fort_examples() {
        assert_eq!(min_fort(&family("cycle:5"), Rule::Standard).len(), 3);
        assert_eq!(min_fort(&family("complete:4"), Rule::Standard).len(), 2);
        assert_eq!(
            min_fort(&family("path:2"), Rule::PositiveSemidefinite).len(),
            2
        );
        assert_eq!(min_fort(&family("complete:1"), Rule::Standard), set(&[0]));
    }

    #[test]
    fn failed_number_examples() {
        assert_eq!(failed_number(&family("wheel:5"), Rule::Standard).value, 3);
        assert_eq!(
            failed_number(&family("biclique:3,3"), Rule::PositiveSemidefinite).value,
            2
        );
        assert_eq!(
            failed_number(&family("hypercube:2"), Rule::PositiveSemidefinite).value,
            1
        );
    }

    #[test]
    fn brute_examples() {
        assert_eq!(
            brute_failed_number(&family("path:4"), Rule::Standard)
                .unwrap()
                .value,
            1
        );
        assert_eq!(
            brute_failed_number(&family("cycle:6"), Rule::PositiveSemidefinite)
                .unwrap()
                .value,
            1
        );
        assert!(matches!(
            brute_failed_number(&family("path:21"), Rule::Standard),
            Err(Error::TooLargeForScan { n: 21, .. })
        ));
    }

    #[test]
    fn maximal_failed_examples() {
        let k2bar = family("empty:2");
        assert_eq!(
            enumerate_maximal_failed(&k2bar, Rule::Standard).unwrap(),
            vec![set(&[0]), set(&[1])]
        );
        let k3 = family("complete:3");
        assert_eq!(
            enumerate_maximal_failed(&k3, Rule::Standard).unwrap(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );
        let c4 = enumerate_maximal_failed(&family("cycle:4"), Rule::Standard).unwrap();
        assert!(c4.contains(&set(&[0, 2])) && c4.contains(&set(&[1, 3])));
        for s in c4 {
            assert!(is_stalled(&family("cycle:4"), s, Rule::Standard));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = family("hypercube:4");
        let tiny = SearchBudget::new(10);
        assert_eq!(
            zero_forcing_number_within(&g, Rule::Standard, tiny),
            Err(Error::BudgetExceeded { budget: 10 })
        );
        assert!(failed_number_within(&g, Rule::Standard, SearchBudget::new(3)).is_err());
    }

    #[test]
    fn witnesses_verify() {
        for spec in [
            "wheel:7",
            "biclique:4,2",
            "halfgraph:4",
            "hypercube:3",
            "cycle:3+path:2",
        ] {
            let g = family(spec);
            for rule in Rule::ALL {
                let f = failed_number(&g, rule);
                assert_eq!(f.witness.len(), f.value);
                assert!(is_failed_set(&g, f.witness, rule));
                assert!(is_stalled(&g, f.witness, rule));
                let z = zero_forcing_number(&g, rule);
                assert_eq!(z.witness.len(), z.value);
                assert!(is_forcing_set(&g, z.witness, rule));
            }
        }
    }
}
