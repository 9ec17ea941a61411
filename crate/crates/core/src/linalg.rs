//! Symmetric matrices with a prescribed off-diagonal pattern, their
//! numerical kernels, and the kernel-support test for failed sets: a nonzero
//! kernel vector vanishing on `S` certifies that `S` is failed.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::TheoremReport;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::forcing::{is_failed_set, Rule};
use crate::formulas::{table51_value, Parameter};
use crate::graph::{Graph, VertexSet};

/// Relative singular-value cutoff for the numerical kernel.
pub const KERNEL_TOL: f64 = 1e-9;
/// Coordinates with `|x_i| <= SUPPORT_TOL * max |x_j|` count as zero.
pub const SUPPORT_TOL: f64 = 1e-7;
/// Off-diagonal entries at or below this magnitude are treated as zero.
pub const ZERO_THRESHOLD: f64 = 1e-12;
/// Eigenvalues down to `-PSD_TOL * ||A||` are accepted as nonnegative.
pub const PSD_TOL: f64 = 1e-10;

/// A symmetric matrix whose off-diagonal nonzero pattern is `graph`.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternMatrix {
    graph: Graph,
    entries: DMatrix<f64>,
    psd: bool,
}

impl PatternMatrix {
    /// Checks shape, symmetry, pattern, and (when `psd` is set) the sign of
    /// the spectrum.
    pub fn new(graph: Graph, entries: DMatrix<f64>, psd: bool) -> Result<Self> {
        let n = graph.order();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::PatternMismatch);
        }
        let scale = max_abs(&entries).max(1.0);
        for i in 0..n {
            for j in 0..i {
                if (entries[(i, j)] - entries[(j, i)]).abs() > 1e-12 * scale {
                    return Err(Error::PatternMismatch);
                }
            }
        }
        if graph_of(&entries)? != graph {
            return Err(Error::PatternMismatch);
        }
        let matrix = PatternMatrix {
            graph,
            entries,
            psd,
        };
        if psd && matrix.min_eigenvalue() < -PSD_TOL * matrix.norm() {
            return Err(Error::NotPositiveSemidefinite);
        }
        Ok(matrix)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn is_psd(&self) -> bool {
        self.psd
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Spectral norm.
    pub fn norm(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .fold(0.0_f64, |acc, l| acc.max(l.abs()))
    }

    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `A - lambda I` for the `index`-th smallest eigenvalue `lambda`. The
    /// diagonal is unconstrained by the pattern, so the result stays in the
    /// same pattern class and is singular. Shifting by the smallest
    /// eigenvalue gives a positive semidefinite matrix.
    pub fn shift_to_eigenvalue(&self, index: usize) -> PatternMatrix {
        let values = self.eigenvalues();
        let lambda = values[index.min(values.len() - 1)];
        let n = self.order();
        let entries = &self.entries - DMatrix::<f64>::identity(n, n) * lambda;
        PatternMatrix {
            graph: self.graph.clone(),
            entries,
            psd: self.psd || index == 0,
        }
    }

    /// Rows of whitespace-separated entries, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order() {
            let row: Vec<String> = (0..self.order())
                .map(|j| format!("{}", self.entries[(i, j)]))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// The graph whose edges are the nonzero off-diagonal positions of `m`.
pub fn graph_of(m: &DMatrix<f64>) -> Result<Graph> {
    let n = m.nrows();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[(i, j)].abs() > ZERO_THRESHOLD);
    Graph::from_edges(n, edges)
}

/// Random matrix in the pattern class of `g`: edge entries uniform in
/// `[-2, -0.5] ∪ [0.5, 2]`, non-edges zero, diagonal uniform in `[-2, 2]`.
pub fn sample_pattern_matrix(g: &Graph, seed: u64) -> PatternMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        entries[(i, i)] = rng.random_range(-2.0..=2.0);
    }
    for (u, v) in g.edges() {
        let magnitude = rng.random_range(0.5..=2.0);
        let value = if rng.random_bool(0.5) {
            magnitude
        } else {
            -magnitude
        };
        entries[(u, v)] = value;
        entries[(v, u)] = value;
    }
    PatternMatrix {
        graph: g.clone(),
        entries,
        psd: false,
    }
}

/// `D - W` for edge weights `weight(u, v) > 0`.
pub fn laplacian_with(g: &Graph, mut weight: impl FnMut(usize, usize) -> f64) -> PatternMatrix {
    let n = g.order();
    let mut entries = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        let w = weight(u, v);
        entries[(u, v)] = -w;
        entries[(v, u)] = -w;
        entries[(u, u)] += w;
        entries[(v, v)] += w;
    }
    PatternMatrix {
        graph: g.clone(),
        entries,
        psd: true,
    }
}

/// Weighted Laplacian with weights uniform in `[0.5, 2]`.
pub fn weighted_laplacian(g: &Graph, seed: u64) -> PatternMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    laplacian_with(g, |_, _| rng.random_range(0.5..=2.0))
}

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular value is below `tol` times the largest one.
pub fn kernel_basis(a: &PatternMatrix, tol: f64) -> Vec<DVector<f64>> {
    let n = a.order();
    let svd = a.entries.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let largest = svd.singular_values.max();
    if largest == 0.0 {
        return (0..n)
            .map(|i| DVector::from_fn(n, |j, _| f64::from(i == j)))
            .collect();
    }
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s < tol * largest)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect()
}

pub fn numerical_rank(a: &PatternMatrix, tol: f64) -> usize {
    a.order() - kernel_basis(a, tol).len()
}

/// Coordinates treated as zero: `|x_i| <= SUPPORT_TOL * ||x||_inf`.
pub fn zero_set(x: &DVector<f64>) -> VertexSet {
    let scale = x.amax();
    x.iter()
        .enumerate()
        .filter(|&(_, &xi)| xi.abs() <= SUPPORT_TOL * scale)
        .map(|(i, _)| i)
        .collect()
}

/// For each kernel basis vector of `a`, and for `trials` random combinations
/// of them, the set of zero coordinates must be a failed set of `g` under
/// `rule`. It suffices to test the whole zero set since subsets of failed
/// sets are failed.
pub fn support_implies_failed(
    g: &Graph,
    a: &PatternMatrix,
    rule: Rule,
    trials: usize,
    seed: u64,
) -> Result<TheoremReport> {
    if a.graph() != g {
        return Err(Error::PatternMismatch);
    }
    if rule == Rule::PositiveSemidefinite && !a.is_psd() {
        return Err(Error::NotPositiveSemidefinite);
    }
    let basis = kernel_basis(a, KERNEL_TOL);
    let mut vectors = basis.clone();
    if !basis.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x = basis.iter().fold(DVector::zeros(g.order()), |acc, b| {
                acc + b * rng.random_range(-1.0..=1.0)
            });
            if x.amax() > KERNEL_TOL {
                vectors.push(x);
            }
        }
    }
    let mut largest_zero_set = 0;
    let mut all_failed = true;
    for x in &vectors {
        let zeros = zero_set(x);
        largest_zero_set = largest_zero_set.max(zeros.len());
        all_failed &= is_failed_set(g, zeros, rule);
    }
    let theorem = match rule {
        Rule::Standard => "Cor 2.10",
        Rule::PositiveSemidefinite => "Prop 2.12",
    };
    Ok(TheoremReport::new(
        theorem,
        &format!("n={}", g.order()),
        true,
        all_failed,
        format!(
            "nullity={}, vectors={}, largest zero set={largest_zero_set}",
            basis.len(),
            vectors.len()
        ),
    ))
}

/// `rank(A) >= mr(G)`, and `>= mr_+(G)` for positive semidefinite `A`, with
/// `mr` from the published table.
pub fn rank_lower_bound_check(spec: &FamilySpec, a: &PatternMatrix) -> Result<TheoremReport> {
    let mut bound = table51_value(spec, Parameter::Mr)?;
    if a.is_psd() {
        bound = bound.max(table51_value(spec, Parameter::MrPlus)?);
    }
    if *a.graph() != spec.build()? {
        return Err(Error::PatternMismatch);
    }
    let rank = numerical_rank(a, KERNEL_TOL);
    Ok(TheoremReport::new(
        "Table 5.1 rank bound",
        &spec.to_string(),
        true,
        rank >= bound,
        format!("rank={rank}, bound={bound}, psd={}", a.is_psd()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    fn family(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn sampled_matrix_has_the_pattern() {
        let a = sample_pattern_matrix(&family("empty:3"), 1);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(a.entries()[(i, j)], 0.0);
                }
            }
        }
        let p2 = sample_pattern_matrix(&family("path:2"), 2);
        assert!(p2.entries()[(0, 1)].abs() >= 0.5);
        for spec in ["wheel:7", "hypercube:3", "cycle:3+path:2"] {
            let g = family(spec);
            for seed in 0..10 {
                let a = sample_pattern_matrix(&g, seed);
                assert_eq!(graph_of(a.entries()).unwrap(), g);
                assert!(PatternMatrix::new(g.clone(), a.entries().clone(), false).is_ok());
            }
        }
        assert_eq!(
            sample_pattern_matrix(&family("cycle:5"), 9),
            sample_pattern_matrix(&family("cycle:5"), 9)
        );
    }

    #[test]
    fn cycle_laplacian_spectrum() {
        let l = laplacian_with(&family("cycle:4"), |_, _| 1.0);
        let values = l.eigenvalues();
        for (got, want) in values.iter().zip([0.0, 2.0, 2.0, 4.0]) {
            assert!(close(*got, want), "{values:?}");
        }
    }

    #[test]
    fn laplacian_nullity_counts_components() {
        let connected = weighted_laplacian(&family("wheel:6"), 3);
        assert_eq!(kernel_basis(&connected, KERNEL_TOL).len(), 1);
        let split = weighted_laplacian(&family("cycle:3+path:2"), 3);
        assert_eq!(kernel_basis(&split, KERNEL_TOL).len(), 2);
        assert!(split.min_eigenvalue() >= -PSD_TOL * split.norm());
    }

    #[test]
    fn kernel_of_connected_laplacian_is_constant() {
        let l = weighted_laplacian(&family("hypercube:3"), 5);
        let basis = kernel_basis(&l, KERNEL_TOL);
        assert_eq!(basis.len(), 1);
        let x = &basis[0];
        for xi in x.iter() {
            assert!(close(xi.abs(), 1.0 / 8f64.sqrt()));
        }
    }

    #[test]
    fn kernel_of_diagonal_matrices() {
        let g = family("empty:3");
        let id = PatternMatrix::new(g.clone(), DMatrix::identity(3, 3), true).unwrap();
        assert!(kernel_basis(&id, KERNEL_TOL).is_empty());
        let d = PatternMatrix::new(
            g.clone(),
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 0.0, 2.0])),
            true,
        )
        .unwrap();
        let basis = kernel_basis(&d, KERNEL_TOL);
        assert_eq!(basis.len(), 1);
        assert_eq!(zero_set(&basis[0]), [0, 2].into_iter().collect());
        let zero = PatternMatrix::new(g, DMatrix::zeros(3, 3), true).unwrap();
        assert_eq!(kernel_basis(&zero, KERNEL_TOL).len(), 3);
    }

    #[test]
    fn constructor_rejects_bad_matrices() {
        let g = family("path:3");
        let mut m = sample_pattern_matrix(&g, 0).entries().clone();
        assert!(PatternMatrix::new(family("cycle:3"), m.clone(), false).is_err());
        m[(0, 1)] += 0.1;
        assert_eq!(
            PatternMatrix::new(g.clone(), m, false),
            Err(Error::PatternMismatch)
        );
        let negative = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0]));
        assert_eq!(
            PatternMatrix::new(family("empty:2"), negative, true),
            Err(Error::NotPositiveSemidefinite)
        );
    }

    #[test]
    fn shift_makes_singular_matrices() {
        let g = family("cycle:6");
        let a = sample_pattern_matrix(&g, 11);
        for index in 0..6 {
            let shifted = a.shift_to_eigenvalue(index);
            assert_eq!(graph_of(shifted.entries()).unwrap(), g);
            assert!(!kernel_basis(&shifted, KERNEL_TOL).is_empty());
        }
        let bottom = a.shift_to_eigenvalue(0);
        assert!(bottom.is_psd());
        assert!(PatternMatrix::new(g, bottom.entries().clone(), true).is_ok());
    }

    #[test]
    fn support_examples() {
        let g = family("wheel:6");
        let l = weighted_laplacian(&g, 1);
        let r = support_implies_failed(&g, &l, Rule::PositiveSemidefinite, 5, 0).unwrap();
        assert!(r.pass, "{r:?}");

        let pair = family("empty:2");
        let d = PatternMatrix::new(
            pair.clone(),
            DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 1.0])),
            true,
        )
        .unwrap();
        assert_eq!(
            zero_set(&kernel_basis(&d, KERNEL_TOL)[0]),
            VertexSet::singleton(1)
        );
        for rule in Rule::ALL {
            assert!(support_implies_failed(&pair, &d, rule, 3, 0).unwrap().pass);
        }

        let c5 = family("cycle:5");
        for seed in 0..50 {
            let a = sample_pattern_matrix(&c5, seed).shift_to_eigenvalue(seed as usize % 5);
            assert!(
                support_implies_failed(&c5, &a, Rule::Standard, 4, seed)
                    .unwrap()
                    .pass
            );
        }
    }

    #[test]
    fn support_rejects_mismatched_inputs() {
        let g = family("cycle:5");
        let a = sample_pattern_matrix(&g, 0);
        assert_eq!(
            support_implies_failed(&family("path:5"), &a, Rule::Standard, 1, 0),
            Err(Error::PatternMismatch)
        );
        assert_eq!(
            support_implies_failed(&g, &a, Rule::PositiveSemidefinite, 1, 0),
            Err(Error::NotPositiveSemidefinite)
        );
    }

    #[test]
    fn rank_bound_examples() {
        for n in 2..=7 {
            let spec: FamilySpec = format!("path:{n}").parse().unwrap();
            let a = sample_pattern_matrix(&spec.build().unwrap(), n as u64);
            assert!(numerical_rank(&a, KERNEL_TOL) >= n - 1);
            assert!(rank_lower_bound_check(&spec, &a).unwrap().pass);
            let k: FamilySpec = format!("complete:{n}").parse().unwrap();
            let a = sample_pattern_matrix(&k.build().unwrap(), n as u64).shift_to_eigenvalue(0);
            assert!(rank_lower_bound_check(&k, &a).unwrap().pass);
        }
        let c6: FamilySpec = "cycle:6".parse().unwrap();
        let l = weighted_laplacian(&c6.build().unwrap(), 0);
        assert_eq!(numerical_rank(&l, KERNEL_TOL), 5);
        assert!(rank_lower_bound_check(&c6, &l).unwrap().pass);
        assert!(rank_lower_bound_check(&"marytree:2,5".parse().unwrap(), &l).is_err());
    }

    #[test]
    fn text_output() {
        let l = laplacian_with(&family("path:2"), |_, _| 1.0);
        assert_eq!(l.to_text(), "1 -1\n-1 1\n");
    }
}
