//! Spectrum multisets and the generalized-join spectrum engine.
//!
//! For a frame graph on `k` vertices with weights `n_i`, where vertex `i` is
//! blown up into a graph `G_i` on `n_i` vertices and adjacent frame vertices
//! are fully joined, the Laplacian spectrum of the composition is
//!
//! ```text
//! ⋃_i (D_i + (Φ_L(G_i) minus one 0))  ∪  Φ(Q)
//! ```
//!
//! where `D_i` is the sum of the neighbor weights and `Q` is the symmetric
//! `k x k` quotient matrix with diagonal `D_i` and `-sqrt(n_i n_j)` on frame
//! edges. For the cozero-divisor graph every `G_i` is edgeless, so only `Q`
//! needs a numerical eigensolve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::laplacian_spectrum;
use crate::ideal::{IdealLattice, ReducedGraph};
use crate::linalg::{self, DenseMatrix};
use crate::ring::RingContext;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
}

/// Eigenvalues with multiplicities, sorted ascending, distinct values more
/// than `tolerance` apart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumMultiset {
    entries: Vec<SpectrumEntry>,
    tolerance: f64,
}

impl SpectrumMultiset {
    /// Clusters raw eigenvalues: after sorting, neighbors within `tolerance`
    /// are merged and the cluster is represented by its mean.
    pub fn from_values(mut values: Vec<f64>, tolerance: f64) -> Self {
        values.sort_by(f64::total_cmp);
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let mut cluster_sum = 0.0;
        let mut last = f64::NEG_INFINITY;
        for v in values {
            match entries.last_mut() {
                Some(e) if v - last <= tolerance => {
                    cluster_sum += v;
                    e.multiplicity += 1;
                    e.value = cluster_sum / e.multiplicity as f64;
                }
                _ => {
                    cluster_sum = v;
                    entries.push(SpectrumEntry {
                        value: v,
                        multiplicity: 1,
                    });
                }
            }
            last = v;
        }
        Self { entries, tolerance }
    }

    /// Builds a multiset from `(value, multiplicity)` pairs, dropping zero
    /// multiplicities and merging values within `tolerance`.
    pub fn from_entries<I>(entries: I, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = (f64, usize)>,
    {
        let mut items: Vec<(f64, usize)> = entries.into_iter().filter(|(_, m)| *m > 0).collect();
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<SpectrumEntry> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for (v, m) in items {
            match out.last_mut() {
                Some(e) if v - last <= tolerance => {
                    let total = e.multiplicity + m;
                    e.value = (e.value * e.multiplicity as f64 + v * m as f64) / total as f64;
                    e.multiplicity = total;
                }
                _ => out.push(SpectrumEntry {
                    value: v,
                    multiplicity: m,
                }),
            }
            last = v;
        }
        Self {
            entries: out,
            tolerance,
        }
    }

    /// `0^[m]`, the spectrum of the edgeless graph on `m` vertices.
    pub fn null_graph(m: usize, tolerance: f64) -> Self {
        Self::from_entries([(0.0, m)], tolerance)
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Total multiplicity, i.e. the dimension of the underlying matrix.
    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// All eigenvalues repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity))
            .collect()
    }

    pub fn sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value * e.multiplicity as f64)
            .sum()
    }

    pub fn min(&self) -> Option<f64> {
        self.entries.first().map(|e| e.value)
    }

    pub fn max(&self) -> Option<f64> {
        self.entries.last().map(|e| e.value)
    }

    /// Multiplicity of the entry within `tolerance` of `value`, 0 if absent.
    pub fn multiplicity_of(&self, value: f64) -> usize {
        self.entries
            .iter()
            .filter(|e| (e.value - value).abs() <= self.tolerance)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.multiplicity_of(0.0)
    }

    /// `round(value)` when the value is within tolerance of that integer.
    pub fn rounded(&self, value: f64) -> Option<i64> {
        let r = value.round();
        ((value - r).abs() <= self.tolerance).then_some(r as i64)
    }

    /// Entries with values rounded to the nearest integer. Intended for
    /// display and for comparing against integral closed forms.
    pub fn rounded_entries(&self) -> Vec<(i64, usize)> {
        self.entries
            .iter()
            .map(|e| (e.value.round() as i64, e.multiplicity))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| self.rounded(e.value).is_some())
    }

    pub fn union(&self, other: &SpectrumMultiset) -> SpectrumMultiset {
        let tol = self.tolerance.max(other.tolerance);
        Self::from_entries(
            self.entries
                .iter()
                .chain(&other.entries)
                .map(|e| (e.value, e.multiplicity)),
            tol,
        )
    }

    /// Removes one copy of an eigenvalue within `tol` of zero.
    fn without_one_zero(&self, tol: f64) -> Option<Vec<f64>> {
        let mut values = self.expanded();
        let pos = values.iter().position(|v| v.abs() <= tol)?;
        values.remove(pos);
        Some(values)
    }
}

impl std::fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match self.rounded(e.value) {
                Some(r) => write!(f, "{r}^[{}]", e.multiplicity)?,
                None => write!(f, "{:.10}^[{}]", e.value, e.multiplicity)?,
            }
        }
        write!(f, "}}")
    }
}

/// A weighted frame graph with a Laplacian spectrum attached to every vertex.
#[derive(Debug, Clone)]
pub struct JoinInstance {
    weights: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    component_spectra: Vec<SpectrumMultiset>,
}

impl JoinInstance {
    pub fn new(
        weights: Vec<usize>,
        edges: &[(usize, usize)],
        component_spectra: Vec<SpectrumMultiset>,
    ) -> Result<Self> {
        let k = weights.len();
        if component_spectra.len() != k {
            return Err(Error::InvalidInstance(format!(
                "{k} frame vertices but {} component spectra",
                component_spectra.len()
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidInstance(format!("vertex {i} has weight 0")));
        }
        for (i, (w, s)) in weights.iter().zip(&component_spectra).enumerate() {
            if s.dimension() != *w {
                return Err(Error::InvalidInstance(format!(
                    "component {i} has weight {w} but spectrum of dimension {}",
                    s.dimension()
                )));
            }
        }
        let mut adjacency = vec![Vec::new(); k];
        for &(i, j) in edges {
            if i == j || i >= k || j >= k {
                return Err(Error::InvalidInstance(format!("bad frame edge ({i}, {j})")));
            }
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Ok(Self {
            weights,
            adjacency,
            component_spectra,
        })
    }

    /// Frame from a reduced graph with every class an edgeless component.
    pub fn from_reduced_graph(graph: &ReducedGraph, tol: f64) -> Self {
        Self {
            weights: graph.weights.clone(),
            adjacency: graph.adjacency.clone(),
            component_spectra: graph
                .weights
                .iter()
                .map(|&w| SpectrumMultiset::null_graph(w, tol))
                .collect(),
        }
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }

    /// `D_i`: total weight of the neighbors of frame vertex `i`.
    pub fn neighbor_weight(&self, i: usize) -> usize {
        self.adjacency[i].iter().map(|&j| self.weights[j]).sum()
    }

    pub fn quotient_matrix(&self) -> QuotientMatrix {
        let k = self.order();
        let mut symmetric = DenseMatrix::zeros(k, k);
        let mut weighted = DenseMatrix::zeros(k, k);
        for i in 0..k {
            let d = self.neighbor_weight(i) as f64;
            symmetric[(i, i)] = d;
            weighted[(i, i)] = d;
            for &j in &self.adjacency[i] {
                symmetric[(i, j)] = -((self.weights[i] * self.weights[j]) as f64).sqrt();
                weighted[(i, j)] = -(self.weights[j] as f64);
            }
        }
        QuotientMatrix {
            symmetric,
            vertex_weighted: weighted,
        }
    }

    /// Laplacian spectrum of the composed graph.
    pub fn join_spectrum(&self, tol: f64) -> Result<SpectrumMultiset> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol));
        }
        let quotient = self.quotient_matrix();
        let scale = quotient
            .symmetric
            .inf_norm()
            .max(
                2.0 * (0..self.order())
                    .map(|i| self.neighbor_weight(i))
                    .max()
                    .unwrap_or(0) as f64,
            )
            .max(1.0);
        let mut values = Vec::with_capacity(self.weights.iter().sum());
        for (i, spectrum) in self.component_spectra.iter().enumerate() {
            let zero_tol = tol.max(spectrum.tolerance());
            let rest = spectrum
                .without_one_zero(zero_tol)
                .ok_or(Error::InvalidComponentSpectrum { index: i })?;
            let d = self.neighbor_weight(i) as f64;
            values.extend(rest.into_iter().map(|v| v + d));
        }
        values.extend(linalg::symmetric_eigen(&quotient.symmetric)?.values);
        Ok(SpectrumMultiset::from_values(values, tol * scale))
    }
}

/// The symmetric quotient matrix and the similar vertex-weighted Laplacian
/// `W^{-1/2} Q W^{1/2}` (diagonal `D_i`, `-n_j` on edges, zero row sums).
#[derive(Debug, Clone)]
pub struct QuotientMatrix {
    pub symmetric: DenseMatrix,
    pub vertex_weighted: DenseMatrix,
}

impl QuotientMatrix {
    pub fn dimension(&self) -> usize {
        self.symmetric.rows()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::symmetric_eigenvalues(&self.symmetric)
    }
}

/// Spectrum of the cozero-divisor graph via the ideal lattice.
pub fn structural_spectrum(ctx: &RingContext, tol: f64) -> Result<SpectrumMultiset> {
    let lattice = IdealLattice::enumerate(ctx)?;
    structural_spectrum_of(&lattice, tol)
}

pub fn structural_spectrum_of(lattice: &IdealLattice, tol: f64) -> Result<SpectrumMultiset> {
    JoinInstance::from_reduced_graph(&lattice.reduced_graph(), tol).join_spectrum(tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityMismatch {
    pub value: f64,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchReport {
    pub matches: bool,
    /// Largest `|a_k - b_k|` over the sorted, expanded eigenvalue lists.
    pub worst_deviation: f64,
    pub multiplicity_mismatches: Vec<MultiplicityMismatch>,
}

/// Pairs the sorted expanded eigenvalue lists and checks every pair is
/// within `tol`.
pub fn compare_multisets(
    left: &SpectrumMultiset,
    right: &SpectrumMultiset,
    tol: f64,
) -> Result<MatchReport> {
    let (l, r) = (left.expanded(), right.expanded());
    if l.len() != r.len() {
        return Err(Error::DimensionMismatch {
            left: l.len(),
            right: r.len(),
        });
    }
    let worst_deviation = l
        .iter()
        .zip(&r)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut multiplicity_mismatches = Vec::new();
    let mut values: Vec<f64> = left
        .entries()
        .iter()
        .chain(right.entries())
        .map(|e| e.value)
        .collect();
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() <= tol);
    for v in values {
        let count = |s: &SpectrumMultiset| -> usize {
            s.entries()
                .iter()
                .filter(|e| (e.value - v).abs() <= tol)
                .map(|e| e.multiplicity)
                .sum()
        };
        let (lm, rm) = (count(left), count(right));
        if lm != rm {
            multiplicity_mismatches.push(MultiplicityMismatch {
                value: v,
                left: lm,
                right: rm,
            });
        }
    }

    Ok(MatchReport {
        matches: worst_deviation <= tol,
        worst_deviation,
        multiplicity_mismatches,
    })
}

/// `(spectral radius, algebraic connectivity)`: the largest and the second
/// smallest eigenvalue.
pub fn extremes(spectrum: &SpectrumMultiset) -> Result<(f64, f64)> {
    let values = spectrum.expanded();
    if values.len() < 2 {
        return Err(Error::SpectrumTooSmall(values.len()));
    }
    Ok((values[values.len() - 1], values[1]))
}

/// Spectrum of an arbitrary symmetric Laplacian, re-exported for callers
/// that assemble their own matrices.
pub fn matrix_spectrum(l: &DenseMatrix, tol: f64) -> Result<SpectrumMultiset> {
    laplacian_spectrum(l, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-8;

    fn k23() -> JoinInstance {
        JoinInstance::new(
            vec![2, 3],
            &[(0, 1)],
            vec![
                SpectrumMultiset::null_graph(2, TOL),
                SpectrumMultiset::null_graph(3, TOL),
            ],
        )
        .unwrap()
    }

    #[test]
    fn clustering_merges_close_values() {
        let s = SpectrumMultiset::from_values(vec![2.0, 1e-12, 2.0 + 1e-10, -1e-13, 5.0], TOL);
        assert_eq!(s.rounded_entries(), vec![(0, 2), (2, 2), (5, 1)]);
        assert_eq!(s.dimension(), 5);
    }

    #[test]
    fn k23_quotient_and_spectrum() {
        let inst = k23();
        let q = inst.quotient_matrix();
        let r6 = 6f64.sqrt();
        assert!(
            q.symmetric
                .max_abs_diff(&DenseMatrix::from_rows(&[vec![3.0, -r6], vec![-r6, 2.0]]))
                < 1e-15
        );
        assert_eq!(
            q.vertex_weighted,
            DenseMatrix::from_rows(&[vec![3.0, -3.0], vec![-2.0, 2.0]])
        );
        let s = inst.join_spectrum(TOL).unwrap();
        assert_eq!(s.rounded_entries(), vec![(0, 1), (2, 2), (3, 1), (5, 1)]);
        assert_eq!(extremes(&s).unwrap().0.round(), 5.0);
        assert!((extremes(&s).unwrap().1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn isolated_frame_vertex() {
        let inst =
            JoinInstance::new(vec![4], &[], vec![SpectrumMultiset::null_graph(4, TOL)]).unwrap();
        assert_eq!(
            inst.join_spectrum(TOL).unwrap().rounded_entries(),
            vec![(0, 4)]
        );
        assert_eq!(inst.quotient_matrix().symmetric, DenseMatrix::zeros(1, 1));
    }

    #[test]
    fn edgeless_frame_gives_zero_quotient() {
        let inst = JoinInstance::new(
            vec![1, 2, 3],
            &[],
            (1..=3)
                .map(|w| SpectrumMultiset::null_graph(w, TOL))
                .collect(),
        )
        .unwrap();
        assert_eq!(inst.quotient_matrix().symmetric, DenseMatrix::zeros(3, 3));
    }

    #[test]
    fn component_without_zero_is_rejected() {
        let bad = SpectrumMultiset::from_entries([(1.0, 2)], TOL);
        let inst = JoinInstance::new(vec![2], &[], vec![bad]).unwrap();
        assert_eq!(
            inst.join_spectrum(TOL).unwrap_err(),
            Error::InvalidComponentSpectrum { index: 0 }
        );
    }

    #[test]
    fn instance_validation() {
        assert!(
            JoinInstance::new(vec![0], &[], vec![SpectrumMultiset::null_graph(0, TOL)]).is_err()
        );
        assert!(JoinInstance::new(
            vec![1],
            &[(0, 0)],
            vec![SpectrumMultiset::null_graph(1, TOL)]
        )
        .is_err());
        assert!(
            JoinInstance::new(vec![2], &[], vec![SpectrumMultiset::null_graph(1, TOL)]).is_err()
        );
    }

    #[test]
    fn compare_examples() {
        let a = SpectrumMultiset::from_entries([(0.0, 3), (24.0, 23)], TOL);
        let b = SpectrumMultiset::from_entries([(0.0, 2), (24.0, 24)], TOL);
        assert!(compare_multisets(&a, &a, TOL).unwrap().matches);
        let report = compare_multisets(&a, &b, TOL).unwrap();
        assert!(!report.matches);
        assert_eq!(report.worst_deviation, 24.0);
        assert_eq!(report.multiplicity_mismatches.len(), 2);
        let c = SpectrumMultiset::from_entries([(0.0, 3)], TOL);
        assert!(matches!(
            compare_multisets(&a, &c, TOL),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn extremes_examples() {
        let s = SpectrumMultiset::from_entries([(0.0, 3), (24.0, 23)], TOL);
        assert_eq!(extremes(&s).unwrap(), (24.0, 0.0));
        assert!(matches!(
            extremes(&SpectrumMultiset::null_graph(1, TOL)),
            Err(Error::SpectrumTooSmall(1))
        ));
    }
}
