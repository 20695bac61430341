//! The full cozero-divisor graph, built straight from the adjacency rule.
//!
//! Nothing here looks at the ideal lattice: two vertices `u, v` are adjacent
//! iff `u ∉ Rv` and `v ∉ Ru`, decided pairwise with [`RingContext::in_ideal`].
//! That keeps this module usable as an oracle for the structural route.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};
use crate::ring::{PolyElement, RingContext};
use crate::spectrum::SpectrumMultiset;

#[derive(Debug, Clone)]
pub struct CozeroGraph {
    ctx: RingContext,
    vertices: Vec<PolyElement>,
    adjacency: Vec<FixedBitSet>,
    degree: Vec<usize>,
}

impl CozeroGraph {
    /// Builds the graph on all nonzero non-units of `Z_n[x]/(x^2)`.
    pub fn build(ctx: &RingContext) -> Result<Self> {
        ctx.ensure_enumerable()?;
        let vertices: Vec<PolyElement> = ctx.non_units().collect();
        let m = vertices.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in i + 1..m {
                let (u, v) = (vertices[i], vertices[j]);
                if !ctx.in_ideal(u, v) && !ctx.in_ideal(v, u) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        let degree = adjacency.iter().map(|row| row.count_ones(..)).collect();
        Ok(Self {
            ctx: ctx.clone(),
            vertices,
            adjacency,
            degree,
        })
    }

    /// Graph from explicit vertices and an edge list, for synthetic inputs.
    /// Vertex labels are placeholders `0x+i`.
    pub fn from_edges(ctx: &RingContext, order: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![FixedBitSet::with_capacity(order); order];
        for &(i, j) in edges {
            assert!(i != j && i < order && j < order, "bad edge ({i}, {j})");
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
        let degree = adjacency.iter().map(|row| row.count_ones(..)).collect();
        Self {
            ctx: ctx.clone(),
            vertices: (0..order as u64).map(|i| PolyElement::new(0, i)).collect(),
            adjacency,
            degree,
        }
    }

    pub fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    pub fn vertices(&self) -> &[PolyElement] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn edge_count(&self) -> usize {
        self.degree.iter().sum::<usize>() / 2
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].ones()
    }

    pub fn index_of(&self, e: PolyElement) -> Option<usize> {
        self.vertices.binary_search(&e).ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DenseMatrix {
        let m = self.vertex_count();
        let mut l = DenseMatrix::zeros(m, m);
        for i in 0..m {
            l[(i, i)] = self.degree[i] as f64;
            for j in self.adjacency[i].ones() {
                l[(i, j)] = -1.0;
            }
        }
        l
    }

    /// Laplacian spectrum by dense diagonalization.
    ///
    /// Every eigenpair must satisfy `||Lv - λv|| <= tol * max(1, ||L||_inf)`,
    /// and eigenvalues closer than that same bound are merged.
    pub fn oracle_spectrum(&self, tol: f64) -> Result<SpectrumMultiset> {
        laplacian_spectrum(&self.laplacian(), tol)
    }

    pub fn connectivity_report(&self) -> ConnectivityReport {
        let m = self.vertex_count();
        let mut component = vec![usize::MAX; m];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..m {
            if component[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            component[start] = id;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for v in self.adjacency[u].ones() {
                    if component[v] == usize::MAX {
                        component[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            sizes.push(size);
        }
        let isolated_vertices = (0..m)
            .filter(|&i| self.degree[i] == 0)
            .map(|i| self.vertices[i])
            .collect();
        ConnectivityReport {
            component_count: sizes.len(),
            component_sizes: sizes,
            isolated_vertices,
        }
    }
}

/// Spectrum of a symmetric Laplacian-like matrix with the residual contract
/// of [`CozeroGraph::oracle_spectrum`].
pub fn laplacian_spectrum(l: &DenseMatrix, tol: f64) -> Result<SpectrumMultiset> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let eig = linalg::symmetric_eigen(l)?;
    let bound = tol * l.inf_norm().max(1.0);
    if let Some(&residual) = eig
        .residuals(l)
        .iter()
        .max_by(|a, b| a.total_cmp(b))
        .filter(|r| **r > bound)
    {
        return Err(Error::ResidualTooLarge { residual, bound });
    }
    Ok(SpectrumMultiset::from_values(eig.values, bound))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub component_count: usize,
    pub component_sizes: Vec<usize>,
    /// Degree-zero vertices in index order.
    pub isolated_vertices: Vec<PolyElement>,
}

impl ConnectivityReport {
    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }
}
