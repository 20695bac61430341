#![allow(dead_code)]

use cozero::spectrum::{self, JoinInstance, SpectrumMultiset};
use cozero::DenseMatrix;
use rand::Rng;

/// A random generalized join: frame edges plus edges inside every component.
#[derive(Debug, Clone)]
pub struct RandomFrame {
    pub weights: Vec<usize>,
    pub frame_edges: Vec<(usize, usize)>,
    pub component_edges: Vec<Vec<(usize, usize)>>,
}

pub fn random_frame<R: Rng>(rng: &mut R, max_order: usize, max_weight: usize) -> RandomFrame {
    let k = rng.gen_range(1..=max_order);
    let weights: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_weight)).collect();
    let density = rng.gen_range(0.2..0.9);
    let frame_edges = pairs(k).filter(|_| rng.gen_bool(density)).collect();
    let component_edges = weights
        .iter()
        .map(|&w| pairs(w).filter(|_| rng.gen_bool(0.5)).collect())
        .collect();
    RandomFrame {
        weights,
        frame_edges,
        component_edges,
    }
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
}

pub fn laplacian(order: usize, edges: &[(usize, usize)]) -> DenseMatrix {
    let mut l = DenseMatrix::zeros(order, order);
    for &(i, j) in edges {
        l[(i, j)] -= 1.0;
        l[(j, i)] -= 1.0;
        l[(i, i)] += 1.0;
        l[(j, j)] += 1.0;
    }
    l
}

impl RandomFrame {
    /// Laplacian of the fully expanded graph.
    pub fn composed_laplacian(&self) -> DenseMatrix {
        let offsets: Vec<usize> = self
            .weights
            .iter()
            .scan(0, |acc, &w| {
                let start = *acc;
                *acc += w;
                Some(start)
            })
            .collect();
        let mut edges = Vec::new();
        for (c, inner) in self.component_edges.iter().enumerate() {
            edges.extend(inner.iter().map(|&(i, j)| (offsets[c] + i, offsets[c] + j)));
        }
        for &(a, b) in &self.frame_edges {
            for i in 0..self.weights[a] {
                for j in 0..self.weights[b] {
                    edges.push((offsets[a] + i, offsets[b] + j));
                }
            }
        }
        laplacian(self.weights.iter().sum(), &edges)
    }

    pub fn join_instance(&self, tol: f64) -> JoinInstance {
        let spectra: Vec<SpectrumMultiset> = self
            .weights
            .iter()
            .zip(&self.component_edges)
            .map(|(&w, e)| spectrum::matrix_spectrum(&laplacian(w, e), tol).unwrap())
            .collect();
        JoinInstance::new(self.weights.clone(), &self.frame_edges, spectra).unwrap()
    }
}
