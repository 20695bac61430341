//! Cozero-divisor graphs of `Z_n[x]/(x^2)` and their Laplacian spectra.
//!
//! The crate computes the spectrum two independent ways:
//!
//! * [`graph`] materializes the whole graph and diagonalizes its Laplacian
//!   with a dense Jacobi solver (the brute-force oracle);
//! * [`spectrum::structural_spectrum`] enumerates the principal ideals
//!   ([`ideal`]), builds the weighted reduced graph and evaluates the
//!   generalized-join formula, which only needs a small quotient matrix.
//!
//! [`families`] holds the closed forms and tables for `n = p, p^2, p^3, pq,
//! p^2 q, pqr` that both routes are checked against.

pub mod error;
pub mod families;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod ring;
pub mod spectrum;

pub use error::{Error, Result};
pub use families::{
    closed_form, closed_form_spectrum, family_tables, ClosedForm, Family, FamilyRow,
};
pub use graph::{ConnectivityReport, CozeroGraph};
pub use ideal::{IdealLattice, IdealRecord, ReducedGraph};
pub use linalg::DenseMatrix;
pub use ring::{ElementSet, PolyElement, RingContext, DEFAULT_MAX_N};
pub use spectrum::{JoinInstance, MatchReport, QuotientMatrix, SpectrumMultiset};

/// Default eigenvalue tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
