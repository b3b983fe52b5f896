//! Inverse eigenvalue problems for generalized graph Laplacians.
//!
//! A generalized Laplacian of a graph G is a symmetric matrix with negative
//! entries exactly on the edges of G, zeros on the non-edges and zero row
//! sums; equivalently `N W Nᵀ` for positive edge weights `W`. This crate
//! decides which spectra such matrices can have for several small families,
//! builds witnesses, enumerates multiplicity lists, and minimizes spectral
//! variance under a trace constraint.

pub mod error;
pub mod family;
pub mod graph;
pub mod minvar;
pub mod multiplicity;
pub mod realizability;
pub mod sampler;
pub mod spectral;

pub use error::{Error, Result};
pub use family::Family;
pub use graph::Graph;
pub use minvar::{MinVarResult, QPInstance, SolverKind};
pub use realizability::{RealizationWitness, TargetSpectrum};
pub use spectral::{OrderedMultiplicityList, Spectrum};
