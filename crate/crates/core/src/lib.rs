//! Exact spectral toolkit for the middle two levels of the Boolean lattice.
//!
//! The crate builds three graph families (hypercubes `Q_n`, middle-cubes
//! `M_{2k+1}`, which are the subgraphs of `Q_{2k+1}` induced by vertices of
//! Hamming weight `k` or `k+1`, and Johnson graphs `J(n,m)`) and certifies their
//! spectra with exact integer/rational arithmetic only. No floating point
//! is used anywhere.
//!
//! The headline pipeline constructs, for each eigenvalue `k+1-r` of
//! `M_{2k+1}`, an explicit rational basis of the eigenspace: solve the
//! zero-sum constraints on `r`-subsets ([`spectrum::constraint_kernel`]),
//! lift each solution to the two middle layers by summing over contained
//! `r`-subsets ([`spectrum::lift_block`]), and check `A·v = λ·v` entry by
//! entry. Independent certifiers (adjacency-power moments, a
//! characteristic-polynomial oracle, incidence-matrix ranks, the
//! `M² = blockdiag(J,J) + (k+1)I` identity) confirm the closed forms
//! without reusing the construction.
//!
//! With the default `parallel` feature the data-parallel inner loops
//! (trace accumulation, dense products, batch eigenvector checks) run on
//! rayon; disabling the feature yields a fully sequential build with
//! identical outputs.

pub mod combinatorics;
pub mod graphs;
pub mod hamiltonian;
pub mod linalg;
pub mod spectrum;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
