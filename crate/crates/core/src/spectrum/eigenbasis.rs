//! Constructive eigenbasis of the middle-cube, built in three exact steps:
//! containment (incidence) matrices between subset layers, kernels of the
//! zero-sum constraint system on r-subsets, and the lift that extends each
//! kernel vector to a full eigenvector by summing its coordinates over the
//! r-subsets of every vertex label.
//!
//! For each r = 0..=k the lift yields the eigenspace of k+1-r, and negating
//! the upper layer (the bipartite reflection) yields the eigenspace of
//! -(k+1-r). Row counts, eigenvector equations, and orthogonality are all
//! certified by exact arithmetic in the test suites.

use crate::combinatorics::{binomial, SubsetOrdering};
use crate::graphs::SparseGraph;
use crate::linalg::{sparse_matvec_rational, IntMatrix, RationalMatrix};
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Entry-count cap for materialized containment matrices.
pub const MAX_INCIDENCE_ENTRIES: u64 = 1 << 23;
/// Hard cap on the eigenbasis pipeline; k = 6 already means kernels of
/// 1287x1716 rational matrices and runs for minutes.
pub const MAX_EIGENBASIS_K: u32 = 6;

/// Parameters of a containment matrix between i-subsets and j-subsets of
/// `{1..n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceSpec {
    pub n: u32,
    pub i: u32,
    pub j: u32,
}

/// 0/1 matrix with rows the i-subsets and columns the j-subsets (both in
/// colex order); entry (r,s) is 1 iff one subset contains the other.
pub fn incidence_matrix(spec: &IncidenceSpec) -> Result<IntMatrix> {
    let IncidenceSpec { n, i, j } = *spec;
    if i == j {
        return Err(Error::OutOfRange(format!(
            "containment needs distinct cardinalities, got i = j = {i}"
        )));
    }
    if i > n || j > n {
        return Err(Error::OutOfRange(format!(
            "cardinalities ({i},{j}) exceed ground set size {n}"
        )));
    }
    let row_ord = SubsetOrdering::new(n, i)?;
    let col_ord = SubsetOrdering::new(n, j)?;
    let entries = row_ord.count() as u128 * col_ord.count() as u128;
    if entries > MAX_INCIDENCE_ENTRIES as u128 {
        return Err(Error::CapExceeded(format!(
            "incidence matrix would hold {entries} entries, cap is {MAX_INCIDENCE_ENTRIES}"
        )));
    }
    let mut m = IntMatrix::zero(row_ord.count() as usize, col_ord.count() as usize);
    if i < j {
        // Each column's j-subset contains C(j,i) of the row subsets.
        for (s, b) in col_ord.enumerate().iter().enumerate() {
            for a in b.subsets_of_size(i) {
                m.set(row_ord.rank(&a)? as usize, s, BigInt::one());
            }
        }
    } else {
        for (r, a) in row_ord.enumerate().iter().enumerate() {
            for b in a.subsets_of_size(j) {
                m.set(r, col_ord.rank(&b)? as usize, BigInt::one());
            }
        }
    }
    Ok(m)
}

/// Basis of the solution space of the zero-sum system on r-subsets: all x
/// with Σ_{i ∉ R} x[R ∪ {i}] = 0 for every (r-1)-subset R. Coordinates are
/// indexed by the colex order of r-subsets; the basis has
/// C(n,r) − C(n,r-1) rows.
///
/// r = 0 is the conventional base case: no constraints, and the space is
/// spanned by the single vector (1) over the one empty subset.
pub fn constraint_kernel(n: u32, r: u32) -> Result<RationalMatrix> {
    if !(1..=63).contains(&n) || r > (n - 1) / 2 {
        return Err(Error::OutOfRange(format!(
            "constraint kernel needs 0 <= r <= (n-1)/2 with n <= 63, got (n={n}, r={r})"
        )));
    }
    if r == 0 {
        return RationalMatrix::new(1, 1, vec![BigRational::one()]);
    }
    // x ranges over r-subset weights; the constraints pair each r-subset
    // with the (r-1)-subsets it contains, which is exactly the containment
    // matrix between the two layers.
    let m = incidence_matrix(&IncidenceSpec { n, i: r, j: r - 1 })?;
    Ok(m.to_rational().transpose().right_kernel_basis())
}

/// A batch of exact eigenvectors: `vectors` rows span the eigenspace of
/// `eigenvalue` for the middle-cube with parameter `k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenbasisBlock {
    pub k: u32,
    pub r: u32,
    pub eigenvalue: i64,
    pub vectors: RationalMatrix,
}

impl EigenbasisBlock {
    /// Header line `k r eigenvalue rows cols`, then the standard matrix
    /// text (which repeats the dimensions on its own header).
    pub fn to_text(&self) -> String {
        format!(
            "{} {} {} {} {}\n{}",
            self.k,
            self.r,
            self.eigenvalue,
            self.vectors.rows(),
            self.vectors.cols(),
            self.vectors.to_text()
        )
    }
}

/// Extend every constraint-kernel basis vector for parameter r to an exact
/// eigenvector of the middle-cube with eigenvalue k+1-r: the coordinate at
/// a vertex labeled A is the sum of kernel coordinates over all r-subsets
/// of A. Rows stay in kernel-basis order, so output is deterministic.
pub fn lift_block(k: u32, r: u32) -> Result<EigenbasisBlock> {
    if !(1..=MAX_EIGENBASIS_K).contains(&k) {
        return Err(Error::CapExceeded(format!(
            "eigenbasis parameter {k} not in 1..={MAX_EIGENBASIS_K}"
        )));
    }
    if r > k {
        return Err(Error::OutOfRange(format!("r = {r} exceeds k = {k}")));
    }
    let n = 2 * k + 1;
    let kernel = constraint_kernel(n, r)?;
    let r_ord = SubsetOrdering::new(n, r)?;
    let lower = SubsetOrdering::new(n, k)?.enumerate();
    let upper = SubsetOrdering::new(n, k + 1)?.enumerate();
    let cols = lower.len() + upper.len();

    // Shared per-vertex index lists: which kernel coordinates feed each
    // vertex. Computed once, reused by every kernel row.
    let support: Vec<Vec<usize>> = lower
        .iter()
        .chain(upper.iter())
        .map(|a| {
            a.subsets_of_size(r)
                .iter()
                .map(|s| r_ord.rank(s).expect("subset of a vertex label") as usize)
                .collect()
        })
        .collect();

    let lift_row = |i: usize| -> Vec<BigRational> {
        let x = kernel.row(i);
        support
            .iter()
            .map(|idxs| {
                let mut acc = BigRational::zero();
                for &idx in idxs {
                    if !x[idx].is_zero() {
                        acc += &x[idx];
                    }
                }
                acc
            })
            .collect()
    };

    #[cfg(feature = "parallel")]
    let entries: Vec<BigRational> = (0..kernel.rows())
        .into_par_iter()
        .flat_map_iter(lift_row)
        .collect();
    #[cfg(not(feature = "parallel"))]
    let entries: Vec<BigRational> = (0..kernel.rows()).flat_map(lift_row).collect();

    Ok(EigenbasisBlock {
        k,
        r,
        eigenvalue: (k + 1 - r) as i64,
        vectors: RationalMatrix::new(kernel.rows(), cols, entries)?,
    })
}

/// Bipartite reflection: negate the upper-layer coordinates, turning every
/// eigenvector for λ into one for -λ. Row count is preserved.
pub fn sign_flip(block: &EigenbasisBlock) -> EigenbasisBlock {
    let rows = block.vectors.rows();
    let cols = block.vectors.cols();
    let half = cols / 2;
    let mut vectors = block.vectors.clone();
    for i in 0..rows {
        for j in half..cols {
            let v = -vectors.get(i, j).clone();
            vectors.set(i, j, v);
        }
    }
    EigenbasisBlock {
        k: block.k,
        r: block.r,
        eigenvalue: -block.eigenvalue,
        vectors,
    }
}

/// The complete eigenbasis: for r = 0..=k, the lifted block for eigenvalue
/// k+1-r followed by its reflection for -(k+1-r). Total rows across blocks
/// equal the vertex count 2·C(2k+1,k).
pub fn full_eigenbasis(k: u32) -> Result<Vec<EigenbasisBlock>> {
    if !(1..=MAX_EIGENBASIS_K).contains(&k) {
        return Err(Error::CapExceeded(format!(
            "eigenbasis parameter {k} not in 1..={MAX_EIGENBASIS_K}"
        )));
    }
    let mut blocks = Vec::with_capacity(2 * (k as usize + 1));
    for r in 0..=k {
        let positive = lift_block(k, r)?;
        let negative = sign_flip(&positive);
        blocks.push(positive);
        blocks.push(negative);
    }
    Ok(blocks)
}

/// True iff `v` is nonzero and satisfies A·v = λ·v exactly on `g`.
pub fn verify_eigenvector(g: &SparseGraph, v: &[BigRational], lambda: i64) -> bool {
    if v.len() != g.num_vertices() || v.iter().all(Zero::is_zero) {
        return false;
    }
    let av = sparse_matvec_rational(g, v).expect("length checked above");
    let lam = BigRational::from(BigInt::from(lambda));
    av.iter().zip(v).all(|(a, x)| *a == &lam * x)
}

/// Dimension of the constraint kernel predicted by the rank identity:
/// C(n,r) − C(n,r-1).
pub fn expected_kernel_rows(n: u32, r: u32) -> BigInt {
    binomial(n as u64, r as i64) - binomial(n as u64, r as i64 - 1)
}
