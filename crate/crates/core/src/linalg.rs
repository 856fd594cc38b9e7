//! Exact dense linear algebra over the rationals and integers, plus sparse
//! big-integer matrix-vector powering for trace computations.
//!
//! Everything here is exact: ranks, kernels, and products are proof-grade
//! equalities, never floating-point approximations. Elimination uses
//! deterministic first-nonzero pivoting so outputs are byte-identical
//! across runs and thread counts.

use crate::graphs::SparseGraph;
use crate::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::fmt::Write as _;
use std::str::FromStr;

/// Upper bound for a single trace power exponent.
pub const MAX_TRACE_POWER: u32 = 64;
/// Upper bound for batched trace powers (characteristic polynomials need
/// exponents up to the vertex count).
pub const MAX_TRACE_POWER_BATCH: u32 = 128;
/// Largest graph densified by `adjacency_matrix`.
pub const MAX_DENSE_VERTICES: usize = 4096;

/// Dense row-major matrix of reduced big rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// Dense row-major matrix of big integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RrefResult {
    pub matrix: RationalMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Convenience constructor from integer literals; rows must be rectangular.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| BigRational::from(BigInt::from(v))))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact product; parallelizes over output rows when the `parallel`
    /// feature is enabled. Result is identical to [`Self::mul_seq`].
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_mul_dims(rhs)?;
        #[cfg(feature = "parallel")]
        {
            let cols = rhs.cols;
            let entries: Vec<BigRational> = (0..self.rows)
                .into_par_iter()
                .flat_map_iter(|i| self.product_row(rhs, i))
                .collect();
            RationalMatrix::new(self.rows, cols, entries)
        }
        #[cfg(not(feature = "parallel"))]
        self.mul_seq(rhs)
    }

    /// Exact product, single-threaded.
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        self.check_mul_dims(rhs)?;
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            entries.extend(self.product_row(rhs, i));
        }
        RationalMatrix::new(self.rows, rhs.cols, entries)
    }

    fn check_mul_dims(&self, rhs: &Self) -> Result<()> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// One output row of `self * rhs`, skipping zero coefficients (lift and
    /// incidence matrices are mostly zeros).
    fn product_row(&self, rhs: &Self, i: usize) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); rhs.cols];
        for k in 0..self.cols {
            let a = self.get(i, k);
            if a.is_zero() {
                continue;
            }
            let rhs_row = rhs.row(k);
            for (j, b) in rhs_row.iter().enumerate() {
                if !b.is_zero() {
                    acc[j] += a * b;
                }
            }
        }
        acc
    }

    /// Reduced row-echelon form with deterministic pivoting: columns are
    /// scanned left to right and the first row with a nonzero entry wins.
    pub fn rref(&self) -> RrefResult {
        let mut m = self.clone();
        let mut pivot_columns = Vec::new();
        let mut next_row = 0usize;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(p) = (next_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != next_row {
                for j in 0..m.cols {
                    m.entries.swap(next_row * m.cols + j, p * m.cols + j);
                }
            }
            let pivot = m.get(next_row, col).clone();
            if !pivot.is_one() {
                for j in col..m.cols {
                    let v = m.get(next_row, j) / &pivot;
                    m.set(next_row, j, v);
                }
            }
            let pivot_row: Vec<BigRational> = m.row(next_row).to_vec();
            let cols = m.cols;
            let eliminate = |r: usize, row_slice: &mut [BigRational]| {
                if r == next_row || row_slice[col].is_zero() {
                    return;
                }
                let f = std::mem::replace(&mut row_slice[col], BigRational::zero());
                for j in col + 1..cols {
                    if !pivot_row[j].is_zero() {
                        row_slice[j] -= &f * &pivot_row[j];
                    }
                }
            };
            #[cfg(feature = "parallel")]
            m.entries
                .par_chunks_mut(cols)
                .enumerate()
                .for_each(|(r, s)| eliminate(r, s));
            #[cfg(not(feature = "parallel"))]
            m.entries
                .chunks_mut(cols)
                .enumerate()
                .for_each(|(r, s)| eliminate(r, s));
            pivot_columns.push(col);
            next_row += 1;
        }
        RrefResult {
            rank: pivot_columns.len(),
            pivot_columns,
            matrix: m,
        }
    }

    /// Basis of `{x : self · xᵀ = 0}` as matrix rows, one per free column
    /// of the rref, in ascending free-column order. The free variable is
    /// set to 1 and the pivot variables are read off the echelon form,
    /// which makes the basis canonical.
    pub fn right_kernel_basis(&self) -> RationalMatrix {
        let RrefResult {
            matrix: r,
            pivot_columns,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_columns {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = RationalMatrix::zero(free.len(), self.cols);
        for (o, &f) in free.iter().enumerate() {
            out.set(o, f, BigRational::one());
            for (j, &p) in pivot_columns.iter().enumerate() {
                let v = r.get(j, f);
                if !v.is_zero() {
                    out.set(o, p, -v.clone());
                }
            }
        }
        out
    }

    /// Text form: `rows cols` header, then one line per row with entries
    /// as `num/den` (bare integer when the denominator is 1).
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let mut line = String::new();
            for c in 0..self.cols {
                if c > 0 {
                    line.push(' ');
                }
                write!(line, "{}", self.get(r, c)).expect("write to string");
            }
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    /// Inverse of [`Self::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad matrix header {header:?}")));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad row count {:?}", dims[0])))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad column count {:?}", dims[1])))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let mut count = 0usize;
            for tok in line.split_whitespace() {
                let v = BigRational::from_str(tok)
                    .map_err(|e| Error::Parse(format!("row {r} entry {tok:?}: {e}")))?;
                entries.push(v);
                count += 1;
            }
            if count != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {count} entries, expected {cols}"
                )));
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing content after last row".into()));
        }
        Self::new(rows, cols, entries)
    }
}

impl std::fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RationalMatrix({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|v| BigRational::from(v.clone()))
                .collect(),
        }
    }

    /// Exact product; parallel over output rows under the `parallel` feature.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        #[cfg(feature = "parallel")]
        {
            let entries: Vec<BigInt> = (0..self.rows)
                .into_par_iter()
                .flat_map_iter(|i| self.product_row(rhs, i))
                .collect();
            IntMatrix::new(self.rows, rhs.cols, entries)
        }
        #[cfg(not(feature = "parallel"))]
        self.mul_seq(rhs)
    }

    /// Exact product, single-threaded.
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            entries.extend(self.product_row(rhs, i));
        }
        IntMatrix::new(self.rows, rhs.cols, entries)
    }

    fn product_row(&self, rhs: &Self, i: usize) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); rhs.cols];
        for k in 0..self.cols {
            let a = self.get(i, k);
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.row(k).iter().enumerate() {
                if !b.is_zero() {
                    acc[j] += a * b;
                }
            }
        }
        acc
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)
    }
}

/// Exact dot product of two equal-length rational slices.
pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense 0/1 adjacency matrix of a graph.
pub fn adjacency_matrix(g: &SparseGraph) -> Result<IntMatrix> {
    let v = g.num_vertices();
    if v > MAX_DENSE_VERTICES {
        return Err(Error::CapExceeded(format!(
            "{v} vertices exceed dense-matrix cap {MAX_DENSE_VERTICES}"
        )));
    }
    let mut m = IntMatrix::zero(v, v);
    for u in 0..v {
        for &w in g.neighbors(u) {
            m.set(u, w as usize, BigInt::one());
        }
    }
    Ok(m)
}

/// One adjacency mat-vec step: `(Av)_u = Σ_{w ~ u} v_w`, exact.
pub fn sparse_matvec(g: &SparseGraph, v: &[BigInt]) -> Result<Vec<BigInt>> {
    matvec_generic(g, v)
}

/// Rational-vector variant of [`sparse_matvec`].
pub fn sparse_matvec_rational(g: &SparseGraph, v: &[BigRational]) -> Result<Vec<BigRational>> {
    matvec_generic(g, v)
}

fn matvec_generic<T>(g: &SparseGraph, v: &[T]) -> Result<Vec<T>>
where
    T: Zero + Clone,
    for<'a> T: std::ops::AddAssign<&'a T>,
{
    if v.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} against {} vertices",
            v.len(),
            g.num_vertices()
        )));
    }
    let mut out = Vec::with_capacity(v.len());
    for u in 0..g.num_vertices() {
        let mut acc = T::zero();
        for &w in g.neighbors(u) {
            acc += &v[w as usize];
        }
        out.push(acc);
    }
    Ok(out)
}

/// `trace(A^p)` for the adjacency matrix of `g`, exact.
pub fn trace_power(g: &SparseGraph, p: u32) -> Result<BigInt> {
    if p > MAX_TRACE_POWER {
        return Err(Error::OutOfRange(format!(
            "exponent {p} exceeds cap {MAX_TRACE_POWER}"
        )));
    }
    Ok(trace_powers(g, p)?.pop().expect("p+1 entries"))
}

/// `[trace(A^0), …, trace(A^p_max)]`, exact. Parallelizes over start
/// vertices when the `parallel` feature is enabled; identical output to
/// [`trace_powers_seq`] since integer addition commutes.
pub fn trace_powers(g: &SparseGraph, p_max: u32) -> Result<Vec<BigInt>> {
    check_batch_exponent(p_max)?;
    #[cfg(feature = "parallel")]
    {
        let per_start: Vec<Vec<BigInt>> = (0..g.num_vertices())
            .into_par_iter()
            .map(|u| diagonal_walk_counts(g, u, p_max))
            .collect();
        Ok(sum_walk_counts(p_max, per_start))
    }
    #[cfg(not(feature = "parallel"))]
    trace_powers_seq(g, p_max)
}

/// Single-threaded [`trace_powers`].
pub fn trace_powers_seq(g: &SparseGraph, p_max: u32) -> Result<Vec<BigInt>> {
    check_batch_exponent(p_max)?;
    let per_start: Vec<Vec<BigInt>> = (0..g.num_vertices())
        .map(|u| diagonal_walk_counts(g, u, p_max))
        .collect();
    Ok(sum_walk_counts(p_max, per_start))
}

fn check_batch_exponent(p_max: u32) -> Result<()> {
    if p_max > MAX_TRACE_POWER_BATCH {
        return Err(Error::OutOfRange(format!(
            "exponent {p_max} exceeds batch cap {MAX_TRACE_POWER_BATCH}"
        )));
    }
    Ok(())
}

/// Closed-walk counts `(A^p)_{uu}` for `p = 0..=p_max`: iterate mat-vec on
/// the indicator of `u` and read off coordinate `u`.
fn diagonal_walk_counts(g: &SparseGraph, u: usize, p_max: u32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); g.num_vertices()];
    v[u] = BigInt::one();
    let mut diag = Vec::with_capacity(p_max as usize + 1);
    diag.push(v[u].clone());
    for _ in 1..=p_max {
        v = sparse_matvec(g, &v).expect("length preserved");
        diag.push(v[u].clone());
    }
    diag
}

fn sum_walk_counts(p_max: u32, per_start: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut totals = vec![BigInt::zero(); p_max as usize + 1];
    for diag in per_start {
        for (t, d) in totals.iter_mut().zip(diag) {
            *t += d;
        }
    }
    totals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_hypercube, build_johnson, build_middle_cube};
    use proptest::prelude::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rat2(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Cofactor-expansion determinant, the brute-force oracle for rank
    /// claims on tiny matrices.
    fn determinant(m: &RationalMatrix) -> BigRational {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return BigRational::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigRational::zero();
        for c in 0..n {
            if m.get(0, c).is_zero() {
                continue;
            }
            let mut minor = RationalMatrix::zero(n - 1, n - 1);
            for r in 1..n {
                let mut jj = 0;
                for j in 0..n {
                    if j != c {
                        minor.set(r - 1, jj, m.get(r, j).clone());
                        jj += 1;
                    }
                }
            }
            let term = m.get(0, c) * determinant(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// Containments of 1-subsets of {1,2,3} in 2-subsets, colex both ways.
    fn pair_singleton_incidence() -> RationalMatrix {
        RationalMatrix::from_integer_rows(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = RationalMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);

        let z = RationalMatrix::zero(2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_of_containment_matrix_has_full_rank() {
        let m = pair_singleton_incidence();
        let det = determinant(&m);
        assert_eq!(det, rat(-2));
        assert_eq!(m.rref().rank, 3);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = RationalMatrix::identity(4).right_kernel_basis();
        assert_eq!(k.rows(), 0);
        assert_eq!(k.cols(), 4);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let z = RationalMatrix::zero(1, 3);
        let k = z.right_kernel_basis();
        assert_eq!(k.rows(), 3);
        assert_eq!(k, RationalMatrix::identity(3));
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let ones = RationalMatrix::from_integer_rows(&[&[1, 1, 1]]).unwrap();
        let k = ones.right_kernel_basis();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let s: BigRational = k.row(r).iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn matmul_examples() {
        let m = pair_singleton_incidence();
        let id = RationalMatrix::identity(3);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert_eq!(m.mul_seq(&id).unwrap(), m);

        // Each singleton of {1,2,3} lies in exactly two 2-subsets, so the
        // Gram matrix of the transposed containment matrix has diagonal 2.
        let mt = m.transpose();
        let gram = mt.mul(&m).unwrap();
        for i in 0..3 {
            assert_eq!(gram.get(i, i), &rat(2));
        }

        let a = RationalMatrix::from_integer_rows(&[&[3]]).unwrap();
        let b = RationalMatrix::from_integer_rows(&[&[-5]]).unwrap();
        assert_eq!(a.mul(&b).unwrap().get(0, 0), &rat(-15));

        assert!(m.mul(&RationalMatrix::zero(2, 2)).is_err());
    }

    #[test]
    fn int_matrix_mul_matches_rational() {
        let a = IntMatrix::new(
            2,
            3,
            [1, 0, 2, -1, 3, 0].iter().map(|&v| BigInt::from(v)).collect(),
        )
        .unwrap();
        let b = IntMatrix::new(
            3,
            2,
            [4, 1, 0, 0, -2, 5].iter().map(|&v| BigInt::from(v)).collect(),
        )
        .unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c, a.mul_seq(&b).unwrap());
        assert_eq!(
            a.to_rational().mul(&b.to_rational()).unwrap(),
            c.to_rational()
        );
    }

    #[test]
    fn text_format_roundtrip() {
        let m = RationalMatrix::new(
            2,
            2,
            vec![rat(1), rat2(-3, 2), rat(0), rat2(7, 3)],
        )
        .unwrap();
        let text = m.to_text();
        assert_eq!(text, "2 2\n1 -3/2\n0 7/3\n");
        assert_eq!(RationalMatrix::from_text(&text).unwrap(), m);

        let empty = RationalMatrix::zero(0, 5);
        assert_eq!(
            RationalMatrix::from_text(&empty.to_text()).unwrap(),
            empty
        );
    }

    #[test]
    fn text_format_rejects_malformed_input() {
        assert!(RationalMatrix::from_text("").is_err());
        assert!(RationalMatrix::from_text("2\n1\n2\n").is_err());
        assert!(RationalMatrix::from_text("1 2\n1\n").is_err());
        assert!(RationalMatrix::from_text("1 1\nx\n").is_err());
        assert!(RationalMatrix::from_text("1 1\n1\n2\n").is_err());
    }

    #[test]
    fn sparse_matvec_on_regular_graphs() {
        let g = build_middle_cube(2).unwrap();
        let ones = vec![BigInt::one(); g.num_vertices()];
        let av = sparse_matvec(&g, &ones).unwrap();
        assert!(av.iter().all(|x| *x == BigInt::from(3)));

        let mut e0 = vec![BigInt::zero(); g.num_vertices()];
        e0[0] = BigInt::one();
        let ae0 = sparse_matvec(&g, &e0).unwrap();
        for (v, entry) in ae0.iter().enumerate() {
            let expect = i32::from(g.has_edge(0, v));
            assert_eq!(*entry, BigInt::from(expect));
        }
        let a2e0 = sparse_matvec(&g, &ae0).unwrap();
        assert_eq!(a2e0[0], BigInt::from(g.degree(0)));

        assert!(sparse_matvec(&g, &ones[1..]).is_err());
    }

    #[test]
    fn trace_power_values() {
        let m3 = build_middle_cube(1).unwrap();
        assert_eq!(trace_power(&m3, 0).unwrap(), BigInt::from(6));
        assert_eq!(trace_power(&m3, 1).unwrap(), BigInt::zero());
        assert_eq!(trace_power(&m3, 2).unwrap(), BigInt::from(12));
        assert_eq!(trace_power(&m3, 3).unwrap(), BigInt::zero());

        let m5 = build_middle_cube(2).unwrap();
        assert_eq!(trace_power(&m5, 2).unwrap(), BigInt::from(60));

        assert!(trace_power(&m3, 65).is_err());
        assert!(trace_powers(&m3, 129).is_err());
    }

    #[test]
    fn bipartite_graphs_have_no_odd_closed_walks() {
        for g in [
            build_hypercube(3).unwrap(),
            build_middle_cube(1).unwrap(),
            build_middle_cube(2).unwrap(),
        ] {
            let traces = trace_powers(&g, 7).unwrap();
            for p in (1..=7).step_by(2) {
                assert!(traces[p].is_zero(), "odd trace p={p}");
            }
        }
    }

    #[test]
    fn batched_traces_match_singles_and_seq() {
        let g = build_johnson(5, 2).unwrap();
        let batch = trace_powers(&g, 6).unwrap();
        assert_eq!(batch, trace_powers_seq(&g, 6).unwrap());
        for p in 0..=6u32 {
            assert_eq!(batch[p as usize], trace_power(&g, p).unwrap(), "p={p}");
        }
    }

    #[test]
    fn adjacency_matrix_matches_graph() {
        let g = build_johnson(4, 2).unwrap();
        let a = adjacency_matrix(&g).unwrap();
        for u in 0..g.num_vertices() {
            for v in 0..g.num_vertices() {
                let expect = i32::from(g.has_edge(u, v));
                assert_eq!(a.get(u, v), &BigInt::from(expect));
            }
        }
        // trace(A^2) via the dense square agrees with the sparse walk count.
        let a2 = a.mul(&a).unwrap();
        let dense_trace: BigInt = (0..g.num_vertices()).map(|i| a2.get(i, i).clone()).sum();
        assert_eq!(dense_trace, trace_power(&g, 2).unwrap());
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat2(n, d))
    }

    fn small_matrix(max_dim: usize) -> impl Strategy<Value = RationalMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
            proptest::collection::vec(small_rational(), r * c)
                .prop_map(move |e| RationalMatrix::new(r, c, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel_exactness(m in small_matrix(8)) {
            let rank = m.rref().rank;
            let kernel = m.right_kernel_basis();
            prop_assert_eq!(rank + kernel.rows(), m.cols());
            for r in 0..kernel.rows() {
                // m · xᵀ = 0 for every basis row x.
                for i in 0..m.rows() {
                    prop_assert!(dot(m.row(i), kernel.row(r)).is_zero());
                }
            }
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix(6)) {
            let once = m.rref();
            let twice = once.matrix.rref();
            prop_assert_eq!(&once.matrix, &twice.matrix);
            prop_assert_eq!(once.rank, twice.rank);
            prop_assert_eq!(once.pivot_columns, twice.pivot_columns);
        }

        #[test]
        fn matmul_is_associative(
            a in small_matrix(4),
            b_entries in proptest::collection::vec(small_rational(), 16),
            c_entries in proptest::collection::vec(small_rational(), 16),
        ) {
            let b = RationalMatrix::new(a.cols(), 4, b_entries[..a.cols() * 4].to_vec()).unwrap();
            let c = RationalMatrix::new(4, 4, c_entries).unwrap();
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn parallel_and_sequential_products_agree(a in small_matrix(5), seed in any::<u64>()) {
            // Derive a compatible right factor from the seed.
            let mut s = seed;
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                rat(((s >> 33) % 9) as i64 - 4)
            };
            let b = RationalMatrix::new(
                a.cols(), 3,
                (0..a.cols() * 3).map(|_| next()).collect(),
            ).unwrap();
            prop_assert_eq!(a.mul(&b).unwrap(), a.mul_seq(&b).unwrap());
        }
    }
}
