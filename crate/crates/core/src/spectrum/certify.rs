//! Independent certification of claimed spectra: dense squared-adjacency
//! block identities, trace-moment matching, and an exact characteristic
//! polynomial recomputed from power sums via Newton's identities.
//!
//! Moment certification is complete, not heuristic: matching trace(A^p)
//! for p = 0..=d against d distinct claimed eigenvalues pins the
//! multiplicities uniquely (the Vandermonde system is invertible), so a
//! pass proves the table is the exact spectrum.

use crate::combinatorics::SubsetOrdering;
use crate::graphs::{build_johnson, build_middle_cube, SparseGraph};
use crate::linalg::{adjacency_matrix, trace_powers};
use crate::spectrum::SpectrumTable;
use crate::{Error, Result};
use num::{BigInt, Integer, One, ToPrimitive, Zero};

/// Cap for the dense squared-adjacency check (k = 5 is a 924x924 square).
pub const MAX_MSQ_K: u32 = 5;
/// Cap for the characteristic polynomial oracle; power sums are needed up
/// to the vertex count.
pub const MAX_CHARPOLY_VERTICES: usize = 80;

/// Verify that the middle-cube's squared adjacency matrix is
/// block-diagonal with (k+1) added on the diagonal: each layer's block is
/// the Johnson graph adjacency of that layer's subsets, and the two blocks
/// agree entrywise under the complement bijection between k-subsets and
/// (k+1)-subsets. Everything is checked entry by entry in exact integers.
pub fn verify_m_squared(k: u32) -> Result<bool> {
    if !(1..=MAX_MSQ_K).contains(&k) {
        return Err(Error::CapExceeded(format!(
            "squared-adjacency check supports k in 1..={MAX_MSQ_K}, got {k}"
        )));
    }
    let n = 2 * k + 1;
    let g = build_middle_cube(k)?;
    let a = adjacency_matrix(&g)?;
    let a2 = a.mul(&a)?;

    let j_lower = build_johnson(n, k)?;
    let j_upper = build_johnson(n, k + 1)?;
    let half = j_lower.num_vertices();
    debug_assert_eq!(half, j_upper.num_vertices());
    debug_assert_eq!(2 * half, g.num_vertices());

    let shift = BigInt::from(k + 1);
    for u in 0..2 * half {
        for v in 0..2 * half {
            let mut expected = match (u < half, v < half) {
                (true, true) => BigInt::from(u8::from(j_lower.has_edge(u, v))),
                (false, false) => {
                    BigInt::from(u8::from(j_upper.has_edge(u - half, v - half)))
                }
                _ => BigInt::zero(),
            };
            if u == v {
                expected += &shift;
            }
            if a2.get(u, v) != &expected {
                return Ok(false);
            }
        }
    }

    // The two diagonal blocks are one graph in two coordinate systems:
    // complementation maps k-subsets to (k+1)-subsets and must carry the
    // lower block exactly onto the upper one.
    let lower_ord = SubsetOrdering::new(n, k)?;
    let upper_ord = SubsetOrdering::new(n, k + 1)?;
    let sigma: Vec<usize> = lower_ord
        .enumerate()
        .iter()
        .map(|s| upper_ord.rank(&s.complement()).expect("complement is a (k+1)-subset") as usize)
        .collect();
    for u in 0..half {
        for v in 0..half {
            if j_lower.has_edge(u, v) != j_upper.has_edge(sigma[u], sigma[v]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Complete moment certification: true iff the table's multiplicities sum
/// to the graph order and Σ mult·λ^p equals trace(A^p) exactly for every
/// p = 0..=d, d the number of distinct claimed eigenvalues.
pub fn certify_by_moments(g: &SparseGraph, t: &SpectrumTable) -> Result<bool> {
    if t.order() != g.num_vertices() as u64 || !t.is_complete() {
        return Ok(false);
    }
    let d = t.distinct_count() as u32;
    let traces = trace_powers(g, d)?;
    for p in 0..=d {
        let claimed: BigInt = t
            .iter()
            .map(|(value, mult)| mult * num::pow::pow(BigInt::from(value), p as usize))
            .sum();
        if claimed != traces[p as usize] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact coefficients of det(λI − A) in descending powers of λ, leading
/// coefficient 1, recovered from the power sums trace(A^p) by Newton's
/// identities. The divisions in the recurrence are exact for integer
/// matrices; that invariant is asserted.
pub fn characteristic_polynomial_oracle(g: &SparseGraph) -> Result<Vec<BigInt>> {
    let v = g.num_vertices();
    if v > MAX_CHARPOLY_VERTICES {
        return Err(Error::CapExceeded(format!(
            "{v} vertices exceed characteristic-polynomial cap {MAX_CHARPOLY_VERTICES}"
        )));
    }
    let power_sums = trace_powers(g, v as u32)?;
    // e[m] = elementary symmetric polynomial of the eigenvalues.
    let mut e = vec![BigInt::zero(); v + 1];
    e[0] = BigInt::one();
    for m in 1..=v {
        let mut acc = BigInt::zero();
        for i in 1..=m {
            let term = &e[m - i] * &power_sums[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, rem) = acc.div_rem(&BigInt::from(m));
        assert!(rem.is_zero(), "Newton recurrence division must be exact");
        e[m] = q;
    }
    Ok((0..=v)
        .map(|m| if m % 2 == 0 { e[m].clone() } else { -&e[m] })
        .collect())
}

/// Expand Π_λ (x − λ)^mult(λ) from a spectrum table into descending
/// integer coefficients; the reference polynomial the oracle is compared
/// against.
pub fn charpoly_from_spectrum(t: &SpectrumTable) -> Vec<BigInt> {
    // Ascending coefficients of the running product.
    let mut poly = vec![BigInt::one()];
    for (value, mult) in t.iter() {
        let m = mult.to_usize().expect("multiplicity fits usize at oracle scale");
        let lam = BigInt::from(value);
        for _ in 0..m {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &lam * c;
            }
            poly = next;
        }
    }
    poly.reverse();
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SparseGraph;
    use crate::spectrum::{johnson_spectrum, middle_cube_spectrum};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn squared_adjacency_identity_holds() {
        for k in 1..=3u32 {
            assert_eq!(verify_m_squared(k), Ok(true), "k={k}");
        }
        assert!(verify_m_squared(0).is_err());
        assert!(verify_m_squared(6).is_err());
    }

    #[test]
    fn moments_certify_the_closed_forms() {
        for k in 1..=3u32 {
            let g = build_middle_cube(k).unwrap();
            let t = middle_cube_spectrum(k).unwrap();
            assert_eq!(certify_by_moments(&g, &t), Ok(true), "k={k}");
        }
        for (n, m) in [(5u32, 2u32), (6, 3), (7, 3), (5, 4)] {
            let g = build_johnson(n, m).unwrap();
            let t = johnson_spectrum(n, m).unwrap();
            assert_eq!(certify_by_moments(&g, &t), Ok(true), "J({n},{m})");
        }
    }

    #[test]
    fn tampered_tables_fail_certification() {
        let g = build_middle_cube(2).unwrap();

        // Swap the multiplicities of eigenvalues 1 and 2 (and their
        // mirrors) keeping the total intact.
        let mut swapped = SpectrumTable::new(20);
        for (v, m) in middle_cube_spectrum(2).unwrap().iter() {
            let target = match v {
                1 => 2,
                2 => 1,
                -1 => -2,
                -2 => -1,
                other => other,
            };
            swapped.add(target, m.clone());
        }
        assert_eq!(certify_by_moments(&g, &swapped), Ok(false));

        // Wrong order.
        let t = middle_cube_spectrum(2).unwrap();
        let m3 = build_middle_cube(1).unwrap();
        assert_eq!(certify_by_moments(&m3, &t), Ok(false));

        // Incomplete table.
        let mut partial = SpectrumTable::new(20);
        partial.add(3, big(1));
        partial.add(-3, big(1));
        assert_eq!(certify_by_moments(&g, &partial), Ok(false));
    }

    #[test]
    fn charpoly_of_single_edge() {
        let k2 = SparseGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(
            characteristic_polynomial_oracle(&k2).unwrap(),
            vec![big(1), big(0), big(-1)]
        );
    }

    #[test]
    fn charpoly_of_smallest_middle_cube() {
        // The 6-cycle: λ⁶ − 6λ⁴ + 9λ² − 4 = (λ−1)²(λ+1)²(λ−2)(λ+2).
        let m3 = build_middle_cube(1).unwrap();
        let coeffs = characteristic_polynomial_oracle(&m3).unwrap();
        assert_eq!(
            coeffs,
            vec![big(1), big(0), big(-6), big(0), big(9), big(0), big(-4)]
        );
        assert_eq!(
            coeffs,
            charpoly_from_spectrum(&middle_cube_spectrum(1).unwrap())
        );
    }

    #[test]
    fn charpoly_matches_spectrum_expansion() {
        for k in 1..=2u32 {
            let g = build_middle_cube(k).unwrap();
            assert_eq!(
                characteristic_polynomial_oracle(&g).unwrap(),
                charpoly_from_spectrum(&middle_cube_spectrum(k).unwrap()),
                "k={k}"
            );
        }
        // Same cross-check on a non-bipartite family member.
        let g = build_johnson(5, 2).unwrap();
        assert_eq!(
            characteristic_polynomial_oracle(&g).unwrap(),
            charpoly_from_spectrum(&johnson_spectrum(5, 2).unwrap())
        );
    }

    #[test]
    fn charpoly_respects_vertex_cap() {
        let g = build_middle_cube(4).unwrap();
        assert!(characteristic_polynomial_oracle(&g).is_err());
    }

    #[test]
    fn spectrum_expansion_has_expected_shape() {
        let t = middle_cube_spectrum(2).unwrap();
        let poly = charpoly_from_spectrum(&t);
        assert_eq!(poly.len(), 21);
        assert!(poly[0].is_one());
        // Even degree, so the constant term is the plain eigenvalue product.
        let product: BigInt = t
            .iter()
            .map(|(v, m)| num::pow::pow(big(v), m.to_usize().unwrap()))
            .product();
        assert_eq!(*poly.last().unwrap(), product);
    }
}
