//! Exact binomial coefficients and a canonical colexicographic ordering of
//! the `i`-subsets of `{1, …, n}`.
//!
//! Every matrix in the crate indexes its rows and columns by this ordering,
//! so rank/unrank here fixes the coordinates of every eigenvector and
//! incidence matrix downstream. Colex compares largest elements first; for
//! subsets of fixed size it coincides with ascending numeric order of the
//! bit masks, which gives both a closed-form rank and an O(1) successor.

use crate::{Error, Result};
use num::BigInt;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::fmt;

/// Largest supported ground-set size: a subset must fit one machine word.
pub const MAX_GROUND_SET: u32 = 63;

/// Exact binomial coefficient `C(n, k)`, with `C(n, k) = 0` for `k < 0`
/// or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::from(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::from(1);
    for t in 1..=k {
        // Multiply before dividing: each prefix is itself a binomial, so
        // the division is exact.
        acc *= BigInt::from(n - k + t);
        acc /= BigInt::from(t);
    }
    acc
}

/// `C(n, k)` in machine words. Only valid for `n <= 63`, where every
/// binomial coefficient fits in a `u64`. Backed by a lazily built Pascal
/// table because rank/unrank call this in tight loops.
pub(crate) fn binomial_u64(n: u32, k: u32) -> u64 {
    assert!(n <= MAX_GROUND_SET, "binomial_u64 requires n <= 63");
    if k > n {
        return 0;
    }
    static PASCAL: std::sync::OnceLock<Box<[[u64; 64]; 64]>> = std::sync::OnceLock::new();
    let table = PASCAL.get_or_init(|| {
        let mut t = Box::new([[0u64; 64]; 64]);
        t[0][0] = 1;
        for n in 1..64 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        t
    });
    table[n as usize][k as usize]
}

/// A subset of `S = {1, …, n}` stored as a bit mask: bit `j-1` set means
/// element `j` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    bits: u64,
    n: u8,
}

impl Subset {
    /// Build from a raw mask; rejects bits at positions `>= n`.
    pub fn new(n: u32, bits: u64) -> Result<Self> {
        check_ground_set(n)?;
        if n < 64 && bits >> n != 0 {
            return Err(Error::OutOfRange(format!(
                "mask {bits:#x} has elements outside {{1..{n}}}"
            )));
        }
        Ok(Subset { bits, n: n as u8 })
    }

    /// The empty subset of `{1, …, n}`.
    pub fn empty(n: u32) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Build from 1-based elements.
    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        check_ground_set(n)?;
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::OutOfRange(format!(
                    "element {e} outside ground set {{1..{n}}}"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset { bits, n: n as u8 })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ground_set_size(&self) -> u32 {
        self.n as u32
    }

    pub fn cardinality(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(&self, e: u32) -> bool {
        e >= 1 && e <= self.n as u32 && self.bits >> (e - 1) & 1 == 1
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cardinality() as usize);
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() + 1);
            b &= b - 1;
        }
        out
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection_size(&self, other: &Subset) -> u32 {
        (self.bits & other.bits).count_ones()
    }

    /// Union with the single element `e` (1-based, must lie in the ground set).
    pub fn with_element(&self, e: u32) -> Result<Self> {
        if e == 0 || e > self.n as u32 {
            return Err(Error::OutOfRange(format!(
                "element {e} outside ground set {{1..{}}}",
                self.n
            )));
        }
        Ok(Subset {
            bits: self.bits | 1 << (e - 1),
            n: self.n,
        })
    }

    /// Removal of the single element `e`.
    pub fn without_element(&self, e: u32) -> Result<Self> {
        if e == 0 || e > self.n as u32 {
            return Err(Error::OutOfRange(format!(
                "element {e} outside ground set {{1..{}}}",
                self.n
            )));
        }
        Ok(Subset {
            bits: self.bits & !(1 << (e - 1)),
            n: self.n,
        })
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> Subset {
        let mask = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        Subset {
            bits: !self.bits & mask,
            n: self.n,
        }
    }

    /// All `r`-subsets of this subset, in colex order.
    pub fn subsets_of_size(&self, r: u32) -> Vec<Subset> {
        let elems = self.elements();
        if r > elems.len() as u32 {
            return Vec::new();
        }
        if r == 0 {
            return vec![Subset {
                bits: 0,
                n: self.n,
            }];
        }
        // Enumerate r-subsets of the index set, then map through the sorted
        // element list; colex on indices maps to colex on elements.
        let local = SubsetOrdering::new(elems.len() as u32, r)
            .expect("cardinality bounded by ground set");
        local
            .enumerate()
            .into_iter()
            .map(|idx_set| {
                let mut bits = 0u64;
                for i in idx_set.elements() {
                    bits |= 1 << (elems[(i - 1) as usize] - 1);
                }
                Subset { bits, n: self.n }
            })
            .collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, e) in self.elements().iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serializes as the sorted element array, e.g. `[1,3,4]`.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let elems = self.elements();
        let mut seq = serializer.serialize_seq(Some(elems.len()))?;
        for e in elems {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// The colex ordering of all `i`-subsets of `{1, …, n}`: a bijection
/// between `{0, …, C(n,i)-1}` and the subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetOrdering {
    n: u32,
    i: u32,
}

impl SubsetOrdering {
    pub fn new(n: u32, i: u32) -> Result<Self> {
        check_ground_set(n)?;
        if i > n {
            return Err(Error::OutOfRange(format!(
                "cardinality {i} exceeds ground set size {n}"
            )));
        }
        Ok(SubsetOrdering { n, i })
    }

    pub fn ground_set_size(&self) -> u32 {
        self.n
    }

    pub fn cardinality(&self) -> u32 {
        self.i
    }

    /// Number of subsets in the ordering, `C(n, i)`.
    pub fn count(&self) -> u64 {
        binomial_u64(self.n, self.i)
    }

    /// The `idx`-th `i`-subset in colex order.
    ///
    /// Greedy combinadic decomposition: the largest element `a` is the
    /// largest value with `C(a-1, i) <= idx`, and the remainder recurses.
    pub fn unrank(&self, idx: u64) -> Result<Subset> {
        if idx >= self.count() {
            return Err(Error::OutOfRange(format!(
                "index {idx} out of range for C({}, {}) = {}",
                self.n,
                self.i,
                self.count()
            )));
        }
        let mut bits = 0u64;
        let mut rem = idx;
        let mut upper = self.n;
        for t in (1..=self.i).rev() {
            let mut a = upper;
            while binomial_u64(a - 1, t) > rem {
                a -= 1;
            }
            bits |= 1 << (a - 1);
            rem -= binomial_u64(a - 1, t);
            upper = a - 1;
        }
        Ok(Subset {
            bits,
            n: self.n as u8,
        })
    }

    /// Colex rank of an `i`-subset: with sorted elements `a_1 < … < a_i`,
    /// the rank is `Σ_t C(a_t - 1, t)`.
    pub fn rank(&self, subset: &Subset) -> Result<u64> {
        if subset.ground_set_size() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "subset over {{1..{}}} ranked in ordering over {{1..{}}}",
                subset.ground_set_size(),
                self.n
            )));
        }
        if subset.cardinality() != self.i {
            return Err(Error::DimensionMismatch(format!(
                "subset {subset} has cardinality {}, ordering expects {}",
                subset.cardinality(),
                self.i
            )));
        }
        let mut rank = 0u64;
        for (t, a) in subset.elements().iter().enumerate() {
            rank += binomial_u64(a - 1, t as u32 + 1);
        }
        Ok(rank)
    }

    /// All `i`-subsets in colex order.
    ///
    /// Uses the bit-twiddling successor (colex order on fixed-cardinality
    /// subsets is ascending mask order), so this is independent of
    /// `unrank`; tests cross-check the two.
    pub fn enumerate(&self) -> Vec<Subset> {
        let count = self.count() as usize;
        let mut out = Vec::with_capacity(count);
        if self.i == 0 {
            out.push(Subset {
                bits: 0,
                n: self.n as u8,
            });
            return out;
        }
        let mut v: u64 = (1 << self.i) - 1;
        for _ in 0..count {
            out.push(Subset {
                bits: v,
                n: self.n as u8,
            });
            // Gosper's hack: next larger mask with the same popcount.
            let t = v | (v - 1);
            v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
        }
        out
    }
}

fn check_ground_set(n: u32) -> Result<()> {
    if n == 0 || n > MAX_GROUND_SET {
        return Err(Error::OutOfRange(format!(
            "ground set size {n} not in 1..={MAX_GROUND_SET}"
        )));
    }
    Ok(())
}
