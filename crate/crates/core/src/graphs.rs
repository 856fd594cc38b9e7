//! Generators for the three graph families (hypercube, middle-cube, Johnson)
//! and structural validation.
//!
//! Vertex numbering is fixed once and for all: within a layer of fixed
//! cardinality, subsets appear in colex order; the middle-cube puts the
//! k-subset layer first. All matrices and eigenvector coordinate systems
//! downstream inherit this numbering.

use crate::combinatorics::{Subset, SubsetOrdering};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Dimension guard for `build_hypercube` (2^24 vertices).
pub const MAX_HYPERCUBE_DIM: u32 = 24;
/// Guard for `build_middle_cube`; k = 12 means 2·C(25,12) = 10,400,600 vertices.
pub const MAX_MIDDLE_CUBE_K: u32 = 12;
/// Ground-set guard for `build_johnson`.
pub const MAX_JOHNSON_GROUND: u32 = 20;

/// Undirected simple graph in compressed sparse row form: `neighbors` holds
/// the sorted adjacency list of vertex `v` in `offsets[v]..offsets[v+1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseGraph {
    num_vertices: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    labels: Option<Vec<Subset>>,
    bipartition: Option<Vec<u8>>,
}

impl SparseGraph {
    /// Build from an explicit edge list. Rejects self-loops, duplicate
    /// edges, and out-of-range endpoints.
    pub fn from_edges(num_vertices: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if num_vertices > u32::MAX as usize {
            return Err(Error::OutOfRange(format!(
                "{num_vertices} vertices exceed u32 index space"
            )));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); num_vertices];
        for &(u, v) in edges {
            if u as usize >= num_vertices || v as usize >= num_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) outside vertex range 0..{num_vertices}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Self::from_adjacency(adj, None, None))
    }

    /// Assemble CSR from per-vertex sorted lists. Internal: callers
    /// guarantee symmetry and sortedness.
    fn from_adjacency(
        adj: Vec<Vec<u32>>,
        labels: Option<Vec<Subset>>,
        bipartition: Option<Vec<u8>>,
    ) -> Self {
        let num_vertices = adj.len();
        let mut offsets = Vec::with_capacity(num_vertices + 1);
        offsets.push(0usize);
        let total: usize = adj.iter().map(|l| l.len()).sum();
        let mut neighbors = Vec::with_capacity(total);
        for list in adj {
            neighbors.extend_from_slice(&list);
            offsets.push(neighbors.len());
        }
        SparseGraph {
            num_vertices,
            offsets,
            neighbors,
            labels,
            bipartition,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor indices of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Per-vertex subset labels, when the generator attached them.
    pub fn labels(&self) -> Option<&[Subset]> {
        self.labels.as_deref()
    }

    /// Declared two-coloring (0/1 per vertex), when the generator attached one.
    pub fn bipartition(&self) -> Option<&[u8]> {
        self.bipartition.as_deref()
    }

    /// Structural audit: degree histogram, connectivity, bipartiteness via
    /// 2-coloring BFS, CSR symmetry, and consistency of any declared
    /// bipartition. Report-only; never fails.
    pub fn validate(&self) -> ValidationReport {
        let mut degree_histogram = BTreeMap::new();
        for v in 0..self.num_vertices {
            *degree_histogram.entry(self.degree(v) as u32).or_insert(0usize) += 1;
        }

        let symmetric = (0..self.num_vertices).all(|v| {
            let list = self.neighbors(v);
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&u| {
                    u as usize != v
                        && (u as usize) < self.num_vertices
                        && self.has_edge(u as usize, v)
                })
        });

        // Single BFS sweep assigns components and attempts a 2-coloring.
        let mut color: Vec<i8> = vec![-1; self.num_vertices];
        let mut component_count = 0usize;
        let mut bipartite = true;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.num_vertices {
            if color[start] >= 0 {
                continue;
            }
            component_count += 1;
            color[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v) {
                    let u = u as usize;
                    if color[u] < 0 {
                        color[u] = 1 - color[v];
                        queue.push_back(u);
                    } else if color[u] == color[v] {
                        bipartite = false;
                    }
                }
            }
        }

        let bipartition_consistent = self.bipartition.as_ref().map(|parts| {
            (0..self.num_vertices).all(|v| {
                self.neighbors(v)
                    .iter()
                    .all(|&u| parts[u as usize] != parts[v])
            })
        });

        ValidationReport {
            num_vertices: self.num_vertices,
            num_edges: self.num_edges(),
            degree_histogram,
            component_count,
            bipartite,
            symmetric,
            bipartition_consistent,
        }
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.num_vertices).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u as u32, v))
        })
    }

    /// Edge-list text: `p <V> <E>` header, then one `e u v` line per edge
    /// with `u < v`, sorted, 0-indexed.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {} {}\n", self.num_vertices, self.num_edges());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }

    /// Pretty JSON with vertex count, `u < v` edge pairs, and labels /
    /// bipartition when present (labels render as sorted element arrays).
    pub fn to_json_string(&self) -> String {
        #[derive(Serialize)]
        struct GraphJson<'a> {
            num_vertices: usize,
            num_edges: usize,
            edges: Vec<[u32; 2]>,
            #[serde(skip_serializing_if = "Option::is_none")]
            labels: Option<&'a [Subset]>,
            #[serde(skip_serializing_if = "Option::is_none")]
            bipartition: Option<&'a [u8]>,
        }
        let edges: Vec<[u32; 2]> = self.edges().map(|(u, v)| [u, v]).collect();
        let doc = GraphJson {
            num_vertices: self.num_vertices,
            num_edges: self.num_edges(),
            edges,
            labels: self.labels(),
            bipartition: self.bipartition(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("graph JSON never fails");
        s.push('\n');
        s
    }
}

impl std::fmt::Debug for SparseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SparseGraph")
            .field("num_vertices", &self.num_vertices)
            .field("num_edges", &self.num_edges())
            .field("labeled", &self.labels.is_some())
            .finish()
    }
}

/// Output of [`SparseGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub num_vertices: usize,
    pub num_edges: usize,
    /// degree -> number of vertices with that degree
    pub degree_histogram: BTreeMap<u32, usize>,
    pub component_count: usize,
    pub bipartite: bool,
    pub symmetric: bool,
    /// `Some(true)` iff a declared bipartition exists and every edge crosses it.
    pub bipartition_consistent: Option<bool>,
}

impl ValidationReport {
    /// `Some(d)` iff every vertex has degree exactly `d`.
    pub fn regular_degree(&self) -> Option<u32> {
        if self.degree_histogram.len() == 1 {
            self.degree_histogram.keys().next().copied()
        } else {
            None
        }
    }

    pub fn connected(&self) -> bool {
        self.component_count <= 1
    }
}

/// The n-dimensional hypercube Q_n: vertices are the integers `0..2^n`
/// read as bit strings, adjacent when they differ in exactly one bit.
pub fn build_hypercube(n: u32) -> Result<SparseGraph> {
    if !(1..=MAX_HYPERCUBE_DIM).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "hypercube dimension {n} not in 1..={MAX_HYPERCUBE_DIM}"
        )));
    }
    let num_vertices = 1usize << n;
    let mut offsets = Vec::with_capacity(num_vertices + 1);
    let mut neighbors = Vec::with_capacity(num_vertices * n as usize);
    let mut bipartition = Vec::with_capacity(num_vertices);
    offsets.push(0usize);
    for v in 0..num_vertices as u32 {
        let mut list: Vec<u32> = (0..n).map(|b| v ^ (1 << b)).collect();
        list.sort_unstable();
        neighbors.extend_from_slice(&list);
        offsets.push(neighbors.len());
        bipartition.push((v.count_ones() % 2) as u8);
    }
    Ok(SparseGraph {
        num_vertices,
        offsets,
        neighbors,
        labels: None,
        bipartition: Some(bipartition),
    })
}

/// The middle-cube M_{2k+1}: the subgraph of Q_{2k+1} induced by vertices
/// of weight k or k+1. Vertices `0..C(n,k)` are the k-subsets in colex
/// order (lower layer), the rest are the (k+1)-subsets in colex order;
/// A ~ B iff A ⊂ B with |B| = |A| + 1.
pub fn build_middle_cube(k: u32) -> Result<SparseGraph> {
    if !(1..=MAX_MIDDLE_CUBE_K).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "middle-cube parameter {k} not in 1..={MAX_MIDDLE_CUBE_K}"
        )));
    }
    let n = 2 * k + 1;
    let lower = SubsetOrdering::new(n, k)?;
    let upper = SubsetOrdering::new(n, k + 1)?;
    let half = lower.count() as usize;
    let num_vertices = 2 * half;
    let degree = (k + 1) as usize;

    let mut offsets = Vec::with_capacity(num_vertices + 1);
    let mut neighbors = Vec::with_capacity(num_vertices * degree);
    let mut labels = Vec::with_capacity(num_vertices);
    offsets.push(0usize);

    let lower_sets = lower.enumerate();
    let upper_sets = upper.enumerate();
    let mut scratch = Vec::with_capacity(degree);
    for a in &lower_sets {
        scratch.clear();
        for i in a.complement().elements() {
            let b = a.with_element(i).expect("element from complement");
            scratch.push(half as u32 + upper.rank(&b).expect("valid (k+1)-subset") as u32);
        }
        scratch.sort_unstable();
        neighbors.extend_from_slice(&scratch);
        offsets.push(neighbors.len());
        labels.push(*a);
    }
    for b in &upper_sets {
        scratch.clear();
        for i in b.elements() {
            let a = b.without_element(i).expect("element of b");
            scratch.push(lower.rank(&a).expect("valid k-subset") as u32);
        }
        scratch.sort_unstable();
        neighbors.extend_from_slice(&scratch);
        offsets.push(neighbors.len());
        labels.push(*b);
    }

    let mut bipartition = vec![0u8; num_vertices];
    bipartition[half..].fill(1);
    Ok(SparseGraph {
        num_vertices,
        offsets,
        neighbors,
        labels: Some(labels),
        bipartition: Some(bipartition),
    })
}

/// The Johnson graph J(n,m): vertices are the m-subsets of `{1..n}` in
/// colex order, adjacent when the intersection has m−1 elements.
pub fn build_johnson(n: u32, m: u32) -> Result<SparseGraph> {
    if !(1..=MAX_JOHNSON_GROUND).contains(&n) || m < 1 || m > n {
        return Err(Error::OutOfRange(format!(
            "Johnson parameters (n={n}, m={m}) need 1 <= m <= n <= {MAX_JOHNSON_GROUND}"
        )));
    }
    let ord = SubsetOrdering::new(n, m)?;
    let num_vertices = ord.count() as usize;
    let degree = (m * (n - m)) as usize;

    let mut offsets = Vec::with_capacity(num_vertices + 1);
    let mut neighbors = Vec::with_capacity(num_vertices * degree);
    let mut labels = Vec::with_capacity(num_vertices);
    offsets.push(0usize);

    let mut scratch = Vec::with_capacity(degree);
    for a in ord.enumerate() {
        scratch.clear();
        for x in a.elements() {
            let base = a.without_element(x).expect("element of a");
            for y in a.complement().elements() {
                let b = base.with_element(y).expect("element from complement");
                scratch.push(ord.rank(&b).expect("valid m-subset") as u32);
            }
        }
        scratch.sort_unstable();
        neighbors.extend_from_slice(&scratch);
        offsets.push(neighbors.len());
        labels.push(a);
    }

    Ok(SparseGraph {
        num_vertices,
        offsets,
        neighbors,
        labels: Some(labels),
        bipartition: None,
    })
}

/// Induced subgraph of a (2k+1)-dimensional hypercube on the weight-k and
/// weight-(k+1) vertices, renumbered to `build_middle_cube`'s vertex order.
/// Cross-checks the two constructions against each other.
pub fn extract_middle_subgraph(q: &SparseGraph, k: u32) -> Result<SparseGraph> {
    if !(1..=MAX_MIDDLE_CUBE_K).contains(&k) {
        return Err(Error::OutOfRange(format!(
            "middle-cube parameter {k} not in 1..={MAX_MIDDLE_CUBE_K}"
        )));
    }
    let n = 2 * k + 1;
    if q.num_vertices() != 1usize << n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}-dimensional hypercube with {} vertices, got {}",
            1usize << n,
            q.num_vertices()
        )));
    }
    let lower = SubsetOrdering::new(n, k)?;
    let upper = SubsetOrdering::new(n, k + 1)?;
    let half = lower.count() as usize;

    // Map hypercube vertex (bit mask) -> middle-cube index, or usize::MAX.
    let miss = usize::MAX;
    let mut index_of = vec![miss; q.num_vertices()];
    for mask in 0..q.num_vertices() as u64 {
        let w = mask.count_ones();
        if w == k || w == k + 1 {
            let s = Subset::new(n, mask)?;
            let ord = if w == k { &lower } else { &upper };
            let offset = if w == k { 0 } else { half };
            index_of[mask as usize] = offset + ord.rank(&s)? as usize;
        }
    }

    let num_vertices = 2 * half;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); num_vertices];
    let mut labels = vec![Subset::empty(n)?; num_vertices];
    let mut bipartition = vec![0u8; num_vertices];
    for mask in 0..q.num_vertices() {
        let new_u = index_of[mask];
        if new_u == miss {
            continue;
        }
        labels[new_u] = Subset::new(n, mask as u64)?;
        bipartition[new_u] = if (mask as u64).count_ones() == k { 0 } else { 1 };
        for &w in q.neighbors(mask) {
            let new_v = index_of[w as usize];
            if new_v != miss {
                adj[new_u].push(new_v as u32);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(SparseGraph::from_adjacency(
        adj,
        Some(labels),
        Some(bipartition),
    ))
}
