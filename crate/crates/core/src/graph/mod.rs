//! Small dense graphs with bit-packed adjacency rows.
//!
//! Every graph here has at most [`MAX_ORDER`] vertices so that one `u16`
//! holds a full neighbourhood. Values are `Copy` and cheap to hash, which is
//! what the census relies on when it streams millions of candidates.

mod canon;
mod charpoly;
mod generate;
mod graph6;

pub use canon::{
    automorphism_group, automorphism_group_colored, canonical_form, canonical_graph,
    canonical_labeling, is_asymmetric, isomorphic, AutomorphismGroup, CanonicalLabel, Coloring,
    Labeling,
};
pub use charpoly::{char_poly, is_cospectral, is_generalized_cospectral, CharPoly};
pub use generate::{count_graphs, generate_all_graphs, GraphIter};
pub use graph6::{graph6_decode, graph6_encode};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::Perm;

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 16;

/// Bit-packed undirected loopless graph on at most 16 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    rows: [u16; MAX_ORDER],
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds [`MAX_ORDER`].
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph {
            n: n as u8,
            rows: [0; MAX_ORDER],
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from neighbourhood masks, validating symmetry,
    /// looplessness and the absence of stray bits.
    pub fn from_rows(rows: &[u16]) -> Option<Self> {
        let n = rows.len();
        if n > MAX_ORDER {
            return None;
        }
        let mut g = Graph::empty(n);
        g.rows[..n].copy_from_slice(rows);
        g.is_valid().then_some(g)
    }

    /// Builds a graph from a 0/1 matrix; `None` unless it is a valid
    /// adjacency matrix.
    pub fn from_matrix(m: &[Vec<i64>]) -> Option<Self> {
        let n = m.len();
        if n > MAX_ORDER || m.iter().any(|r| r.len() != n) {
            return None;
        }
        let mut rows = vec![0u16; n];
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => rows[i] |= 1 << j,
                    _ => return None,
                }
            }
        }
        Graph::from_rows(&rows)
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: [u16; MAX_ORDER]) -> Self {
        Graph { n: n as u8, rows }
    }

    fn is_valid(&self) -> bool {
        let n = self.order();
        let live = self.vertex_mask();
        (0..MAX_ORDER).all(|i| {
            let r = self.rows[i];
            if i >= n {
                return r == 0;
            }
            r & !live == 0
                && r & (1 << i) == 0
                && (0..n).all(|j| ((r >> j) & 1) == ((self.rows[j] >> i) & 1))
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u16 {
        if self.n as usize == MAX_ORDER {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u16 {
        self.rows[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u16] {
        &self.rows[..self.order()]
    }

    #[inline]
    pub(crate) fn raw_rows(&self) -> &[u16; MAX_ORDER] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.rows[u] >> v) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.order() && v < self.order(), "vertex out of range");
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        if present {
            self.add_edge(u, v)
        } else {
            self.remove_edge(u, v)
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.order();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut g = *self;
        let live = self.vertex_mask();
        for i in 0..self.order() {
            g.rows[i] = !self.rows[i] & live & !(1 << i);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &Perm) -> Self {
        assert_eq!(perm.len(), self.order());
        let mut g = Graph::empty(self.order());
        for v in 0..self.order() {
            let mut r = self.rows[v];
            let mut out = 0u16;
            while r != 0 {
                let u = r.trailing_zeros() as usize;
                r &= r - 1;
                out |= 1 << perm[u];
            }
            g.rows[perm[v]] = out;
        }
        g
    }

    /// The subgraph induced on `verts`, with `verts[i]` becoming vertex `i`.
    pub fn induced(&self, verts: &[usize]) -> Self {
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &w) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, w) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Disjoint union with `other` placed after the vertices of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let n = self.order();
        let mut g = Graph::empty(n + other.order());
        g.rows[..n].copy_from_slice(self.rows());
        for i in 0..other.order() {
            g.rows[n + i] = other.rows[i] << n;
        }
        g
    }

    /// Adjacency matrix as signed integers.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.has_edge(i, j) as i64).collect())
            .collect()
    }

    /// Upper triangle packed column by column, the graph6 bit order.
    pub fn pack(&self) -> u128 {
        let mut key = 0u128;
        let mut bit = 0;
        for j in 1..self.order() {
            let col = self.rows[j] & ((1u16 << j) - 1);
            key |= (col as u128) << bit;
            bit += j;
        }
        key
    }

    pub fn unpack(n: usize, key: u128) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for j in 1..n {
            let col = ((key >> bit) as u16) & ((1u16 << j) - 1);
            let mut c = col;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                c &= c - 1;
                g.add_edge(i, j);
            }
            bit += j;
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", graph6_encode(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&graph6_encode(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        graph6_decode(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6_encode(self))
    }
}
