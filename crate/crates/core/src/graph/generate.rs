//! Generation of one representative per isomorphism class by canonical
//! augmentation: a vertex is appended to every parent in all ways up to the
//! parent's automorphisms, and a child is accepted only when the appended
//! vertex lies in the orbit of the canonically chosen deletion vertex.

use std::collections::HashSet;

use rayon::prelude::*;

use super::canon::canonical_search;
use super::Graph;

/// Orderly generator output, in graph6-lexicographic order of the
/// canonical forms.
pub struct GraphIter {
    n: usize,
    keys: std::vec::IntoIter<u128>,
}

impl Iterator for GraphIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        self.keys.next().map(|k| Graph::from_g6_key(self.n, k))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.keys.size_hint()
    }
}

impl ExactSizeIterator for GraphIter {}

/// All graphs of order `k` up to isomorphism, as canonical forms.
///
/// Panics if `k` is 0 or above 10.
pub fn generate_all_graphs(k: usize) -> GraphIter {
    assert!((1..=10).contains(&k), "generation supports orders 1..=10");
    let mut level = vec![Graph::empty(1).g6_key()];
    for n in 2..=k {
        let parents = level;
        let mut next: Vec<u128> = parents
            .par_iter()
            .flat_map_iter(|&p| children(&Graph::from_g6_key(n - 1, p)))
            .map(|g| g.g6_key())
            .collect();
        next.sort_unstable();
        level = next;
    }
    GraphIter {
        n: k,
        keys: level.into_iter(),
    }
}

/// Number of isomorphism classes of order `k`, without keeping the last
/// level in memory.
pub fn count_graphs(k: usize) -> u64 {
    if k <= 1 {
        return 1;
    }
    generate_all_graphs(k - 1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| children(p).len() as u64)
        .sum()
}

/// Accepted one-vertex extensions of the canonical graph `parent`.
pub(crate) fn children(parent: &Graph) -> Vec<Graph> {
    let n = parent.order() + 1;
    let pres = canonical_search(parent, None);
    let gens = pres.generator_perms(parent.order());
    let mut out = Vec::new();
    let mut orbit: HashSet<u32> = HashSet::new();
    let mut stack: Vec<u32> = Vec::new();
    'subsets: for s in 0u32..(1 << (n - 1)) {
        if !gens.is_empty() {
            // keep s only if it is the least mask in its orbit
            orbit.clear();
            stack.clear();
            orbit.insert(s);
            stack.push(s);
            while let Some(x) = stack.pop() {
                for g in &gens {
                    let y = g.apply_mask(x);
                    if y < s {
                        continue 'subsets;
                    }
                    if orbit.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        let mut rows = *parent.raw_rows();
        rows[n - 1] = s as u16;
        let mut m = s;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            rows[u] |= 1 << (n - 1);
        }
        let child = Graph::from_rows_unchecked(n, rows);
        let new_deg = child.degree(n - 1);
        if (0..n - 1).any(|v| child.degree(v) > new_deg) {
            continue;
        }
        let r = canonical_search(&child, None);
        // deletion vertex: the maximum-degree vertex placed last canonically
        let last = (0..n)
            .rev()
            .map(|i| r.labeling[i] as usize)
            .find(|&v| child.degree(v) == new_deg)
            .expect("some vertex attains the maximum degree");
        let accept = last == n - 1 || {
            let ids = r.orbit_ids(n);
            ids[last] == ids[n - 1]
        };
        if accept {
            out.push(r.canonical);
        }
    }
    out
}

impl Graph {
    /// Upper-triangle bits in graph6 order, most significant first, so that
    /// numeric order matches graph6 string order for a fixed vertex count.
    pub fn g6_key(&self) -> u128 {
        let mut key = 0u128;
        for j in 1..self.order() {
            for i in 0..j {
                key = (key << 1) | self.has_edge(i, j) as u128;
            }
        }
        key
    }

    pub fn from_g6_key(n: usize, key: u128) -> Graph {
        let nbits = n * n.saturating_sub(1) / 2;
        let mut g = Graph::empty(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if (key >> (nbits - 1 - k)) & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }
}
