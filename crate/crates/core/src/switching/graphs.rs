use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactmat::RationalOrthogonalMatrix;
use crate::graph::Graph;

/// `Q^T A(g) Q` when it is the adjacency matrix of a graph.
pub fn switched_form(q: &RationalOrthogonalMatrix, g: &Graph) -> Option<Graph> {
    let m = q.dimension();
    assert_eq!(g.order(), m, "graph order must match the matrix dimension");
    let l2 = q.level() * q.level();
    // aq = A M
    let mut aq = [[0i64; 16]; 16];
    for (i, row) in aq.iter_mut().enumerate().take(m) {
        let mut nb = g.neighbors(i);
        while nb != 0 {
            let k = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            for (j, x) in row.iter_mut().enumerate().take(m) {
                *x += q.num(k, j);
            }
        }
    }
    let mut rows = [0u16; 16];
    for a in 0..m {
        for b in a..m {
            let x: i64 = (0..m).map(|k| q.num(k, a) * aq[k][b]).sum();
            if x == l2 && a != b {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            } else if x != 0 {
                return None;
            }
        }
    }
    Graph::from_rows(&rows[..m])
}

/// Every labelled graph `Γ` on `[m]` with `Q^T A(Γ) Q` an adjacency
/// matrix, in graph6 order.
///
/// The diagonal of `Q^T A Q` must vanish, which is a linear condition in the
/// edge indicators; the two halves of the edge set are matched on it through a
/// hash join before the full product is checked.
pub fn labelled_switching_graphs(q: &RationalOrthogonalMatrix) -> Result<Vec<Graph>> {
    let m = q.dimension();
    if m > 8 {
        return Err(Error::Range(format!(
            "switching graphs are enumerated for dimension <= 8, got {m}"
        )));
    }
    let edges: Vec<(usize, usize)> = (0..m).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let diag: Vec<[i64; 8]> = edges
        .iter()
        .map(|&(p, r)| {
            let mut d = [0i64; 8];
            for (a, x) in d.iter_mut().enumerate().take(m) {
                *x = 2 * q.num(p, a) * q.num(r, a);
            }
            d
        })
        .collect();
    let half = edges.len() / 2;
    let sums = |lo: usize, hi: usize| -> Vec<[i64; 8]> {
        let k = hi - lo;
        let mut out = vec![[0i64; 8]; 1 << k];
        for mask in 1usize..1 << k {
            let low = mask.trailing_zeros() as usize;
            let prev = out[mask & (mask - 1)];
            let d = &diag[lo + low];
            let mut s = prev;
            for a in 0..8 {
                s[a] += d[a];
            }
            out[mask] = s;
        }
        out
    };
    let first = sums(0, half);
    let second = sums(half, edges.len());
    let mut table: HashMap<[i64; 8], Vec<usize>> = HashMap::new();
    for (mask, s) in first.iter().enumerate() {
        table.entry(*s).or_default().push(mask);
    }
    let mut found = Vec::new();
    for (mask2, s) in second.iter().enumerate() {
        let mut neg = *s;
        neg.iter_mut().for_each(|x| *x = -*x);
        let Some(list) = table.get(&neg) else {
            continue;
        };
        for &mask1 in list {
            let mut g = Graph::empty(m);
            for (e, &(p, r)) in edges.iter().enumerate() {
                let on = if e < half {
                    (mask1 >> e) & 1 == 1
                } else {
                    (mask2 >> (e - half)) & 1 == 1
                };
                if on {
                    g.add_edge(p, r);
                }
            }
            if switched_form(q, &g).is_some() {
                found.push(g);
            }
        }
    }
    found.sort_by_key(Graph::g6_key);
    Ok(found)
}
