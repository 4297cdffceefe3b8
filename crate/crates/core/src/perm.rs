//! Permutations of small index sets.

use std::collections::HashSet;
use std::ops::Index;

use serde::{Deserialize, Serialize};

/// A permutation of `0..len`, stored as its image list: `i` maps to `self[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(
                x < images.len() && !seen[x],
                "not a permutation: {images:?}"
            );
            seen[x] = true;
        }
        Perm(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `self` after `other`: `i -> self[other[i]]`.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Moves bit `i` of `mask` to bit `self[i]`.
    #[inline]
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << self.0[i];
        }
        out
    }

    /// Every permutation of `0..n` in lexicographic order of image lists.
    pub fn all(n: usize) -> AllPerms {
        AllPerms {
            current: Some((0..n).collect()),
        }
    }
}

impl Index<usize> for Perm {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// Iterator behind [`Perm::all`].
pub struct AllPerms {
    current: Option<Vec<usize>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let n = next.len();
        // standard next-permutation step
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && next[i - 1] >= next[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while next[j] <= next[i - 1] {
                    j -= 1;
                }
                next.swap(i - 1, j);
                next[i..].reverse();
                self.current = Some(next);
            }
        }
        Some(Perm(cur))
    }
}

/// Closes a generating set into the full list of group elements.
///
/// Intended for small groups; the caller bounds the size.
pub fn group_elements(n: usize, generators: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in generators {
            let h = g.compose(&out[i]);
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Orbits of `0..n` under the group generated by `generators`, each listed
/// in increasing order, orbits ordered by their least element.
pub fn orbits(n: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for g in generators {
        for i in 0..n {
            let a = find(&mut parent, i);
            let b = find(&mut parent, g[i]);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}
