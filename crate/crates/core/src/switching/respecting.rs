use std::collections::HashMap;

use serde::Serialize;

use crate::exactmat::RationalOrthogonalMatrix;

/// The respecting vectors of a matrix together with their images.
///
/// Vectors are bit masks, bit `i` holding coordinate `i`. They are kept in
/// lexicographic order of the coordinate tuples, coordinate 0 first.
#[derive(Clone, Debug, Serialize)]
pub struct RespectingVectorSet {
    m: usize,
    vectors: Vec<u32>,
    images: Vec<u32>,
    #[serde(skip)]
    index: HashMap<u32, usize>,
}

impl RespectingVectorSet {
    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[u32] {
        &self.vectors
    }

    /// `images()[i]` is `Q^T vectors()[i]`.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn contains(&self, v: u32) -> bool {
        self.index.contains_key(&v)
    }

    pub fn position(&self, v: u32) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn image(&self, v: u32) -> Option<u32> {
        self.position(v).map(|i| self.images[i])
    }

    /// Vectors as `0`/`1` strings, coordinate 0 first.
    pub fn to_strings(&self) -> Vec<String> {
        self.vectors
            .iter()
            .map(|&v| bit_string(v, self.m))
            .collect()
    }

    /// Restricts to a subset of the vectors; used to build controls.
    pub fn restricted(&self, keep: impl Fn(u32) -> bool) -> Self {
        let pairs: Vec<(u32, u32)> = self
            .vectors
            .iter()
            .zip(&self.images)
            .filter(|(v, _)| keep(**v))
            .map(|(&v, &w)| (v, w))
            .collect();
        Self::from_pairs(self.m, pairs)
    }

    fn from_pairs(m: usize, mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_by_key(|&(v, _)| lex_key(v, m));
        let index = pairs
            .iter()
            .enumerate()
            .map(|(i, &(v, _))| (v, i))
            .collect();
        let (vectors, images) = pairs.into_iter().unzip();
        RespectingVectorSet {
            m,
            vectors,
            images,
            index,
        }
    }
}

/// Sort key putting coordinate 0 in the most significant position.
#[inline]
pub fn lex_key(v: u32, m: usize) -> u32 {
    if m == 0 {
        0
    } else {
        v.reverse_bits() >> (32 - m)
    }
}

pub fn bit_string(v: u32, m: usize) -> String {
    (0..m)
        .map(|i| if (v >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// `Q^T v` as a mask when it is a 0/1 vector.
#[inline]
pub fn respecting_image(q: &RationalOrthogonalMatrix, v: u32) -> Option<u32> {
    let w = q.scaled_transpose_times(v);
    let l = q.level();
    let mut out = 0u32;
    for (j, &x) in w.iter().enumerate().take(q.dimension()) {
        if x == l {
            out |= 1 << j;
        } else if x != 0 {
            return None;
        }
    }
    Some(out)
}

/// All `v` in `{0,1}^m` with `Q^T v` in `{0,1}^m`, by exhaustive scan.
///
/// Panics if the dimension exceeds 16.
pub fn respecting_vectors(q: &RationalOrthogonalMatrix) -> RespectingVectorSet {
    let m = q.dimension();
    assert!(m <= 16, "respecting vectors need dimension <= 16");
    let pairs = (0u32..1 << m)
        .filter_map(|v| respecting_image(q, v).map(|w| (v, w)))
        .collect();
    RespectingVectorSet::from_pairs(m, pairs)
}
