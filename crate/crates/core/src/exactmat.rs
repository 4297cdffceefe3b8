//! Rational orthogonal matrices stored as an integer matrix over a level.
//!
//! A matrix `Q = M / level` is kept as the integer matrix `M` together with
//! the least positive `level` making `level * Q` integral. All predicates are
//! exact integer computations on `M`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Names of the switching methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MethodId {
    Gm4,
    Gm6,
    Gm8,
    Wqh6,
    Wqh8,
    Ah6,
    Fano,
    /// The block-circulant family member `Q(a, b, c)`.
    Qabc {
        a: u8,
        b: u8,
        c: i8,
    },
}

impl MethodId {
    /// The seven named methods, in table order.
    pub const NAMED: [MethodId; 7] = [
        MethodId::Gm4,
        MethodId::Ah6,
        MethodId::Gm6,
        MethodId::Wqh6,
        MethodId::Fano,
        MethodId::Gm8,
        MethodId::Wqh8,
    ];

    pub fn qabc(a: u8, b: u8, c: i8) -> Result<Self> {
        if a < 1 || b < 2 || (c != 1 && c != -1) {
            return Err(Error::arg(format!(
                "Q({a},{b},{c}) needs a >= 1, b >= 2 and c = +-1"
            )));
        }
        Ok(MethodId::Qabc { a, b, c })
    }

    /// `(a, b, c)` of the family member realising this method, if any.
    pub fn family_params(&self) -> Option<(u8, u8, i8)> {
        match *self {
            MethodId::Gm4 => Some((2, 2, 1)),
            MethodId::Gm6 => Some((3, 2, -1)),
            MethodId::Gm8 => Some((4, 2, -1)),
            MethodId::Wqh6 => Some((3, 2, 1)),
            MethodId::Wqh8 => Some((4, 2, 1)),
            MethodId::Ah6 => Some((2, 3, 1)),
            MethodId::Fano => None,
            MethodId::Qabc { a, b, c } => Some((a, b, c)),
        }
    }

    /// Size of the switching set.
    pub fn dimension(&self) -> usize {
        match self.family_params() {
            Some((a, b, _)) => a as usize * b as usize,
            None => 7,
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodId::Gm4 => f.write_str("GM4"),
            MethodId::Gm6 => f.write_str("GM6"),
            MethodId::Gm8 => f.write_str("GM8"),
            MethodId::Wqh6 => f.write_str("WQH6"),
            MethodId::Wqh8 => f.write_str("WQH8"),
            MethodId::Ah6 => f.write_str("AH6"),
            MethodId::Fano => f.write_str("FANO"),
            MethodId::Qabc { a, b, c } => write!(f, "Q({a},{b},{c})"),
        }
    }
}

impl From<MethodId> for String {
    fn from(id: MethodId) -> String {
        id.to_string()
    }
}

impl TryFrom<String> for MethodId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for MethodId {
    type Err = Error;

    /// Accepts the table names case-insensitively and `Q(a,b,c)` /
    /// `QABC(a,b,c)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let named = match t.as_str() {
            "GM4" | "WQH4" => Some(MethodId::Gm4),
            "GM6" => Some(MethodId::Gm6),
            "GM8" => Some(MethodId::Gm8),
            "WQH6" => Some(MethodId::Wqh6),
            "WQH8" => Some(MethodId::Wqh8),
            "AH6" => Some(MethodId::Ah6),
            "FANO" => Some(MethodId::Fano),
            _ => None,
        };
        if let Some(m) = named {
            return Ok(m);
        }
        let inner = t
            .strip_prefix("QABC(")
            .or_else(|| t.strip_prefix("Q("))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::arg(format!("unknown method {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || Error::arg(format!("cannot parse method parameters in {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let a: u8 = parts[0].parse().map_err(|_| bad())?;
        let b: u8 = parts[1].parse().map_err(|_| bad())?;
        let c: i8 = parts[2]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| bad())?;
        MethodId::qabc(a, b, c)
    }
}

/// `Q = entries / level` with `Q^T Q = I`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RationalOrthogonalMatrix {
    m: usize,
    entries: Vec<i64>,
    level: i64,
}

impl RationalOrthogonalMatrix {
    /// Builds `numerators / denominator`, reducing to the minimal level and
    /// checking orthogonality exactly.
    pub fn new(numerators: Vec<Vec<i64>>, denominator: i64) -> Result<Self> {
        let m = numerators.len();
        if m == 0 || numerators.iter().any(|r| r.len() != m) {
            return Err(Error::arg("matrix must be square and non-empty"));
        }
        if denominator <= 0 {
            return Err(Error::arg("denominator must be positive"));
        }
        let level = level_of(&numerators, denominator);
        let scale = denominator / level;
        let entries = numerators
            .into_iter()
            .flatten()
            .map(|x| x / scale)
            .collect();
        let q = RationalOrthogonalMatrix { m, entries, level };
        if !q.is_orthogonal() {
            return Err(Error::arg("matrix is not orthogonal"));
        }
        Ok(q)
    }

    pub fn dimension(&self) -> usize {
        self.m
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    /// Entry of `level * Q`.
    #[inline]
    pub fn num(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.m + j]
    }

    pub fn numerators(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.m).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let m = self.m;
        let mut entries = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                entries[j * m + i] = self.num(i, j);
            }
        }
        RationalOrthogonalMatrix {
            m,
            entries,
            level: self.level,
        }
    }

    /// `M^T M == level^2 I`.
    pub fn is_orthogonal(&self) -> bool {
        let m = self.m;
        let l2 = self.level * self.level;
        (0..m).all(|i| {
            (0..m).all(|j| {
                let dot: i64 = (0..m).map(|k| self.num(k, i) * self.num(k, j)).sum();
                dot == if i == j { l2 } else { 0 }
            })
        })
    }

    /// Constant row sums.
    pub fn is_regular(&self) -> bool {
        let sums: Vec<i64> = self
            .entries
            .chunks(self.m)
            .map(|r| r.iter().sum())
            .collect();
        sums.windows(2).all(|w| w[0] == w[1])
    }

    /// Some column of `Q` is integral, i.e. a signed unit vector.
    pub fn has_integral_column(&self) -> bool {
        (0..self.m).any(|j| (0..self.m).all(|i| self.num(i, j) % self.level == 0))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        (0..self.m).map(|j| self.num(i, j)).sum()
    }

    pub fn column_sum(&self, j: usize) -> i64 {
        (0..self.m).map(|i| self.num(i, j)).sum()
    }

    /// `level * Q^T v` for a 0/1 vector given as a bit mask.
    #[inline]
    pub fn scaled_transpose_times(&self, v: u32) -> [i64; 16] {
        let mut out = [0i64; 16];
        let mut bits = v;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for (j, o) in out.iter_mut().enumerate().take(self.m) {
                *o += self.num(i, j);
            }
        }
        out
    }

    /// `level^2 * Q^T A Q` for a symmetric integer matrix `A`.
    pub fn scaled_conjugate(&self, a: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let m = self.m;
        let mut aq = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                aq[i][j] = (0..m).map(|k| a[i][k] * self.num(k, j)).sum();
            }
        }
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).map(|k| self.num(k, i) * aq[k][j]).sum())
                    .collect()
            })
            .collect()
    }

    /// Rows permuted by `rows` and columns by `cols`: entry `(i, j)` of the
    /// result is entry `(rows[i], cols[j])` of `self`.
    pub fn permuted(&self, rows: &Perm, cols: &Perm) -> Self {
        let m = self.m;
        let mut entries = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                entries[i * m + j] = self.num(rows[i], cols[j]);
            }
        }
        RationalOrthogonalMatrix {
            m,
            entries,
            level: self.level,
        }
    }
}

impl fmt::Display for RationalOrthogonalMatrix {
    /// Exact fraction grid, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .entries
            .iter()
            .map(|&x| {
                let g = x.gcd(&self.level);
                let (p, q) = (x / g, self.level / g);
                if q == 1 {
                    p.to_string()
                } else {
                    format!("{p}/{q}")
                }
            })
            .collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.m) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Least positive `l` such that `l * (numerators / denominator)` is integral.
pub fn level_of(numerators: &[Vec<i64>], denominator: i64) -> i64 {
    let g = numerators
        .iter()
        .flatten()
        .fold(denominator, |acc, &x| acc.gcd(&x));
    denominator / g
}

/// `Q(a, b, c)`: `b x b` blocks of size `a`, `J_a` on the diagonal and
/// `c Y_a = c (a I - J)` on the cyclic subdiagonal, all over `a`.
pub fn build_qabc(a: usize, b: usize, c: i64) -> Result<RationalOrthogonalMatrix> {
    if a < 1 || b < 2 || (c != 1 && c != -1) {
        return Err(Error::arg(format!(
            "Q({a},{b},{c}) needs a >= 1, b >= 2 and c = +-1"
        )));
    }
    if a * b > 16 {
        return Err(Error::arg(format!("Q({a},{b},{c}) exceeds dimension 16")));
    }
    let m = a * b;
    let mut num = vec![vec![0i64; m]; m];
    for blk in 0..b {
        let below = (blk + 1) % b;
        for i in 0..a {
            for j in 0..a {
                num[blk * a + i][blk * a + j] = 1;
                let y = if i == j { a as i64 - 1 } else { -1 };
                num[below * a + i][blk * a + j] = c * y;
            }
        }
    }
    RationalOrthogonalMatrix::new(num, a as i64)
}

const FANO: [[i64; 7]; 7] = [
    [-1, 1, 1, 0, 1, 0, 0],
    [0, -1, 1, 1, 0, 1, 0],
    [0, 0, -1, 1, 1, 0, 1],
    [1, 0, 0, -1, 1, 1, 0],
    [0, 1, 0, 0, -1, 1, 1],
    [1, 0, 1, 0, 0, -1, 1],
    [1, 1, 0, 1, 0, 0, -1],
];

const AH6_DISPLAYED: [[i64; 6]; 6] = [
    [1, 1, 0, 0, 1, -1],
    [1, 1, 0, 0, -1, 1],
    [1, -1, 1, 1, 0, 0],
    [-1, 1, 1, 1, 0, 0],
    [0, 0, 1, -1, 1, 1],
    [0, 0, -1, 1, 1, 1],
];

/// The 7 x 7 level-2 Fano switching matrix.
pub fn fano_matrix() -> RationalOrthogonalMatrix {
    RationalOrthogonalMatrix::new(FANO.iter().map(|r| r.to_vec()).collect(), 2)
        .expect("Fano matrix is orthogonal")
}

/// The level-2 six-dimensional matrix in its customary display form.
/// [`build_named`] uses the equivalent `Q(2, 3, 1)` instead.
pub fn ah6_displayed_matrix() -> RationalOrthogonalMatrix {
    RationalOrthogonalMatrix::new(AH6_DISPLAYED.iter().map(|r| r.to_vec()).collect(), 2)
        .expect("AH6 matrix is orthogonal")
}

pub fn build_named(id: MethodId) -> RationalOrthogonalMatrix {
    match id.family_params() {
        Some((a, b, c)) => build_qabc(a as usize, b as usize, c as i64)
            .expect("named family members have valid parameters"),
        None => fano_matrix(),
    }
}

/// Permutations `(rows, cols)` with `u[i][j] == v[rows[i]][cols[j]]`, i.e.
/// `U = P^T V R`, or `None` if the matrices are not equivalent.
pub fn permutation_equivalent(
    u: &RationalOrthogonalMatrix,
    v: &RationalOrthogonalMatrix,
) -> Result<Option<(Perm, Perm)>> {
    if u.m != v.m {
        return Err(Error::arg(format!(
            "dimension mismatch: {} vs {}",
            u.m, v.m
        )));
    }
    if u.m > 8 {
        return Err(Error::arg("equivalence search supports dimension <= 8"));
    }
    if u.level != v.level {
        return Ok(None);
    }
    let m = u.m;
    let sorted_row = |q: &RationalOrthogonalMatrix, i: usize| {
        let mut r: Vec<i64> = (0..m).map(|j| q.num(i, j)).collect();
        r.sort_unstable();
        r
    };
    let u_rows: Vec<Vec<i64>> = (0..m).map(|i| sorted_row(u, i)).collect();
    let v_rows: Vec<Vec<i64>> = (0..m).map(|i| sorted_row(v, i)).collect();

    fn match_columns(
        u: &RationalOrthogonalMatrix,
        v: &RationalOrthogonalMatrix,
        rows: &[usize],
    ) -> Option<Vec<usize>> {
        let m = u.m;
        let mut used = vec![false; m];
        let mut cols = vec![0; m];
        for (j, slot) in cols.iter_mut().enumerate() {
            let k =
                (0..m).find(|&k| !used[k] && (0..m).all(|i| u.num(i, j) == v.num(rows[i], k)))?;
            used[k] = true;
            *slot = k;
        }
        Some(cols)
    }

    fn extend(
        i: usize,
        rows: &mut Vec<usize>,
        used: &mut [bool],
        u: &RationalOrthogonalMatrix,
        v: &RationalOrthogonalMatrix,
        u_rows: &[Vec<i64>],
        v_rows: &[Vec<i64>],
    ) -> Option<Vec<usize>> {
        let m = u.m;
        if i == m {
            return match_columns(u, v, rows);
        }
        for k in 0..m {
            if used[k] || u_rows[i] != v_rows[k] {
                continue;
            }
            rows.push(k);
            // the partial column multiset must still be matchable
            let ok = {
                let mut uc: Vec<Vec<i64>> = (0..m)
                    .map(|j| (0..=i).map(|r| u.num(r, j)).collect())
                    .collect();
                let mut vc: Vec<Vec<i64>> = (0..m)
                    .map(|j| rows.iter().map(|&r| v.num(r, j)).collect())
                    .collect();
                uc.sort();
                vc.sort();
                uc == vc
            };
            if ok {
                used[k] = true;
                if let Some(cols) = extend(i + 1, rows, used, u, v, u_rows, v_rows) {
                    return Some(cols);
                }
                used[k] = false;
            }
            rows.pop();
        }
        None
    }

    let mut rows = Vec::with_capacity(m);
    let mut used = vec![false; m];
    Ok(extend(0, &mut rows, &mut used, u, v, &u_rows, &v_rows)
        .map(|cols| (Perm::from_images(rows), Perm::from_images(cols))))
}
