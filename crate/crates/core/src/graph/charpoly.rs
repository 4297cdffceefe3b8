//! Exact characteristic polynomials of adjacency matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Integer coefficients of `det(xI - A)`, highest degree first.
///
/// `coeffs[0]` is always 1 and `coeffs.len()` is the graph order plus one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs[self.degree() - k]
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs
            .iter()
            .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = d - i;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (a, k) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "x^{k}")?,
                (_, 1) => write!(f, "{a}x")?,
                _ => write!(f, "{a}x^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(xI - A(g))` by the division-free Samuelson-Berkowitz recurrence.
pub fn char_poly(g: &Graph) -> CharPoly {
    let n = g.order();
    if n == 0 {
        return CharPoly { coeffs: vec![1] };
    }
    let a = |i: usize, j: usize| g.has_edge(i, j) as i128;

    // polynomial of the trailing 1x1 block: x - a_{n-1,n-1} = x
    let mut p: Vec<i128> = vec![1, -a(n - 1, n - 1)];
    for k in (0..n - 1).rev() {
        let s = n - 1 - k;
        // t = (1, -a_kk, -R C, -R A1 C, ..., -R A1^{s-1} C)
        let mut t: Vec<i128> = Vec::with_capacity(s + 2);
        t.push(1);
        t.push(-a(k, k));
        let mut vec: Vec<i128> = (k + 1..n).map(|i| a(i, k)).collect();
        for step in 0..s {
            let rc: i128 = (k + 1..n).zip(&vec).map(|(j, &v)| a(k, j) * v).sum();
            t.push(-rc);
            if step + 1 < s {
                vec = (k + 1..n)
                    .map(|i| (k + 1..n).zip(&vec).map(|(j, &v)| a(i, j) * v).sum())
                    .collect();
            }
        }
        let mut next = vec![0i128; s + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &pj) in p.iter().enumerate().take(i.min(s) + 1) {
                *slot += t[i - j] * pj;
            }
        }
        p = next;
    }
    CharPoly {
        coeffs: p
            .into_iter()
            .map(|c| i64::try_from(c).expect("characteristic polynomial coefficient overflow"))
            .collect(),
    }
}

pub fn is_cospectral(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && char_poly(g) == char_poly(h)
}

/// Cospectral with cospectral complements.
pub fn is_generalized_cospectral(g: &Graph, h: &Graph) -> bool {
    is_cospectral(g, h) && is_cospectral(&g.complement(), &h.complement())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complete_graphs() {
        assert_eq!(char_poly(&Graph::complete(2)).coeffs(), &[1, 0, -1]);
        assert_eq!(char_poly(&Graph::complete(3)).coeffs(), &[1, 0, -3, -2]);
        assert_eq!(char_poly(&Graph::empty(4)).coeffs(), &[1, 0, 0, 0, 0]);
        assert_eq!(char_poly(&Graph::empty(1)).coeffs(), &[1, 0]);
    }

    #[test]
    fn display() {
        assert_eq!(char_poly(&Graph::complete(3)).to_string(), "x^3 - 3x - 2");
        assert_eq!(char_poly(&Graph::complete(2)).to_string(), "x^2 - 1");
    }

    #[test]
    fn star_and_square_plus_point() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let c4k1 = Graph::cycle(4).disjoint_union(&Graph::empty(1));
        // both are x^5 - 4x^3
        assert_eq!(char_poly(&star).coeffs(), &[1, 0, -4, 0, 0, 0]);
        assert!(is_cospectral(&star, &c4k1));
        assert!(!is_generalized_cospectral(&star, &c4k1));
        assert!(!is_cospectral(&Graph::complete(2), &Graph::empty(2)));
    }
}
