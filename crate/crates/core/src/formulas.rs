//! Closed-form counts and asymptotic main terms, as exact rationals.

use num_integer::binomial;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::MethodId;
use crate::switching::SwitchingMethod;

/// Number of graphs on `n` vertices up to isomorphism, `n = 0..=10`.
pub const GRAPH_COUNTS: [u64; 11] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668, 12005168];

pub fn graph_count(n: usize) -> Result<u64> {
    GRAPH_COUNTS
        .get(n)
        .copied()
        .ok_or_else(|| Error::Range(format!("graph counts are tabulated for n <= 10, got {n}")))
}

/// `g_n` by orderly generation, for checking the table.
pub fn count_graphs_live(n: usize) -> Result<u64> {
    if n > 10 {
        return Err(Error::ResourceGuard(format!(
            "live graph counts stop at order 10, got {n}"
        )));
    }
    Ok(crate::graph::count_graphs(n))
}

/// `|V_Q|` for `Q(a, b, c)` in closed form.
pub fn count_vq_closed_form(a: u32, b: u32, c: i32) -> Result<u128> {
    if a < 1 || b < 2 || (c != 1 && c != -1) {
        return Err(Error::arg(format!(
            "Q({a},{b},{c}) needs a >= 1, b >= 2 and c = +-1"
        )));
    }
    let two_b = 1u128 << b;
    let odd_b = b % 2 == 1;
    Ok(match (a.is_multiple_of(2), odd_b, c) {
        (true, true, -1) => two_b + binomial(a as u128, (a / 2) as u128).pow(b),
        (false, true, -1) => two_b,
        _ => {
            two_b
                + (1..a)
                    .map(|i| binomial(a as u128, i as u128).pow(b))
                    .sum::<u128>()
        }
    })
}

/// The leading constant, base and switching-set size of a method's count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoticCoefficient {
    pub method: MethodId,
    #[serde(serialize_with = "ser_ratio")]
    pub coefficient: Ratio<i128>,
    pub base: u64,
    pub m: usize,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Ratio<i128>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// `p/q`, or `p` for integers.
pub fn ratio_string(r: &Ratio<i128>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `Σ 1/|Aut_Q(Γ)|` over the method's switching-graph classes, computed from
/// the automorphism data.
pub fn table1_coefficient(method: &SwitchingMethod) -> AsymptoticCoefficient {
    AsymptoticCoefficient {
        method: method.id,
        coefficient: method.autq_coefficient(),
        base: method.vq.len() as u64,
        m: method.dimension(),
    }
}

/// The published leading constants.
pub fn published_coefficient(id: MethodId) -> Option<Ratio<i128>> {
    let (p, q) = match id {
        MethodId::Gm4 => (1, 3),
        MethodId::Wqh6 => (43, 18),
        MethodId::Gm6 => (43, 180),
        MethodId::Ah6 => (2, 3),
        MethodId::Fano => (16, 7),
        MethodId::Wqh8 => (20213, 576),
        MethodId::Gm8 => (319, 280),
        MethodId::Qabc { .. } => return None,
    };
    Some(Ratio::new(p, q))
}

/// `coefficient * base^(n-m) * g_(n-m)`.
pub fn asymptotic_main_term(coef: &AsymptoticCoefficient, n: usize) -> Result<Ratio<i128>> {
    if n < coef.m {
        return Err(Error::Range(format!(
            "order {n} is below the switching-set size {}",
            coef.m
        )));
    }
    let k = n - coef.m;
    let g = graph_count(k)?;
    let power = (coef.base as i128)
        .checked_pow(k as u32)
        .ok_or_else(|| Error::Range("main term overflows".into()))?;
    Ok(coef.coefficient * Ratio::from_integer(power * g as i128))
}

/// `n^3 g_(n-1) / 24`, the alternative form of the four-vertex count.
pub fn gm4_equivalent_form(n: usize) -> Result<Ratio<i128>> {
    if !(5..=11).contains(&n) {
        return Err(Error::Range(format!("defined for 5 <= n <= 11, got {n}")));
    }
    let n3 = (n as i128).pow(3);
    Ok(Ratio::new(n3 * graph_count(n - 1)? as i128, 24))
}

/// Nearest integer, halves away from zero.
pub fn round_nearest(r: &Ratio<i128>) -> i128 {
    r.round().to_integer()
}

/// Decimal string with `places` digits, halves to even.
pub fn round_decimal(r: &Ratio<i128>, places: u32) -> String {
    let scale = 10i128.pow(places);
    let scaled = *r * Ratio::from_integer(scale);
    let floor = scaled.floor().to_integer();
    let frac = scaled - Ratio::from_integer(floor);
    let half = Ratio::new(1, 2);
    let units = if frac > half || (frac == half && floor % 2 != 0) {
        floor + 1
    } else {
        floor
    };
    let neg = units < 0;
    let a = units.unsigned_abs();
    let s = scale as u128;
    let body = if places == 0 {
        a.to_string()
    } else {
        format!("{}.{:0width$}", a / s, a % s, width = places as usize)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
