//! Switching instances inside larger graphs: applying them, finding them,
//! the classical degree conditions, and the appendix construction.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};
use crate::exactmat::{build_named, build_qabc, MethodId, RationalOrthogonalMatrix};
use crate::graph::{
    automorphism_group, canonical_form, canonical_graph, canonical_labeling, Coloring, Graph,
};
use crate::perm::Perm;

use super::method::{autq_with, SwitchingMethod};
use super::respecting::respecting_image;

/// An ordered switching tuple in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingInstance {
    pub method: MethodId,
    pub tuple: Vec<usize>,
    /// The labelled graph induced on the tuple.
    pub gamma: Graph,
    /// Index of the isomorphism class of `gamma` in the method's graph set.
    #[serde(default, skip_serializing)]
    pub class: usize,
    /// Number of tuples in this instance's orbit under `Aut_Q(Γ)`.
    #[serde(default, skip_serializing)]
    pub orbit_count: u64,
}

pub(crate) fn method_matrix(id: MethodId) -> Result<RationalOrthogonalMatrix> {
    match id {
        MethodId::Qabc { a, b, c } => build_qabc(a as usize, b as usize, c as i64),
        named => Ok(build_named(named)),
    }
}

fn check_tuple(n: usize, m: usize, tuple: &[usize]) -> Result<u16, ValidationError> {
    if tuple.len() != m {
        return Err(ValidationError::TupleLength {
            expected: m,
            got: tuple.len(),
        });
    }
    let mut seen = 0u16;
    for &v in tuple {
        if v >= n || (seen >> v) & 1 == 1 {
            return Err(ValidationError::TupleVertex { vertex: v });
        }
        seen |= 1 << v;
    }
    Ok(seen)
}

/// Conjugates `A(g)` by `Q ⊕ I` with `Q` acting on `tuple`.
pub fn switch_with_matrix(
    g: &Graph,
    q: &RationalOrthogonalMatrix,
    tuple: &[usize],
) -> Result<Graph, ValidationError> {
    let n = g.order();
    let m = q.dimension();
    let inside = check_tuple(n, m, tuple)?;
    let gamma = g.induced(tuple);
    let switched =
        super::graphs::switched_form(q, &gamma).ok_or(ValidationError::NotSwitchingGraph)?;
    let mut out = *g;
    for v in 0..n {
        if (inside >> v) & 1 == 1 {
            continue;
        }
        let mask = tuple_mask(g, v, tuple);
        let image =
            respecting_image(q, mask).ok_or(ValidationError::NonRespecting { vertex: v })?;
        for (i, &x) in tuple.iter().enumerate() {
            out.set_edge(v, x, (image >> i) & 1 == 1);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            out.set_edge(tuple[i], tuple[j], switched.has_edge(i, j));
        }
    }
    Ok(out)
}

fn tuple_mask(g: &Graph, v: usize, tuple: &[usize]) -> u32 {
    tuple
        .iter()
        .enumerate()
        .filter(|&(_, &x)| g.has_edge(v, x))
        .fold(0u32, |acc, (i, _)| acc | 1 << i)
}

/// Applies a switching instance, after checking it against `g`.
pub fn apply_switching(g: &Graph, inst: &SwitchingInstance) -> Result<Graph> {
    let q = method_matrix(inst.method)?;
    check_tuple(g.order(), q.dimension(), &inst.tuple)?;
    let induced = g.induced(&inst.tuple);
    if inst.gamma.order() != induced.order() {
        return Err(ValidationError::TupleLength {
            expected: inst.gamma.order(),
            got: induced.order(),
        }
        .into());
    }
    for j in 0..induced.order() {
        for i in 0..j {
            if induced.has_edge(i, j) != inst.gamma.has_edge(i, j) {
                return Err(ValidationError::TupleMismatch { i, j }.into());
            }
        }
    }
    Ok(switch_with_matrix(g, &q, &inst.tuple)?)
}

/// All switching tuples of `method` in `g`, one per `Aut_Q(Γ)`-orbit. Each
/// reported tuple is the least of its orbit.
pub fn find_switching_instances(g: &Graph, method: &SwitchingMethod) -> Vec<SwitchingInstance> {
    let n = g.order();
    let m = method.dimension();
    if n < m {
        return Vec::new();
    }
    let set = &method.graphs;
    let weights = method
        .vq
        .vectors()
        .iter()
        .fold(0u32, |acc, v| acc | 1 << v.count_ones());
    // per labelled graph: its automorphisms and its Aut_Q elements
    let mut groups: HashMap<usize, (Vec<Perm>, Vec<Perm>)> = HashMap::new();
    let mut out = Vec::new();
    for subset in 0u16..1 << n {
        if subset.count_ones() as usize != m {
            continue;
        }
        let outside_ok = (0..n)
            .filter(|v| (subset >> v) & 1 == 0)
            .all(|v| (weights >> (g.neighbors(v) & subset).count_ones()) & 1 == 1);
        if !outside_ok {
            continue;
        }
        let verts: Vec<usize> = (0..n).filter(|v| (subset >> v) & 1 == 1).collect();
        let lab = canonical_labeling(&g.induced(&verts), None);
        let Ok(iso) = set
            .unlabelled
            .binary_search_by_key(&lab.canonical.g6_key(), Graph::g6_key)
        else {
            continue;
        };
        let to_sub = lab.perm.inverse();
        for &li in &set.iso_members[iso] {
            let gamma = set.labelled[li];
            let (auts, autq) = groups.entry(li).or_insert_with(|| {
                (
                    automorphism_group(&gamma).elements(m),
                    autq_with(&method.vq, &gamma).elements(m),
                )
            });
            let phi = to_sub.compose(&set.labelings[li]);
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            for a in auts.iter() {
                let t: Vec<usize> = (0..m).map(|i| verts[phi[a[i]]]).collect();
                if seen.contains(&t) {
                    continue;
                }
                let orbit: Vec<Vec<usize>> = autq
                    .iter()
                    .map(|s| s.images().iter().map(|&i| t[i]).collect())
                    .collect();
                let least = orbit
                    .iter()
                    .min()
                    .expect("group contains the identity")
                    .clone();
                seen.extend(orbit);
                let ok = (0..n)
                    .filter(|v| (subset >> v) & 1 == 0)
                    .all(|v| method.vq.contains(tuple_mask(g, v, &least)));
                if ok {
                    out.push(SwitchingInstance {
                        method: method.id,
                        tuple: least,
                        gamma,
                        class: set.class_of[li],
                        orbit_count: autq.len() as u64,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    out
}

/// The Godsil-McKay conditions on `X`: `|X| = 2k`, `G[X]` regular, and every
/// other vertex has `0`, `k` or `2k` neighbours in `X`.
pub fn validate_gm_conditions(g: &Graph, x: &[usize]) -> bool {
    let n = g.order();
    if x.is_empty() || x.len() % 2 == 1 || check_tuple(n, x.len(), x).is_err() {
        return false;
    }
    let k = x.len() / 2;
    let mut inside = 0u16;
    for &v in x {
        inside |= 1 << v;
    }
    let d = (g.neighbors(x[0]) & inside).count_ones();
    if x.iter()
        .any(|&v| (g.neighbors(v) & inside).count_ones() != d)
    {
        return false;
    }
    (0..n).filter(|v| (inside >> v) & 1 == 0).all(|v| {
        let c = (g.neighbors(v) & inside).count_ones() as usize;
        c == 0 || c == k || c == 2 * k
    })
}

/// The Wang-Qiu-Hu conditions on the cells `C0`, `C1` of equal size `k`.
pub fn validate_wqh_conditions(g: &Graph, c0: &[usize], c1: &[usize]) -> bool {
    let n = g.order();
    let k = c0.len();
    if k == 0 || c1.len() != k {
        return false;
    }
    let all: Vec<usize> = c0.iter().chain(c1).copied().collect();
    if check_tuple(n, 2 * k, &all).is_err() {
        return false;
    }
    let mask = |cell: &[usize]| cell.iter().fold(0u16, |acc, &v| acc | 1 << v);
    let (m0, m1) = (mask(c0), mask(c1));
    let deg = |v: usize, m: u16| (g.neighbors(v) & m).count_ones() as i64;
    let diff = deg(c0[0], m1) - deg(c0[0], m0);
    if c0.iter().any(|&v| deg(v, m1) - deg(v, m0) != diff)
        || c1.iter().any(|&v| deg(v, m0) - deg(v, m1) != diff)
    {
        return false;
    }
    (0..n)
        .filter(|v| ((m0 | m1) >> v) & 1 == 0)
        .all(|v| deg(v, m0) % k as i64 == deg(v, m1) % k as i64)
}

/// `(1/k) [[Y, J], [J, Y]]` with `Y = kI - J`, the two-cell form of the
/// Wang-Qiu-Hu matrix.
pub fn wqh_two_cell_matrix(k: usize) -> Result<RationalOrthogonalMatrix> {
    if k < 1 || 2 * k > 16 {
        return Err(Error::arg(format!("cell size {k} out of range")));
    }
    let m = 2 * k;
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let same = i / k == j / k;
                    match (same, i == j) {
                        (true, true) => k as i64 - 1,
                        (true, false) => -1,
                        (false, _) => 1,
                    }
                })
                .collect()
        })
        .collect();
    RationalOrthogonalMatrix::new(rows, k as i64)
}

/// The graph on blocks `C1..C6` (sizes `k, k, k, l, l, l`) in which
/// switching on `C1 ∪ C2` gives an isomorphic graph although no isomorphism
/// maps the switching set to itself. `N` has ones in its first row only.
pub fn build_appendix_graph(
    k: usize,
    l: usize,
    b: &Graph,
    v1: &[Vec<u8>],
    v2: &[Vec<u8>],
) -> Result<Graph> {
    if k < 2 || l < 2 {
        return Err(Error::arg("block sizes must be at least 2"));
    }
    if 3 * k + 3 * l > 16 {
        return Err(Error::Range(format!(
            "{} vertices exceed the supported maximum of 16",
            3 * k + 3 * l
        )));
    }
    if b.order() != l {
        return Err(Error::arg(format!(
            "B must have order {l}, got {}",
            b.order()
        )));
    }
    for (name, v) in [("V1", v1), ("V2", v2)] {
        if v.len() != k || v.iter().any(|r| r.len() != l || r.iter().any(|&x| x > 1)) {
            return Err(Error::arg(format!("{name} must be a {k}x{l} 0/1 matrix")));
        }
    }
    for j in 0..l {
        let s1: usize = v1.iter().map(|r| r[j] as usize).sum();
        let s2: usize = v2.iter().map(|r| r[j] as usize).sum();
        if s1 != s2 || s1 == 0 || s1 >= k {
            return Err(Error::arg(format!(
                "column {j}: sums {s1} and {s2} must agree and lie in 1..={}",
                k - 1
            )));
        }
    }
    let start = |blk: usize| {
        if blk < 3 {
            blk * k
        } else {
            3 * k + (blk - 3) * l
        }
    };
    let mut g = Graph::empty(3 * k + 3 * l);
    let put = |g: &mut Graph, r: usize, c: usize, f: &dyn Fn(usize, usize) -> bool| {
        let (h, w) = (if r < 3 { k } else { l }, if c < 3 { k } else { l });
        for i in 0..h {
            for j in 0..w {
                if f(i, j) {
                    g.add_edge(start(r) + i, start(c) + j);
                }
            }
        }
    };
    let ones = |_: usize, _: usize| true;
    let m1 = |i: usize, j: usize| v1[i][j] == 1;
    let m2 = |i: usize, j: usize| v2[i][j] == 1;
    let bb = |i: usize, j: usize| b.has_edge(i, j);
    let nn = |i: usize, _: usize| i == 0;
    let nt = |_: usize, j: usize| j == 0;
    // upper triangle of the block matrix
    put(&mut g, 0, 1, &ones);
    put(&mut g, 0, 2, &ones);
    put(&mut g, 0, 3, &m1);
    put(&mut g, 0, 5, &m2);
    put(&mut g, 1, 3, &m2);
    put(&mut g, 1, 4, &m1);
    put(&mut g, 2, 4, &m2);
    put(&mut g, 2, 5, &m1);
    for blk in 3..6 {
        put(&mut g, blk, blk, &bb);
    }
    put(&mut g, 3, 4, &nn);
    put(&mut g, 3, 5, &nt);
    put(&mut g, 4, 5, &nn);
    Ok(g)
}

/// The Wang-Qiu-Hu edge rule on cells `C0`, `C1`: every outside vertex
/// with `k` neighbours in one cell and none in the other trades the cells.
/// Only the condition inside the switching set is required; the modular
/// condition on outside vertices is not checked.
pub fn wqh_rule_switch(g: &Graph, c0: &[usize], c1: &[usize]) -> Result<Graph, ValidationError> {
    let n = g.order();
    let k = c0.len();
    if c1.len() != k {
        return Err(ValidationError::TupleLength {
            expected: 2 * k,
            got: k + c1.len(),
        });
    }
    let all: Vec<usize> = c0.iter().chain(c1).copied().collect();
    let inside = check_tuple(n, 2 * k, &all)?;
    let mask = |cell: &[usize]| cell.iter().fold(0u16, |acc, &v| acc | 1 << v);
    let (m0, m1) = (mask(c0), mask(c1));
    let deg = |v: usize, m: u16| (g.neighbors(v) & m).count_ones() as i64;
    let diff = |v: usize| {
        if (m0 >> v) & 1 == 1 {
            deg(v, m1) - deg(v, m0)
        } else {
            deg(v, m0) - deg(v, m1)
        }
    };
    if all.iter().any(|&v| diff(v) != diff(all[0])) {
        return Err(ValidationError::NotSwitchingGraph);
    }
    let mut out = *g;
    for v in (0..n).filter(|v| (inside >> v) & 1 == 0) {
        let (d0, d1) = (deg(v, m0) as usize, deg(v, m1) as usize);
        if (d0, d1) == (k, 0) || (d0, d1) == (0, k) {
            for (&x, &y) in c0.iter().zip(c1) {
                out.set_edge(v, x, d0 == 0);
                out.set_edge(v, y, d1 == 0);
            }
        }
    }
    Ok(out)
}

/// Outcome of switching on the first `2k` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixClaims {
    pub isomorphic: bool,
    pub fixing_isomorphism_exists: bool,
    /// Whether the outside vertices also meet the modular condition, so
    /// that the rule is a genuine cospectral switching.
    pub conditions_hold: bool,
}

/// Applies the Wang-Qiu-Hu rule with cells `0..k` and `k..2k`, then compares
/// plain canonical forms and forms with the switching set coloured apart.
pub fn verify_appendix_claims(g: &Graph, k: usize) -> Result<AppendixClaims> {
    if k == 0 || 2 * k > g.order() {
        return Err(Error::arg(format!(
            "cell size {k} does not fit order {}",
            g.order()
        )));
    }
    let c0: Vec<usize> = (0..k).collect();
    let c1: Vec<usize> = (k..2 * k).collect();
    let h = wqh_rule_switch(g, &c0, &c1)?;
    let set: Vec<usize> = (0..2 * k).collect();
    let coloring = Coloring::split(g.order(), &set)?;
    Ok(AppendixClaims {
        isomorphic: canonical_graph(g) == canonical_graph(&h),
        fixing_isomorphism_exists: canonical_form(g, Some(&coloring))
            == canonical_form(&h, Some(&coloring)),
        conditions_hold: validate_wqh_conditions(g, &c0, &c1),
    })
}
