use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use serde::Serialize;

use super::graphs::{labelled_switching_graphs, switched_form};
use super::respecting::{respecting_vectors, RespectingVectorSet};
use crate::error::{Error, Result};
use crate::exactmat::{build_named, MethodId, RationalOrthogonalMatrix};
use crate::graph::{
    automorphism_group, automorphism_group_colored, canonical_graph, canonical_labeling,
    AutomorphismGroup, Coloring, Graph,
};
use crate::perm::{group_elements, Perm};

/// One orbit of labelled switching graphs under the permutations that
/// preserve the respecting vectors.
#[derive(Clone, Debug, Serialize)]
pub struct GammaClass {
    /// Least member of the orbit in graph6 order.
    pub gamma: Graph,
    /// `Q^T A(Γ) Q`.
    pub switched: Graph,
    /// Index into [`SwitchingGraphSet::unlabelled`].
    pub iso_class: usize,
    /// Index of the class holding the complement of `gamma`.
    pub complement: usize,
    pub orbit_size: usize,
    pub aut_order: u128,
    pub autq_order: u128,
    pub distinguishing: bool,
    pub switching_distinguishing: bool,
}

/// All switching graphs of a matrix, grouped into orbits.
#[derive(Clone, Debug, Serialize)]
pub struct SwitchingGraphSet {
    pub m: usize,
    /// Every labelled switching graph, in graph6 order.
    pub labelled: Vec<Graph>,
    /// Canonical forms of the isomorphism classes, in graph6 order.
    pub unlabelled: Vec<Graph>,
    pub classes: Vec<GammaClass>,
    /// Class index of each labelled graph.
    pub class_of: Vec<usize>,
    /// Labelled graphs in each isomorphism class.
    pub iso_members: Vec<Vec<usize>>,
    /// Canonical labeling of each labelled graph.
    pub labelings: Vec<Perm>,
    /// Order of the stabiliser of the respecting vectors in `S_m`.
    pub stabilizer_order: usize,
}

impl SwitchingGraphSet {
    /// Isomorphism classes met by more than one orbit.
    pub fn split_iso_classes(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.unlabelled.len()];
        for c in &self.classes {
            count[c.iso_class] += 1;
        }
        (0..count.len()).filter(|&i| count[i] > 1).collect()
    }
}

/// Whether `sigma` maps the respecting vectors onto themselves.
pub fn preserves_vectors(vq: &RespectingVectorSet, sigma: &Perm) -> bool {
    vq.vectors()
        .iter()
        .all(|&v| vq.contains(sigma.apply_mask(v)))
}

/// All permutations of `[m]` preserving the respecting vectors.
pub fn vector_stabilizer(vq: &RespectingVectorSet) -> Result<Vec<Perm>> {
    let m = vq.dimension();
    if m > 9 {
        return Err(Error::Range(format!(
            "stabiliser enumeration supports dimension <= 9, got {m}"
        )));
    }
    Ok(Perm::all(m).filter(|s| preserves_vectors(vq, s)).collect())
}

/// Permutations `σ` with `Q^T P_σ Q` again a permutation matrix. For these
/// the switch commutes with relabeling the switching tuple by `σ`.
pub fn is_equivariant(q: &RationalOrthogonalMatrix, sigma: &Perm) -> bool {
    let m = q.dimension();
    let l2 = q.level() * q.level();
    (0..m).all(|a| {
        let mut hits = 0;
        for b in 0..m {
            let x: i64 = (0..m).map(|i| q.num(sigma[i], a) * q.num(i, b)).sum();
            if x == l2 {
                hits += 1;
            } else if x != 0 {
                return false;
            }
        }
        hits == 1
    })
}

/// A small generating set, chosen greedily in the order given.
pub fn generating_set(m: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut span: HashSet<Perm> = HashSet::from([Perm::identity(m)]);
    for e in elements {
        if !span.contains(e) {
            gens.push(e.clone());
            span = group_elements(m, &gens).into_iter().collect();
            if span.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

fn check_member(q: &RationalOrthogonalMatrix, gamma: &Graph) -> Result<Graph> {
    if gamma.order() != q.dimension() {
        return Err(Error::arg(format!(
            "graph has {} vertices, matrix has dimension {}",
            gamma.order(),
            q.dimension()
        )));
    }
    switched_form(q, gamma)
        .ok_or_else(|| Error::arg(format!("{gamma} is not a switching graph of this matrix")))
}

/// `Aut_Q(Γ)`: automorphisms of `Γ` whose action on coordinates preserves
/// the respecting vectors.
pub fn autq_group(q: &RationalOrthogonalMatrix, gamma: &Graph) -> Result<AutomorphismGroup> {
    check_member(q, gamma)?;
    let vq = respecting_vectors(q);
    Ok(autq_with(&vq, gamma))
}

pub(crate) fn autq_with(vq: &RespectingVectorSet, gamma: &Graph) -> AutomorphismGroup {
    let m = gamma.order();
    let elems: Vec<Perm> = automorphism_group(gamma)
        .elements(m)
        .into_iter()
        .filter(|s| preserves_vectors(vq, s))
        .collect();
    AutomorphismGroup {
        order: elems.len() as u128,
        generators: generating_set(m, &elems)
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect(),
    }
}

/// Colouring of coordinates by which respecting vectors are 1 there.
fn signature_coloring(vq: &RespectingVectorSet) -> Coloring {
    let m = vq.dimension();
    let mut by_sig: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let sig = vq.vectors().iter().map(|v| (v >> i) & 1 == 1).collect();
        by_sig.entry(sig).or_default().push(i);
    }
    let mut cells: Vec<(Vec<bool>, Vec<usize>)> = by_sig.into_iter().collect();
    cells.sort();
    Coloring::new(m, cells.into_iter().map(|(_, c)| c).collect())
        .expect("signature classes partition the coordinates")
}

/// `Aut_Q(Γ)` acts faithfully on the respecting vectors.
pub fn is_distinguishing(q: &RationalOrthogonalMatrix, gamma: &Graph) -> Result<bool> {
    check_member(q, gamma)?;
    Ok(distinguishing_with(&respecting_vectors(q), gamma))
}

fn distinguishing_with(vq: &RespectingVectorSet, gamma: &Graph) -> bool {
    // an automorphism fixing every respecting vector is exactly one that
    // preserves the coordinate signatures
    automorphism_group_colored(gamma, Some(&signature_coloring(vq))).order == 1
}

/// No permutation `φ` reproduces the switch, i.e. relabels `Γ` into
/// `Q^T A(Γ) Q` and sends every respecting `v` to `Q^T v`.
pub fn is_switching_distinguishing(q: &RationalOrthogonalMatrix, gamma: &Graph) -> Result<bool> {
    let switched = check_member(q, gamma)?;
    let vq = respecting_vectors(q);
    Ok(switching_distinguishing_with(&vq, gamma, &switched))
}

/// As [`is_switching_distinguishing`] against an explicit vector set, which
/// may be a subset of the respecting vectors.
pub fn switching_distinguishing_with(
    vq: &RespectingVectorSet,
    gamma: &Graph,
    switched: &Graph,
) -> bool {
    let m = gamma.order();
    let sig =
        |vs: &[u32], i: usize| -> Vec<bool> { vs.iter().map(|v| (v >> i) & 1 == 1).collect() };
    let sin: Vec<Vec<bool>> = (0..m).map(|i| sig(vq.vectors(), i)).collect();
    let sout: Vec<Vec<bool>> = (0..m).map(|j| sig(vq.images(), j)).collect();

    fn extend(
        i: usize,
        phi: &mut Vec<usize>,
        used: &mut [bool],
        gamma: &Graph,
        switched: &Graph,
        sin: &[Vec<bool>],
        sout: &[Vec<bool>],
    ) -> bool {
        let m = gamma.order();
        if i == m {
            return true;
        }
        for j in 0..m {
            if used[j] || sin[i] != sout[j] {
                continue;
            }
            if (0..i).any(|k| gamma.has_edge(k, i) != switched.has_edge(phi[k], j)) {
                continue;
            }
            phi.push(j);
            used[j] = true;
            if extend(i + 1, phi, used, gamma, switched, sin, sout) {
                return true;
            }
            used[j] = false;
            phi.pop();
        }
        false
    }

    let mut phi = Vec::with_capacity(m);
    let mut used = vec![false; m];
    !extend(0, &mut phi, &mut used, gamma, switched, &sin, &sout)
}

/// Enumerates the switching graphs of `q` and their orbit data.
pub fn switching_graphs(q: &RationalOrthogonalMatrix) -> Result<SwitchingGraphSet> {
    let vq = respecting_vectors(q);
    let stab = vector_stabilizer(&vq)?;
    build_graph_set(q, &vq, &stab)
}

fn build_graph_set(
    q: &RationalOrthogonalMatrix,
    vq: &RespectingVectorSet,
    stab: &[Perm],
) -> Result<SwitchingGraphSet> {
    let m = q.dimension();
    let labelled = labelled_switching_graphs(q)?;
    let index: HashMap<Graph, usize> = labelled.iter().enumerate().map(|(i, g)| (*g, i)).collect();

    let canon: Vec<Graph> = labelled.iter().map(canonical_graph).collect();
    let mut unlabelled: Vec<Graph> = canon.clone();
    unlabelled.sort_by_key(Graph::g6_key);
    unlabelled.dedup();
    let iso_index: HashMap<Graph, usize> = unlabelled
        .iter()
        .enumerate()
        .map(|(i, g)| (*g, i))
        .collect();

    // Two labelled switching graphs are equivalent when some isomorphism
    // between them also preserves the respecting vectors.
    let labelings: Vec<Perm> = labelled
        .iter()
        .map(|g| canonical_labeling(g, None).perm)
        .collect();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); unlabelled.len()];
    for (i, c) in canon.iter().enumerate() {
        members[iso_index[c]].push(i);
    }
    let mut orbit_of = vec![usize::MAX; labelled.len()];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for start in 0..labelled.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = reps.len();
        orbit_of[start] = id;
        let auts = automorphism_group(&labelled[start]).elements(m);
        let mut size = 1;
        for &other in &members[iso_index[&canon[start]]] {
            if orbit_of[other] != usize::MAX {
                continue;
            }
            let base = labelings[other].inverse().compose(&labelings[start]);
            if auts.iter().any(|a| preserves_vectors(vq, &base.compose(a))) {
                orbit_of[other] = id;
                size += 1;
            }
        }
        reps.push((start, size));
    }

    let classes = reps
        .iter()
        .map(|&(i, size)| {
            let gamma = labelled[i];
            let switched = switched_form(q, &gamma).expect("enumerated graphs switch");
            let autq = autq_with(vq, &gamma);
            GammaClass {
                gamma,
                switched,
                iso_class: iso_index[&canon[i]],
                complement: orbit_of[index[&gamma.complement()]],
                orbit_size: size,
                aut_order: automorphism_group(&gamma).order,
                autq_order: autq.order,
                distinguishing: distinguishing_with(vq, &gamma),
                switching_distinguishing: switching_distinguishing_with(vq, &gamma, &switched),
            }
        })
        .collect();
    Ok(SwitchingGraphSet {
        m,
        labelled,
        unlabelled,
        classes,
        class_of: orbit_of,
        iso_members: members,
        labelings,
        stabilizer_order: stab.len(),
    })
}

/// A switching method with its precomputed data.
///
/// For the level-2 methods on six and seven vertices only the switching
/// graphs isomorphic to the irreducible ones listed in
/// [`irreducible_gammas`] are selected; the others arise from smaller methods.
#[derive(Clone, Debug)]
pub struct SwitchingMethod {
    pub id: MethodId,
    pub q: RationalOrthogonalMatrix,
    pub vq: RespectingVectorSet,
    pub graphs: SwitchingGraphSet,
    /// Indices into `graphs.classes` used by this method.
    pub selected: Vec<usize>,
    /// Elements of the respecting-vector stabiliser that commute with the
    /// switch up to relabeling.
    pub equivariant: Vec<Perm>,
}

/// The irreducible switching graphs of a method, up to complementation, in
/// the coordinates of its matrix; `None` when every switching graph counts.
pub fn irreducible_gammas(id: MethodId) -> Option<Vec<Graph>> {
    match id {
        // a triangle with one pendant vertex at each corner
        MethodId::Ah6 => Some(vec![Graph::from_edges(
            6,
            &[(1, 3), (1, 2), (1, 5), (3, 4), (3, 5), (5, 0)],
        )]),
        MethodId::Fano => Some(vec![
            Graph::cycle(7),
            Graph::from_edges(
                7,
                &[
                    (3, 2),
                    (3, 4),
                    (5, 0),
                    (5, 2),
                    (5, 4),
                    (6, 0),
                    (6, 1),
                    (6, 2),
                    (6, 3),
                    (6, 5),
                ],
            ),
        ]),
        _ => None,
    }
}

impl SwitchingMethod {
    pub fn new(id: MethodId) -> Result<Self> {
        let q = match id {
            MethodId::Qabc { a, b, c } => {
                crate::exactmat::build_qabc(a as usize, b as usize, c as i64)?
            }
            named => build_named(named),
        };
        let vq = respecting_vectors(&q);
        let stab = vector_stabilizer(&vq)?;
        let graphs = build_graph_set(&q, &vq, &stab)?;
        let selected = match irreducible_gammas(id) {
            None => (0..graphs.classes.len()).collect(),
            Some(list) => {
                let wanted: HashSet<Graph> = list
                    .iter()
                    .flat_map(|g| [canonical_graph(g), canonical_graph(&g.complement())])
                    .collect();
                (0..graphs.classes.len())
                    .filter(|&i| wanted.contains(&graphs.unlabelled[graphs.classes[i].iso_class]))
                    .collect()
            }
        };
        let equivariant = stab.into_iter().filter(|s| is_equivariant(&q, s)).collect();
        Ok(SwitchingMethod {
            id,
            q,
            vq,
            graphs,
            selected,
            equivariant,
        })
    }

    pub fn dimension(&self) -> usize {
        self.q.dimension()
    }

    pub fn selected_classes(&self) -> impl Iterator<Item = &GammaClass> {
        self.selected.iter().map(|&i| &self.graphs.classes[i])
    }

    /// `Σ 1/|Aut_Q(Γ)|` over the selected orbits.
    pub fn autq_coefficient(&self) -> Ratio<i128> {
        self.selected_classes()
            .map(|c| Ratio::new(1, c.autq_order as i128))
            .sum()
    }
}
