//! Canonical labeling and automorphism groups.
//!
//! Individualization-refinement: the ordered partition is refined to an
//! equitable one, a vertex of the first non-singleton cell is individualized
//! and the search recurses. Every discrete leaf yields a relabeled graph; the
//! lexicographically largest is the canonical form. Automorphisms are
//! discovered when two leaves give the same graph and are used to prune
//! sibling subtrees (orbit pruning) and to abandon subtrees that are images
//! of the first path.

use serde::{Deserialize, Serialize};

use super::{graph6_encode, Graph, MAX_ORDER};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// An ordered partition of the vertex set into colour classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    cells: Vec<Vec<usize>>,
}

impl Coloring {
    /// Validates that `cells` partition `0..n`; empty cells are dropped.
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &v in cells.iter().flatten() {
            if v >= n || seen[v] {
                return Err(Error::arg(format!(
                    "colouring is not a partition of 0..{n} (vertex {v})"
                )));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::arg(format!("colouring misses vertex {v}")));
        }
        Ok(Coloring {
            cells: cells.into_iter().filter(|c| !c.is_empty()).collect(),
        })
    }

    /// Two classes: `first` in front, everything else after.
    pub fn split(n: usize, first: &[usize]) -> Result<Self> {
        let rest = (0..n).filter(|v| !first.contains(v)).collect();
        Coloring::new(n, vec![first.to_vec(), rest])
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }
}

/// Relabeling-invariant identifier of a (coloured) graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalLabel {
    /// graph6 of the canonically relabeled graph.
    pub graph6: String,
    /// Colour class sizes in order; canonical positions are grouped by class.
    pub cell_sizes: Option<Vec<usize>>,
}

/// A canonical labeling: `perm[v]` is the canonical position of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub canonical: Graph,
    pub perm: Perm,
}

/// Automorphism group given by generators together with its exact order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub generators: Vec<Perm>,
    pub order: u128,
}

impl AutomorphismGroup {
    /// All group elements, sorted. Only sensible for small groups.
    pub fn elements(&self, n: usize) -> Vec<Perm> {
        perm::group_elements(n, &self.generators)
    }

    pub fn orbits(&self, n: usize) -> Vec<Vec<usize>> {
        perm::orbits(n, &self.generators)
    }
}

#[derive(Clone, Copy)]
struct Part {
    lab: [u8; MAX_ORDER],
    start: [u8; MAX_ORDER + 1],
    ncells: u8,
}

impl Part {
    fn unit(n: usize) -> Self {
        let mut p = Part {
            lab: [0; MAX_ORDER],
            start: [0; MAX_ORDER + 1],
            ncells: 1,
        };
        for (i, slot) in p.lab.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        p.start[1] = n as u8;
        p
    }

    fn from_coloring(n: usize, c: &Coloring) -> Self {
        let mut p = Part {
            lab: [0; MAX_ORDER],
            start: [0; MAX_ORDER + 1],
            ncells: 0,
        };
        let mut pos = 0;
        for cell in c.cells() {
            p.start[p.ncells as usize] = pos as u8;
            for &v in cell {
                p.lab[pos] = v as u8;
                pos += 1;
            }
            p.ncells += 1;
        }
        p.start[p.ncells as usize] = pos as u8;
        debug_assert_eq!(pos, n);
        p
    }

    #[inline]
    fn cell(&self, c: usize) -> (usize, usize) {
        (self.start[c] as usize, self.start[c + 1] as usize)
    }

    #[inline]
    fn is_discrete(&self, n: usize) -> bool {
        self.ncells as usize == n
    }

    /// Splits cells by neighbour counts into every cell until stable.
    fn refine(&mut self, g: &Graph) {
        let rows = g.raw_rows();
        loop {
            let nc = self.ncells as usize;
            let mut masks = [0u16; MAX_ORDER];
            for (c, mask) in masks.iter_mut().enumerate().take(nc) {
                let (a, b) = self.cell(c);
                for &v in &self.lab[a..b] {
                    *mask |= 1 << v;
                }
            }
            let mut out = Part {
                lab: self.lab,
                start: [0; MAX_ORDER + 1],
                ncells: 0,
            };
            for c in 0..nc {
                let (a, b) = self.cell(c);
                if b - a == 1 {
                    out.start[out.ncells as usize] = a as u8;
                    out.ncells += 1;
                    continue;
                }
                let mut keyed = [(0u128, 0u8); MAX_ORDER];
                for (k, &v) in self.lab[a..b].iter().enumerate() {
                    let row = rows[v as usize];
                    let mut sig = 0u128;
                    for &m in &masks[..nc] {
                        sig = (sig << 5) | (row & m).count_ones() as u128;
                    }
                    keyed[k] = (sig, v);
                }
                let keyed = &mut keyed[..b - a];
                // insertion sort; stable and allocation free
                for i in 1..keyed.len() {
                    let mut j = i;
                    while j > 0 && keyed[j - 1].0 > keyed[j].0 {
                        keyed.swap(j - 1, j);
                        j -= 1;
                    }
                }
                for (k, &(sig, v)) in keyed.iter().enumerate() {
                    out.lab[a + k] = v;
                    if k == 0 || sig != keyed[k - 1].0 {
                        out.start[out.ncells as usize] = (a + k) as u8;
                        out.ncells += 1;
                    }
                }
            }
            out.start[out.ncells as usize] = self.start[nc];
            let changed = out.ncells != self.ncells;
            *self = out;
            if !changed {
                return;
            }
        }
    }

    fn target_cell(&self) -> usize {
        (0..self.ncells as usize)
            .find(|&c| {
                let (a, b) = self.cell(c);
                b - a > 1
            })
            .expect("target cell requested for a discrete partition")
    }

    /// Moves `v` to the front of cell `c` as its own singleton cell.
    fn individualize(&self, c: usize, v: u8) -> Self {
        let mut p = *self;
        let (a, b) = self.cell(c);
        let pos = (a..b).find(|&i| p.lab[i] == v).expect("vertex not in cell");
        p.lab.copy_within(a..pos, a + 1);
        p.lab[a] = v;
        let nc = p.ncells as usize;
        p.start.copy_within(c + 1..=nc, c + 2);
        p.start[c + 1] = (a + 1) as u8;
        p.ncells += 1;
        p
    }
}

#[derive(Clone, Copy)]
struct Leaf {
    lab: [u8; MAX_ORDER],
    rows: [u16; MAX_ORDER],
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    first_path: [u8; MAX_ORDER],
    first_depth: usize,
    path: [u8; MAX_ORDER],
    depth: usize,
    gens: Vec<[u8; MAX_ORDER]>,
}

pub(crate) struct SearchResult {
    /// `labeling[i]` is the original vertex at canonical position `i`.
    pub labeling: [u8; MAX_ORDER],
    pub canonical: Graph,
    pub generators: Vec<[u8; MAX_ORDER]>,
    pub first_path: Vec<u8>,
}

impl SearchResult {
    pub fn generator_perms(&self, n: usize) -> Vec<Perm> {
        self.generators
            .iter()
            .map(|g| Perm::from_images(g[..n].iter().map(|&x| x as usize).collect()))
            .collect()
    }

    /// Group order from orbit sizes along the first path.
    pub fn group_order(&self, n: usize) -> u128 {
        let gens = self.generator_perms(n);
        let mut order: u128 = 1;
        for (d, &v) in self.first_path.iter().enumerate() {
            let fixing: Vec<Perm> = gens
                .iter()
                .filter(|g| {
                    self.first_path[..d]
                        .iter()
                        .all(|&u| g[u as usize] == u as usize)
                })
                .cloned()
                .collect();
            let orbits = perm::orbits(n, &fixing);
            let size = orbits
                .iter()
                .find(|o| o.contains(&(v as usize)))
                .map_or(1, Vec::len);
            order *= size as u128;
        }
        order
    }

    pub fn orbit_ids(&self, n: usize) -> [u8; MAX_ORDER] {
        let mut ids = [0u8; MAX_ORDER];
        for orbit in perm::orbits(n, &self.generator_perms(n)) {
            for &v in &orbit {
                ids[v] = orbit[0] as u8;
            }
        }
        ids
    }
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            n: g.order(),
            first: None,
            best: None,
            first_path: [0; MAX_ORDER],
            first_depth: 0,
            path: [0; MAX_ORDER],
            depth: 0,
            gens: Vec::new(),
        }
    }

    fn relabel(&self, lab: &[u8; MAX_ORDER]) -> [u16; MAX_ORDER] {
        let mut inv = [0u8; MAX_ORDER];
        for i in 0..self.n {
            inv[lab[i] as usize] = i as u8;
        }
        let rows = self.g.raw_rows();
        let mut out = [0u16; MAX_ORDER];
        for i in 0..self.n {
            let mut r = rows[lab[i] as usize];
            let mut nr = 0u16;
            while r != 0 {
                let u = r.trailing_zeros() as usize;
                r &= r - 1;
                nr |= 1 << inv[u];
            }
            out[i] = nr;
        }
        out
    }

    /// Automorphism sending `from.lab[i]` to `to.lab[i]`.
    fn automorphism(&self, from: &[u8; MAX_ORDER], to: &[u8; MAX_ORDER]) -> [u8; MAX_ORDER] {
        let mut img = [0u8; MAX_ORDER];
        for i in 0..self.n {
            img[from[i] as usize] = to[i];
        }
        img
    }

    fn leaf(&mut self, part: &Part) -> Option<usize> {
        let rows = self.relabel(&part.lab);
        let leaf = Leaf {
            lab: part.lab,
            rows,
        };
        let Some(first) = self.first else {
            self.first = Some(leaf);
            self.best = Some(leaf);
            self.first_path = self.path;
            self.first_depth = self.depth;
            return None;
        };
        if rows == first.rows {
            let aut = self.automorphism(&first.lab, &leaf.lab);
            self.gens.push(aut);
            let common = (0..self.depth.min(self.first_depth))
                .take_while(|&i| self.path[i] == self.first_path[i])
                .count();
            return Some(common);
        }
        let best = self.best.expect("best leaf exists once first does");
        match rows[..self.n].cmp(&best.rows[..self.n]) {
            std::cmp::Ordering::Equal => {
                let aut = self.automorphism(&best.lab, &leaf.lab);
                self.gens.push(aut);
            }
            std::cmp::Ordering::Greater => self.best = Some(leaf),
            std::cmp::Ordering::Less => {}
        }
        None
    }

    /// Orbit representative of every vertex under the generators that fix
    /// the current path pointwise.
    fn stabilizer_orbits(&self) -> [u8; MAX_ORDER] {
        let mut parent = [0u8; MAX_ORDER];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(p: &mut [u8; MAX_ORDER], x: u8) -> u8 {
            let mut r = x;
            while p[r as usize] != r {
                r = p[r as usize];
            }
            p[x as usize] = r;
            r
        }
        for g in &self.gens {
            if self.path[..self.depth].iter().any(|&u| g[u as usize] != u) {
                continue;
            }
            for i in 0..self.n {
                let a = find(&mut parent, i as u8);
                let b = find(&mut parent, g[i]);
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        for i in 0..self.n {
            parent[i] = find(&mut parent, i as u8);
        }
        parent
    }

    fn visit(&mut self, mut part: Part) -> Option<usize> {
        part.refine(self.g);
        if part.is_discrete(self.n) {
            return self.leaf(&part);
        }
        let c = part.target_cell();
        let (a, b) = part.cell(c);
        let mut cell = [0u8; MAX_ORDER];
        cell[..b - a].copy_from_slice(&part.lab[a..b]);
        let here = self.depth;
        let mut tried = [0u8; MAX_ORDER];
        let mut ntried = 0;
        let mut seen_gens = 0;
        let mut orbit = [0u8; MAX_ORDER];
        for &v in &cell[..b - a] {
            if ntried > 0 && !self.gens.is_empty() {
                if seen_gens != self.gens.len() {
                    orbit = self.stabilizer_orbits();
                    seen_gens = self.gens.len();
                }
                let ov = orbit[v as usize];
                if tried[..ntried].iter().any(|&u| orbit[u as usize] == ov) {
                    continue;
                }
            }
            tried[ntried] = v;
            ntried += 1;
            self.path[here] = v;
            self.depth = here + 1;
            let child = part.individualize(c, v);
            let jump = self.visit(child);
            self.depth = here;
            if let Some(level) = jump {
                if level < here {
                    return Some(level);
                }
            }
        }
        None
    }
}

pub(crate) fn canonical_search(g: &Graph, coloring: Option<&Coloring>) -> SearchResult {
    let n = g.order();
    let mut s = Search::new(g);
    if n == 0 {
        return SearchResult {
            labeling: [0; MAX_ORDER],
            canonical: *g,
            generators: Vec::new(),
            first_path: Vec::new(),
        };
    }
    let part = match coloring {
        Some(c) => Part::from_coloring(n, c),
        None => Part::unit(n),
    };
    s.visit(part);
    let best = s.best.expect("search reaches at least one leaf");
    SearchResult {
        labeling: best.lab,
        canonical: Graph::from_rows_unchecked(n, best.rows),
        generators: s.gens,
        first_path: s.first_path[..s.first_depth].to_vec(),
    }
}

/// Canonical label; equal labels exactly when a colour-respecting
/// isomorphism exists.
pub fn canonical_form(g: &Graph, coloring: Option<&Coloring>) -> CanonicalLabel {
    let r = canonical_search(g, coloring);
    CanonicalLabel {
        graph6: graph6_encode(&r.canonical),
        cell_sizes: coloring.map(Coloring::cell_sizes),
    }
}

/// The canonically relabeled graph (uncoloured).
pub fn canonical_graph(g: &Graph) -> Graph {
    canonical_search(g, None).canonical
}

/// Canonical labeling of `g` under an optional colouring.
pub fn canonical_labeling(g: &Graph, coloring: Option<&Coloring>) -> Labeling {
    let r = canonical_search(g, coloring);
    let n = g.order();
    let mut images = vec![0; n];
    for i in 0..n {
        images[r.labeling[i] as usize] = i;
    }
    Labeling {
        canonical: r.canonical,
        perm: Perm::from_images(images),
    }
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && canonical_graph(g) == canonical_graph(h)
}

pub fn automorphism_group(g: &Graph) -> AutomorphismGroup {
    automorphism_group_colored(g, None)
}

/// Automorphisms preserving every colour class.
pub fn automorphism_group_colored(g: &Graph, coloring: Option<&Coloring>) -> AutomorphismGroup {
    let r = canonical_search(g, coloring);
    let n = g.order();
    AutomorphismGroup {
        order: r.group_order(n),
        generators: r.generator_perms(n),
    }
}

pub fn is_asymmetric(g: &Graph) -> bool {
    automorphism_group(g).order == 1
}
