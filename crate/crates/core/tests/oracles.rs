//! Brute-force oracles for the fast paths: exact rational products for the
//! switching sets, permutation scans for isomorphism and automorphisms, and
//! fraction-free elimination for characteristic polynomials.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use switchenum::exactmat::{build_qabc, RationalOrthogonalMatrix};
use switchenum::formulas::{count_vq_closed_form, GRAPH_COUNTS};
use switchenum::graph::{automorphism_group, canonical_graph, char_poly, count_graphs, Graph};
use switchenum::perm::Perm;
use switchenum::switching::{labelled_switching_graphs, respecting_vectors};

fn q_entry(q: &RationalOrthogonalMatrix, i: usize, j: usize) -> Ratio<i64> {
    Ratio::new(q.num(i, j), q.level())
}

fn brute_respecting(q: &RationalOrthogonalMatrix) -> BTreeSet<u32> {
    let m = q.dimension();
    (0u32..1 << m)
        .filter(|&v| {
            (0..m).all(|j| {
                let x: Ratio<i64> = (0..m)
                    .filter(|&i| (v >> i) & 1 == 1)
                    .map(|i| q_entry(q, i, j))
                    .sum();
                x == Ratio::from_integer(0) || x == Ratio::from_integer(1)
            })
        })
        .collect()
}

fn brute_switching_graphs(q: &RationalOrthogonalMatrix) -> BTreeSet<Graph> {
    let m = q.dimension();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(e, _)| (mask >> e) & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::from_edges(m, &edges);
        let ok = (0..m).all(|a| {
            (a..m).all(|b| {
                let x: Ratio<i64> = edges
                    .iter()
                    .map(|&(i, j)| {
                        q_entry(q, i, a) * q_entry(q, j, b) + q_entry(q, j, a) * q_entry(q, i, b)
                    })
                    .sum();
                if a == b {
                    x == Ratio::from_integer(0)
                } else {
                    x == Ratio::from_integer(0) || x == Ratio::from_integer(1)
                }
            })
        });
        if ok {
            out.insert(g);
        }
    }
    out
}

fn families(max_ab: usize) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::new();
    for a in 1..=max_ab {
        for b in 2..=max_ab / a {
            for c in [-1, 1] {
                out.push((a, b, c));
            }
        }
    }
    out
}

#[test]
fn closed_form_matches_exhaustive_respecting_count() {
    for (a, b, c) in families(10) {
        let q = build_qabc(a, b, c).unwrap();
        let brute = brute_respecting(&q).len() as u128;
        assert_eq!(
            count_vq_closed_form(a as u32, b as u32, c as i32).unwrap(),
            brute,
            "Q({a},{b},{c})"
        );
        assert_eq!(
            respecting_vectors(&q).len() as u128,
            brute,
            "Q({a},{b},{c})"
        );
    }
}

#[test]
fn respecting_vectors_match_block_congruences() {
    for (a, b, c) in families(8) {
        let q = build_qabc(a, b, c).unwrap();
        let m = a * b;
        let block = |v: u32, i: usize| ((v >> (i * a)) & ((1 << a) - 1)).count_ones() as i64;
        let congruent: BTreeSet<u32> = (0u32..1 << m)
            .filter(|&v| {
                (0..b).all(|i| (block(v, i) - c * block(v, (i + 1) % b)).rem_euclid(a as i64) == 0)
            })
            .collect();
        let fast: BTreeSet<u32> = respecting_vectors(&q).vectors().iter().copied().collect();
        assert_eq!(fast, congruent, "Q({a},{b},{c})");
        assert_eq!(fast, brute_respecting(&q), "Q({a},{b},{c})");
    }
}

#[test]
fn two_cell_parity_for_the_three_block_method() {
    let q = build_qabc(2, 3, 1).unwrap();
    let parity: BTreeSet<u32> = (0u32..64)
        .filter(|&v| {
            let p: Vec<u32> = (0..3)
                .map(|i| ((v >> (2 * i)) & 3).count_ones() % 2)
                .collect();
            p[0] == p[1] && p[1] == p[2]
        })
        .collect();
    let fast: BTreeSet<u32> = respecting_vectors(&q).vectors().iter().copied().collect();
    assert_eq!(fast, parity);
}

#[test]
fn switching_graphs_match_exhaustive_scan() {
    for (a, b, c) in families(6) {
        let q = build_qabc(a, b, c).unwrap();
        let fast: BTreeSet<Graph> = labelled_switching_graphs(&q).unwrap().into_iter().collect();
        assert_eq!(fast, brute_switching_graphs(&q), "Q({a},{b},{c})");
    }
}

fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && Perm::all(g.order()).any(|p| g.permute(&p) == *h)
}

fn brute_aut_order(g: &Graph) -> u128 {
    Perm::all(g.order()).filter(|p| g.permute(p) == *g).count() as u128
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[test]
fn canonical_forms_agree_with_permutation_scan() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let mut h = random_graph(&mut rng, n, p);
        if rng.gen_bool(0.5) {
            // same degree sequence is the interesting case; perturb a relabelling
            let mut images: Vec<usize> = (0..n).collect();
            images.rotate_left(rng.gen_range(0..n));
            h = g.permute(&Perm::from_images(images));
            if n >= 4 && rng.gen_bool(0.5) {
                let (u, v) = (0, 1);
                let (x, y) = (2, 3);
                if h.has_edge(u, v) && !h.has_edge(x, y) {
                    h.remove_edge(u, v);
                    h.add_edge(x, y);
                }
            }
        }
        assert_eq!(
            canonical_graph(&g) == canonical_graph(&h),
            brute_isomorphic(&g, &h),
            "{g} {h}"
        );
        assert_eq!(automorphism_group(&g).order, brute_aut_order(&g), "{g}");
    }
}

#[test]
fn every_small_graph_gets_a_distinct_canonical_form() {
    // all labelled graphs on five vertices fall into g_5 classes
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(e, _)| (mask >> e) & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        classes.insert(canonical_graph(&Graph::from_edges(5, &edges)));
    }
    assert_eq!(classes.len() as u64, GRAPH_COUNTS[5]);
}

/// `det(x I - A)` by fraction-free elimination.
fn bareiss_char_value(g: &Graph, x: i64) -> i128 {
    let n = g.order();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        x as i128
                    } else {
                        -(g.has_edge(i, j) as i128)
                    }
                })
                .collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

#[test]
fn char_poly_matches_elimination() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let poly = char_poly(&g);
        for x in -3..=3 {
            assert_eq!(poly.eval(x), bareiss_char_value(&g, x), "{g} at {x}");
        }
    }
}

#[test]
fn graph_table_matches_generation() {
    for (k, &g) in GRAPH_COUNTS.iter().enumerate().take(9) {
        assert_eq!(count_graphs(k), g, "order {k}");
    }
}

#[test]
#[ignore = "generates all 274668 graphs on nine vertices"]
fn graph_table_order_nine() {
    assert_eq!(count_graphs(9), GRAPH_COUNTS[9]);
}

#[test]
#[ignore = "generates all 12005168 graphs on ten vertices"]
fn graph_table_order_ten() {
    assert_eq!(count_graphs(10), GRAPH_COUNTS[10]);
}
