//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion's outcome differs from the expected one.
//!
//! Three criteria are expected to fail. The recomputed WQH8 leading constant
//! differs from the published one, and so does its order-ten main term. The
//! two forms of the GM4 count do not approach each other monotonically for
//! the orders where `g_n` is tabulated.
//! Set `SWITCHENUM_ALLOW_LONG=1` to add the order-ten census checks.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;

use switchenum::census::{
    find_mate, formula_comparison, overlap_report, run_census_with, CensusJob, CensusReport,
};
use switchenum::exactmat::{build_qabc, MethodId};
use switchenum::formulas::{
    asymptotic_main_term, count_vq_closed_form, gm4_equivalent_form, published_coefficient,
    ratio_string, round_decimal, round_nearest, table1_coefficient, AsymptoticCoefficient,
};
use switchenum::graph::{canonical_graph, generate_all_graphs, is_generalized_cospectral, Graph};
use switchenum::switching::{
    apply_switching, build_appendix_graph, find_switching_instances, is_distinguishing,
    is_switching_distinguishing, respecting_vectors, verify_appendix_claims, SwitchingMethod,
};

const ORDER: [MethodId; 7] = [
    MethodId::Gm4,
    MethodId::Ah6,
    MethodId::Gm6,
    MethodId::Wqh6,
    MethodId::Fano,
    MethodId::Gm8,
    MethodId::Wqh8,
];

/// Published census counts at orders 7 to 10, in `ORDER`.
const COUNTS: [(usize, [usize; 7]); 4] = [
    (7, [40, 0, 0, 0, 0, 0, 0]),
    (8, [1030, 48, 48, 94, 24, 0, 0]),
    (9, [37070, 2242, 2488, 6212, 502, 96, 96]),
    (10, [1977190, 96686, 131806, 407770, 12812, 6096, 11498]),
];

/// Published order-ten main terms, rounded.
const MAIN_TERMS: [i128; 7] = [13631488, 480597, 615573, 6155727, 37449, 11812, 363834];

/// Published enumeration/formula ratios at order ten.
const RATIOS: [&str; 7] = [
    "0.145", "0.201", "0.214", "0.066", "0.342", "0.516", "0.032",
];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    expect_pass: bool,
}

struct Suite {
    methods: BTreeMap<MethodId, SwitchingMethod>,
    reports: BTreeMap<(MethodId, usize), CensusReport>,
    threads: usize,
    outcomes: Vec<Outcome>,
}

impl Suite {
    fn method(&self, id: MethodId) -> &SwitchingMethod {
        &self.methods[&id]
    }

    fn census(&mut self, id: MethodId, n: usize, threads: usize) -> &CensusReport {
        if !self.reports.contains_key(&(id, n)) {
            let job = CensusJob {
                emit_graphs: true,
                worker_count: threads,
                allow_long: true,
                ..CensusJob::new(id, n)
            };
            let r = run_census_with(&self.methods[&id], &job).expect("census runs");
            self.reports.insert((id, n), r);
        }
        &self.reports[&(id, n)]
    }

    fn record(&mut self, id: &'static str, expect_pass: bool, pass: bool, detail: String) {
        let tag = match (pass, expect_pass) {
            (true, _) => "PASS",
            (false, false) => "FAIL (expected)",
            (false, true) => "FAIL",
        };
        println!("[{tag}] criterion {id}: {detail}");
        self.outcomes.push(Outcome {
            id,
            pass,
            detail,
            expect_pass,
        });
    }
}

fn counts_at(n: usize) -> [usize; 7] {
    COUNTS.iter().find(|(k, _)| *k == n).unwrap().1
}

fn table_tier(s: &mut Suite, id: &'static str, orders: &[usize], threads: usize) {
    let start = Instant::now();
    let mut bad = Vec::new();
    for &n in orders {
        let want = counts_at(n);
        for (i, &m) in ORDER.iter().enumerate() {
            if n < 8 && m != MethodId::Gm4 {
                continue;
            }
            let got = s.census(m, n, threads).count;
            if got != want[i] {
                bad.push(format!("{m} n={n}: {got} vs {}", want[i]));
            }
        }
    }
    let pass = bad.is_empty();
    let detail = if pass {
        format!(
            "census counts match at n={orders:?} ({:.1}s)",
            start.elapsed().as_secs_f64()
        )
    } else {
        bad.join("; ")
    };
    s.record(id, true, pass, detail);
}

/// Order, intersection sizes and union size.
type Overlap = (usize, &'static [(&'static [MethodId], usize)], i64);

fn overlaps(s: &mut Suite) {
    let gm = [MethodId::Gm4, MethodId::Gm6, MethodId::Gm8];
    let mut bad = Vec::new();
    let expected: [Overlap; 2] = [
        (8, &[(&[MethodId::Gm4, MethodId::Gm6], 24)], 1054),
        (
            9,
            &[
                (&[MethodId::Gm4, MethodId::Gm6], 1336),
                (&[MethodId::Gm4, MethodId::Gm8], 40),
                (&[MethodId::Gm6, MethodId::Gm8], 38),
                (&[MethodId::Gm4, MethodId::Gm6, MethodId::Gm8], 18),
            ],
            38258,
        ),
    ];
    for (n, sizes, union) in expected {
        let threads = s.threads;
        for m in gm {
            s.census(m, n, threads);
        }
        let reports: Vec<CensusReport> = gm.iter().map(|&m| s.reports[&(m, n)].clone()).collect();
        let o = overlap_report(&reports).expect("overlap");
        for (ids, want) in sizes {
            let got = o
                .intersections
                .iter()
                .find(|(k, _)| k.as_slice() == *ids)
                .map(|x| x.1);
            if got != Some(*want) {
                bad.push(format!("n={n} {ids:?}: {got:?} vs {want}"));
            }
        }
        if o.union != union {
            bad.push(format!("n={n} union {} vs {union}", o.union));
        }
    }
    let pass = bad.is_empty();
    let detail = if pass {
        "GM intersections and inclusion-exclusion unions match at n=8,9".into()
    } else {
        bad.join("; ")
    };
    s.record("3", true, pass, detail);
}

fn closed_form(s: &mut Suite) {
    let mut bad = Vec::new();
    let mut checked = 0;
    for a in 1..=10usize {
        for b in 2..=10 / a {
            for c in [-1i64, 1] {
                let q = build_qabc(a, b, c).unwrap();
                let brute = (0u32..1 << (a * b))
                    .filter(|&v| {
                        (0..a * b).all(|j| {
                            let x: i64 = (0..a * b)
                                .filter(|&i| (v >> i) & 1 == 1)
                                .map(|i| q.num(i, j))
                                .sum();
                            x == 0 || x == q.level()
                        })
                    })
                    .count() as u128;
                let closed = count_vq_closed_form(a as u32, b as u32, c as i32).unwrap();
                if closed != brute || respecting_vectors(&q).len() as u128 != brute {
                    bad.push(format!("Q({a},{b},{c}): closed {closed}, brute {brute}"));
                }
                checked += 1;
            }
        }
    }
    let named: Vec<String> = [MethodId::Gm4, MethodId::Gm6, MethodId::Ah6, MethodId::Gm8]
        .iter()
        .map(|&m| format!("{m}={}", s.method(m).vq.len()))
        .collect();
    let expect = ["GM4=8", "GM6=22", "AH6=16", "GM8=72"];
    if named != expect {
        bad.push(format!("named sizes {named:?}"));
    }
    let pass = bad.is_empty();
    let detail = if pass {
        format!(
            "closed form equals exhaustive count for {checked} families; {}",
            named.join(" ")
        )
    } else {
        bad.join("; ")
    };
    s.record("4", true, pass, detail);
}

fn coefficients(s: &mut Suite) {
    let mut matched = Vec::new();
    let mut bad = Vec::new();
    for m in ORDER {
        let live = table1_coefficient(s.method(m)).coefficient;
        let published = published_coefficient(m).unwrap();
        if live == published {
            matched.push(format!("{m}={}", ratio_string(&live)));
        } else {
            bad.push(format!(
                "{m}: recomputed {} vs published {}",
                ratio_string(&live),
                ratio_string(&published)
            ));
        }
    }
    let counts_ok = s.method(MethodId::Gm8).graphs.unlabelled.len() == 22
        && s.method(MethodId::Wqh8).graphs.unlabelled.len() == 98;
    let pass = bad.is_empty() && counts_ok;
    let detail = format!(
        "{}{}; 22 GM8 and 98 WQH8 switching graphs: {}",
        matched.join(" "),
        if bad.is_empty() {
            String::new()
        } else {
            format!("; {}", bad.join("; "))
        },
        counts_ok
    );
    // only WQH8 is allowed to disagree
    let only_wqh8 = bad.len() == 1 && bad[0].starts_with("WQH8") && counts_ok;
    s.record("5", false, pass, detail);
    s.record(
        "5a",
        true,
        only_wqh8,
        "every other leading constant matches".into(),
    );
}

fn main_terms(s: &mut Suite) {
    let mut bad = Vec::new();
    let mut published_ok = true;
    for (i, &m) in ORDER.iter().enumerate() {
        let live = table1_coefficient(s.method(m));
        let got = round_nearest(&asymptotic_main_term(&live, 10).unwrap());
        if got != MAIN_TERMS[i] {
            bad.push(format!("{m}: {got} vs {}", MAIN_TERMS[i]));
        }
        let published = AsymptoticCoefficient {
            coefficient: published_coefficient(m).unwrap(),
            ..live
        };
        published_ok &=
            round_nearest(&asymptotic_main_term(&published, 10).unwrap()) == MAIN_TERMS[i];
    }
    let pass = bad.is_empty();
    let detail = if pass {
        "order-ten main terms match".into()
    } else {
        format!(
            "{}; published constants reproduce every published term: {published_ok}",
            bad.join("; ")
        )
    };
    let only_wqh8 = bad.len() == 1 && bad[0].starts_with("WQH8") && published_ok;
    s.record("6", false, pass, detail);
    s.record(
        "6a",
        true,
        only_wqh8,
        "every other order-ten main term matches".into(),
    );
}

fn distinguishing(s: &mut Suite) {
    let mut bad = Vec::new();
    let mut total = 0;
    for m in ORDER {
        let sm = s.method(m);
        for g in &sm.graphs.labelled {
            total += 1;
            let d = is_distinguishing(&sm.q, g).unwrap();
            let sd = is_switching_distinguishing(&sm.q, g).unwrap();
            if !(d && sd) {
                bad.push(format!("{m} {g}"));
            }
        }
    }
    let q = build_qabc(3, 3, -1).unwrap();
    let counter = !is_distinguishing(&q, &Graph::empty(9)).unwrap();
    let pass = bad.is_empty() && counter;
    let detail = format!(
        "{total} labelled switching graphs distinguishing and switching-distinguishing: {}; Q(3,3,-1) counterexample rejected: {counter}",
        bad.is_empty()
    );
    s.record("7", true, pass, detail);
}

fn properties(s: &mut Suite) {
    let mut bad = Vec::new();
    let mut verified = 0;
    let small: Vec<(MethodId, usize)> = s.reports.keys().filter(|k| k.1 <= 8).copied().collect();
    for (m, n) in small {
        let sm = &s.methods[&m];
        for g in s.reports[&(m, n)].canonical_set.as_ref().unwrap() {
            match find_mate(sm, g) {
                Some((inst, mate)) => {
                    let again = apply_switching(g, &inst).unwrap();
                    if again != mate
                        || !is_generalized_cospectral(g, &mate)
                        || canonical_graph(g) == canonical_graph(&mate)
                    {
                        bad.push(format!("{m} {g}: bad mate"));
                    }
                    verified += 1;
                }
                None => bad.push(format!("{m} {g}: no mate")),
            }
        }
    }

    let mut deterministic = true;
    for m in ORDER {
        let one = s.reports[&(m, 8)].clone();
        let four = {
            let job = CensusJob {
                emit_graphs: true,
                worker_count: 4,
                ..CensusJob::new(m, 8)
            };
            run_census_with(s.method(m), &job).unwrap()
        };
        deterministic &= one.canonical_set == four.canonical_set && one.count == four.count;
    }

    let mut closed = true;
    for r in s.reports.values() {
        let set: BTreeSet<Graph> = r.canonical_set.as_ref().unwrap().iter().copied().collect();
        closed &= set
            .iter()
            .all(|g| set.contains(&canonical_graph(&g.complement())));
    }

    let gm4 = s.method(MethodId::Gm4);
    let mut oracle_ok = true;
    for n in 4..=6 {
        let oracle: BTreeSet<Graph> = generate_all_graphs(n)
            .filter(|g| {
                find_switching_instances(g, gm4).iter().any(|inst| {
                    let h = apply_switching(g, inst).unwrap();
                    canonical_graph(&h) != canonical_graph(g)
                })
            })
            .map(|g| canonical_graph(&g))
            .collect();
        let job = CensusJob {
            emit_graphs: true,
            ..CensusJob::new(MethodId::Gm4, n)
        };
        let got: BTreeSet<Graph> = run_census_with(gm4, &job)
            .unwrap()
            .canonical_set
            .unwrap()
            .into_iter()
            .collect();
        oracle_ok &= got == oracle;
    }

    let pass = bad.is_empty() && deterministic && closed && oracle_ok;
    let detail = format!(
        "{verified} emitted graphs at n<=8 verified{}; 1 vs 4 workers identical: {deterministic}; complement closure: {closed}; GM4 oracle at n<=6: {oracle_ok}",
        if bad.is_empty() { String::new() } else { format!(" ({} bad: {})", bad.len(), bad[..bad.len().min(3)].join(", ")) }
    );
    s.record("8", true, pass, detail);
}

fn appendix(s: &mut Suite) {
    let start = Instant::now();
    let id2 = vec![vec![1, 0], vec![0, 1]];
    let id3 = vec![vec![1, 0], vec![0, 1], vec![0, 0]];
    let mut ok = true;
    for (k, b, v) in [
        (2, Graph::empty(2), &id2),
        (2, Graph::complete(2), &id2),
        (3, Graph::empty(2), &id3),
    ] {
        let g = build_appendix_graph(k, 2, &b, v, v).unwrap();
        let c = verify_appendix_claims(&g, k).unwrap();
        ok &= c.isomorphic && !c.fixing_isomorphism_exists;
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = ok && secs < 1.0;
    s.record(
        "9",
        true,
        pass,
        format!("(k,l) in {{(2,2),(3,2)}}: mate isomorphic, no fixing isomorphism ({secs:.3}s)"),
    );
}

fn trend(s: &mut Suite) {
    let coef = table1_coefficient(s.method(MethodId::Gm4));
    let ratios: Vec<Ratio<i128>> = (6..=11)
        .map(|n| gm4_equivalent_form(n).unwrap() / asymptotic_main_term(&coef, n).unwrap())
        .collect();
    let one = Ratio::from_integer(1);
    let dist = |r: &Ratio<i128>| if *r > one { r - one } else { one - r };
    let monotone = ratios.windows(2).all(|w| dist(&w[1]) < dist(&w[0]));
    let shown: Vec<String> = ratios.iter().map(|r| round_decimal(r, 3)).collect();
    s.record(
        "10",
        false,
        monotone,
        format!(
            "n^3 g(n-1)/24 over the GM4 main term, n=6..11: {}; not monotone while g_k is far from 2^C(k,2)/k!",
            shown.join(" ")
        ),
    );

    // with g_k replaced by its leading term 2^C(k,2)/k! both forms agree up
    // to n^3/((n-1)(n-2)(n-3)), which decreases to 1
    let lead = |k: i128| -> Ratio<i128> {
        Ratio::new(1i128 << (k * (k - 1) / 2), (1..=k).product::<i128>().max(1))
    };
    let smooth: Vec<Ratio<i128>> = (6..=11i128)
        .map(|n| {
            Ratio::new(n.pow(3), 24) * lead(n - 1)
                / (Ratio::new(1, 3) * Ratio::from_integer(8i128.pow(n as u32 - 4)) * lead(n - 4))
        })
        .collect();
    let ok = smooth.windows(2).all(|w| w[1] < w[0]) && smooth.iter().all(|r| *r > one);
    let shown: Vec<String> = smooth.iter().map(|r| round_decimal(r, 3)).collect();
    s.record(
        "10a",
        true,
        ok,
        format!(
            "same ratio with the leading term for g_k decreases to 1: {}",
            shown.join(" ")
        ),
    );
}

fn long_tier(s: &mut Suite) {
    let threads = s.threads;
    let want = counts_at(10);
    let mut bad = Vec::new();
    let mut ratio_bad = Vec::new();
    for (i, &m) in ORDER.iter().enumerate() {
        let r = s.census(m, 10, threads).clone();
        if r.count != want[i] {
            bad.push(format!("{m}: {} vs {}", r.count, want[i]));
        }
        let c = formula_comparison(s.method(m), &r).unwrap();
        if c.ratio != RATIOS[i] {
            ratio_bad.push(format!("{m}: {} vs {}", c.ratio, RATIOS[i]));
        }
    }
    // the published order-ten GM8 count disagrees with the published overlaps
    let gm_known = bad.len() == 1 && bad[0].starts_with("GM8: 6098");
    s.record(
        "L1",
        false,
        bad.is_empty(),
        if bad.is_empty() {
            "order-ten counts match".into()
        } else {
            bad.join("; ")
        },
    );
    s.record(
        "L1a",
        true,
        gm_known,
        "every other order-ten count matches".into(),
    );
    let wqh8_known = ratio_bad.len() == 1 && ratio_bad[0].starts_with("WQH8");
    s.record(
        "L2",
        false,
        ratio_bad.is_empty(),
        if ratio_bad.is_empty() {
            "order-ten ratios match".into()
        } else {
            ratio_bad.join("; ")
        },
    );
    s.record(
        "L2a",
        true,
        wqh8_known,
        "every other order-ten ratio matches".into(),
    );
}

fn main() -> ExitCode {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let methods = ORDER
        .iter()
        .map(|&m| (m, SwitchingMethod::new(m).unwrap()))
        .collect();
    let mut s = Suite {
        methods,
        reports: BTreeMap::new(),
        threads,
        outcomes: Vec::new(),
    };

    table_tier(&mut s, "1", &[7, 8], 1);
    table_tier(&mut s, "2", &[9], threads);
    overlaps(&mut s);
    closed_form(&mut s);
    coefficients(&mut s);
    main_terms(&mut s);
    distinguishing(&mut s);
    properties(&mut s);
    appendix(&mut s);
    trend(&mut s);
    if std::env::var_os("SWITCHENUM_ALLOW_LONG").is_some() {
        long_tier(&mut s);
    } else {
        println!("[SKIP] order-ten census checks; set SWITCHENUM_ALLOW_LONG=1 to run them");
    }

    let unexpected: Vec<&Outcome> = s
        .outcomes
        .iter()
        .filter(|o| o.pass != o.expect_pass)
        .collect();
    let passed = s.outcomes.iter().filter(|o| o.pass).count();
    println!(
        "acceptance: {passed} passed, {} failed ({} expected), {} unexpected",
        s.outcomes.len() - passed,
        s.outcomes
            .iter()
            .filter(|o| !o.pass && !o.expect_pass)
            .count(),
        unexpected.len()
    );
    for o in &unexpected {
        println!("unexpected outcome for criterion {}: {}", o.id, o.detail);
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
