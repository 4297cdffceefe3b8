//! Enumeration of all graphs of a given order that have a cospectral mate
//! through one switching method.
//!
//! Candidates are assembled in block form `[[Γ, V], [V^T, C]]` from a
//! switching graph `Γ`, a graph `C` on the remaining vertices and a matrix
//! `V` whose columns are respecting vectors. The switch replaces `Γ` by
//! `Q^T Γ Q` and `V` by `Q^T V`; when the two graphs are not isomorphic both
//! canonical forms are recorded. One class of each complement pair is
//! scanned and complements are added at the end.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::MethodId;
use crate::formulas::{
    asymptotic_main_term, graph_count, published_coefficient, round_decimal, round_nearest,
    ser_ratio, table1_coefficient, AsymptoticCoefficient,
};
use crate::graph::{
    automorphism_group, canonical_graph, generate_all_graphs, is_generalized_cospectral, Graph,
    MAX_ORDER,
};
use crate::perm::Perm;
use crate::switching::{
    apply_switching, find_switching_instances, preserves_vectors, SwitchingInstance,
    SwitchingMethod,
};

/// Largest order a census accepts.
pub const MAX_CENSUS_ORDER: usize = 10;

/// Unreduced candidate count above which `allow_long` is required.
pub const LONG_RUN_CANDIDATES: u128 = 20_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct CensusJob {
    pub method: MethodId,
    pub n: usize,
    /// Restricts the scan to these switching-graph classes.
    pub gamma_filter: Option<Vec<usize>>,
    pub worker_count: usize,
    pub emit_graphs: bool,
    /// Skip candidates that are images of others under symmetries of `Γ`.
    pub reduce_symmetry: bool,
    pub allow_long: bool,
}

impl CensusJob {
    pub fn new(method: MethodId, n: usize) -> Self {
        CensusJob {
            method,
            n,
            gamma_filter: None,
            worker_count: 1,
            emit_graphs: false,
            reduce_symmetry: true,
            allow_long: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaContribution {
    pub class: usize,
    pub gamma: Graph,
    /// Distinct graphs with a mate found through this class.
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub method: MethodId,
    pub n: usize,
    pub count: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub fraction: Ratio<i128>,
    /// Canonical forms in graph6 order, when requested.
    pub canonical_set: Option<Vec<Graph>>,
    pub per_gamma: Vec<GammaContribution>,
    pub candidates_examined: u64,
    pub wall_time_secs: f64,
}

/// `count / g_n` to three decimals, halves to even.
pub fn fraction_report(report: &CensusReport) -> String {
    round_decimal(&report.fraction, 3)
}

/// Estimated candidates without symmetry reduction.
pub fn candidate_estimate(method: &SwitchingMethod, n: usize, classes: usize) -> Result<u128> {
    let k = n.saturating_sub(method.dimension());
    let per = (method.vq.len() as u128).pow(k as u32) * graph_count(k)? as u128;
    Ok(per * classes as u128)
}

/// Runs a census for an already prepared method.
pub fn run_census_with(method: &SwitchingMethod, job: &CensusJob) -> Result<CensusReport> {
    let start = Instant::now();
    let m = method.dimension();
    let n = job.n;
    if n > MAX_CENSUS_ORDER {
        return Err(Error::ResourceGuard(format!(
            "census order {n} exceeds the supported maximum {MAX_CENSUS_ORDER}"
        )));
    }
    if n > MAX_ORDER || n < m {
        return Err(Error::Range(format!(
            "census order {n} must lie between the switching-set size {m} and {MAX_CENSUS_ORDER}"
        )));
    }
    if job.worker_count == 0 {
        return Err(Error::arg("worker count must be positive"));
    }
    if job.method != method.id {
        return Err(Error::arg("job and method disagree"));
    }

    let chosen: Vec<usize> = match &job.gamma_filter {
        None => method.selected.clone(),
        Some(f) => {
            for &c in f {
                if !method.selected.contains(&c) {
                    return Err(Error::arg(format!(
                        "class {c} is not a switching graph class of {}",
                        method.id
                    )));
                }
            }
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            f
        }
    };
    let classes = &method.graphs.classes;
    // scan one class per complement pair
    let scanned: Vec<usize> = chosen
        .iter()
        .copied()
        .filter(|&c| {
            let comp = classes[c].complement;
            !(comp < c && chosen.contains(&comp))
        })
        .collect();

    let estimate = candidate_estimate(method, n, scanned.len())?;
    if estimate > LONG_RUN_CANDIDATES && !job.allow_long {
        return Err(Error::ResourceGuard(format!(
            "{} at order {n} assembles about {estimate} candidates; pass allow_long to run it",
            method.id
        )));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(job.worker_count)
        .build()
        .map_err(|e| Error::ResourceGuard(format!("cannot start worker pool: {e}")))?;

    let k = n - m;
    let rests: Vec<Graph> = if k == 0 {
        vec![Graph::empty(0)]
    } else {
        generate_all_graphs(k).collect()
    };

    let mut examined = 0u64;
    let mut found: BTreeMap<usize, HashSet<u64>> = BTreeMap::new();
    for &c in &scanned {
        let class = &classes[c];
        let group = if job.reduce_symmetry {
            reduction_group(method, &class.gamma)
        } else {
            Vec::new()
        };
        let scan = Scan {
            m,
            n,
            gamma: class.gamma,
            switched: class.switched,
            vectors: method.vq.vectors(),
            images: method.vq.images(),
            group: &group,
        };
        let parts: Vec<(Vec<u64>, u64)> =
            pool.install(|| rests.par_iter().map(|rest| scan.run(rest)).collect());
        let mut set = HashSet::new();
        for (keys, count) in parts {
            examined += count;
            set.extend(keys);
        }
        found.insert(c, set);
    }

    let mut all: HashSet<u64> = HashSet::new();
    let mut per_gamma = Vec::new();
    for &c in &scanned {
        let set = &found[&c];
        all.extend(set.iter().copied());
        per_gamma.push(GammaContribution {
            class: c,
            gamma: classes[c].gamma,
            count: set.len(),
        });
        let comp = classes[c].complement;
        if comp != c && chosen.contains(&comp) {
            let comps: Vec<u64> =
                pool.install(|| set.par_iter().map(|&key| complement_key(n, key)).collect());
            all.extend(comps);
            per_gamma.push(GammaContribution {
                class: comp,
                gamma: classes[comp].gamma,
                count: set.len(),
            });
        }
    }
    per_gamma.sort_by_key(|p| p.class);

    let count = all.len();
    let canonical_set = job.emit_graphs.then(|| {
        let mut keys: Vec<u64> = all.into_iter().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|key| Graph::from_g6_key(n, key as u128))
            .collect()
    });
    Ok(CensusReport {
        method: method.id,
        n,
        count,
        fraction: Ratio::new(count as i128, graph_count(n)? as i128),
        canonical_set,
        per_gamma,
        candidates_examined: examined,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Builds the method and runs the census.
pub fn run_census(job: &CensusJob) -> Result<CensusReport> {
    let method = SwitchingMethod::new(job.method)?;
    run_census_with(&method, job)
}

fn complement_key(n: usize, key: u64) -> u64 {
    canonical_graph(&Graph::from_g6_key(n, key as u128).complement()).g6_key() as u64
}

/// Automorphisms of `Γ` that preserve the respecting vectors and commute
/// with the switch, as index maps on the respecting vectors. The identity is
/// left out.
fn reduction_group(method: &SwitchingMethod, gamma: &Graph) -> Vec<Vec<u16>> {
    let m = gamma.order();
    let eq: HashSet<&Perm> = method.equivariant.iter().collect();
    automorphism_group(gamma)
        .elements(m)
        .into_iter()
        .filter(|s| !s.is_identity() && preserves_vectors(&method.vq, s) && eq.contains(s))
        .map(|s| {
            method
                .vq
                .vectors()
                .iter()
                .map(|&v| {
                    method
                        .vq
                        .position(s.apply_mask(v))
                        .expect("stabiliser maps respecting vectors to respecting vectors")
                        as u16
                })
                .collect()
        })
        .collect()
}

struct Scan<'a> {
    m: usize,
    n: usize,
    gamma: Graph,
    switched: Graph,
    vectors: &'a [u32],
    images: &'a [u32],
    group: &'a [Vec<u16>],
}

impl Scan<'_> {
    /// All candidates with rest graph `rest`; returns the recorded canonical
    /// keys and the number of candidates examined.
    fn run(&self, rest: &Graph) -> (Vec<u64>, u64) {
        let k = self.n - self.m;
        let mut cols = vec![0usize; k];
        let mut out = Vec::new();
        let mut examined = 0u64;
        let alive: Vec<usize> = (0..self.group.len()).collect();
        self.descend(0, &alive, &mut cols, rest, &mut out, &mut examined);
        out.sort_unstable();
        out.dedup();
        (out, examined)
    }

    fn descend(
        &self,
        depth: usize,
        ties: &[usize],
        cols: &mut [usize],
        rest: &Graph,
        out: &mut Vec<u64>,
        examined: &mut u64,
    ) {
        if depth == cols.len() {
            *examined += 1;
            self.test(cols, rest, out);
            return;
        }
        let mut next = Vec::with_capacity(ties.len());
        'choice: for t in 0..self.vectors.len() {
            next.clear();
            for &g in ties {
                let image = self.group[g][t] as usize;
                if image < t {
                    continue 'choice;
                }
                if image == t {
                    next.push(g);
                }
            }
            cols[depth] = t;
            self.descend(depth + 1, &next, cols, rest, out, examined);
        }
    }

    fn test(&self, cols: &[usize], rest: &Graph, out: &mut Vec<u64>) {
        let (m, n) = (self.m, self.n);
        let mut a = [0u16; MAX_ORDER];
        let mut b = [0u16; MAX_ORDER];
        a[..m].copy_from_slice(self.gamma.rows());
        b[..m].copy_from_slice(self.switched.rows());
        for (j, &t) in cols.iter().enumerate() {
            let v = self.vectors[t] as u16;
            let w = self.images[t] as u16;
            let r = rest.neighbors(j) << m;
            a[m + j] = r | v;
            b[m + j] = r | w;
            let bit = 1u16 << (m + j);
            for i in 0..m {
                if (v >> i) & 1 == 1 {
                    a[i] |= bit;
                }
                if (w >> i) & 1 == 1 {
                    b[i] |= bit;
                }
            }
        }
        let ga = Graph::from_rows_unchecked(n, a);
        let gb = Graph::from_rows_unchecked(n, b);
        let ca = canonical_graph(&ga);
        let cb = canonical_graph(&gb);
        if ca != cb {
            out.push(ca.g6_key() as u64);
            out.push(cb.g6_key() as u64);
        }
    }
}

/// Intersection sizes of the canonical sets for every non-empty subset of
/// the reports, keyed by the sorted method names, plus the union size.
#[derive(Clone, Debug, Serialize)]
pub struct OverlapReport {
    pub n: usize,
    pub intersections: Vec<(Vec<MethodId>, usize)>,
    /// Union size by inclusion-exclusion over the intersections.
    pub union: i64,
}

pub fn overlap_report(reports: &[CensusReport]) -> Result<OverlapReport> {
    let n = reports
        .first()
        .ok_or_else(|| Error::arg("no reports given"))?
        .n;
    if reports.iter().any(|r| r.n != n) {
        return Err(Error::arg("all reports must share one order"));
    }
    if reports.len() > 16 {
        return Err(Error::arg("at most 16 methods can be overlapped"));
    }
    let sets: Vec<HashSet<Graph>> = reports
        .iter()
        .map(|r| {
            r.canonical_set
                .as_ref()
                .map(|s| s.iter().copied().collect())
                .ok_or_else(|| Error::arg(format!("report for {} lacks its graph set", r.method)))
        })
        .collect::<Result<_>>()?;
    let mut intersections = Vec::new();
    let mut union = 0i64;
    for mask in 1u32..1 << reports.len() {
        let idx: Vec<usize> = (0..reports.len())
            .filter(|i| (mask >> i) & 1 == 1)
            .collect();
        let size = sets[idx[0]]
            .iter()
            .filter(|g| idx[1..].iter().all(|&i| sets[i].contains(g)))
            .count();
        let sign = if idx.len() % 2 == 1 { 1 } else { -1 };
        union += sign * size as i64;
        intersections.push((idx.iter().map(|&i| reports[i].method).collect(), size));
    }
    Ok(OverlapReport {
        n,
        intersections,
        union,
    })
}

/// Runs every job with graph output and overlaps the results.
pub fn overlap_jobs(jobs: &[CensusJob]) -> Result<OverlapReport> {
    let n = jobs.first().ok_or_else(|| Error::arg("no jobs given"))?.n;
    if jobs.iter().any(|j| j.n != n) {
        return Err(Error::arg("all jobs must share one order"));
    }
    let reports = jobs
        .iter()
        .map(|j| {
            let mut j = j.clone();
            j.emit_graphs = true;
            run_census(&j)
        })
        .collect::<Result<Vec<_>>>()?;
    overlap_report(&reports)
}

/// A census count set against the asymptotic main term.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaComparison {
    pub method: MethodId,
    pub n: usize,
    pub census: usize,
    /// Main term from the live coefficient, rounded to the nearest integer.
    pub formula: i128,
    /// `census / formula` to three decimals.
    pub ratio: String,
    /// Main term from the published coefficient, where one exists.
    pub published_formula: Option<i128>,
}

pub fn formula_comparison(
    method: &SwitchingMethod,
    report: &CensusReport,
) -> Result<FormulaComparison> {
    if report.method != method.id {
        return Err(Error::arg("report and method disagree"));
    }
    let coef = table1_coefficient(method);
    let main = asymptotic_main_term(&coef, report.n)?;
    let published_formula = published_coefficient(method.id)
        .map(|c| {
            let coef = AsymptoticCoefficient {
                coefficient: c,
                ..coef.clone()
            };
            asymptotic_main_term(&coef, report.n).map(|t| round_nearest(&t))
        })
        .transpose()?;
    let ratio = if main == Ratio::from_integer(0) {
        "0.000".to_string()
    } else {
        round_decimal(&(Ratio::from_integer(report.count as i128) / main), 3)
    };
    Ok(FormulaComparison {
        method: method.id,
        n: report.n,
        census: report.count,
        formula: round_nearest(&main),
        ratio,
        published_formula,
    })
}

/// A switching instance in `g` on one of the classes the census scans whose
/// switch is a non-isomorphic, generalized cospectral mate, with that mate.
pub fn find_mate(method: &SwitchingMethod, g: &Graph) -> Option<(SwitchingInstance, Graph)> {
    let canon = canonical_graph(g);
    find_switching_instances(g, method)
        .into_iter()
        .filter(|inst| method.selected.contains(&inst.class))
        .filter_map(|inst| apply_switching(g, &inst).ok().map(|h| (inst, h)))
        .find(|(_, h)| canonical_graph(h) != canon && is_generalized_cospectral(g, h))
}
