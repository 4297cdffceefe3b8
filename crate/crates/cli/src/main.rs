use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use switchenum::census::{
    find_mate, formula_comparison, fraction_report, overlap_report, run_census_with, CensusJob,
};
use switchenum::exactmat::MethodId;
use switchenum::formulas::{
    asymptotic_main_term, count_graphs_live, graph_count, published_coefficient, ratio_string,
    round_nearest, table1_coefficient,
};
use switchenum::graph::{
    char_poly, graph6_decode, graph6_encode, is_cospectral, is_generalized_cospectral, isomorphic,
};
use switchenum::switching::{
    apply_switching, bit_string, build_appendix_graph, find_switching_instances,
    verify_appendix_claims, SwitchingMethod,
};
use switchenum::{Error, Graph};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "switchenum",
    version,
    about = "Cospectral switching methods and graph censuses"
)]
struct Cli {
    /// Print timings and progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit JSON, to stdout or to the given file.
    #[arg(long, value_name = "FILE", num_args = 0..=1)]
    json: Option<Option<PathBuf>>,
}

#[derive(Args)]
struct Threads {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "SWITCHENUM_THREADS")]
    threads: Option<usize>,
}

impl Threads {
    fn count(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Catalogue of the named switching methods.
    Methods {
        #[command(flatten)]
        out: Output,
    },
    /// Respecting vectors of a method and their images.
    Respecting {
        #[arg(long)]
        method: MethodId,
        #[command(flatten)]
        out: Output,
    },
    /// Switching graph classes of a method.
    SwitchingGraphs {
        #[arg(long)]
        method: MethodId,
        /// List only the classes used by the census.
        #[arg(long)]
        selected: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Leading coefficients and main terms.
    Formula {
        /// A single method; all named methods when omitted.
        #[arg(long)]
        method: Option<MethodId>,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Graphs of one order with a cospectral mate through one method.
    Census {
        #[arg(long)]
        method: MethodId,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        threads: Threads,
        /// Write the canonical graphs, one graph6 string per line.
        #[arg(long, value_name = "FILE")]
        graphs: Option<PathBuf>,
        /// Restrict to these switching graph classes.
        #[arg(long, value_delimiter = ',')]
        gamma: Option<Vec<usize>>,
        /// Disable the symmetry reduction.
        #[arg(long)]
        no_reduce: bool,
        /// Permit runs above the candidate guard.
        #[arg(long)]
        allow_long: bool,
        /// Re-verify this many random graphs from the result.
        #[arg(long, default_value_t = 0)]
        verify_samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also compare with the asymptotic main term.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Intersections of census results for several methods.
    Overlap {
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<MethodId>,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        threads: Threads,
        #[arg(long)]
        allow_long: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Switching instances of a method in one graph.
    Check {
        /// Graph in graph6.
        graph: String,
        #[arg(long)]
        method: MethodId,
        #[command(flatten)]
        out: Output,
    },
    /// Isomorphism and cospectrality of two graphs.
    VerifyPair {
        first: String,
        second: String,
        #[command(flatten)]
        out: Output,
    },
    /// The construction where switching gives an isomorphic graph that no
    /// isomorphism fixing the switching set explains.
    Appendix {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Graph6 of B, the graph on each of the last three blocks.
        #[arg(long)]
        b: Option<String>,
        /// Rows of V1 as 0/1 strings, comma separated.
        #[arg(long, value_delimiter = ',')]
        v1: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        v2: Option<Vec<String>>,
        #[command(flatten)]
        out: Output,
    },
    /// Number of graphs of an order up to isomorphism.
    Gcount {
        order: usize,
        /// Count by generation instead of the table.
        #[arg(long)]
        live: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Failure::Core(Error::ResourceGuard(_)) => 2,
                _ => 1,
            })
        }
    }
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => f.write_str(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<switchenum::FormatError> for Failure {
    fn from(e: switchenum::FormatError) -> Self {
        Failure::Core(e.into())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn emit<T: Serialize>(out: &Output, value: &T, plain: impl FnOnce() -> String) -> CliResult {
    match &out.json {
        None => write_stdout(&plain()),
        Some(path) => {
            let text =
                serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
            match path {
                None => write_stdout(&(text + "\n")),
                Some(p) => fs::write(p, text + "\n")
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
            }
        }
    }
}

fn write_stdout(text: &str) -> CliResult {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn parse_graph(text: &str) -> CliResult<Graph> {
    Ok(graph6_decode(text.trim())?)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            + "\n"
    };
    let mut s = line(header.to_vec());
    s += &line(
        width
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn run(cli: Cli) -> CliResult {
    let verbose = cli.verbose;
    match cli.command {
        Command::Methods { out } => cmd_methods(&out),
        Command::Respecting { method, out } => {
            let sm = SwitchingMethod::new(method)?;
            let m = sm.dimension();
            let rows: Vec<(String, String)> = sm
                .vq
                .vectors()
                .iter()
                .zip(sm.vq.images())
                .map(|(&v, &w)| (bit_string(v, m), bit_string(w, m)))
                .collect();
            let value = json!({
                "method": method,
                "m": m,
                "count": rows.len(),
                "vectors": rows.iter().map(|(v, w)| json!({"v": v, "image": w})).collect::<Vec<_>>(),
            });
            emit(&out, &value, || {
                let body: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(v, w)| vec![v.clone(), w.clone()])
                    .collect();
                format!("{method}: {} respecting vectors\n", rows.len())
                    + &table(&["v", "Q^T v"], &body)
            })
        }
        Command::SwitchingGraphs {
            method,
            selected,
            out,
        } => {
            let sm = SwitchingMethod::new(method)?;
            let classes: Vec<(usize, &switchenum::switching::GammaClass)> = sm
                .graphs
                .classes
                .iter()
                .enumerate()
                .filter(|(i, _)| !selected || sm.selected.contains(i))
                .collect();
            let value = json!({
                "method": method,
                "labelled": sm.graphs.labelled.len(),
                "unlabelled": sm.graphs.unlabelled.len(),
                "classes": classes.iter().map(|(i, c)| json!({
                    "class": i,
                    "gamma": c.gamma,
                    "switched": c.switched,
                    "iso_class": c.iso_class,
                    "complement": c.complement,
                    "labellings": c.orbit_size,
                    "aut_order": c.aut_order,
                    "autq_order": c.autq_order,
                    "distinguishing": c.distinguishing,
                    "switching_distinguishing": c.switching_distinguishing,
                    "selected": sm.selected.contains(i),
                })).collect::<Vec<_>>(),
            });
            emit(&out, &value, || {
                let rows: Vec<Vec<String>> = classes
                    .iter()
                    .map(|(i, c)| {
                        vec![
                            i.to_string(),
                            c.gamma.to_string(),
                            c.switched.to_string(),
                            c.complement.to_string(),
                            c.aut_order.to_string(),
                            c.autq_order.to_string(),
                            yes(c.distinguishing),
                            yes(c.switching_distinguishing),
                        ]
                    })
                    .collect();
                format!(
                    "{method}: {} labelled, {} unlabelled switching graphs\n",
                    sm.graphs.labelled.len(),
                    sm.graphs.unlabelled.len()
                ) + &table(
                    &[
                        "class", "gamma", "switched", "compl", "|Aut|", "|Aut_Q|", "dist",
                        "sw-dist",
                    ],
                    &rows,
                )
            })
        }
        Command::Formula { method, order, out } => {
            let ids = method.map_or_else(|| MethodId::NAMED.to_vec(), |m| vec![m]);
            let mut records = Vec::new();
            for id in ids {
                let sm = SwitchingMethod::new(id)?;
                let coef = table1_coefficient(&sm);
                let main = asymptotic_main_term(&coef, order)?;
                records.push(json!({
                    "method": id,
                    "n": order,
                    "coefficient": ratio_string(&coef.coefficient),
                    "published_coefficient": published_coefficient(id).map(|c| ratio_string(&c)),
                    "base": coef.base,
                    "m": coef.m,
                    "main_term": ratio_string(&main),
                    "main_term_rounded": round_nearest(&main),
                    "integral": main.is_integer(),
                }));
            }
            let value = if records.len() == 1 {
                records[0].clone()
            } else {
                json!(records)
            };
            emit(&out, &value, || {
                let rows: Vec<Vec<String>> = records
                    .iter()
                    .map(|r| {
                        vec![
                            r["method"].as_str().unwrap_or_default().to_string(),
                            format!(
                                "{}^(n-{}) g_(n-{}) ({} + o(1))",
                                r["base"],
                                r["m"],
                                r["m"],
                                r["coefficient"].as_str().unwrap_or_default()
                            ),
                            r["published_coefficient"]
                                .as_str()
                                .unwrap_or("-")
                                .to_string(),
                            r["main_term_rounded"].to_string(),
                        ]
                    })
                    .collect();
                table(
                    &["method", "count", "published", &format!("n={order}")],
                    &rows,
                )
            })
        }
        Command::Census {
            method,
            order,
            threads,
            graphs,
            gamma,
            no_reduce,
            allow_long,
            verify_samples,
            seed,
            compare,
            out,
        } => {
            let sm = SwitchingMethod::new(method)?;
            let job = CensusJob {
                method,
                n: order,
                gamma_filter: gamma,
                worker_count: threads.count(),
                emit_graphs: graphs.is_some() || verify_samples > 0,
                reduce_symmetry: !no_reduce,
                allow_long,
            };
            let mut report = run_census_with(&sm, &job)?;
            if verbose {
                eprintln!(
                    "{method} n={order}: {} candidates in {:.2}s on {} threads",
                    report.candidates_examined, report.wall_time_secs, job.worker_count
                );
            }
            let mut verified = None;
            if verify_samples > 0 {
                let set = report.canonical_set.as_deref().unwrap_or_default();
                let mut rng = StdRng::seed_from_u64(seed);
                let sample: Vec<&Graph> = set
                    .choose_multiple(&mut rng, verify_samples.min(set.len()))
                    .collect();
                let failures: Vec<String> = sample
                    .iter()
                    .filter(|g| find_mate(&sm, g).is_none())
                    .map(|g| g.to_string())
                    .collect();
                if !failures.is_empty() {
                    return Err(Failure::Io(format!(
                        "no verified mate for {}",
                        failures.join(" ")
                    )));
                }
                verified = Some(sample.len());
            }
            if let Some(path) = &graphs {
                let mut text = String::new();
                for g in report.canonical_set.as_deref().unwrap_or_default() {
                    text += &graph6_encode(g);
                    text.push('\n');
                }
                fs::write(path, text)
                    .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            let comparison = compare
                .then(|| formula_comparison(&sm, &report))
                .transpose()?;
            let fraction = fraction_report(&report);
            report.canonical_set = None;
            let value = json!({
                "report": report,
                "fraction_decimal": fraction,
                "verified_samples": verified,
                "comparison": comparison,
            });
            emit(&out, &value, || {
                let mut s = format!(
                    "{method}  n={order}  count={}  fraction={} ({})\n",
                    report.count,
                    ratio_string(&report.fraction),
                    fraction
                );
                let rows: Vec<Vec<String>> = report
                    .per_gamma
                    .iter()
                    .map(|p| {
                        vec![
                            p.class.to_string(),
                            p.gamma.to_string(),
                            p.count.to_string(),
                        ]
                    })
                    .collect();
                s += &table(&["class", "gamma", "graphs"], &rows);
                if let Some(n) = verified {
                    s += &format!("verified {n} sampled graphs\n");
                }
                if let Some(c) = &comparison {
                    s += &format!("formula {}  enumeration/formula {}\n", c.formula, c.ratio);
                }
                s
            })
        }
        Command::Overlap {
            methods,
            order,
            threads,
            allow_long,
            out,
        } => {
            let mut reports = Vec::new();
            for &id in &methods {
                let sm = SwitchingMethod::new(id)?;
                if order < sm.dimension() {
                    return Err(Error::Range(format!(
                        "{id} needs order at least {}",
                        sm.dimension()
                    ))
                    .into());
                }
                let job = CensusJob {
                    worker_count: threads.count(),
                    emit_graphs: true,
                    allow_long,
                    ..CensusJob::new(id, order)
                };
                reports.push(run_census_with(&sm, &job)?);
            }
            let overlap = overlap_report(&reports)?;
            let value = json!({
                "n": order,
                "subsets": overlap.intersections.iter().map(|(ids, size)| json!({"methods": ids, "size": size})).collect::<Vec<_>>(),
                "union": overlap.union,
            });
            emit(&out, &value, || {
                let rows: Vec<Vec<String>> = overlap
                    .intersections
                    .iter()
                    .map(|(ids, size)| {
                        let names: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
                        vec![names.join(" ∩ "), size.to_string()]
                    })
                    .collect();
                table(&["methods", &format!("n={order}")], &rows)
                    + &format!("union {}\n", overlap.union)
            })
        }
        Command::Check { graph, method, out } => {
            let g = parse_graph(&graph)?;
            let sm = SwitchingMethod::new(method)?;
            if g.order() < sm.dimension() {
                return Err(Error::Range(format!(
                    "graph too small: order {} below the switching-set size {}",
                    g.order(),
                    sm.dimension()
                ))
                .into());
            }
            let canon = switchenum::graph::canonical_graph(&g);
            let mut records = Vec::new();
            for inst in find_switching_instances(&g, &sm) {
                let h = apply_switching(&g, &inst)?;
                let mate = switchenum::graph::canonical_graph(&h) != canon;
                records.push(json!({
                    "instance": inst,
                    "class": inst.class,
                    "orbit_count": inst.orbit_count,
                    "switched": h,
                    "mate": mate,
                    "char_poly": char_poly(&g).to_string(),
                    "switched_char_poly": char_poly(&h).to_string(),
                    "complement_char_poly": char_poly(&g.complement()).to_string(),
                    "switched_complement_char_poly": char_poly(&h.complement()).to_string(),
                }));
            }
            let mates = records.iter().filter(|r| r["mate"] == true).count();
            let value = json!({"graph": g, "method": method, "instances": records, "mates": mates});
            emit(&out, &value, || {
                let mut s = format!(
                    "{g} under {method}: {} instance classes, {mates} with a non-isomorphic switch\n",
                    records.len()
                );
                for r in &records {
                    s += &format!(
                        "  tuple {}  gamma {}  ->  {}{}\n",
                        r["instance"]["tuple"],
                        r["instance"]["gamma"].as_str().unwrap_or_default(),
                        r["switched"].as_str().unwrap_or_default(),
                        if r["mate"] == true { "  mate" } else { "" }
                    );
                }
                if let Some(r) = records.iter().find(|r| r["mate"] == true) {
                    s += &format!(
                        "  char poly {}\n",
                        r["char_poly"].as_str().unwrap_or_default()
                    );
                }
                s
            })
        }
        Command::VerifyPair { first, second, out } => {
            let a = parse_graph(&first)?;
            let b = parse_graph(&second)?;
            if a.order() != b.order() {
                return Err(Error::Argument(format!(
                    "orders differ: {} and {}",
                    a.order(),
                    b.order()
                ))
                .into());
            }
            let value = json!({
                "isomorphic": isomorphic(&a, &b),
                "cospectral": is_cospectral(&a, &b),
                "generalized_cospectral": is_generalized_cospectral(&a, &b),
            });
            emit(&out, &value, || {
                format!(
                    "isomorphic {}\ncospectral {}\ngeneralized cospectral {}\n",
                    value["isomorphic"], value["cospectral"], value["generalized_cospectral"]
                )
            })
        }
        Command::Appendix {
            k,
            l,
            b,
            v1,
            v2,
            out,
        } => {
            let b = match b {
                Some(text) => parse_graph(&text)?,
                None => Graph::empty(l),
            };
            let default_v: Vec<Vec<u8>> = (0..k)
                .map(|i| (0..l).map(|j| u8::from(j % k == i)).collect())
                .collect();
            let v1 = v1
                .map(|r| parse_rows(&r))
                .transpose()?
                .unwrap_or_else(|| default_v.clone());
            let v2 = v2.map(|r| parse_rows(&r)).transpose()?.unwrap_or(default_v);
            let g = build_appendix_graph(k, l, &b, &v1, &v2)?;
            let claims = verify_appendix_claims(&g, k)?;
            let c0: Vec<usize> = (0..k).collect();
            let c1: Vec<usize> = (k..2 * k).collect();
            let h = switchenum::switching::wqh_rule_switch(&g, &c0, &c1).map_err(Error::from)?;
            let value = json!({
                "k": k,
                "l": l,
                "graph": g,
                "switched": h,
                "isomorphic": claims.isomorphic,
                "fixing_isomorphism_exists": claims.fixing_isomorphism_exists,
                "conditions_hold": claims.conditions_hold,
            });
            emit(&out, &value, || {
                format!(
                    "graph    {g}\nswitched {h}\nisomorphic {}\nfixing isomorphism exists {}\nmodular condition on outside vertices {}\n",
                    claims.isomorphic, claims.fixing_isomorphism_exists, claims.conditions_hold
                )
            })
        }
        Command::Gcount { order, live, out } => {
            let count = if live {
                count_graphs_live(order)?
            } else {
                graph_count(order)?
            };
            let value = json!({"n": order, "count": count, "live": live});
            emit(&out, &value, || format!("g_{order} = {count}\n"))
        }
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn parse_rows(rows: &[String]) -> CliResult<Vec<Vec<u8>>> {
    rows.iter()
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => {
                        Err(Error::Argument(format!("matrix entry {other:?} is not 0 or 1")).into())
                    }
                })
                .collect()
        })
        .collect()
}

fn cmd_methods(out: &Output) -> CliResult {
    let mut records = Vec::new();
    for id in MethodId::NAMED {
        let sm = SwitchingMethod::new(id)?;
        let selected: Vec<_> = sm.selected_classes().collect();
        records.push(json!({
            "method": id,
            "m": sm.dimension(),
            "level": sm.q.level(),
            "respecting_vectors": sm.vq.len(),
            "labelled_switching_graphs": sm.graphs.labelled.len(),
            "unlabelled_switching_graphs": sm.graphs.unlabelled.len(),
            "vector_stabilizer_order": sm.graphs.stabilizer_order,
            "selected": selected.iter().map(|c| json!({
                "gamma": c.gamma,
                "aut_order": c.aut_order,
                "autq_order": c.autq_order,
                "labellings": c.orbit_size,
                "distinguishing": c.distinguishing,
                "switching_distinguishing": c.switching_distinguishing,
            })).collect::<Vec<_>>(),
            "all_distinguishing": selected.iter().all(|c| c.distinguishing && c.switching_distinguishing),
            "coefficient": ratio_string(&sm.autq_coefficient()),
        }));
    }
    let value = json!(records);
    emit(out, &value, || {
        let rows: Vec<Vec<String>> = records
            .iter()
            .map(|r| {
                vec![
                    r["method"].as_str().unwrap_or_default().to_string(),
                    r["m"].to_string(),
                    r["level"].to_string(),
                    r["respecting_vectors"].to_string(),
                    r["labelled_switching_graphs"].to_string(),
                    r["unlabelled_switching_graphs"].to_string(),
                    r["selected"].as_array().map_or(0, Vec::len).to_string(),
                    yes(r["all_distinguishing"] == true),
                    r["coefficient"].as_str().unwrap_or_default().to_string(),
                ]
            })
            .collect();
        table(
            &[
                "method", "m", "level", "|V_Q|", "|B_Q|", "classes", "selected", "dist", "coef",
            ],
            &rows,
        )
    })
}
