use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use fsgraph::bigraph::read_bg;
use fsgraph::cert::{
    builtin_corpus, load_gadget, shortest_exchange, shortest_robust, verify_instantiation, GadgetCase,
};
use fsgraph::fs::{
    count_isolated_states, exchangeable, fs_component_count_with, CountOptions, ExchangeOutcome, SearchOptions,
};
use fsgraph::random_lab::{cross_validate, emit_csv, sweep, SweepConfig, SweepRow};
use fsgraph::scan::{
    corollary_check, theorem_bound, theorem_scan, tightness_search, ScanConfig, ScanMode, ScanReport, WitnessKind,
};
use fsgraph::{BiGraph, Bijection, SwapSeq};

use crate::output::{progress, CliError, CliResult, Out, Status};
use crate::{CaseArgs, Cli, Command, Format, PairArgs};

const DEFAULT_RANDOM_BUDGET: u64 = 1000;

fn graph(path: &Path) -> CliResult<BiGraph> {
    read_bg(path)
        .map_err(|err| CliError::Io { path: path.to_path_buf(), err })?
        .map_err(CliError::Core)
}

fn pair(p: &PairArgs) -> CliResult<(BiGraph, BiGraph)> {
    Ok((graph(&p.x)?, graph(&p.y)?))
}

fn cases(args: &CaseArgs) -> CliResult<Vec<GadgetCase>> {
    let mut out = match args.corpus.as_deref() {
        Some("builtin") => builtin_corpus(),
        Some(other) => return Err(CliError::Usage(format!("unknown corpus `{other}`; the only corpus is `builtin`"))),
        None => Vec::new(),
    };
    for f in &args.files {
        if !f.exists() {
            return Err(CliError::Io {
                path: f.clone(),
                err: std::io::Error::new(std::io::ErrorKind::NotFound, "no such file"),
            });
        }
        out.push(load_gadget(f)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage("give case files or `--corpus builtin`".into()));
    }
    Ok(out)
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let t = SystemTime::now().duration_since(UNIX_EPOCH).unwrap_or_default();
        // keep generated seeds short enough to retype
        (t.as_nanos() % 1_000_000_007) as u64
    })
}

fn no_csv(format: Format, command: &str) -> CliResult<()> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!("`{command}` has no CSV output; use text or json")));
    }
    Ok(())
}

fn edge_list(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
}

fn indented_bg(out: &mut Out, label: &str, g: &BiGraph) {
    out.line(format!("  {label}:"));
    for l in g.to_bg_string().lines() {
        out.line(format!("    {l}"));
    }
}

pub fn run(cli: &Cli) -> CliResult<Status> {
    let g = &cli.global;
    let workers = g.workers;
    match &cli.command {
        Command::Components { pair: p, cap } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "components")?;
            let (x, y) = pair(p)?;
            let rep = fs_component_count_with(&x, &y, &CountOptions { cap: *cap, workers })?;
            if let Some(ms) = rep.elapsed_ms {
                progress(format!("counted {} states in {ms:.1} ms", rep.states_explored));
            }
            let rep = rep.without_timing();
            let mut out = Out::new(format, "components", None);
            if format == Format::Json {
                out.json(&rep);
            } else {
                out.line(format!("component_count = {}", rep.component_count));
                let hist: Vec<String> = rep.size_histogram.iter().map(|(s, c)| format!("{c} of size {s}")).collect();
                out.line(format!("sizes = {}", hist.join(", ")));
                out.line(format!("parity_split = {} + {}", rep.parity_split.0, rep.parity_split.1));
                out.line(format!("states = {}", rep.states_explored));
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }

        Command::Exchange { pair: p, u, v, state } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "exchange")?;
            let (x, y) = pair(p)?;
            let b = match state {
                Some(s) => {
                    let place = s
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<usize>().map_err(|_| CliError::Usage(format!("bad token `{t}` in --state"))))
                        .collect::<CliResult<Vec<_>>>()?;
                    Bijection::from_place(&place)?
                }
                None => Bijection::identity(x.n()),
            };
            let mut opts = SearchOptions::default();
            if let Some(budget) = g.budget {
                opts.budget = budget;
            }
            let res = exchangeable(&x, &y, &b, *u, *v, &opts)?;
            let mut out = Out::new(format, "exchange", None);
            out.detail = format!("u={u} v={v} budget={}", opts.budget);
            if format == Format::Json {
                out.json(&res);
            } else {
                match &res {
                    ExchangeOutcome::Exchangeable { witness } => {
                        out.line(format!("exchangeable in {} swaps", witness.len()));
                        out.line(format!("witness = {witness}"));
                    }
                    ExchangeOutcome::NotExchangeable { explored } => {
                        out.line(format!("not exchangeable (component of {explored} states explored)"));
                    }
                    ExchangeOutcome::Inconclusive { explored } => {
                        out.line(format!("inconclusive: budget exhausted after {explored} states"));
                    }
                }
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }

        Command::Bridges { x } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "bridges")?;
            let x = graph(x)?;
            let cut = fsgraph::bigraph::cut_edges(&x);
            let rep = x.find_bridges();
            let mut out = Out::new(format, "bridges", None);
            if format == Format::Json {
                #[derive(Serialize)]
                struct R<'a> {
                    cut_edges: &'a [(usize, usize)],
                    bridges: &'a [Vec<usize>],
                    max_k: usize,
                }
                out.json(&R { cut_edges: &cut, bridges: &rep.bridges, max_k: rep.max_k });
            } else {
                out.line(format!("cut_edges = {}", edge_list(&cut)));
                out.line(format!("max_k = {}", rep.max_k));
                for b in &rep.bridges {
                    let s: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                    out.line(format!("bridge k={}: {}", b.len(), s.join(" ")));
                }
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }

        Command::Criterion { x } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "criterion")?;
            let x = graph(x)?;
            let two = x.zhu_two_components()?;
            let outcome = x.criterion_outcome();
            let mut out = Out::new(format, "criterion", None);
            if format == Format::Json {
                #[derive(Serialize)]
                struct R {
                    r: usize,
                    two_components: bool,
                    outcome: fsgraph::bigraph::CriterionOutcome,
                }
                out.json(&R { r: x.r(), two_components: two, outcome });
            } else {
                out.line(format!("two_components = {two}"));
                out.line(format!("outcome = {outcome:?}"));
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }

        Command::Census { x } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "census")?;
            let c = graph(x)?.census();
            let mut out = Out::new(format, "census", None);
            if format == Format::Json {
                out.json(&c);
            } else {
                out.line(format!("in_c1 = {}", c.in_c1));
                out.line(format!("in_c2 = {}", c.in_c2));
                out.line(format!("in_c3 = {}", c.in_c3));
                out.line(format!("longest_degree2_path = {}", c.longest_degree2_path));
                out.line(format!("largest_path_component = {}", c.largest_path_component));
                out.line(format!("largest_tree_component = {}", c.largest_tree_component));
                out.line(format!("isolated_count = {}", c.isolated_count));
                let sizes: Vec<String> = c.component_sizes.iter().map(|s| s.to_string()).collect();
                out.line(format!("component_sizes = {}", sizes.join(" ")));
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }

        Command::Certify(args) => certify(cases(args)?, g.format.unwrap_or(Format::Text)),

        Command::Shortest { cases: args, per_instantiation } => {
            shortest(cases(args)?, g.format.unwrap_or(Format::Text), *per_instantiation)
        }

        Command::Scan { r, bound, random } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "scan")?;
            let bound = bound.unwrap_or_else(|| theorem_bound(*r));
            let (mode, seed) = if *random {
                (ScanMode::Random { budget: g.budget.unwrap_or(DEFAULT_RANDOM_BUDGET) }, Some(seed_or_fresh(g.seed)))
            } else {
                (ScanMode::Exhaustive, None)
            };
            if *r < 4 && bound <= theorem_bound(*r) {
                progress("the degree-sum guarantee needs r >= 4; counterexamples are expected here");
            }
            progress(format!("scanning r={r} bound={bound}"));
            let t = Instant::now();
            let rep = theorem_scan(&ScanConfig { r: *r, bound, mode, seed: seed.unwrap_or(0), workers })?;
            progress(format!("{} pairs in {:.1} s", rep.pairs_tested, t.elapsed().as_secs_f64()));
            let mut out = Out::new(format, "scan", seed);
            out.detail = scan_detail(*r, bound, mode);
            if format == Format::Json {
                out.json(&rep);
            } else {
                scan_text(&mut out, &rep, "not two");
                for c in &rep.counterexamples {
                    out.line(format!("counterexample: {} components", c.component_count));
                    indented_bg(&mut out, "X", &c.x);
                    indented_bg(&mut out, "Y", &c.y);
                }
                let verdict = if rep.counterexamples.is_empty() { "every pair has two components" } else { "COUNTEREXAMPLES FOUND" };
                out.line(format!(
                    "r={} bound={} pairs={} counterexamples={}: {verdict}",
                    rep.r,
                    bound,
                    rep.pairs_tested,
                    rep.counterexamples.len()
                ));
            }
            out.finish(None)?;
            Ok(Status::finding_if(!rep.counterexamples.is_empty()))
        }

        Command::Tightness { r, degree_sum, random } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "tightness")?;
            let sum = degree_sum.unwrap_or(3 * r / 2);
            let (mode, seed) = if *random {
                (ScanMode::Random { budget: g.budget.unwrap_or(DEFAULT_RANDOM_BUDGET) }, Some(seed_or_fresh(g.seed)))
            } else {
                (ScanMode::Exhaustive, None)
            };
            progress(format!("searching r={r} degree sum {sum}"));
            let rep = tightness_search(*r, sum, mode, seed.unwrap_or(0))?;
            let mut out = Out::new(format, "tightness", seed);
            out.detail = scan_detail(*r, sum, mode);
            if format == Format::Json {
                out.json(&rep);
            } else {
                scan_text(&mut out, &rep, "with witness");
                for w in &rep.witnesses {
                    let what = match &w.kind {
                        WitnessKind::Isolated { state } => format!("isolated placement {:?}", state.place()),
                        WitnessKind::Components { count } => format!("{count} components"),
                    };
                    let count = w.verified_count.map_or(String::new(), |c| format!(", {c} components"));
                    out.line(format!("witness ({}, {}): {what}{count}", w.x.min_degree(), w.y.min_degree()));
                    indented_bg(&mut out, "X", &w.x);
                    indented_bg(&mut out, "Y", &w.y);
                }
                let verdict = match (rep.witnesses.is_empty(), rep.conclusive) {
                    (false, _) => "witness found",
                    (true, true) => "NO WITNESS EXISTS",
                    (true, false) => "no witness found (inconclusive)",
                };
                out.line(format!("r={} degree_sum={sum} tested={}: {verdict}", rep.r, rep.pairs_tested));
            }
            out.finish(None)?;
            Ok(Status::finding_if(rep.witnesses.is_empty() && rep.conclusive))
        }

        Command::Corollary { r } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "corollary")?;
            let seed = seed_or_fresh(g.seed);
            progress(format!("checking thresholds at r={r}"));
            let rep = corollary_check(*r, seed, workers)?;
            let mut out = Out::new(format, "corollary", Some(seed));
            out.detail = format!("r={r}");
            if format == Format::Json {
                out.json(&rep);
            } else {
                out.line(format!("d_star = {}, d_sym = {}", rep.d_star, rep.d_sym));
                let u = &rep.upper;
                out.line(format!(
                    "upper ({}): {} graphs, {} spot checks, all two = {}",
                    u.method, u.graphs_tested, u.spot_checks, u.all_two
                ));
                for (label, w) in [("d_star", &rep.d_star_witness), ("d_sym", &rep.d_sym_witness)] {
                    match w {
                        Some(w) => {
                            let c = w.component_count.map_or("isolated placement".into(), |c| format!("{c} components"));
                            out.line(format!(
                                "{label} lower witness: min degrees ({}, {}), {c}",
                                w.x.min_degree(),
                                w.y.min_degree()
                            ));
                        }
                        None => out.line(format!("{label} lower witness: none found")),
                    }
                }
                out.line(format!("holds = {}", rep.holds));
            }
            out.finish(None)?;
            Ok(Status::finding_if(!rep.holds))
        }

        Command::Sweep { r, offsets, p, samples, out: path } => {
            let format = g.format.unwrap_or(Format::Csv);
            let seed = seed_or_fresh(g.seed);
            let cfg = match (offsets.is_empty(), p.is_empty()) {
                (false, _) => SweepConfig::from_offsets(*r, offsets, *samples, seed),
                (true, false) => SweepConfig { r: *r, p_grid: p.clone(), offsets: None, samples_per_point: *samples, seed },
                (true, true) => return Err(CliError::Usage("give --offsets or --p".into())),
            };
            progress(format!("sweeping {} points x {samples} samples at r={r}", cfg.p_grid.len()));
            let rows = sweep(&cfg, workers)?;
            let mut out = Out::new(format, "sweep", Some(seed));
            out.detail = match &cfg.offsets {
                Some(o) => format!("r={r} samples={samples} offsets={}", join(o)),
                None => format!("r={r} samples={samples} p={}", join(&cfg.p_grid)),
            };
            match format {
                Format::Csv => {
                    out.line(out.stamp());
                    out.buf_raw(&emit_csv(&rows));
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct R<'a> {
                        config: &'a SweepConfig,
                        rows: &'a [SweepRow],
                    }
                    out.json(&R { config: &cfg, rows: &rows });
                }
                Format::Text => {
                    out.line(format!(
                        "{:>10} {:>7} {:>9} {:>9} {:>9} {:>9} {:>10} {:>10}",
                        "p", "n", "two", "disc", "cycle", "bridge", "mean_X1", "expect_X1"
                    ));
                    for row in &rows {
                        out.line(format!(
                            "{:>10.6} {:>7} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>10.4} {:>10.4}",
                            row.p,
                            row.n,
                            row.frac_two,
                            row.frac_disc,
                            row.frac_cycle,
                            row.frac_bridge,
                            row.mean_x1,
                            row.expected_x1
                        ));
                    }
                }
            }
            out.finish(path.as_deref())?;
            Ok(Status::Ok)
        }

        Command::Crossval { p, samples } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "crossval")?;
            let seed = seed_or_fresh(g.seed);
            progress(format!("{} graphs at r=5, each counted over 10! placements", p.len() as u64 * samples));
            let cv = cross_validate(p, *samples, seed, workers)?;
            let mut out = Out::new(format, "crossval", Some(seed));
            out.detail = format!("samples={samples} p={}", join(p));
            if format == Format::Json {
                out.json(&cv);
            } else {
                out.line(format!("agreements = {}/{}", cv.agreements, cv.compared));
                for d in &cv.disagreements {
                    out.line(format!(
                        "disagreement at p={} sample {}: criterion {} vs {} components",
                        d.p, d.sample, d.criterion, d.component_count
                    ));
                    indented_bg(&mut out, "X", &d.x);
                }
            }
            out.finish(None)?;
            Ok(Status::finding_if(!cv.disagreements.is_empty()))
        }

        Command::Isolated { pair: p } => {
            let format = g.format.unwrap_or(Format::Text);
            no_csv(format, "isolated")?;
            let (x, y) = pair(p)?;
            let seed = seed_or_fresh(g.seed);
            let budget = g.budget.unwrap_or(100_000);
            let res = count_isolated_states(&x, &y, budget, seed, fsgraph::fs::DEFAULT_DENSE_CAP)?;
            let mut out = Out::new(format, "isolated", (!res.exhaustive).then_some(seed));
            if !res.exhaustive {
                out.detail = format!("budget={budget}");
            }
            if format == Format::Json {
                out.json(&res);
            } else {
                out.line(format!("found = {}", res.found));
                out.line(format!("examined = {} ({})", res.examined, if res.exhaustive { "exhaustive" } else { "sampled" }));
                if let Some(c) = res.isolated_count {
                    out.line(format!("isolated_count = {c}"));
                }
                if let Some(w) = &res.witness {
                    let s: Vec<String> = w.place().iter().map(|t| t.to_string()).collect();
                    out.line(format!("witness = {}", s.join(" ")));
                }
            }
            out.finish(None)?;
            Ok(Status::Ok)
        }
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn scan_detail(r: usize, cond: usize, mode: ScanMode) -> String {
    match mode {
        ScanMode::Exhaustive => format!("r={r} condition={cond} exhaustive"),
        ScanMode::Random { budget } => format!("r={r} condition={cond} random budget={budget}"),
    }
}

fn scan_text(out: &mut Out, rep: &ScanReport, hit_label: &str) {
    for p in &rep.profiles {
        out.line(format!("profile ({}, {}): {} tested, {} {hit_label}", p.dx, p.dy, p.tested, p.hits));
    }
}

#[derive(Serialize)]
struct InstRow {
    instantiation: Vec<usize>,
    label: String,
    accepted: bool,
    failure: Option<fsgraph::cert::Failure>,
}

#[derive(Serialize)]
struct CaseRow {
    name: String,
    accepted: bool,
    instantiations: Vec<InstRow>,
}

fn certify(cases: Vec<GadgetCase>, format: Format) -> CliResult<Status> {
    let mut rows = Vec::new();
    for c in &cases {
        let mut insts = Vec::new();
        for inst in c.instantiations() {
            let failure = verify_instantiation(c, &inst)?;
            insts.push(InstRow {
                label: c.describe_instantiation(&inst),
                accepted: failure.is_none(),
                failure,
                instantiation: inst,
            });
        }
        rows.push(CaseRow {
            name: c.name.clone(),
            accepted: insts.iter().all(|i| i.accepted),
            instantiations: insts,
        });
    }
    let accepted = rows.iter().filter(|r| r.accepted).count();
    let mut out = Out::new(format, "certify", None);
    match format {
        Format::Json => out.json(&rows),
        Format::Csv => {
            out.line("case,instantiation,label,verdict,step,reason");
            for r in &rows {
                for i in &r.instantiations {
                    let inst: Vec<String> = i.instantiation.iter().map(|x| x.to_string()).collect();
                    let (step, reason) = i
                        .failure
                        .as_ref()
                        .map_or((String::new(), String::new()), |f| (f.step.to_string(), f.reason.to_string()));
                    out.line(format!(
                        "{},{},\"{}\",{},{step},{reason}",
                        r.name,
                        inst.join(" "),
                        i.label.replace('"', "\"\""),
                        if i.accepted { "accepted" } else { "rejected" }
                    ));
                }
            }
        }
        Format::Text => {
            for r in &rows {
                for i in &r.instantiations {
                    let verdict = match &i.failure {
                        None => "accepted".to_string(),
                        Some(f) => format!("REJECTED at step {}: {}", f.step, f.reason),
                    };
                    out.line(format!("{:<16} {:<40} {verdict}", r.name, i.label));
                }
            }
            out.line(format!("{} cases, {accepted} accepted", rows.len()));
        }
    }
    out.finish(None)?;
    Ok(Status::finding_if(accepted != rows.len()))
}

#[derive(Serialize)]
struct ShortestRow {
    name: String,
    listed: usize,
    shortest: Option<usize>,
    matches: bool,
    witness: Option<String>,
    per_instantiation: Option<Vec<Option<usize>>>,
}

fn seq_text(c: &GadgetCase, s: &SwapSeq) -> String {
    s.0.iter().map(|&p| c.pair_text(p)).collect::<Vec<_>>().join(" ")
}

fn shortest(cases: Vec<GadgetCase>, format: Format, per_inst: bool) -> CliResult<Status> {
    no_csv(format, "shortest")?;
    let mut rows = Vec::new();
    for c in &cases {
        let best = shortest_robust(c)?;
        let per_instantiation = if per_inst {
            Some(
                c.instantiations()
                    .iter()
                    .map(|i| Ok(shortest_exchange(c, i)?.map(|s| s.len())))
                    .collect::<CliResult<Vec<_>>>()?,
            )
        } else {
            None
        };
        rows.push(ShortestRow {
            name: c.name.clone(),
            listed: c.sequence.len(),
            shortest: best.as_ref().map(SwapSeq::len),
            matches: best.as_ref().map(SwapSeq::len) == Some(c.sequence.len()),
            witness: best.as_ref().map(|s| seq_text(c, s)),
            per_instantiation,
        });
    }
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    let mut out = Out::new(format, "shortest", None);
    if format == Format::Json {
        out.json(&rows);
    } else {
        for r in &rows {
            let s = r.shortest.map_or("unreachable".into(), |s| s.to_string());
            let mark = if r.matches { "shortest" } else { "MISMATCH" };
            out.line(format!("{:<16} listed {:>3}  bfs {:>3}  {mark}", r.name, r.listed, s));
            if let Some(p) = &r.per_instantiation {
                let p: Vec<String> = p.iter().map(|x| x.map_or("-".into(), |x| x.to_string())).collect();
                out.line(format!("{:<16} per instantiation: {}", "", p.join(" ")));
            }
        }
        out.line(format!("{} cases, {mismatches} mismatches", rows.len()));
    }
    out.finish(None)?;
    Ok(Status::finding_if(mismatches > 0))
}
