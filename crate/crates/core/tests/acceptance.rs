//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! straight to stdout so the verdicts show up without `--nocapture`.

use std::io::Write;
use std::sync::OnceLock;
use std::thread;
use std::time::{Duration, Instant};

use mim_core::baseline::build_l_g2;
use mim_core::baseline::mis_solve;
use mim_core::bench::{growth_slope, run_bench, BenchConfig, BenchError};
use mim_core::bisection::{bisection_cut, DEFAULT_STARTS};
use mim_core::generate::random_subcubic;
use mim_core::measure::{optimize_s, uprounded};
use mim_core::oracle::brute_force_mim;
use mim_core::rules::apply_s1;
use mim_core::solver::{algo_mim, verify_solution, Config};
use mim_core::table::{default_weights, emit_table};
use mim_core::{Graph, NodeId, RuleError, SolveError};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "[acceptance] criterion {id} {verdict}: {name} ({detail})");
    let _ = out.flush();
}

/// Everything measured on one corpus instance.
#[derive(Debug)]
struct Outcome {
    label: String,
    oracle: usize,
    solver_small_kappa: Result<usize, SolveError>,
    solver_default: Result<usize, SolveError>,
    valid: bool,
    baseline: usize,
    reduced_max_degree: usize,
}

impl Outcome {
    fn optimal(&self) -> bool {
        self.valid
            && self.solver_small_kappa.as_ref().is_ok_and(|&k| k == self.oracle)
            && self.solver_default.as_ref().is_ok_and(|&k| k == self.oracle)
    }

    fn stuck(&self) -> bool {
        [&self.solver_small_kappa, &self.solver_default]
            .iter()
            .any(|r| matches!(r, Err(SolveError::Rule(RuleError::Stuck(_)))))
    }
}

fn evaluate(label: String, g: &Graph) -> Outcome {
    let oracle = brute_force_mim(g).expect("corpus instances fit the oracle").size;
    let mut valid = true;
    let mut run = |kappa: usize| {
        algo_mim(g, &Config::with_kappa(kappa)).map(|(s, _)| {
            valid &= verify_solution(g, &s);
            s.len()
        })
    };
    // kappa = 3 forces bisection and branching even on tiny graphs
    let solver_small_kappa = run(3);
    let solver_default = run(Config::default().kappa);
    let rg = build_l_g2(g);
    let mis = mis_solve(&rg);
    let baseline_set = mis.set.iter().map(|&i| rg.back_map[i]).collect();
    valid &= verify_solution(g, &baseline_set);
    Outcome {
        label,
        oracle,
        solver_small_kappa,
        solver_default,
        valid,
        baseline: mis.set.len(),
        reduced_max_degree: rg.max_degree(),
    }
}

fn evaluate_all(corpus: Vec<(String, Graph)>) -> Vec<Outcome> {
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = corpus.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = corpus
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || part.iter().map(|(l, g)| evaluate(l.clone(), g)).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// All labeled connected graphs on `n` nodes with maximum degree 3.
fn labeled_subcubic(n: usize, out: &mut Vec<Graph>) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut deg = vec![0u8; n];
    let mut chosen = Vec::new();
    fn rec(
        i: usize,
        pairs: &[(usize, usize)],
        deg: &mut [u8],
        chosen: &mut Vec<(usize, usize)>,
        n: usize,
        out: &mut Vec<Graph>,
    ) {
        if i == pairs.len() {
            let g = Graph::from_edges(n, chosen).expect("degree capped");
            if g.is_connected() {
                out.push(g);
            }
            return;
        }
        let (a, b) = pairs[i];
        rec(i + 1, pairs, deg, chosen, n, out);
        if deg[a] < 3 && deg[b] < 3 {
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            rec(i + 1, pairs, deg, chosen, n, out);
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
        }
    }
    rec(0, &pairs, &mut deg, &mut chosen, n, out);
}

struct Corpus {
    outcomes: Vec<Outcome>,
    elapsed: Duration,
}

fn exhaustive() -> &'static Corpus {
    static CELL: OnceLock<Corpus> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let mut corpus = Vec::new();
        for n in 1..=7 {
            let mut graphs = Vec::new();
            labeled_subcubic(n, &mut graphs);
            corpus.extend(graphs.into_iter().enumerate().map(|(i, g)| (format!("n={n} #{i}"), g)));
        }
        let outcomes = evaluate_all(corpus);
        Corpus { outcomes, elapsed: start.elapsed() }
    })
}

fn random_corpus() -> &'static Corpus {
    static CELL: OnceLock<Corpus> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let fractions = [0.0, 0.25, 0.5, 0.75, 0.9, 1.0];
        let mut corpus = Vec::new();
        for i in 0..600u64 {
            let n = 8 + (i % 11) as usize;
            let p3 = fractions[(i / 11) as usize % fractions.len()];
            corpus.push((format!("n={n} p3={p3} seed={i}"), random_subcubic(n, p3, 1000 + i)));
        }
        // graphs with leaves: drop a node and keep the largest piece
        for i in 0..200u64 {
            let n = 9 + (i % 10) as usize;
            let g = random_subcubic(n, 0.8, 5000 + i);
            let cut = g.remove_nodes([NodeId((i % n as u64) as u32)]).unwrap();
            let comps = cut.components();
            let biggest = comps.iter().max_by_key(|c| c.len()).unwrap();
            let h = cut.induced(biggest);
            if h.node_count() >= 8 {
                corpus.push((format!("pruned n={n} seed={}", 5000 + i), h));
            }
        }
        let outcomes = evaluate_all(corpus);
        Corpus { outcomes, elapsed: start.elapsed() }
    })
}

struct BenchRun {
    result: Result<Vec<mim_core::bench::BenchRecord>, BenchError>,
    elapsed: Duration,
}

fn growth_bench() -> &'static BenchRun {
    static CELL: OnceLock<BenchRun> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let cfg =
            BenchConfig { sizes: vec![20, 30, 40, 50, 60], trials: 10, seed: 1, ..BenchConfig::default() };
        let result = run_bench(&cfg, |_| Ok(()));
        BenchRun { result, elapsed: start.elapsed() }
    })
}

fn first_failures(outcomes: &[Outcome], bad: impl Fn(&Outcome) -> bool) -> String {
    let failing: Vec<&Outcome> = outcomes.iter().filter(|o| bad(o)).collect();
    match failing.first() {
        None => String::new(),
        Some(o) => format!("; {} failing, first {}: {:?}", failing.len(), o.label, o),
    }
}

#[test]
fn criterion_1_table() {
    let start = Instant::now();
    let report_ = emit_table(&default_weights());
    let elapsed = start.elapsed();
    let rows = &report_.lines[..report_.lines.len() - 1];
    let cells: Vec<_> = rows.iter().flat_map(|l| l.cells.iter().map(move |c| (l, c))).collect();
    let matched = cells.iter().filter(|(_, c)| !c.mismatch).count();
    let flagged: Vec<_> = cells.iter().filter(|(_, c)| c.mismatch).collect();
    let expected_flags = flagged.len() == 2
        && flagged[0].0.formula == "tau(4-s,6-2s,6+s)"
        && flagged[0].1.s == 0.7
        && flagged[0].1.uprounded == 1.2669
        && flagged[1].0.formula == "tau(6+2s,6+2s,6+2s,6+2s)"
        && flagged[1].1.s == 0.636
        && flagged[1].1.uprounded == 1.2101;
    let pass = cells.len() == 30 && matched == 28 && expected_flags && elapsed < Duration::from_secs(1);
    report(
        1,
        "branching-factor table",
        pass,
        &format!(
            "{matched}/{} printed entries match, {} flagged, {:.1?}",
            cells.len(),
            flagged.len(),
            elapsed
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_optimal_weight() {
    let start = Instant::now();
    let (w, factor) = optimize_s(0.001).unwrap();
    let elapsed = start.elapsed();
    let pass =
        (w.s() - 0.636).abs() <= 0.005 && uprounded(factor) == 1.2630 && elapsed < Duration::from_secs(5);
    report(2, "optimal weighting", pass, &format!("s={:.3}, factor {factor:.6}, {elapsed:.1?}", w.s()));
    assert!(pass);
}

#[test]
fn criterion_3_exhaustive_small_graphs() {
    let corpus = exhaustive();
    let ok = corpus.outcomes.iter().filter(|o| o.optimal()).count();
    let pass = ok == corpus.outcomes.len() && corpus.elapsed < Duration::from_secs(600);
    let detail = format!(
        "{ok}/{} labeled connected graphs n<=7 optimal at kappa 3 and 12, {:.1?}{}",
        corpus.outcomes.len(),
        corpus.elapsed,
        first_failures(&corpus.outcomes, |o| !o.optimal())
    );
    report(3, "exhaustive oracle equivalence", pass, &detail);
    assert!(pass);
}

#[test]
fn criterion_4_random_instances() {
    let corpus = random_corpus();
    let ok = corpus.outcomes.iter().filter(|o| o.optimal()).count();
    let pass = corpus.outcomes.len() >= 500
        && ok == corpus.outcomes.len()
        && corpus.elapsed < Duration::from_secs(600);
    let detail = format!(
        "{ok}/{} random instances n in 8..=18 optimal and valid, {:.1?}{}",
        corpus.outcomes.len(),
        corpus.elapsed,
        first_failures(&corpus.outcomes, |o| !o.optimal())
    );
    report(4, "randomized oracle equivalence", pass, &detail);
    assert!(pass);
}

#[test]
fn criterion_5_baseline_agreement() {
    let all: Vec<&Outcome> = exhaustive().outcomes.iter().chain(&random_corpus().outcomes).collect();
    let agree =
        |o: &Outcome| o.solver_default.as_ref().is_ok_and(|&k| k == o.baseline) && o.baseline == o.oracle;
    let agreeing = all.iter().filter(|o| agree(o)).count();
    let max_degree = all.iter().map(|o| o.reduced_max_degree).max().unwrap_or(0);
    let pass = agreeing == all.len() && max_degree <= 12;
    report(
        5,
        "baseline agreement",
        pass,
        &format!("{agreeing}/{} agree, largest reduction degree {max_degree}", all.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_6_paths_and_cycles() {
    let mut checked = 0;
    let mut wrong = Vec::new();
    let path = |e: usize| Graph::from_edges(e + 1, &(0..e).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
    let cycle =
        |e: usize| Graph::from_edges(e, &(0..e).map(|i| (i, (i + 1) % e)).collect::<Vec<_>>()).unwrap();
    for (kind, g, expect) in
        (1..=12).map(|e| ("path", path(e), e.div_ceil(3))).chain((3..=12).map(|e| ("cycle", cycle(e), e / 3)))
    {
        let s = apply_s1(&g).unwrap();
        let oracle = brute_force_mim(&g).unwrap().size;
        checked += 1;
        if s.len() != oracle || oracle != expect || !verify_solution(&g, &s) {
            wrong.push(format!("{kind} with {} edges", g.edge_count()));
        }
    }
    let pass = wrong.is_empty();
    report(6, "path and cycle closed forms", pass, &format!("{checked} shapes checked, wrong: {wrong:?}"));
    assert!(pass);
}

#[test]
fn criterion_7_bisection_contract() {
    let mut instances = 0;
    let mut valid = 0;
    let mut within_target = 0;
    let mut ratio_sum = 0.0;
    let mut problems = Vec::new();
    let mut seed = 0u64;
    while instances < 100 {
        seed += 1;
        let n = 40 + (seed % 41) as usize;
        let p3 = if seed.is_multiple_of(2) { 1.0 } else { 0.8 };
        let g = random_subcubic(n, p3, 70_000 + seed);
        let k = g.degree_count(3);
        if k < 30 {
            continue;
        }
        instances += 1;
        match bisection_cut(&g, seed, DEFAULT_STARTS) {
            Ok(cut) => match cut.validate(&g) {
                Ok(()) => {
                    valid += 1;
                    let ratio = cut.b.len() as f64 / k as f64;
                    ratio_sum += ratio;
                    if ratio <= 1.0 / 6.0 + 0.1 {
                        within_target += 1;
                    }
                }
                Err(e) => problems.push(format!("seed {seed}: {e}")),
            },
            Err(e) => problems.push(format!("seed {seed}: {e}")),
        }
    }
    let pass = valid == instances;
    report(
        7,
        "bisection contract",
        pass,
        &format!(
            "{valid}/{instances} cuts valid and balanced; mean |B|/k {:.3}; {within_target}/{instances} within 1/6+0.1 (soft){}",
            ratio_sum / valid.max(1) as f64,
            problems.first().map(|p| format!("; first problem {p}")).unwrap_or_default()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_8_no_stuck_states() {
    let stuck_small =
        exhaustive().outcomes.iter().chain(&random_corpus().outcomes).filter(|o| o.stuck()).count();
    let bench = growth_bench();
    let bench_ok = match &bench.result {
        Ok(rows) => rows.len() == 50,
        Err(_) => false,
    };
    let pass = stuck_small == 0 && bench_ok;
    let bench_note = match &bench.result {
        Ok(rows) => format!("{} bench instances solved", rows.len()),
        Err(e) => format!("bench failed: {e}"),
    };
    report(8, "no stuck states", pass, &format!("{stuck_small} stuck among oracle corpora; {bench_note}"));
    assert!(pass);
}

#[test]
fn criterion_9_leaf_growth() {
    let bench = growth_bench();
    let limit = 1.2630f64.ln() + 0.05;
    let (pass, detail) = match &bench.result {
        Ok(rows) => {
            let slope = growth_slope(rows).unwrap_or(f64::INFINITY);
            let mut means = String::new();
            for n in [20, 30, 40, 50, 60] {
                let of_n: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.leaves as f64).collect();
                means.push_str(&format!(" n={n}:{:.0}", of_n.iter().sum::<f64>() / of_n.len() as f64));
            }
            (
                slope <= limit && bench.elapsed < Duration::from_secs(900),
                format!(
                    "slope {slope:.4} (growth {:.4}/node) vs limit {limit:.4}; mean leaves{means}; {:.1?}",
                    slope.exp(),
                    bench.elapsed
                ),
            )
        }
        Err(e) => (false, format!("bench failed: {e}")),
    };
    report(9, "empirical leaf growth", pass, &detail);
    assert!(pass);
}
