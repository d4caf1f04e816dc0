use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use mim_core::baseline::cameron_mim_with_stats;
use mim_core::bench::{growth_slope, run_bench, BenchConfig, CSV_HEADER};
use mim_core::bisection::{bisection_cut, DEFAULT_STARTS};
use mim_core::dimacs::{parse_cut, parse_graph, write_cut, write_graph};
use mim_core::generate::random_subcubic;
use mim_core::measure::{optimize_s, BranchingVector, Weighting};
use mim_core::oracle::brute_force_mim_with_limit;
use mim_core::solver::{algo_mim, next_action, verify_solution, Action, Config, DEFAULT_KAPPA};
use mim_core::state::{Alternative, SolverState};
use mim_core::table::{default_weights, emit_table};
use mim_core::{EdgeSet, Graph};

#[derive(Parser)]
#[command(name = "mim", version, about = "Maximum induced matching on graphs of maximum degree 3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve exactly with the bisection-and-branching search.
    Solve {
        /// Graph file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Print search statistics.
        #[arg(long)]
        stats: bool,
        /// Emit a single JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Solve by exhaustive search over edge subsets.
    Oracle {
        file: PathBuf,
        /// Refuse graphs with more edges than this.
        #[arg(long, default_value_t = mim_core::oracle::DEFAULT_EDGE_LIMIT)]
        limit: usize,
    },
    /// Solve as maximum independent set on the square of the line graph.
    Baseline {
        file: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Compute a balanced cut; the output is itself a valid cut file.
    Bisect {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_STARTS)]
        starts: usize,
    },
    /// Show which rule fires first for a graph and cut.
    Rules {
        file: PathBuf,
        /// Cut file with `s <node> <1|2>` lines.
        #[arg(long)]
        cut: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: usize,
    },
    /// Branching factor of a vector of measure decrements.
    Tau {
        #[arg(required = true, num_args = 1..)]
        decrements: Vec<f64>,
    },
    /// Branching-factor table of the rules.
    Table {
        /// Degree-2 weights to evaluate.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<f64>>,
        #[arg(long)]
        csv: bool,
        /// Also scan for the weight minimising the overall factor.
        #[arg(long)]
        optimize: Option<f64>,
    },
    /// Generate a random connected subcubic graph.
    Gen {
        #[arg(long)]
        n: usize,
        /// Target fraction of degree-3 nodes.
        #[arg(long, default_value_t = 1.0)]
        p3: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the solver over random instances and write CSV rows.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "20,30,40")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        p3: f64,
        #[arg(long, default_value_t = DEFAULT_KAPPA)]
        kappa: usize,
        /// Also run the independent-set baseline.
        #[arg(long)]
        baseline: bool,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_matching(out: &mut impl Write, s: &EdgeSet) -> io::Result<()> {
    writeln!(out, "s mim {}", s.len())?;
    for e in s {
        writeln!(out, "e {} {}", e.u(), e.v())?;
    }
    Ok(())
}

fn edge_pairs(s: &EdgeSet) -> Vec<[usize; 2]> {
    s.iter().map(|e| [e.u().one_based(), e.v().one_based()]).collect()
}

fn run(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Solve { file, kappa, seed, stats, json } => {
            let g = read_graph(&file)?;
            let cfg = Config { kappa, seed, ..Config::default() };
            let (s, st) = algo_mim(&g, &cfg)?;
            if !verify_solution(&g, &s) {
                bail!("internal error: result is not an induced matching");
            }
            if json {
                let mut obj = serde_json::json!({ "size": s.len(), "edges": edge_pairs(&s) });
                if stats {
                    obj["stats"] = serde_json::to_value(&st)?;
                }
                writeln!(out, "{obj}")?;
            } else {
                write_matching(out, &s)?;
                if stats {
                    writeln!(out, "# nodes_expanded {}", st.nodes_expanded)?;
                    writeln!(out, "# leaves {}", st.leaves)?;
                    writeln!(out, "# max_depth {}", st.max_depth)?;
                    writeln!(out, "# bisections {}", st.bisections)?;
                    writeln!(out, "# component_splits {}", st.component_splits)?;
                    for (rule, count) in &st.rule_counts {
                        writeln!(out, "# rule {rule} {count}")?;
                    }
                }
            }
        }
        Command::Oracle { file, limit } => {
            let g = read_graph(&file)?;
            let r = brute_force_mim_with_limit(&g, limit)?;
            write_matching(out, &r.witness)?;
            writeln!(out, "# explored {}", r.explored)?;
        }
        Command::Baseline { file, stats } => {
            let g = read_graph(&file)?;
            let r = cameron_mim_with_stats(&g);
            write_matching(out, &r.matching)?;
            if stats {
                writeln!(out, "# reduced_nodes {}", r.reduced_nodes)?;
                writeln!(out, "# reduced_edges {}", r.reduced_edges)?;
                writeln!(out, "# reduced_max_degree {}", r.reduced_max_degree)?;
                writeln!(out, "# explored {}", r.explored)?;
            }
        }
        Command::Bisect { file, seed, starts } => {
            if starts == 0 {
                bail!("--starts must be at least 1");
            }
            let g = read_graph(&file)?;
            let cut = bisection_cut(&g, seed, starts)?;
            let (n1, n2) = cut.side_sizes();
            let (k1, k2) = cut.degree3_counts(&g);
            let mut comments = vec![
                format!("side sizes {n1} {n2}"),
                format!("degree-3 nodes {k1} {k2}"),
                format!("cut edges {}", cut.b.len()),
            ];
            comments.extend(cut.b.iter().map(|e| format!("b {} {}", e.u(), e.v())));
            let refs: Vec<&str> = comments.iter().map(String::as_str).collect();
            write!(out, "{}", write_cut(&g, &cut, &refs))?;
        }
        Command::Rules { file, cut, kappa } => {
            let g = read_graph(&file)?;
            let cut = parse_cut(&read_text(&cut)?, &g).context("parsing cut")?;
            writeln!(out, "cut edges {}", cut.b.len())?;
            let state = SolverState::with_cut(g, cut);
            describe(out, &next_action(&state, kappa)?)?;
        }
        Command::Tau { decrements } => {
            let v = BranchingVector::new(decrements)?;
            writeln!(out, "{:.6}", v.tau())?;
        }
        Command::Table { s, csv, optimize } => {
            let weights = match s {
                Some(list) => list.into_iter().map(Weighting::new).collect::<Result<Vec<_>, _>>()?,
                None => default_weights(),
            };
            let report = emit_table(&weights);
            if csv {
                write!(out, "{}", report.to_csv())?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
            if let Some(step) = optimize {
                let (w, f) = optimize_s(step)?;
                writeln!(out, "# best s {} factor {:.6}", w.s(), f)?;
            }
        }
        Command::Gen { n, p3, seed, output } => {
            if !(0.0..=1.0).contains(&p3) {
                bail!("--p3 must lie in [0, 1]");
            }
            let g = random_subcubic(n, p3, seed);
            let text = write_graph(&g, &[&format!("random subcubic n={n} p3={p3} seed={seed}")]);
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => write!(out, "{text}")?,
            }
        }
        Command::Bench { sizes, trials, seed, p3, kappa, baseline, csv } => {
            if !(0.0..=1.0).contains(&p3) {
                bail!("--p3 must lie in [0, 1]");
            }
            let cfg = BenchConfig { sizes, trials, seed, p3, baseline, solver: Config::with_kappa(kappa) };
            let mut sink: Box<dyn Write> = match &csv {
                Some(path) => Box::new(io::BufWriter::new(
                    fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
                )),
                None => Box::new(&mut *out),
            };
            writeln!(sink, "{CSV_HEADER}")?;
            let rows = run_bench(&cfg, |r| writeln!(sink, "{}", r.csv_row()))?;
            sink.flush()?;
            drop(sink);
            if csv.is_some() {
                writeln!(out, "# rows {}", rows.len())?;
                if let Some(slope) = growth_slope(&rows) {
                    writeln!(out, "# leaves growth per node {:.4}", slope.exp())?;
                }
            }
        }
    }
    Ok(())
}

fn describe(out: &mut impl Write, action: &Action) -> io::Result<()> {
    let alt_line = |alt: &Alternative| {
        let del: Vec<String> = alt.delete.iter().map(|v| v.to_string()).collect();
        let add: Vec<String> = alt.add_to_s.iter().map(|e| e.to_string()).collect();
        format!("delete {{{}}} select [{}]", del.join(","), add.join(","))
    };
    match action {
        Action::Done => writeln!(out, "empty graph"),
        Action::Split(comps) => writeln!(out, "split into {} components", comps.len()),
        Action::Bisect => writeln!(out, "bisect"),
        Action::Simplify(rule, alt) => writeln!(out, "rule {rule}\n  {}", alt_line(alt)),
        Action::MoveLeaf { edge, leaf } => writeln!(out, "rule S4\n  move {leaf} across, drop {edge}"),
        Action::Branch(m) => {
            let anchor: Vec<String> = m.anchor.iter().map(|v| v.to_string()).collect();
            writeln!(out, "rule {} at {}", m.rule, anchor.join(" "))?;
            for (i, alt) in m.alternatives.iter().enumerate() {
                writeln!(out, "  {}: {}", i + 1, alt_line(alt))?;
            }
            Ok(())
        }
    }
}
