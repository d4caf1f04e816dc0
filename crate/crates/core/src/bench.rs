//! Benchmark sweeps over random subcubic instances.

use std::io;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::baseline::cameron_mim;
use crate::error::SolveError;
use crate::generate::random_subcubic;
use crate::oracle::{brute_force_mim, DEFAULT_EDGE_LIMIT};
use crate::solver::{algo_mim, verify_solution, Config};

pub const CSV_HEADER: &str =
    "id,n,m,deg3,solver_size,oracle_size,baseline_size,leaves,nodes_expanded,wall_ms,seed";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no instance sizes given")]
    NoSizes,
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("instance {id}: {source}")]
    Solve { id: usize, source: SolveError },
    #[error("instance {id}: solver returned an invalid matching")]
    Invalid { id: usize },
    #[error("instance {id}: sizes disagree (solver {solver}, oracle {oracle:?}, baseline {baseline:?})")]
    Disagree { id: usize, solver: usize, oracle: Option<usize>, baseline: Option<usize> },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Target fraction of degree-3 nodes.
    pub p3: f64,
    pub baseline: bool,
    pub solver: Config,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![20, 30, 40],
            trials: 5,
            seed: 1,
            p3: 1.0,
            baseline: false,
            solver: Config::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub deg3: usize,
    pub solver_size: usize,
    pub oracle_size: Option<usize>,
    pub baseline_size: Option<usize>,
    pub leaves: u64,
    pub nodes_expanded: u64,
    pub wall_ms: f64,
    /// Generator seed of this instance.
    pub seed: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3},{}",
            self.id,
            self.n,
            self.m,
            self.deg3,
            self.solver_size,
            opt(self.oracle_size),
            opt(self.baseline_size),
            self.leaves,
            self.nodes_expanded,
            self.wall_ms,
            self.seed
        )
    }
}

/// Generator seed for trial `trial` of size `n`.
pub fn instance_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((n as u64) << 32 | trial as u64)
}

/// Runs every (size, trial) pair in order, handing each record to `sink` as
/// soon as it is done.
pub fn run_bench<F>(cfg: &BenchConfig, mut sink: F) -> Result<Vec<BenchRecord>, BenchError>
where
    F: FnMut(&BenchRecord) -> io::Result<()>,
{
    if cfg.sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    if cfg.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    let mut out = Vec::new();
    for &n in &cfg.sizes {
        for trial in 0..cfg.trials {
            let id = out.len();
            let seed = instance_seed(cfg.seed, n, trial);
            let g = random_subcubic(n, cfg.p3, seed);

            let start = Instant::now();
            let (s, stats) = algo_mim(&g, &cfg.solver).map_err(|source| BenchError::Solve { id, source })?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            if !verify_solution(&g, &s) {
                return Err(BenchError::Invalid { id });
            }
            let oracle_size = if g.edge_count() <= DEFAULT_EDGE_LIMIT {
                brute_force_mim(&g).ok().map(|r| r.size)
            } else {
                None
            };
            let baseline_size = cfg.baseline.then(|| cameron_mim(&g).len());
            let solver_size = s.len();
            if oracle_size.is_some_and(|x| x != solver_size)
                || baseline_size.is_some_and(|x| x != solver_size)
            {
                return Err(BenchError::Disagree {
                    id,
                    solver: solver_size,
                    oracle: oracle_size,
                    baseline: baseline_size,
                });
            }
            let record = BenchRecord {
                id,
                n,
                m: g.edge_count(),
                deg3: g.degree_count(3),
                solver_size,
                oracle_size,
                baseline_size,
                leaves: stats.leaves,
                nodes_expanded: stats.nodes_expanded,
                wall_ms,
                seed,
            };
            sink(&record)?;
            out.push(record);
        }
    }
    Ok(out)
}

/// Least-squares slope of `ln(leaves)` against `n`.
pub fn growth_slope(records: &[BenchRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, (r.leaves.max(1) as f64).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> BenchConfig {
        BenchConfig { sizes: vec![10], trials: 3, baseline: true, ..BenchConfig::default() }
    }

    #[test]
    fn three_rows_agree() {
        let rows = run_bench(&small(), |_| Ok(())).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert_eq!(Some(r.solver_size), r.oracle_size);
            assert_eq!(Some(r.solver_size), r.baseline_size);
        }
    }

    #[test]
    fn rejects_empty() {
        let cfg = BenchConfig { sizes: vec![], ..small() };
        assert!(matches!(run_bench(&cfg, |_| Ok(())), Err(BenchError::NoSizes)));
        let cfg = BenchConfig { trials: 0, ..small() };
        assert!(matches!(run_bench(&cfg, |_| Ok(())), Err(BenchError::NoTrials)));
    }

    #[test]
    fn deterministic_apart_from_time() {
        let strip = |rows: Vec<BenchRecord>| -> Vec<BenchRecord> {
            rows.into_iter().map(|r| BenchRecord { wall_ms: 0.0, ..r }).collect()
        };
        let a = strip(run_bench(&small(), |_| Ok(())).unwrap());
        let b = strip(run_bench(&small(), |_| Ok(())).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn slope_of_exact_exponential() {
        let rows: Vec<BenchRecord> = (1..5)
            .map(|i| BenchRecord {
                id: i,
                n: 10 * i,
                m: 0,
                deg3: 0,
                solver_size: 0,
                oracle_size: None,
                baseline_size: None,
                leaves: 1.25f64.powi(10 * i as i32).round() as u64,
                nodes_expanded: 0,
                wall_ms: 0.0,
                seed: 0,
            })
            .collect();
        assert!((growth_slope(&rows).unwrap() - 1.25f64.ln()).abs() < 1e-3);
    }
}
