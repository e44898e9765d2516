//! Benchmark harness: unoptimize the single-rotation input, optimize it back,
//! and record how much of the injected T-count was recovered.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{optimize, OptimizerConfig};
use crate::pbc::PbcCircuit;
use crate::unopt::{unoptimize, UnoptRecipe};

pub const CSV_HEADER: &str = "n,sample,seed,t_unopt,t_opt,p";

/// `(t_unopt - t_opt) / (t_unopt - t_original)`.
pub fn reduction_rate(t_unopt: usize, t_opt: usize, t_original: usize) -> Result<f64> {
    if t_unopt <= t_original {
        return Err(Error::Precondition(format!(
            "t_unopt ({t_unopt}) must exceed t_original ({t_original})"
        )));
    }
    if t_opt > t_unopt {
        return Err(Error::Precondition(format!("t_opt ({t_opt}) exceeds t_unopt ({t_unopt})")));
    }
    Ok((t_unopt - t_opt) as f64 / (t_unopt - t_original) as f64)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of one sample; depends only on `(seed, n, sample)`.
pub fn sample_seed(seed: u64, n: usize, sample: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ n as u64) ^ sample as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub min_qubits: usize,
    pub max_qubits: usize,
    pub samples: usize,
    pub seed: u64,
    pub swap_enabled: bool,
    /// Defaults to `n²` per qubit count.
    pub iterations: Option<usize>,
    pub optimizer: OptimizerConfig,
    /// Worker count; `None` uses the global pool.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl BenchConfig {
    pub fn new(min_qubits: usize, max_qubits: usize, samples: usize, seed: u64) -> Self {
        BenchConfig {
            min_qubits,
            max_qubits,
            samples,
            seed,
            swap_enabled: true,
            iterations: None,
            optimizer: OptimizerConfig::merge_only(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub sample: usize,
    pub seed: u64,
    pub t_original: usize,
    pub t_unopt: usize,
    pub t_opt: usize,
    pub p: f64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Stat {
        let k = values.len() as f64;
        if values.is_empty() {
            return Stat { mean: f64::NAN, std: f64::NAN };
        }
        let mean = values.iter().sum::<f64>() / k;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        Stat { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSummary {
    pub n: usize,
    pub samples: usize,
    pub t_unopt: Stat,
    pub t_opt: Stat,
    pub p: Stat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<BenchSummary>,
    /// Samples that failed, as `n/sample: message`.
    pub failures: Vec<String>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{},{}", r.n, r.sample, r.seed, r.t_unopt, r.t_opt, r.p).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary_for(&self, n: usize) -> Option<&BenchSummary> {
        self.summary.iter().find(|s| s.n == n)
    }
}

/// One sample end to end.
pub fn run_sample(n: usize, sample: usize, cfg: &BenchConfig) -> Result<BenchRow> {
    let start = Instant::now();
    let seed = sample_seed(cfg.seed, n, sample);
    let input = PbcCircuit::default_input(n);
    let mut recipe = UnoptRecipe::new(n, seed, cfg.swap_enabled);
    if let Some(m) = cfg.iterations {
        recipe.iterations = m;
    }
    let unopt = unoptimize(&input, &mut recipe)?;
    let (opt, _) = optimize(&unopt, &cfg.optimizer)?;
    let (t_original, t_unopt, t_opt) = (input.t_count(), unopt.t_count(), opt.t_count());
    // zero iterations leave nothing to recover
    let p = if t_unopt == t_original {
        0.0
    } else {
        reduction_rate(t_unopt, t_opt, t_original)?
    };
    Ok(BenchRow {
        n,
        sample,
        seed,
        t_original,
        t_unopt,
        t_opt,
        p,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// All `(n, sample)` jobs in parallel; rows come back sorted by `(n, sample)`.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.min_qubits < 2 || cfg.min_qubits > cfg.max_qubits {
        return Err(Error::Precondition(format!(
            "qubit range {}..{} must satisfy 2 ≤ min ≤ max",
            cfg.min_qubits, cfg.max_qubits
        )));
    }
    cfg.optimizer.validate()?;
    let jobs: Vec<(usize, usize)> = (cfg.min_qubits..=cfg.max_qubits)
        .flat_map(|n| (0..cfg.samples).map(move |s| (n, s)))
        .collect();
    let work = || -> Vec<(usize, usize, Result<BenchRow>)> {
        jobs.par_iter().map(|&(n, s)| (n, s, run_sample(n, s, cfg))).collect()
    };
    let results = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(work),
        None => work(),
    };

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (n, s, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => failures.push(format!("{n}/{s}: {e}")),
        }
    }
    let summary = (cfg.min_qubits..=cfg.max_qubits)
        .map(|n| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.n == n).collect();
            let col = |f: fn(&BenchRow) -> f64| Stat::of(&mine.iter().map(|r| f(r)).collect::<Vec<_>>());
            BenchSummary {
                n,
                samples: mine.len(),
                t_unopt: col(|r| r.t_unopt as f64),
                t_opt: col(|r| r.t_opt as f64),
                p: col(|r| r.p),
            }
        })
        .collect();
    Ok(BenchReport {
        config: cfg.clone(),
        rows,
        summary,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_examples() {
        assert!((reduction_rate(431, 173, 1).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(reduction_rate(431, 431, 1).unwrap(), 0.0);
        assert_eq!(reduction_rate(431, 1, 1).unwrap(), 1.0);
        assert!(reduction_rate(1, 1, 1).is_err());
        assert!(reduction_rate(5, 6, 1).is_err());
    }

    #[test]
    fn seeds_are_spread() {
        let mut seen = std::collections::HashSet::new();
        for n in 2..6 {
            for s in 0..50 {
                assert!(seen.insert(sample_seed(7, n, s)));
            }
        }
        assert_eq!(sample_seed(7, 3, 4), sample_seed(7, 3, 4));
    }

    #[test]
    fn stats() {
        let s = Stat::of(&[1.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert!((s.std - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn small_bench_is_thread_independent() {
        let mut cfg = BenchConfig::new(2, 3, 6, 11);
        cfg.threads = Some(1);
        let one = run_bench(&cfg).unwrap();
        cfg.threads = Some(4);
        let four = run_bench(&cfg).unwrap();
        assert_eq!(one.to_csv(), four.to_csv());
        assert_eq!(one.rows.len(), 12);
        assert!(one.to_csv().starts_with(CSV_HEADER));
        assert!(run_bench(&BenchConfig::new(1, 3, 1, 0)).is_err());
    }
}
