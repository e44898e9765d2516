//! T-count reduction over PBC circuits.
//!
//! `merge_pass` combines same-axis rotations inside a T layer and pushes the
//! resulting Clifford rotations into the prefix. `mcr_swap_pass` exchanges
//! MCR blocks across layer boundaries when that lets a later merge fire.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcr::is_mcr;
use crate::pauli::{PauliAxis, PauliWord};
use crate::pbc::{layers_of, PbcCircuit, Rotation};
use crate::tableau::CliffordTableau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pass {
    Merge,
    McrSwap,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pass::Merge => "merge",
            Pass::McrSwap => "mcr_swap",
        })
    }
}

impl FromStr for Pass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "merge" => Ok(Pass::Merge),
            "mcr_swap" | "mcr-swap" | "swap" => Ok(Pass::McrSwap),
            other => Err(Error::Precondition(format!("unknown pass {other:?}"))),
        }
    }
}

/// Parses a comma separated pass list such as `mcr_swap,merge`.
pub fn parse_passes(s: &str) -> Result<Vec<Pass>> {
    let passes = s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
    if passes.is_empty() {
        return Err(Error::Precondition("empty pass list".into()));
    }
    Ok(passes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub passes: Vec<Pass>,
    pub max_rounds: usize,
    pub pair_cap: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            passes: vec![Pass::McrSwap, Pass::Merge],
            max_rounds: 32,
            pair_cap: 64,
        }
    }
}

impl OptimizerConfig {
    pub fn merge_only() -> Self {
        OptimizerConfig {
            passes: vec![Pass::Merge],
            ..Self::default()
        }
    }

    pub fn with_passes(passes: Vec<Pass>) -> Self {
        OptimizerConfig {
            passes,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 || self.pair_cap == 0 {
            return Err(Error::Precondition("max_rounds and pair_cap must be at least 1".into()));
        }
        if self.passes.is_empty() {
            return Err(Error::Precondition("empty pass list".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassDelta {
    pub pass: Pass,
    pub t_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizeReport {
    pub t_initial: usize,
    pub t_final: usize,
    pub rounds: usize,
    /// T-count removed by each pass, in configuration order.
    pub deltas: Vec<PassDelta>,
}

/// Same-word merging within T layers, iterated to a fixed point.
pub fn merge_pass(p: &PbcCircuit) -> PbcCircuit {
    let mut cur = p.clone();
    while let Some(next) = merge_once(&cur) {
        cur = next;
    }
    cur
}

fn merge_once(p: &PbcCircuit) -> Option<PbcCircuit> {
    let rotations = p.rotations();
    let layers = layers_of(rotations);

    // Per layer: Clifford parts first, then the surviving ±π/4 rotations.
    let mut changed = false;
    let mut items: Vec<(PauliAxis, i32)> = Vec::with_capacity(rotations.len());
    for layer in &layers {
        let mut order: Vec<&PauliWord> = Vec::new();
        let mut sums: HashMap<&PauliWord, (PauliAxis, i32, usize)> = HashMap::new();
        for &i in layer {
            let r = &rotations[i];
            let e = sums.entry(r.word()).or_insert_with(|| {
                order.push(r.word());
                (r.axis().clone(), 0, 0)
            });
            e.1 += r.k();
            e.2 += 1;
        }
        let mut odd = Vec::new();
        for w in order {
            let (axis, k, count) = &sums[w];
            let k = Rotation::new(axis, *k).map_or(0, |r| r.k());
            let (odd_part, even_part) = match k {
                1 | -1 => (k, 0),
                3 => (-1, 4),
                -3 => (1, 4),
                _ => (0, k),
            };
            if *count > 1 || even_part != 0 {
                changed = true;
            }
            if even_part != 0 {
                items.push((axis.clone(), even_part));
            }
            if odd_part != 0 {
                odd.push((axis.clone(), odd_part));
            }
        }
        items.extend(odd);
    }
    if !changed {
        return None;
    }

    let n = p.num_qubits();
    let mut pending = CliffordTableau::identity(n);
    let mut out = Vec::with_capacity(items.len());
    for (axis, k) in items.into_iter().rev() {
        if k % 2 == 0 {
            let mut c = CliffordTableau::identity(n);
            c.apply_rotation(&axis, k).expect("even k on a matching axis");
            pending = c.compose(&pending).unwrap();
        } else {
            let moved = pending.conjugate(&axis).unwrap();
            out.push(Rotation::new(&moved, k).unwrap());
        }
    }
    out.reverse();
    let prefix = p.prefix().compose(&pending).unwrap();
    Some(PbcCircuit::new(prefix, out).unwrap())
}

/// Rotations reordered layer by layer; a legal commuting reorder.
fn layer_ordered(rotations: &[Rotation]) -> (Vec<Rotation>, Vec<std::ops::Range<usize>>) {
    let layers = layers_of(rotations);
    let mut out = Vec::with_capacity(rotations.len());
    let mut ranges = Vec::with_capacity(layers.len());
    for layer in layers {
        let start = out.len();
        out.extend(layer.iter().map(|&i| rotations[i].clone()));
        ranges.push(start..out.len());
    }
    (out, ranges)
}

fn pairs(rotations: &[Rotation], range: std::ops::Range<usize>, cap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in range.clone() {
        if rotations[i].signed_axis().is_none() {
            continue;
        }
        for j in i + 1..range.end {
            if rotations[j].signed_axis().is_none() || rotations[i].word() == rotations[j].word() {
                continue;
            }
            out.push((i, j));
            if out.len() == cap {
                return out;
            }
        }
    }
    out
}

/// Move pair `l` to the end of its layer and pair `r` to the start of the next, then exchange them.
fn swapped(rotations: &[Rotation], left: &std::ops::Range<usize>, l: (usize, usize), r: (usize, usize), right: &std::ops::Range<usize>) -> Vec<Rotation> {
    let mut out = Vec::with_capacity(rotations.len());
    out.extend_from_slice(&rotations[..left.start]);
    out.extend(left.clone().filter(|&i| i != l.0 && i != l.1).map(|i| rotations[i].clone()));
    out.push(rotations[r.0].clone());
    out.push(rotations[r.1].clone());
    out.push(rotations[l.0].clone());
    out.push(rotations[l.1].clone());
    out.extend(right.clone().filter(|&i| i != r.0 && i != r.1).map(|i| rotations[i].clone()));
    out.extend_from_slice(&rotations[right.end..]);
    out
}

/// Greedy first-improvement search over MCR block swaps at layer boundaries.
///
/// A swap is kept only if merging afterwards strictly lowers the T-count.
pub fn mcr_swap_pass(p: &PbcCircuit, cfg: &OptimizerConfig) -> PbcCircuit {
    let mut cur = p.clone();
    for _ in 0..cfg.max_rounds.max(1) {
        match improve_once(&cur, cfg.pair_cap.max(1)) {
            Some(next) => cur = next,
            None => break,
        }
    }
    cur
}

fn improve_once(p: &PbcCircuit, pair_cap: usize) -> Option<PbcCircuit> {
    let t = p.t_count();
    let (rotations, ranges) = layer_ordered(p.rotations());
    for w in ranges.windows(2) {
        let (left, right) = (&w[0], &w[1]);
        let lp = pairs(&rotations, left.clone(), pair_cap);
        if lp.is_empty() {
            continue;
        }
        let rp = pairs(&rotations, right.clone(), pair_cap);
        for &l in &lp {
            let (a, b) = (rotations[l.0].signed_axis().unwrap(), rotations[l.1].signed_axis().unwrap());
            for &r in &rp {
                let (c, d) = (rotations[r.0].signed_axis().unwrap(), rotations[r.1].signed_axis().unwrap());
                if !is_mcr(&a, &b, &c, &d) {
                    continue;
                }
                let candidate = PbcCircuit::new(p.prefix().clone(), swapped(&rotations, left, l, r, right)).unwrap();
                let merged = merge_pass(&candidate);
                if merged.t_count() < t {
                    return Some(merged);
                }
            }
        }
    }
    None
}

/// Run the configured passes round-robin until no pass changes the T-count.
pub fn optimize(p: &PbcCircuit, cfg: &OptimizerConfig) -> Result<(PbcCircuit, OptimizeReport)> {
    cfg.validate()?;
    let t_initial = p.t_count();
    let mut deltas: Vec<PassDelta> = cfg.passes.iter().map(|&pass| PassDelta { pass, t_removed: 0 }).collect();
    let mut cur = p.clone();
    let mut rounds = 0;
    while rounds < cfg.max_rounds {
        rounds += 1;
        let before = cur.t_count();
        for (i, pass) in cfg.passes.iter().enumerate() {
            let t = cur.t_count();
            let next = match pass {
                Pass::Merge => merge_pass(&cur),
                Pass::McrSwap => mcr_swap_pass(&cur, cfg),
            };
            deltas[i].t_removed += t - next.t_count();
            cur = next;
        }
        if cur.t_count() == before {
            break;
        }
    }
    let report = OptimizeReport {
        t_initial,
        t_final: cur.t_count(),
        rounds,
        deltas,
    };
    Ok((cur, report))
}
