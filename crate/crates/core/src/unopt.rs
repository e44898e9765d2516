//! Unoptimization: grow a PBC circuit by inserting MCR identities and
//! swapping them into their neighbours, without changing its unitary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcr::{sample_quadruple, swap_in_place, McrQuadruple};
use crate::pauli::{minus_abc, PauliAxis};
use crate::pbc::{PbcCircuit, Rotation};

pub const INDEX_REDRAWS: usize = 100;

/// `[A, B, C, D, -A, -B, -C, -D]` in time order, each at π/4; the product is exactly `I`.
pub fn build_identity(q: &McrQuadruple) -> Vec<Rotation> {
    let forward = q.axes().map(Rotation::pi4);
    let backward = q.axes().map(Rotation::pi4_inverse);
    forward.into_iter().chain(backward).collect()
}

/// Everything needed to replay one step without a random source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepLog {
    pub index: usize,
    pub quadruple: McrQuadruple,
    /// Signed `Q_l`; absent when swapping is disabled.
    pub q_left: Option<PauliAxis>,
    /// Signed `Q_r`; absent when swapping is disabled or at the edge.
    pub q_right: Option<PauliAxis>,
    /// The chosen rotation was the last one.
    pub edge: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnoptRecipe {
    pub seed: u64,
    pub iterations: usize,
    pub swap_enabled: bool,
    #[serde(default)]
    pub log: Vec<StepLog>,
}

impl UnoptRecipe {
    /// `n²` iterations.
    pub fn new(n: usize, seed: u64, swap_enabled: bool) -> Self {
        UnoptRecipe {
            seed,
            iterations: n * n,
            swap_enabled,
            log: Vec::new(),
        }
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("recipe serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

fn signed_axes(p: &PbcCircuit) -> Result<Vec<PauliAxis>> {
    p.rotations()
        .iter()
        .map(|r| {
            r.signed_axis()
                .ok_or_else(|| Error::Precondition(format!("rotation {} has k = {}, expected ±1", r.axis(), r.k())))
        })
        .collect()
}

/// Draw the index and quadruple for one step.
pub fn plan_step<R: Rng + ?Sized>(p: &PbcCircuit, rng: &mut R, swap_enabled: bool) -> Result<StepLog> {
    let axes = signed_axes(p)?;
    if axes.is_empty() {
        return Err(Error::Precondition("circuit has no rotations".into()));
    }
    let n = p.num_qubits();
    let mut last_err = Error::CapExhausted { tries: 0 };
    for _ in 0..INDEX_REDRAWS {
        let i = rng.gen_range(0..axes.len());
        let pi = &axes[i];
        let next = axes.get(i + 1);
        let ab = |a: &PauliAxis, b: &PauliAxis| !a.commutes_with(pi) && !b.commutes_with(pi);
        let cd = |c: &PauliAxis, d: &PauliAxis| next.is_none_or(|q| !c.commutes_with(q) && !d.commutes_with(q));
        let quadruple = match sample_quadruple(n, rng, Some(&ab), Some(&cd)) {
            Ok(q) => q,
            Err(e @ Error::CapExhausted { .. }) => {
                last_err = e;
                continue;
            }
            Err(e) => return Err(e),
        };
        let (q_left, q_right) = if swap_enabled {
            let ql = minus_abc(quadruple.a(), quadruple.b(), pi)?;
            let qr = match next {
                Some(nx) => Some(minus_abc(quadruple.c(), quadruple.d(), nx)?),
                None => None,
            };
            (Some(ql), qr)
        } else {
            (None, None)
        };
        return Ok(StepLog {
            index: i,
            quadruple,
            q_left,
            q_right,
            edge: next.is_none(),
        });
    }
    Err(last_err)
}

/// Apply a planned step.
///
/// Around the chosen rotation `P` (and its successor `N`) the result reads
/// `Q_l⁻¹ A B Q_l P C D -A -B N Q_r -C -D Q_r⁻¹` with swapping, or
/// `P A B C D -A -B -C -D N` without.
pub fn apply_step(p: &PbcCircuit, step: &StepLog) -> Result<PbcCircuit> {
    let mut out = p.clone();
    let rotations = out.rotations_mut();
    let i = step.index;
    if i >= rotations.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n: rotations.len(),
        });
    }
    if step.edge != (i + 1 == rotations.len()) {
        return Err(Error::Precondition(format!("edge flag does not match index {i}")));
    }
    let identity = build_identity(&step.quadruple);
    rotations.splice(i + 1..i + 1, identity);

    let mut next = i + 9;
    if let Some(ql) = &step.q_left {
        rotations.splice(i..i, [Rotation::pi4_inverse(ql), Rotation::pi4(ql)]);
        // Q_l P A B -> A B Q_l P
        swap_in_place(rotations, i + 1)?;
        next += 2;
    }
    if let Some(qr) = &step.q_right {
        rotations.splice(next + 1..next + 1, [Rotation::pi4(qr), Rotation::pi4_inverse(qr)]);
        // -C -D N Q_r -> N Q_r -C -D
        swap_in_place(rotations, next - 2)?;
    } else if step.q_left.is_some() && !step.edge {
        return Err(Error::Precondition("interior step is missing Q_r".into()));
    }
    Ok(out)
}

/// One random unoptimization step.
pub fn unopt_step<R: Rng + ?Sized>(p: &PbcCircuit, rng: &mut R, swap_enabled: bool) -> Result<(PbcCircuit, StepLog)> {
    let step = plan_step(p, rng, swap_enabled)?;
    let out = apply_step(p, &step)?;
    Ok((out, step))
}

/// Run `recipe.iterations` steps from a stream seeded by `recipe.seed`, recording the log.
pub fn unoptimize(u: &PbcCircuit, recipe: &mut UnoptRecipe) -> Result<PbcCircuit> {
    if u.num_qubits() < 2 {
        return Err(Error::TooFewQubits {
            min: 2,
            got: u.num_qubits(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    let mut p = u.clone();
    recipe.log.clear();
    for _ in 0..recipe.iterations {
        let (next, step) = unopt_step(&p, &mut rng, recipe.swap_enabled)?;
        recipe.log.push(step);
        p = next;
    }
    Ok(p)
}

/// Re-apply a recorded log.
pub fn replay(u: &PbcCircuit, log: &[StepLog]) -> Result<PbcCircuit> {
    log.iter().try_fold(u.clone(), |p, step| apply_step(&p, step))
}
