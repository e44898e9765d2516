//! Multi-product commutation relations between two pairs of π/4 rotations.
//!
//! Pairs `(A, B)` and `(C, D)` satisfy the relation when the four words are
//! distinct, each pair commutes internally, every cross pair anticommutes and
//! `[A + B, C + D] = 0`. The two blocks can then be exchanged:
//! `R_D R_C R_B R_A = R_B R_A R_D R_C` exactly.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{minus_abc, sample_axis, PauliAxis, PauliWord, DEFAULT_SAMPLE_CAP};
use crate::pbc::{PbcCircuit, Rotation};

/// First condition of the relation that a candidate quadruple violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum McrFailure {
    QubitMismatch,
    NotDistinct,
    /// `[A, B] ≠ 0` or `[C, D] ≠ 0`
    PairsNotCommuting,
    /// some cross pair commutes
    CrossNotAnticommuting,
    /// `[A + B, C + D] ≠ 0`
    SumsNotCommuting,
}

impl fmt::Display for McrFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McrFailure::QubitMismatch => "axes act on different qubit counts",
            McrFailure::NotDistinct => "axes are not pairwise distinct up to sign",
            McrFailure::PairsNotCommuting => "condition 1: a pair does not commute",
            McrFailure::CrossNotAnticommuting => "condition 2: a cross pair commutes",
            McrFailure::SumsNotCommuting => "condition 3: [A+B, C+D] is nonzero",
        })
    }
}

/// Checks every condition directly; condition 3 is evaluated as an operator identity.
pub fn check_mcr(a: &PauliAxis, b: &PauliAxis, c: &PauliAxis, d: &PauliAxis) -> std::result::Result<(), McrFailure> {
    let n = a.num_qubits();
    if [b, c, d].iter().any(|p| p.num_qubits() != n) {
        return Err(McrFailure::QubitMismatch);
    }
    let all = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if all[i].same_word(all[j]) {
                return Err(McrFailure::NotDistinct);
            }
        }
    }
    if !a.commutes_with(b) || !c.commutes_with(d) {
        return Err(McrFailure::PairsNotCommuting);
    }
    if [(a, c), (a, d), (b, c), (b, d)].iter().any(|(x, y)| x.commutes_with(y)) {
        return Err(McrFailure::CrossNotAnticommuting);
    }
    if !sums_commute(a, b, c, d) {
        return Err(McrFailure::SumsNotCommuting);
    }
    Ok(())
}

pub fn is_mcr(a: &PauliAxis, b: &PauliAxis, c: &PauliAxis, d: &PauliAxis) -> bool {
    check_mcr(a, b, c, d).is_ok()
}

// Expands (A+B)(C+D) - (C+D)(A+B) into Gaussian-integer coefficients per word.
fn sums_commute(a: &PauliAxis, b: &PauliAxis, c: &PauliAxis, d: &PauliAxis) -> bool {
    let mut terms: HashMap<PauliWord, (i64, i64)> = HashMap::new();
    let mut add = |x: &PauliAxis, y: &PauliAxis, sign: i64| {
        let p = x.to_phased().mul(&y.to_phased());
        let (re, im) = match p.phase() {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        let e = terms.entry(p.word().clone()).or_insert((0, 0));
        e.0 += sign * re;
        e.1 += sign * im;
    };
    for x in [a, b] {
        for y in [c, d] {
            add(x, y, 1);
            add(y, x, -1);
        }
    }
    terms.values().all(|&v| v == (0, 0))
}

/// Two rotation pairs `(a, b)` and `(c, d)` satisfying the relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct McrQuadruple {
    a: PauliAxis,
    b: PauliAxis,
    c: PauliAxis,
    d: PauliAxis,
}

impl McrQuadruple {
    pub fn new(a: PauliAxis, b: PauliAxis, c: PauliAxis, d: PauliAxis) -> Result<Self> {
        check_mcr(&a, &b, &c, &d).map_err(|f| Error::McrViolation(format!("({a}, {b}, {c}, {d}): {f}")))?;
        Ok(McrQuadruple { a, b, c, d })
    }

    /// Closes `(a, b, c)` with `d = -abc`.
    pub fn complete(a: PauliAxis, b: PauliAxis, c: PauliAxis) -> Result<Self> {
        let d = complete_quadruple(&a, &b, &c)?;
        Ok(McrQuadruple { a, b, c, d })
    }

    pub fn a(&self) -> &PauliAxis {
        &self.a
    }

    pub fn b(&self) -> &PauliAxis {
        &self.b
    }

    pub fn c(&self) -> &PauliAxis {
        &self.c
    }

    pub fn d(&self) -> &PauliAxis {
        &self.d
    }

    pub fn axes(&self) -> [&PauliAxis; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn num_qubits(&self) -> usize {
        self.a.num_qubits()
    }

    /// Representative of the orbit under reordering within and between pairs.
    pub fn canonical(&self) -> McrQuadruple {
        let key = |p: &PauliAxis| (p.word().clone(), p.is_negative());
        let order = |x: &PauliAxis, y: &PauliAxis| {
            if key(x) <= key(y) {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            }
        };
        let p1 = order(&self.a, &self.b);
        let p2 = order(&self.c, &self.d);
        let (first, second) = if (key(&p1.0), key(&p1.1)) <= (key(&p2.0), key(&p2.1)) {
            (p1, p2)
        } else {
            (p2, p1)
        };
        McrQuadruple {
            a: first.0,
            b: first.1,
            c: second.0,
            d: second.1,
        }
    }
}

impl fmt::Display for McrQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The unique fourth axis `-abc`; errors name the violated premise.
pub fn complete_quadruple(a: &PauliAxis, b: &PauliAxis, c: &PauliAxis) -> Result<PauliAxis> {
    let d = minus_abc(a, b, c)?;
    debug_assert!(is_mcr(a, b, c, &d));
    Ok(d)
}

/// Exchange rotations `(i, i+1)` with `(i+2, i+3)`.
///
/// All four must be ±π/4 rotations whose signed axes satisfy the relation.
pub fn swap_mcr(p: &PbcCircuit, i: usize) -> Result<PbcCircuit> {
    let mut out = p.clone();
    swap_in_place(out.rotations_mut(), i)?;
    Ok(out)
}

pub(crate) fn swap_in_place(rotations: &mut [Rotation], i: usize) -> Result<()> {
    if i + 4 > rotations.len() {
        return Err(Error::IndexOutOfRange {
            index: i + 3,
            n: rotations.len(),
        });
    }
    let mut signed = Vec::with_capacity(4);
    for r in &rotations[i..i + 4] {
        signed.push(r.signed_axis().ok_or_else(|| {
            Error::McrViolation(format!("rotation {} with k = {} is not a π/4 rotation", r.axis(), r.k()))
        })?);
    }
    check_mcr(&signed[0], &signed[1], &signed[2], &signed[3]).map_err(|f| {
        Error::McrViolation(format!(
            "({}, {}, {}, {}): {f}",
            signed[0], signed[1], signed[2], signed[3]
        ))
    })?;
    rotations[i..i + 4].rotate_left(2);
    Ok(())
}

type PairFilter<'a> = Option<&'a dyn Fn(&PauliAxis, &PauliAxis) -> bool>;

/// Random quadruple: `A` uniform, `B` uniform among commuting axes with a new
/// word, `C` uniform among axes anticommuting with both, `D = -ABC`.
///
/// The optional predicates on `(A, B)` and `(C, D)` are enforced by
/// rejecting the whole quadruple, at most `DEFAULT_SAMPLE_CAP` times.
pub fn sample_quadruple<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    ab_filter: PairFilter<'_>,
    cd_filter: PairFilter<'_>,
) -> Result<McrQuadruple> {
    sample_quadruple_capped(n, rng, ab_filter, cd_filter, DEFAULT_SAMPLE_CAP)
}

pub fn sample_quadruple_capped<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    ab_filter: PairFilter<'_>,
    cd_filter: PairFilter<'_>,
    cap: usize,
) -> Result<McrQuadruple> {
    if n < 2 {
        return Err(Error::TooFewQubits { min: 2, got: n });
    }
    for _ in 0..cap {
        let a = sample_axis(n, rng, None)?;
        let b = sample_axis(n, rng, Some(&|p: &PauliAxis| p.commutes_with(&a) && !p.same_word(&a)))?;
        if ab_filter.is_some_and(|f| !f(&a, &b)) {
            continue;
        }
        let c = sample_axis(n, rng, Some(&|p: &PauliAxis| !p.commutes_with(&a) && !p.commutes_with(&b)))?;
        let d = complete_quadruple(&a, &b, &c)?;
        if cd_filter.is_some_and(|f| !f(&c, &d)) {
            continue;
        }
        return Ok(McrQuadruple { a, b, c, d });
    }
    Err(Error::CapExhausted { tries: cap })
}

/// `4^n (4^n - 1)(4^n - 4) / 8`, the number of unordered pairs of unordered
/// pairs (signs included) satisfying the relation.
pub fn count_quadruples(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    if n > 20 {
        return Err(Error::TooLarge { n, cap: 20 });
    }
    let f = 1u128 << (2 * n);
    Ok(f * (f - 1) * (f - 4) / 8)
}

/// Brute force over all signed ordered quadruples, reduced to canonical representatives.
pub fn enumerate_quadruples(n: usize) -> Result<Vec<McrQuadruple>> {
    if n == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    if n > 2 {
        return Err(Error::TooLarge { n, cap: 2 });
    }
    let axes = PauliAxis::enumerate(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in &axes {
        for b in &axes {
            for c in &axes {
                for d in &axes {
                    if is_mcr(a, b, c, d) {
                        let q = McrQuadruple {
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                            d: d.clone(),
                        }
                        .canonical();
                        if seen.insert(q.clone()) {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
