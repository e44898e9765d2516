//! Signed Pauli strings in bit-packed symplectic form.
//!
//! Qubit `q` of a word carries X iff its x bit is set, Z iff its z bit is
//! set, and Y when both are. Text form lists qubit 0 first: `+XIZ` is X on
//! qubit 0 and Z on qubit 2.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_qubits, Error, Result};

/// Default number of draws before a filtered sample gives up.
pub const DEFAULT_SAMPLE_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

fn blocks(n: usize) -> usize {
    n.div_ceil(64)
}

/// An unsigned tensor product of single-qubit Paulis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord {
            n,
            x: vec![0; blocks(n)],
            z: vec![0; blocks(n)],
        }
    }

    /// Single-qubit Pauli `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut w = Self::identity(n);
        w.set(q, p);
        w
    }

    pub fn from_letters(letters: &str) -> Result<Self> {
        let n = letters.chars().count();
        let mut w = Self::identity(n);
        for (q, c) in letters.chars().enumerate() {
            let p = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                _ => return Err(Error::PauliParse(letters.to_string())),
            };
            w.set(q, p);
        }
        Ok(w)
    }

    pub(crate) fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut w = Self::identity(n);
        for b in 0..blocks(n) {
            w.x[b] = rng.gen();
            w.z[b] = rng.gen();
        }
        let tail = n % 64;
        if tail != 0 {
            let mask = (1u64 << tail) - 1;
            let last = blocks(n) - 1;
            w.x[last] &= mask;
            w.z[last] &= mask;
        }
        w
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (x, z) = p.bits();
        let (b, m) = (q / 64, 1u64 << (q % 64));
        if x {
            self.x[b] |= m;
        } else {
            self.x[b] &= !m;
        }
        if z {
            self.z[b] |= m;
        } else {
            self.z[b] &= !m;
        }
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / 64] >> (q % 64) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / 64] >> (q % 64) & 1 == 1
    }

    pub(crate) fn flip_x(&mut self, q: usize) {
        self.x[q / 64] ^= 1 << (q % 64);
    }

    pub(crate) fn flip_z(&mut self, q: usize) {
        self.z[q / 64] ^= 1 << (q % 64);
    }

    pub(crate) fn swap_xz(&mut self, q: usize) {
        let (x, z) = (self.x_bit(q), self.z_bit(q));
        if x != z {
            self.flip_x(q);
            self.flip_z(q);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&b| b == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Qubits on which the word acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.x_bit(q) || self.z_bit(q)).collect()
    }

    /// Panics when the qubit counts differ; see [`commutes`] for the checked form.
    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        let parity = self
            .x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((ax, az), (bx, bz))| ((ax & bz) ^ (az & bx)).count_ones())
            .sum::<u32>();
        parity % 2 == 0
    }

    /// Operator product `self * other` as `i^phase * word`.
    fn mul_with_phase(&self, other: &PauliWord) -> (u8, PauliWord) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut out = PauliWord::identity(self.n);
        for b in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[b], self.z[b], other.x[b], other.z[b]);
            let (y1, xo1, zo1) = (x1 & z1, x1 & !z1, z1 & !x1);
            let (y2, xo2, zo2) = (x2 & z2, x2 & !z2, z2 & !x2);
            // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
            plus += ((xo1 & y2) | (y1 & zo2) | (zo1 & xo2)).count_ones();
            minus += ((y1 & xo2) | (zo1 & y2) | (xo1 & zo2)).count_ones();
            out.x[b] = x1 ^ x2;
            out.z[b] = z1 ^ z2;
        }
        (((plus + 3 * minus) % 4) as u8, out)
    }

    pub fn to_letters(&self) -> String {
        (0..self.n).map(|q| self.get(q).letter()).collect()
    }
}

impl Ord for PauliWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_letters().cmp(&other.to_letters())
    }
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}

/// A Hermitian, non-identity signed Pauli word: an element of the rotation-axis set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliAxis {
    word: PauliWord,
    negative: bool,
}

impl PauliAxis {
    pub fn new(word: PauliWord, negative: bool) -> Result<Self> {
        if word.is_identity() {
            return Err(Error::IdentityAxis);
        }
        Ok(PauliAxis { word, negative })
    }

    pub fn positive(word: PauliWord) -> Result<Self> {
        Self::new(word, false)
    }

    pub fn word(&self) -> &PauliWord {
        &self.word
    }

    pub fn num_qubits(&self) -> usize {
        self.word.n
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> PauliAxis {
        PauliAxis {
            word: self.word.clone(),
            negative: false,
        }
    }

    pub fn commutes_with(&self, other: &PauliAxis) -> bool {
        self.word.commutes_with(&other.word)
    }

    pub fn same_word(&self, other: &PauliAxis) -> bool {
        self.word == other.word
    }

    pub fn to_phased(&self) -> PhasedPauli {
        PhasedPauli {
            word: self.word.clone(),
            phase: if self.negative { 2 } else { 0 },
        }
    }

    pub(crate) fn word_mut(&mut self) -> &mut PauliWord {
        &mut self.word
    }

    pub(crate) fn flip_sign(&mut self) {
        self.negative = !self.negative;
    }

    pub(crate) fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let word = PauliWord::random(n, rng);
            if !word.is_identity() {
                return PauliAxis {
                    word,
                    negative: rng.gen(),
                };
            }
        }
    }

    /// Every element of the axis set on `n` qubits, positive signs first.
    pub fn enumerate(n: usize) -> Vec<PauliAxis> {
        assert!(n <= 8, "enumeration of 4^{n} words refused");
        let mut words = Vec::new();
        for code in 1..(1usize << (2 * n)) {
            let mut w = PauliWord::identity(n);
            for q in 0..n {
                if code >> q & 1 == 1 {
                    w.flip_x(q);
                }
                if code >> (n + q) & 1 == 1 {
                    w.flip_z(q);
                }
            }
            words.push(w);
        }
        let mut axes: Vec<PauliAxis> = words
            .iter()
            .map(|w| PauliAxis {
                word: w.clone(),
                negative: false,
            })
            .collect();
        axes.extend(words.into_iter().map(|word| PauliAxis {
            word,
            negative: true,
        }));
        axes
    }
}

impl std::ops::Neg for PauliAxis {
    type Output = PauliAxis;

    fn neg(mut self) -> PauliAxis {
        self.negative = !self.negative;
        self
    }
}

impl std::ops::Neg for &PauliAxis {
    type Output = PauliAxis;

    fn neg(self) -> PauliAxis {
        -self.clone()
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { '-' } else { '+' }, self.word)
    }
}

impl FromStr for PauliAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::PauliParse(s.to_string()));
        }
        PauliAxis::new(PauliWord::from_letters(body)?, negative)
    }
}

impl Serialize for PauliAxis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliAxis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Pauli word with a phase in {+1, +i, -1, -i}, encoded as the exponent of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    word: PauliWord,
    phase: u8,
}

impl PhasedPauli {
    pub fn new(word: PauliWord, phase: u8) -> Self {
        PhasedPauli {
            word,
            phase: phase % 4,
        }
    }

    pub fn word(&self) -> &PauliWord {
        &self.word
    }

    /// Exponent `m` of the phase `i^m`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// Multiply the phase by `i^m`.
    pub fn times_i_pow(mut self, m: u8) -> Self {
        self.phase = (self.phase + m) % 4;
        self
    }

    pub fn negate(self) -> Self {
        self.times_i_pow(2)
    }

    /// Back to an axis; `None` when the phase is imaginary or the word is the identity.
    pub fn to_axis(&self) -> Option<PauliAxis> {
        if !self.is_hermitian() || self.word.is_identity() {
            return None;
        }
        Some(PauliAxis {
            word: self.word.clone(),
            negative: self.phase == 2,
        })
    }

    pub fn mul(&self, other: &PhasedPauli) -> PhasedPauli {
        let (p, word) = self.word.mul_with_phase(&other.word);
        PhasedPauli {
            word,
            phase: (self.phase + other.phase + p) % 4,
        }
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{prefix}{}", self.word)
    }
}

impl From<&PauliAxis> for PhasedPauli {
    fn from(a: &PauliAxis) -> Self {
        a.to_phased()
    }
}

/// Whether two axes commute; signs are irrelevant.
pub fn commutes(a: &PauliAxis, b: &PauliAxis) -> Result<bool> {
    check_qubits(a.num_qubits(), b.num_qubits())?;
    Ok(a.commutes_with(b))
}

/// Exact operator product including the accumulated phase.
pub fn product(a: &PhasedPauli, b: &PhasedPauli) -> Result<PhasedPauli> {
    check_qubits(a.word.n, b.word.n)?;
    Ok(a.mul(b))
}

/// `-A·B·C` for a triple with `[A,B] = 0` and `{A,C} = {B,C} = 0`.
///
/// The result is Hermitian and its word differs from all three inputs.
pub fn minus_abc(a: &PauliAxis, b: &PauliAxis, c: &PauliAxis) -> Result<PauliAxis> {
    check_qubits(a.num_qubits(), b.num_qubits())?;
    check_qubits(a.num_qubits(), c.num_qubits())?;
    if a.same_word(b) || a.same_word(c) || b.same_word(c) {
        return Err(Error::Precondition(format!(
            "axes {a}, {b}, {c} are not pairwise distinct up to sign"
        )));
    }
    if !a.commutes_with(b) {
        return Err(Error::Precondition(format!("{a} and {b} must commute")));
    }
    if a.commutes_with(c) {
        return Err(Error::Precondition(format!("{a} and {c} must anticommute")));
    }
    if b.commutes_with(c) {
        return Err(Error::Precondition(format!("{b} and {c} must anticommute")));
    }
    let abc = a.to_phased().mul(&b.to_phased()).mul(&c.to_phased()).negate();
    abc.to_axis()
        .ok_or_else(|| Error::Internal(format!("-({a})({b})({c}) = {abc} is not an axis")))
}

/// Uniform draw from the axis set on `n` qubits, restricted by `filter` through rejection.
pub fn sample_axis<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    filter: Option<&dyn Fn(&PauliAxis) -> bool>,
) -> Result<PauliAxis> {
    sample_axis_capped(n, rng, filter, DEFAULT_SAMPLE_CAP)
}

pub fn sample_axis_capped<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    filter: Option<&dyn Fn(&PauliAxis) -> bool>,
    cap: usize,
) -> Result<PauliAxis> {
    if n == 0 {
        return Err(Error::TooFewQubits { min: 1, got: 0 });
    }
    for _ in 0..cap {
        let axis = PauliAxis::random(n, rng);
        if filter.is_none_or(|f| f(&axis)) {
            return Ok(axis);
        }
    }
    Err(Error::CapExhausted { tries: cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn ax(s: &str) -> PauliAxis {
        s.parse().unwrap()
    }

    // Dense oracle: entry (r, c) is the product over qubits of the 2x2 entries,
    // with basis bit q belonging to qubit q.
    fn dense(p: &PhasedPauli) -> Vec<Vec<Complex64>> {
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::new(0.0, 0.0);
        let mat = |l: Pauli| -> [[Complex64; 2]; 2] {
            match l {
                Pauli::I => [[one, zero], [zero, one]],
                Pauli::X => [[zero, one], [one, zero]],
                Pauli::Y => [[zero, -i], [i, zero]],
                Pauli::Z => [[one, zero], [zero, -one]],
            }
        };
        let n = p.word().num_qubits();
        let dim = 1 << n;
        let phase = i.powu(p.phase() as u32);
        (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        (0..n).fold(phase, |acc, q| {
                            acc * mat(p.word().get(q))[(r >> q) & 1][(c >> q) & 1]
                        })
                    })
                    .collect()
            })
            .collect()
    }

    fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let d = a.len();
        (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|k| a[r][k] * b[k][c]).sum()).collect())
            .collect()
    }

    fn close(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| (x - y).norm() < 1e-12)
    }

    fn dense_commutes(a: &PauliAxis, b: &PauliAxis) -> bool {
        let (ma, mb) = (dense(&a.to_phased()), dense(&b.to_phased()));
        close(&matmul(&ma, &mb), &matmul(&mb, &ma))
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&ax("+XX"), &ax("+YY")).unwrap());
        assert!(!commutes(&ax("+XY"), &ax("+YY")).unwrap());
        assert!(commutes(&ax("+XI"), &ax("-XI")).unwrap());
        assert!(!dense_commutes(&ax("+XY"), &ax("+YY")));
        assert_eq!(
            commutes(&ax("+X"), &ax("+XX")),
            Err(Error::QubitMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn commutation_matches_dense_exhaustive_up_to_two_qubits() {
        for n in 1..=2 {
            let all = PauliAxis::enumerate(n);
            for a in &all {
                for b in &all {
                    assert_eq!(a.commutes_with(b), dense_commutes(a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn commutation_matches_dense_random_up_to_four_qubits() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=4 {
            for _ in 0..200 {
                let a = PauliAxis::random(n, &mut rng);
                let b = PauliAxis::random(n, &mut rng);
                assert_eq!(a.commutes_with(&b), dense_commutes(&a, &b));
            }
        }
    }

    #[test]
    fn product_examples() {
        let p = |s: &str| ax(s).to_phased();
        let xy_yx = product(&p("XY"), &p("YX")).unwrap();
        assert_eq!(xy_yx, PhasedPauli::new(PauliWord::from_letters("ZZ").unwrap(), 0));
        let xx = product(&p("X"), &p("X")).unwrap();
        assert!(xx.word().is_identity());
        assert_eq!(xx.phase(), 0);
        let xx_zz = product(&p("XX"), &p("ZZ")).unwrap();
        assert_eq!(xx_zz, PhasedPauli::new(PauliWord::from_letters("YY").unwrap(), 2));
    }

    #[test]
    fn product_matches_dense_two_qubits() {
        let all = PauliAxis::enumerate(2);
        for a in &all[..15] {
            for b in &all[..15] {
                let got = a.to_phased().mul(&b.to_phased());
                let want = matmul(&dense(&a.to_phased()), &dense(&b.to_phased()));
                assert!(close(&dense(&got), &want), "{a} * {b} = {got}");
            }
        }
    }

    #[test]
    fn minus_abc_examples() {
        assert_eq!(minus_abc(&ax("XY"), &ax("YX"), &ax("XX")).unwrap(), ax("+YY"));
        assert_eq!(minus_abc(&ax("-XY"), &ax("-YX"), &ax("+IZ")).unwrap(), ax("-ZI"));
        assert_eq!(minus_abc(&ax("XI"), &ax("IX"), &ax("ZZ")).unwrap(), ax("+YY"));
    }

    #[test]
    fn minus_abc_names_failed_precondition() {
        let err = minus_abc(&ax("XY"), &ax("YY"), &ax("XX")).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("must commute")));
        let err = minus_abc(&ax("XX"), &ax("YY"), &ax("ZZ")).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("anticommute")));
        let err = minus_abc(&ax("XY"), &ax("-XY"), &ax("ZZ")).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("distinct")));
    }

    #[test]
    fn sampling_single_qubit_covers_six_axes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let seen: HashSet<String> = (0..500)
            .map(|_| sample_axis(1, &mut rng, None).unwrap().to_string())
            .collect();
        let want: HashSet<String> = ["+X", "-X", "+Y", "-Y", "+Z", "-Z"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(seen, want);
    }

    #[test]
    fn sampling_respects_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let xx = ax("+XX");
        let anti = |a: &PauliAxis| !a.commutes_with(&xx);
        let allowed: HashSet<String> = PauliAxis::enumerate(2)
            .into_iter()
            .filter(|a| anti(a))
            .map(|a| a.to_string())
            .collect();
        assert_eq!(allowed.len(), 16);
        let seen: HashSet<String> = (0..2000)
            .map(|_| sample_axis(2, &mut rng, Some(&anti)).unwrap().to_string())
            .collect();
        assert_eq!(seen, allowed);
    }

    #[test]
    fn sampling_unsatisfiable_filter_exhausts_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z = ax("+Z");
        let f = |a: &PauliAxis| a.commutes_with(&z) && !a.same_word(&z);
        assert_eq!(
            sample_axis_capped(1, &mut rng, Some(&f), 500),
            Err(Error::CapExhausted { tries: 500 })
        );
    }

    #[test]
    fn text_round_trip_and_errors() {
        for s in ["+XYZ", "-XYX", "+IIIZ"] {
            assert_eq!(ax(s).to_string(), s);
        }
        assert_eq!(ax("XZ").to_string(), "+XZ");
        assert_eq!("+II".parse::<PauliAxis>(), Err(Error::IdentityAxis));
        assert!("+XQ".parse::<PauliAxis>().is_err());
        assert!("-".parse::<PauliAxis>().is_err());
    }

    #[test]
    fn wide_words_span_blocks() {
        let mut a = PauliWord::identity(130);
        a.set(0, Pauli::X);
        a.set(129, Pauli::Z);
        let mut b = PauliWord::identity(130);
        b.set(129, Pauli::X);
        assert!(!a.commutes_with(&b));
        assert_eq!(a.support(), vec![0, 129]);
        let (phase, w) = a.mul_with_phase(&b);
        assert_eq!(w.get(129), Pauli::Y);
        assert_eq!(phase, 1);
    }
}
