//! Finite words over ordered alphabets, Parikh vectors, the Sturmian
//! generation rule, and the Fibonacci word family.
//!
//! Positions are 1-based throughout.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::QuadraticNumber;
use crate::numtheory::fibonacci;

/// The default two-letter alphabet, with a < b.
pub const BINARY_ALPHABET: &[u8] = b"ab";

/// A finite word over an ordered alphabet (default {a, b}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Vec<u8>,
    letters: Vec<u8>,
}

impl Word {
    /// A word over an explicit alphabet. The alphabet is sorted and
    /// deduplicated; every letter must belong to it.
    pub fn from_bytes(letters: &[u8], alphabet: &[u8]) -> Result<Self> {
        let mut alphabet: Vec<u8> = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        if let Some(&bad) = alphabet.iter().find(|c| !c.is_ascii()) {
            return Err(Error::InvalidSymbol(bad));
        }
        if let Some(&bad) = letters.iter().find(|c| !alphabet.contains(c)) {
            return Err(Error::InvalidSymbol(bad));
        }
        Ok(Word {
            alphabet,
            letters: letters.to_vec(),
        })
    }

    /// A word over {a, b}.
    pub fn binary(text: &str) -> Result<Self> {
        Self::from_bytes(text.as_bytes(), BINARY_ALPHABET)
    }

    /// A word whose alphabet is inferred from its distinct letters.
    pub fn infer(text: &str) -> Result<Self> {
        Self::from_bytes(text.as_bytes(), text.as_bytes())
    }

    /// The empty word over {a, b}.
    pub fn empty_binary() -> Self {
        Word {
            alphabet: BINARY_ALPHABET.to_vec(),
            letters: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter at 1-based position n.
    pub fn get(&self, n: usize) -> Option<u8> {
        (n >= 1).then(|| self.letters.get(n - 1).copied()).flatten()
    }

    /// The factor w[i..j] (1-based, inclusive), empty when j < i.
    pub fn slice(&self, i: usize, j: usize) -> Option<&[u8]> {
        if i < 1 || j > self.len() {
            return None;
        }
        if j < i {
            return Some(&[]);
        }
        Some(&self.letters[i - 1..j])
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    /// Letter-count profile in alphabet order.
    pub fn parikh(&self) -> ParikhVector {
        let counts = self
            .alphabet
            .iter()
            .map(|&c| self.letters.iter().filter(|&&l| l == c).count() as u64)
            .collect();
        ParikhVector {
            alphabet: self.alphabet.clone(),
            counts,
        }
    }

    /// Lexicographic comparison under the shared alphabet order.
    pub fn lex_cmp(&self, other: &Self) -> Result<std::cmp::Ordering> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // alphabets are validated ASCII
        f.write_str(&String::from_utf8_lossy(&self.letters))
    }
}

/// Letter counts of a word, one component per alphabet letter in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector {
    alphabet: Vec<u8>,
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn new(alphabet: &[u8], counts: Vec<u64>) -> Result<Self> {
        if alphabet.len() != counts.len() {
            return Err(Error::AlphabetMismatch);
        }
        let mut alphabet = alphabet.to_vec();
        let before = alphabet.clone();
        alphabet.sort_unstable();
        alphabet.dedup();
        // counts are positional, so reordering the alphabet would scramble them
        if alphabet != before {
            return Err(Error::AlphabetMismatch);
        }
        Ok(ParikhVector { alphabet, counts })
    }

    /// Counts over {a, b}.
    pub fn binary(a: u64, b: u64) -> Self {
        ParikhVector {
            alphabet: BINARY_ALPHABET.to_vec(),
            counts: vec![a, b],
        }
    }

    pub fn alphabet(&self) -> &[u8] {
        &self.alphabet
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Sum of all components, i.e. the length of any word profiled.
    pub fn norm(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Strict containment: every component <= and the norm strictly smaller.
    pub fn contained_in(&self, other: &Self) -> Result<bool> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let componentwise = self
            .counts
            .iter()
            .zip(&other.counts)
            .all(|(mine, theirs)| mine <= theirs);
        Ok(componentwise && self.norm() < other.norm())
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Slope and intercept of a rotation word: letter n is determined by where
/// {nα + ρ} falls relative to {−α}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianParams {
    alpha: QuadraticNumber,
    rho: QuadraticNumber,
}

impl SturmianParams {
    /// Irrational slope in (0, 1); rational slopes are rejected so that
    /// Sturmian-only reasoning cannot be applied to periodic words silently.
    pub fn new(alpha: QuadraticNumber, rho: QuadraticNumber) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::RationalSlope);
        }
        Self::periodic(alpha, rho)
    }

    /// Any slope in (0, 1), including rational ones (the generated word is
    /// then periodic).
    pub fn periodic(alpha: QuadraticNumber, rho: QuadraticNumber) -> Result<Self> {
        if alpha.sign() <= 0 || (&alpha - &QuadraticNumber::from_int(1)).sign() >= 0 {
            return Err(Error::SlopeOutOfRange(format!(
                "slope must lie strictly between 0 and 1, got {alpha}"
            )));
        }
        // every orbit point mixes alpha and rho, so their fields must agree
        alpha.try_add(&rho)?;
        Ok(SturmianParams { alpha, rho })
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn rho(&self) -> &QuadraticNumber {
        &self.rho
    }

    pub fn is_periodic(&self) -> bool {
        self.alpha.is_rational()
    }

    /// The letter boundary {−α}.
    pub fn threshold(&self) -> QuadraticNumber {
        (-&self.alpha).frac()
    }

    /// The orbit point {nα + ρ}.
    pub fn point_at(&self, n: u64) -> QuadraticNumber {
        let scaled = self
            .alpha
            .try_mul(&QuadraticNumber::from_int(n))
            .expect("integer operand");
        scaled.try_add(&self.rho).expect("same field").frac()
    }

    /// Iterator over (n, {nα + ρ}, letter) from n = 1, stepping the orbit
    /// incrementally (add α, wrap past 1) instead of multiplying from
    /// scratch each time.
    pub fn orbit(&self) -> Orbit {
        Orbit {
            alpha: self.alpha.clone(),
            threshold: self.threshold(),
            point: self.rho.frac(),
            n: 0,
        }
    }
}

/// See [`SturmianParams::orbit`].
pub struct Orbit {
    alpha: QuadraticNumber,
    threshold: QuadraticNumber,
    point: QuadraticNumber,
    n: u64,
}

impl Iterator for Orbit {
    type Item = (u64, QuadraticNumber, u8);

    fn next(&mut self) -> Option<Self::Item> {
        let one = QuadraticNumber::from_int(1);
        let stepped = self.point.try_add(&self.alpha).expect("same field");
        self.point = if stepped.cmp_checked(&one).expect("same field").is_lt() {
            stepped
        } else {
            stepped.try_sub(&one).expect("same field")
        };
        self.n += 1;
        let letter = letter_for(&self.point, &self.threshold);
        Some((self.n, self.point.clone(), letter))
    }
}

/// 'b' iff the orbit point lies in [0, {−α}).
fn letter_for(point: &QuadraticNumber, threshold: &QuadraticNumber) -> u8 {
    match point.cmp_checked(threshold).expect("points share a field") {
        std::cmp::Ordering::Less => b'b',
        _ => b'a',
    }
}

/// The n-th letter (1-based): 'b' iff {nα + ρ} ∈ [0, {−α}), else 'a'.
pub fn sturmian_letter(params: &SturmianParams, n: u64) -> u8 {
    assert!(n >= 1, "positions are 1-based");
    letter_for(&params.point_at(n), &params.threshold())
}

/// The first `count` letters as a word over {a, b}.
pub fn sturmian_prefix(params: &SturmianParams, count: usize) -> Word {
    let letters = params
        .orbit()
        .take(count)
        .map(|(_, _, letter)| letter)
        .collect();
    Word {
        alphabet: BINARY_ALPHABET.to_vec(),
        letters,
    }
}

/// Longest Fibonacci word this library will materialize (256 MiB).
const MAX_FIB_WORD_LEN: u64 = 1 << 28;

/// The j-th Fibonacci word: f_0 = b, f_1 = a, f_{j+1} = f_j f_{j-1}.
/// Its length is F_j.
pub fn fibonacci_word(j: u64) -> Result<Word> {
    let length = fibonacci(j)
        .to_u64()
        .filter(|&len| len <= MAX_FIB_WORD_LEN)
        .ok_or_else(|| {
            Error::OutOfRange(format!("fibonacci word at index {j} is too large to build"))
        })?;
    let mut prev: Vec<u8> = b"b".to_vec();
    let mut current: Vec<u8> = b"a".to_vec();
    if j == 0 {
        current = prev.clone();
    }
    for _ in 1..j {
        let mut next = Vec::with_capacity(current.len() + prev.len());
        next.extend_from_slice(&current);
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut current, next);
    }
    debug_assert_eq!(current.len() as u64, length);
    Ok(Word {
        alphabet: BINARY_ALPHABET.to_vec(),
        letters: current,
    })
}
