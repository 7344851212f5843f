//! The free group `F(X)` of rank `m`: letters, free reduction, reduced
//! words and the spheres `S_k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("cancellation at the junction: {left} . {right}")]
    Cancellation { left: Word, right: Word },
    #[error("word is not freely reduced at position {0}")]
    NotReduced(usize),
    #[error("bad letter token `{0}`")]
    BadToken(String),
    #[error("letter index {index} exceeds rank {rank}")]
    OutOfRank { index: u32, rank: u32 },
    #[error("rank must be at least 1")]
    ZeroRank,
}

/// A generator `x_i` or its formal inverse `X_i`. Indices start at 1.
///
/// The derived order is `x1 < X1 < x2 < X2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    index: u32,
    inverted: bool,
}

impl Letter {
    pub fn new(index: u32, inverted: bool) -> Self {
        assert!(index >= 1, "letter indices start at 1");
        Letter { index, inverted }
    }

    pub fn gen(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverted
    }

    pub fn inverse(self) -> Self {
        Letter { index: self.index, inverted: !self.inverted }
    }

    /// Position in the symmetrized alphabet, `0..2m`, matching the letter order.
    pub fn code(self) -> usize {
        2 * (self.index as usize - 1) + self.inverted as usize
    }

    pub fn from_code(code: usize) -> Self {
        Letter { index: (code / 2) as u32 + 1, inverted: code % 2 == 1 }
    }

    /// Parse a single token: `x3`, `X3`, or a compact letter `a..z` / `A..Z`.
    pub fn parse_token(tok: &str) -> Result<Letter, WordError> {
        let bad = || WordError::BadToken(tok.to_string());
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.is_empty() && head.is_ascii_alphabetic() {
            let inverted = head.is_ascii_uppercase();
            let index = head.to_ascii_lowercase() as u32 - 'a' as u32 + 1;
            return Ok(Letter::new(index, inverted));
        }
        let inverted = match head {
            'x' => false,
            'X' => true,
            _ => return Err(bad()),
        };
        let index: u32 = rest.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter::new(index, inverted))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.inverted { 'X' } else { 'x' };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::parse_token(s.trim())
    }
}

/// The symmetrized alphabet of a rank-`m` free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// `2m`
    pub fn size(self) -> usize {
        2 * self.rank as usize
    }

    /// All `2m` letters in order.
    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size()).map(Letter::from_code)
    }

    pub fn contains(self, l: Letter) -> bool {
        l.index <= self.rank
    }

    pub fn check_word(self, w: &Word) -> Result<(), WordError> {
        match w.letters().iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(WordError::OutOfRank { index: l.index, rank: self.rank }),
            None => Ok(()),
        }
    }

    pub fn parse_word(self, s: &str) -> Result<Word, WordError> {
        let w: Word = s.parse()?;
        self.check_word(&w)?;
        Ok(w)
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Wrap an already-reduced sequence.
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(i) = letters.windows(2).position(|p| p[1] == p[0].inverse()) {
            return Err(WordError::NotReduced(i));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Group product with free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Cancellation-free product `self ∘ other`.
    pub fn circ(&self, other: &Word) -> Result<Word, WordError> {
        circ(self, other)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses `"x1 X2 x1"`, the compact form `"aBa"`, and `""` or `"1"` for the
/// identity. Unreduced input is rejected; use [`reduce`] for raw sequences.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity());
        }
        let letters = if s.chars().any(|c| c.is_ascii_digit()) {
            s.split_whitespace().map(Letter::parse_token).collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| Letter::parse_token(c.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>, _>>()?
        };
        Word::new(letters)
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

pub fn circ(u: &Word, v: &Word) -> Result<Word, WordError> {
    match (u.last(), v.first()) {
        (Some(a), Some(b)) if b == a.inverse() => Err(WordError::Cancellation { left: u.clone(), right: v.clone() }),
        _ => {
            let mut letters = u.0.clone();
            letters.extend_from_slice(&v.0);
            Ok(Word(letters))
        }
    }
}

/// `|S_k|`: 1 for `k = 0`, otherwise `2m (2m-1)^(k-1)`.
pub fn sphere_size(m: u32, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let two_m = BigUint::from(2 * m);
    let base = BigUint::from(2 * m - 1);
    two_m * Pow::pow(&base, k - 1)
}

/// Lexicographic iterator over the reduced words of length exactly `k`.
#[derive(Debug, Clone)]
pub struct SphereIter {
    size: usize,
    current: Option<Vec<usize>>,
}

fn smallest_after(prev: Option<usize>) -> usize {
    match prev {
        Some(p) if p ^ 1 == 0 => 1,
        _ => 0,
    }
}

impl SphereIter {
    fn new(m: u32, k: usize) -> Self {
        let size = 2 * m as usize;
        let mut first = Vec::with_capacity(k);
        for i in 0..k {
            let prev = if i == 0 { None } else { Some(first[i - 1]) };
            first.push(smallest_after(prev));
        }
        SphereIter { size, current: Some(first) }
    }

    fn advance(&mut self, word: &mut [usize]) -> bool {
        let k = word.len();
        for i in (0..k).rev() {
            let forbidden = if i == 0 { None } else { Some(word[i - 1] ^ 1) };
            let mut c = word[i] + 1;
            if Some(c) == forbidden {
                c += 1;
            }
            if c < self.size {
                word[i] = c;
                for j in i + 1..k {
                    word[j] = smallest_after(Some(word[j - 1]));
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SphereIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let mut codes = self.current.take()?;
        let word = Word(codes.iter().map(|&c| Letter::from_code(c)).collect());
        if self.advance(&mut codes) {
            self.current = Some(codes);
        }
        Some(word)
    }
}

pub fn enumerate_sphere(m: u32, k: usize) -> SphereIter {
    SphereIter::new(m, k)
}

/// Adjusted weight `(2m-1)^(-|w|)` of a single word. Meaningful for `m >= 2`.
pub fn word_weight_star<T: Scalar>(w: &Word, m: u32) -> T {
    let base = T::from_int(2 * m as i64 - 1);
    let mut denom = T::one();
    for _ in 0..w.len() {
        denom = denom * base.clone();
    }
    T::one() / denom
}
