//! Words over a finite alphabet and their mixed-radix ranks.
//!
//! The cube `U_{k,h}` is the set of words of length `k` over the letters
//! `0..h`. Positions are the integers `0..k`; every definition in the crate
//! is invariant under order isomorphism, so no other linear order is needed.
//! A word's rank is its big-endian base-`h` value.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;
pub type Color = u8;

/// Largest alphabet (and color set) the dense tables can address.
pub const MAX_SYMBOLS: usize = 256;

/// A finite alphabet `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_SYMBOLS {
            return Err(Error::InvalidKind(format!(
                "alphabet size must be in 1..={MAX_SYMBOLS}, got {size}"
            )));
        }
        Ok(Self(size))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

/// A finite color set `{0, .., size-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSet(usize);

impl ColorSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_SYMBOLS {
            return Err(Error::InvalidKind(format!(
                "color count must be in 1..={MAX_SYMBOLS}, got {size}"
            )));
        }
        Ok(Self(size))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

/// A point of the cube: a function from positions `0..k` to letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    /// Checks every letter against the alphabet size.
    pub fn checked(letters: Vec<Letter>, h: usize) -> Result<Self> {
        let w = Self(letters);
        w.validate(h)?;
        Ok(w)
    }

    pub fn constant(k: usize, letter: Letter) -> Self {
        Self(vec![letter; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn validate(&self, h: usize) -> Result<()> {
        match self.0.iter().position(|&a| a as usize >= h) {
            Some(i) => Err(Error::InvalidWord(format!(
                "letter {} at position {i} is not below {h}",
                self.0[i]
            ))),
            None => Ok(()),
        }
    }

    /// Parses a digit string such as `"0112"`; digits beyond 9 use `a..z`.
    pub fn parse(s: &str, h: usize) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| {
                ch.to_digit(36)
                    .map(|d| d as Letter)
                    .ok_or_else(|| Error::InvalidWord(format!("bad digit {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::checked(letters, h)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            let ch = char::from_digit(u32::from(a), 36).unwrap_or('?');
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

/// `h^k`, or an error if it does not fit in `usize`.
pub fn cube_size(k: usize, h: usize) -> Result<usize> {
    let exp = u32::try_from(k).map_err(|_| Error::SizeLimit(format!("cube side {k}")))?;
    h.checked_pow(exp)
        .ok_or_else(|| Error::SizeLimit(format!("{h}^{k} points")))
}

/// Big-endian base-`h` value of `w`.
pub fn rank_word(w: &Word, h: usize) -> Result<usize> {
    w.validate(h)?;
    w.letters().iter().try_fold(0usize, |acc, &a| {
        acc.checked_mul(h)
            .and_then(|v| v.checked_add(a as usize))
            .ok_or_else(|| Error::SizeLimit(format!("rank of a length-{} word", w.len())))
    })
}

/// Inverse of [`rank_word`] for words of length `k`.
pub fn unrank_word(mut r: usize, k: usize, h: usize) -> Result<Word> {
    if h == 0 || h > MAX_SYMBOLS {
        return Err(Error::InvalidWord(format!("alphabet size {h}")));
    }
    if let Ok(n) = cube_size(k, h) {
        if r >= n {
            return Err(Error::InvalidWord(format!("rank {r} out of range for {h}^{k}")));
        }
    }
    let mut letters = vec![0; k];
    for slot in letters.iter_mut().rev() {
        *slot = (r % h) as Letter;
        r /= h;
    }
    Ok(Word(letters))
}

/// Per-letter counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CountProfile {
    counts: Vec<usize>,
}

impl CountProfile {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn zero(h: usize) -> Self {
        Self { counts: vec![0; h] }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub(crate) fn bump(&mut self, letter: Letter) {
        self.counts[letter as usize] += 1;
    }
}

impl fmt::Display for CountProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Counts of each letter of `w` over the positions in `positions`.
pub fn letter_counts(w: &Word, positions: &[usize], h: usize) -> Result<CountProfile> {
    w.validate(h)?;
    let mut seen = vec![false; w.len()];
    let mut profile = CountProfile::zero(h);
    for &i in positions {
        if i >= w.len() {
            return Err(Error::InvalidPositions(format!(
                "position {i} outside a word of length {}",
                w.len()
            )));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPositions(format!("position {i} repeated")));
        }
        profile.bump(w[i]);
    }
    Ok(profile)
}

/// The `E_N` relation: the two words agree up to a permutation of `positions`
/// (equivalently, have equal letter counts there).
pub fn e_equiv(a: &Word, b: &Word, positions: &[usize]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::InvalidPair(format!(
            "lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    let h = a
        .letters()
        .iter()
        .chain(b.letters())
        .map(|&x| x as usize + 1)
        .max()
        .unwrap_or(1);
    Ok(letter_counts(a, positions, h)? == letter_counts(b, positions, h)?)
}
