//! Letters, reduced words and the elementary operations of the free group
//! `F(A)` on a rank-`r` alphabet.
//!
//! A letter is a nonzero signed generator index: `a_i` is `i` and its inverse
//! `a_i^{-1}` is `-i`. Words are always stored freely reduced; every
//! constructor either checks or establishes that invariant.

mod format;
mod prefix;
mod sample;

use std::fmt;

use crate::error::{Error, Result};

pub use prefix::{equals, is_prefix, is_proper_prefix, probe_equal, probe_prefix, probe_proper_prefix, PrefixProbe};
pub use sample::{count_reduced, sample_uniform_reduced, ReducedLetters};

/// The rank of the ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if rank > i32::MAX as u32 {
            return Err(Error::Overflow { what: "alphabet rank" });
        }
        Ok(Self { rank })
    }

    #[inline]
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Number of letters of the symmetrized alphabet, `2r`.
    #[inline]
    pub fn size(&self) -> usize {
        2 * self.rank as usize
    }

    #[inline]
    pub fn contains(&self, letter: Letter) -> bool {
        letter.generator() <= self.rank
    }

    /// Builds the letter with the given signed index, checking the range.
    pub fn letter(&self, index: i32) -> Result<Letter> {
        let letter = Letter::new(index).ok_or(Error::ZeroLetter)?;
        if !self.contains(letter) {
            return Err(Error::LetterOutOfRange { index: index as i64, rank: self.rank });
        }
        Ok(letter)
    }

    /// All `2r` letters in the fixed order `a_1 < a_1^{-1} < a_2 < ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size()).map(Letter::from_ordinal)
    }

    /// Fails if some letter of `letters` is outside this alphabet.
    pub fn check(&self, letters: &[Letter]) -> Result<()> {
        match letters.iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(Error::LetterOutOfRange { index: l.index() as i64, rank: self.rank }),
            None => Ok(()),
        }
    }
}

/// A letter of the symmetrized alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    /// `None` for the index 0.
    #[inline]
    pub const fn new(index: i32) -> Option<Self> {
        if index == 0 || index == i32::MIN {
            None
        } else {
            Some(Self(index))
        }
    }

    /// The positive generator `a_i` (1-based).
    ///
    /// # Panics
    /// If `i` is zero.
    #[inline]
    pub fn gen(i: u32) -> Self {
        Self::new(i as i32).expect("generator index must be positive")
    }

    #[inline]
    pub const fn index(self) -> i32 {
        self.0
    }

    /// The generator number `|i|`.
    #[inline]
    pub const fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        Self(-self.0)
    }

    /// Position in the fixed letter order `a_1 < a_1^{-1} < a_2 < a_2^{-1} < ...`.
    #[inline]
    pub const fn ordinal(self) -> usize {
        2 * (self.generator() as usize - 1) + (self.0 < 0) as usize
    }

    #[inline]
    pub const fn from_ordinal(ordinal: usize) -> Self {
        let generator = (ordinal / 2 + 1) as i32;
        if ordinal.is_multiple_of(2) {
            Self(generator)
        } else {
            Self(-generator)
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.ordinal().cmp(&other.ordinal())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match format::text_char(*self) {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.0),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A freely reduced word, i.e. an element of the free group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub const fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    /// Wraps `letters`, rejecting sequences that are not freely reduced.
    pub fn from_letters(letters: Vec<Letter>) -> Result<Self> {
        if let Some(position) = first_cancellation(&letters) {
            return Err(Error::NotReduced { position });
        }
        Ok(Self { letters })
    }

    /// Signed indices, e.g. `[1, 2, -1]` for `a b a^{-1}`.
    pub fn from_indices(indices: &[i32]) -> Result<Self> {
        let letters = indices.iter().map(|&i| Letter::new(i).ok_or(Error::ZeroLetter)).collect::<Result<Vec<_>>>()?;
        Self::from_letters(letters)
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reducing<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for letter in letters {
            push_reducing(&mut out, letter);
        }
        Self { letters: out }
    }

    /// Caller guarantees the sequence is reduced.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(first_cancellation(&letters).is_none());
        Self { letters }
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    #[inline]
    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    #[inline]
    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// The largest generator number occurring in the word (0 when empty).
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Group product: concatenation followed by free reduction at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let lhs = &self.letters;
        let rhs = &other.letters;
        let mut cancel = 0;
        while cancel < lhs.len() && cancel < rhs.len() && lhs[lhs.len() - 1 - cancel] == rhs[cancel].inverse() {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(lhs.len() + rhs.len() - 2 * cancel);
        letters.extend_from_slice(&lhs[..lhs.len() - cancel]);
        letters.extend_from_slice(&rhs[cancel..]);
        Self { letters }
    }

    /// `self^exponent`, reduced.
    pub fn pow(&self, exponent: u32) -> Word {
        let mut out = Word::empty();
        for _ in 0..exponent {
            out = out.concat(self);
        }
        out
    }

    /// True when the square of the word is reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(first), Some(last)) => self.len() == 1 || last != first.inverse(),
            _ => true,
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text() {
            Some(text) => f.write_str(&text),
            None => f.write_str(&self.to_numeric()),
        }
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.letters
    }
}

#[inline]
fn push_reducing(out: &mut Vec<Letter>, letter: Letter) {
    if out.last() == Some(&letter.inverse()) {
        out.pop();
    } else {
        out.push(letter);
    }
}

fn first_cancellation(letters: &[Letter]) -> Option<usize> {
    letters.windows(2).position(|pair| pair[1] == pair[0].inverse())
}

/// Free reduction of a letter sequence over `alphabet`.
pub fn reduce(alphabet: Alphabet, seq: &[Letter]) -> Result<Word> {
    alphabet.check(seq)?;
    Ok(Word::reducing(seq.iter().copied()))
}

pub fn invert(w: &Word) -> Word {
    w.inverse()
}

pub fn concat_reduce(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

/// `u = conjugator · core · conjugator^{-1}` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub conjugator: Word,
    pub core: Word,
}

impl CoreDecomposition {
    /// Reassembles the original word.
    pub fn reassemble(&self) -> Word {
        self.conjugator.concat(&self.core).concat(&self.conjugator.inverse())
    }
}

/// Position of the cyclic core inside a reduced word, found by the peeling
/// loop with two cursors. `comparisons` counts first/last letter tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreBounds {
    pub start: usize,
    pub end: usize,
    pub comparisons: usize,
}

impl CoreBounds {
    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Peels matching first/last letters while at least three letters remain.
pub fn cyclic_core_bounds(letters: &[Letter]) -> CoreBounds {
    let (mut start, mut end) = (0, letters.len());
    let mut comparisons = 0;
    while end - start >= 3 {
        comparisons += 1;
        if letters[end - 1] == letters[start].inverse() {
            start += 1;
            end -= 1;
        } else {
            break;
        }
    }
    CoreBounds { start, end, comparisons }
}

pub fn cyclic_core(u: &Word) -> CoreDecomposition {
    let bounds = cyclic_core_bounds(u.letters());
    CoreDecomposition {
        conjugator: Word::from_reduced_unchecked(u.letters()[..bounds.start].to_vec()),
        core: Word::from_reduced_unchecked(u.letters()[bounds.start..bounds.end].to_vec()),
    }
}
