//! Exact uniform sampling and counting of reduced words.

use rand::Rng;

use super::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Lazily generated uniform reduced word of a fixed length.
///
/// The first letter is uniform over the `2r` letters and every later letter
/// is uniform over the `2r - 1` letters other than the inverse of its
/// predecessor, which makes the whole word uniform among the reduced words
/// of that length. Consuming only a prefix yields a prefix with the correct
/// marginal distribution.
pub struct ReducedLetters<'r, R: Rng + ?Sized> {
    size: usize,
    remaining: usize,
    previous: Option<Letter>,
    rng: &'r mut R,
}

impl<'r, R: Rng + ?Sized> ReducedLetters<'r, R> {
    pub fn new(alphabet: Alphabet, length: usize, rng: &'r mut R) -> Self {
        Self { size: alphabet.size(), remaining: length, previous: None, rng }
    }
}

impl<R: Rng + ?Sized> Iterator for ReducedLetters<'_, R> {
    type Item = Letter;

    #[inline]
    fn next(&mut self) -> Option<Letter> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let letter = match self.previous {
            None => Letter::from_ordinal(self.rng.random_range(0..self.size)),
            Some(prev) => {
                let forbidden = prev.inverse().ordinal();
                let t = self.rng.random_range(0..self.size - 1);
                Letter::from_ordinal(if t >= forbidden { t + 1 } else { t })
            }
        };
        self.previous = Some(letter);
        Some(letter)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<R: Rng + ?Sized> ExactSizeIterator for ReducedLetters<'_, R> {}

/// Uniform random reduced word of length `n`.
pub fn sample_uniform_reduced<R: Rng + ?Sized>(alphabet: Alphabet, n: usize, rng: &mut R) -> Word {
    Word::from_reduced_unchecked(ReducedLetters::new(alphabet, n, rng).collect())
}

/// Number of reduced words of length `n` on `r` generators: `2r(2r-1)^(n-1)`,
/// and 1 for `n = 0`.
pub fn count_reduced(r: u32, n: u32) -> Result<u128> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    if n == 0 {
        return Ok(1);
    }
    let overflow = Error::Overflow { what: "reduced word count" };
    let size = 2 * r as u128;
    (size - 1).checked_pow(n - 1).and_then(|p| p.checked_mul(size)).ok_or(overflow)
}
