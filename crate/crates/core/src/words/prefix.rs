//! Left-to-right prefix comparisons that stop at the first mismatch.
//!
//! The probes work over arbitrary letter iterators so that lazily generated
//! words are only materialized as far as the comparison actually reads.

use super::{Letter, Word};

/// Outcome of a prefix comparison together with the number of letter
/// comparisons it performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixProbe {
    pub answer: bool,
    pub comparisons: usize,
}

#[derive(Clone, Copy)]
enum Mode {
    Proper,
    Prefix,
    Equal,
}

fn probe<I, J>(u: I, v: J, mode: Mode) -> PrefixProbe
where
    I: IntoIterator<Item = Letter>,
    J: IntoIterator<Item = Letter>,
{
    let mut u = u.into_iter();
    let mut v = v.into_iter();
    let mut comparisons = 0;
    loop {
        let answer = match (u.next(), v.next()) {
            (Some(x), Some(y)) => {
                comparisons += 1;
                if x == y {
                    continue;
                }
                false
            }
            // end of u, v continues
            (None, Some(_)) => !matches!(mode, Mode::Equal),
            // both ended together
            (None, None) => !matches!(mode, Mode::Proper),
            // v ended first
            (Some(_), None) => false,
        };
        return PrefixProbe { answer, comparisons };
    }
}

/// Is `u` a proper prefix of `v` (`v = u u'` with `u'` nonempty)?
pub fn probe_proper_prefix<I, J>(u: I, v: J) -> PrefixProbe
where
    I: IntoIterator<Item = Letter>,
    J: IntoIterator<Item = Letter>,
{
    probe(u, v, Mode::Proper)
}

pub fn probe_prefix<I, J>(u: I, v: J) -> PrefixProbe
where
    I: IntoIterator<Item = Letter>,
    J: IntoIterator<Item = Letter>,
{
    probe(u, v, Mode::Prefix)
}

pub fn probe_equal<I, J>(u: I, v: J) -> PrefixProbe
where
    I: IntoIterator<Item = Letter>,
    J: IntoIterator<Item = Letter>,
{
    probe(u, v, Mode::Equal)
}

pub fn is_proper_prefix(u: &Word, v: &Word) -> bool {
    probe_proper_prefix(u.letters().iter().copied(), v.letters().iter().copied()).answer
}

pub fn is_prefix(u: &Word, v: &Word) -> bool {
    probe_prefix(u.letters().iter().copied(), v.letters().iter().copied()).answer
}

pub fn equals(u: &Word, v: &Word) -> bool {
    probe_equal(u.letters().iter().copied(), v.letters().iter().copied()).answer
}
