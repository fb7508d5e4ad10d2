//! Text and numeric word formats.
//!
//! Text (rank <= 26): generators `a`..`z`, inverses `A`..`Z`, so `"abA"` is
//! `a b a^{-1}`. Numeric (any rank): whitespace-separated signed integers,
//! e.g. `"1 2 -1"`. A string containing a digit or a minus sign is read as
//! numeric.

use super::{Letter, Word};
use crate::error::{Error, Result};

pub(crate) fn text_char(letter: Letter) -> Option<char> {
    let g = letter.generator();
    if g == 0 || g > 26 {
        return None;
    }
    let base = if letter.is_positive() { b'a' } else { b'A' };
    Some((base + (g - 1) as u8) as char)
}

pub(crate) fn letter_from_char(c: char) -> Option<Letter> {
    match c {
        'a'..='z' => Letter::new((c as u8 - b'a' + 1) as i32),
        'A'..='Z' => Letter::new(-((c as u8 - b'A' + 1) as i32)),
        _ => None,
    }
}

fn parse_letters(input: &str) -> Result<Vec<Letter>> {
    let numeric = input.chars().any(|c| c.is_ascii_digit() || c == '-');
    let err = |reason: String| Error::Parse { input: input.to_string(), reason };
    if numeric {
        input
            .split_whitespace()
            .map(|tok| {
                let i: i32 = tok.parse().map_err(|_| err(format!("bad letter index {tok:?}")))?;
                Letter::new(i).ok_or_else(|| err("0 is not a letter".into()))
            })
            .collect()
    } else {
        input
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| letter_from_char(c).ok_or_else(|| err(format!("unexpected character {c:?}"))))
            .collect()
    }
}

impl Word {
    /// Parses a word in text or numeric format, rejecting unreduced input.
    pub fn parse(input: &str) -> Result<Self> {
        Self::from_letters(parse_letters(input)?)
    }

    /// Parses a word and freely reduces it.
    pub fn parse_reducing(input: &str) -> Result<Self> {
        Ok(Self::reducing(parse_letters(input)?))
    }

    /// Text format, or `None` if a generator beyond `z` occurs.
    pub fn to_text(&self) -> Option<String> {
        self.letters().iter().map(|&l| text_char(l)).collect()
    }

    pub fn to_numeric(&self) -> String {
        let parts: Vec<String> = self.letters().iter().map(|l| l.index().to_string()).collect();
        parts.join(" ")
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}
