//! Whitehead automorphisms of the second kind and greedy length reduction.

use crate::error::{Error, Result};
use crate::words::{cyclic_core_bounds, Alphabet, Letter, Word};

/// Largest rank for which automorphism sets fit in a `u64` mask.
pub const MAX_WHITEHEAD_RANK: u32 = 32;

/// The automorphism `(S, a)` with `a ∈ S`, `a^{-1} ∉ S`:
/// with `x` ranging over letters other than `a^{±1}`,
/// `x ↦ x a` if only `x ∈ S`, `x ↦ a^{-1} x` if only `x^{-1} ∈ S`,
/// `x ↦ a^{-1} x a` if both, `x ↦ x` if neither; `a ↦ a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WhiteheadAutomorphism {
    multiplier: Letter,
    /// Bit `ordinal(x)` set iff `x ∈ S`.
    set: u64,
}

impl WhiteheadAutomorphism {
    pub fn new(alphabet: Alphabet, set: &[Letter], multiplier: Letter) -> Result<Self> {
        if alphabet.rank() > MAX_WHITEHEAD_RANK {
            return Err(Error::InvalidAutomorphism("rank too large for Whitehead enumeration"));
        }
        alphabet.check(set)?;
        alphabet.check(&[multiplier])?;
        let mask = set.iter().fold(0u64, |m, l| m | 1 << l.ordinal());
        Self::from_mask(multiplier, mask)
    }

    fn from_mask(multiplier: Letter, set: u64) -> Result<Self> {
        if set >> multiplier.ordinal() & 1 == 0 {
            return Err(Error::InvalidAutomorphism("multiplier must lie in the set"));
        }
        if set >> multiplier.inverse().ordinal() & 1 == 1 {
            return Err(Error::InvalidAutomorphism("inverse of the multiplier must not lie in the set"));
        }
        Ok(Self { multiplier, set })
    }

    #[inline]
    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    pub fn set(&self) -> Vec<Letter> {
        (0..64).filter(|&o| self.set >> o & 1 == 1).map(Letter::from_ordinal).collect()
    }

    #[inline]
    fn contains(&self, x: Letter) -> bool {
        self.set >> x.ordinal() & 1 == 1
    }

    /// `(S - a + a^{-1}, a^{-1})`.
    pub fn inverse(&self) -> Self {
        let a = self.multiplier;
        Self { multiplier: a.inverse(), set: (self.set & !(1 << a.ordinal())) | 1 << a.inverse().ordinal() }
    }

    /// Is this the identity (`S = {a}`)?
    pub fn is_identity(&self) -> bool {
        self.set == 1 << self.multiplier.ordinal()
    }

    /// Image of one letter, at most three letters long.
    #[inline]
    fn image(&self, x: Letter, out: &mut Vec<Letter>) {
        let a = self.multiplier;
        if x.generator() == a.generator() {
            out.push(x);
            return;
        }
        // the image of x^{-1} is the inverse of the image of x
        let (right, left) = (self.contains(x), self.contains(x.inverse()));
        if left {
            out.push(a.inverse());
        }
        out.push(x);
        if right {
            out.push(a);
        }
    }

    /// `φ(w)`, freely reduced.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() + 2);
        self.apply_into(w.letters(), &mut out);
        Word::from_reduced_unchecked(out)
    }

    fn apply_into(&self, w: &[Letter], out: &mut Vec<Letter>) {
        out.clear();
        let mut buf = Vec::with_capacity(3);
        for &x in w {
            buf.clear();
            self.image(x, &mut buf);
            for &y in &buf {
                if out.last() == Some(&y.inverse()) {
                    out.pop();
                } else {
                    out.push(y);
                }
            }
        }
    }
}

/// All non-identity automorphisms `(S, a)`: multipliers in letter order,
/// then subsets of the other `2r - 2` letters in binary-counter order (bit
/// `j` for the `j`-th such letter in letter order).
pub fn whitehead_automorphisms(alphabet: Alphabet) -> Result<impl Iterator<Item = WhiteheadAutomorphism> + Clone> {
    if alphabet.rank() > MAX_WHITEHEAD_RANK {
        return Err(Error::InvalidAutomorphism("rank too large for Whitehead enumeration"));
    }
    let size = alphabet.size();
    Ok((0..size).flat_map(move |m| {
        let others: Vec<usize> = (0..size).filter(|&o| o / 2 != m / 2).collect();
        (1u64..1 << others.len()).map(move |mask| {
            let set =
                others.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).fold(1u64 << m, |s, (_, &o)| s | 1 << o);
            WhiteheadAutomorphism { multiplier: Letter::from_ordinal(m), set }
        })
    }))
}

pub fn apply_whitehead(phi: &WhiteheadAutomorphism, w: &Word) -> Word {
    phi.apply(w)
}

/// Outcome of greedy Whitehead reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadReduction {
    /// Cyclically reduced word of locally (hence globally) minimal length.
    pub minimal: Word,
    pub automorphisms_applied: usize,
}

/// Repeatedly applies the first automorphism that strictly shortens the
/// cyclic core until none does.
pub fn whitehead_reduce(alphabet: Alphabet, w: &Word) -> Result<WhiteheadReduction> {
    alphabet.check(w.letters())?;
    let autos = whitehead_automorphisms(alphabet)?;
    let b = cyclic_core_bounds(w.letters());
    let mut current: Vec<Letter> = w.letters()[b.start..b.end].to_vec();
    let mut image = Vec::with_capacity(current.len() + 2);
    let mut applied = 0;
    'outer: while current.len() > 1 {
        for phi in autos.clone() {
            phi.apply_into(&current, &mut image);
            let core = cyclic_core_bounds(&image);
            if core.len() < current.len() {
                current = image[core.start..core.end].to_vec();
                applied += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(WhiteheadReduction { minimal: Word::from_reduced_unchecked(current), automorphisms_applied: applied })
}

/// `w` is primitive iff its Whitehead-minimal cyclic length is 1.
pub fn is_primitive_whitehead(alphabet: Alphabet, w: &Word) -> Result<bool> {
    Ok(whitehead_reduce(alphabet, w)?.minimal.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn r2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn letters(s: &str) -> Vec<Letter> {
        s.chars().map(|c| w(&c.to_string()).letters()[0]).collect()
    }

    #[test]
    fn apply_examples() {
        let phi = WhiteheadAutomorphism::new(r2(), &letters("ab"), Letter::gen(1)).unwrap();
        assert_eq!(phi.apply(&w("ba")), w("baa"));
        assert_eq!(phi.apply(&w("bA")), w("b"));
        let id = WhiteheadAutomorphism::new(r2(), &letters("a"), Letter::gen(1)).unwrap();
        assert!(id.is_identity());
        for s in ["", "abAB", "bbbA", "BaBa"] {
            assert_eq!(id.apply(&w(s)), w(s));
        }
    }

    #[test]
    fn conjugating_action() {
        // x and x^{-1} both in S: b -> A b a
        let phi = WhiteheadAutomorphism::new(r2(), &letters("abB"), Letter::gen(1)).unwrap();
        assert_eq!(phi.apply(&w("b")), w("Aba"));
        assert_eq!(phi.apply(&w("B")), w("ABa"));
        // only x^{-1} in S: b -> A b
        let phi = WhiteheadAutomorphism::new(r2(), &letters("aB"), Letter::gen(1)).unwrap();
        assert_eq!(phi.apply(&w("b")), w("Ab"));
    }

    #[test]
    fn invalid_automorphisms() {
        assert!(WhiteheadAutomorphism::new(r2(), &letters("b"), Letter::gen(1)).is_err());
        assert!(WhiteheadAutomorphism::new(r2(), &letters("aA"), Letter::gen(1)).is_err());
        assert!(WhiteheadAutomorphism::new(Alphabet::new(33).unwrap(), &letters("a"), Letter::gen(1)).is_err());
    }

    #[test]
    fn enumeration_size_and_order() {
        let autos: Vec<_> = whitehead_automorphisms(r2()).unwrap().collect();
        assert_eq!(autos.len(), 4 * 3);
        assert_eq!(autos[0].multiplier(), Letter::gen(1));
        assert_eq!(autos[0].set(), letters("ab"));
        assert_eq!(autos[1].set(), letters("aB"));
        assert_eq!(autos[2].set(), letters("abB"));
        assert_eq!(autos[3].multiplier(), Letter::gen(1).inverse());
        assert!(autos.iter().all(|p| !p.is_identity()));
        assert_eq!(whitehead_automorphisms(Alphabet::new(3).unwrap()).unwrap().count(), 6 * 15);
    }

    #[test]
    fn inverse_round_trips() {
        for phi in whitehead_automorphisms(Alphabet::new(3).unwrap()).unwrap() {
            for s in ["abcABC", "aabbcc", "cBaBc", "b", ""] {
                let x = w(s);
                assert_eq!(phi.inverse().apply(&phi.apply(&x)), x, "{phi:?} on {s}");
                assert_eq!(phi.inverse().inverse(), phi);
            }
        }
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive_whitehead(r2(), &w("a")).unwrap());
        assert!(is_primitive_whitehead(r2(), &w("bA")).unwrap());
        assert!(!is_primitive_whitehead(r2(), &w("abAB")).unwrap());
        assert!(!is_primitive_whitehead(r2(), &w("abab")).unwrap());
        assert!(!is_primitive_whitehead(r2(), &w("aa")).unwrap());
        assert!(!is_primitive_whitehead(r2(), &Word::empty()).unwrap());
        assert!(is_primitive_whitehead(r2(), &w("ab")).unwrap());
        assert!(is_primitive_whitehead(r2(), &w("aab")).unwrap());
        assert!(is_primitive_whitehead(r2(), &w("bAbaB")).unwrap());
    }

    /// Breadth-first search of the automorphic orbit of `abAB` restricted to
    /// cyclic length at most 4 never meets a word of length 1.
    #[test]
    fn commutator_orbit_has_no_letter() {
        let autos: Vec<_> = whitehead_automorphisms(r2()).unwrap().collect();
        let core = |x: &Word| {
            let b = cyclic_core_bounds(x.letters());
            Word::from_reduced_unchecked(x.letters()[b.start..b.end].to_vec())
        };
        let start = w("abAB");
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for phi in &autos {
                let y = core(&phi.apply(&x));
                assert_ne!(y.len(), 1);
                if y.len() <= 4 && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        assert!(seen.iter().all(|x| x.len() == 4));
    }
}
