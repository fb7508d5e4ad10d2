//! Central tree property, the depth-`d` prefix tree of a tuple, depth
//! policies, and the trie-walking membership test.
//!
//! Generators are indexed `1..=k`; index `-i` stands for `w_i^{-1}`. The leaf
//! `pr_i` is the length-`d` prefix of `w_{-i}`, so that every generator
//! factors as `w_i = pr_{-i} . mf_d(w_i) . pr_i^{-1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};
use crate::stallings::{Subgroup, XWord};
use crate::words::{Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;

/// Trie over the `2k` length-`d` prefixes of the generators and their
/// inverses. Node 0 is the root.
#[derive(Debug, Clone)]
struct PrefixTrie {
    size: usize,
    children: Vec<u32>,
    parent: Vec<u32>,
    /// Letter on the edge from the parent.
    via: Vec<Letter>,
    /// For a leaf, the signed index `i` such that the leaf spells the prefix
    /// of `w_i`.
    entry: Vec<i32>,
}

impl PrefixTrie {
    fn new(size: usize) -> Self {
        Self { size, children: vec![NONE; size], parent: vec![NONE], via: vec![Letter::gen(1)], entry: vec![0] }
    }

    #[inline]
    fn child(&self, node: u32, letter: Letter) -> Option<u32> {
        let c = self.children[node as usize * self.size + letter.ordinal()];
        (c != NONE).then_some(c)
    }

    fn insert<I: Iterator<Item = Letter>>(&mut self, letters: I, entry: i32) -> Option<u32> {
        let mut node = 0u32;
        for l in letters {
            node = match self.child(node, l) {
                Some(c) => c,
                None => {
                    let c = self.parent.len() as u32;
                    self.children[node as usize * self.size + l.ordinal()] = c;
                    self.children.extend(std::iter::repeat_n(NONE, self.size));
                    self.parent.push(node);
                    self.via.push(l);
                    self.entry.push(0);
                    c
                }
            };
        }
        if self.entry[node as usize] != 0 {
            return None;
        }
        self.entry[node as usize] = entry;
        Some(node)
    }

    fn node_count(&self) -> usize {
        self.parent.len()
    }

    fn spell(&self, mut node: u32) -> Word {
        let mut letters = Vec::new();
        while node != 0 {
            letters.push(self.via[node as usize]);
            node = self.parent[node as usize];
        }
        letters.reverse();
        Word::from_reduced_unchecked(letters)
    }
}

/// Witness that a tuple has the `d`-ctp.
#[derive(Debug, Clone)]
pub struct CtpCertificate<'w> {
    words: &'w [Word],
    depth: usize,
    trie: PrefixTrie,
    /// Leaf spelling the prefix of `w_i`, at `slot(i)`.
    leaves: Vec<u32>,
}

#[inline]
fn slot(i: i32) -> usize {
    2 * (i.unsigned_abs() as usize - 1) + (i < 0) as usize
}

impl<'w> CtpCertificate<'w> {
    #[inline]
    pub fn depth(&self) -> usize {
        self.depth
    }

    #[inline]
    pub fn words(&self) -> &'w [Word] {
        self.words
    }

    pub fn k(&self) -> usize {
        self.words.len()
    }

    /// `min |w_i|`.
    pub fn mu(&self) -> usize {
        self.words.iter().map(Word::len).min().unwrap_or(0)
    }

    /// `max |w_i|`.
    pub fn nu(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// The leaf `pr_i`, the length-`d` prefix of `w_{-i}`.
    pub fn pr(&self, i: i32) -> Word {
        self.trie.spell(self.leaves[slot(-i)])
    }

    /// The middle factor of `w_i`.
    pub fn mf(&self, i: i32) -> Word {
        Word::from_reduced_unchecked(self.mf_letters(i).collect())
    }

    fn mf_letters(&self, i: i32) -> impl Iterator<Item = Letter> + '_ {
        let w = self.words[i.unsigned_abs() as usize - 1].letters();
        let mid = &w[self.depth..w.len() - self.depth];
        let (fwd, bwd) = if i > 0 { (Some(mid.iter()), None) } else { (None, Some(mid.iter().rev())) };
        fwd.into_iter().flatten().copied().chain(bwd.into_iter().flatten().map(|l| l.inverse()))
    }

    /// Number of trie nodes, root included.
    pub fn node_count(&self) -> usize {
        self.trie.node_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    fn mf_len(&self, i: i32) -> usize {
        self.words[i.unsigned_abs() as usize - 1].len() - 2 * self.depth
    }

    /// Compares `mf_d(w_i)` with the start of `rest`, stopping at the first
    /// mismatch; returns whether it is a prefix and the letters examined.
    #[inline]
    fn match_mf(&self, i: i32, rest: &[Letter]) -> (bool, usize) {
        let w = self.words[i.unsigned_abs() as usize - 1].letters();
        let mid = &w[self.depth..w.len() - self.depth];
        let limit = mid.len().min(rest.len());
        let mismatch = if i > 0 {
            mid.iter().zip(rest).position(|(a, b)| a != b)
        } else {
            mid.iter().rev().zip(rest).position(|(a, b)| a.inverse() != *b)
        };
        match mismatch {
            Some(p) => (false, p + 1),
            None => (limit == mid.len(), limit),
        }
    }
}

/// Builds `Γ_d` and certifies the `d`-ctp, or returns `None` when some
/// generator has length `<= 2d` or two of the `2k` prefixes coincide. Reads at
/// most `2kd` letters.
pub fn check_ctp(alphabet: Alphabet, words: &[Word], d: usize) -> Result<Option<CtpCertificate<'_>>> {
    for w in words {
        alphabet.check(w.letters())?;
    }
    if d == 0 {
        return Err(Error::Config("ctp depth must be at least 1".into()));
    }
    if words.iter().any(|w| w.len() <= 2 * d) {
        return Ok(None);
    }
    let mut trie = PrefixTrie::new(alphabet.size());
    let mut leaves = vec![NONE; 2 * words.len()];
    for (j, w) in words.iter().enumerate() {
        let i = j as i32 + 1;
        let letters = w.letters();
        let Some(head) = trie.insert(letters[..d].iter().copied(), i) else { return Ok(None) };
        let Some(tail) = trie.insert(letters[letters.len() - d..].iter().rev().map(|l| l.inverse()), -i) else {
            return Ok(None);
        };
        leaves[slot(i)] = head;
        leaves[slot(-i)] = tail;
    }
    Ok(Some(CtpCertificate { words, depth: d, trie, leaves }))
}

/// The largest `d` with the `d`-ctp, if any.
pub fn has_ctp(alphabet: Alphabet, words: &[Word]) -> Result<Option<usize>> {
    let Some(mu) = words.iter().map(Word::len).min() else { return Ok(None) };
    let d = (mu.saturating_sub(1)) / 2;
    if d == 0 {
        for w in words {
            alphabet.check(w.letters())?;
        }
        return Ok(None);
    }
    Ok(check_ctp(alphabet, words, d)?.map(|c| c.depth()))
}

/// How the ctp depth `d(n)` grows with the instance size `n = max |w_i|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthPolicy {
    /// `⌈log₂ n⌉`.
    LogN,
    /// `⌈(2n)^γ⌉`, `0 < γ < 1`.
    Pow(f64),
    /// `⌈γ n⌉`.
    Lin(f64),
    /// `⌈3β ln(2n) / ln(2r-1)⌉`.
    Log3b(f64),
    Fixed(usize),
}

impl DepthPolicy {
    /// `d(n)` clamped to `[1, ⌈n/2⌉ - 1]` (and to 1 when that range is empty).
    pub fn eval(&self, n: usize, r: u32) -> usize {
        let nf = n.max(1) as f64;
        let raw = match *self {
            DepthPolicy::LogN => nf.log2(),
            DepthPolicy::Pow(g) => (2.0 * nf).powf(g),
            DepthPolicy::Lin(g) => g * nf,
            DepthPolicy::Log3b(b) => 3.0 * b * (2.0 * nf).ln() / (2.0 * r as f64 - 1.0).ln(),
            DepthPolicy::Fixed(d) => d as f64,
        };
        // absorb rounding noise such as powf(100, 0.5) = 10.000000000000002
        let d = if raw.is_finite() { (raw - 1e-9 * raw.abs().max(1.0)).ceil().max(0.0) } else { f64::MAX };
        let cap = n.div_ceil(2).saturating_sub(1);
        (d.min(usize::MAX as f64) as usize).min(cap).max(1)
    }
}

impl fmt::Display for DepthPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthPolicy::LogN => write!(f, "logn"),
            DepthPolicy::Pow(g) => write!(f, "pow:{g}"),
            DepthPolicy::Lin(g) => write!(f, "lin:{g}"),
            DepthPolicy::Log3b(b) => write!(f, "log3b:{b}"),
            DepthPolicy::Fixed(d) => write!(f, "fixed:{d}"),
        }
    }
}

impl FromStr for DepthPolicy {
    type Err = Error;

    /// `logn`, `pow:γ`, `lin:γ`, `log3b:β` or `fixed:d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Config(format!("depth policy {s:?}: {why}"));
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (s, None),
        };
        let real = |a: Option<&str>| -> Result<f64> {
            let v: f64 = a.ok_or_else(|| bad("missing parameter"))?.parse().map_err(|_| bad("bad number"))?;
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(bad("parameter must be positive"))
            }
        };
        match kind {
            "logn" if arg.is_none() => Ok(DepthPolicy::LogN),
            "pow" => {
                let g = real(arg)?;
                if g >= 1.0 {
                    return Err(bad("exponent must be below 1"));
                }
                Ok(DepthPolicy::Pow(g))
            }
            "lin" => Ok(DepthPolicy::Lin(real(arg)?)),
            "log3b" => Ok(DepthPolicy::Log3b(real(arg)?)),
            "fixed" => {
                let d: usize = arg.ok_or_else(|| bad("missing parameter"))?.parse().map_err(|_| bad("bad integer"))?;
                if d == 0 {
                    return Err(bad("depth must be at least 1"));
                }
                Ok(DepthPolicy::Fixed(d))
            }
            _ => Err(bad("unknown policy")),
        }
    }
}

/// `policy.eval(n, r)`; `k` does not enter any of the supported formulas.
pub fn eval_depth(policy: DepthPolicy, n: usize, _k: usize, r: u32) -> usize {
    policy.eval(n, r)
}

/// `k² (2r-1)^(-d_half)`: the shape of the ctp failure bound with constant 1.
pub fn ctp_failure_probability_bound<T: Real>(k: usize, r: u32, d_half: usize) -> T {
    let k = from_usize::<T>(k);
    let base = from_usize::<T>(2 * r as usize - 1);
    k * k * base.powi(-(d_half as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Trie walk over `Γ_d` with the tuple itself as basis.
    Fast,
    /// Stallings folding with the spanning-tree basis.
    Fallback,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Fast => "fast",
            Route::Fallback => "fallback",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MembershipCounters {
    /// Letters of `w0` read or compared.
    pub letters_examined: usize,
    /// Moves along trie edges.
    pub trie_steps: usize,
    /// Middle factors jumped over.
    pub leaf_passages: usize,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    /// Expression of `w0`, over the tuple on the fast route and over
    /// `fallback_basis` otherwise.
    pub expression: Option<XWord>,
    pub route: Route,
    /// Depth used on the fast route.
    pub depth: Option<usize>,
    pub counters: MembershipCounters,
    pub fallback_basis: Option<Vec<Word>>,
}

impl MembershipReport {
    /// The basis that `expression` refers to.
    pub fn basis<'a>(&'a self, words: &'a [Word]) -> &'a [Word] {
        self.fallback_basis.as_deref().unwrap_or(words)
    }
}

/// Trie walk of `w0` through the graph made of `Γ_d` and one path per
/// middle factor.
pub fn walk_certificate(cert: &CtpCertificate<'_>, w0: &Word) -> (Option<XWord>, MembershipCounters) {
    let trie = &cert.trie;
    let letters = w0.letters();
    let mut counters = MembershipCounters::default();
    let mut expression: Vec<Letter> = Vec::new();
    let mut node = 0u32;
    let mut pos = 0usize;
    while pos < letters.len() {
        let l = letters[pos];
        counters.letters_examined += 1;
        if l.ordinal() >= trie.size {
            return (None, counters);
        }
        let up = node != 0 && trie.via[node as usize] == l.inverse();
        node = if up {
            trie.parent[node as usize]
        } else {
            match trie.child(node, l) {
                Some(c) => c,
                None => return (None, counters),
            }
        };
        counters.trie_steps += 1;
        pos += 1;
        let i = trie.entry[node as usize];
        if i != 0 && !up {
            // arrived at the prefix of w_i: its middle factor must follow
            debug_assert_eq!(node, cert.leaves[slot(i)]);
            let (ok, examined) = cert.match_mf(i, &letters[pos..]);
            counters.letters_examined += examined;
            if !ok {
                return (None, counters);
            }
            counters.leaf_passages += 1;
            pos += cert.mf_len(i);
            expression.push(Letter::new(i).expect("nonzero index"));
            node = cert.leaves[slot(-i)];
        }
    }
    let expression =
        (node == 0).then(|| XWord::new(Word::from_letters(expression).expect("ctp expressions are reduced")));
    (expression, counters)
}

/// Membership of `w0` in `<words>`, fast when `2 min|w_i| > max|w_i|` and the
/// tuple has the `d(n)`-ctp; otherwise by Stallings folding.
pub fn membership_mpd(alphabet: Alphabet, w0: &Word, words: &[Word], policy: DepthPolicy) -> Result<MembershipReport> {
    for w in words {
        alphabet.check(w.letters())?;
    }
    if let Some(cert) = fast_certificate(alphabet, words, policy)? {
        let (expression, counters) = walk_certificate(&cert, w0);
        return Ok(MembershipReport {
            member: expression.is_some(),
            expression,
            route: Route::Fast,
            depth: Some(cert.depth()),
            counters,
            fallback_basis: None,
        });
    }
    let sub = Subgroup::new(alphabet, words)?;
    let trace = sub.trace(w0);
    Ok(MembershipReport {
        member: trace.expression.is_some(),
        expression: trace.expression,
        route: Route::Fallback,
        depth: None,
        counters: MembershipCounters { letters_examined: trace.letters_read, ..Default::default() },
        fallback_basis: Some(sub.basis().words().to_vec()),
    })
}

/// The gate of the fast route: the certificate at depth `d(max|w_i|)` when
/// `2 min|w_i| > max|w_i|` and the ctp holds there.
pub fn fast_certificate(alphabet: Alphabet, words: &[Word], policy: DepthPolicy) -> Result<Option<CtpCertificate<'_>>> {
    let (Some(mu), Some(n)) = (words.iter().map(Word::len).min(), words.iter().map(Word::len).max()) else {
        return Ok(None);
    };
    if 2 * mu <= n {
        return Ok(None);
    }
    let d = policy.eval(n, alphabet.rank());
    check_ctp(alphabet, words, d)
}
