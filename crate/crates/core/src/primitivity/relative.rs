//! Relative primitivity: is `w0` in `H = <w⃗>`, and if so, is it primitive in
//! `H`?

use super::shpilrain::{is_primitive_shpilrain, PrimitivityReport};
use crate::ctp::{membership_mpd, DepthPolicy, MembershipReport};
use crate::error::Result;
use crate::stallings::XWord;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone)]
pub struct RPrimReport {
    pub membership: MembershipReport,
    /// Present iff `w0 ∈ H`.
    pub primitive: Option<bool>,
    pub primitivity: Option<PrimitivityReport>,
    /// Rank of the basis that `x0` is written over.
    pub basis_rank: usize,
}

impl RPrimReport {
    pub fn member(&self) -> bool {
        self.membership.member
    }

    pub fn expression(&self) -> Option<&XWord> {
        self.membership.expression.as_ref()
    }
}

/// Membership as in [`membership_mpd`], then Shpilrain's test on `x0` in the
/// free group on the basis it is expressed over.
pub fn relative_primitivity(alphabet: Alphabet, w0: &Word, words: &[Word], policy: DepthPolicy) -> Result<RPrimReport> {
    let membership = membership_mpd(alphabet, w0, words, policy)?;
    let basis_rank = membership.basis(words).len();
    let (primitive, primitivity) = match (&membership.expression, basis_rank) {
        (None, _) => (None, None),
        (Some(_), 0) => (Some(false), None),
        (Some(x0), rank) => {
            let report = is_primitive_shpilrain(Alphabet::new(rank as u32)?, x0.as_word())?;
            (Some(report.verdict), Some(report))
        }
    };
    Ok(RPrimReport { membership, primitive, primitivity, basis_rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctp::Route;
    use crate::primitivity::is_primitive_whitehead;

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| Word::parse(s).unwrap()).collect()
    }

    fn rprim(w0: &str, gens: &[&str]) -> RPrimReport {
        relative_primitivity(Alphabet::new(2).unwrap(), &Word::parse(w0).unwrap(), &words(gens), DepthPolicy::LogN)
            .unwrap()
    }

    #[test]
    fn examples() {
        let report = rprim("aba", &["aba", "bab"]);
        assert!(report.member());
        assert_eq!(report.expression(), Some(&XWord::from_indices(&[1]).unwrap()));
        assert_eq!(report.primitive, Some(true));
        assert_eq!(report.membership.route, Route::Fast);

        let report = rprim("abaaba", &["aba", "bab"]);
        assert_eq!(report.expression(), Some(&XWord::from_indices(&[1, 1]).unwrap()));
        assert_eq!(report.primitive, Some(false));

        let report = rprim("ab", &["aba", "bab"]);
        assert!(!report.member());
        assert_eq!(report.primitive, None);
        assert!(report.primitivity.is_none());
    }

    #[test]
    fn fallback_basis_rank() {
        let report = rprim("aab", &["aa", "b"]);
        assert_eq!(report.membership.route, Route::Fallback);
        assert_eq!(report.basis_rank, 2);
        assert_eq!(report.primitive, Some(true));
        let x0 = report.expression().unwrap();
        assert_eq!(report.primitive.unwrap(), is_primitive_whitehead(Alphabet::new(2).unwrap(), x0.as_word()).unwrap());

        let report = rprim("", &[]);
        assert!(report.member());
        assert_eq!(report.primitive, Some(false));
    }
}
