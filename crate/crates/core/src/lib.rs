//! Free groups of finite rank: reduced words, Stallings graphs, the central
//! tree property and fast subgroup membership, Whitehead and Shpilrain
//! primitivity tests, growth moduli of Whitehead-graph automata, and a Monte
//! Carlo harness measuring the operation counts of all of the above.
//!
//! ```
//! use freegroup::{membership_mpd, Alphabet, DepthPolicy, Route, Word};
//!
//! let alphabet = Alphabet::new(2).unwrap();
//! let gens: Vec<Word> = ["aba", "bab"].iter().map(|s| s.parse().unwrap()).collect();
//! let w0: Word = "ababab".parse().unwrap();
//! let report = membership_mpd(alphabet, &w0, &gens, DepthPolicy::Fixed(1)).unwrap();
//! assert!(report.member);
//! assert_eq!(report.route, Route::Fast);
//! assert_eq!(report.expression.unwrap().to_string(), "x1 x2");
//! ```

pub mod bench;
pub mod ctp;
pub mod error;
pub mod growth;
pub mod primitivity;
pub mod scalar;
pub mod stallings;
pub mod words;

pub use ctp::{
    check_ctp, ctp_failure_probability_bound, eval_depth, has_ctp, membership_mpd, CtpCertificate, DepthPolicy,
    MembershipCounters, MembershipReport, Route,
};
pub use error::{Error, Result};
pub use growth::{
    automaton_matrix, count_paths, ctp_growth_bound, cut_vertex_growth_bound, cut_vertex_modulus, dominant_eigenvalue,
    gaa_modulus, gab_modulus, power_iteration, EigenEstimate, TransitionMatrix,
};
pub use primitivity::{
    apply_whitehead, connected_without_cutvertex, is_primitive_shpilrain, is_primitive_whitehead, relative_primitivity,
    shpilrain_threshold, whitehead_graph, PrimitivityReport, PrimitivityRoute, RPrimReport, WhiteheadAutomorphism,
    WhiteheadGraph,
};
pub use scalar::Real;
pub use stallings::{
    build_stallings, expand_in_basis, finite_index, membership_mp, rank, spanning_basis, SpanningBasis, StallingsGraph,
    Subgroup, XWord,
};
pub use words::{
    concat_reduce, count_reduced, cyclic_core, invert, is_prefix, is_proper_prefix, reduce, sample_uniform_reduced,
    Alphabet, CoreDecomposition, Letter, Word,
};

/// Double-precision eigenvalue estimate.
pub type Eigen64 = EigenEstimate<f64>;
/// Single-precision eigenvalue estimate.
pub type Eigen32 = EigenEstimate<f32>;
/// Exact path counts through automata.
pub type PathCount = u128;
