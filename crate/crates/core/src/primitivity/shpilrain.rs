//! Shpilrain's primitivity test: grow the Whitehead graph of the cyclic core
//! one adjacent pair at a time and stop as soon as it is connected without a
//! cut vertex, which rules primitivity out.

use std::fmt;

use super::graph::WhiteheadGraph;
use super::whitehead::whitehead_reduce;
use crate::error::Result;
use crate::scalar::{from_usize, Real};
use crate::words::{cyclic_core_bounds, Alphabet, Word};

/// `g(n) = n - ln(n⁴ r⁶) / ln(2r - 1)`; `-∞` at rank 1.
pub fn shpilrain_threshold<T: Real>(n: usize, r: u32) -> T {
    if r < 2 {
        return T::neg_infinity();
    }
    let nf = from_usize::<T>(n);
    let rf = from_usize::<T>(r as usize);
    let four = from_usize::<T>(4);
    let six = from_usize::<T>(6);
    nf - (four * nf.ln() + six * rf.ln()) / (from_usize::<T>(2 * r as usize) - T::one()).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimitivityRoute {
    /// The cyclic core is no longer than `g(n)`: decided by Whitehead reduction.
    ShortCore,
    /// The growing graph became connected without a cut vertex, at step 2
    /// (inner pairs) or 3 (the wrap-around pair).
    Obstruction { step: u8 },
    /// The whole Whitehead graph missed the obstruction.
    WhiteheadFallback,
}

impl fmt::Display for PrimitivityRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitivityRoute::ShortCore => f.write_str("short-core"),
            PrimitivityRoute::Obstruction { step } => write!(f, "obstruction(step {step})"),
            PrimitivityRoute::WhiteheadFallback => f.write_str("whitehead-fallback"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrimitivityCounters {
    pub edges_added: usize,
    pub cut_vertex_checks: usize,
    pub automorphisms_applied: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitivityReport {
    pub verdict: bool,
    pub route: PrimitivityRoute,
    pub counters: PrimitivityCounters,
}

pub fn is_primitive_shpilrain(alphabet: Alphabet, u: &Word) -> Result<PrimitivityReport> {
    alphabet.check(u.letters())?;
    let mut counters = PrimitivityCounters::default();
    let bounds = cyclic_core_bounds(u.letters());
    let core = &u.letters()[bounds.start..bounds.end];
    let whitehead = |counters: &mut PrimitivityCounters| -> Result<bool> {
        let reduction = whitehead_reduce(alphabet, &Word::from_reduced_unchecked(core.to_vec()))?;
        counters.automorphisms_applied = reduction.automorphisms_applied;
        Ok(reduction.minimal.len() == 1)
    };

    let g: f64 = shpilrain_threshold(u.len(), alphabet.rank());
    if core.len() < 2 || core.len() as f64 <= g {
        let verdict = whitehead(&mut counters)?;
        return Ok(PrimitivityReport { verdict, route: PrimitivityRoute::ShortCore, counters });
    }

    let mut graph = WhiteheadGraph::empty(alphabet);
    let obstruction = |graph: &WhiteheadGraph, counters: &mut PrimitivityCounters| {
        counters.cut_vertex_checks += 1;
        graph.connected_without_cutvertex()
    };
    for pair in core.windows(2) {
        counters.edges_added += 1;
        let fresh = graph.add_edge(pair[0], pair[1].inverse());
        if fresh && graph.edge_count() + 1 >= graph.vertex_count() && obstruction(&graph, &mut counters) {
            return Ok(PrimitivityReport {
                verdict: false,
                route: PrimitivityRoute::Obstruction { step: 2 },
                counters,
            });
        }
    }
    counters.edges_added += 1;
    let fresh = graph.add_edge(core[core.len() - 1], core[0].inverse());
    if fresh && graph.edge_count() + 1 >= graph.vertex_count() && obstruction(&graph, &mut counters) {
        return Ok(PrimitivityReport { verdict: false, route: PrimitivityRoute::Obstruction { step: 3 }, counters });
    }
    let verdict = whitehead(&mut counters)?;
    Ok(PrimitivityReport { verdict, route: PrimitivityRoute::WhiteheadFallback, counters })
}
