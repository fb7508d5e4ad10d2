//! Primitivity in free groups: Whitehead graphs, Whitehead automorphisms,
//! Shpilrain's test and relative primitivity inside a subgroup.

mod graph;
mod relative;
mod shpilrain;
mod whitehead;

pub use graph::{connected_without_cutvertex, whitehead_graph, WhiteheadGraph};
pub use relative::{relative_primitivity, RPrimReport};
pub use shpilrain::{
    is_primitive_shpilrain, shpilrain_threshold, PrimitivityCounters, PrimitivityReport, PrimitivityRoute,
};
pub use whitehead::{
    apply_whitehead, is_primitive_whitehead, whitehead_automorphisms, whitehead_reduce, WhiteheadAutomorphism,
    WhiteheadReduction, MAX_WHITEHEAD_RANK,
};
