//! Combinatorics of coded cut-and-project words: factors and their intervals,
//! complexity, special factors, densities, Rauzy graphs, the breakpoint sets
//! `D_n` and sturmian properties.

mod dn;
mod factors;
mod rauzy;
mod sturmian;

pub use dn::{dn_breakpoints, dn_cells, length_floor, DnCell};
pub use factors::{
    coding, complexity, complexity_counts, extensions, factor_density, factors, factors_of,
    left_special_prefixes, scan_factors, special_factors, Complexity, Factor, FactorSet, Side,
    SpecialFactor, N0_CAP,
};
pub use rauzy::{rauzy, RauzyEdge, RauzyGraph, ReducedEdge, ReducedRauzyGraph};
pub use sturmian::{is_balanced, sturmian_checks, sturmian_factors, SturmianReport};
