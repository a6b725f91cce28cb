//! Self-similarity of cut-and-project sets and geometric representations of substitutions.
//!
//! A set `Σ_{ε,η}(Ω)` with `η = ε′` and `0` in the closed window satisfies `γΣ ⊆ Σ` for suitable
//! quadratic `γ > 1`; [`find_factor`] searches for one and [`verify_inclusion`] checks it on points.
//! [`geometric_representation`] goes the other way and realises the fixed point of a primitive
//! substitution with quadratic Perron root as a self-similar point sequence.

mod factor;
mod georep;

pub use factor::{
    check_selfsimilar_config, find_factor, find_unit_factor, verify_inclusion, InclusionReport,
    SelfSimCheck, SimilarityFactor, FACTOR_SEARCH_CAP,
};
pub use georep::{
    characteristic_polynomial, dominant_eigenvalue, geometric_representation, lambda_f64,
    row_sum_gcd, GeometricRepresentation,
};
