//! Morphisms of free monoids and the derivation of a substitution whose
//! fixed point projects onto a given coded cut-and-project word.

mod derive;
mod merge;
mod morphism;

pub use derive::{
    closure_set, derive, g_gamma, verify_projection, DeriveOptions, ProjectionReport,
    SubstitutivityResult, IND_CAP, SET_CAP,
};
pub use merge::{merge_letters, MergeResult, Projection};
pub use morphism::{
    images_map, iterate, iterate_to, letter_counts, Morphism, PointedWord, SubstitutionMatrix,
};

/// Letter counts of `m`; see [`Morphism::matrix`].
pub fn substitution_matrix(m: &Morphism) -> SubstitutionMatrix {
    m.matrix()
}
