//! Beta-expansions: greedy digits, the Rényi development of 1, Parry's
//! admissibility condition, beta-integers and their description as
//! cut-and-project sets for quadratic Pisot units.

mod expansion;
mod integers;

pub use expansion::{
    greedy_expand, parry_admissible, renyi_development, renyi_map, renyi_orbit, BetaBasis,
    DigitString, QuadraticForm, QuadraticSign, RenyiDev,
};
pub use integers::{
    beta_integers, beta_substitution, cap_equivalence, first_beta_integers, BetaIntegers,
    CapEquivalence,
};
