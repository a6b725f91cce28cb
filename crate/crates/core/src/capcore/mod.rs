//! Cut-and-project sequences: distances, stepping functions, coded words,
//! mechanical words and normalization of parameters.

mod approx;
mod generate;
mod ladder;
mod mechanical;
mod normalize;
mod params;
mod stepping;

pub use approx::ApproxCapSequence;
pub use generate::{point_density, CapSequence, CodedWord};
pub use ladder::{distances, ladder_levels, DistancePair, FRAME_CAP};
pub use mechanical::{bits_string, mechanical, MechanicalKind};
pub use normalize::{normalize, NormalForm};
pub use params::{
    binary_string, parse_binary, parse_word, word_string, CapParams, CapPoint, Coords, Letter,
    Window,
};
pub use stepping::{Orbit, SteppingFn};
