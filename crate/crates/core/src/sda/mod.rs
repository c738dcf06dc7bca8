//! Self-driving automata: the evolvable bit source behind every map.

mod genome;
mod stream;
mod variation;

pub use genome::{Emission, SdaGenome, StateRecord};
pub use stream::{SdaStream, MAX_INT_BITS};
pub use variation::{
    crossover_at, differing_loci, mutate, mutate_traced, two_point_crossover, Locus,
};
