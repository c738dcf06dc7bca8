//! Level-map generation with the "do what's possible" representation.
//!
//! An evolvable self-driving automaton ([`sda`]) emits an endless bit stream.
//! The [`map`] builder slices that stream into room proposals and keeps the
//! ones that fit, growing a connected map one room at a time. [`evolution`]
//! searches automaton space with a steady-state algorithm for generators whose
//! maps pack many rooms tightly, and [`io`] handles the file formats and
//! rendering.

pub mod error;
pub mod evolution;
pub mod io;
pub mod map;
pub mod sda;

pub use error::{DwpError, Result};
pub use map::{build_map, BuilderConfig, LevelMap};
pub use sda::{SdaGenome, SdaStream};
