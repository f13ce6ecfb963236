//! Std companion to `harmonic-core`: parallel sweeps, seeded random
//! instances, report encoders, fixture corpora and the command-line front
//! end.

pub mod cli;
pub mod encode;
pub mod fixtures;
pub mod generate;
pub mod runner;
