//! Multivector calculus on tori and the deformation theory of a regular
//! Poisson structure relative to a complement of its foliation.

pub mod brackets;
pub mod dirac;
pub mod multivector;
pub mod random;
pub mod setup;
pub mod shipped;
pub mod splitting;

pub use brackets::{pair_flat_pairing, triple_flat_pairing, FoliationAlgebra, KoszulAlgebra, TernarySign};
pub use multivector::{schouten, Form, MultiVector, Skew};
pub use setup::{AlmostLieData, Setup, VectorField};
pub use splitting::SplittingPair;
