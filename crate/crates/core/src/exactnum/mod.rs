//! Exact scalars, Fourier function rings, dense matrices and ε-series.

pub mod field;
pub mod fourier;
pub mod matrix;
pub mod series;

pub use field::{factorial, FieldElement};
pub use fourier::{FourierScalar, Mode, Ring, TorusPoint};
pub use matrix::{Mat, RingElement};
pub use series::{series_geometric_inverse, series_inverse_unipotent, EpsSeries};
