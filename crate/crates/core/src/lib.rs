//! Exact deformation calculus for regular Poisson structures on tori.

pub mod bigbracket;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod foliation;
pub mod gaugeequiv;
pub mod graded;
pub mod kronecker;
pub mod linfty;

pub use error::{Error, Result};
