//! Coefficient-level toolkit for the multiplier operator on p-valent
//! meromorphic functions and the subordination results built on it.

pub mod cli;
pub mod error;
pub mod harness;
pub mod operator;
pub mod quadrature;
pub mod random;
pub mod series;
pub mod special;
pub mod subordination;

pub use error::{Error, Result};
pub use operator::presets::{preset, preset_catalog, PresetArgs};
pub use operator::{apply_operator, recurrence_residual, OperatorParams, Recurrence};
pub use series::{AnySeries, LaurentFunction, TaylorSeries};
pub use special::{MoebiusQ, QFunction};
