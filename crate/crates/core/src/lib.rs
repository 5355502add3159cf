//! Spectra, energies and random-walk invariants of graphs built by the
//! splitting, shadow, duplicate and hub-copy operations, with closed forms
//! checked against a dense eigensolver.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod format;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod ops;
pub mod spectral;
pub mod tolerance;

pub use error::{Error, Result};
pub use graph::{GeneratorSpec, Graph};
pub use linalg::{Spectrum, SpectrumGroup};
pub use ops::OperationKind;
pub use spectral::MatrixKind;
pub use tolerance::Tolerances;
