//! Exactly solvable relativistic model of the isotropic three-dimensional
//! singular oscillator in finite-difference (relativistic configurational
//! space) quantum mechanics.
//!
//! The crate provides the energy spectrum, the continuous dual Hahn radial
//! wavefunctions, and an independent verification layer: exact-shift
//! residuals of the finite-difference equations, orthonormality by
//! quadrature, non-relativistic limits and the collapse boundary.

pub mod cdhahn;
mod ddouble;
pub mod error;
pub mod format;
pub mod model;
pub mod nonrel;
pub mod planewave;
pub mod quadrature;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use model::{DimensionlessParams, PhysicalParams, QuantumNumbers, Regime, SpectrumEntry};
pub use special::{ComplexScalar, LogComplex};
