//! Zero-point-field mode algebra, spectral spin decomposition, and an exact
//! symbolic engine for the exchange symmetry of entangled electron states.
//!
//! The numeric layers are generic over the scalar type (`f32`, `f64`, and
//! [`Rational64`] wherever the arithmetic is exact). Concrete aliases for the
//! common instantiations live at the crate root.

pub mod constants;
pub mod error;
pub mod exchange;
pub mod field_modes;
pub mod lsed_algebra;
pub mod scalar;
pub mod spin_phi;
pub mod vec3;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use num_complex::Complex;
pub use num_rational::Rational64;
pub use scalar::{Real, Scalar};
pub use vec3::Vec3;

/// Double-precision instantiations.
pub type Constants64 = PhysicalConstants<f64>;
pub type Mode64 = field_modes::Mode<f64>;
pub type Realization64 = field_modes::ZpfRealization<f64>;
pub type FieldSample64 = field_modes::FieldSample<f64>;
pub type Observables64 = field_modes::ModeObservables<f64>;
pub type Table64 = lsed_algebra::MatrixElementTable<f64>;
pub type Expansion64 = lsed_algebra::DynamicalExpansion<f64>;
pub type SpinSplit64 = lsed_algebra::SpinSplit<f64>;

/// Single-precision instantiations.
pub type Mode32 = field_modes::Mode<f32>;
pub type Realization32 = field_modes::ZpfRealization<f32>;
pub type Table32 = lsed_algebra::MatrixElementTable<f32>;

/// Exact rational instantiations for the spin bookkeeping.
pub type ExactConstants = PhysicalConstants<Rational64>;
pub type ExactSpinSplit = lsed_algebra::SpinSplit<Rational64>;
