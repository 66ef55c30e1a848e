//! Numerical certification of primitive stability for free-group
//! representations into `PGL(n, R)`.
//!
//! The crate is organized around the pipeline that a stability certificate
//! runs through:
//!
//! - [`freegroup`]: reduced words, cyclic reduction, Whitehead graphs and the
//!   Whitehead primitivity algorithm, enumeration of primitive conjugacy
//!   classes.
//! - [`cartan`]: Cartan and Jordan projections, chamber-valued distances,
//!   wall margins, maximal flats and distances to them.
//! - [`grassmann`]: compound matrices, Pluecker coordinates, induced actions
//!   on exterior powers, limit-rank classification of matrix sequences, and
//!   the total-positivity minor test.
//! - [`projective3`]: the isometry classification of `PGL(3, R)` together
//!   with closed-form asymptotics for parabolic and quasi-hyperbolic
//!   elements, boundary regularity exponents and limit-cone estimation.
//! - [`reps`]: representations of free groups by matrices, word evaluation
//!   with overflow-safe renormalization, symmetric-power embeddings, built-in
//!   example representations and seeded perturbations.
//! - [`stability`]: the certificate engine combining all of the above.
//!
//! Numeric kernels are generic over the scalar type through the [`Scalar`]
//! trait (`f32` or `f64`); the concrete aliases below fix the `f64` lane that
//! the certificate engine and the CLI use.

pub mod cartan;
pub mod error;
pub mod freegroup;
pub mod grassmann;
pub mod numeric;
pub mod projective3;
pub mod reps;
pub mod scalar;
pub mod stability;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Dense square matrix in the default `f64` lane.
pub type Mat = nalgebra::DMatrix<f64>;
/// Dense column vector in the default `f64` lane.
pub type Col = nalgebra::DVector<f64>;
/// Chamber-valued vector (sorted log coordinates, trace zero), `f64` lane.
pub type Weyl = cartan::WeylVector<f64>;
/// Symmetric-space point (positive-definite, determinant one), `f64` lane.
pub type Point = cartan::SpacePoint<f64>;
/// Maximal-flat descriptor (eigenbasis frame), `f64` lane.
pub type Flat = cartan::FlatDescriptor<f64>;


