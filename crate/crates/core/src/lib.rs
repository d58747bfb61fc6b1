//! Axisymmetric steady states of a two-grain thin film with a hole.
//!
//! The exterior surfaces are nodoids of mean curvature `λ < 0`, the grain
//! boundary is a catenoid of neck radius `A`, and the three meet at a triple
//! junction under the Herring angle `β`. Everything is parametrized by
//! `(A, σ)` with `σ` the grain-boundary arclength.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod elliptic;
pub mod error;
pub mod io;
pub mod quadrature;
pub mod quantities;
pub mod roots;
pub mod solvers;
pub mod steady;

pub use error::{EllipticError, Error, QuadratureError, SolveError};
pub use steady::{
    derive_parameters, ConstraintMode, ConstraintReport, DerivedParams, FreeParams, PhysicalAngles,
    ProfileSet,
};
