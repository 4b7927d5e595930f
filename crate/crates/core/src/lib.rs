//! Bi-s*-concavity toolkit for univariate distributions.
//!
//! A distribution function `F` is bi-s*-concave (with `s* = s/(1+s)`) when
//! both `F` and `1 - F` are s*-concave on the appropriate domains. This crate
//! provides:
//!
//! - [`numerics`]: quadrature, special functions, scalar maximisation,
//!   bisection and finite differences.
//! - [`catalog`]: the example families (Student t, F, Pareto, spherical
//!   power, normal, uniform, and two symmetric mixtures).
//! - [`shape`]: index conversion, Csörgő–Révész functions and constants, three
//!   independent concavity checkers, and threshold searches.
//! - [`envelope`]: the explicit upper/lower bounds on `F`, `f` and `f'`.
//! - [`fisher`]: location Fisher information and the Hardy-type integrals.

pub mod catalog;
pub mod envelope;
mod error;
pub mod fisher;
pub mod numerics;
pub mod real;
pub mod shape;

pub use catalog::{parse_spec, DistributionSpec, Family, MaxKnownS, Support};
pub use error::{Error, Result};
pub use shape::{ConcavityIndex, Grid};
