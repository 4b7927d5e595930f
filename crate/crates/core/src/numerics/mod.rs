//! Numerical kernels shared by every other module.
//!
//! Everything here is a pure function of its arguments.

mod diff;
mod optimize;
mod quadrature;
mod roots;
pub mod special;

pub use diff::central_difference;
pub use optimize::{maximize_scalar, BracketResult};
pub use quadrature::{integrate_adaptive, QuadratureResult, ABS_FLOOR, MAX_SUBDIVISIONS};
pub use roots::{bisect_boundary, try_bisect_boundary};
pub use special::{erf, erfc, gamma, ln_beta, ln_gamma, reg_incomplete_beta};
