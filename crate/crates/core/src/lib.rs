//! Numerical verification toolkit for the sharp fractional Hardy inequality
//! on the half-space `D = {x_d > 0}`:
//!
//! ```text
//! ½ ∫_D ∫_D (u(x) − u(y))² / |x − y|^{d+α} dx dy  ≥  κ_{d,α} ∫_D u(x)² x_d^{−α} dx
//! ```
//!
//! * [`specfun`]: log-gamma, beta, the stable normalization `A_{d,−α}`.
//! * [`closedform`]: `κ_{d,α}`, `γ(α, p)` and the constant identities.
//! * [`quad`]: tanh-sinh quadrature and the singular kernel integrals that
//!   serve as independent oracles for the closed forms.
//! * [`energy`]: one-dimensional Dirichlet energies, the ground-state
//!   representation and randomized inequality checks.
//! * [`extremal`]: the optimizing sequence `u_n` and its Rayleigh quotients.
//!
//! All numerics are generic over [`Real`]; the `*64` aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod closedform;
pub mod energy;
pub mod error;
pub mod extremal;
pub mod quad;
pub mod scalar;
pub mod specfun;

pub use error::{HardyError, Result};
pub use scalar::Real;

pub type FracParams64 = specfun::FracParams<f64>;
pub type PowerExponent64 = closedform::PowerExponent<f64>;
pub type ConstantsReport64 = closedform::ConstantsReport<f64>;
pub type QuadResult64 = quad::QuadResult<f64>;
pub type SingularitySpec64 = quad::SingularitySpec<f64>;
pub type GridFunction64 = energy::GridFunction<f64>;
pub type HardyMarginReport64 = energy::HardyMarginReport<f64>;
pub type CutoffSpec64 = extremal::CutoffSpec<f64>;
pub type RayleighReport64 = extremal::RayleighReport<f64>;
