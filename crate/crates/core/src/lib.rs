//! Principal eigenvalue of `u'' + λ m u = 0` on `(0, 1)` with inhomogeneous
//! Robin conditions `u'(0) = β₀ u(0)`, `u'(1) = -β₁ u(1)`, where the weight
//! `m` equals `κ` on a favourable interval `(a, a + c)` and `-1` elsewhere.
//!
//! The crate computes the positive principal eigenvalue by transfer-matrix
//! shooting, cross-checks it against the closed-form characteristic
//! determinant, and searches the placement `a` that minimises it. The
//! classifier predicts the minimiser from the Robin parameters and the
//! harness runs batch verification over a grid of `(β₀, β₁)`.
//!
//! The numerical layers are generic over a [`Real`] scalar (`f32` or `f64`);
//! the aliases at the crate root fix the scalar to `f64`, which is what the
//! harness and the CLI use.
//!
//! ```
//! use robin_eigen::{eigensolver, Params, Placement, SolverConfig};
//!
//! let p = Params::new(0.3, 2.0, 4.0, 4.0).unwrap();
//! let a = Placement::new(0.35, &p).unwrap();
//! let res = eigensolver::principal_eigenvalue(a, &p, &SolverConfig::default()).unwrap();
//! assert!(res.lambda > 8.0 && res.lambda < 9.0);
//! ```

// Negated comparisons keep NaN on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod characteristic;
pub mod classifier;
pub mod eigensolver;
mod error;
pub mod harness;
pub mod model;
pub mod propagator;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Params = model::Params<f64>;
pub type Placement = model::Placement<f64>;
pub type SolverConfig = model::SolverConfig<f64>;
pub type Mat2 = propagator::Mat2<f64>;
pub type StateVec = propagator::StateVec<f64>;
pub type Eigenfunction = propagator::Eigenfunction<f64>;
pub type SpectralWindow = eigensolver::SpectralWindow<f64>;
pub type Bracket = eigensolver::Bracket<f64>;
pub type EigenResult = eigensolver::EigenResult<f64>;
pub type CurvePoint = eigensolver::CurvePoint<f64>;
pub type HypothesisReport = characteristic::HypothesisReport<f64>;
pub type Prediction = classifier::Prediction<f64>;
pub type Classification = classifier::Classification<f64>;

pub use model::SweepConfig;
