//! Minimax approximation of `x^n` and related targets.
//!
//! Polynomial minimax by Remez exchange, type-`(k, k)` rational minimax by
//! AAA initialization, Lawson refinement and barycentric exchange, an LP
//! differential-correction oracle, and the closed-form models the computed
//! errors are compared with.

pub mod aaa;
pub mod barycentric;
pub mod cheb;
pub mod dd;
pub mod diffcorr;
pub mod erfc;
pub mod error;
pub mod extrema;
pub mod lawson;
pub mod linalg;
pub mod models;
pub mod poly_remez;
pub mod rational_remez;
pub mod scalar;
pub mod simplex;

pub use cheb::{adaptive_fit, cheb_eval, cheb_fit, cheb_points, ChebSeries, Interval};
pub use dd::DoubleDouble;
pub use erfc::erfc;
pub use error::{Error, Result};
pub use scalar::{pow_real, Precision, Real};
pub use aaa::aaa_fit;
pub use barycentric::{eval_rational, BarycentricRational};
pub use diffcorr::{differential_correction, DiffCorrResult};
pub use extrema::EquioscillationCertificate;
pub use lawson::{lawson_refine, SolveStatus};
pub use poly_remez::{newman_rivlin, remez_poly, PolyMinimaxResult, RemezOptions};
pub use rational_remez::{rational_remez, RationalMinimaxResult, RationalOptions};
