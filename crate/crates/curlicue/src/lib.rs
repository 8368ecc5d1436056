//! Quadratic exponential sums `S(N, a, b) = sum_{n < N} e(-a n^2/2 + n b)`
//! evaluated through an exact renormalization cascade, together with the
//! special function carrying the remainder, Fresnel asymptotics of the
//! partial-sum curves (curlicues), and Monte Carlo statistics of the
//! Gauss-map cocycle that governs the growth of the sums.
//!
//! Entry points:
//! - [`renorm::renorm_sum`] / [`renorm::naive_sum`]: the fast evaluator and
//!   the direct oracle it is tested against.
//! - [`special::cal_f`]: the contour-integral special function.
//! - [`asymptotics`]: Fresnel-scale asymptotics and growth envelopes.
//! - [`dynamics`]: invariant densities, counting-function norms, orbit
//!   algebra of the fibre map.
//! - [`curve`], [`bench`], [`report`]: path export, timing, CLI reporting.
//!
//! The runnable examples under `examples/` walk through each capability.

pub mod asymptotics;
pub mod bench;
pub mod curve;
pub mod dd;
pub mod dynamics;
pub mod error;
pub mod fresnel;
pub mod numeric;
pub mod quad;
pub mod renorm;
pub mod report;
pub mod special;

pub use error::{Error, Result};
pub use numeric::{frac, frac0, int_part, unit_exp, Params, Phase, PrecisionConfig};
