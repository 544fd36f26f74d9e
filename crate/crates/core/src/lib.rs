//! Exact Weingarten calculus for Haar-distributed unitary matrices, exact
//! trace moments of `A = U T V`, and Monte-Carlo spectral experiments on the
//! single ring model.
//!
//! Permutations compose right-to-left: `(p ∘ q)(x) = p(q(x))`. Positions and
//! matrix indices are 1-based throughout the public API.

pub mod error;
pub mod haar_moment;
pub mod montecarlo;
pub mod permgroup;
pub mod rational;
pub mod singlering;
pub mod weingarten;

pub use error::{Error, Result};
pub use haar_moment::{entry_moment, mc_entry_moment, MomentSpec};
pub use montecarlo::{ExperimentRecord, MomentEstimate, Statistic};
pub use permgroup::{IndexTuple, Permutation};
pub use rational::Rational;
pub use singlering::{BoundMode, BoundReport, SingularProfile};
pub use weingarten::{wg_bound, wg_exact, wg_series, WeingartenValue, WgBound};
