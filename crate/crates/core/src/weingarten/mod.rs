//! The Weingarten function of the unitary group at finite dimension:
//! an exact rational oracle, the monotone-factorization series, and bounds.

mod bounds;
mod exact;
mod series;

pub use bounds::{catalan, wg_alt_bounds, wg_bound, AltBounds, BoundCase, WgBound, DEFAULT_KJ};
pub use exact::{wg_exact, wg_table, WgTable};
pub use series::{default_r_max, series_tail_bound, wg_series, WeingartenValue};
