//! Exact-arithmetic engine for spin q-Whittaker polynomials and spin
//! Hall-Littlewood functions, built on integrable higher-spin vertex models.
//!
//! The crate provides two independent computation routes for each symmetric
//! function family, a verification harness that checks the summation
//! identities relating them (exactly where the sums terminate, numerically
//! with explicit tolerances otherwise), and a numeric contour-integral
//! evaluator cross-checked against the exact combinatorics.

pub mod contour;
pub mod error;
pub mod fusion;
pub mod identities;
pub mod partition;
pub mod scalar;
pub mod spin_hl;
pub mod spin_qw;
pub mod vertex;

pub use error::{CoreError, CoreResult};
pub use partition::{enumerate_partitions, MultiplicityVector, Partition};
pub use scalar::{Field, Rat};
