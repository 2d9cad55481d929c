//! Step-counted generation of ideals from finite-index additive subgroups.
//!
//! Rings are tabulated: every element is an index `0..size`, and sets of
//! elements are dense bit vectors. On top of that sit additive machinery
//! (closures, sumsets, thickness, genericity, triangular bases over `Z_q`),
//! the step-generation engine (product sets, n-fold sums, ideal search), an
//! exact integer polynomial layer for the `Z[X]` and `XZ[X]` arguments, and a
//! set of self-verifying scenarios that produce structured reports.

pub mod additive;
pub mod error;
pub mod poly;
pub mod ring;
pub mod scenario;
pub mod stepgen;

pub use error::{Error, Result};
pub use ring::{Elem, TabulatedRing};
