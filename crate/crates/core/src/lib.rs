//! Bigraded Hilbert functions and multigraded regularity of complete
//! intersections of points in `P^n x P^m`.
//!
//! Two independent routes are provided:
//!
//! * [`hilbert`] evaluates closed formulas that depend only on `n`, `m` and
//!   the generator bidegree, built on [`combinatorics`] and [`regions`];
//! * [`oracle`] computes the same quantities for an explicit instance over a
//!   prime field by ranks of multiplication maps ([`linalg`]).
//!
//! [`experiments`] compares the two.

pub mod combinatorics;
pub mod error;
pub mod experiments;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod regions;

pub use combinatorics::{Bidegree, DegreeList, Shape};
pub use error::{Error, Result};
pub use hilbert::{HFResult, HFTable, Rule, Window};
pub use linalg::{FpMatrix, PrimeField};
pub use regions::{Classification, RegionSpec, Staircase, Verdict};
