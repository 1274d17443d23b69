//! Exact counting of graph homomorphisms, vertex-surjective homomorphisms
//! and compactions between small graphs that may carry loops.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: the [`Graph`] type, its text format and structural operations;
//! * [`canon`]: canonical keys for isomorphism classes and graph enumeration;
//! * [`counting`]: brute-force counters used as ground truth;
//! * [`inversion`]: `ind`, `dsub`, inverse `dsub` columns and the identities
//!   between `hom`, `vsurj` and `vesurj`;
//! * [`dichotomy`]: recognition of the tractable target families and their
//!   polynomial-time counters;
//! * [`exact`]: fraction-free integer linear algebra;
//! * [`interpolation`]: recovery of `hom(·, H)` from an oracle for a linear
//!   combination of hom counts.

pub mod canon;
pub mod counting;
pub mod dichotomy;
pub mod error;
pub mod exact;
pub mod graph;
pub mod interpolation;
pub mod inversion;

pub use canon::{canonical_key, enumerate_graphs, GraphKey};
pub use counting::{aut_count, hom_count, vesurj_count, vsurj_count, Count};
pub use error::{Error, Result};
pub use graph::Graph;
pub use inversion::CoeffVector;
