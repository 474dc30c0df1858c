//! Bracketing covers of anchored axis-parallel boxes in the unit cube.
//!
//! The cube `[0,1)^d` is recursively partitioned into half-open boxes whose
//! *weight* (the volume gap between their two anchored corners) is at most a
//! prescribed `epsilon`. The resulting family brackets every anchored box
//! `[0, x)`, which makes it useful in three ways, all implemented here:
//!
//! - [`decomposer`] generates the cover as a deterministic stream of typed
//!   leaves, together with its height and cardinality statistics.
//! - [`bounds`] evaluates the closed-form catalogue of height, cardinality,
//!   covering and packing bounds attached to the construction, for
//!   comparison tables.
//! - [`discrepancy`] turns a cover into certified two-sided bounds on the
//!   star discrepancy of an arbitrary point set, with a guaranteed gap of at
//!   most `epsilon` above the true supremum.
//!
//! [`verify`] holds independent oracles (partition checks, weight
//! identities, shrink-factor recursion, path monotonicity, and a brute-force
//! discrepancy reference) that validate generated covers; the `bcover`
//! binary exposes everything on the command line.
//!
//! # Example
//!
//! ```
//! use bracket_cover::decomposer::{build_cover, height};
//!
//! let mut leaves = 0u64;
//! let stats = build_cover(2, 0.5, |_leaf| leaves += 1).unwrap();
//! assert_eq!(leaves, 6);
//! assert_eq!(stats.height, height(2, 0.5).unwrap());
//! assert!(stats.max_leaf_weight <= 0.5 + 1e-12);
//! ```

pub mod bounds;
pub mod decomposer;
pub mod discrepancy;
pub mod error;
pub mod geometry;
pub mod serialize;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{anchored_volume, CornerBox, Point, TypedBracket};

pub use decomposer::{
    build_cover, build_cover_with, decompose_step, delta_of, delta_recursion, gamma_of, height,
    walk_cover, BuildOptions, CoverStats, CoverVisitor, DecomposedNode, DecompositionPath,
};
pub use discrepancy::{count_below, disc_sandwich, DiscrepancyBound, PointSet};
pub use verify::{exact_star_discrepancy, VerificationReport};
