//! Exact certificates for separating lines in families of pairwise disjoint
//! convex polygons.
//!
//! Given `n >= 2` pairwise interior-disjoint convex polygons, [`pipeline::solve`]
//! finds two of them, `A` and `B`, together with a guarantee `g >= ceil(n/18)`
//! such that every line weakly separating `A` from `B` has at least `g` of the
//! polygons in one of its closed halfplanes. The pieces:
//!
//! - [`geometry`]: exact rational predicates, clipping and line canonicalisation.
//! - [`cover`]: grows the polygons by absorbing bounded side triangles until no
//!   side can be removed; the result has at most `9n - 9` sides in total.
//! - [`separator`]: picks a supporting line of the grown family that has many
//!   polygons on its outer side, by counting in a bipartite incidence graph.
//! - [`pipeline`]: min-max separating lines for every pair, the clipped cells,
//!   and the final pair.
//! - [`instances`]: generator, JSON format, and an independent brute-force
//!   verifier for certificates.

pub mod cover;
pub mod error;
pub mod geometry;
pub mod instances;
pub mod pipeline;
pub mod separator;

pub use error::{Error, Result};

/// `ceil(n / 18)`, the guaranteed separation count for `n` sets.
pub fn guaranteed_count(n: usize) -> usize {
    n.div_ceil(18)
}
