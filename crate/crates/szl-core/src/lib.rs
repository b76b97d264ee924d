//! Deciding strong modular connectivity of small multigraphs.
//!
//! A graph is a member for a modulus parameter `l` when every boundary
//! (per-vertex residues modulo 2l matching degree parity and summing to
//! zero) is realized by some orientation: the out-minus-in degree at each
//! vertex must hit the prescribed residue. This crate decides membership,
//! produces orientations or explicit infeasibility witnesses, and
//! re-derives the known characterizations for graphs on up to four
//! vertices by exhaustive sweep.
//!
//! Modules:
//! - [`graph`]: multigraphs, cuts, contraction, lifting, tree packing,
//!   canonical codes.
//! - [`boundary`]: boundary vectors, integer lifts, residue-interval sets.
//! - [`orient`]: orientations, the cut-condition check, constructive and
//!   exhaustive solvers.
//! - [`decide`]: membership verdicts, fast characterization paths,
//!   multiplicity simplification.
//! - [`enumerate`]: family generation up to isomorphism and the
//!   fast-vs-brute verification harness.
//! - [`cache`]: the versioned verdict cache file format.

pub mod boundary;
pub mod cache;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod orient;

pub use boundary::{
    corresponding_gamma, enumerate_boundaries, gamma_candidates, intersect, is_valid_boundary,
    residue_interval, validate_boundary, BoundarySpec, BoundaryViolation, GammaFunction,
    ResidueSet, ELL_MAX,
};
pub use cache::{cache_load, cache_store, CacheEntry, CACHE_HEADER};
pub use decide::{
    decide_brute, decide_fast, exception_conditions_4v, failing_boundaries, szl_simplify,
    FailingBoundary, FastRule, Method, Trace, Verdict,
};
pub use enumerate::{enumerate_graphs, verify_characterization, FamilySpec, Mismatch, VerificationReport};
pub use error::{Error, Result};
pub use graph::{Multigraph, Partition, TreePacking, VertexSubset, CANON_N_MAX, N_MAX};
pub use orient::{
    brute_force_beta_orientation, construct_orientation, find_beta_orientation, hakimi_check,
    imbalance, imbalances, solve_three_vertex, verify_beta_orientation, BadSetWitness,
    Orientation, RefutedGamma, SolveOutcome,
};
