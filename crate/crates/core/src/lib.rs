//! Verification engine for an explicit SYZ T-duality on the conifold.
//!
//! The A-side is the Lagrangian fibration of the conifold smoothing, the
//! B-side is a tropically continuous fibration on the resolved conifold
//! over the Novikov field. The crate implements both sides, the mirror
//! chart gluing, the embeddings between them, and randomized plus
//! symbolic (piecewise-linear case analysis) checks of every identity
//! that ties them together.

pub mod novikov;
pub mod plcore;
pub mod base_geometry;
pub mod aside;
pub mod mirror_bside;
pub mod report;
pub mod config;
pub mod suites;
