//! Numerical convex-integration engine for constructing near-isometric
//! immersions `u: Ω ⊂ R^n → R^{n+1}` of a prescribed metric by iterated
//! corrugation, together with the quantitative checks (defect decay,
//! remainder block structure, corrector residual scaling, Hölder-norm
//! growth) that the construction asserts at every step.
//!
//! Module map:
//! - [`fields`]: grid-sampled scalar/vector/matrix fields on nested box
//!   domains, finite differences, Hölder seminorms, mollification.
//! - [`periodic`]: exact spectral arithmetic for the corrugation profiles.
//! - [`primitives`]: fixed-dimension symmetric-matrix decompositions.
//! - [`geometry`]: immersions, frames, induced metrics, (P_ρ) certificates.
//! - [`ibp`]: the iterative integration-by-parts corrector engine.
//! - [`corrugation`]: the step perturbation and the two substages.
//! - [`pipeline`]: parameter schedule, bootstrap, stage, full runs.
//! - [`verify`]: the per-module property suites behind `corrugate verify`.

pub mod error;
pub mod fields;
pub mod periodic;
pub mod primitives;
pub mod geometry;
pub mod ibp;
pub mod corrugation;
pub mod pipeline;
pub mod verify;

pub use error::{CoreError, Result};
pub use fields::{GridDomain, GridField, Rank, SeminormReport};

pub use periodic::TrigPoly;

pub use primitives::{PrimitiveBasis, SymMat};

/// Highest supported spatial dimension.
pub const MAX_DIM: usize = 4;
