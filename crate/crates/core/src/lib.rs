//! Analysis and simulation of plane holomorphic germs tangent to the
//! identity.
//!
//! Given a polynomial self-map `F` of `(C^2, 0)` with `dF(0) = Id`, the crate
//! enumerates the characteristic directions of `F` with multiplicity,
//! classifies each one (Fuchsian / irregular / apparent), computes the Hakim
//! and residual (Abate) indices, evaluates the basin-existence criteria for
//! each class, and verifies the conclusions dynamically: orbit iteration with
//! tangent-direction tracking, sector-region invariance checks, numerical
//! Fatou coordinates, and basin-slice rasterization.

pub mod algebra;
pub mod criteria;
pub mod directions;
pub mod dynamics;
pub mod germ;
pub mod indices;
pub mod samples;

pub use algebra::{BiPoly, Chart, TruncSeries, UniPoly};
pub use germ::{BlowupExpansion, Germ, GermError};
