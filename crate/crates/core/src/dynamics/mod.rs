//! Empirical verification: orbit iteration, the explicit coordinate changes
//! of the basin constructions, sector-region invariance, numerical Fatou
//! coordinates, and basin-slice rasterization.

mod fatou;
mod orbit;
mod raster;
mod region;
mod transforms;

pub use fatou::{fatou_coordinate, model_map, phi_global, FatouResult, PhiGlobalResult};
pub use orbit::{iterate_orbit, OrbitConfig, OrbitFate, OrbitResult, ProjPoint};
pub use raster::{raster_slice, write_csv, write_ppm, FateGrid, SliceSpec, FATE_ESCAPED, FATE_UNDECIDED, FATE_ATTRACTED_UNMATCHED, FATE_DIRECTION_BASE};
pub use region::{
    check_v_invariance, count_region_exits, fit_error_constant, DecayExponents, InvarianceReport,
    NormalFormMap, SectorRegion,
};
pub use transforms::{
    a2_lemma_coefficients, lemma1_lift, lift_commutation_residual, transform_a2,
    transform_a2_inverse, CaseB1Transform, CaseB2Transform, Lemma1Data, Lemma1Lift,
};

use thiserror::Error;

use crate::directions::DirectionError;
use crate::indices::IndexError;

pub type Point = (num_complex::Complex64, num_complex::Complex64);
pub type Point3 = (
    num_complex::Complex64,
    num_complex::Complex64,
    num_complex::Complex64,
);

#[derive(Debug, Error)]
pub enum DynError {
    #[error("transform applies to a different direction class: {0}")]
    WrongCase(String),
    #[error("point lies on a coordinate axis where the transform is singular")]
    OnCoordinateAxis,
    #[error("point falls off the branch sector of the fractional powers")]
    OutsideBranchDomain,
    #[error("lift undefined: a*c + b*d vanishes")]
    LiftUndefined,
    #[error("declared decay bounds fail empirically: |eta1| max {eta1_max:.3e}, |x*eta2| max {eta2_rel_max:.3e}")]
    HypothesisNotMet { eta1_max: f64, eta2_rel_max: f64 },
    #[error("iteration left the holomorphic domain (non-finite values)")]
    NumericalBlowup,
    #[error("orbit never entered the chart region within {n_max} iterations")]
    OrbitNeverEntersRegion { n_max: usize },
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error(transparent)]
    Index(#[from] IndexError),
}
