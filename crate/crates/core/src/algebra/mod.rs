//! Complex polynomial and truncated-series arithmetic.
//!
//! This is the numerical substrate for the rest of the crate: dense
//! bivariate/univariate polynomials over `Complex64`, simultaneous-iteration
//! root finding with multiplicity clustering, and residues computed two
//! independent ways (series inversion and contour quadrature).

mod bipoly;
mod residue;
mod roots;
mod unipoly;

pub use bipoly::{BiPoly, Chart};
pub use residue::{contour_residue, series_residue};
pub use roots::roots_with_multiplicity;
pub use unipoly::{TruncSeries, UniPoly};

use num_complex::Complex64;
use thiserror::Error;

/// Relative zero threshold: a coefficient counts as zero when
/// `|c| <= ZERO_REL_TOL * (1 + scale)` where `scale` is the largest
/// coefficient magnitude of the polynomial it belongs to.
pub const ZERO_REL_TOL: f64 = 1e-10;

/// Scale-aware zero tolerance for a polynomial with given coefficient scale.
pub fn zero_tol(scale: f64) -> f64 {
    ZERO_REL_TOL * (1.0 + scale)
}

/// True when `c` is negligible at the given coefficient scale.
pub fn is_negligible(c: Complex64, scale: f64) -> bool {
    c.norm() <= zero_tol(scale)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("root iteration did not converge within {iterations} iterations")]
    RootsNotConverged { iterations: usize },
    #[error("ill-conditioned input: {0}")]
    IllConditioned(String),
    #[error("function evaluation failed at a quadrature node")]
    EvaluationFailed,
    #[error("non-finite value encountered")]
    NonFinite,
}

/// Checks a scalar for NaN/infinity before it enters polynomial arithmetic.
pub fn ensure_finite(c: Complex64) -> Result<Complex64, AlgebraError> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(AlgebraError::NonFinite)
    }
}
