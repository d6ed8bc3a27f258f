//! The Hakim index, the residual (Abate) index, and the regularity
//! coefficient `rho` of a characteristic direction.
//!
//! At a nondegenerate direction the Hakim index is `r'(u0) / p_k(1,u0)`.
//! The residual index is the residue of `p_k(1,u)/r(u)` at the direction;
//! for a nondegenerate direction with simple `r`-zero the two are exact
//! reciprocals. The residue is computed twice, by series inversion and by
//! contour quadrature, as mutually independent routes.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{
    self, contour_residue, roots_with_multiplicity, series_residue, AlgebraError, Chart,
};
use crate::directions::{
    self, shifted_to_origin, vanishing_orders, CharDirection, DirectionClass, DirectionError,
};
use crate::germ::Germ;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndexError {
    #[error("Hakim index requires a nondegenerate direction")]
    DegenerateDirection,
    #[error("residual index is undefined for a dicritical germ")]
    Dicritical,
    #[error("direction is not characteristic")]
    DirectionNotCharacteristic,
    #[error("operation applies to degenerate Fuchsian directions only")]
    WrongClass,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<DirectionError> for IndexError {
    fn from(e: DirectionError) -> Self {
        match e {
            DirectionError::Dicritical => IndexError::Dicritical,
            DirectionError::DirectionNotCharacteristic => IndexError::DirectionNotCharacteristic,
            DirectionError::Algebra(a) => IndexError::Algebra(a),
        }
    }
}

/// Index data for one direction. `hakim` is absent for degenerate
/// directions, `rho`/`regular` are present for degenerate Fuchsian ones.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub hakim: Option<Complex64>,
    pub abate: Complex64,
    pub abate_contour: Complex64,
    pub rho: Option<Complex64>,
    pub regular: Option<bool>,
}

/// `i_H = r'(u0) / p_k(1,u0)` at a nondegenerate characteristic direction.
pub fn hakim_index(f: &Germ, chart: Chart, u0: Complex64) -> Result<Complex64, IndexError> {
    let (m, _) = vanishing_orders(f, chart, u0)?;
    if m != Some(0) {
        return Err(IndexError::DegenerateDirection);
    }
    let (p, _, r) = f.direction_polynomials(chart);
    Ok(r.derivative().eval(u0) / p.eval(u0))
}

/// Residual index: the residue of `p_k(1,u)/r(u)` at the direction,
/// computed by truncated-series inversion after recentering.
///
/// When `p_k` vanishes identically on the chart the quotient is zero and the
/// index is returned as exact 0 without series work.
pub fn abate_index(f: &Germ, chart: Chart, u0: Complex64) -> Result<Complex64, IndexError> {
    let (m, _) = vanishing_orders(f, chart, u0)?;
    if m.is_none() {
        return Ok(Complex64::ZERO);
    }
    let (p, _, r) = f.direction_polynomials(chart);
    Ok(series_residue(&p, &r, u0)?)
}

/// Residual index by trapezoidal contour quadrature, the independent
/// cross-check of [`abate_index`]. The contour radius is half the distance
/// from `u0` to the nearest other zero of `r`.
pub fn abate_index_contour(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
) -> Result<Complex64, IndexError> {
    let (m, _) = vanishing_orders(f, chart, u0)?;
    if m.is_none() {
        return Ok(Complex64::ZERO);
    }
    let (p, _, r) = f.direction_polynomials(chart);
    let r = r.trim_negligible();
    let roots = roots_with_multiplicity(&r, directions::ROOT_CLUSTER_TOL)?;
    let cluster_radius = directions::ROOT_CLUSTER_TOL * (1.0 + u0.norm());
    let nearest_other = roots
        .iter()
        .map(|(root, _)| (root - u0).norm())
        .filter(|&d| d > cluster_radius)
        .fold(f64::INFINITY, f64::min);
    let radius = if nearest_other.is_finite() {
        nearest_other / 2.0
    } else {
        0.5 * (1.0 + u0.norm())
    };
    let eval = move |u: Complex64| p.eval(u) / r.eval(u);
    Ok(contour_residue(&eval, u0, radius, 128)?)
}

/// Regularity data `(rho, regular)` at a degenerate Fuchsian direction.
///
/// With the direction recentered at the chart origin, the blow-up's second
/// component reads `u + z^(k-1) r(u) + z^k [rho_raw + O(u)] + ...`; `rho` is
/// that pure-`z` coefficient normalized by the leading coefficient `a_m` of
/// `p_k(1,u)`, and the direction is regular when it is nonzero. The
/// normalization fixes a canonical value; regularity itself does not depend
/// on it.
pub fn rho_regularity(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
) -> Result<(Complex64, bool), IndexError> {
    let (m, n) = vanishing_orders(f, chart, u0)?;
    let degenerate_fuchsian = matches!(m, Some(m) if m >= 1 && m + 1 == n);
    if !degenerate_fuchsian {
        return Err(IndexError::WrongClass);
    }
    let m = m.expect("finite by the class check") as usize;

    let shifted = shifted_to_origin(f, chart, u0);
    let expansion = shifted.blowup_expand(Chart::U, 1);
    let (p, _, _) = shifted.direction_polynomials(Chart::U);
    let a_m = p.coeff(m);
    let normalized = expansion.comp2[1].scale(1.0 / a_m);
    let rho = normalized.coeff(0);
    let regular = rho.norm() > algebra::zero_tol(normalized.max_coeff_magnitude());
    Ok((rho, regular))
}

/// Assembles the full index report for an analyzed direction.
pub fn index_report(f: &Germ, dir: &CharDirection) -> Result<IndexReport, IndexError> {
    let hakim = if dir.degenerate {
        None
    } else {
        Some(hakim_index(f, dir.chart, dir.u0)?)
    };
    let abate = abate_index(f, dir.chart, dir.u0)?;
    let abate_contour = abate_index_contour(f, dir.chart, dir.u0)?;
    let (rho, regular) =
        if dir.class == DirectionClass::Fuchsian && dir.degenerate && dir.m.is_some() {
            let (rho, regular) = rho_regularity(f, dir.chart, dir.u0)?;
            (Some(rho), Some(regular))
        } else {
            (None, None)
        };
    Ok(IndexReport {
        hakim,
        abate,
        abate_contour,
        rho,
        regular,
    })
}
