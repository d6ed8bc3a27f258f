use num_complex::Complex64;

use super::region::SectorRegion;
use super::{DynError, Point};

/// The exactly normalized translation model `(x, y) -> (x + 1, y + 1/x)`.
pub fn model_map(p: Point) -> Point {
    let (x, y) = p;
    (x + 1.0, y + 1.0 / x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FatouResult {
    /// `(Phi1, Phi2) = (lim x_n - n, lim y_n - ln x_n)`.
    pub phi: Point,
    pub iterations: usize,
    /// False when the partial sums never settled below tolerance within the
    /// iteration budget.
    pub converged: bool,
}

/// Fatou coordinates of a map in (or declared within `O(1/x^(1+eps))` of)
/// the normal form `x1 = x + 1`, `y1 = y + 1/x`.
///
/// `Phi1` accumulates `x_n - n`; `Phi2` follows the partial sums
/// `y_n - ln(x_n)` with the principal logarithm. Iteration stops once both
/// successive partial sums move less than `tol`; the translation property
/// `Phi(G(p)) = Phi(p) + (1, 0)` then holds to within an order of `tol`.
/// Leaving the holomorphic domain (a non-finite value, e.g. a start behind
/// the branch cut whose orbit crosses `x = 0`) is an error.
pub fn fatou_coordinate(
    g: &dyn Fn(Point) -> Point,
    p0: Point,
    tol: f64,
    max_iter: usize,
) -> Result<FatouResult, DynError> {
    let mut produce = {
        let mut q = p0;
        move || -> Point {
            q = g(q);
            q
        }
    };
    fatou_partial_sums(&mut produce, p0, tol, max_iter)
}

fn fatou_partial_sums(
    next: &mut dyn FnMut() -> Point,
    first: Point,
    tol: f64,
    max_iter: usize,
) -> Result<FatouResult, DynError> {
    let finite = |c: Complex64| c.re.is_finite() && c.im.is_finite();
    let (mut x, y0) = first;
    if !finite(x) || !finite(y0) {
        return Err(DynError::NumericalBlowup);
    }
    let mut phi1 = x;
    let mut phi2 = y0 - x.ln();
    for n in 1..=max_iter {
        let (x1, y1) = next();
        if !finite(x1) || !finite(y1) || x1 == Complex64::ZERO {
            return Err(DynError::NumericalBlowup);
        }
        let phi1_next = phi1 + (x1 - x - 1.0);
        let phi2_next = y1 - x1.ln();
        let step1 = (phi1_next - phi1).norm();
        let step2 = (phi2_next - phi2).norm();
        phi1 = phi1_next;
        phi2 = phi2_next;
        x = x1;
        if !finite(phi2) {
            return Err(DynError::NumericalBlowup);
        }
        if step1 < tol && step2 < tol {
            return Ok(FatouResult {
                phi: (phi1, phi2),
                iterations: n,
                converged: true,
            });
        }
    }
    Ok(FatouResult {
        phi: (phi1, phi2),
        iterations: max_iter,
        converged: false,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiGlobalResult {
    /// `phi(F^n(p)) - (n, 0)` for the first `n` entering the chart region.
    pub value: Point,
    pub entered_at: usize,
    /// Distance between the values computed at `n` and at `n + 1`; the
    /// translation property makes the two computations equal in exact
    /// arithmetic.
    pub consistency: f64,
}

/// Globalization of a local conjugacy: iterates `step` until the orbit
/// enters the chart's validity region, applies the chart's Fatou coordinate
/// there, and subtracts the iteration count from the first component.
/// Well-definedness is verified by recomputing at the next iterate.
pub fn phi_global(
    step: &dyn Fn(Point) -> Point,
    to_chart: &dyn Fn(Point) -> Option<Point>,
    region: &SectorRegion,
    p: Point,
    n_max: usize,
    tol: f64,
    fatou_max_iter: usize,
) -> Result<PhiGlobalResult, DynError> {
    let mut orbit = p;
    let mut entered_at = None;
    for n in 0..=n_max {
        if let Some((x, y)) = to_chart(orbit) {
            if region.contains(x, y) {
                entered_at = Some((n, orbit));
                break;
            }
        }
        orbit = step(orbit);
    }
    let Some((n, q)) = entered_at else {
        return Err(DynError::OrbitNeverEntersRegion { n_max });
    };

    let value_at = |start: Point, shift: usize| -> Result<Point, DynError> {
        let mut ambient = start;
        let first = to_chart(ambient).ok_or(DynError::NumericalBlowup)?;
        let mut produce = move || -> Point {
            ambient = step(ambient);
            to_chart(ambient).unwrap_or((Complex64::new(f64::NAN, 0.0), Complex64::ZERO))
        };
        let result = fatou_partial_sums(&mut produce, first, tol, fatou_max_iter)?;
        Ok((result.phi.0 - shift as f64, result.phi.1))
    };

    let value = value_at(q, n)?;
    let check = value_at(step(q), n + 1)?;
    let consistency =
        ((value.0 - check.0).norm_sqr() + (value.1 - check.1).norm_sqr()).sqrt();
    Ok(PhiGlobalResult {
        value,
        entered_at: n,
        consistency,
    })
}
