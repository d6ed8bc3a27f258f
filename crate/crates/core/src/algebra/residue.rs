use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{AlgebraError, TruncSeries, UniPoly};

/// Residue of `numer/denom` at `u0`, computed through truncated series.
///
/// Both polynomials are recentered at `u0`; the denominator is factored as
/// `u^n s(u)` with `s(0) != 0`, `s` is inverted as a truncated series to
/// order `n - 1`, and the residue is the coefficient of `u^(n-1)` in
/// `numer * s^(-1)`. A pole order of zero (denominator not vanishing) gives
/// residue 0.
pub fn series_residue(
    numer: &UniPoly,
    denom: &UniPoly,
    u0: Complex64,
) -> Result<Complex64, AlgebraError> {
    if denom.is_negligible() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let numer = numer.shift(u0);
    let denom = denom.shift(u0);

    let tol = super::zero_tol(denom.max_coeff_magnitude());
    let n = denom
        .vanishing_order(tol)
        .ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Complex64::ZERO);
    }
    if numer.is_zero() {
        return Ok(Complex64::ZERO);
    }

    // denom = u^n * s(u); s as a series up to the order we need to read.
    let s = TruncSeries::from_coeffs((0..n).map(|i| denom.coeff(n + i)).collect());
    let s_inv = s.invert()?;
    let numer_series = TruncSeries::from_unipoly(&numer, n - 1);
    let quotient = numer_series.mul(&s_inv, n - 1);
    Ok(quotient.coeff(n - 1))
}

/// Residue by trapezoidal quadrature of `(1/2 pi i) \oint f` on the circle
/// `|u - center| = radius`. The trapezoid rule on the full circle converges
/// spectrally for functions analytic on the contour.
pub fn contour_residue(
    f: &dyn Fn(Complex64) -> Complex64,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64, AlgebraError> {
    assert!(nodes > 0 && radius > 0.0);
    let mut acc = Complex64::ZERO;
    for j in 0..nodes {
        let theta = TAU * j as f64 / nodes as f64;
        let dir = Complex64::new(theta.cos(), theta.sin());
        let val = f(center + radius * dir);
        if !val.re.is_finite() || !val.im.is_finite() {
            return Err(AlgebraError::EvaluationFailed);
        }
        acc += val * dir;
    }
    Ok(acc * radius / nodes as f64)
}
