use std::fmt;

use num_complex::Complex64;

use super::AlgebraError;

/// Dense univariate polynomial over `Complex64`, coefficients indexed by
/// degree. Trailing exact zeros are trimmed so the leading coefficient of a
/// nonzero polynomial is nonzero.
#[derive(Clone, Default, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c * u^n`.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * u + c)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, s: Complex64) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Complex64::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Multiplies by `u^n`.
    pub fn shift_up(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Complex64::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly::new(coeffs)
    }

    /// Recomposes to `p(u + u0)` by exact binomial expansion (synthetic
    /// division by `u - u0`, repeated).
    pub fn shift(&self, u0: Complex64) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        // Repeated Horner: after pass t, coeffs[t] holds the t-th Taylor
        // coefficient of p at u0.
        for t in 0..n {
            for i in (t..n.saturating_sub(1)).rev() {
                let next = coeffs[i + 1];
                coeffs[i] += next * u0;
            }
        }
        UniPoly::new(coeffs)
    }

    /// Order of vanishing at u = 0 with the given absolute tolerance:
    /// the first coefficient index with magnitude above `tol`.
    /// `None` when every coefficient is below tolerance.
    pub fn vanishing_order(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().position(|c| c.norm() > tol)
    }

    /// True when every coefficient is negligible at the polynomial's scale.
    pub fn is_negligible(&self) -> bool {
        let tol = super::zero_tol(self.max_coeff_magnitude());
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }

    /// Drops leading coefficients that are negligible at the polynomial's
    /// own scale, so `degree` reflects the numerically supported degree.
    pub fn trim_negligible(&self) -> UniPoly {
        let tol = super::zero_tol(self.max_coeff_magnitude());
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= tol) {
            coeffs.pop();
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})u^{}", c, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Truncated power series: exactly `truncation_order + 1` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    coeffs: Vec<Complex64>,
}

impl TruncSeries {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Self { coeffs }
    }

    pub fn from_unipoly(p: &UniPoly, order: usize) -> Self {
        let coeffs = (0..=order).map(|i| p.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn mul(&self, other: &TruncSeries, order: usize) -> TruncSeries {
        let mut out = vec![Complex64::ZERO; order + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        TruncSeries::from_coeffs(out)
    }

    /// Multiplicative inverse to the same truncation order.
    /// Fails when the constant term is negligible at the series' scale.
    pub fn invert(&self) -> Result<TruncSeries, AlgebraError> {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let a0 = self.coeffs[0];
        if a0.norm() <= super::zero_tol(scale) {
            return Err(AlgebraError::IllConditioned(
                "series inversion with (near-)vanishing constant term".into(),
            ));
        }
        let order = self.truncation_order();
        let mut inv = vec![Complex64::ZERO; order + 1];
        inv[0] = Complex64::new(1.0, 0.0) / a0;
        for n in 1..=order {
            let mut acc = Complex64::ZERO;
            for i in 1..=n {
                acc += self.coeff(i) * inv[n - i];
            }
            inv[n] = -acc / a0;
        }
        Ok(TruncSeries::from_coeffs(inv))
    }
}
