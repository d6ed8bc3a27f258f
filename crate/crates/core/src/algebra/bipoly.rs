use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::{AlgebraError, UniPoly};

/// Blow-up chart of the projective line over the origin.
///
/// Chart `U` uses coordinates `(z, u)` with `w = u z`; the direction
/// `[1 : u]` sits at `u`. Chart `V` uses `(w, u)` with `z = u w`; the
/// direction `[u : 1]` sits at `u`, so `[0 : 1]` is the origin of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    U,
    V,
}

impl Chart {
    pub fn other(self) -> Chart {
        match self {
            Chart::U => Chart::V,
            Chart::V => Chart::U,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::U => write!(f, "U"),
            Chart::V => write!(f, "V"),
        }
    }
}

/// Dense-by-monomial bivariate polynomial in `z` and `w` over `Complex64`.
///
/// Coefficients are keyed by the exponent pair `(i, j)` for `z^i w^j`.
/// Exact zeros are never stored, so `degree` is always consistent with the
/// stored support. Ordered storage keeps every traversal deterministic.
#[derive(Clone, Default, PartialEq)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), Complex64>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Complex64)>,
    {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Single monomial `c * z^i * w^j`.
    pub fn monomial(i: u32, j: u32, c: Complex64) -> Self {
        Self::from_terms([((i, j), c)])
    }

    /// Adds `c * z^i * w^j`, summing with any existing coefficient and
    /// dropping the slot if the sum is exactly zero.
    pub fn add_term(&mut self, i: u32, j: u32, c: Complex64) {
        if c == Complex64::ZERO {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_insert(Complex64::ZERO);
        *entry += c;
        if *entry == Complex64::ZERO {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, j)| i + j).max()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.coeffs.iter()
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&(i, j), &c)| c * z.powu(i) * w.powu(j))
            .sum()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in other.iter() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in other.iter() {
            out.add_term(i, j, -c);
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> BiPoly {
        BiPoly::from_terms(self.iter().map(|(&(i, j), &c)| ((i, j), c * s)))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), &c1) in self.iter() {
            for (&(i2, j2), &c2) in other.iter() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// Drops every monomial of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> BiPoly {
        BiPoly::from_terms(
            self.iter()
                .filter(|(&(i, j), _)| i + j <= max_degree)
                .map(|(&k, &c)| (k, c)),
        )
    }

    /// Drops every monomial whose coefficient is negligible at the
    /// polynomial's own scale.
    pub fn snap_to_zero(&self) -> BiPoly {
        let scale = self.max_coeff_magnitude();
        BiPoly::from_terms(
            self.iter()
                .filter(|(_, &c)| !super::is_negligible(c, scale))
                .map(|(&k, &c)| (k, c)),
        )
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.coeffs.keys().map(|&(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Splits into homogeneous parts, returned by increasing degree.
    /// The parts sum to the input exactly, coefficient by coefficient.
    pub fn homogeneous_parts(&self) -> Vec<(u32, BiPoly)> {
        let mut by_degree: BTreeMap<u32, BiPoly> = BTreeMap::new();
        for (&(i, j), &c) in self.iter() {
            by_degree.entry(i + j).or_default().add_term(i, j, c);
        }
        by_degree.into_iter().collect()
    }

    /// Homogeneous part of the given degree (zero polynomial if absent).
    pub fn homogeneous_part(&self, degree: u32) -> BiPoly {
        BiPoly::from_terms(
            self.iter()
                .filter(|(&(i, j), _)| i + j == degree)
                .map(|(&k, &c)| (k, c)),
        )
    }

    /// Restricts a homogeneous polynomial to a blow-up chart:
    /// `h(1, u)` in chart `U`, `h(u, 1)` in chart `V`.
    pub fn restrict_chart(&self, chart: Chart) -> Result<UniPoly, AlgebraError> {
        if !self.is_homogeneous() {
            return Err(AlgebraError::NonHomogeneous);
        }
        let mut coeffs = vec![Complex64::ZERO; self.degree().map_or(0, |d| d as usize + 1)];
        for (&(i, j), &c) in self.iter() {
            let power = match chart {
                Chart::U => j as usize,
                Chart::V => i as usize,
            };
            coeffs[power] += c;
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Substitutes `z -> a z + b w`, `w -> c z + d w`.
    pub fn substitute_linear(
        &self,
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), &coeff) in self.iter() {
            let zi = binomial_power(a, b, i);
            let wj = binomial_power(c, d, j);
            // (a z + b w)^i * (c z + d w)^j, expanded term by term.
            for (iz, cz) in zi.iter().enumerate() {
                for (iw, cw) in wj.iter().enumerate() {
                    let zdeg = (i as usize - iz) + (j as usize - iw);
                    let wdeg = iz + iw;
                    out.add_term(zdeg as u32, wdeg as u32, coeff * cz * cw);
                }
            }
        }
        out
    }

    /// Coordinate swap `z <-> w`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly::from_terms(self.iter().map(|(&(i, j), &c)| ((j, i), c)))
    }
}

/// Coefficients of `(a z + b w)^n` in increasing powers of `w`:
/// entry `t` multiplies `z^(n-t) w^t`.
fn binomial_power(a: Complex64, b: Complex64, n: u32) -> Vec<Complex64> {
    let n = n as usize;
    let mut out = vec![Complex64::ZERO; n + 1];
    let mut binom = 1.0f64;
    for (t, slot) in out.iter_mut().enumerate() {
        *slot = binom * a.powu((n - t) as u32) * b.powu(t as u32);
        binom = binom * (n - t) as f64 / (t + 1) as f64;
    }
    out
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), &c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})z^{}w^{}", c, i, j)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn re(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn homogeneous_parts_group_monomials() {
        // z^2 + z w + z -> degree 1 part z, degree 2 part z^2 + z w
        let p = BiPoly::from_terms([
            ((2, 0), re(1.0)),
            ((1, 1), re(1.0)),
            ((1, 0), re(1.0)),
        ]);
        let parts = p.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 1);
        assert_eq!(parts[0].1, BiPoly::monomial(1, 0, re(1.0)));
        assert_eq!(parts[1].0, 2);
        assert_eq!(
            parts[1].1,
            BiPoly::from_terms([((2, 0), re(1.0)), ((1, 1), re(1.0))])
        );
    }

    #[test]
    fn homogeneous_parts_of_zero_is_empty() {
        assert!(BiPoly::zero().homogeneous_parts().is_empty());
    }

    #[test]
    fn homogeneous_parts_keep_signs() {
        // w - w^2
        let p = BiPoly::from_terms([((0, 1), re(1.0)), ((0, 2), re(-1.0))]);
        let parts = p.homogeneous_parts();
        assert_eq!(parts[0], (1, BiPoly::monomial(0, 1, re(1.0))));
        assert_eq!(parts[1], (2, BiPoly::monomial(0, 2, re(-1.0))));
    }

    #[test]
    fn restrict_chart_examples() {
        // z^2 in U -> constant 1
        let z2 = BiPoly::monomial(2, 0, re(1.0));
        let r = z2.restrict_chart(Chart::U).unwrap();
        assert_eq!(r.coeffs(), &[re(1.0)]);

        // z w + c w^2 in U -> u + c u^2
        let c = C::new(2.0, -1.0);
        let p = BiPoly::from_terms([((1, 1), re(1.0)), ((0, 2), c)]);
        let r = p.restrict_chart(Chart::U).unwrap();
        assert_eq!(r.coeffs(), &[C::ZERO, re(1.0), c]);

        // w^2 in V -> constant 1
        let w2 = BiPoly::monomial(0, 2, re(1.0));
        let r = w2.restrict_chart(Chart::V).unwrap();
        assert_eq!(r.coeffs(), &[re(1.0)]);
    }

    #[test]
    fn restrict_chart_rejects_non_homogeneous() {
        let p = BiPoly::from_terms([((1, 0), re(1.0)), ((0, 2), re(1.0))]);
        assert_eq!(
            p.restrict_chart(Chart::U).unwrap_err(),
            AlgebraError::NonHomogeneous
        );
    }

    #[test]
    fn substitute_linear_matches_pointwise_eval() {
        let p = BiPoly::from_terms([
            ((2, 1), C::new(1.0, 0.5)),
            ((0, 3), re(-2.0)),
            ((1, 0), re(0.25)),
        ]);
        let (a, b, c, d) = (C::new(0.3, 0.1), re(-1.2), C::new(0.0, 2.0), re(0.7));
        let q = p.substitute_linear(a, b, c, d);
        let z = C::new(0.4, -0.3);
        let w = C::new(-0.9, 0.2);
        let direct = p.eval(a * z + b * w, c * z + d * w);
        let composed = q.eval(z, w);
        assert!((direct - composed).norm() < 1e-12);
    }
}
