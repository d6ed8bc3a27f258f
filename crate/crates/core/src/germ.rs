//! Polynomial germs of `(C^2, 0)` tangent to the identity and their blow-up.
//!
//! A germ is stored as the two polynomial components `F = (f1, f2)` with
//! `F(0) = 0` and linear part exactly the identity. The key derived object is
//! the blow-up expansion in a chart `(z, u)`: writing `F~ = (F~1, F~2)` for
//! the induced map near the exceptional divisor,
//!
//! ```text
//! F~1(z, u) = z + z^k [ p_k(1,u) + O(z) ]
//! F~2(z, u) = u + z^(k-1) [ r(u) + O(z) ],     r(u) = q_k(1,u) - u p_k(1,u)
//! ```
//!
//! where `k` is the order of the germ and `P_k = (p_k, q_k)` its first
//! nonlinear homogeneous part.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{self, BiPoly, Chart, UniPoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GermError {
    #[error("germ does not fix the origin (constant term present)")]
    NotFixingOrigin,
    #[error("germ is not tangent to the identity (linear part is not Id)")]
    NotTangentToIdentity,
    #[error("germ is the identity map")]
    IsIdentity,
    #[error("germ has a non-finite coefficient")]
    NonFiniteCoefficient,
    #[error("linear conjugation requires an invertible matrix")]
    SingularConjugation,
}

/// A polynomial self-map of `(C^2, 0)` tangent to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ {
    f1: BiPoly,
    f2: BiPoly,
    order: u32,
}

impl Germ {
    /// Validates the defining invariants and computes the order.
    pub fn validate(f1: BiPoly, f2: BiPoly) -> Result<Germ, GermError> {
        for poly in [&f1, &f2] {
            for (_, &c) in poly.iter() {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(GermError::NonFiniteCoefficient);
                }
            }
        }
        if f1.coeff(0, 0) != Complex64::ZERO || f2.coeff(0, 0) != Complex64::ZERO {
            return Err(GermError::NotFixingOrigin);
        }
        let one = Complex64::new(1.0, 0.0);
        let linear_ok = f1.coeff(1, 0) == one
            && f1.coeff(0, 1) == Complex64::ZERO
            && f2.coeff(1, 0) == Complex64::ZERO
            && f2.coeff(0, 1) == one;
        if !linear_ok {
            return Err(GermError::NotTangentToIdentity);
        }
        let order = [&f1, &f2]
            .iter()
            .flat_map(|p| p.iter())
            .map(|(&(i, j), _)| i + j)
            .filter(|&d| d >= 2)
            .min()
            .ok_or(GermError::IsIdentity)?;
        Ok(Germ { f1, f2, order })
    }

    /// Builds a germ from components whose constant/linear slots are only
    /// approximately identity (e.g. after a floating-point conjugation):
    /// sub-tolerance coefficients are dropped and the linear part is snapped
    /// to the exact identity.
    fn from_snapped(f1: BiPoly, f2: BiPoly) -> Result<Germ, GermError> {
        let scale = f1.max_coeff_magnitude().max(f2.max_coeff_magnitude());
        let tol = algebra::zero_tol(scale);
        let one = Complex64::new(1.0, 0.0);
        if f1.coeff(0, 0).norm() > tol
            || f2.coeff(0, 0).norm() > tol
            || (f1.coeff(1, 0) - one).norm() > tol
            || f1.coeff(0, 1).norm() > tol
            || f2.coeff(1, 0).norm() > tol
            || (f2.coeff(0, 1) - one).norm() > tol
        {
            return Err(GermError::NotTangentToIdentity);
        }
        let rebuild = |p: &BiPoly, keep_z: bool, keep_w: bool| {
            let mut out = BiPoly::zero();
            for (&(i, j), &c) in p.snap_to_zero().iter() {
                if i + j >= 2 {
                    out.add_term(i, j, c);
                }
            }
            if keep_z {
                out.add_term(1, 0, one);
            }
            if keep_w {
                out.add_term(0, 1, one);
            }
            out
        };
        Germ::validate(rebuild(&f1, true, false), rebuild(&f2, false, true))
    }

    pub fn components(&self) -> (&BiPoly, &BiPoly) {
        (&self.f1, &self.f2)
    }

    /// The order `k`: the smallest degree >= 2 carrying a nonzero
    /// homogeneous part of `F - Id`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Largest total degree appearing in either component.
    pub fn degree(&self) -> u32 {
        self.f1
            .degree()
            .unwrap_or(0)
            .max(self.f2.degree().unwrap_or(0))
    }

    /// Homogeneous pair `P_d = (p_d, q_d)` of `F - Id`.
    pub fn homogeneous_pair(&self, d: u32) -> (BiPoly, BiPoly) {
        debug_assert!(d >= 2);
        (self.f1.homogeneous_part(d), self.f2.homogeneous_part(d))
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> (Complex64, Complex64) {
        (self.f1.eval(z, w), self.f2.eval(z, w))
    }

    /// Coordinate swap `swap . F . swap`; chart `V` of `F` is chart `U` of
    /// the swapped germ.
    pub fn swapped(&self) -> Germ {
        Germ {
            f1: self.f2.swap_vars(),
            f2: self.f1.swap_vars(),
            order: self.order,
        }
    }

    fn chart_germ(&self, chart: Chart) -> Germ {
        match chart {
            Chart::U => self.clone(),
            Chart::V => self.swapped(),
        }
    }

    /// Chart restrictions of the leading pair: `(p_k(1,u), q_k(1,u), r(u))`
    /// in chart `U`, the swapped analogues in chart `V`.
    pub fn direction_polynomials(&self, chart: Chart) -> (UniPoly, UniPoly, UniPoly) {
        let g = self.chart_germ(chart);
        let (pk, qk) = g.homogeneous_pair(g.order);
        let p = pk.restrict_chart(Chart::U).expect("homogeneous by construction");
        let q = qk.restrict_chart(Chart::U).expect("homogeneous by construction");
        let r = q.sub(&p.shift_up(1));
        (p, q, r)
    }

    /// Exact evaluation of the blow-up `F~` at a chart point `(z, u)`.
    pub fn blowup_eval(&self, chart: Chart, z: Complex64, u: Complex64) -> (Complex64, Complex64) {
        let g = self.chart_germ(chart);
        let (z1, w1) = g.eval(z, z * u);
        (z1, w1 / z1)
    }

    /// Truncated blow-up expansion in the given chart, to depth `K`.
    pub fn blowup_expand(&self, chart: Chart, depth: u32) -> BlowupExpansion {
        let g = self.chart_germ(chart);
        let k = g.order;
        let deg = g.degree();

        // Degrees j >= k >= 2 never touch the identity's linear term, so the
        // homogeneous parts of f1 and of f1 - z coincide here.
        let comp1: Vec<UniPoly> = (k..=k + depth)
            .map(|j| {
                g.f1.homogeneous_part(j)
                    .restrict_chart(Chart::U)
                    .expect("homogeneous")
            })
            .collect();

        // F~2 = (z u + sum_j z^j q_j(1,u)) / (z + sum_j z^j p_j(1,u)):
        // divide through by z and expand the reciprocal as a geometric
        // series in z. Everything is exact up to the z-truncation.
        let zmax = (k - 1 + depth) as usize;
        let mut numer = ZSeries::zero(zmax); // F2(z, zu)/z - u
        let mut denom_tail = ZSeries::zero(zmax); // F1(z, zu)/z - 1
        for j in k..=deg.max(k) {
            if (j - 1) as usize > zmax {
                break;
            }
            let (pj, qj) = g.homogeneous_pair(j);
            numer.set(
                (j - 1) as usize,
                qj.restrict_chart(Chart::U).expect("homogeneous"),
            );
            denom_tail.set(
                (j - 1) as usize,
                pj.restrict_chart(Chart::U).expect("homogeneous"),
            );
        }
        let inv = denom_tail.geometric_inverse_tail();
        // (u + numer) * (1 + inv) - u = numer + u*inv + numer*inv
        let u_poly = UniPoly::monomial(1, Complex64::new(1.0, 0.0));
        let mut total = numer.clone();
        total = total.add(&inv.scale_unipoly(&u_poly));
        total = total.add(&numer.mul(&inv));

        let comp2: Vec<UniPoly> = (0..=depth as usize)
            .map(|i| total.get(k as usize - 1 + i).clone())
            .collect();

        BlowupExpansion {
            chart,
            k,
            depth,
            comp1,
            comp2,
        }
    }

    /// Conjugates by the invertible linear map `L(z,w) = (a z + b w, c z + d w)`,
    /// optionally truncating the composition at a total degree.
    pub fn linear_conjugate(
        &self,
        l: [[Complex64; 2]; 2],
        max_degree: Option<u32>,
    ) -> Result<Germ, GermError> {
        let [[a, b], [c, d]] = l;
        let det = a * d - b * c;
        if det.norm() < 1e-12 {
            return Err(GermError::SingularConjugation);
        }
        let g1 = self.f1.substitute_linear(a, b, c, d);
        let g2 = self.f2.substitute_linear(a, b, c, d);
        // L^{-1} = [[d, -b], [-c, a]] / det
        let h1 = g1.scale(d / det).add(&g2.scale(-b / det));
        let h2 = g1.scale(-c / det).add(&g2.scale(a / det));
        let (h1, h2) = match max_degree {
            Some(m) => (h1.truncate(m), h2.truncate(m)),
            None => (h1, h2),
        };
        Germ::from_snapped(h1, h2)
    }

    /// Moves the chart-`U` direction `[1 : u0]` to `[1 : 0]` by the exact
    /// shear conjugation `L(z, w) = (z, w + u0 z)`.
    pub fn shift_direction(&self, u0: Complex64) -> Germ {
        let one = Complex64::new(1.0, 0.0);
        self.linear_conjugate([[one, Complex64::ZERO], [u0, one]], None)
            .expect("shear is invertible")
    }

    /// Conjugation by the homothety `(z, w) -> (c z, c w)`.
    pub fn rescale(&self, c: Complex64) -> Result<Germ, GermError> {
        self.linear_conjugate([[c, Complex64::ZERO], [Complex64::ZERO, c]], None)
    }
}

/// Truncated blow-up series: `comp1[i]` is the coefficient of `z^(k+i)` in
/// `F~1 - z`, `comp2[i]` the coefficient of `z^(k-1+i)` in `F~2 - u`.
#[derive(Clone, Debug)]
pub struct BlowupExpansion {
    pub chart: Chart,
    pub k: u32,
    pub depth: u32,
    pub comp1: Vec<UniPoly>,
    pub comp2: Vec<UniPoly>,
}

impl BlowupExpansion {
    /// The direction polynomial `r(u)`, i.e. `comp2[0]`.
    pub fn r(&self) -> &UniPoly {
        &self.comp2[0]
    }

    /// Evaluates the truncated expansion; the error is `O(z^(k+depth+1))`.
    pub fn eval(&self, z: Complex64, u: Complex64) -> (Complex64, Complex64) {
        let mut z1 = z;
        for (i, poly) in self.comp1.iter().enumerate() {
            z1 += z.powu(self.k + i as u32) * poly.eval(u);
        }
        let mut u1 = u;
        for (i, poly) in self.comp2.iter().enumerate() {
            u1 += z.powu(self.k - 1 + i as u32) * poly.eval(u);
        }
        (z1, u1)
    }
}

/// Power series in `z` with `UniPoly` coefficients, truncated at a fixed
/// maximal z-power.
#[derive(Clone)]
struct ZSeries {
    coeffs: Vec<UniPoly>,
}

impl ZSeries {
    fn zero(zmax: usize) -> Self {
        Self {
            coeffs: vec![UniPoly::zero(); zmax + 1],
        }
    }

    fn zmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn set(&mut self, power: usize, poly: UniPoly) {
        self.coeffs[power] = poly;
    }

    fn get(&self, power: usize) -> &UniPoly {
        &self.coeffs[power]
    }

    fn add(&self, other: &ZSeries) -> ZSeries {
        let mut out = ZSeries::zero(self.zmax());
        for (i, slot) in out.coeffs.iter_mut().enumerate() {
            *slot = self.coeffs[i].add(&other.coeffs[i]);
        }
        out
    }

    fn mul(&self, other: &ZSeries) -> ZSeries {
        let mut out = ZSeries::zero(self.zmax());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.zmax() {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    fn scale_unipoly(&self, p: &UniPoly) -> ZSeries {
        let mut out = ZSeries::zero(self.zmax());
        for (i, a) in self.coeffs.iter().enumerate() {
            out.coeffs[i] = a.mul(p);
        }
        out
    }

    /// For a series `A` with no constant term, returns `1/(1+A) - 1`
    /// computed as the geometric series `-A + A^2 - A^3 + ...`.
    fn geometric_inverse_tail(&self) -> ZSeries {
        debug_assert!(self.coeffs[0].is_zero());
        let mut out = ZSeries::zero(self.zmax());
        let mut power = ZSeries::zero(self.zmax());
        power.set(0, UniPoly::constant(Complex64::new(1.0, 0.0)));
        let lowest = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.zmax() + 1);
        if lowest > self.zmax() {
            return out;
        }
        let mut sign = -1.0;
        for _ in 0..=(self.zmax() / lowest) {
            power = power.mul(self);
            let signed = ZSeries {
                coeffs: power
                    .coeffs
                    .iter()
                    .map(|c| c.scale(Complex64::new(sign, 0.0)))
                    .collect(),
            };
            out = out.add(&signed);
            sign = -sign;
        }
        out
    }
}
