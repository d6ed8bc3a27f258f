use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Chart;
use crate::directions::{shifted_to_origin, vanishing_orders};
use crate::germ::Germ;
use crate::indices::abate_index;

use super::region::{DecayExponents, NormalFormMap};
use super::{DynError, Point, Point3};

/// Coordinate change for an irregular direction with `m = 0`, `n > 1`
/// (the direction already moved to the chart origin):
///
/// ```text
/// x = -1 / (a0 (k-1) z^(k-1)),    y = (k-1) a0 / ((n-1) cn u^(n-1))
/// ```
///
/// The `a0`, `cn` factors fold in the linear rescale that normalizes the
/// leading coefficients to `-1`, so the conjugated blow-up becomes
/// `x1 = x + 1 + o(1)`, `y1 = y + 1/x + o(1/x)` on the sector. Fractional
/// powers take the principal branch.
#[derive(Debug, Clone)]
pub struct CaseB1Transform {
    pub k: u32,
    pub n: u32,
    pub a0: Complex64,
    pub cn: Complex64,
    germ: Germ,
}

impl CaseB1Transform {
    /// Builds the transform for the direction `[chart : u0]`, shifting the
    /// germ so the direction sits at the chart origin.
    pub fn new(f: &Germ, chart: Chart, u0: Complex64) -> Result<Self, DynError> {
        let (m, n) = vanishing_orders(f, chart, u0)?;
        if m != Some(0) || n <= 1 {
            return Err(DynError::WrongCase(format!(
                "case b.1 needs (m, n) = (0, >1), found ({m:?}, {n})"
            )));
        }
        let germ = shifted_to_origin(f, chart, u0);
        let (p, _, r) = germ.direction_polynomials(Chart::U);
        Ok(Self {
            k: f.order(),
            n,
            a0: p.coeff(0),
            cn: r.coeff(n as usize),
            germ,
        })
    }

    /// The shifted germ whose blow-up this transform normalizes.
    pub fn shifted_germ(&self) -> &Germ {
        &self.germ
    }

    pub fn forward(&self, z: Complex64, u: Complex64) -> Result<Point, DynError> {
        if z == Complex64::ZERO || u == Complex64::ZERO {
            return Err(DynError::OnCoordinateAxis);
        }
        let km1 = (self.k - 1) as f64;
        let nm1 = (self.n - 1) as f64;
        let x = -1.0 / (self.a0 * km1 * z.powu(self.k - 1));
        let y = km1 * self.a0 / (nm1 * self.cn * u.powu(self.n - 1));
        ensure_point(x, y)
    }

    pub fn inverse(&self, x: Complex64, y: Complex64) -> Result<Point, DynError> {
        if x == Complex64::ZERO || y == Complex64::ZERO {
            return Err(DynError::OnCoordinateAxis);
        }
        let km1 = (self.k - 1) as f64;
        let nm1 = (self.n - 1) as f64;
        let z = principal_root(-1.0 / (self.a0 * km1 * x), self.k - 1);
        let u = principal_root(km1 * self.a0 / (nm1 * self.cn * y), self.n - 1);
        ensure_point(z, u)
    }

    /// Decay exponents of the conjugated map's error terms.
    pub fn exponents(&self) -> DecayExponents {
        let k = self.k as f64;
        let n = self.n as f64;
        DecayExponents {
            a: 1.0 / (k - 1.0),
            b: 1.0 / (n - 1.0),
            c: 1.0 / (n - 1.0),
            d: k / (k - 1.0),
            e: n / (n - 1.0),
        }
    }

    /// The conjugated blow-up as a near-translation map in `(x, y)`.
    pub fn normal_form(&self) -> NormalFormMap {
        let this = self.clone();
        NormalFormMap::new(
            Box::new(move |(x, y)| {
                let (z, u) = this.inverse(x, y).expect("point in the sector");
                let (z1, u1) = this.germ.blowup_eval(Chart::U, z, u);
                this.forward(z1, u1).expect("image stays off the axes")
            }),
            self.exponents(),
        )
    }
}

/// Coordinate change for an irregular direction with `m > 0`, `n > m + 1`:
///
/// ```text
/// x = -(k-1) / (am z^(k-1) u^m),    y = (k-1)(n-m-1) am / (cn u^(n-m-1))
/// ```
#[derive(Debug, Clone)]
pub struct CaseB2Transform {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub am: Complex64,
    pub cn: Complex64,
    germ: Germ,
}

impl CaseB2Transform {
    pub fn new(f: &Germ, chart: Chart, u0: Complex64) -> Result<Self, DynError> {
        let (m, n) = vanishing_orders(f, chart, u0)?;
        let m = match m {
            Some(m) if m >= 1 && n > m + 1 => m,
            _ => {
                return Err(DynError::WrongCase(format!(
                    "case b.2 needs m >= 1 and n > m+1, found ({m:?}, {n})"
                )))
            }
        };
        let germ = shifted_to_origin(f, chart, u0);
        let (p, _, r) = germ.direction_polynomials(Chart::U);
        Ok(Self {
            k: f.order(),
            m,
            n,
            am: p.coeff(m as usize),
            cn: r.coeff(n as usize),
            germ,
        })
    }

    pub fn shifted_germ(&self) -> &Germ {
        &self.germ
    }

    pub fn forward(&self, z: Complex64, u: Complex64) -> Result<Point, DynError> {
        if z == Complex64::ZERO || u == Complex64::ZERO {
            return Err(DynError::OnCoordinateAxis);
        }
        let km1 = (self.k - 1) as f64;
        let gap = (self.n - self.m - 1) as f64;
        let x = -km1 / (self.am * z.powu(self.k - 1) * u.powu(self.m));
        let y = km1 * gap * self.am / (self.cn * u.powu(self.n - self.m - 1));
        ensure_point(x, y)
    }

    pub fn inverse(&self, x: Complex64, y: Complex64) -> Result<Point, DynError> {
        if x == Complex64::ZERO || y == Complex64::ZERO {
            return Err(DynError::OnCoordinateAxis);
        }
        let km1 = (self.k - 1) as f64;
        let gap = (self.n - self.m - 1) as f64;
        let u = principal_root(km1 * gap * self.am / (self.cn * y), self.n - self.m - 1);
        let z = principal_root(-km1 / (self.am * x * u.powu(self.m)), self.k - 1);
        ensure_point(z, u)
    }

    /// Decay exponents, with the mixed `y^positive / x^...` term of the
    /// first component absorbed into an effective `x` exponent using
    /// `|y|^N < |x|` on the region the map will run in.
    pub fn exponents(&self, region_n: f64) -> DecayExponents {
        let k = self.k as f64;
        let m = self.m as f64;
        let n = self.n as f64;
        let gap = n - m - 1.0;
        let mixed = (k * m + k - 1.0) / ((k - 1.0) * gap);
        DecayExponents {
            a: 1.0 / (k - 1.0) - mixed / region_n,
            b: 1.0 / gap,
            c: (n - m + k - 2.0 + m * k) / (gap * (k - 1.0)),
            d: k / (k - 1.0),
            e: 1.0 / gap,
        }
    }

    pub fn normal_form(&self, region_n: f64) -> NormalFormMap {
        let this = self.clone();
        NormalFormMap::new(
            Box::new(move |(x, y)| {
                let (z, u) = this.inverse(x, y).expect("point in the sector");
                let (z1, u1) = this.germ.blowup_eval(Chart::U, z, u);
                this.forward(z1, u1).expect("image stays off the axes")
            }),
            self.exponents(region_n),
        )
    }
}

/// Degenerate-Fuchsian coordinate change `x = z / u^(m+1)` (the `u`
/// coordinate is kept).
pub fn transform_a2(point: Point, m: u32) -> Result<Point, DynError> {
    let (z, u) = point;
    if u == Complex64::ZERO {
        return Err(DynError::OnCoordinateAxis);
    }
    ensure_point(z / u.powu(m + 1), u)
}

pub fn transform_a2_inverse(point: Point, m: u32) -> Result<Point, DynError> {
    let (x, u) = point;
    ensure_point(x * u.powu(m + 1), u)
}

/// Coefficient data feeding the cone condition for a degenerate Fuchsian
/// direction: after `x = z/u^(m+1)` the conjugated map is of the
/// two-exponent normal shape with
/// `a = k-1`, `b = mk+k-1`, `c = 1 - (m+1) beta`, `d = beta`,
/// where `beta` is the reciprocal of the residual index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Data {
    pub c: Complex64,
    pub d: Complex64,
    pub a: u32,
    pub b: u32,
}

pub fn a2_lemma_coefficients(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
) -> Result<Lemma1Data, DynError> {
    let (m, n) = vanishing_orders(f, chart, u0)?;
    let m = match m {
        Some(m) if m >= 1 && n == m + 1 => m,
        _ => {
            return Err(DynError::WrongCase(format!(
                "case a.2 needs m >= 1 and n = m+1, found ({m:?}, {n})"
            )))
        }
    };
    let k = f.order();
    let ind = abate_index(f, chart, u0)?;
    let beta = 1.0 / ind;
    Ok(Lemma1Data {
        c: 1.0 - (m as f64 + 1.0) * beta,
        d: beta,
        a: k - 1,
        b: m * k + k - 1,
    })
}

/// Report of the three-variable lift `pi(z, w) = (-(ac+bd) z^a w^b, z, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Lift {
    /// `-(a c + b d)`, the factor in the first lifted coordinate.
    pub factor: Complex64,
    pub a: u32,
    pub b: u32,
    /// Diagonal entries `(c/(ac+bd), d/(ac+bd))` of the derivative matrix
    /// the lifted map exposes to the half-plane eigenvalue test.
    pub diag: (Complex64, Complex64),
}

impl Lemma1Lift {
    /// `pi(z, w)`.
    pub fn projection(&self, z: Complex64, w: Complex64) -> Point3 {
        (self.factor * z.powu(self.a) * w.powu(self.b), z, w)
    }
}

/// Lifts a planar map `f` of the two-exponent normal shape to three
/// variables so that `pi . f = g . pi` holds identically:
/// `g(x, z, w) = (x (f1/z)^a (f2/w)^b, f1, f2)`.
pub fn lemma1_lift<'f>(
    c: Complex64,
    d: Complex64,
    a: u32,
    b: u32,
    f: &'f dyn Fn(Point) -> Point,
) -> Result<(impl Fn(Point3) -> Point3 + 'f, Lemma1Lift), DynError> {
    let trace = a as f64 * c + b as f64 * d;
    if trace.norm() < 1e-12 {
        return Err(DynError::LiftUndefined);
    }
    let report = Lemma1Lift {
        factor: -trace,
        a,
        b,
        diag: (c / trace, d / trace),
    };
    let g = move |(x, z, w): Point3| {
        let (f1, f2) = f((z, w));
        (x * (f1 / z).powu(a) * (f2 / w).powu(b), f1, f2)
    };
    Ok((g, report))
}

/// Max commutation residual `|pi(f(p)) - g(pi(p))|` over seeded random
/// small points off the coordinate axes.
pub fn lift_commutation_residual(
    f: &dyn Fn(Point) -> Point,
    g: &dyn Fn(Point3) -> Point3,
    lift: &Lemma1Lift,
    samples: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let draw = |rng: &mut ChaCha8Rng| {
            let mag = rng.gen_range(1e-3..0.1);
            let arg = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(mag, arg)
        };
        let z = draw(&mut rng);
        let w = draw(&mut rng);
        let lhs = {
            let (f1, f2) = f((z, w));
            lift.projection(f1, f2)
        };
        let rhs = g(lift.projection(z, w));
        let dist = ((lhs.0 - rhs.0).norm_sqr()
            + (lhs.1 - rhs.1).norm_sqr()
            + (lhs.2 - rhs.2).norm_sqr())
        .sqrt();
        worst = worst.max(dist);
    }
    worst
}

fn principal_root(value: Complex64, degree: u32) -> Complex64 {
    if degree == 1 {
        value
    } else {
        value.powf(1.0 / degree as f64)
    }
}

fn ensure_point(a: Complex64, b: Complex64) -> Result<Point, DynError> {
    if a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite() {
        Ok((a, b))
    } else {
        Err(DynError::OutsideBranchDomain)
    }
}
