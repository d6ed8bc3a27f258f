use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DynError, Point};

/// The sector region `V_{R,N,theta}`:
/// `Re(x) > R`, `|Arg(x)| < theta`, `Re(y) > R`, `|y|^N < |x|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorRegion {
    pub r: f64,
    pub n: f64,
    pub theta: f64,
}

impl SectorRegion {
    pub fn new(r: f64, n: f64, theta: f64) -> Self {
        assert!(r > 0.0 && n > 1.0 && theta > 0.0 && theta < std::f64::consts::FRAC_PI_4);
        Self { r, n, theta }
    }

    pub fn contains(&self, x: Complex64, y: Complex64) -> bool {
        x.re > self.r
            && x.arg().abs() < self.theta
            && y.re > self.r
            && y.norm().powf(self.n) < x.norm()
    }

    /// Signed distance-like margin to the nearest constraint; positive
    /// inside, non-positive outside.
    pub fn margin(&self, x: Complex64, y: Complex64) -> f64 {
        let m1 = x.re - self.r;
        let m2 = self.theta - x.arg().abs();
        let m3 = y.re - self.r;
        let m4 = x.norm() - y.norm().powf(self.n);
        m1.min(m2).min(m3).min(m4)
    }

    /// Draws a point of a bounded patch of the region: `y` from a box just
    /// above the `Re > R` line, then `x` in the sector with `|x|` above both
    /// `|y|^N` and a fixed multiple of `R`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Point {
        loop {
            let y = Complex64::new(
                rng.gen_range(self.r * 1.001..self.r * 2.0),
                rng.gen_range(-self.r * 0.5..self.r * 0.5),
            );
            let floor = y.norm().powf(self.n).max(2.0 * self.r);
            let t = rng.gen_range(1.1..3.0);
            let phi = rng.gen_range(-0.9 * self.theta..0.9 * self.theta);
            let x = Complex64::from_polar(t * floor, phi);
            if self.contains(x, y) {
                return (x, y);
            }
        }
    }
}

/// Declared decay exponents of a near-translation normal form: the error
/// terms are expected to obey
/// `|x1 - x - 1|    <= C (|x|^-a + |y|^-b)` and
/// `|y1 - y - 1/x|  <= C (|y|^c / |x|^d + 1 / (|x| |y|^e))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayExponents {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
}

impl DecayExponents {
    /// The shape constraints under which sector invariance is guaranteed.
    pub fn satisfies_hypothesis(&self) -> bool {
        self.a > 0.0 && self.b > 0.0 && self.c > 0.0 && self.d > 1.0 && self.e > 0.0
    }
}

/// A map close to `(x, y) -> (x + 1, y + 1/x)` together with its declared
/// error-decay exponents.
pub struct NormalFormMap {
    eval: Box<dyn Fn(Point) -> Point + Sync>,
    pub exponents: DecayExponents,
}

impl NormalFormMap {
    pub fn new(eval: Box<dyn Fn(Point) -> Point + Sync>, exponents: DecayExponents) -> Self {
        Self { eval, exponents }
    }

    pub fn eval(&self, p: Point) -> Point {
        (self.eval)(p)
    }

    /// Error terms `eta1 = x1 - x - 1` and `eta2 = y1 - y - 1/x`.
    pub fn residuals(&self, p: Point) -> (Complex64, Complex64) {
        let (x, y) = p;
        let (x1, y1) = self.eval(p);
        (x1 - x - 1.0, y1 - y - 1.0 / x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub samples: usize,
    pub violations: usize,
    /// Smallest post-image margin seen; negative values measure how far the
    /// worst violator left the region.
    pub worst_margin: f64,
    pub eta1_max: f64,
    /// max of |x * eta2|, the scale on which the invariance proof needs
    /// eta2 to be small.
    pub eta2_scaled_max: f64,
}

/// One application of `eval` to each of `samples` seeded region points,
/// counting how many images leave the region. No hypothesis gating.
pub fn count_region_exits(
    eval: &dyn Fn(Point) -> Point,
    v: &SectorRegion,
    samples: usize,
    seed: u64,
) -> InvarianceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0usize;
    let mut worst = f64::INFINITY;
    let mut eta1_max = 0.0f64;
    let mut eta2_scaled_max = 0.0f64;
    for _ in 0..samples {
        let (x, y) = v.sample(&mut rng);
        let (x1, y1) = eval((x, y));
        let margin = v.margin(x1, y1);
        worst = worst.min(margin);
        if !(x1.re.is_finite() && y1.re.is_finite()) || !v.contains(x1, y1) {
            violations += 1;
        }
        eta1_max = eta1_max.max((x1 - x - 1.0).norm());
        eta2_scaled_max = eta2_scaled_max.max((x * (y1 - y - 1.0 / x)).norm());
    }
    InvarianceReport {
        samples,
        violations,
        worst_margin: worst,
        eta1_max,
        eta2_scaled_max,
    }
}

/// Region-invariance check with the hypothesis gates of the invariance
/// proof run first: the declared exponent shape must be admissible and the
/// error terms must empirically satisfy `|eta1| < 1/10` and
/// `|eta2| < 1/(10 |x|)` on the sampled patch.
pub fn check_v_invariance(
    map: &NormalFormMap,
    v: &SectorRegion,
    samples: usize,
    seed: u64,
) -> Result<InvarianceReport, DynError> {
    if !map.exponents.satisfies_hypothesis() {
        return Err(DynError::WrongCase(format!(
            "declared exponents {:?} violate the decay-shape requirements",
            map.exponents
        )));
    }
    let report = count_region_exits(&|p| map.eval(p), v, samples, seed);
    if report.eta1_max >= 0.1 || report.eta2_scaled_max >= 0.1 {
        return Err(DynError::HypothesisNotMet {
            eta1_max: report.eta1_max,
            eta2_rel_max: report.eta2_scaled_max,
        });
    }
    Ok(report)
}

/// Fits the smallest constants `C1`, `C2` for which the declared bound
/// shapes dominate the sampled residuals. Reported, never assumed.
pub fn fit_error_constant(
    map: &NormalFormMap,
    v: &SectorRegion,
    samples: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ex = map.exponents;
    let mut c1 = 0.0f64;
    let mut c2 = 0.0f64;
    for _ in 0..samples {
        let (x, y) = v.sample(&mut rng);
        let (eta1, eta2) = map.residuals((x, y));
        let bound1 = x.norm().powf(-ex.a) + y.norm().powf(-ex.b);
        let bound2 = y.norm().powf(ex.c) / x.norm().powf(ex.d)
            + 1.0 / (x.norm() * y.norm().powf(ex.e));
        c1 = c1.max(eta1.norm() / bound1);
        c2 = c2.max(eta2.norm() / bound2);
    }
    (c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn membership_is_strict() {
        let v = SectorRegion::new(5.0, 2.0, 0.5);
        // |y|^N = 100 is not strictly below |x| = 100.
        assert!(!v.contains(C::new(100.0, 0.0), C::new(10.0, 0.0)));
        assert!(v.contains(C::new(101.0, 0.0), C::new(10.0, 0.0)));
        // Argument bound.
        let x = C::from_polar(100.0, 0.55);
        assert!(!v.contains(x, C::new(10.0, 0.0)));
    }

    #[test]
    fn sampled_points_lie_in_the_region() {
        let v = SectorRegion::new(50.0, 2.0, std::f64::consts::FRAC_PI_8);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let (x, y) = v.sample(&mut rng);
            assert!(v.contains(x, y));
        }
    }

    #[test]
    fn exact_model_map_never_exits() {
        let v = SectorRegion::new(5.0, 2.0, std::f64::consts::FRAC_PI_8);
        let map = NormalFormMap::new(
            Box::new(|(x, y)| (x + 1.0, y + 1.0 / x)),
            DecayExponents {
                a: 2.0,
                b: 2.0,
                c: 1.0,
                d: 2.0,
                e: 1.0,
            },
        );
        let report = check_v_invariance(&map, &v, 10_000, 42).unwrap();
        assert_eq!(report.violations, 0, "worst margin {}", report.worst_margin);
    }

    #[test]
    fn broken_map_exits_are_counted() {
        // (x + 1, y - 1) drags Re(y) below R for seeds near the lower edge.
        let v = SectorRegion::new(5.0, 2.0, std::f64::consts::FRAC_PI_8);
        let report = count_region_exits(&|(x, y)| (x + 1.0, y - 1.0), &v, 10_000, 42);
        assert!(report.violations > 0);
    }

    #[test]
    fn broken_map_fails_the_hypothesis_gate() {
        let v = SectorRegion::new(5.0, 2.0, std::f64::consts::FRAC_PI_8);
        let map = NormalFormMap::new(
            Box::new(|(x, y)| (x + 1.0, y - 1.0)),
            DecayExponents {
                a: 1.0,
                b: 1.0,
                c: 1.0,
                d: 2.0,
                e: 1.0,
            },
        );
        assert!(matches!(
            check_v_invariance(&map, &v, 1000, 42),
            Err(DynError::HypothesisNotMet { .. })
        ));
    }
}
