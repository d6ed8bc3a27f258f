//! Ready-made germs used across tests, benchmarks, and the CLI docs, plus
//! seeded random-germ generators for property checks.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{BiPoly, Chart};
use crate::germ::Germ;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn bp(terms: &[(u32, u32, Complex64)]) -> BiPoly {
    BiPoly::from_terms(terms.iter().map(|&(i, j, c)| ((i, j), c)))
}

/// `(z - z^2, w - w^2)`: three nondegenerate Fuchsian directions, with an
/// attracting basin along `[1:1]` and none along `[1:0]`, `[0:1]`.
pub fn quadratic_diagonal() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (2, 0, re(-1.0))]),
        bp(&[(0, 1, re(1.0)), (0, 2, re(-1.0))]),
    )
    .unwrap()
}

/// `(z + zw, w + (4/3) w^2)`: degenerate Fuchsian direction at `[1:0]` with
/// `(m, n) = (1, 2)` and residual index 3.
pub fn degenerate_fuchsian() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (1, 1, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (0, 2, re(4.0 / 3.0))]),
    )
    .unwrap()
}

/// `(z + zw, w + (4/3) w^2 + alpha z^3)`: same leading pair as
/// [`degenerate_fuchsian`], with a cubic term that lands in the pure-`z`
/// slot of the blow-up's second component, making the direction regular
/// for `alpha != 0`.
pub fn degenerate_fuchsian_regular(alpha: Complex64) -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (1, 1, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (0, 2, re(4.0 / 3.0)), (3, 0, alpha)]),
    )
    .unwrap()
}

/// `(z + z^2, w + zw + c w^2)`: irregular direction at `[1:0]` with
/// `(m, n) = (0, 2)` for any `c != 0`.
pub fn irregular_m0(c: f64) -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (2, 0, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (1, 1, re(1.0)), (0, 2, re(c))]),
    )
    .unwrap()
}

/// `(z + zw, w + 2zw)`: apparent direction at `[1:0]` with `(m, n) = (1, 1)`.
pub fn apparent_m1() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (1, 1, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (1, 1, re(2.0))]),
    )
    .unwrap()
}

/// `(z + z^2, w + zw)`: `P_2 = z (z, w)`, so `r` vanishes identically and
/// the origin is dicritical.
pub fn dicritical() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (2, 0, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (1, 1, re(1.0))]),
    )
    .unwrap()
}

/// `(z + w^2, w + (z + w^2)^2)`: `r(u) = 1 - u^3`, three nondegenerate
/// directions at the cube roots of unity.
pub fn cube_roots() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (0, 2, re(1.0))]),
        bp(&[
            (0, 1, re(1.0)),
            (2, 0, re(1.0)),
            (1, 2, re(2.0)),
            (0, 4, re(1.0)),
        ]),
    )
    .unwrap()
}

/// `(z - z^2, w - zw - w^2)`: irregular `(m, n) = (0, 2)` at `[1:0]` with
/// the leading coefficients already normalized to `a_0 = c_2 = -1`.
pub fn irregular_b1() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (2, 0, re(-1.0))]),
        bp(&[(0, 1, re(1.0)), (1, 1, re(-1.0)), (0, 2, re(-1.0))]),
    )
    .unwrap()
}

/// `(z - zw + w^2, w - w^2)`: irregular `(m, n) = (1, 3)` at `[1:0]`,
/// normalized to `a_1 = c_3 = -1`.
pub fn irregular_b2() -> Germ {
    Germ::validate(
        bp(&[(1, 0, re(1.0)), (1, 1, re(-1.0)), (0, 2, re(1.0))]),
        bp(&[(0, 1, re(1.0)), (0, 2, re(-1.0))]),
    )
    .unwrap()
}

fn random_coeff<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_homogeneous<R: Rng>(rng: &mut R, degree: u32, density: f64) -> BiPoly {
    let mut p = BiPoly::zero();
    for i in 0..=degree {
        if rng.gen_bool(density) {
            p.add_term(i, degree - i, random_coeff(rng));
        }
    }
    p
}

/// A random valid germ of exact order `k` with homogeneous parts up to
/// `max_degree`, guaranteed non-dicritical.
pub fn random_nondicritical<R: Rng>(rng: &mut R, k: u32, max_degree: u32) -> Germ {
    loop {
        let mut f1 = BiPoly::monomial(1, 0, re(1.0));
        let mut f2 = BiPoly::monomial(0, 1, re(1.0));
        for d in k..=max_degree.max(k) {
            f1 = f1.add(&random_homogeneous(rng, d, 0.8));
            f2 = f2.add(&random_homogeneous(rng, d, 0.8));
        }
        let Ok(germ) = Germ::validate(f1, f2) else {
            continue;
        };
        if germ.order() != k {
            continue;
        }
        let (_, _, r) = germ.direction_polynomials(Chart::U);
        if r.is_negligible() {
            continue;
        }
        return germ;
    }
}

/// Like [`random_nondicritical`], additionally requiring the zeros of `r` to
/// be pairwise separated by at least `min_separation` and of moderate size.
/// Keeps residue comparisons against contour quadrature well-conditioned.
pub fn random_well_separated<R: Rng>(rng: &mut R, k: u32, min_separation: f64) -> Germ {
    loop {
        let germ = random_nondicritical(rng, k, k);
        let (_, _, r) = germ.direction_polynomials(Chart::U);
        let Ok(roots) = crate::algebra::roots_with_multiplicity(
            &r.trim_negligible(),
            crate::directions::ROOT_CLUSTER_TOL,
        ) else {
            continue;
        };
        if roots.iter().any(|(root, _)| root.norm() > 20.0) {
            continue;
        }
        let mut ok = true;
        for (i, (a, _)) in roots.iter().enumerate() {
            for (b, _) in roots.iter().skip(i + 1) {
                if (a - b).norm() < min_separation {
                    ok = false;
                }
            }
        }
        if ok {
            return germ;
        }
    }
}

/// A random order-2 germ with an apparent direction `(m, n) = (1, 1)` at
/// `[1:0]`: `a_0 = b_0 = 0`, while `a_1` (giving `m = 1`) and `b_1` (giving
/// `n = 1`) are sampled with magnitude in `[0.5, 1.5]` so they stay nonzero.
pub fn random_apparent_at_origin<R: Rng>(rng: &mut R) -> Germ {
    let unit = |rng: &mut R| {
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let mag = rng.gen_range(0.5..1.5);
        Complex64::new(phase.cos(), phase.sin()) * mag
    };
    loop {
        let a1 = unit(rng);
        let a2 = random_coeff(rng);
        let b1 = unit(rng);
        let b2 = random_coeff(rng);
        let f1 = bp(&[(1, 0, re(1.0)), (1, 1, a1), (0, 2, a2)]);
        let f2 = bp(&[(0, 1, re(1.0)), (1, 1, b1), (0, 2, b2)]);
        let Ok(germ) = Germ::validate(f1, f2) else {
            continue;
        };
        // n = 1 at the origin needs b_1 != 0, which `unit` guarantees.
        let (m, n) = match crate::directions::vanishing_orders(&germ, Chart::U, Complex64::ZERO) {
            Ok(orders) => orders,
            Err(_) => continue,
        };
        if m == Some(1) && n == 1 {
            return germ;
        }
    }
}

/// A random invertible 2x2 matrix with determinant bounded away from zero.
pub fn random_invertible<R: Rng>(rng: &mut R) -> [[Complex64; 2]; 2] {
    loop {
        let l = [
            [random_coeff(rng), random_coeff(rng)],
            [random_coeff(rng), random_coeff(rng)],
        ];
        let det = l[0][0] * l[1][1] - l[0][1] * l[1][0];
        if det.norm() > 0.3 {
            return l;
        }
    }
}
