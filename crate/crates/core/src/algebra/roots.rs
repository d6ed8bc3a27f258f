use num_complex::Complex64;

use super::{AlgebraError, UniPoly};

const MAX_DK_ITERATIONS: usize = 2000;
const DK_STEP_TOL: f64 = 1e-14;

/// All roots of a nonzero polynomial, with multiplicities.
///
/// Simultaneous iteration (Durand-Kerner) on the monic normalization,
/// followed by clustering at relative tolerance `tol` and a Newton polish of
/// each cluster representative on the derivative matching its multiplicity.
/// The returned multiplicities sum to the degree; roots are sorted by
/// `(re, im)` so output order is deterministic.
pub fn roots_with_multiplicity(
    p: &UniPoly,
    tol: f64,
) -> Result<Vec<(Complex64, usize)>, AlgebraError> {
    let p = p.trim_negligible();
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    if deg == 0 {
        return Ok(Vec::new());
    }

    let lead = p.coeff(deg);
    let monic = UniPoly::new(p.coeffs().iter().map(|&c| c / lead).collect());

    let raw = durand_kerner(&monic)?;
    let mut clusters = cluster(&raw, tol);

    // Polish each cluster center: for multiplicity mu, the center is a
    // simple root of the (mu-1)-th derivative.
    for (center, mult) in clusters.iter_mut() {
        let mut q = monic.clone();
        for _ in 1..*mult {
            q = q.derivative();
        }
        *center = newton_polish(&q, *center);
    }

    // Polishing can collapse near-coincident clusters; merge again.
    let flattened: Vec<Complex64> = clusters
        .iter()
        .flat_map(|&(c, m)| std::iter::repeat_n(c, m))
        .collect();
    let mut merged = cluster(&flattened, tol);

    merged.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite roots")
    });
    debug_assert_eq!(merged.iter().map(|&(_, m)| m).sum::<usize>(), deg);
    Ok(merged)
}

fn durand_kerner(monic: &UniPoly) -> Result<Vec<Complex64>, AlgebraError> {
    let deg = monic.degree().unwrap();
    // Standard staggered initial guesses on a spiral.
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32 + 1)).collect();

    for _ in 0..MAX_DK_ITERATIONS {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let wi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &wj) in roots.iter().enumerate() {
                if j != i {
                    denom *= wi - wj;
                }
            }
            if denom == Complex64::ZERO {
                // Coincident iterates: nudge apart and retry next sweep.
                roots[i] += Complex64::new(1e-6, 1e-6);
                max_step = f64::MAX;
                continue;
            }
            let step = monic.eval(wi) / denom;
            roots[i] = wi - step;
            let scale = 1.0 + wi.norm();
            max_step = max_step.max(step.norm() / scale);
        }
        if max_step < DK_STEP_TOL {
            return Ok(roots);
        }
    }
    // Multiple roots stall the sweep at ~eps^(1/mu); accept the iterate if the
    // residual is already consistent with a root cluster, otherwise report
    // ill-conditioning.
    let residual_scale = 1.0 + monic.max_coeff_magnitude();
    let ok = roots
        .iter()
        .all(|&r| monic.eval(r).norm() <= 1e-6 * residual_scale * (1.0 + r.norm()).powi(monic.degree().unwrap() as i32));
    if ok {
        Ok(roots)
    } else {
        Err(AlgebraError::RootsNotConverged {
            iterations: MAX_DK_ITERATIONS,
        })
    }
}

/// Greedy merge of points within relative distance `tol` of a cluster seed.
fn cluster(points: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut remaining: Vec<Complex64> = points.to_vec();
    remaining.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    while let Some(seed) = remaining.first().copied() {
        let radius = tol * (1.0 + seed.norm());
        let (near, far): (Vec<_>, Vec<_>) = remaining
            .iter()
            .partition(|&&x| (x - seed).norm() <= radius);
        let mult = near.len();
        let mean = near.iter().copied().sum::<Complex64>() / mult as f64;
        out.push((mean, mult));
        remaining = far;
    }
    out
}

fn newton_polish(q: &UniPoly, start: Complex64) -> Complex64 {
    let dq = q.derivative();
    let mut x = start;
    for _ in 0..40 {
        let d = dq.eval(x);
        if d.norm() < 1e-300 {
            break;
        }
        let step = q.eval(x) / d;
        let next = x - step;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        x = next;
        if step.norm() <= 1e-16 * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn re(x: f64) -> C {
        C::new(x, 0.0)
    }

    const TOL: f64 = 1e-8;

    #[test]
    fn factored_cubic() {
        // u - u^3 = u (1 - u)(1 + u)
        let p = UniPoly::new(vec![re(0.0), re(1.0), re(0.0), re(-1.0)]);
        let roots = roots_with_multiplicity(&p, TOL).unwrap();
        assert_eq!(roots.len(), 3);
        let expected = [re(-1.0), re(0.0), re(1.0)];
        for ((root, mult), want) in roots.iter().zip(expected) {
            assert_eq!(*mult, 1);
            assert!((root - want).norm() < 1e-10);
        }
    }

    #[test]
    fn double_root_at_zero() {
        // (1/3) u^2
        let p = UniPoly::new(vec![re(0.0), re(0.0), re(1.0 / 3.0)]);
        let roots = roots_with_multiplicity(&p, TOL).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 2);
        assert!(roots[0].0.norm() < 1e-9);
    }

    #[test]
    fn cube_roots_of_unity_match_companion_eigenvalues() {
        // Oracle: eigenvalues of the companion matrix of u^3 - 1.
        let companion = nalgebra::Matrix3::new(
            0.0, 0.0, 1.0, //
            1.0, 0.0, 0.0, //
            0.0, 1.0, 0.0,
        );
        let mut oracle: Vec<C> = companion
            .complex_eigenvalues()
            .iter()
            .map(|e| C::new(e.re, e.im))
            .collect();
        oracle.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

        let p = UniPoly::new(vec![re(-1.0), re(0.0), re(0.0), re(1.0)]);
        let roots = roots_with_multiplicity(&p, TOL).unwrap();
        assert_eq!(roots.len(), 3);
        for ((root, mult), want) in roots.iter().zip(oracle) {
            assert_eq!(*mult, 1);
            assert!((root - want).norm() < 1e-9, "{root} vs {want}");
        }
    }

    #[test]
    fn repeated_off_origin_root_is_merged() {
        // (u - 1)^2 (u + 2)
        let p = UniPoly::new(vec![re(2.0), re(-3.0), re(0.0), re(1.0)]);
        let roots = roots_with_multiplicity(&p, 1e-7).unwrap();
        assert_eq!(roots.iter().map(|&(_, m)| m).sum::<usize>(), 3);
        let double = roots
            .iter()
            .find(|(r, _)| (r - re(1.0)).norm() < 1e-5)
            .expect("root near 1");
        assert_eq!(double.1, 2);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(matches!(
            roots_with_multiplicity(&UniPoly::zero(), TOL),
            Err(AlgebraError::ZeroPolynomial)
        ));
    }
}
