//! Property tests for the polynomial substrate.

use num_complex::Complex64;
use parabasin_core::algebra::{roots_with_multiplicity, BiPoly, Chart, UniPoly};
use proptest::prelude::*;

fn arb_coeff() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec(((0u32..5, 0u32..5), arb_coeff()), 0..12)
        .prop_map(BiPoly::from_terms)
}

proptest! {
    #[test]
    fn homogeneous_parts_reassemble_exactly(p in arb_bipoly()) {
        let mut sum = BiPoly::zero();
        let parts = p.homogeneous_parts();
        for (d, part) in &parts {
            prop_assert!(part.is_homogeneous());
            prop_assert_eq!(part.degree(), Some(*d));
            sum = sum.add(part);
        }
        // Coefficientwise exact: grouping never touches the values.
        prop_assert_eq!(sum, p);
        let mut degrees: Vec<u32> = parts.iter().map(|(d, _)| *d).collect();
        degrees.dedup();
        prop_assert_eq!(degrees.len(), parts.len());
    }

    #[test]
    fn root_multiplicities_sum_to_degree(coeffs in proptest::collection::vec(arb_coeff(), 1..8)) {
        let p = UniPoly::new(coeffs);
        prop_assume!(!p.trim_negligible().is_zero());
        let deg = p.trim_negligible().degree().unwrap();
        let roots = roots_with_multiplicity(&p, 1e-8).unwrap();
        prop_assert_eq!(roots.iter().map(|&(_, m)| m).sum::<usize>(), deg);
    }

    #[test]
    fn roots_have_small_residuals(coeffs in proptest::collection::vec(arb_coeff(), 2..7)) {
        let p = UniPoly::new(coeffs);
        let trimmed = p.trim_negligible();
        prop_assume!(trimmed.degree().is_some_and(|d| d >= 1));
        // Skip badly scaled inputs where the leading coefficient is tiny
        // relative to the rest; the monic normalization would blow up.
        let lead = trimmed.coeff(trimmed.degree().unwrap()).norm();
        prop_assume!(lead > 1e-3 * trimmed.max_coeff_magnitude());
        for (root, _) in roots_with_multiplicity(&trimmed, 1e-8).unwrap() {
            let residual = trimmed.eval(root).norm();
            let scale = trimmed.max_coeff_magnitude() * (1.0 + root.norm()).powi(trimmed.degree().unwrap() as i32);
            prop_assert!(residual <= 1e-6 * scale, "residual {residual} at {root}");
        }
    }

    #[test]
    fn restriction_degree_bound(p in arb_bipoly(), chart_u in any::<bool>()) {
        let chart = if chart_u { Chart::U } else { Chart::V };
        for (d, part) in p.homogeneous_parts() {
            let restricted = part.restrict_chart(chart).unwrap();
            let deg = restricted.degree();
            prop_assert!(deg.is_none_or(|r| r as u32 <= d));
            // Equality holds exactly when the opposite-vertex monomial
            // (w^d in chart U, z^d in chart V) carries a nonzero coefficient.
            let vertex = match chart {
                Chart::U => part.coeff(0, d),
                Chart::V => part.coeff(d, 0),
            };
            prop_assert_eq!(deg == Some(d as usize), vertex != Complex64::ZERO);
        }
    }

    #[test]
    fn swap_vars_is_an_involution(p in arb_bipoly()) {
        prop_assert_eq!(p.swap_vars().swap_vars(), p);
    }
}
