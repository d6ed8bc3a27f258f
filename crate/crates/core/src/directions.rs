//! Characteristic directions: enumeration with multiplicity, vanishing
//! orders, and the Fuchsian / irregular / apparent trichotomy.
//!
//! A projective direction `[v]` is characteristic when `P_k(v)` is parallel
//! to `v`; in chart `U` these are the zeros of `r(u) = q_k(1,u) - u p_k(1,u)`.
//! With `m` the vanishing order of `p_k(1,u)` at the direction and `n` that
//! of `r`, the class is Fuchsian for `1+m = n`, irregular for `1+m < n`, and
//! apparent for `1+m > n` (or `m` infinite).

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{self, roots_with_multiplicity, AlgebraError, Chart};
use crate::germ::Germ;

/// Relative tolerance for clustering coincident roots of `r`.
///
/// A root of multiplicity `mu` splits by roughly `eps^(1/mu)` under relative
/// coefficient noise `eps`; with `eps ~ 1e-15` from a floating-point
/// conjugation that is `3e-8` for double and `2e-4` for quadruple roots.
/// The tolerance sits above that splitting scale and two orders below any
/// genuine root separation the analyses rely on. The cluster center is
/// subsequently Newton-polished on the derivative matching the multiplicity,
/// which restores the multiple root to machine accuracy.
pub const ROOT_CLUSTER_TOL: f64 = 5e-4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DirectionError {
    #[error("direction is not characteristic for the germ")]
    DirectionNotCharacteristic,
    #[error("germ is dicritical: every direction is characteristic")]
    Dicritical,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DirectionClass {
    Fuchsian,
    Irregular,
    Apparent,
}

impl std::fmt::Display for DirectionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DirectionClass::Fuchsian => write!(f, "Fuchsian"),
            DirectionClass::Irregular => write!(f, "Irregular"),
            DirectionClass::Apparent => write!(f, "Apparent"),
        }
    }
}

/// A characteristic direction with its classification data.
///
/// The direction is `[1 : u0]` when `chart` is `U` and `[u0 : 1]` when
/// `chart` is `V`; the direction `[0:1]` is always reported as the chart-`V`
/// entry at `u0 = 0`. `m` is `None` when `p_k` restricted to the chart
/// vanishes identically (the `m = infinity` case).
#[derive(Debug, Clone, PartialEq)]
pub struct CharDirection {
    pub chart: Chart,
    pub u0: Complex64,
    pub multiplicity: usize,
    pub lambda: Complex64,
    pub degenerate: bool,
    pub m: Option<u32>,
    pub n: u32,
    pub class: DirectionClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionReport {
    pub dicritical: bool,
    pub directions: Vec<CharDirection>,
}

/// Classifies from the vanishing orders; `m = None` means infinite.
pub fn classify(m: Option<u32>, n: u32) -> DirectionClass {
    match m {
        None => DirectionClass::Apparent,
        Some(m) => match (m + 1).cmp(&n) {
            std::cmp::Ordering::Equal => DirectionClass::Fuchsian,
            std::cmp::Ordering::Less => DirectionClass::Irregular,
            std::cmp::Ordering::Greater => DirectionClass::Apparent,
        },
    }
}

/// Vanishing orders `(m, n)` of `p_k(1,u)` and `r(u)` at a characteristic
/// direction, computed on the exactly recentered polynomials with the
/// scale-aware zero threshold.
pub fn vanishing_orders(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
) -> Result<(Option<u32>, u32), DirectionError> {
    let shifted = shifted_to_origin(f, chart, u0);
    let (p, _, r) = shifted.direction_polynomials(Chart::U);
    if r.is_negligible() {
        return Err(DirectionError::Dicritical);
    }
    let n = r
        .vanishing_order(algebra::zero_tol(r.max_coeff_magnitude()))
        .expect("non-negligible polynomial has a supported coefficient");
    if n == 0 {
        return Err(DirectionError::DirectionNotCharacteristic);
    }
    let m = if p.is_negligible() {
        None
    } else {
        p.vanishing_order(algebra::zero_tol(p.max_coeff_magnitude()))
            .map(|m| m as u32)
    };
    Ok((m, n as u32))
}

/// The germ conjugated so the given direction sits at the origin of chart
/// `U` (for chart `V` input the coordinates are swapped first).
pub fn shifted_to_origin(f: &Germ, chart: Chart, u0: Complex64) -> Germ {
    match chart {
        Chart::U => f.shift_direction(u0),
        Chart::V => f.swapped().shift_direction(u0),
    }
}

/// Full analysis of one direction (assumed characteristic).
pub fn analyze_direction(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
    multiplicity: usize,
) -> Result<CharDirection, DirectionError> {
    let (m, n) = vanishing_orders(f, chart, u0)?;
    let (p, _, _) = f.direction_polynomials(chart);
    let lambda = p.eval(u0);
    Ok(CharDirection {
        chart,
        u0,
        multiplicity,
        lambda,
        degenerate: m != Some(0),
        m,
        n,
        class: classify(m, n),
    })
}

/// Enumerates all characteristic directions with multiplicity.
///
/// Finite directions are the zeros of `r(u)` in chart `U`. The direction
/// `[0:1]` is characteristic exactly when `deg r < k + 1`; it enters with
/// multiplicity `(k+1) - deg r` and is analyzed in chart `V`. For a
/// non-dicritical germ the multiplicities always total `k + 1`.
pub fn characteristic_directions(f: &Germ) -> Result<DirectionReport, DirectionError> {
    let (_, _, r) = f.direction_polynomials(Chart::U);
    if r.is_negligible() {
        return Ok(DirectionReport {
            dicritical: true,
            directions: Vec::new(),
        });
    }
    let r = r.trim_negligible();
    let k = f.order() as usize;

    let mut directions = Vec::new();
    for (root, mult) in roots_with_multiplicity(&r, ROOT_CLUSTER_TOL)? {
        directions.push(analyze_direction(f, Chart::U, root, mult)?);
    }

    let deg_r = r.degree().expect("trimmed nonzero");
    if deg_r < k + 1 {
        directions.push(analyze_direction(f, Chart::V, Complex64::ZERO, k + 1 - deg_r)?);
    }

    directions.sort_by(|a, b| {
        (a.chart, a.u0.re, a.u0.im)
            .partial_cmp(&(b.chart, b.u0.re, b.u0.im))
            .expect("finite direction coordinates")
    });
    debug_assert_eq!(
        directions.iter().map(|d| d.multiplicity).sum::<usize>(),
        k + 1
    );
    Ok(DirectionReport {
        dicritical: false,
        directions,
    })
}
