//! Basin-existence criteria and the per-direction verdict.
//!
//! Geometry lives in the index plane. For a degenerate Fuchsian direction
//! with orders `(m, m+1)` of a germ of order `k`, region `R` is the open
//! half-plane `Re(zeta) > -m/(k-1)` minus the closed disc with center
//! `(m+1 - m/(k-1))/2` and radius `(m+1 + m/(k-1))/2` (the circle meets the
//! real axis at `-m/(k-1)` and `m+1`). Region `S`, used for regular
//! directions, is the open disc `|zeta - 1/(2(m+1))| < 1/(2(m+1))`. Both
//! criteria and the cone condition of the three-variable lift are open
//! conditions, so values within `BOUNDARY_TOL` of a boundary are reported
//! separately instead of being claimed either way.

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::Chart;
use crate::directions::{
    characteristic_directions, vanishing_orders, CharDirection, DirectionClass, DirectionError,
};
use crate::germ::Germ;
use crate::indices::{abate_index, hakim_index, rho_regularity, IndexError};

/// Distance at which a strict inequality is considered undecidable.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CriteriaError {
    #[error("direction is not characteristic")]
    DirectionNotCharacteristic,
    #[error("denominator d must be nonzero")]
    ZeroDenominator,
    #[error(transparent)]
    Index(#[from] IndexError),
}

impl From<DirectionError> for CriteriaError {
    fn from(e: DirectionError) -> Self {
        CriteriaError::Index(e.into())
    }
}

/// Outcome of testing a point against an open region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionTest {
    Inside,
    Outside,
    Boundary,
}

/// Region `R` for a degenerate Fuchsian direction with orders `(m, m+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionR {
    pub m: u32,
    pub k: u32,
}

impl RegionR {
    pub fn new(m: u32, k: u32) -> Self {
        assert!(k >= 2, "the germ order is at least 2");
        Self { m, k }
    }

    pub fn half_plane_bound(&self) -> f64 {
        -(self.m as f64) / (self.k as f64 - 1.0)
    }

    pub fn circle_center(&self) -> f64 {
        (self.m as f64 + 1.0 + self.half_plane_bound()) / 2.0
    }

    pub fn circle_radius(&self) -> f64 {
        (self.m as f64 + 1.0 - self.half_plane_bound()) / 2.0
    }

    pub fn test(&self, zeta: Complex64) -> RegionTest {
        let hp = zeta.re - self.half_plane_bound();
        let circ = (zeta - Complex64::new(self.circle_center(), 0.0)).norm() - self.circle_radius();
        if hp.abs() < BOUNDARY_TOL || circ.abs() < BOUNDARY_TOL {
            RegionTest::Boundary
        } else if hp > 0.0 && circ > 0.0 {
            RegionTest::Inside
        } else {
            RegionTest::Outside
        }
    }
}

/// Strict membership in `R`.
pub fn in_region_r(zeta: Complex64, m: u32, k: u32) -> bool {
    RegionR::new(m, k).test(zeta) == RegionTest::Inside
}

/// Region `S`: the open disc tangent to the imaginary axis with real
/// diameter `(0, 1/(m+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionS {
    pub m: u32,
}

impl RegionS {
    pub fn new(m: u32) -> Self {
        Self { m }
    }

    pub fn center(&self) -> f64 {
        0.5 / (self.m as f64 + 1.0)
    }

    pub fn radius(&self) -> f64 {
        0.5 / (self.m as f64 + 1.0)
    }

    pub fn test(&self, zeta: Complex64) -> RegionTest {
        let d = (zeta - Complex64::new(self.center(), 0.0)).norm() - self.radius();
        if d.abs() < BOUNDARY_TOL {
            RegionTest::Boundary
        } else if d < 0.0 {
            RegionTest::Inside
        } else {
            RegionTest::Outside
        }
    }
}

/// Strict membership in `S`.
pub fn in_region_s(zeta: Complex64, m: u32) -> bool {
    RegionS::new(m).test(zeta) == RegionTest::Inside
}

/// Cone condition of the three-variable lift:
/// `Re(c/d) > -b/a` and `|c/d + b/(2a)| > b/(2a)`.
/// For `b = 0` this reduces to `Re(c/d) > 0`.
pub fn lemma1_condition(
    c: Complex64,
    d: Complex64,
    a: u32,
    b: u32,
) -> Result<bool, CriteriaError> {
    assert!(a >= 1);
    if d.norm() == 0.0 {
        return Err(CriteriaError::ZeroDenominator);
    }
    let ratio = c / d;
    let shift = b as f64 / (2.0 * a as f64);
    let half_plane = ratio.re > -(b as f64) / a as f64;
    let circle = (ratio + Complex64::new(shift, 0.0)).norm() > shift;
    Ok(half_plane && circle)
}

/// True when every eigenvalue has positive real part.
pub fn eigenvalue_condition(alphas: &[Complex64]) -> bool {
    assert!(!alphas.is_empty());
    alphas.iter().all(|a| a.re > 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    BasinExists,
    NoBasinAlongDirection,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Justification {
    HakimTheorem,
    Theorem1Irregular,
    Theorem2FuchsianR,
    RegularCaseS,
    NegativeHakimRemark,
    ApparentUndecided,
    DicriticalOutOfScope,
    BoundaryInconclusive,
}

/// Per-direction basin conclusion, the criterion that produced it, and the
/// index value that was tested.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub justification: Justification,
    pub tested_value: Complex64,
}

/// Evaluates every applicable criterion at one characteristic direction.
///
/// Decision order: dicritical germs are out of scope; nondegenerate
/// directions with a simple `r`-zero go through the Hakim half-plane (with
/// the negative case citing the no-basin remark); irregular directions have
/// a basin unconditionally; degenerate Fuchsian directions are tested
/// against `R`, then, if regular, against `S`; apparent directions are
/// undecided at this order.
pub fn verdict(f: &Germ, chart: Chart, u0: Complex64) -> Result<Verdict, CriteriaError> {
    let report = characteristic_directions(f)?;
    if report.dicritical {
        return Ok(Verdict {
            conclusion: Conclusion::Unknown,
            justification: Justification::DicriticalOutOfScope,
            tested_value: Complex64::ZERO,
        });
    }
    let (m, n) = vanishing_orders(f, chart, u0).map_err(|e| match e {
        DirectionError::DirectionNotCharacteristic => CriteriaError::DirectionNotCharacteristic,
        other => other.into(),
    })?;
    let class = crate::directions::classify(m, n);
    verdict_for_class(f, chart, u0, m, class)
}

/// Verdict for a direction already analyzed by [`characteristic_directions`].
pub fn verdict_for(f: &Germ, dir: &CharDirection) -> Result<Verdict, CriteriaError> {
    verdict_for_class(f, dir.chart, dir.u0, dir.m, dir.class)
}

fn verdict_for_class(
    f: &Germ,
    chart: Chart,
    u0: Complex64,
    m: Option<u32>,
    class: DirectionClass,
) -> Result<Verdict, CriteriaError> {
    let k = f.order();
    match class {
        DirectionClass::Fuchsian if m == Some(0) => {
            let hakim = hakim_index(f, chart, u0)?;
            let (conclusion, justification) = if hakim.re > BOUNDARY_TOL {
                (Conclusion::BasinExists, Justification::HakimTheorem)
            } else if hakim.re < -BOUNDARY_TOL {
                (
                    Conclusion::NoBasinAlongDirection,
                    Justification::NegativeHakimRemark,
                )
            } else {
                (Conclusion::Unknown, Justification::BoundaryInconclusive)
            };
            Ok(Verdict {
                conclusion,
                justification,
                tested_value: hakim,
            })
        }
        DirectionClass::Irregular => {
            // No index condition: the basin exists for every irregular
            // direction. The index is still reported as the tested value.
            let ind = abate_index(f, chart, u0)?;
            Ok(Verdict {
                conclusion: Conclusion::BasinExists,
                justification: Justification::Theorem1Irregular,
                tested_value: ind,
            })
        }
        DirectionClass::Fuchsian => {
            let ind = abate_index(f, chart, u0)?;
            let m = m.expect("degenerate Fuchsian has finite m");
            match RegionR::new(m, k).test(ind) {
                RegionTest::Inside => Ok(Verdict {
                    conclusion: Conclusion::BasinExists,
                    justification: Justification::Theorem2FuchsianR,
                    tested_value: ind,
                }),
                RegionTest::Boundary => Ok(Verdict {
                    conclusion: Conclusion::Unknown,
                    justification: Justification::BoundaryInconclusive,
                    tested_value: ind,
                }),
                RegionTest::Outside => {
                    let (_, regular) = rho_regularity(f, chart, u0)?;
                    if regular {
                        match RegionS::new(m).test(ind) {
                            RegionTest::Inside => {
                                return Ok(Verdict {
                                    conclusion: Conclusion::BasinExists,
                                    justification: Justification::RegularCaseS,
                                    tested_value: ind,
                                })
                            }
                            RegionTest::Boundary => {
                                return Ok(Verdict {
                                    conclusion: Conclusion::Unknown,
                                    justification: Justification::BoundaryInconclusive,
                                    tested_value: ind,
                                })
                            }
                            RegionTest::Outside => {}
                        }
                    }
                    // Outside both criterion regions: the theorems tested
                    // here do not decide the direction.
                    Ok(Verdict {
                        conclusion: Conclusion::Unknown,
                        justification: Justification::Theorem2FuchsianR,
                        tested_value: ind,
                    })
                }
            }
        }
        DirectionClass::Apparent => {
            let ind = abate_index(f, chart, u0)?;
            Ok(Verdict {
                conclusion: Conclusion::Unknown,
                justification: Justification::ApparentUndecided,
                tested_value: ind,
            })
        }
    }
}
