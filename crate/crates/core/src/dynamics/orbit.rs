use std::collections::VecDeque;

use num_complex::Complex64;

use crate::germ::Germ;

use super::Point;

/// Finite-run surrogates for "attracted to the origin along `[v]`".
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitConfig {
    pub max_iter: usize,
    /// Attraction is declared once the norm stays below this and keeps
    /// decreasing over the direction window.
    pub attract_radius: f64,
    pub escape_radius: f64,
    /// Projective (chordal) distance within which consecutive direction
    /// estimates count as stable.
    pub tangency_tol: f64,
    /// Number of consecutive iterates the stability checks look back over.
    pub direction_window: usize,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            attract_radius: 1e-4,
            escape_radius: 10.0,
            tangency_tol: 1e-3,
            direction_window: 50,
        }
    }
}

impl OrbitConfig {
    pub fn is_valid(&self) -> bool {
        0.0 < self.attract_radius
            && self.attract_radius < self.escape_radius
            && self.tangency_tol > 0.0
            && self.direction_window >= 2
            && self.max_iter >= 1
    }
}

/// A point of the projective line, stored as a normalized representative
/// with the dominant component rotated to the positive real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    pub z: Complex64,
    pub w: Complex64,
}

impl ProjPoint {
    pub fn from_affine(z: Complex64, w: Complex64) -> Option<ProjPoint> {
        let norm = (z.norm_sqr() + w.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        let (z, w) = (z / norm, w / norm);
        let dominant = if z.norm() >= w.norm() { z } else { w };
        let phase = dominant / dominant.norm();
        Some(ProjPoint {
            z: z / phase,
            w: w / phase,
        })
    }

    /// The representative of a chart coordinate: `[1 : u0]` for chart `U`,
    /// `[u0 : 1]` for chart `V`.
    pub fn from_chart(chart: crate::algebra::Chart, u0: Complex64) -> ProjPoint {
        let one = Complex64::new(1.0, 0.0);
        match chart {
            crate::algebra::Chart::U => ProjPoint::from_affine(one, u0).expect("finite"),
            crate::algebra::Chart::V => ProjPoint::from_affine(u0, one).expect("finite"),
        }
    }

    /// Chordal distance `|z1 w2 - z2 w1|` between normalized representatives;
    /// ranges over `[0, 1]` and vanishes exactly on equal directions.
    pub fn chordal_dist(&self, other: &ProjPoint) -> f64 {
        (self.z * other.w - other.z * self.w).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrbitFate {
    /// Norm decreasing below the attract radius with a stabilized projective
    /// direction; carries the direction estimate.
    AttractedAlong(ProjPoint),
    /// Attracted by the norm criterion but the direction estimate never
    /// stabilized within the iteration budget.
    AttractedNoDirection,
    Escaped,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitResult {
    pub fate: OrbitFate,
    pub iterations: usize,
    pub final_point: Point,
}

/// Iterates `F` from `p0`, classifying the orbit's fate.
///
/// Escape triggers on leaving the escape radius or on floating-point
/// overflow. Attraction along a direction requires the norm to decrease
/// strictly through the whole window, the last norm to sit below the attract
/// radius, and all consecutive direction estimates in the window to agree
/// within the tangency tolerance.
pub fn iterate_orbit(f: &Germ, p0: Point, cfg: &OrbitConfig) -> OrbitResult {
    debug_assert!(cfg.is_valid());
    let mut p = p0;
    let mut norms: VecDeque<f64> = VecDeque::with_capacity(cfg.direction_window);
    let mut dirs: VecDeque<ProjPoint> = VecDeque::with_capacity(cfg.direction_window);

    let norm_of = |q: Point| (q.0.norm_sqr() + q.1.norm_sqr()).sqrt();
    if norm_of(p) > cfg.escape_radius {
        return OrbitResult {
            fate: OrbitFate::Escaped,
            iterations: 0,
            final_point: p,
        };
    }

    for it in 1..=cfg.max_iter {
        p = f.eval(p.0, p.1);
        let nrm = norm_of(p);
        if !nrm.is_finite() || nrm > cfg.escape_radius {
            return OrbitResult {
                fate: OrbitFate::Escaped,
                iterations: it,
                final_point: p,
            };
        }
        if nrm == 0.0 {
            // Landed exactly on the fixed point; no tangent direction left.
            return OrbitResult {
                fate: OrbitFate::AttractedNoDirection,
                iterations: it,
                final_point: p,
            };
        }
        if norms.len() == cfg.direction_window {
            norms.pop_front();
            dirs.pop_front();
        }
        norms.push_back(nrm);
        dirs.push_back(ProjPoint::from_affine(p.0, p.1).expect("nonzero point"));

        if norms.len() == cfg.direction_window && nrm < cfg.attract_radius {
            let decreasing = norms.iter().zip(norms.iter().skip(1)).all(|(a, b)| b < a);
            let stable = dirs
                .iter()
                .zip(dirs.iter().skip(1))
                .all(|(a, b)| a.chordal_dist(b) < cfg.tangency_tol);
            if decreasing && stable {
                return OrbitResult {
                    fate: OrbitFate::AttractedAlong(*dirs.back().unwrap()),
                    iterations: it,
                    final_point: p,
                };
            }
        }
    }

    let attracted = norms.len() == cfg.direction_window
        && norms.back().is_some_and(|&n| n < cfg.attract_radius)
        && norms.iter().zip(norms.iter().skip(1)).all(|(a, b)| b < a);
    OrbitResult {
        fate: if attracted {
            OrbitFate::AttractedNoDirection
        } else {
            OrbitFate::Undecided
        },
        iterations: cfg.max_iter,
        final_point: p,
    }
}
