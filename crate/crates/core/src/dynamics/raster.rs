use std::io::{self, Write};

use rayon::prelude::*;

use crate::directions::characteristic_directions;
use crate::germ::Germ;

use super::orbit::{iterate_orbit, OrbitConfig, OrbitFate, ProjPoint};
use super::Point;

pub const FATE_UNDECIDED: u8 = 0;
pub const FATE_ESCAPED: u8 = 1;
/// Attracted without a usable direction match (no direction estimate, or a
/// dicritical germ with no canonical direction list).
pub const FATE_ATTRACTED_UNMATCHED: u8 = 2;
/// Attracted along direction `j` is encoded as `FATE_DIRECTION_BASE + j`,
/// with `j` indexing the germ's sorted direction report.
pub const FATE_DIRECTION_BASE: u8 = 3;

/// A real 2-plane slice of `C^2`, rasterized pixel by pixel.
///
/// Pixel `(row, col)` maps to `origin + s e1 + t e2` with `s, t` running
/// over `[-extent, extent]` (pixel centers).
#[derive(Debug, Clone)]
pub struct SliceSpec {
    pub origin: Point,
    pub e1: Point,
    pub e2: Point,
    pub width: usize,
    pub height: usize,
    pub extent: f64,
}

impl SliceSpec {
    pub fn pixel_point(&self, row: usize, col: usize) -> Point {
        let s = self.extent * (2.0 * (col as f64 + 0.5) / self.width as f64 - 1.0);
        let t = self.extent * (2.0 * (row as f64 + 0.5) / self.height as f64 - 1.0);
        (
            self.origin.0 + s * self.e1.0 + t * self.e2.0,
            self.origin.1 + s * self.e1.1 + t * self.e2.1,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FateGrid {
    pub width: usize,
    pub height: usize,
    /// Row-major fate codes.
    pub codes: Vec<u8>,
    /// Row-major iteration counts at fate decision.
    pub iterations: Vec<u32>,
}

impl FateGrid {
    pub fn code(&self, row: usize, col: usize) -> u8 {
        self.codes[row * self.width + col]
    }

    /// Counts per fate code, sorted by code.
    pub fn histogram(&self) -> Vec<(u8, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &c in &self.codes {
            *counts.entry(c).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Rasterizes orbit fates over a slice. Rows are computed in parallel; each
/// pixel is an independent pure computation, so the result is identical
/// across thread counts.
pub fn raster_slice(f: &Germ, slice: &SliceSpec, cfg: &OrbitConfig) -> FateGrid {
    let directions: Vec<ProjPoint> = characteristic_directions(f)
        .map(|report| {
            report
                .directions
                .iter()
                .map(|d| ProjPoint::from_chart(d.chart, d.u0))
                .collect()
        })
        .unwrap_or_default();

    let w = slice.width;
    let h = slice.height;
    let mut codes = vec![0u8; w * h];
    let mut iterations = vec![0u32; w * h];

    codes
        .par_chunks_mut(w)
        .zip(iterations.par_chunks_mut(w))
        .enumerate()
        .for_each(|(row, (code_row, iter_row))| {
            for col in 0..w {
                let p = slice.pixel_point(row, col);
                let result = iterate_orbit(f, p, cfg);
                code_row[col] = fate_code(&result.fate, &directions);
                iter_row[col] = result.iterations as u32;
            }
        });

    FateGrid {
        width: w,
        height: h,
        codes,
        iterations,
    }
}

fn fate_code(fate: &OrbitFate, directions: &[ProjPoint]) -> u8 {
    match fate {
        OrbitFate::Undecided => FATE_UNDECIDED,
        OrbitFate::Escaped => FATE_ESCAPED,
        OrbitFate::AttractedNoDirection => FATE_ATTRACTED_UNMATCHED,
        OrbitFate::AttractedAlong(estimate) => {
            let nearest = directions
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    estimate
                        .chordal_dist(a)
                        .partial_cmp(&estimate.chordal_dist(b))
                        .expect("chordal distances are finite")
                });
            match nearest {
                Some((j, _)) => FATE_DIRECTION_BASE.saturating_add(j.min(250) as u8),
                None => FATE_ATTRACTED_UNMATCHED,
            }
        }
    }
}

/// Fixed palette cycled by the attracted-along-direction codes.
const PALETTE: [[u8; 3]; 8] = [
    [220, 50, 47],
    [38, 139, 210],
    [133, 153, 0],
    [181, 137, 0],
    [211, 54, 130],
    [42, 161, 152],
    [203, 75, 22],
    [108, 113, 196],
];

fn color_of(code: u8) -> [u8; 3] {
    match code {
        FATE_UNDECIDED => [0, 0, 0],
        FATE_ESCAPED => [255, 255, 255],
        FATE_ATTRACTED_UNMATCHED => [128, 128, 128],
        j => PALETTE[(j - FATE_DIRECTION_BASE) as usize % PALETTE.len()],
    }
}

/// Binary PPM (P6) with one fixed color per fate code.
pub fn write_ppm<W: Write>(grid: &FateGrid, out: &mut W) -> io::Result<()> {
    write!(out, "P6\n{} {}\n255\n", grid.width, grid.height)?;
    let mut buf = Vec::with_capacity(grid.codes.len() * 3);
    for &code in &grid.codes {
        buf.extend_from_slice(&color_of(code));
    }
    out.write_all(&buf)
}

/// CSV rows `(row, col, fate_code, iterations)`.
pub fn write_csv<W: Write>(grid: &FateGrid, out: &mut W) -> io::Result<()> {
    writeln!(out, "row,col,fate_code,iterations")?;
    for row in 0..grid.height {
        for col in 0..grid.width {
            let idx = row * grid.width + col;
            writeln!(
                out,
                "{},{},{},{}",
                row, col, grid.codes[idx], grid.iterations[idx]
            )?;
        }
    }
    Ok(())
}
