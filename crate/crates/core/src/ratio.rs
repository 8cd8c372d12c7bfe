//! Candidate tile grids and their grouping.
//!
//! A grid is written `rows × cols`: `rows` tiles along the image height and
//! `cols` along the width, so its aspect ratio is `cols / rows`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::plan::Dims;
use crate::{Error, Result};

/// Smallest tile count admitted to the detailed group.
pub const DETAILED_MIN_TILES: u32 = 10;
/// Inclusive tile-count range of the adaptive group.
pub const ADAPTIVE_TILES: core::ops::RangeInclusive<u32> = 3..=8;
/// Tiles held back from the detailed group: a 3-tile adaptive grid plus the
/// global tile.
pub const RESERVED_TILES: u32 = 4;

/// A crop layout of `rows × cols` equally sized tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AspectRatio {
    /// Tiles along the height.
    pub rows: u32,
    /// Tiles along the width.
    pub cols: u32,
}

impl AspectRatio {
    /// The 1×1 grid used by the global level.
    pub const UNIT: AspectRatio = AspectRatio { rows: 1, cols: 1 };

    /// Builds a grid, rejecting zero extents.
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(
                "grid rows and cols must be at least 1",
            ));
        }
        Ok(Self { rows, cols })
    }

    /// Number of tiles in the grid.
    pub const fn tile_count(&self) -> u32 {
        self.rows * self.cols
    }

    /// Width over height, `cols / rows`.
    pub fn ratio(&self) -> f64 {
        self.cols as f64 / self.rows as f64
    }
}

impl fmt::Display for AspectRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Candidate grids partitioned into the three pyramid pools.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioGroups {
    /// Grids with at least `detailed_min` tiles and room left for the other
    /// two levels.
    pub detailed: Vec<AspectRatio>,
    /// Grids with 3 to 8 tiles.
    pub adaptive: Vec<AspectRatio>,
    /// Always exactly `[1×1]`.
    pub global: Vec<AspectRatio>,
    /// Tile budget the groups were built for.
    pub budget: u32,
}

/// All grids with at most `budget` tiles, ordered by `(rows, cols)`.
pub fn generate_candidates(budget: u32) -> Result<Vec<AspectRatio>> {
    if budget == 0 {
        return Err(Error::InvalidArgument("tile budget must be at least 1"));
    }
    let mut out = Vec::new();
    for rows in 1..=budget {
        for cols in 1..=budget / rows {
            out.push(AspectRatio { rows, cols });
        }
    }
    Ok(out)
}

/// Splits candidates into detailed, adaptive and global pools.
///
/// Grids with 2 or 9 tiles, and detailed-sized grids that would leave no room
/// for the adaptive and global levels, land in no group.
pub fn group_candidates(candidates: &[AspectRatio], budget: u32, detailed_min: u32) -> RatioGroups {
    let detailed_max = budget.saturating_sub(RESERVED_TILES);
    let detailed = candidates
        .iter()
        .copied()
        .filter(|r| (detailed_min..=detailed_max).contains(&r.tile_count()))
        .collect();
    let adaptive = candidates
        .iter()
        .copied()
        .filter(|r| ADAPTIVE_TILES.contains(&r.tile_count()))
        .collect();
    RatioGroups {
        detailed,
        adaptive,
        global: alloc::vec![AspectRatio::UNIT],
        budget,
    }
}

/// Orders `a` and `b` by their distance to the aspect ratio of `target`,
/// compared exactly: `|w/h - c/r|` becomes `|w·r - h·c| / (h·r)`.
fn cmp_distance(target: Dims, a: &AspectRatio, b: &AspectRatio) -> Ordering {
    let w = u128::from(target.w);
    let h = u128::from(target.h);
    let gap = |r: &AspectRatio| (w * u128::from(r.rows)).abs_diff(h * u128::from(r.cols));
    // gap_a / (h·ra) vs gap_b / (h·rb)
    (gap(a) * u128::from(b.rows)).cmp(&(gap(b) * u128::from(a.rows)))
}

/// Picks the grid whose aspect ratio is closest to `target.w / target.h`.
///
/// Ties go to the larger tile count, then to the larger column count.
pub fn closest_ratio(target: Dims, pool: &[AspectRatio]) -> Result<AspectRatio> {
    if target.w == 0 || target.h == 0 {
        return Err(Error::InvalidArgument("target dimensions must be positive"));
    }
    pool.iter()
        .copied()
        .min_by(|a, b| {
            cmp_distance(target, a, b)
                .then_with(|| b.tile_count().cmp(&a.tile_count()))
                .then_with(|| b.cols.cmp(&a.cols))
        })
        .ok_or(Error::EmptyPool)
}

/// Removes adaptive grids whose row count divides the detailed row count or
/// whose column count divides the detailed column count.
///
/// A survivor satisfies `detailed.rows != k·rows` and
/// `detailed.cols != k·cols` for every integer `k`.
pub fn filter_adaptive(detailed: AspectRatio, pool: &[AspectRatio]) -> Vec<AspectRatio> {
    pool.iter()
        .copied()
        .filter(|a| !detailed.rows.is_multiple_of(a.rows) && !detailed.cols.is_multiple_of(a.cols))
        .collect()
}

/// Number of interior crop lines shared by two grids over the unit square.
///
/// Lines `i/n` and `j/m` coincide exactly at the multiples of `1/gcd(n, m)`,
/// so each axis contributes `gcd(n, m) - 1`.
pub fn coincidence_count(a: AspectRatio, b: AspectRatio) -> u32 {
    (gcd(a.cols, b.cols) - 1) + (gcd(a.rows, b.rows) - 1)
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
