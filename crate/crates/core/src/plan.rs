//! Pyramid plans: which grid each level uses, the canvas it is resized to,
//! and the tile rectangles cut from that canvas.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::ratio::{
    closest_ratio, coincidence_count, filter_adaptive, generate_candidates, group_candidates,
    AspectRatio, DETAILED_MIN_TILES,
};
use crate::{Error, Result};

/// Default tile edge in pixels.
pub const DEFAULT_TILE_SIDE: u32 = 448;
/// Default total tile budget.
pub const DEFAULT_BUDGET: u32 = 24;

/// Width and height in pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    /// Width.
    pub w: u32,
    /// Height.
    pub h: u32,
}

impl Dims {
    /// Plain constructor; no validation.
    pub const fn new(w: u32, h: u32) -> Self {
        Self { w, h }
    }

    /// `w × h`.
    pub const fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }
}

/// Axis-aligned pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    /// Left edge.
    pub x: u32,
    /// Top edge.
    pub y: u32,
    /// Width.
    pub w: u32,
    /// Height.
    pub h: u32,
}

impl Rect {
    /// Area in pixels.
    pub const fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }

    /// Area shared with `other`.
    pub fn intersection_area(&self, other: &Rect) -> u64 {
        let x0 = self.x.max(other.x);
        let y0 = self.y.max(other.y);
        let x1 = (self.x + self.w).min(other.x + other.w);
        let y1 = (self.y + self.h).min(other.y + other.h);
        if x1 <= x0 || y1 <= y0 {
            0
        } else {
            (x1 - x0) as u64 * (y1 - y0) as u64
        }
    }
}

/// Pyramid level identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelName {
    /// Finest level, many tiles.
    Detailed,
    /// Mid level whose crop lines avoid the detailed ones.
    Adaptive,
    /// Whole image in a single tile.
    Global,
}

impl LevelName {
    /// Lowercase name used in file names and JSON.
    pub const fn as_str(&self) -> &'static str {
        match self {
            LevelName::Detailed => "detailed",
            LevelName::Adaptive => "adaptive",
            LevelName::Global => "global",
        }
    }
}

impl fmt::Display for LevelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LevelName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "detailed" => Ok(LevelName::Detailed),
            "adaptive" => Ok(LevelName::Adaptive),
            "global" => Ok(LevelName::Global),
            _ => Err(Error::InvalidArgument("unknown level name")),
        }
    }
}

/// Cropping strategy that produced a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Complementary pyramid: detailed + adaptive + global.
    Cip,
    /// One grid matched to the input aspect ratio.
    Dynamic,
    /// One preset grid regardless of the input.
    Fixed,
    /// Dynamic grid with overlapping tiles.
    Overlapping,
    /// Two preset grids, no adaptive level.
    MultiscaleFixed,
}

impl Strategy {
    /// Every strategy, CIP first.
    pub const ALL: [Strategy; 5] = [
        Strategy::Cip,
        Strategy::Dynamic,
        Strategy::Fixed,
        Strategy::Overlapping,
        Strategy::MultiscaleFixed,
    ];

    /// Name used on the command line and in JSON.
    pub const fn as_str(&self) -> &'static str {
        match self {
            Strategy::Cip => "cip",
            Strategy::Dynamic => "dynamic",
            Strategy::Fixed => "fixed",
            Strategy::Overlapping => "overlapping",
            Strategy::MultiscaleFixed => "multiscale_fixed",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or(Error::InvalidArgument("unknown strategy"))
    }
}

/// Parameters of the single-grid and multi-scale baselines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineOptions {
    /// Grid used by [`Strategy::Fixed`].
    pub fixed_grid: AspectRatio,
    /// Grids used by [`Strategy::MultiscaleFixed`], finest first.
    pub multiscale_grids: [AspectRatio; 2],
    /// Fraction of a tile shared by neighbours under [`Strategy::Overlapping`].
    pub overlap_frac: f64,
}

impl Default for BaselineOptions {
    fn default() -> Self {
        Self {
            fixed_grid: AspectRatio { rows: 3, cols: 3 },
            multiscale_grids: [AspectRatio { rows: 3, cols: 3 }, AspectRatio::UNIT],
            overlap_frac: 0.5,
        }
    }
}

/// One pyramid level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    /// Which level this is.
    pub name: LevelName,
    /// Grid shape.
    pub grid: AspectRatio,
    /// Canvas the input is resized to before cropping.
    pub resized: Dims,
    /// Tile rectangles on the resized canvas, row-major.
    pub tiles: Vec<Rect>,
}

impl Level {
    fn partitioned(name: LevelName, grid: AspectRatio, tile_side: u32) -> Self {
        let mut tiles = Vec::with_capacity(grid.tile_count() as usize);
        for r in 0..grid.rows {
            for c in 0..grid.cols {
                tiles.push(Rect {
                    x: c * tile_side,
                    y: r * tile_side,
                    w: tile_side,
                    h: tile_side,
                });
            }
        }
        Self {
            name,
            grid,
            resized: Dims::new(grid.cols * tile_side, grid.rows * tile_side),
            tiles,
        }
    }

    fn overlapping(name: LevelName, grid: AspectRatio, tile_side: u32, overlap_frac: f64) -> Self {
        let shared = libm::floor(overlap_frac * tile_side as f64) as u32;
        let stride = tile_side - shared;
        let resized = Dims::new(grid.cols * tile_side, grid.rows * tile_side);
        let xs = axis_origins(resized.w, tile_side, stride);
        let ys = axis_origins(resized.h, tile_side, stride);
        let tiles = ys
            .iter()
            .flat_map(|&y| {
                xs.iter().map(move |&x| Rect {
                    x,
                    y,
                    w: tile_side,
                    h: tile_side,
                })
            })
            .collect();
        Self {
            name,
            grid,
            resized,
            tiles,
        }
    }

    /// Tile positions per row and column, `(rows, cols)`.
    ///
    /// Equals the grid for partitioned levels; larger when tiles overlap.
    pub fn tile_layout(&self) -> (usize, usize) {
        let Some(first) = self.tiles.first() else {
            return (0, 0);
        };
        let cols = self.tiles.iter().take_while(|t| t.y == first.y).count();
        (self.tiles.len() / cols, cols)
    }
}

/// Origins along one axis: `0, stride, 2·stride, …` while the tile fits, plus
/// a final tile flush with the far edge when the stride misses it.
fn axis_origins(extent: u32, tile_side: u32, stride: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos + tile_side <= extent {
        out.push(pos);
        pos += stride;
    }
    let last = extent - tile_side;
    if out.last() != Some(&last) {
        out.push(last);
    }
    out
}

/// Levels selected for one input image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidPlan {
    /// Strategy that produced the plan.
    pub strategy: Strategy,
    /// Tile budget in force.
    pub budget: u32,
    /// Tile edge in pixels.
    pub tile_side: u32,
    /// Input image size.
    pub input: Dims,
    /// Levels, finest first.
    pub levels: Vec<Level>,
    /// Set when no adaptive grid passed the divisibility filter and the
    /// least-coincident one was used instead.
    pub adaptive_fallback: bool,
}

impl PyramidPlan {
    /// Level by name.
    pub fn level(&self, name: LevelName) -> Option<&Level> {
        self.levels.iter().find(|l| l.name == name)
    }

    /// Tiles across all levels.
    pub fn total_tiles(&self) -> usize {
        self.levels.iter().map(|l| l.tiles.len()).sum()
    }
}

fn check_common(input: Dims, budget: u32, tile_side: u32) -> Result<()> {
    if input.w == 0 || input.h == 0 {
        return Err(Error::InvalidArgument("input dimensions must be positive"));
    }
    if budget == 0 {
        return Err(Error::InvalidArgument("tile budget must be at least 1"));
    }
    if tile_side == 0 {
        return Err(Error::InvalidArgument("tile side must be positive"));
    }
    Ok(())
}

/// Builds the complementary pyramid for an input of size `input`.
///
/// The detailed grid is the closest-ratio grid of the detailed group. The
/// adaptive grid is the closest-ratio grid among adaptive candidates that fit
/// the remaining budget and share no divisor axis with the detailed grid; if
/// none survive, candidates with the fewest coincident crop lines are used.
pub fn plan_cip(input: Dims, budget: u32, tile_side: u32) -> Result<PyramidPlan> {
    check_common(input, budget, tile_side)?;
    let groups = group_candidates(&generate_candidates(budget)?, budget, DETAILED_MIN_TILES);
    let detailed =
        closest_ratio(input, &groups.detailed).map_err(|_| Error::BudgetTooSmall { budget })?;

    let room = budget - detailed.tile_count() - 1;
    let pool: Vec<AspectRatio> = groups
        .adaptive
        .into_iter()
        .filter(|a| a.tile_count() <= room)
        .collect();
    let mut filtered = filter_adaptive(detailed, &pool);
    let adaptive_fallback = filtered.is_empty();
    if adaptive_fallback {
        let fewest = pool
            .iter()
            .map(|&a| coincidence_count(a, detailed))
            .min()
            .ok_or(Error::BudgetTooSmall { budget })?;
        filtered = pool
            .into_iter()
            .filter(|&a| coincidence_count(a, detailed) == fewest)
            .collect();
    }
    let adaptive = closest_ratio(input, &filtered)?;

    Ok(PyramidPlan {
        strategy: Strategy::Cip,
        budget,
        tile_side,
        input,
        levels: alloc::vec![
            Level::partitioned(LevelName::Detailed, detailed, tile_side),
            Level::partitioned(LevelName::Adaptive, adaptive, tile_side),
            Level::partitioned(LevelName::Global, AspectRatio::UNIT, tile_side),
        ],
        adaptive_fallback,
    })
}

/// Builds one of the comparison strategies.
///
/// `Strategy::Cip` is forwarded to [`plan_cip`].
pub fn plan_baseline(
    strategy: Strategy,
    input: Dims,
    budget: u32,
    tile_side: u32,
    opts: &BaselineOptions,
) -> Result<PyramidPlan> {
    check_common(input, budget, tile_side)?;
    if !(0.0..1.0).contains(&opts.overlap_frac) {
        return Err(Error::InvalidArgument("overlap fraction must be in [0, 1)"));
    }
    let dynamic = || closest_ratio(input, &generate_candidates(budget)?);
    let fits = |tiles: u32| {
        if tiles > budget {
            Err(Error::BudgetTooSmall { budget })
        } else {
            Ok(())
        }
    };
    let levels = match strategy {
        Strategy::Cip => return plan_cip(input, budget, tile_side),
        Strategy::Dynamic => alloc::vec![Level::partitioned(
            LevelName::Detailed,
            dynamic()?,
            tile_side
        )],
        Strategy::Fixed => {
            fits(opts.fixed_grid.tile_count())?;
            alloc::vec![Level::partitioned(
                LevelName::Detailed,
                opts.fixed_grid,
                tile_side
            )]
        }
        Strategy::Overlapping => alloc::vec![Level::overlapping(
            LevelName::Detailed,
            dynamic()?,
            tile_side,
            opts.overlap_frac,
        )],
        Strategy::MultiscaleFixed => {
            let [fine, coarse] = opts.multiscale_grids;
            fits(fine.tile_count() + coarse.tile_count())?;
            alloc::vec![
                Level::partitioned(LevelName::Detailed, fine, tile_side),
                Level::partitioned(LevelName::Global, coarse, tile_side),
            ]
        }
    };
    Ok(PyramidPlan {
        strategy,
        budget,
        tile_side,
        input,
        levels,
        adaptive_fallback: false,
    })
}
