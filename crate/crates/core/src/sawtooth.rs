//! Crop-boundary cut statistics on synthetic scenes.
//!
//! An object is cut at a level when, after mapping its box onto the level's
//! resized canvas, no single tile contains it. For partitioned grids this is
//! the same as some interior grid line passing strictly through the box.
//! Boxes touching a line only at their edge are not cut. All comparisons are
//! done in integers, so rates are exact ratios of counts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plan::{plan_baseline, BaselineOptions, Dims, Level, LevelName, Rect, Strategy};
use crate::ratio::AspectRatio;
use crate::{Error, Result};

/// Object bounding box on the scene canvas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObjectBox {
    /// Identifier, unique within a scene.
    pub id: u32,
    /// Pixel rectangle.
    pub rect: Rect,
}

/// Canvas plus objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneSpec {
    /// Scene size in pixels.
    pub canvas: Dims,
    /// Objects, all inside the canvas.
    pub objects: Vec<ObjectBox>,
    /// Seed the scene was drawn with.
    pub seed: u64,
}

/// Draws `n` boxes with edges in `size_range` (inclusive) placed uniformly
/// inside `canvas`.
pub fn generate_scene(
    canvas: Dims,
    n: usize,
    size_range: (u32, u32),
    seed: u64,
) -> Result<SceneSpec> {
    let (lo, hi) = size_range;
    if lo == 0 || lo > hi || hi > canvas.w || hi > canvas.h {
        return Err(Error::InvalidArgument(
            "object size range does not fit the canvas",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = (0..n as u32)
        .map(|id| {
            let w = rng.gen_range(lo..=hi);
            let h = rng.gen_range(lo..=hi);
            let x = rng.gen_range(0..=canvas.w - w);
            let y = rng.gen_range(0..=canvas.h - h);
            ObjectBox {
                id,
                rect: Rect { x, y, w, h },
            }
        })
        .collect();
    Ok(SceneSpec {
        canvas,
        objects,
        seed,
    })
}

/// Whether `(lo, hi)` on a source axis of length `src`, scaled to `dst`,
/// strictly straddles a multiple of `step` other than the ends.
fn straddles_line(lo: u32, hi: u32, src: u32, dst: u32, step: u32, lines: u32) -> bool {
    // position p maps to p·dst/src; line k sits at k·step
    let lo = u128::from(lo) * u128::from(dst);
    let hi = u128::from(hi) * u128::from(dst);
    let unit = u128::from(step) * u128::from(src);
    let k = lo / unit + 1;
    k < u128::from(lines) && k * unit < hi
}

/// Whether an interior line of `grid` passes strictly through `rect` once
/// the canvas is resized to `resized`.
pub fn is_cut(rect: Rect, grid: AspectRatio, canvas: Dims, resized: Dims) -> bool {
    let tile_w = resized.w / grid.cols;
    let tile_h = resized.h / grid.rows;
    straddles_line(
        rect.x,
        rect.x + rect.w,
        canvas.w,
        resized.w,
        tile_w,
        grid.cols,
    ) || straddles_line(
        rect.y,
        rect.y + rect.h,
        canvas.h,
        resized.h,
        tile_h,
        grid.rows,
    )
}

/// Whether no tile of `level` fully contains `rect` after resizing.
pub fn is_cut_by_level(rect: Rect, level: &Level, canvas: Dims) -> bool {
    let (cw, ch) = (u64::from(canvas.w), u64::from(canvas.h));
    let (rw, rh) = (u64::from(level.resized.w), u64::from(level.resized.h));
    let x0 = u64::from(rect.x) * rw;
    let x1 = u64::from(rect.x + rect.w) * rw;
    let y0 = u64::from(rect.y) * rh;
    let y1 = u64::from(rect.y + rect.h) * rh;
    !level.tiles.iter().any(|t| {
        u64::from(t.x) * cw <= x0
            && x1 <= u64::from(t.x + t.w) * cw
            && u64::from(t.y) * ch <= y0
            && y1 <= u64::from(t.y + t.h) * ch
    })
}

/// What to measure: a planner strategy or a bare grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyzerStrategy {
    /// Plan produced by the planner for the scene canvas.
    Plan(Strategy),
    /// One fixed partitioned grid.
    Grid(AspectRatio),
}

impl fmt::Display for AnalyzerStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyzerStrategy::Plan(s) => f.write_str(s.as_str()),
            AnalyzerStrategy::Grid(g) if *g == AspectRatio::UNIT => f.write_str("global_only"),
            AnalyzerStrategy::Grid(g) => write!(f, "grid_{}x{}", g.rows, g.cols),
        }
    }
}

impl FromStr for AnalyzerStrategy {
    type Err = Error;

    /// Accepts planner names, `global_only`, or `grid_RxC`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "global_only" {
            return Ok(AnalyzerStrategy::Grid(AspectRatio::UNIT));
        }
        if let Some(shape) = s.strip_prefix("grid_") {
            let bad = Error::InvalidArgument("grid strategy must look like grid_RxC");
            let (r, c) = shape.split_once('x').ok_or(bad.clone())?;
            let rows = r.parse().map_err(|_| bad.clone())?;
            let cols = c.parse().map_err(|_| bad)?;
            return Ok(AnalyzerStrategy::Grid(AspectRatio::new(rows, cols)?));
        }
        s.parse().map(AnalyzerStrategy::Plan)
    }
}

/// Cut count of one level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelCut {
    /// Level name.
    pub name: LevelName,
    /// Grid of the level.
    pub grid: AspectRatio,
    /// Objects cut at this level.
    pub cut: usize,
}

/// Statistics for one strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyReport {
    /// Strategy name.
    pub name: String,
    /// Objects evaluated.
    pub objects: usize,
    /// Per-level counts, finest first.
    pub levels: Vec<LevelCut>,
    /// Objects cut at every level.
    pub cut_all: usize,
    /// Objects cut at every non-global level (equals `cut_all` when there is
    /// no separate global level).
    pub cut_local: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl StrategyReport {
    /// Fraction of objects cut at every level.
    pub fn cut_rate(&self) -> f64 {
        ratio(self.cut_all, self.objects)
    }

    /// Fraction of objects uncut at one level or more, `1 − cut_rate`.
    pub fn complementarity_rate(&self) -> f64 {
        1.0 - self.cut_rate()
    }

    /// Fraction cut at every level except the global one.
    pub fn local_cut_rate(&self) -> f64 {
        ratio(self.cut_local, self.objects)
    }

    /// Fraction cut at level `i`.
    pub fn level_rate(&self, i: usize) -> f64 {
        ratio(self.levels[i].cut, self.objects)
    }

    /// Average number of objects cut per level.
    pub fn mean_cut_per_level(&self) -> f64 {
        ratio(self.levels.iter().map(|l| l.cut).sum(), self.levels.len())
    }
}

/// Cut statistics for a set of strategies on one or more scenes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SawtoothReport {
    /// Scene canvas.
    pub canvas: Dims,
    /// Scenes merged into this report.
    pub scenes: usize,
    /// One entry per strategy, in request order.
    pub strategies: Vec<StrategyReport>,
}

impl SawtoothReport {
    /// Adds the counts of `other`, which must cover the same strategies and
    /// levels.
    pub fn merge(&mut self, other: &SawtoothReport) -> Result<()> {
        if self.strategies.len() != other.strategies.len() {
            return Err(Error::InvalidArgument("reports cover different strategies"));
        }
        for (a, b) in self.strategies.iter_mut().zip(&other.strategies) {
            if a.name != b.name || a.levels.len() != b.levels.len() {
                return Err(Error::InvalidArgument("reports cover different strategies"));
            }
            a.objects += b.objects;
            a.cut_all += b.cut_all;
            a.cut_local += b.cut_local;
            for (la, lb) in a.levels.iter_mut().zip(&b.levels) {
                la.cut += lb.cut;
            }
        }
        self.scenes += other.scenes;
        Ok(())
    }
}

/// Levels a strategy produces for `canvas`.
pub fn strategy_levels(
    strategy: AnalyzerStrategy,
    canvas: Dims,
    budget: u32,
    tile_side: u32,
    opts: &BaselineOptions,
) -> Result<Vec<Level>> {
    match strategy {
        AnalyzerStrategy::Plan(s) => Ok(plan_baseline(s, canvas, budget, tile_side, opts)?.levels),
        AnalyzerStrategy::Grid(grid) => {
            let tiles = (0..grid.rows)
                .flat_map(|r| {
                    (0..grid.cols).map(move |c| Rect {
                        x: c * tile_side,
                        y: r * tile_side,
                        w: tile_side,
                        h: tile_side,
                    })
                })
                .collect();
            Ok(alloc::vec![Level {
                name: LevelName::Detailed,
                grid,
                resized: Dims::new(grid.cols * tile_side, grid.rows * tile_side),
                tiles,
            }])
        }
    }
}

/// Counts cuts for one strategy given its levels.
pub fn analyze_levels(scene: &SceneSpec, name: String, levels: &[Level]) -> StrategyReport {
    let mut per_level = alloc::vec![0usize; levels.len()];
    let mut cut_all = 0;
    let mut cut_local = 0;
    let has_global = levels.len() > 1 && levels.iter().any(|l| l.name == LevelName::Global);
    for obj in &scene.objects {
        let mut all = true;
        let mut local = true;
        for (count, level) in per_level.iter_mut().zip(levels) {
            let cut = is_cut_by_level(obj.rect, level, scene.canvas);
            *count += usize::from(cut);
            all &= cut;
            if !(has_global && level.name == LevelName::Global) {
                local &= cut;
            }
        }
        cut_all += usize::from(all);
        cut_local += usize::from(local);
    }
    StrategyReport {
        name,
        objects: scene.objects.len(),
        levels: levels
            .iter()
            .zip(per_level)
            .map(|(l, cut)| LevelCut {
                name: l.name,
                grid: l.grid,
                cut,
            })
            .collect(),
        cut_all,
        cut_local,
    }
}

/// Cut statistics of every strategy on `scene`.
pub fn analyze(
    scene: &SceneSpec,
    strategies: &[AnalyzerStrategy],
    budget: u32,
    tile_side: u32,
    opts: &BaselineOptions,
) -> Result<SawtoothReport> {
    if strategies.is_empty() {
        return Err(Error::InvalidArgument("no strategies to analyze"));
    }
    let strategies = strategies
        .iter()
        .map(|&s| {
            let levels = strategy_levels(s, scene.canvas, budget, tile_side, opts)?;
            Ok(analyze_levels(scene, alloc::format!("{s}"), &levels))
        })
        .collect::<Result<_>>()?;
    Ok(SawtoothReport {
        canvas: scene.canvas,
        scenes: 1,
        strategies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::plan_cip;
    use alloc::vec;

    fn rect(x: u32, y: u32, w: u32, h: u32) -> Rect {
        Rect { x, y, w, h }
    }

    #[test]
    fn cut_examples() {
        let grid = AspectRatio { rows: 1, cols: 2 };
        let canvas = Dims::new(896, 448);
        let resized = Dims::new(896, 448);
        assert!(!is_cut(rect(10, 10, 100, 100), grid, canvas, resized));
        assert!(is_cut(rect(398, 100, 100, 100), grid, canvas, resized));
        assert!(is_cut(rect(440, 0, 16, 16), grid, canvas, resized));
        // touching the line is not a cut
        assert!(!is_cut(rect(348, 0, 100, 16), grid, canvas, resized));
        assert!(!is_cut(rect(448, 0, 100, 16), grid, canvas, resized));
    }

    #[test]
    fn cut_through_resize() {
        // canvas 300 wide maps onto 896; line at 448 ↔ x = 150
        let grid = AspectRatio { rows: 1, cols: 2 };
        let canvas = Dims::new(300, 100);
        let resized = Dims::new(896, 448);
        assert!(is_cut(rect(149, 0, 2, 2), grid, canvas, resized));
        assert!(!is_cut(rect(150, 0, 2, 2), grid, canvas, resized));
        assert!(!is_cut(rect(148, 0, 2, 2), grid, canvas, resized));
    }

    #[test]
    fn scene_generation() {
        let canvas = Dims::new(4480, 4480);
        assert!(generate_scene(canvas, 0, (1, 2), 0)
            .unwrap()
            .objects
            .is_empty());
        let s = generate_scene(canvas, 100, (20, 60), 42).unwrap();
        assert_eq!(s.objects.len(), 100);
        for o in &s.objects {
            let r = o.rect;
            assert!((20..=60).contains(&r.w) && (20..=60).contains(&r.h));
            assert!(r.x + r.w <= canvas.w && r.y + r.h <= canvas.h);
        }
        assert_eq!(s, generate_scene(canvas, 100, (20, 60), 42).unwrap());
        assert!(generate_scene(canvas, 1, (0, 5), 0).is_err());
        assert!(generate_scene(canvas, 1, (9, 5), 0).is_err());
        assert!(generate_scene(Dims::new(10, 10), 1, (5, 11), 0).is_err());
    }

    #[test]
    fn global_only_never_cuts() {
        let scene = generate_scene(Dims::new(1000, 700), 200, (5, 400), 3).unwrap();
        let r = analyze(
            &scene,
            &[AnalyzerStrategy::Grid(AspectRatio::UNIT)],
            24,
            448,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(r.strategies[0].cut_all, 0);
        assert_eq!(r.strategies[0].name, "global_only");
    }

    #[test]
    fn centre_straddlers_always_cut_by_2x2() {
        let canvas = Dims::new(800, 800);
        let objects = (0..10)
            .map(|i| ObjectBox {
                id: i,
                rect: rect(390 - i, 300 + 5 * i, 20 + i, 30),
            })
            .collect();
        let scene = SceneSpec {
            canvas,
            objects,
            seed: 0,
        };
        let g = AnalyzerStrategy::Grid(AspectRatio { rows: 2, cols: 2 });
        let r = analyze(&scene, &[g], 24, 448, &Default::default()).unwrap();
        assert_eq!(r.strategies[0].cut_rate(), 1.0);
        assert_eq!(r.strategies[0].complementarity_rate(), 0.0);
    }

    #[test]
    fn adaptive_rescues_detailed_cut() {
        // 1344×896 plans detailed 3×5 and adaptive 2×3; on the original
        // canvas detailed lines sit at x = 268.8k, adaptive at x = 448k
        let canvas = Dims::new(1344, 896);
        let plan = plan_cip(canvas, 24, 448).unwrap();
        let obj = rect(260, 100, 20, 20);
        let [d, a, g] = [&plan.levels[0], &plan.levels[1], &plan.levels[2]];
        assert!(is_cut_by_level(obj, d, canvas));
        assert!(!is_cut_by_level(obj, a, canvas));
        let scene = SceneSpec {
            canvas,
            objects: vec![ObjectBox { id: 0, rect: obj }],
            seed: 0,
        };
        let r = analyze_levels(&scene, "cip".into(), &[d.clone(), a.clone(), g.clone()]);
        assert_eq!(r.cut_all, 0);
        assert_eq!(r.cut_local, 0);
        assert_eq!(r.levels[0].cut, 1);
    }

    #[test]
    fn strategy_names() {
        for s in [
            "cip",
            "dynamic",
            "fixed",
            "overlapping",
            "multiscale_fixed",
            "global_only",
            "grid_2x3",
        ] {
            let parsed: AnalyzerStrategy = s.parse().unwrap();
            assert_eq!(alloc::format!("{parsed}"), s);
        }
        assert!("grid_2y3".parse::<AnalyzerStrategy>().is_err());
        assert!("grid_0x3".parse::<AnalyzerStrategy>().is_err());
    }

    #[test]
    fn merge_adds_counts() {
        let scene = generate_scene(Dims::new(2000, 1500), 50, (10, 80), 1).unwrap();
        let strategies = [
            AnalyzerStrategy::Plan(Strategy::Cip),
            AnalyzerStrategy::Plan(Strategy::Dynamic),
        ];
        let a = analyze(&scene, &strategies, 24, 448, &Default::default()).unwrap();
        let mut m = a.clone();
        m.merge(&a).unwrap();
        assert_eq!(m.scenes, 2);
        assert_eq!(m.strategies[0].objects, 100);
        assert_eq!(m.strategies[1].cut_all, 2 * a.strategies[1].cut_all);
        let other = analyze(&scene, &strategies[..1], 24, 448, &Default::default()).unwrap();
        assert!(m.merge(&other).is_err());
    }
}
