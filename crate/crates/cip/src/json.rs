//! JSON documents: pyramid plans, compression sidecars and cut-rate reports.

use cip_core::plan::{Dims, PyramidPlan, Rect};
use cip_core::ratio::AspectRatio;
use cip_core::sawtooth::{AnalyzerStrategy, SawtoothReport};
use cip_core::scm::CompressionResult;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Size {
    pub w: u32,
    pub h: u32,
}

impl From<Dims> for Size {
    fn from(d: Dims) -> Self {
        Size { w: d.w, h: d.h }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub rows: u32,
    pub cols: u32,
}

impl From<AspectRatio> for Grid {
    fn from(g: AspectRatio) -> Self {
        Grid {
            rows: g.rows,
            cols: g.cols,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileRect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl From<Rect> for TileRect {
    fn from(r: Rect) -> Self {
        TileRect {
            x: r.x,
            y: r.y,
            w: r.w,
            h: r.h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub name: String,
    pub grid: Grid,
    pub resized: Size,
    pub tiles: Vec<TileRect>,
}

/// Serialized [`PyramidPlan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDoc {
    pub strategy: String,
    pub budget: u32,
    pub tile_side: u32,
    pub input: Size,
    pub levels: Vec<LevelDoc>,
}

impl From<&PyramidPlan> for PlanDoc {
    fn from(p: &PyramidPlan) -> Self {
        PlanDoc {
            strategy: p.strategy.as_str().to_owned(),
            budget: p.budget,
            tile_side: p.tile_side,
            input: p.input.into(),
            levels: p
                .levels
                .iter()
                .map(|l| LevelDoc {
                    name: l.name.as_str().to_owned(),
                    grid: l.grid.into(),
                    resized: l.resized.into(),
                    tiles: l.tiles.iter().map(|&t| t.into()).collect(),
                })
                .collect(),
        }
    }
}

/// Sidecar written next to a compressed detailed tensor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressDoc {
    #[serde(rename = "L1")]
    pub l1: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub drop_ratio: f64,
    pub kept_indices: Vec<usize>,
}

impl From<&CompressionResult> for CompressDoc {
    fn from(c: &CompressionResult) -> Self {
        CompressDoc {
            l1: c.original_len,
            k: c.kept(),
            drop_ratio: c.drop_ratio,
            kept_indices: c.kept_indices.clone(),
        }
    }
}

/// Label carried by every report: the cut rate stands in for the semantic
/// effect, it does not measure it.
pub const METRIC_LABEL: &str = "crop-boundary cut rate (proxy for the semantic sawtooth effect)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRateDoc {
    pub name: String,
    pub grid: Grid,
    pub cut_count: usize,
    pub cut_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyDoc {
    pub strategy: String,
    pub objects: usize,
    pub cut_count: usize,
    pub cut_rate: f64,
    pub complementarity_rate: f64,
    pub local_cut_count: usize,
    pub local_cut_rate: f64,
    pub mean_objects_cut_per_level: f64,
    pub levels: Vec<LevelRateDoc>,
}

/// Serialized [`SawtoothReport`] plus the run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub metric: String,
    pub canvas: Size,
    pub scenes: usize,
    pub objects_per_scene: usize,
    pub seed: u64,
    pub budget: u32,
    pub tile_side: u32,
    pub strategies: Vec<StrategyDoc>,
}

/// Run parameters recorded alongside a report.
#[derive(Debug, Clone, Copy)]
pub struct ReportMeta {
    pub objects_per_scene: usize,
    pub seed: u64,
    pub budget: u32,
    pub tile_side: u32,
}

impl ReportDoc {
    pub fn new(r: &SawtoothReport, meta: ReportMeta) -> Self {
        ReportDoc {
            metric: METRIC_LABEL.to_owned(),
            canvas: r.canvas.into(),
            scenes: r.scenes,
            objects_per_scene: meta.objects_per_scene,
            seed: meta.seed,
            budget: meta.budget,
            tile_side: meta.tile_side,
            strategies: r
                .strategies
                .iter()
                .map(|s| StrategyDoc {
                    strategy: s.name.clone(),
                    objects: s.objects,
                    cut_count: s.cut_all,
                    cut_rate: s.cut_rate(),
                    complementarity_rate: s.complementarity_rate(),
                    local_cut_count: s.cut_local,
                    local_cut_rate: s.local_cut_rate(),
                    mean_objects_cut_per_level: s.mean_cut_per_level(),
                    levels: s
                        .levels
                        .iter()
                        .enumerate()
                        .map(|(i, l)| LevelRateDoc {
                            name: l.name.as_str().to_owned(),
                            grid: l.grid.into(),
                            cut_count: l.cut,
                            cut_rate: s.level_rate(i),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// One CSV row per strategy × level, plus an `all` row per strategy.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("strategy,level,grid_rows,grid_cols,objects,cut_count,cut_rate\n");
        for s in &self.strategies {
            for l in &s.levels {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    s.strategy,
                    l.name,
                    l.grid.rows,
                    l.grid.cols,
                    s.objects,
                    l.cut_count,
                    l.cut_rate
                ));
            }
            out.push_str(&format!(
                "{},all,,,{},{},{}\n",
                s.strategy, s.objects, s.cut_count, s.cut_rate
            ));
        }
        out
    }

    /// Fixed-width text table for terminals.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "# {}\n# canvas {}x{}, {} scene(s) x {} objects, budget {}, tile {}\n",
            self.metric,
            self.canvas.w,
            self.canvas.h,
            self.scenes,
            self.objects_per_scene,
            self.budget,
            self.tile_side
        );
        out.push_str(&format!(
            "{:<18} {:>9} {:>9} {:>9}  levels\n",
            "strategy", "cut_rate", "local", "compl."
        ));
        for s in &self.strategies {
            let levels: Vec<String> = s
                .levels
                .iter()
                .map(|l| {
                    format!(
                        "{}({}x{})={:.4}",
                        l.name, l.grid.rows, l.grid.cols, l.cut_rate
                    )
                })
                .collect();
            out.push_str(&format!(
                "{:<18} {:>9.4} {:>9.4} {:>9.4}  {}\n",
                s.strategy,
                s.cut_rate,
                s.local_cut_rate,
                s.complementarity_rate,
                levels.join(" ")
            ));
        }
        out
    }
}

/// gnuplot data: one row per budget with the cut rate of each strategy,
/// then its local cut rate. Budgets a strategy cannot plan give `NaN`.
pub fn curve_dat(
    strategies: &[AnalyzerStrategy],
    rows: &[(u32, Vec<Option<StrategyDoc>>)],
) -> String {
    let names: Vec<String> = strategies.iter().map(|s| s.to_string()).collect();
    let mut out = format!("# {METRIC_LABEL} versus tile budget\n# budget");
    for n in &names {
        out.push_str(&format!(" {n}"));
    }
    for n in &names {
        out.push_str(&format!(" {n}_local"));
    }
    out.push('\n');
    for (budget, per) in rows {
        out.push_str(&budget.to_string());
        let cell = |v: Option<f64>| v.map_or_else(|| " NaN".to_owned(), |x| format!(" {x}"));
        for s in per {
            out.push_str(&cell(s.as_ref().map(|s| s.cut_rate)));
        }
        for s in per {
            out.push_str(&cell(s.as_ref().map(|s| s.local_cut_rate)));
        }
        out.push('\n');
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
