//! Data-parallel drivers. Results are collected in input order, so output
//! does not depend on the thread count.

use cip_core::encoder::{Encoder, TokenMatrix};
use cip_core::plan::{BaselineOptions, Dims, PyramidPlan};
use cip_core::raster::{crop, resize, RasterImage, Tile, TileSet};
use cip_core::sawtooth::{analyze, generate_scene, AnalyzerStrategy, SawtoothReport};
use rayon::prelude::*;

use crate::CliError;

/// Parallel counterpart of [`cip_core::raster::crop_tiles`].
pub fn crop_tiles(img: &RasterImage, plan: &PyramidPlan) -> Result<Vec<TileSet>, CliError> {
    if img.dims() != plan.input {
        return Err(
            cip_core::Error::InvalidArgument("image size does not match the plan input").into(),
        );
    }
    plan.levels
        .par_iter()
        .map(|level| {
            let canvas = resize(img, level.resized)?;
            let (_, cols) = level.tile_layout();
            let tiles = level
                .tiles
                .par_iter()
                .enumerate()
                .map(|(index, &rect)| {
                    Ok(Tile {
                        index,
                        row: index / cols,
                        col: index % cols,
                        rect,
                        image: crop(&canvas, rect)?,
                    })
                })
                .collect::<Result<Vec<_>, cip_core::Error>>()?;
            Ok(TileSet {
                level: level.name,
                tiles,
            })
        })
        .collect()
}

/// Encodes every tile of `set` in parallel.
pub fn encode_tiles(encoder: &Encoder, set: &TileSet) -> Result<TokenMatrix, CliError> {
    let parts = set
        .tiles
        .par_iter()
        .map(|t| encoder.encode_tile(&t.image))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(encoder.concat(parts, set.level.into())?)
}

/// Scene batch description.
#[derive(Debug, Clone, Copy)]
pub struct SceneBatch {
    pub canvas: Dims,
    pub scenes: usize,
    pub objects: usize,
    pub size_range: (u32, u32),
    pub seed: u64,
}

/// Analyzes `scenes` seeded scenes (seeds `seed, seed+1, …`) and merges the
/// counts in seed order.
pub fn analyze_batch(
    batch: SceneBatch,
    strategies: &[AnalyzerStrategy],
    budget: u32,
    tile_side: u32,
    opts: &BaselineOptions,
) -> Result<SawtoothReport, CliError> {
    if batch.scenes == 0 {
        return Err(CliError::Usage("at least one scene is required".into()));
    }
    let reports = (0..batch.scenes as u64)
        .into_par_iter()
        .map(|i| {
            let scene = generate_scene(
                batch.canvas,
                batch.objects,
                batch.size_range,
                batch.seed.wrapping_add(i),
            )?;
            analyze(&scene, strategies, budget, tile_side, opts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut iter = reports.into_iter();
    let mut total = iter.next().expect("at least one scene");
    for r in iter {
        total.merge(&r)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cip_core::encoder::EncoderConfig;
    use cip_core::plan::{plan_cip, Strategy};

    #[test]
    fn matches_sequential_core() {
        let data = (0..97 * 61 * 3).map(|i| (i * 7 % 251) as u8).collect();
        let img = RasterImage::from_raw(97, 61, data).unwrap();
        let plan = plan_cip(img.dims(), 24, 28).unwrap();
        let par = crop_tiles(&img, &plan).unwrap();
        assert_eq!(par, cip_core::raster::crop_tiles(&img, &plan).unwrap());
        let enc = Encoder::new(EncoderConfig {
            patch: 7,
            downsample: 2,
            channels: 4,
            seed: 1,
        })
        .unwrap();
        for set in &par {
            assert_eq!(
                encode_tiles(&enc, set).unwrap(),
                enc.encode_tiles(set).unwrap()
            );
        }
    }

    #[test]
    fn batch_is_thread_count_independent() {
        let batch = SceneBatch {
            canvas: Dims::new(2000, 1500),
            scenes: 6,
            objects: 40,
            size_range: (5, 90),
            seed: 4,
        };
        let strategies = [
            AnalyzerStrategy::Plan(Strategy::Cip),
            AnalyzerStrategy::Plan(Strategy::Dynamic),
        ];
        let run = |n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .unwrap()
                .install(|| {
                    analyze_batch(batch, &strategies, 24, 448, &BaselineOptions::default()).unwrap()
                })
        };
        assert_eq!(run(1), run(4));
        assert_eq!(run(1).scenes, 6);
    }
}
