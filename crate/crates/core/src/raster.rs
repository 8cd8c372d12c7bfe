//! RGB rasters, deterministic resizing and tile extraction.

use alloc::vec;
use alloc::vec::Vec;

use crate::plan::{Dims, Level, LevelName, PyramidPlan, Rect};
use crate::{Error, Result};

/// Samples per pixel.
pub const CHANNELS: usize = 3;

/// Row-major 8-bit RGB image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RasterImage {
    /// Wraps a sample buffer of `width × height × 3` bytes.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("image dimensions must be positive"));
        }
        let expected = width as usize * height as usize * CHANNELS;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "sample buffer length",
                expected,
                found: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Image filled with one colour.
    pub fn filled(width: u32, height: u32, rgb: [u8; 3]) -> Result<Self> {
        let data = rgb.repeat(width as usize * height as usize);
        Self::from_raw(width, height, data)
    }

    /// Width in pixels.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Height in pixels.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// `(width, height)`.
    pub fn dims(&self) -> Dims {
        Dims::new(self.width, self.height)
    }

    /// Raw samples.
    pub fn as_raw(&self) -> &[u8] {
        &self.data
    }

    /// Consumes the image, returning its samples.
    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    /// RGB triple at `(x, y)`.
    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = (y as usize * self.width as usize + x as usize) * CHANNELS;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    fn row(&self, y: u32) -> &[u8] {
        let stride = self.width as usize * CHANNELS;
        &self.data[y as usize * stride..(y as usize + 1) * stride]
    }
}

/// Source sample position for one output coordinate, as an integer base
/// index plus a fractional weight over a fixed denominator.
#[derive(Debug, Clone, Copy)]
struct Tap {
    lo: usize,
    hi: usize,
    frac: u64,
}

/// Half-pixel-centred taps: output `d` samples source position
/// `(d + 0.5)·src/dst − 0.5`, clamped to the edge pixels. The fraction is
/// exact over the denominator `2·dst`.
fn taps(src: u32, dst: u32) -> Vec<Tap> {
    let den = 2 * i64::from(dst);
    (0..i64::from(dst))
        .map(|d| {
            let num = (2 * d + 1) * i64::from(src) - i64::from(dst);
            let (lo, frac) = if num <= 0 {
                (0, 0)
            } else {
                (num / den, num % den)
            };
            let last = i64::from(src) - 1;
            let (lo, frac) = if lo >= last { (last, 0) } else { (lo, frac) };
            let hi = (lo + 1).min(last);
            Tap {
                lo: lo as usize,
                hi: hi as usize,
                frac: frac as u64,
            }
        })
        .collect()
}

/// `num / den` rounded to nearest, ties to even.
fn div_round_half_even(num: u64, den: u64) -> u64 {
    let q = num / den;
    let r = num % den;
    match (2 * r).cmp(&den) {
        core::cmp::Ordering::Less => q,
        core::cmp::Ordering::Greater => q + 1,
        core::cmp::Ordering::Equal => q + (q & 1),
    }
}

/// Bilinear resize with half-pixel centres and edge clamping.
///
/// Every output sample is the exact rational bilinear value rounded half to
/// even, computed in integers, so results do not depend on the platform's
/// floating-point behaviour.
pub fn resize(img: &RasterImage, target: Dims) -> Result<RasterImage> {
    if target.w == 0 || target.h == 0 {
        return Err(Error::InvalidArgument("resize target must be positive"));
    }
    if target == img.dims() {
        return Ok(img.clone());
    }
    let xt = taps(img.width, target.w);
    let yt = taps(img.height, target.h);
    let dx = 2 * u64::from(target.w);
    let dy = 2 * u64::from(target.h);
    let den = dx * dy;

    let mut out = vec![0u8; target.w as usize * target.h as usize * CHANNELS];
    for (oy, ty) in out.chunks_exact_mut(target.w as usize * CHANNELS).zip(&yt) {
        let top = img.row(ty.lo as u32);
        let bottom = img.row(ty.hi as u32);
        let wy1 = ty.frac;
        let wy0 = dy - wy1;
        for (px, tx) in oy.chunks_exact_mut(CHANNELS).zip(&xt) {
            let wx1 = tx.frac;
            let wx0 = dx - wx1;
            for (ch, sample) in px.iter_mut().enumerate() {
                let at = |row: &[u8], x: usize| u64::from(row[x * CHANNELS + ch]);
                let acc = (at(top, tx.lo) * wx0 + at(top, tx.hi) * wx1) * wy0
                    + (at(bottom, tx.lo) * wx0 + at(bottom, tx.hi) * wx1) * wy1;
                *sample = div_round_half_even(acc, den) as u8;
            }
        }
    }
    RasterImage::from_raw(target.w, target.h, out)
}

/// Copies `rect` out of `img`.
pub fn crop(img: &RasterImage, rect: Rect) -> Result<RasterImage> {
    if rect.w == 0 || rect.h == 0 || rect.x + rect.w > img.width || rect.y + rect.h > img.height {
        return Err(Error::InvalidArgument("crop rectangle outside the image"));
    }
    let span = rect.w as usize * CHANNELS;
    let x0 = rect.x as usize * CHANNELS;
    let mut data = Vec::with_capacity(span * rect.h as usize);
    for y in rect.y..rect.y + rect.h {
        data.extend_from_slice(&img.row(y)[x0..x0 + span]);
    }
    RasterImage::from_raw(rect.w, rect.h, data)
}

/// One extracted tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    /// Position in the level's row-major tile order.
    pub index: usize,
    /// Tile row.
    pub row: usize,
    /// Tile column.
    pub col: usize,
    /// Source rectangle on the resized canvas.
    pub rect: Rect,
    /// Pixels.
    pub image: RasterImage,
}

/// Tiles of one level, in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileSet {
    /// Level the tiles came from.
    pub level: LevelName,
    /// Tiles, row-major.
    pub tiles: Vec<Tile>,
}

/// Crops every tile of `level` from an image already resized to
/// `level.resized`.
pub fn crop_level(resized: &RasterImage, level: &Level) -> Result<TileSet> {
    if resized.dims() != level.resized {
        return Err(Error::InvalidArgument(
            "canvas does not match the level's resize target",
        ));
    }
    let (_, cols) = level.tile_layout();
    let tiles = level
        .tiles
        .iter()
        .enumerate()
        .map(|(index, &rect)| {
            Ok(Tile {
                index,
                row: index / cols,
                col: index % cols,
                rect,
                image: crop(resized, rect)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TileSet {
        level: level.name,
        tiles,
    })
}

/// Resizes `img` for each plan level and cuts out its tiles.
pub fn crop_tiles(img: &RasterImage, plan: &PyramidPlan) -> Result<Vec<TileSet>> {
    if img.dims() != plan.input {
        return Err(Error::InvalidArgument(
            "image size does not match the plan input",
        ));
    }
    plan.levels
        .iter()
        .map(|level| crop_level(&resize(img, level.resized)?, level))
        .collect()
}

/// Pastes tiles back onto a canvas of size `canvas`; later tiles overwrite
/// earlier ones where they overlap.
pub fn assemble_tiles(set: &TileSet, canvas: Dims) -> Result<RasterImage> {
    let mut data = vec![0u8; canvas.w as usize * canvas.h as usize * CHANNELS];
    let stride = canvas.w as usize * CHANNELS;
    for tile in &set.tiles {
        let r = tile.rect;
        if r.x + r.w > canvas.w || r.y + r.h > canvas.h {
            return Err(Error::InvalidArgument("tile lies outside the canvas"));
        }
        let span = r.w as usize * CHANNELS;
        for ty in 0..r.h {
            let dst = (r.y + ty) as usize * stride + r.x as usize * CHANNELS;
            data[dst..dst + span].copy_from_slice(tile.image.row(ty));
        }
    }
    RasterImage::from_raw(canvas.w, canvas.h, data)
}
