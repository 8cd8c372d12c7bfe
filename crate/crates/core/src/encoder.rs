//! Deterministic stand-in for the vision encoder and text embedding.
//!
//! Tiles become tokens by average-pooling `patch × patch` pixel blocks,
//! grouping `downsample × downsample` neighbouring blocks into one token and
//! projecting the grouped RGB means through a seeded random matrix. Only the
//! tensor shapes and determinism matter downstream.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::raster::{RasterImage, TileSet, CHANNELS};
use crate::{Error, LevelName, Result};

/// Origin of a token sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum LevelTag {
    /// Detailed-level visual tokens.
    Detailed = 0,
    /// Adaptive-level visual tokens.
    Adaptive = 1,
    /// Global-level visual tokens.
    Global = 2,
    /// Prompt tokens.
    Text = 3,
}

impl LevelTag {
    /// Decodes the on-disk tag byte.
    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(LevelTag::Detailed),
            1 => Some(LevelTag::Adaptive),
            2 => Some(LevelTag::Global),
            3 => Some(LevelTag::Text),
            _ => None,
        }
    }

    /// Whether the tokens come from an image.
    pub fn is_visual(&self) -> bool {
        !matches!(self, LevelTag::Text)
    }
}

impl From<LevelName> for LevelTag {
    fn from(l: LevelName) -> Self {
        match l {
            LevelName::Detailed => LevelTag::Detailed,
            LevelName::Adaptive => LevelTag::Adaptive,
            LevelName::Global => LevelTag::Global,
        }
    }
}

/// `len × channels` row-major token embeddings.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenMatrix {
    len: usize,
    channels: usize,
    data: Vec<f32>,
    tag: LevelTag,
}

impl TokenMatrix {
    /// Wraps `data`, checking shape and finiteness.
    pub fn new(len: usize, channels: usize, data: Vec<f32>, tag: LevelTag) -> Result<Self> {
        if len == 0 || channels == 0 {
            return Err(Error::InvalidArgument("token matrix must be non-empty"));
        }
        if data.len() != len * channels {
            return Err(Error::DimensionMismatch {
                what: "token buffer length",
                expected: len * channels,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("token entries must be finite"));
        }
        Ok(Self {
            len,
            channels,
            data,
            tag,
        })
    }

    /// Sequence length.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Channel dimension.
    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Level tag.
    pub fn tag(&self) -> LevelTag {
        self.tag
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f32] {
        &self.data
    }

    /// Token `i`.
    pub fn row(&self, i: usize) -> &[f32] {
        &self.data[i * self.channels..(i + 1) * self.channels]
    }

    /// Iterator over tokens.
    pub fn rows(&self) -> impl Iterator<Item = &[f32]> {
        self.data.chunks_exact(self.channels)
    }
}

/// Encoder geometry and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncoderConfig {
    /// Pixel block edge pooled into one patch feature.
    pub patch: u32,
    /// Patches per token along each axis.
    pub downsample: u32,
    /// Output channel dimension.
    pub channels: usize,
    /// Projection seed.
    pub seed: u64,
}

impl Default for EncoderConfig {
    fn default() -> Self {
        Self {
            patch: 14,
            downsample: 2,
            channels: 64,
            seed: 0,
        }
    }
}

impl EncoderConfig {
    /// Tokens produced per tile of edge `tile_side`.
    pub fn tokens_per_tile(&self, tile_side: u32) -> Result<usize> {
        let cell = self.patch * self.downsample;
        if self.patch == 0
            || self.downsample == 0
            || tile_side == 0
            || !tile_side.is_multiple_of(cell)
        {
            return Err(Error::InvalidArgument(
                "tile side must be divisible by patch × downsample",
            ));
        }
        let per_side = (tile_side / cell) as usize;
        Ok(per_side * per_side)
    }

    fn feature_dim(&self) -> usize {
        CHANNELS * (self.downsample * self.downsample) as usize
    }
}

/// Seeded tile encoder; the projection is shared by every tile.
#[derive(Debug, Clone)]
pub struct Encoder {
    config: EncoderConfig,
    /// `feature_dim × channels`, row-major.
    weights: Vec<f64>,
}

impl Encoder {
    /// Draws the projection matrix from `config.seed`.
    pub fn new(config: EncoderConfig) -> Result<Self> {
        if config.channels == 0 || config.patch == 0 || config.downsample == 0 {
            return Err(Error::InvalidArgument(
                "encoder dimensions must be positive",
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let weights = (0..config.feature_dim() * config.channels)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        Ok(Self { config, weights })
    }

    /// Configuration in use.
    pub fn config(&self) -> &EncoderConfig {
        &self.config
    }

    /// Largest projection weight magnitude.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().fold(0.0, |m, w| m.max(w.abs()))
    }

    /// Tokens for a single square tile, row-major over the token grid.
    pub fn encode_tile(&self, tile: &RasterImage) -> Result<Vec<f32>> {
        if tile.width() != tile.height() {
            return Err(Error::InvalidArgument("tiles must be square"));
        }
        let per_tile = self.config.tokens_per_tile(tile.width())?;
        let patch = self.config.patch;
        let ds = self.config.downsample;
        let per_side = tile.width() / (patch * ds);
        let c = self.config.channels;
        let norm = 255.0 * f64::from(patch * patch);

        let mut out = Vec::with_capacity(per_tile * c);
        let mut feat = Vec::with_capacity(self.config.feature_dim());
        for ty in 0..per_side {
            for tx in 0..per_side {
                feat.clear();
                for sy in 0..ds {
                    for sx in 0..ds {
                        let x0 = (tx * ds + sx) * patch;
                        let y0 = (ty * ds + sy) * patch;
                        let mut sum = [0u64; CHANNELS];
                        for y in y0..y0 + patch {
                            for x in x0..x0 + patch {
                                for (s, v) in sum.iter_mut().zip(tile.pixel(x, y)) {
                                    *s += u64::from(v);
                                }
                            }
                        }
                        feat.extend(sum.iter().map(|&s| s as f64 / norm));
                    }
                }
                for j in 0..c {
                    let v: f64 = feat
                        .iter()
                        .enumerate()
                        .map(|(k, f)| f * self.weights[k * c + j])
                        .sum();
                    out.push(v as f32);
                }
            }
        }
        Ok(out)
    }

    /// Encodes every tile of `set` and concatenates in tile order.
    pub fn encode_tiles(&self, set: &TileSet) -> Result<TokenMatrix> {
        let parts = set
            .tiles
            .iter()
            .map(|t| self.encode_tile(&t.image))
            .collect::<Result<Vec<_>>>()?;
        self.concat(parts, set.level.into())
    }

    /// Joins per-tile token blocks produced by [`Encoder::encode_tile`].
    pub fn concat(&self, parts: Vec<Vec<f32>>, tag: LevelTag) -> Result<TokenMatrix> {
        let data: Vec<f32> = parts.concat();
        let c = self.config.channels;
        TokenMatrix::new(data.len() / c, c, data, tag)
    }
}

/// Convenience wrapper: builds an [`Encoder`] and encodes `set`.
pub fn encode_tiles(set: &TileSet, config: EncoderConfig) -> Result<TokenMatrix> {
    Encoder::new(config)?.encode_tiles(set)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// One token per whitespace-separated word; each word's embedding depends
/// only on the word bytes and `seed`.
pub fn embed_text(prompt: &[u8], channels: usize, seed: u64) -> Result<TokenMatrix> {
    if channels == 0 {
        return Err(Error::InvalidArgument("channel dimension must be positive"));
    }
    let mut data = Vec::new();
    let mut len = 0;
    for word in prompt
        .split(|b| b.is_ascii_whitespace())
        .filter(|w| !w.is_empty())
    {
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(word) ^ seed.rotate_left(29));
        data.extend((0..channels).map(|_| rng.gen_range(-1.0f32..1.0)));
        len += 1;
    }
    if len == 0 {
        return Err(Error::InvalidArgument(
            "prompt must contain at least one word",
        ));
    }
    TokenMatrix::new(len, channels, data, LevelTag::Text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::Tile;
    use crate::Rect;
    use alloc::vec;

    fn tile_set(n: usize, side: u32) -> TileSet {
        let tiles = (0..n)
            .map(|i| {
                let data = (0..side * side * 3)
                    .map(|k| (k as usize * 31 + i * 7) as u8)
                    .collect();
                Tile {
                    index: i,
                    row: 0,
                    col: i,
                    rect: Rect {
                        x: i as u32 * side,
                        y: 0,
                        w: side,
                        h: side,
                    },
                    image: RasterImage::from_raw(side, side, data).unwrap(),
                }
            })
            .collect();
        TileSet {
            level: LevelName::Detailed,
            tiles,
        }
    }

    #[test]
    fn tokens_per_448_tile() {
        let cfg = EncoderConfig::default();
        assert_eq!(cfg.tokens_per_tile(448).unwrap(), 256);
        assert!(cfg.tokens_per_tile(450).is_err());
    }

    #[test]
    fn global_tile_length() {
        let cfg = EncoderConfig {
            channels: 8,
            ..Default::default()
        };
        let m = encode_tiles(&tile_set(1, 448), cfg).unwrap();
        assert_eq!((m.len(), m.channels()), (256, 8));
        assert_eq!(m.tag(), LevelTag::Detailed);
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let set = tile_set(2, 56);
        let cfg = EncoderConfig {
            channels: 4,
            seed: 9,
            ..Default::default()
        };
        let a = encode_tiles(&set, cfg).unwrap();
        assert_eq!(a, encode_tiles(&set, cfg).unwrap());
        let b = encode_tiles(&set, EncoderConfig { seed: 10, ..cfg }).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn text_word_count_and_locality() {
        let a = embed_text(b"what is this", 6, 1).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a, embed_text(b"what is  this", 6, 1).unwrap());
        let b = embed_text(b"what is that", 6, 1).unwrap();
        assert_eq!(a.row(0), b.row(0));
        assert_eq!(a.row(1), b.row(1));
        assert_ne!(a.row(2), b.row(2));
    }

    #[test]
    fn empty_prompt_rejected() {
        assert!(embed_text(b"", 4, 0).is_err());
        assert!(embed_text(b"  \n\t", 4, 0).is_err());
    }

    #[test]
    fn token_matrix_rejects_nan() {
        assert!(TokenMatrix::new(1, 2, vec![0.0, f32::NAN], LevelTag::Text).is_err());
        assert!(TokenMatrix::new(1, 2, vec![0.0], LevelTag::Text).is_err());
    }
}
