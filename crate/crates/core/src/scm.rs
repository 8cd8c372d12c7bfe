//! Scale compression: detailed-level tokens are scored by how much attention
//! the adaptive, global and text tokens pay them, and only the top-K survive.
//!
//! Queries are `cat(V_a, V_g, T_t)`, keys are `V_d`; both get a sinusoidal
//! position encoding over their own token index before the scaled dot
//! product. Softmax runs row-wise in `f64` with max subtraction, and the
//! per-key weight is the mean of its column.

use alloc::vec::Vec;

use crate::encoder::{LevelTag, TokenMatrix};
use crate::{Error, Result};

/// Sinusoidal position encoding, `len × channels` row-major.
///
/// `pe[i][2j] = sin(i / 10000^(2j/C))`, `pe[i][2j+1] = cos(…)`.
pub fn positional_encoding(len: usize, channels: usize) -> Result<Vec<f64>> {
    if channels == 0 || !channels.is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "position encoding needs an even channel count",
        ));
    }
    let inv_freq: Vec<f64> = (0..channels / 2)
        .map(|j| 1.0 / libm::pow(10000.0, (2 * j) as f64 / channels as f64))
        .collect();
    let mut out = Vec::with_capacity(len * channels);
    for i in 0..len {
        for &f in &inv_freq {
            let a = i as f64 * f;
            out.push(libm::sin(a));
            out.push(libm::cos(a));
        }
    }
    Ok(out)
}

/// Dense `rows × cols` row-major `f64` matrix used internally.
#[derive(Debug, Clone, PartialEq)]
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Dense {
    fn stack(parts: &[&TokenMatrix]) -> Self {
        let cols = parts[0].channels();
        let data: Vec<f64> = parts
            .iter()
            .flat_map(|m| m.as_slice().iter().map(|&v| f64::from(v)))
            .collect();
        Self {
            rows: data.len() / cols,
            cols,
            data,
        }
    }

    fn add_position(&mut self) -> Result<()> {
        let pe = positional_encoding(self.rows, self.cols)?;
        self.data.iter_mut().zip(pe).for_each(|(v, p)| *v += p);
        Ok(())
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn matmul(&self, rhs: &Dense) -> Dense {
        let mut data = alloc::vec![0.0; self.rows * rhs.cols];
        for i in 0..self.rows {
            let out = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                for (o, &b) in out.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Dense {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    /// Row-softmax of `self · otherᵀ · scale`.
    fn attention(&self, keys: &Dense, scale: f64) -> Dense {
        let mut data = Vec::with_capacity(self.rows * keys.rows);
        for i in 0..self.rows {
            let q = self.row(i);
            let start = data.len();
            data.extend((0..keys.rows).map(|j| dot(q, keys.row(j)) * scale));
            softmax_in_place(&mut data[start..]);
        }
        Dense {
            rows: self.rows,
            cols: keys.rows,
            data,
        }
    }

    fn column_means(&self) -> Vec<f64> {
        let mut sums = alloc::vec![0.0; self.cols];
        for i in 0..self.rows {
            sums.iter_mut().zip(self.row(i)).for_each(|(s, v)| *s += v);
        }
        let n = self.rows as f64;
        sums.into_iter().map(|s| s / n).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn softmax_in_place(row: &mut [f64]) {
    let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut total = 0.0;
    for v in row.iter_mut() {
        *v = libm::exp(*v - max);
        total += *v;
    }
    row.iter_mut().for_each(|v| *v /= total);
}

/// Optional query and key projections, each `channels × out_dim` row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QkProjection {
    channels: usize,
    out_dim: usize,
    query: Vec<f64>,
    key: Vec<f64>,
}

impl QkProjection {
    /// Validates shapes and finiteness.
    pub fn new(channels: usize, out_dim: usize, query: Vec<f64>, key: Vec<f64>) -> Result<Self> {
        if channels == 0 || out_dim == 0 {
            return Err(Error::InvalidArgument(
                "projection dimensions must be positive",
            ));
        }
        for m in [&query, &key] {
            if m.len() != channels * out_dim {
                return Err(Error::DimensionMismatch {
                    what: "projection buffer length",
                    expected: channels * out_dim,
                    found: m.len(),
                });
            }
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument("projection entries must be finite"));
            }
        }
        Ok(Self {
            channels,
            out_dim,
            query,
            key,
        })
    }

    /// Output dimension `D`.
    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    fn as_dense(&self, m: &[f64]) -> Dense {
        Dense {
            rows: self.channels,
            cols: self.out_dim,
            data: m.to_vec(),
        }
    }
}

/// Scoring switches.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScoreOptions<'a> {
    /// Skip the sinusoidal position encoding on queries and keys.
    pub disable_pe: bool,
    /// Query/key projections; identity when absent.
    pub projection: Option<&'a QkProjection>,
}

/// Cross-scale attention map and per-key weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionScores {
    /// Query count, `L2 + L3 + T`.
    pub queries: usize,
    /// Key count, `L1`.
    pub keys: usize,
    /// `queries × keys` row-stochastic matrix, row-major.
    pub matrix: Vec<f64>,
    /// Column means of `matrix`, one per detailed token.
    pub weights: Vec<f64>,
}

impl AttentionScores {
    /// Attention row `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.matrix[i * self.keys..(i + 1) * self.keys]
    }
}

fn check_inputs(parts: &[&TokenMatrix]) -> Result<usize> {
    let c = parts[0].channels();
    for m in parts {
        if m.channels() != c {
            return Err(Error::DimensionMismatch {
                what: "token channel dimension",
                expected: c,
                found: m.channels(),
            });
        }
    }
    Ok(c)
}

/// Scores each detailed token by the attention the adaptive, global and text
/// tokens pay it.
pub fn score(
    detailed: &TokenMatrix,
    adaptive: &TokenMatrix,
    global: &TokenMatrix,
    text: &TokenMatrix,
    opts: ScoreOptions<'_>,
) -> Result<AttentionScores> {
    let c = check_inputs(&[detailed, adaptive, global, text])?;
    let mut q = Dense::stack(&[adaptive, global, text]);
    let mut k = Dense::stack(&[detailed]);
    if !opts.disable_pe {
        q.add_position()?;
        k.add_position()?;
    }
    let dim = match opts.projection {
        Some(p) => {
            if p.channels != c {
                return Err(Error::DimensionMismatch {
                    what: "projection input dimension",
                    expected: c,
                    found: p.channels,
                });
            }
            q = q.matmul(&p.as_dense(&p.query));
            k = k.matmul(&p.as_dense(&p.key));
            p.out_dim
        }
        None => c,
    };
    let attn = q.attention(&k, 1.0 / libm::sqrt(dim as f64));
    let weights = attn.column_means();
    Ok(AttentionScores {
        queries: attn.rows,
        keys: attn.cols,
        matrix: attn.data,
        weights,
    })
}

/// `max(1, round((1 - drop_ratio) · len))`.
pub fn kept_count(len: usize, drop_ratio: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&drop_ratio) {
        return Err(Error::InvalidArgument("drop ratio must be in [0, 1)"));
    }
    Ok((libm::round((1.0 - drop_ratio) * len as f64) as usize).clamp(1, len))
}

/// Indices of the `k` largest weights, smaller index first among equals,
/// returned in ascending order.
pub fn top_k(weights: &[f64], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}

/// Detailed tokens surviving compression.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionResult {
    /// Kept positions in the original detailed sequence, ascending.
    pub kept_indices: Vec<usize>,
    /// The kept tokens, original order preserved.
    pub tokens: TokenMatrix,
    /// Requested drop ratio.
    pub drop_ratio: f64,
    /// Detailed length before compression, `L1`.
    pub original_len: usize,
}

impl CompressionResult {
    /// `K`.
    pub fn kept(&self) -> usize {
        self.kept_indices.len()
    }

    /// Fraction of tokens kept, `K / L1`.
    pub fn keep_ratio(&self) -> f64 {
        self.kept() as f64 / self.original_len as f64
    }
}

/// Keeps the top-K detailed tokens by attention weight.
pub fn compress(
    detailed: &TokenMatrix,
    scores: &AttentionScores,
    drop_ratio: f64,
) -> Result<CompressionResult> {
    compress_by_weights(detailed, &scores.weights, drop_ratio)
}

/// [`compress`] over an arbitrary per-token weight vector.
pub fn compress_by_weights(
    detailed: &TokenMatrix,
    weights: &[f64],
    drop_ratio: f64,
) -> Result<CompressionResult> {
    if weights.len() != detailed.len() {
        return Err(Error::DimensionMismatch {
            what: "weight vector length",
            expected: detailed.len(),
            found: weights.len(),
        });
    }
    let k = kept_count(detailed.len(), drop_ratio)?;
    let kept_indices = top_k(weights, k);
    let data = kept_indices
        .iter()
        .flat_map(|&i| detailed.row(i).iter().copied())
        .collect();
    let tokens = TokenMatrix::new(k, detailed.channels(), data, LevelTag::Detailed)?;
    Ok(CompressionResult {
        kept_indices,
        tokens,
        drop_ratio,
        original_len: detailed.len(),
    })
}

/// Token sequence handed to the language model.
#[derive(Debug, Clone, PartialEq)]
pub struct LlmInput {
    /// Channel dimension.
    pub channels: usize,
    /// `len × channels` row-major.
    pub data: Vec<f32>,
    /// Segment tags and lengths in sequence order.
    pub segments: Vec<(LevelTag, usize)>,
}

impl LlmInput {
    /// Total token count.
    pub fn len(&self) -> usize {
        self.segments.iter().map(|s| s.1).sum()
    }

    /// True when there are no tokens.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Concatenates `[compressed detailed, V_a, V_g, T_t]`.
pub fn assemble_llm_input(
    compressed: &CompressionResult,
    adaptive: &TokenMatrix,
    global: &TokenMatrix,
    text: &TokenMatrix,
) -> Result<LlmInput> {
    let parts = [&compressed.tokens, adaptive, global, text];
    let channels = check_inputs(&parts)?;
    Ok(LlmInput {
        channels,
        data: parts
            .iter()
            .flat_map(|m| m.as_slice().iter().copied())
            .collect(),
        segments: parts.iter().map(|m| (m.tag(), m.len())).collect(),
    })
}

/// Naive FastV-style reference: self-attention over the whole concatenated
/// sequence with identity projections, scored after `k_layer - 1` rounds of
/// attention mixing. Returns the column-mean weight of every visual token,
/// in sequence order.
pub fn fastv_baseline_score(
    parts: &[&TokenMatrix],
    k_layer: usize,
    disable_pe: bool,
) -> Result<Vec<f64>> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("no tokens to score"));
    }
    if k_layer == 0 {
        return Err(Error::InvalidArgument("layer index must be at least 1"));
    }
    let c = check_inputs(parts)?;
    let mut hidden = Dense::stack(parts);
    if !disable_pe {
        hidden.add_position()?;
    }
    let scale = 1.0 / libm::sqrt(c as f64);
    for _ in 1..k_layer {
        hidden = hidden.attention(&hidden, scale).matmul(&hidden);
    }
    let weights = hidden.attention(&hidden, scale).column_means();
    let visual = parts
        .iter()
        .flat_map(|m| core::iter::repeat_n(m.tag().is_visual(), m.len()));
    Ok(weights
        .into_iter()
        .zip(visual)
        .filter_map(|(w, v)| v.then_some(w))
        .collect())
}
