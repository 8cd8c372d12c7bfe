//! `CIPT` token-matrix files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "CIPT" | u32 rank = 2 | u32 L | u32 C | L·C × f32 (row-major) | u8 level tag
//! ```

use std::fs;
use std::path::Path;

use cip_core::encoder::{LevelTag, TokenMatrix};

use crate::CliError;

/// File magic.
pub const MAGIC: &[u8; 4] = b"CIPT";
const HEADER: usize = 16;

/// Serializes `m`.
pub fn encode(m: &TokenMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER + m.as_slice().len() * 4 + 1);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&2u32.to_le_bytes());
    out.extend_from_slice(&(m.len() as u32).to_le_bytes());
    out.extend_from_slice(&(m.channels() as u32).to_le_bytes());
    for v in m.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.push(m.tag() as u8);
    out
}

fn malformed(reason: impl Into<String>) -> CliError {
    CliError::Format {
        what: "CIPT file",
        reason: reason.into(),
    }
}

fn u32_at(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
}

/// Parses a `CIPT` buffer.
pub fn decode(bytes: &[u8]) -> Result<TokenMatrix, CliError> {
    if bytes.len() < HEADER || &bytes[..4] != MAGIC {
        return Err(malformed("missing CIPT magic"));
    }
    let rank = u32_at(bytes, 4);
    if rank != 2 {
        return Err(malformed(format!("rank {rank}, expected 2")));
    }
    let len = u32_at(bytes, 8) as usize;
    let channels = u32_at(bytes, 12) as usize;
    let payload = len
        .checked_mul(channels)
        .and_then(|n| n.checked_mul(4))
        .ok_or_else(|| malformed("dimensions overflow"))?;
    if bytes.len() != HEADER + payload + 1 {
        return Err(malformed(format!(
            "length {} does not match {len}×{channels} payload",
            bytes.len()
        )));
    }
    let data = bytes[HEADER..HEADER + payload]
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let tag_byte = bytes[HEADER + payload];
    let tag = LevelTag::from_byte(tag_byte)
        .ok_or_else(|| malformed(format!("unknown level tag {tag_byte}")))?;
    TokenMatrix::new(len, channels, data, tag).map_err(|e| malformed(e.to_string()))
}

/// Reads a `CIPT` file.
pub fn read(path: &Path) -> Result<TokenMatrix, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    decode(&bytes).map_err(|e| match e {
        CliError::Format { what, reason } => CliError::Format {
            what,
            reason: format!("{}: {reason}", path.display()),
        },
        other => other,
    })
}

/// Writes `m` to `path`.
pub fn write(path: &Path, m: &TokenMatrix) -> Result<(), CliError> {
    fs::write(path, encode(m)).map_err(|e| CliError::io(path, e))
}
