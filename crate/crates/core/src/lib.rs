//! Model-free input pipeline for multi-scale cropping of high-resolution
//! images.
//!
//! The crate covers four stages, all pure and allocation-only:
//!
//! * [`ratio`] and [`plan`]: candidate tile grids, grouping into
//!   detailed/adaptive/global pools and selection of a complementary pyramid
//!   whose adaptive crop lines avoid the detailed ones.
//! * [`raster`]: exact integer bilinear resize and tile extraction.
//! * [`encoder`] and [`scm`]: a deterministic stand-in token encoder and the
//!   cross-scale attention pruning of detailed-level tokens.
//! * [`sawtooth`]: synthetic scenes and crop-boundary cut statistics.
//!
//! IO, file formats and the command line live in the companion `cip` crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod encoder;
pub mod plan;
pub mod raster;
pub mod ratio;
pub mod sawtooth;
pub mod scm;

pub use self::error::{Error, Result};
pub use self::plan::{Dims, Level, LevelName, PyramidPlan, Rect, Strategy};
pub use self::ratio::AspectRatio;
