//! File formats, image IO and the command-line front end for `cip-core`.
//!
//! * [`cipt`]: the `CIPT` binary token-matrix format.
//! * [`json`]: plan, compression sidecar and report documents.
//! * [`imageio`]: PNG/JPEG loading and PNG tile output.
//! * [`par`]: rayon-backed versions of the per-tile and per-scene loops.
//! * [`cli`]: the `cip` binary.

pub mod cipt;
pub mod cli;
mod error;
pub mod imageio;
pub mod json;
pub mod par;

pub use self::error::{CliError, ExitStatus};
