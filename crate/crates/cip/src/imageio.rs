//! Image loading (PNG/JPEG, alpha dropped) and PNG output.

use std::path::Path;

use cip_core::raster::RasterImage;
use image::{ImageFormat, RgbImage};

use crate::CliError;

/// Loads any supported image as 8-bit RGB.
pub fn load_rgb(path: &Path) -> Result<RasterImage, CliError> {
    let img = image::open(path).map_err(|source| CliError::Image {
        path: path.into(),
        source,
    })?;
    let rgb = img.to_rgb8();
    let (w, h) = rgb.dimensions();
    Ok(RasterImage::from_raw(w, h, rgb.into_raw())?)
}

/// Writes `img` as PNG.
pub fn save_png(path: &Path, img: &RasterImage) -> Result<(), CliError> {
    let buf = RgbImage::from_raw(img.width(), img.height(), img.as_raw().to_vec())
        .ok_or_else(|| CliError::Internal("raster buffer does not match its dimensions".into()))?;
    buf.save_with_format(path, ImageFormat::Png)
        .map_err(|source| CliError::Image {
            path: path.into(),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_roundtrip_and_alpha_drop() {
        let dir = tempfile::tempdir().unwrap();
        let img = RasterImage::from_raw(2, 1, vec![1, 2, 3, 250, 251, 252]).unwrap();
        let p = dir.path().join("a.png");
        save_png(&p, &img).unwrap();
        assert_eq!(load_rgb(&p).unwrap(), img);

        let rgba = image::RgbaImage::from_raw(1, 1, vec![9, 8, 7, 10]).unwrap();
        let q = dir.path().join("b.png");
        rgba.save(&q).unwrap();
        assert_eq!(load_rgb(&q).unwrap().as_raw(), &[9, 8, 7]);
    }

    #[test]
    fn missing_file_is_io() {
        let err = load_rgb(Path::new("/nonexistent/x.png")).unwrap_err();
        assert_eq!(err.exit_status(), crate::ExitStatus::Io);
    }
}
