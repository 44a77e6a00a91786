//! Reading stimulus images and writing binary PGM.

use std::fs;
use std::path::Path;

use geomint_core::GrayImage;
use image::{DynamicImage, ImageReader};

use crate::error::{io_err, Error, Result};

/// Loads a PGM (P2 or P5), PPM or PNG file as 8-bit gray.
///
/// Color input is reduced to luma with the Rec. 601 weights
/// `0.299 R + 0.587 G + 0.114 B`, rounded to nearest. Alpha is ignored.
pub fn load_image(path: &Path) -> Result<GrayImage> {
    let image_err = |source| Error::Image {
        path: path.to_path_buf(),
        source,
    };
    let dynamic = ImageReader::open(path)
        .map_err(io_err(path))?
        .with_guessed_format()
        .map_err(io_err(path))?
        .decode()
        .map_err(image_err)?;
    Ok(to_gray(&dynamic))
}

pub fn to_gray(dynamic: &DynamicImage) -> GrayImage {
    let (width, height) = (dynamic.width() as usize, dynamic.height() as usize);
    let pixels = if dynamic.color().has_color() {
        dynamic
            .to_rgb8()
            .pixels()
            .map(|p| {
                let [r, g, b] = p.0.map(u32::from);
                ((299 * r + 587 * g + 114 * b + 500) / 1000) as u8
            })
            .collect()
    } else {
        dynamic.to_luma8().into_raw()
    };
    GrayImage::new(width, height, pixels).expect("decoder returned a consistent buffer")
}

/// Binary (P5) PGM bytes.
pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn save_pgm(path: &Path, img: &GrayImage) -> Result<()> {
    fs::write(path, encode_pgm(img)).map_err(io_err(path))
}
