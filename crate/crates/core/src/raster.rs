//! Grayscale stimuli, binarization and figure-pixel extraction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{FigureError, Point, PointSet};

/// Binarization level used when none is configured.
pub const DEFAULT_THRESHOLD: u8 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageError {
    ZeroDimension,
    SizeMismatch { expected: usize, actual: usize },
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::ZeroDimension => f.write_str("image has a zero dimension"),
            ImageError::SizeMismatch { expected, actual } => {
                write!(f, "pixel buffer holds {actual} values, expected {expected}")
            }
        }
    }
}

impl core::error::Error for ImageError {}

/// Row-major 8-bit luminance grid; 0 is black, 255 white.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let expected = width * height;
        if pixels.len() != expected {
            return Err(ImageError::SizeMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        GrayImage::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> Option<u8> {
        (x < self.width && y < self.height).then(|| self.pixels[y * self.width + x])
    }
}

impl fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

/// Figure/background mask with the dimensions of its source image.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl BinaryImage {
    /// Builds a mask from row-major membership flags.
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        if mask.len() != width * height {
            return Err(ImageError::SizeMismatch {
                expected: width * height,
                actual: mask.len(),
            });
        }
        Ok(BinaryImage {
            width,
            height,
            mask,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_foreground(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && self.mask[y * self.width + x]
    }

    pub fn foreground_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Renders foreground as 0 and background as 255.
    pub fn to_gray(&self) -> GrayImage {
        GrayImage {
            width: self.width,
            height: self.height,
            pixels: self.mask.iter().map(|&m| if m { 0 } else { 255 }).collect(),
        }
    }

    /// Iterates `(x, y)` of foreground cells in row-major order.
    pub fn foreground(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let width = self.width;
        self.mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(move |(i, _)| (i % width, i / width))
    }
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("foreground", &self.foreground_count())
            .finish()
    }
}

/// Marks a cell as figure iff its intensity is strictly below `threshold`.
pub fn binarize(img: &GrayImage, threshold: u8) -> BinaryImage {
    BinaryImage {
        width: img.width,
        height: img.height,
        mask: img.pixels.iter().map(|&v| v < threshold).collect(),
    }
}

/// One point per foreground cell at `(column, row)`.
pub fn extract_points(bin: &BinaryImage) -> Result<PointSet, FigureError> {
    let points: Vec<Point> = bin
        .foreground()
        .map(|(x, y)| Point::new(x as f64, y as f64))
        .collect();
    match points.len() {
        0 => Err(FigureError::EmptyFigure),
        1 => Err(FigureError::DegenerateFigure),
        _ => Ok(PointSet::new(points)),
    }
}
