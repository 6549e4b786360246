//! The grayscale image carrier, luma conversion, and nearest-neighbor resize.

use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageError {
    /// Dimensions must be positive.
    ZeroDimension,
    /// Pixel buffer length does not match width * height.
    PixelCount { expected: u64, got: usize },
    /// Color planes disagree in length.
    PlaneMismatch,
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::ZeroDimension => write!(f, "image dimensions must be positive"),
            ImageError::PixelCount { expected, got } => {
                write!(f, "expected {expected} pixels, got {got}")
            }
            ImageError::PlaneMismatch => write!(f, "color planes differ in length"),
        }
    }
}

impl core::error::Error for ImageError {}

/// An 8-bit grayscale image: row-major pixels, length width * height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let expected = width as u64 * height as u64;
        if pixels.len() as u64 != expected {
            return Err(ImageError::PixelCount {
                expected,
                got: pixels.len(),
            });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let len = width as usize * height as usize;
        Ok(GrayImage {
            width,
            height,
            pixels: alloc::vec![value; len],
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn same_dims(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// Converts planar RGB to grayscale with the conventional luma weights:
/// gray = round(0.299 r + 0.587 g + 0.114 b), clamped to 0..255.
pub fn to_gray(
    r: &[u8],
    g: &[u8],
    b: &[u8],
    width: u32,
    height: u32,
) -> Result<GrayImage, ImageError> {
    if r.len() != g.len() || g.len() != b.len() {
        return Err(ImageError::PlaneMismatch);
    }
    let expected = width as u64 * height as u64;
    if r.len() as u64 != expected {
        return Err(ImageError::PixelCount {
            expected,
            got: r.len(),
        });
    }
    let pixels = r
        .iter()
        .zip(g)
        .zip(b)
        .map(|((&r, &g), &b)| {
            let luma = 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64;
            (luma + 0.5).clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

/// Nearest-neighbor resize: source index = floor(dst_i * src_dim / dst_dim).
pub fn resize_nn(img: &GrayImage, width: u32, height: u32) -> Result<GrayImage, ImageError> {
    if width == 0 || height == 0 {
        return Err(ImageError::ZeroDimension);
    }
    if width == img.width && height == img.height {
        return Ok(img.clone());
    }
    let mut pixels = Vec::with_capacity(width as usize * height as usize);
    for dy in 0..height as u64 {
        let sy = (dy * img.height as u64 / height as u64) as u32;
        for dx in 0..width as u64 {
            let sx = (dx * img.width as u64 / width as u64) as u32;
            pixels.push(img.get(sx, sy));
        }
    }
    GrayImage::new(width, height, pixels)
}
