//! Image quality and histogram statistics: PSNR, SSIM, chi-square
//! uniformity, and Shannon entropy.

use crate::image::GrayImage;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    /// Operand dimensions differ.
    Shape { left: (u32, u32), right: (u32, u32) },
    /// SSIM needs at least one 8x8 window.
    TooSmall { width: u32, height: u32 },
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::Shape { left, right } => write!(
                f,
                "image dimensions differ: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            MetricsError::TooSmall { width, height } => {
                write!(
                    f,
                    "{width}x{height} image is smaller than the 8x8 SSIM window"
                )
            }
        }
    }
}

impl core::error::Error for MetricsError {}

/// Peak signal-to-noise ratio. Identical images have zero error, reported as
/// a distinct marker rather than a sentinel number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Infinite,
    Decibels(f64),
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Infinite => write!(f, "inf"),
            Psnr::Decibels(db) => write!(f, "{db}"),
        }
    }
}

fn check_dims(a: &GrayImage, b: &GrayImage) -> Result<(), MetricsError> {
    if !a.same_dims(b) {
        return Err(MetricsError::Shape {
            left: (a.width(), a.height()),
            right: (b.width(), b.height()),
        });
    }
    Ok(())
}

/// 10 * log10(255^2 / MSE), with the zero-MSE case marked Infinite.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<Psnr, MetricsError> {
    check_dims(a, b)?;
    let sum_sq: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    if sum_sq == 0 {
        return Ok(Psnr::Infinite);
    }
    let mse = sum_sq as f64 / a.pixel_count() as f64;
    Ok(Psnr::Decibels(10.0 * libm::log10(255.0 * 255.0 / mse)))
}

const SSIM_WINDOW: u32 = 8;
const SSIM_C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const SSIM_C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// Mean local SSIM over 8x8 sliding windows (stride 1), with the standard
/// stabilizer constants. Statistics within a window use population variance.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> Result<f64, MetricsError> {
    check_dims(a, b)?;
    if a.width() < SSIM_WINDOW || a.height() < SSIM_WINDOW {
        return Err(MetricsError::TooSmall {
            width: a.width(),
            height: a.height(),
        });
    }
    let n = (SSIM_WINDOW * SSIM_WINDOW) as f64;
    let mut total = 0.0;
    let mut windows = 0u64;
    for y0 in 0..=(a.height() - SSIM_WINDOW) {
        for x0 in 0..=(a.width() - SSIM_WINDOW) {
            let mut sum_a = 0.0;
            let mut sum_b = 0.0;
            let mut sum_aa = 0.0;
            let mut sum_bb = 0.0;
            let mut sum_ab = 0.0;
            for dy in 0..SSIM_WINDOW {
                for dx in 0..SSIM_WINDOW {
                    let pa = a.get(x0 + dx, y0 + dy) as f64;
                    let pb = b.get(x0 + dx, y0 + dy) as f64;
                    sum_a += pa;
                    sum_b += pb;
                    sum_aa += pa * pa;
                    sum_bb += pb * pb;
                    sum_ab += pa * pb;
                }
            }
            let mu_a = sum_a / n;
            let mu_b = sum_b / n;
            let var_a = sum_aa / n - mu_a * mu_a;
            let var_b = sum_bb / n - mu_b * mu_b;
            let cov = sum_ab / n - mu_a * mu_b;
            let numerator = (2.0 * mu_a * mu_b + SSIM_C1) * (2.0 * cov + SSIM_C2);
            let denominator = (mu_a * mu_a + mu_b * mu_b + SSIM_C1) * (var_a + var_b + SSIM_C2);
            total += numerator / denominator;
            windows += 1;
        }
    }
    Ok(total / windows as f64)
}

/// 256-bin histogram with its uniformity statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramReport {
    /// Exact bin counts; sums to the pixel count.
    pub counts: [u64; 256],
    /// Sum of (observed - expected)^2 / expected against the uniform
    /// expectation N/256. Small values mean a flat histogram.
    pub chi_square: f64,
    /// Shannon entropy in bits per pixel, in [0, 8].
    pub entropy_bits: f64,
}

pub fn histogram(img: &GrayImage) -> HistogramReport {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    let total = img.pixel_count() as f64;
    let expected = total / 256.0;
    let mut chi_square = 0.0;
    let mut entropy_bits = 0.0;
    for &c in &counts {
        let diff = c as f64 - expected;
        chi_square += diff * diff / expected;
        if c > 0 {
            let p = c as f64 / total;
            entropy_bits -= p * libm::log2(p);
        }
    }
    HistogramReport {
        counts,
        chi_square,
        entropy_bits,
    }
}

/// Side-by-side quality figures for one encrypt/decrypt run.
///
/// Because the pipeline is lossless, original vs decrypted always measures
/// an infinite PSNR and an SSIM of 1.0. Published figures for ciphers of
/// this construction (55.1309 dB / 0.9987 against 52.8641 dB / 0.9899 for
/// the keystream-only variant) depend on an unstated comparison pair, image,
/// and key; they are reference points, not reproducible targets.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub psnr_original_vs_decrypted: Psnr,
    pub psnr_original_vs_encrypted: Psnr,
    pub ssim_original_vs_decrypted: f64,
    pub ssim_original_vs_encrypted: f64,
    pub original_histogram: HistogramReport,
    pub encrypted_histogram: HistogramReport,
}

/// PSNR/SSIM for both comparison pairs plus the original and encrypted
/// histograms. All three images must share dimensions.
pub fn compare_report(
    original: &GrayImage,
    encrypted: &GrayImage,
    decrypted: &GrayImage,
) -> Result<CompareReport, MetricsError> {
    check_dims(original, encrypted)?;
    check_dims(original, decrypted)?;
    Ok(CompareReport {
        psnr_original_vs_decrypted: psnr(original, decrypted)?,
        psnr_original_vs_encrypted: psnr(original, encrypted)?,
        ssim_original_vs_decrypted: ssim(original, decrypted)?,
        ssim_original_vs_encrypted: ssim(original, encrypted)?,
        original_histogram: histogram(original),
        encrypted_histogram: histogram(encrypted),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn image_from_fn(width: u32, height: u32, f: impl Fn(usize) -> u8) -> GrayImage {
        let pixels = (0..width as usize * height as usize).map(f).collect();
        GrayImage::new(width, height, pixels).unwrap()
    }

    #[test]
    fn psnr_of_identical_images_is_infinite() {
        let img = image_from_fn(8, 8, |i| (i * 7) as u8);
        assert_eq!(psnr(&img, &img).unwrap(), Psnr::Infinite);
    }

    #[test]
    fn psnr_of_unit_error_matches_formula() {
        let a = image_from_fn(8, 8, |i| (i % 200) as u8);
        let b = image_from_fn(8, 8, |i| (i % 200) as u8 + 1);
        // MSE = 1 by construction: 10 * log10(255^2)
        match psnr(&a, &b).unwrap() {
            Psnr::Decibels(db) => assert!((db - 48.1308036086791).abs() < 1e-12),
            Psnr::Infinite => panic!("expected finite PSNR"),
        }
    }

    #[test]
    fn psnr_of_full_swing_is_zero() {
        let black = GrayImage::filled(8, 8, 0).unwrap();
        let white = GrayImage::filled(8, 8, 255).unwrap();
        match psnr(&black, &white).unwrap() {
            Psnr::Decibels(db) => assert_eq!(db, 0.0),
            Psnr::Infinite => panic!("expected finite PSNR"),
        }
    }

    #[test]
    fn psnr_is_symmetric() {
        let a = image_from_fn(9, 9, |i| (i * 31) as u8);
        let b = image_from_fn(9, 9, |i| (i * 17 + 5) as u8);
        assert_eq!(psnr(&a, &b).unwrap(), psnr(&b, &a).unwrap());
    }

    #[test]
    fn psnr_rejects_shape_mismatch() {
        let a = GrayImage::filled(2, 2, 0).unwrap();
        let b = GrayImage::filled(2, 3, 0).unwrap();
        assert!(matches!(psnr(&a, &b), Err(MetricsError::Shape { .. })));
    }

    #[test]
    fn ssim_of_identical_images_is_one() {
        let img = image_from_fn(12, 10, |i| (i * 13) as u8);
        assert_eq!(ssim(&img, &img).unwrap(), 1.0);
    }

    #[test]
    fn ssim_of_matching_constants_is_one() {
        let a = GrayImage::filled(8, 8, 100).unwrap();
        assert_eq!(ssim(&a, &a.clone()).unwrap(), 1.0);
    }

    #[test]
    fn ssim_is_symmetric() {
        let a = image_from_fn(10, 10, |i| (i * 29) as u8);
        let b = image_from_fn(10, 10, |i| 255 - (i * 29) as u8 / 2);
        assert_eq!(ssim(&a, &b).unwrap(), ssim(&b, &a).unwrap());
    }

    #[test]
    fn ssim_rejects_too_small_images() {
        let img = GrayImage::filled(7, 8, 0).unwrap();
        assert_eq!(
            ssim(&img, &img.clone()),
            Err(MetricsError::TooSmall {
                width: 7,
                height: 8
            })
        );
    }

    // straightforward single-window SSIM, kept independent of the library path
    fn ssim_8x8_reference(a: &[u8; 64], b: &[u8; 64]) -> f64 {
        let n = 64.0;
        let mu_a = a.iter().map(|&x| x as f64).sum::<f64>() / n;
        let mu_b = b.iter().map(|&x| x as f64).sum::<f64>() / n;
        let var_a = a
            .iter()
            .map(|&x| (x as f64 - mu_a) * (x as f64 - mu_a))
            .sum::<f64>()
            / n;
        let var_b = b
            .iter()
            .map(|&x| (x as f64 - mu_b) * (x as f64 - mu_b))
            .sum::<f64>()
            / n;
        let cov = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| (x as f64 - mu_a) * (y as f64 - mu_b))
            .sum::<f64>()
            / n;
        ((2.0 * mu_a * mu_b + SSIM_C1) * (2.0 * cov + SSIM_C2))
            / ((mu_a * mu_a + mu_b * mu_b + SSIM_C1) * (var_a + var_b + SSIM_C2))
    }

    #[test]
    fn ssim_of_negative_image_matches_reference_and_is_small() {
        let mut fa = [0u8; 64];
        for (i, p) in fa.iter_mut().enumerate() {
            *p = ((i * 53 + 19) % 256) as u8;
        }
        let fb = fa.map(|p| 255 - p);
        let a = GrayImage::new(8, 8, fa.to_vec()).unwrap();
        let b = GrayImage::new(8, 8, fb.to_vec()).unwrap();
        let got = ssim(&a, &b).unwrap();
        let expected = ssim_8x8_reference(&fa, &fb);
        assert!((got - expected).abs() < 1e-12);
        assert!(got < 0.1);
    }

    #[test]
    fn histogram_of_constant_image() {
        let n = 256u64; // 16x16
        let img = GrayImage::filled(16, 16, 42).unwrap();
        let report = histogram(&img);
        assert_eq!(report.counts[42], n);
        assert_eq!(report.counts.iter().sum::<u64>(), n);
        assert_eq!(report.entropy_bits, 0.0);
        // (N - N/256)^2 / (N/256) + 255 * (N/256) evaluates to 255 * N
        let expected = {
            let exp = n as f64 / 256.0;
            (n as f64 - exp) * (n as f64 - exp) / exp + 255.0 * exp
        };
        assert_eq!(expected, 255.0 * n as f64);
        assert!((report.chi_square - expected).abs() < 1e-9);
    }

    #[test]
    fn histogram_of_perfectly_uniform_image() {
        let img = image_from_fn(16, 16, |i| i as u8);
        let report = histogram(&img);
        assert_eq!(report.chi_square, 0.0);
        assert_eq!(report.entropy_bits, 8.0);
    }

    #[test]
    fn histogram_is_permutation_invariant() {
        let img = image_from_fn(16, 16, |i| ((i * 97 + 31) % 251) as u8);
        let mut shuffled: Vec<u8> = img.pixels().to_vec();
        // deterministic shuffle: reverse then interleave halves
        shuffled.reverse();
        let (left, right) = shuffled.split_at(128);
        let interleaved: Vec<u8> = left.iter().zip(right).flat_map(|(&a, &b)| [a, b]).collect();
        let perm = GrayImage::new(16, 16, interleaved).unwrap();
        assert_eq!(histogram(&img), histogram(&perm));
    }

    #[test]
    fn compare_report_on_lossless_roundtrip_shape() {
        let original = image_from_fn(8, 8, |i| (i * 3) as u8);
        let encrypted = image_from_fn(8, 8, |i| ((i * 151 + 7) % 256) as u8);
        let report = compare_report(&original, &encrypted, &original.clone()).unwrap();
        assert_eq!(report.psnr_original_vs_decrypted, Psnr::Infinite);
        assert_eq!(report.ssim_original_vs_decrypted, 1.0);
        assert!(matches!(
            report.psnr_original_vs_encrypted,
            Psnr::Decibels(_)
        ));
        assert_eq!(report.original_histogram, histogram(&original));
    }

    #[test]
    fn compare_report_rejects_shape_mismatch() {
        let a = GrayImage::filled(8, 8, 0).unwrap();
        let b = GrayImage::filled(8, 9, 0).unwrap();
        assert!(compare_report(&a, &b, &a.clone()).is_err());
    }
}
