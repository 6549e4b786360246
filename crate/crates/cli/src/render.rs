//! PGM renders of analysis data: histogram bar charts and bifurcation
//! density plots.

use chaodna_core::metrics::HistogramReport;
use chaodna_core::GrayImage;

/// Renders a 256-bin histogram as black bars on white, two pixels per bin
/// (512 x height). Bars are scaled so the fullest bin spans the full height.
pub fn render_histogram(report: &HistogramReport, height: u32) -> GrayImage {
    let height = height.max(1);
    let width = 512u32;
    let max = report.counts.iter().copied().max().unwrap_or(0).max(1);
    let mut pixels = vec![255u8; (width * height) as usize];
    for (bin, &count) in report.counts.iter().enumerate() {
        let bar = (count * height as u64 / max) as u32;
        for y in (height - bar)..height {
            let row = y as usize * width as usize;
            pixels[row + bin * 2] = 0;
            pixels[row + bin * 2 + 1] = 0;
        }
    }
    GrayImage::new(width, height, pixels).expect("render dimensions are positive")
}

/// Renders bifurcation-scan points as a density plot, white on black.
/// Columns map u over [u_min, u_max], rows map p over [0, 1] with p = 1 at
/// the top.
pub fn render_bifurcation(
    points: &[(f64, f64)],
    width: u32,
    height: u32,
    u_min: f64,
    u_max: f64,
) -> GrayImage {
    let width = width.max(1);
    let height = height.max(1);
    let mut counts = vec![0u32; (width * height) as usize];
    let span = u_max - u_min;
    for &(u, p) in points {
        if !(u_min..=u_max).contains(&u) || !(0.0..=1.0).contains(&p) {
            continue;
        }
        let x = (((u - u_min) / span) * (width - 1) as f64) as u32;
        let y = ((1.0 - p) * (height - 1) as f64) as u32;
        counts[y as usize * width as usize + x as usize] += 1;
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    let pixels = counts
        .iter()
        .map(|&c| {
            if c == 0 {
                0
            } else {
                // floor of 55 keeps sparse attractor points visible
                (55 + (200 * c as u64 / max as u64)) as u8
            }
        })
        .collect();
    GrayImage::new(width, height, pixels).expect("render dimensions are positive")
}
