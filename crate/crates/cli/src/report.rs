//! Machine-readable (CSV) and human-readable renderings of analysis output.

use chaodna_core::metrics::CompareReport;
use std::fmt::Write;

/// One value per line as `metric,pair,value`. Values print with full f64
/// round-trip precision; an infinite PSNR prints as `inf`.
pub fn compare_csv(report: &CompareReport) -> String {
    let mut out = String::from("metric,pair,value\n");
    let _ = writeln!(
        out,
        "psnr_db,original_vs_decrypted,{}",
        report.psnr_original_vs_decrypted
    );
    let _ = writeln!(
        out,
        "psnr_db,original_vs_encrypted,{}",
        report.psnr_original_vs_encrypted
    );
    let _ = writeln!(
        out,
        "ssim,original_vs_decrypted,{}",
        report.ssim_original_vs_decrypted
    );
    let _ = writeln!(
        out,
        "ssim,original_vs_encrypted,{}",
        report.ssim_original_vs_encrypted
    );
    let _ = writeln!(
        out,
        "chi_square,original,{}",
        report.original_histogram.chi_square
    );
    let _ = writeln!(
        out,
        "chi_square,encrypted,{}",
        report.encrypted_histogram.chi_square
    );
    let _ = writeln!(
        out,
        "entropy_bits,original,{}",
        report.original_histogram.entropy_bits
    );
    let _ = writeln!(
        out,
        "entropy_bits,encrypted,{}",
        report.encrypted_histogram.entropy_bits
    );
    out
}

pub fn compare_text(report: &CompareReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "PSNR  original vs decrypted: {} dB",
        report.psnr_original_vs_decrypted
    );
    let _ = writeln!(
        out,
        "PSNR  original vs encrypted: {} dB",
        report.psnr_original_vs_encrypted
    );
    let _ = writeln!(
        out,
        "SSIM  original vs decrypted: {:.6}",
        report.ssim_original_vs_decrypted
    );
    let _ = writeln!(
        out,
        "SSIM  original vs encrypted: {:.6}",
        report.ssim_original_vs_encrypted
    );
    let _ = writeln!(
        out,
        "histogram original : chi-square {:.4}, entropy {:.4} bits",
        report.original_histogram.chi_square, report.original_histogram.entropy_bits
    );
    let _ = writeln!(
        out,
        "histogram encrypted: chi-square {:.4}, entropy {:.4} bits",
        report.encrypted_histogram.chi_square, report.encrypted_histogram.entropy_bits
    );
    out
}

/// Bifurcation points as `u,p` lines, nine significant digits each.
pub fn bifurcation_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::with_capacity(points.len() * 28 + 4);
    out.push_str("u,p\n");
    for &(u, p) in points {
        let _ = writeln!(out, "{u:.8e},{p:.8e}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chaodna_core::metrics::compare_report;
    use chaodna_core::GrayImage;

    fn sample_report() -> CompareReport {
        let original = GrayImage::new(8, 8, (0..64).map(|i| (i * 3) as u8).collect()).unwrap();
        let encrypted =
            GrayImage::new(8, 8, (0..64).map(|i| ((i * 151 + 7) % 256) as u8).collect()).unwrap();
        compare_report(&original, &encrypted, &original.clone()).unwrap()
    }

    #[test]
    fn csv_has_header_and_eight_rows() {
        let csv = compare_csv(&sample_report());
        let lines: Vec<&str> = csv.trim_end().lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "metric,pair,value");
        assert_eq!(lines[1], "psnr_db,original_vs_decrypted,inf");
        assert_eq!(lines[3], "ssim,original_vs_decrypted,1");
        assert!(lines.iter().all(|l| l.split(',').count() == 3));
    }

    #[test]
    fn text_mentions_every_metric() {
        let text = compare_text(&sample_report());
        for needle in ["PSNR", "SSIM", "chi-square", "entropy"] {
            assert!(text.contains(needle), "missing {needle}");
        }
    }

    #[test]
    fn bifurcation_csv_has_nine_significant_digits() {
        let csv = bifurcation_csv(&[(2.5, 0.5130445095326299)]);
        assert_eq!(csv, "u,p\n2.50000000e0,5.13044510e-1\n");
    }
}
