//! Grayscale image encryption built from a chaotic logistic map and DNA-rule
//! encoding, plus the analysis metrics used to evaluate it.
//!
//! The crate is `no_std` (alloc required). All operations are pure and
//! deterministic: the same key, parameters, and input always produce
//! bit-identical output, which is what makes decryption on another machine
//! possible. File formats and the command-line frontend live in the
//! companion `chaodna` crate.
//!
//! Pipeline overview:
//!
//! 1. A 32-hex-character key seeds three logistic-map streams through
//!    disjoint 32-bit windows ([`key_schedule`]).
//! 2. The main stream is quantized to bytes and XORed into the plaintext
//!    ([`chaos`], the confusion stage).
//! 3. A rule stream picks one of eight DNA encodings per pixel; the confused
//!    image and a key image are encoded, XORed in the DNA domain, and
//!    decoded back to bytes ([`dna`], [`cipher`]).
//! 4. [`metrics`] quantifies the result: PSNR, SSIM, histogram chi-square,
//!    and Shannon entropy.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chaos;
pub mod cipher;
pub mod dna;
pub mod image;
pub mod key_schedule;
pub mod metrics;

pub use chaos::{bifurcation_scan, ChaosParams, Keystream};
pub use cipher::{CipherConfig, CipherEnvelope, CipherMode, KeyImageSource};
pub use image::GrayImage;
pub use key_schedule::{Key128, StreamRole};
pub use metrics::{CompareReport, HistogramReport, Psnr};
