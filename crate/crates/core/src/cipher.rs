//! The encryption and decryption pipelines, and the ciphertext envelope.
//!
//! Encryption: a chaotic keystream is XORed into the plaintext (the confusion
//! stage), the result is DNA-encoded under a per-pixel rule stream, a key
//! image is encoded under the same rules, both planes are XORed in the DNA
//! domain, and the result is decoded back to bytes. Decryption applies the
//! same stages in reverse; every stage is an exact involution or bijection,
//! so decrypt(encrypt(p)) == p pixel for pixel.

use crate::chaos::{self, ChaosError, ChaosParams};
use crate::dna::{self, DnaError};
use crate::image::{resize_nn, GrayImage, ImageError};
use crate::key_schedule::{derive_initial, Key128, StreamRole};
use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

/// Step 3's "most chaotic" bifurcation parameter.
pub const DEFAULT_U: f64 = 3.99999;
/// Iterations discarded before a keystream is used.
pub const DEFAULT_BURN_IN: u32 = 1000;

/// Which stages the cipher runs. `ChaosOnly` stops after the confusion
/// stage; it exists for side-by-side comparison with the full pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CipherMode {
    ChaosOnly,
    ChaosDna,
}

impl CipherMode {
    pub fn code(self) -> u8 {
        match self {
            CipherMode::ChaosOnly => 0,
            CipherMode::ChaosDna => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(CipherMode::ChaosOnly),
            1 => Some(CipherMode::ChaosDna),
            _ => None,
        }
    }
}

/// Where the key image comes from. `Generated` derives it from the key's
/// own window so no second secret needs transmitting; `External` uses a
/// caller-supplied grayscale image (resized to the plaintext dimensions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyImageSource {
    Generated,
    External(GrayImage),
}

/// Operational knobs. Decryption must run with a config equal to the
/// encrypting one in every field that affects the keystreams (u, burn_in,
/// key_image); mode is recorded in the envelope and honored automatically.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherConfig {
    pub u: f64,
    pub burn_in: u32,
    pub mode: CipherMode,
    pub key_image: KeyImageSource,
    pub target_dims: Option<(NonZeroU32, NonZeroU32)>,
}

impl Default for CipherConfig {
    fn default() -> Self {
        CipherConfig {
            u: DEFAULT_U,
            burn_in: DEFAULT_BURN_IN,
            mode: CipherMode::ChaosDna,
            key_image: KeyImageSource::Generated,
            target_dims: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatError {
    /// Buffer too short to hold the fixed header.
    HeaderTooShort(usize),
    BadMagic([u8; 4]),
    BadVersion(u8),
    BadMode(u8),
    /// Payload shorter than width * height.
    Truncated {
        expected: u64,
        got: u64,
    },
    /// Bytes remain after the payload.
    TrailingBytes(u64),
    ZeroDimension,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::HeaderTooShort(n) => write!(f, "envelope header needs 14 bytes, got {n}"),
            FormatError::BadMagic(m) => write!(f, "bad envelope magic {m:02x?}"),
            FormatError::BadVersion(v) => write!(f, "unsupported envelope version {v}"),
            FormatError::BadMode(m) => write!(f, "unknown cipher mode byte {m}"),
            FormatError::Truncated { expected, got } => {
                write!(f, "payload truncated: expected {expected} bytes, got {got}")
            }
            FormatError::TrailingBytes(n) => write!(f, "{n} trailing bytes after payload"),
            FormatError::ZeroDimension => write!(f, "envelope dimensions must be positive"),
        }
    }
}

impl core::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq)]
pub enum CipherError {
    Chaos(ChaosError),
    Dna(DnaError),
    Image(ImageError),
    Format(FormatError),
}

impl fmt::Display for CipherError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CipherError::Chaos(e) => write!(f, "{e}"),
            CipherError::Dna(e) => write!(f, "{e}"),
            CipherError::Image(e) => write!(f, "{e}"),
            CipherError::Format(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CipherError {}

impl From<ChaosError> for CipherError {
    fn from(e: ChaosError) -> Self {
        CipherError::Chaos(e)
    }
}

impl From<DnaError> for CipherError {
    fn from(e: DnaError) -> Self {
        CipherError::Dna(e)
    }
}

impl From<ImageError> for CipherError {
    fn from(e: ImageError) -> Self {
        CipherError::Image(e)
    }
}

impl From<FormatError> for CipherError {
    fn from(e: FormatError) -> Self {
        CipherError::Format(e)
    }
}

/// Serialized ciphertext: a fixed header plus width * height payload bytes.
///
/// Binary layout (big-endian): magic `CDN1` | version u8 | mode u8 |
/// width u32 | height u32 | payload. Trailing bytes are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherEnvelope {
    mode: CipherMode,
    width: u32,
    height: u32,
    payload: Vec<u8>,
}

impl CipherEnvelope {
    pub const MAGIC: [u8; 4] = *b"CDN1";
    pub const VERSION: u8 = 1;
    pub const HEADER_LEN: usize = 14;

    pub fn new(
        mode: CipherMode,
        width: u32,
        height: u32,
        payload: Vec<u8>,
    ) -> Result<Self, CipherError> {
        if width == 0 || height == 0 {
            return Err(FormatError::ZeroDimension.into());
        }
        let expected = width as u64 * height as u64;
        if payload.len() as u64 != expected {
            return Err(FormatError::Truncated {
                expected,
                got: payload.len() as u64,
            }
            .into());
        }
        Ok(CipherEnvelope {
            mode,
            width,
            height,
            payload,
        })
    }

    pub fn mode(&self) -> CipherMode {
        self.mode
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    /// The payload viewed as a grayscale image (for histogram analysis).
    pub fn payload_image(&self) -> GrayImage {
        GrayImage::new(self.width, self.height, self.payload.clone())
            .expect("payload length is validated at construction")
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::HEADER_LEN + self.payload.len());
        out.extend_from_slice(&Self::MAGIC);
        out.push(Self::VERSION);
        out.push(self.mode.code());
        out.extend_from_slice(&self.width.to_be_bytes());
        out.extend_from_slice(&self.height.to_be_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CipherError> {
        if bytes.len() < Self::HEADER_LEN {
            return Err(FormatError::HeaderTooShort(bytes.len()).into());
        }
        let magic = [bytes[0], bytes[1], bytes[2], bytes[3]];
        if magic != Self::MAGIC {
            return Err(FormatError::BadMagic(magic).into());
        }
        if bytes[4] != Self::VERSION {
            return Err(FormatError::BadVersion(bytes[4]).into());
        }
        let mode = CipherMode::from_code(bytes[5]).ok_or(FormatError::BadMode(bytes[5]))?;
        let width = u32::from_be_bytes([bytes[6], bytes[7], bytes[8], bytes[9]]);
        let height = u32::from_be_bytes([bytes[10], bytes[11], bytes[12], bytes[13]]);
        if width == 0 || height == 0 {
            return Err(FormatError::ZeroDimension.into());
        }
        let expected = width as u64 * height as u64;
        let got = (bytes.len() - Self::HEADER_LEN) as u64;
        if got < expected {
            return Err(FormatError::Truncated { expected, got }.into());
        }
        if got > expected {
            return Err(FormatError::TrailingBytes(got - expected).into());
        }
        Ok(CipherEnvelope {
            mode,
            width,
            height,
            payload: bytes[Self::HEADER_LEN..].to_vec(),
        })
    }
}

/// Step 1: optional nearest-neighbor resize to the configured dimensions.
/// Already-conforming input passes through unchanged.
pub fn preprocess(img: &GrayImage, cfg: &CipherConfig) -> GrayImage {
    match cfg.target_dims {
        Some((w, h)) => resize_nn(img, w.get(), h.get()).expect("target dimensions are non-zero"),
        None => img.clone(),
    }
}

fn keystream_bytes(
    key: Key128,
    role: StreamRole,
    cfg: &CipherConfig,
    count: usize,
) -> Result<Vec<u8>, ChaosError> {
    let params = ChaosParams::chaotic(cfg.u, derive_initial(key, role), cfg.burn_in)?;
    Ok(chaos::quantize_bytes(&chaos::generate(&params, count)))
}

fn rule_stream(key: Key128, cfg: &CipherConfig, count: usize) -> Result<Vec<u8>, ChaosError> {
    let params = ChaosParams::chaotic(
        cfg.u,
        derive_initial(key, StreamRole::RuleStream),
        cfg.burn_in,
    )?;
    Ok(chaos::quantize_rules(&chaos::generate(&params, count)))
}

/// The key image for Step 5: either rendered from the key's own chaotic
/// window, or a supplied image resized to (width, height).
pub fn generate_key_image(
    key: Key128,
    width: u32,
    height: u32,
    cfg: &CipherConfig,
) -> Result<GrayImage, CipherError> {
    match &cfg.key_image {
        KeyImageSource::Generated => {
            let count = width as usize * height as usize;
            let bytes = keystream_bytes(key, StreamRole::KeyImageStream, cfg, count)?;
            Ok(GrayImage::new(width, height, bytes)?)
        }
        KeyImageSource::External(img) => Ok(resize_nn(img, width, height)?),
    }
}

fn xor_bytes(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| x ^ y).collect()
}

/// Runs the full encryption pipeline on an already-preprocessed image.
pub fn encrypt(
    plain: &GrayImage,
    key: Key128,
    cfg: &CipherConfig,
) -> Result<CipherEnvelope, CipherError> {
    let (width, height) = (plain.width(), plain.height());
    let count = plain.pixel_count();

    let main = keystream_bytes(key, StreamRole::MainStream, cfg, count)?;
    let confused = xor_bytes(plain.pixels(), &main);

    let payload = match cfg.mode {
        CipherMode::ChaosOnly => confused,
        CipherMode::ChaosDna => {
            let rules = rule_stream(key, cfg, count)?;
            let confused_img = GrayImage::new(width, height, confused)?;
            let encoded = dna::encode_plane(&confused_img, &rules)?;
            let key_img = generate_key_image(key, width, height, cfg)?;
            let encoded_key = dna::encode_plane(&key_img, &rules)?;
            let mixed = dna::xor_planes(&encoded, &encoded_key)?;
            dna::decode_plane(&mixed).into_pixels()
        }
    };

    CipherEnvelope::new(cfg.mode, width, height, payload)
}

/// Inverts every encryption stage in reverse order. The mode recorded in the
/// envelope decides which stages run; cfg must match the encrypting config
/// in u, burn_in, and key image source.
pub fn decrypt(
    env: &CipherEnvelope,
    key: Key128,
    cfg: &CipherConfig,
) -> Result<GrayImage, CipherError> {
    let (width, height) = (env.width(), env.height());
    let count = env.payload().len();

    let confused = match env.mode() {
        CipherMode::ChaosOnly => env.payload().to_vec(),
        CipherMode::ChaosDna => {
            let rules = rule_stream(key, cfg, count)?;
            let cipher_img = env.payload_image();
            let encoded = dna::encode_plane(&cipher_img, &rules)?;
            let key_img = generate_key_image(key, width, height, cfg)?;
            let encoded_key = dna::encode_plane(&key_img, &rules)?;
            let unmixed = dna::xor_planes(&encoded, &encoded_key)?;
            dna::decode_plane(&unmixed).into_pixels()
        }
    };

    let main = keystream_bytes(key, StreamRole::MainStream, cfg, count)?;
    Ok(GrayImage::new(width, height, xor_bytes(&confused, &main))?)
}
