//! Binary PGM (P5) reading and writing, bit-exact.
//!
//! Only maxval 255 is accepted: pixel bytes pass through unmodified in both
//! directions. Comment lines are tolerated anywhere in the header. The
//! writer emits the canonical form `P5\n<w> <h>\n255\n` + payload, which
//! `read_pgm` inverts exactly.

use chaodna_core::image::ImageError;
use chaodna_core::GrayImage;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PgmError {
    BadMagic,
    /// Header ended before a required field.
    MissingField(&'static str),
    /// A header field is not a decimal number or overflows u32.
    BadNumber(&'static str),
    /// Only 8-bit PGM (maxval 255) is supported.
    UnsupportedMaxval(u32),
    Truncated {
        expected: u64,
        got: u64,
    },
    TrailingBytes(u64),
    Image(ImageError),
}

impl fmt::Display for PgmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgmError::BadMagic => write!(f, "not a binary PGM (missing P5 magic)"),
            PgmError::MissingField(name) => write!(f, "PGM header ended before {name}"),
            PgmError::BadNumber(name) => write!(f, "invalid PGM {name}"),
            PgmError::UnsupportedMaxval(v) => write!(f, "unsupported PGM maxval {v} (need 255)"),
            PgmError::Truncated { expected, got } => {
                write!(
                    f,
                    "PGM payload truncated: expected {expected} bytes, got {got}"
                )
            }
            PgmError::TrailingBytes(n) => write!(f, "{n} trailing bytes after PGM payload"),
            PgmError::Image(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PgmError {}

impl From<ImageError> for PgmError {
    fn from(e: ImageError) -> Self {
        PgmError::Image(e)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn read_number(&mut self, name: &'static str) -> Result<u32, PgmError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_digit() {
                value = value * 10 + (b - b'0') as u64;
                if value > u32::MAX as u64 {
                    return Err(PgmError::BadNumber(name));
                }
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            if self.pos >= self.bytes.len() {
                return Err(PgmError::MissingField(name));
            }
            return Err(PgmError::BadNumber(name));
        }
        Ok(value as u32)
    }
}

/// Parses a binary PGM; pixel bytes are preserved exactly.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut cur = Cursor { bytes, pos: 2 };
    cur.skip_whitespace_and_comments();
    let width = cur.read_number("width")?;
    cur.skip_whitespace_and_comments();
    let height = cur.read_number("height")?;
    cur.skip_whitespace_and_comments();
    let maxval = cur.read_number("maxval")?;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the payload
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        Some(_) => return Err(PgmError::BadNumber("header terminator")),
        None => return Err(PgmError::MissingField("payload")),
    }
    let expected = width as u64 * height as u64;
    let got = (bytes.len() - cur.pos) as u64;
    if got < expected {
        return Err(PgmError::Truncated { expected, got });
    }
    if got > expected {
        return Err(PgmError::TrailingBytes(got - expected));
    }
    Ok(GrayImage::new(width, height, bytes[cur.pos..].to_vec())?)
}

/// Canonical P5 serialization: `P5\n<w> <h>\n255\n` + payload.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.pixel_count());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_legal_file() {
        let img = read_pgm(b"P5\n1 1\n255\n\x00").unwrap();
        assert_eq!((img.width(), img.height()), (1, 1));
        assert_eq!(img.pixels(), &[0]);
    }

    #[test]
    fn canonical_roundtrip_is_byte_exact() {
        let canonical = b"P5\n3 2\n255\nABCDEF".to_vec();
        let img = read_pgm(&canonical).unwrap();
        assert_eq!(write_pgm(&img), canonical);
        assert_eq!(read_pgm(&write_pgm(&img)).unwrap(), img);
    }

    #[test]
    fn comments_are_tolerated() {
        let img = read_pgm(b"P5\n# made by hand\n2 1\n# another\n255\n\x10\x20").unwrap();
        assert_eq!(img.pixels(), &[0x10, 0x20]);
    }

    #[test]
    fn payload_may_contain_arbitrary_bytes() {
        let mut file = b"P5\n16 16\n255\n".to_vec();
        file.extend((0..256).map(|i| i as u8));
        let img = read_pgm(&file).unwrap();
        assert_eq!(img.pixels()[255], 255);
        assert_eq!(write_pgm(&img), file);
    }

    #[test]
    fn rejects_bad_magic() {
        assert_eq!(read_pgm(b"P6\n1 1\n255\n\x00"), Err(PgmError::BadMagic));
        assert_eq!(read_pgm(b""), Err(PgmError::BadMagic));
    }

    #[test]
    fn rejects_wrong_maxval() {
        assert_eq!(
            read_pgm(b"P5\n1 1\n65535\n\x00\x00"),
            Err(PgmError::UnsupportedMaxval(65535))
        );
    }

    #[test]
    fn rejects_truncated_payload() {
        assert_eq!(
            read_pgm(b"P5\n2 2\n255\nab"),
            Err(PgmError::Truncated {
                expected: 4,
                got: 2
            })
        );
    }

    #[test]
    fn rejects_trailing_bytes() {
        assert_eq!(
            read_pgm(b"P5\n1 1\n255\nab"),
            Err(PgmError::TrailingBytes(1))
        );
    }

    #[test]
    fn rejects_missing_header_fields() {
        assert_eq!(read_pgm(b"P5\n2"), Err(PgmError::MissingField("height")));
        assert_eq!(read_pgm(b"P5  "), Err(PgmError::MissingField("width")));
    }
}
