//! Key parsing and derivation of chaotic initial conditions.
//!
//! The external secret is a 32-character hexadecimal string (128 bits). Each
//! chaotic stream the cipher consumes is seeded from its own fixed 32-bit
//! window of those bits: the window is split into four bytes, the bytes are
//! XOR-folded into one, and the folded byte is normalized into the open unit
//! interval required by the logistic map.

use core::fmt;

/// The 128-bit secret key, parsed from 32 hex characters (MSB nibble first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Key128(u128);

/// Which chaotic stream a seed drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamRole {
    /// Keystream XORed into the plaintext (the confusion stage).
    MainStream,
    /// Keystream that renders the generated key image.
    KeyImageStream,
    /// Keystream that selects the per-pixel DNA rule.
    RuleStream,
}

impl StreamRole {
    /// Fixed, disjoint window start for each role: bits 0..31, 32..63, 64..95.
    pub fn bit_offset(self) -> u8 {
        match self {
            StreamRole::MainStream => 0,
            StreamRole::KeyImageStream => 32,
            StreamRole::RuleStream => 64,
        }
    }
}

/// A 32-bit window selection over the key bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpec {
    /// Start of the window, counting from the most significant key bit.
    pub bit_offset: u8,
    pub role: StreamRole,
}

impl SeedSpec {
    /// The canonical window for a role.
    pub fn for_role(role: StreamRole) -> Self {
        SeedSpec {
            bit_offset: role.bit_offset(),
            role,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyError {
    /// Key text is not exactly 32 characters after trimming.
    Length(usize),
    /// Non-hexadecimal character, with its position in the trimmed text.
    Char { index: usize, found: char },
    /// Window start would push the 32-bit window past bit 127.
    Offset(u8),
}

impl fmt::Display for KeyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyError::Length(n) => write!(f, "key must be 32 hex characters, got {n}"),
            KeyError::Char { index, found } => {
                write!(f, "invalid hex character {found:?} at index {index}")
            }
            KeyError::Offset(o) => write!(f, "window offset {o} exceeds 96"),
        }
    }
}

impl core::error::Error for KeyError {}

impl Key128 {
    /// Parses 32 hex characters (case-insensitive); surrounding whitespace is
    /// trimmed first.
    pub fn parse(hex_text: &str) -> Result<Self, KeyError> {
        let trimmed = hex_text.trim();
        let mut count = 0usize;
        let mut bits: u128 = 0;
        for (index, ch) in trimmed.chars().enumerate() {
            let nibble = ch.to_digit(16).ok_or(KeyError::Char { index, found: ch })?;
            if count == 32 {
                return Err(KeyError::Length(trimmed.chars().count()));
            }
            bits = (bits << 4) | nibble as u128;
            count += 1;
        }
        if count != 32 {
            return Err(KeyError::Length(count));
        }
        Ok(Key128(bits))
    }

    pub fn from_bits(bits: u128) -> Self {
        Key128(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }
}

impl core::ops::BitXor for Key128 {
    type Output = Key128;

    fn bitxor(self, rhs: Key128) -> Key128 {
        Key128(self.0 ^ rhs.0)
    }
}

/// Parses the external secret key. Alias for [`Key128::parse`].
pub fn parse_key(hex_text: &str) -> Result<Key128, KeyError> {
    Key128::parse(hex_text)
}

/// Extracts the 32-bit window at `spec.bit_offset` (MSB-first), splits it
/// into four bytes and XOR-folds them into one.
pub fn fold_window(key: Key128, spec: SeedSpec) -> Result<u8, KeyError> {
    if spec.bit_offset > 96 {
        return Err(KeyError::Offset(spec.bit_offset));
    }
    let window = (key.bits() >> (96 - spec.bit_offset as u32)) as u32;
    let [b0, b1, b2, b3] = window.to_be_bytes();
    Ok(b0 ^ b1 ^ b2 ^ b3)
}

/// Folds the canonical window for a role. Never fails: role offsets are fixed
/// and in range.
pub fn fold_role(key: Key128, role: StreamRole) -> u8 {
    let window = (key.bits() >> (96 - role.bit_offset() as u32)) as u32;
    let [b0, b1, b2, b3] = window.to_be_bytes();
    b0 ^ b1 ^ b2 ^ b3
}

/// Normalizes a folded byte into the open unit interval: (b + 0.5) / 256.
///
/// All 256 outputs are distinct and none hits 0, 0.5, or 1, which would be
/// degenerate inputs for the logistic map.
pub fn seed_to_initial(folded: u8) -> f64 {
    (folded as f64 + 0.5) / 256.0
}

/// Convenience: seed for a role's canonical window.
pub fn derive_initial(key: Key128, role: StreamRole) -> f64 {
    seed_to_initial(fold_role(key, role))
}
