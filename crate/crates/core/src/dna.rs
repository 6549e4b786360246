//! DNA-rule encoding of bytes as nucleotide quads, and XOR in the DNA domain.
//!
//! A byte splits into four 2-bit pairs (MSB pair first); each pair maps to a
//! nucleotide through one of the eight complementarity-preserving rules. Every
//! rule pairs complementary bit values (00/11, 01/10) with complementary
//! bases (A/T, C/G). Encoding a whole image quadruples its symbol count:
//! an M x N image becomes 4 * M * N nucleotides.

use crate::image::GrayImage;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A nucleic-acid base. The discriminant is the canonical storage code used
/// to pack quads; it is not the code assigned by any particular rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Nucleotide {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Nucleotide {
    /// Watson-Crick complement: A<->T, C<->G.
    pub fn complement(self) -> Self {
        match self {
            Nucleotide::A => Nucleotide::T,
            Nucleotide::C => Nucleotide::G,
            Nucleotide::G => Nucleotide::C,
            Nucleotide::T => Nucleotide::A,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    fn code(self) -> u8 {
        self as u8
    }

    fn from_code(code: u8) -> Self {
        match code & 0b11 {
            0 => Nucleotide::A,
            1 => Nucleotide::C,
            2 => Nucleotide::G,
            _ => Nucleotide::T,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

use Nucleotide::{A, C, G, T};

// ENCODE[rule - 1][two-bit value] -> nucleotide
const ENCODE: [[Nucleotide; 4]; 8] = [
    [A, C, G, T], // rule 1
    [A, G, C, T], // rule 2
    [C, A, T, G], // rule 3
    [C, T, A, G], // rule 4
    [G, A, T, C], // rule 5
    [G, T, A, C], // rule 6
    [T, C, G, A], // rule 7
    [T, G, C, A], // rule 8
];

// DECODE[rule - 1][canonical code] -> two-bit value; inverse of ENCODE.
const DECODE: [[u8; 4]; 8] = [
    [0, 1, 2, 3],
    [0, 2, 1, 3],
    [1, 0, 3, 2],
    [2, 0, 3, 1],
    [1, 3, 0, 2],
    [2, 3, 0, 1],
    [3, 1, 2, 0],
    [3, 2, 1, 0],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DnaError {
    /// Rule id outside 1..=8.
    InvalidRule(u8),
    /// Per-pixel rule count does not match the pixel count.
    RuleCount { pixels: usize, rules: usize },
    /// Plane dimensions disagree.
    Shape { left: (u32, u32), right: (u32, u32) },
    /// Operand planes were encoded under different rule streams.
    RuleMismatch { pixel: usize },
}

impl fmt::Display for DnaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DnaError::InvalidRule(id) => write!(f, "DNA rule id {id} outside 1..=8"),
            DnaError::RuleCount { pixels, rules } => {
                write!(f, "{rules} rule ids for {pixels} pixels")
            }
            DnaError::Shape { left, right } => write!(
                f,
                "plane dimensions differ: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            DnaError::RuleMismatch { pixel } => {
                write!(f, "operand planes use different rules at pixel {pixel}")
            }
        }
    }
}

impl core::error::Error for DnaError {}

/// One of the eight encoding rules, bit-exact to the complementarity table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rule(u8);

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule(1),
        Rule(2),
        Rule(3),
        Rule(4),
        Rule(5),
        Rule(6),
        Rule(7),
        Rule(8),
    ];

    pub fn new(id: u8) -> Result<Self, DnaError> {
        if (1..=8).contains(&id) {
            Ok(Rule(id))
        } else {
            Err(DnaError::InvalidRule(id))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    /// Maps a 2-bit value (0..=3) to its nucleotide under this rule.
    pub fn encode2(self, bits: u8) -> Nucleotide {
        ENCODE[(self.0 - 1) as usize][(bits & 0b11) as usize]
    }

    /// Maps a nucleotide back to its 2-bit value under this rule.
    pub fn decode2(self, n: Nucleotide) -> u8 {
        DECODE[(self.0 - 1) as usize][n.code() as usize]
    }
}

/// Splits a byte into bit pairs (MSB pair first) and maps each through the
/// rule.
pub fn encode_byte(b: u8, rule: Rule) -> [Nucleotide; 4] {
    [
        rule.encode2(b >> 6),
        rule.encode2(b >> 4),
        rule.encode2(b >> 2),
        rule.encode2(b),
    ]
}

/// Exact inverse of [`encode_byte`] under the same rule.
pub fn decode_quad(quad: [Nucleotide; 4], rule: Rule) -> u8 {
    (rule.decode2(quad[0]) << 6)
        | (rule.decode2(quad[1]) << 4)
        | (rule.decode2(quad[2]) << 2)
        | rule.decode2(quad[3])
}

/// XOR in the DNA domain: the rule's bit codes are XORed and re-encoded.
pub fn dna_xor(a: Nucleotide, b: Nucleotide, rule: Rule) -> Nucleotide {
    rule.encode2(rule.decode2(a) ^ rule.decode2(b))
}

/// A DNA-encoded image: per pixel, a 4-nucleotide quad and the rule id that
/// produced it. Quads are stored packed, one byte of canonical 2-bit codes
/// per pixel, so memory stays at 2 bytes per pixel while the plane remains
/// addressable per nucleotide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnaPlane {
    width: u32,
    height: u32,
    packed: Vec<u8>,
    rules: Vec<u8>,
}

impl DnaPlane {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.packed.len()
    }

    /// Total nucleotides: 4 * width * height.
    pub fn nucleotide_count(&self) -> u64 {
        4 * self.width as u64 * self.height as u64
    }

    pub fn rules(&self) -> &[u8] {
        &self.rules
    }

    pub fn rule_at(&self, pixel: usize) -> Rule {
        Rule(self.rules[pixel])
    }

    /// The quad for one pixel, MSB pair first.
    pub fn quad(&self, pixel: usize) -> [Nucleotide; 4] {
        let p = self.packed[pixel];
        [
            Nucleotide::from_code(p >> 6),
            Nucleotide::from_code(p >> 4),
            Nucleotide::from_code(p >> 2),
            Nucleotide::from_code(p),
        ]
    }

    /// Flat nucleotide access, index 0..nucleotide_count().
    pub fn nucleotide(&self, index: u64) -> Nucleotide {
        let pixel = (index / 4) as usize;
        let pos = (index % 4) as usize;
        self.quad(pixel)[pos]
    }

    /// Debug text form: A/C/G/T characters, 4 per pixel, one image row per
    /// line. Test-fixture output only, never part of the cipher format.
    pub fn to_text(&self) -> String {
        let w = self.width as usize;
        let mut out = String::with_capacity(self.packed.len() * 4 + self.height as usize);
        for (i, _) in self.packed.iter().enumerate() {
            for n in self.quad(i) {
                out.push(n.symbol());
            }
            if (i + 1) % w == 0 {
                out.push('\n');
            }
        }
        out
    }
}

fn pack(quad: [Nucleotide; 4]) -> u8 {
    (quad[0].code() << 6) | (quad[1].code() << 4) | (quad[2].code() << 2) | quad[3].code()
}

/// Encodes every pixel with its own rule id from `rules`.
pub fn encode_plane(pixels: &GrayImage, rules: &[u8]) -> Result<DnaPlane, DnaError> {
    if rules.len() != pixels.pixel_count() {
        return Err(DnaError::RuleCount {
            pixels: pixels.pixel_count(),
            rules: rules.len(),
        });
    }
    let mut packed = Vec::with_capacity(pixels.pixel_count());
    for (&b, &id) in pixels.pixels().iter().zip(rules) {
        let rule = Rule::new(id)?;
        packed.push(pack(encode_byte(b, rule)));
    }
    Ok(DnaPlane {
        width: pixels.width(),
        height: pixels.height(),
        packed,
        rules: rules.to_vec(),
    })
}

/// Decodes every pixel with its stored rule.
pub fn decode_plane(plane: &DnaPlane) -> GrayImage {
    let pixels: Vec<u8> = (0..plane.pixel_count())
        .map(|i| decode_quad(plane.quad(i), plane.rule_at(i)))
        .collect();
    GrayImage::new(plane.width, plane.height, pixels)
        .expect("plane dimensions are valid by construction")
}

/// Nucleotide-wise [`dna_xor`] of two planes encoded under the same rule
/// stream; the rule ids carry through to the result.
pub fn xor_planes(p1: &DnaPlane, p2: &DnaPlane) -> Result<DnaPlane, DnaError> {
    if p1.width != p2.width || p1.height != p2.height {
        return Err(DnaError::Shape {
            left: (p1.width, p1.height),
            right: (p2.width, p2.height),
        });
    }
    let mut packed = Vec::with_capacity(p1.pixel_count());
    for i in 0..p1.pixel_count() {
        if p1.rules[i] != p2.rules[i] {
            return Err(DnaError::RuleMismatch { pixel: i });
        }
        let rule = p1.rule_at(i);
        let a = p1.quad(i);
        let b = p2.quad(i);
        let quad = [
            dna_xor(a[0], b[0], rule),
            dna_xor(a[1], b[1], rule),
            dna_xor(a[2], b[2], rule),
            dna_xor(a[3], b[3], rule),
        ];
        packed.push(pack(quad));
    }
    Ok(DnaPlane {
        width: p1.width,
        height: p1.height,
        packed,
        rules: p1.rules.clone(),
    })
}
