//! Logistic-map sequence generation, quantizers, and the bifurcation scan.
//!
//! The map is p(n+1) = u * p(n) * (1 - p(n)). Arithmetic is binary64 with a
//! pinned evaluation order (u*p first, then *(1-p)) so that keystreams are
//! bit-identical across platforms; interoperable decryption depends on it.

use alloc::vec::Vec;
use core::fmt;

/// Lower bound of the chaotic regime: the map is chaotic for
/// CHAOTIC_U_MIN < u <= 4.
pub const CHAOTIC_U_MIN: f64 = 3.56994;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChaosError {
    /// A parameter is outside the map's domain.
    Domain { name: &'static str, value: f64 },
    /// u is outside the chaotic regime required for cipher use.
    Regime { u: f64 },
}

impl fmt::Display for ChaosError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChaosError::Domain { name, value } => {
                write!(f, "parameter {name} = {value} is outside its domain")
            }
            ChaosError::Regime { u } => {
                write!(
                    f,
                    "u = {u} is outside the chaotic regime ({CHAOTIC_U_MIN} < u <= 4)"
                )
            }
        }
    }
}

impl core::error::Error for ChaosError {}

/// Parameters of one logistic-map stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosParams {
    u: f64,
    p0: f64,
    burn_in: u32,
}

impl ChaosParams {
    /// Validates the map's domain: 0 < u <= 4 and 0 < p0 < 1. Any u in range
    /// is accepted; use [`ChaosParams::chaotic`] for cipher streams.
    pub fn new(u: f64, p0: f64, burn_in: u32) -> Result<Self, ChaosError> {
        if !(u > 0.0 && u <= 4.0) {
            return Err(ChaosError::Domain {
                name: "u",
                value: u,
            });
        }
        if !(p0 > 0.0 && p0 < 1.0) {
            return Err(ChaosError::Domain {
                name: "p0",
                value: p0,
            });
        }
        Ok(ChaosParams { u, p0, burn_in })
    }

    /// Like [`ChaosParams::new`] but additionally enforces the chaotic-regime
    /// window CHAOTIC_U_MIN < u <= 4 required for cipher use.
    pub fn chaotic(u: f64, p0: f64, burn_in: u32) -> Result<Self, ChaosError> {
        let params = Self::new(u, p0, burn_in)?;
        if !params.is_chaotic_regime() {
            return Err(ChaosError::Regime { u });
        }
        Ok(params)
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn burn_in(&self) -> u32 {
        self.burn_in
    }

    pub fn is_chaotic_regime(&self) -> bool {
        self.u > CHAOTIC_U_MIN && self.u <= 4.0
    }
}

/// A generated sequence of logistic-map values, all in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Keystream {
    values: Vec<f64>,
    params: ChaosParams,
}

impl Keystream {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn params(&self) -> &ChaosParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

// The pinned-order map step. Callers guarantee 0 <= p <= 1 and 0 < u <= 4,
// which keeps the result in [0, 1] (the maximum is u/4).
#[inline]
fn step(p: f64, u: f64) -> f64 {
    u * p * (1.0 - p)
}

/// One application of the map, with domain validation.
pub fn logistic_step(p: f64, u: f64) -> Result<f64, ChaosError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ChaosError::Domain {
            name: "p",
            value: p,
        });
    }
    if !(u > 0.0 && u <= 4.0) {
        return Err(ChaosError::Domain {
            name: "u",
            value: u,
        });
    }
    Ok(step(p, u))
}

/// Iterates the map `burn_in` times from p0 discarding outputs, then emits
/// exactly `count` values. Fully deterministic in (u, p0, burn_in, count).
pub fn generate(params: &ChaosParams, count: usize) -> Keystream {
    let mut p = params.p0;
    for _ in 0..params.burn_in {
        p = step(p, params.u);
    }
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        p = step(p, params.u);
        values.push(p);
    }
    Keystream {
        values,
        params: *params,
    }
}

#[inline]
fn quantize_byte(x: f64) -> u8 {
    let scaled = (x * 256.0) as u32;
    scaled.min(255) as u8
}

#[inline]
fn quantize_rule(x: f64) -> u8 {
    let scaled = (x * 8.0) as u32;
    scaled.min(7) as u8 + 1
}

/// Maps each value to min(floor(x * 256), 255).
pub fn quantize_bytes(ks: &Keystream) -> Vec<u8> {
    ks.values.iter().map(|&x| quantize_byte(x)).collect()
}

/// Maps each value to a DNA rule id in 1..=8: min(floor(x * 8), 7) + 1.
pub fn quantize_rules(ks: &Keystream) -> Vec<u8> {
    ks.values.iter().map(|&x| quantize_rule(x)).collect()
}

/// Scans `u_steps` evenly spaced u values in [u_min, u_max]; for each, runs
/// `transient` iterations from p0 and records the next `samples_per_u`
/// iterates as (u, p) points.
pub fn bifurcation_scan(
    u_min: f64,
    u_max: f64,
    u_steps: u32,
    transient: u32,
    samples_per_u: u32,
    p0: f64,
) -> Result<Vec<(f64, f64)>, ChaosError> {
    if !(u_min > 0.0 && u_min < u_max && u_max <= 4.0) {
        return Err(ChaosError::Domain {
            name: "u_min..u_max",
            value: u_min,
        });
    }
    if u_steps == 0 {
        return Err(ChaosError::Domain {
            name: "u_steps",
            value: 0.0,
        });
    }
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(ChaosError::Domain {
            name: "p0",
            value: p0,
        });
    }
    let mut points = Vec::with_capacity(u_steps as usize * samples_per_u as usize);
    for i in 0..u_steps {
        let u = if u_steps == 1 {
            u_min
        } else {
            u_min + (u_max - u_min) * i as f64 / (u_steps - 1) as f64
        };
        let mut p = p0;
        for _ in 0..transient {
            p = step(p, u);
        }
        for _ in 0..samples_per_u {
            p = step(p, u);
            points.push((u, p));
        }
    }
    Ok(points)
}
