use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact binary fraction `0.x1 x2 ... xm`, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseFraction {
    bits: Vec<bool>,
}

/// Distance between two phases on the unit circle, in turns.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

impl PhaseFraction {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::domain("a phase needs at least one bit"));
        }
        Ok(PhaseFraction { bits })
    }

    /// Parses a plain bit string such as `"1011"`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("{other:?} is not a binary digit"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }

    /// `numerator / 2^width` written with exactly `width` bits.
    pub fn from_numerator(numerator: u64, width: u32) -> Result<Self> {
        if width == 0 || width > 63 {
            return Err(Error::domain(format!("bit width {width} outside 1..=63")));
        }
        if numerator >= 1u64 << width {
            return Err(Error::domain(format!(
                "{numerator}/2^{width} is not below one"
            )));
        }
        let bits = (0..width)
            .map(|i| (numerator >> (width - 1 - i)) & 1 == 1)
            .collect();
        Ok(PhaseFraction { bits })
    }

    /// Nearest `width`-bit fraction to `value` on the circle; ties go to the
    /// smaller fraction and `1.0` wraps to zero.
    pub fn nearest(value: f64, width: u32) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain("phase value must be finite"));
        }
        if width == 0 || width > 52 {
            return Err(Error::domain(format!("bit width {width} outside 1..=52")));
        }
        let scale = (1u64 << width) as f64;
        let x = value.rem_euclid(1.0) * scale;
        let floor = x.floor();
        let rounded = if x - floor > 0.5 { floor + 1.0 } else { floor };
        let numerator = (rounded as u64) % (1u64 << width);
        Self::from_numerator(numerator, width)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn value(&self) -> f64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| 0.5f64.powi(i as i32 + 1))
            .sum()
    }

    /// The integer `x1 x2 ... xm` read as an m-bit number.
    pub fn numerator(&self) -> u64 {
        self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    /// `"1011"` for `0.1011`.
    pub fn bitstring(&self) -> String {
        self.bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// `2^shift * value mod 1`, i.e. the fraction left after dropping the
    /// first `shift` bits.
    pub fn shifted_value(&self, shift: usize) -> f64 {
        if shift >= self.bits.len() {
            return 0.0;
        }
        PhaseFraction {
            bits: self.bits[shift..].to_vec(),
        }
        .value()
    }
}

impl fmt::Display for PhaseFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.{}", self.bitstring())
    }
}

impl Serialize for PhaseFraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.bitstring())
    }
}

impl<'de> Deserialize<'de> for PhaseFraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        PhaseFraction::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}
