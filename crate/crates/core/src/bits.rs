//! Fixed-width bit strings.
//!
//! Strings are written most-significant bit first, so the string `k₁k₂…kₙ`
//! has `k₁` as its leading character and as the high bit of [`BitString::value`].
//! Bit positions are numbered from 1 (leftmost) to `width`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported width; values are stored in a `u64`.
pub const MAX_WIDTH: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    width: usize,
    value: u64,
}

impl BitString {
    pub fn new(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidBitString(format!("width {width}")));
        }
        if value >> width != 0 {
            return Err(Error::InvalidBitString(format!(
                "value {value:#x} does not fit in {width} bits"
            )));
        }
        Ok(Self { width, value })
    }

    pub fn zeros(width: usize) -> Result<Self> {
        Self::new(0, width)
    }

    /// Parses a binary string such as `"0110"`.
    pub fn parse_bits(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_WIDTH || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidBitString(s.to_string()));
        }
        let value =
            u64::from_str_radix(s, 2).map_err(|_| Error::InvalidBitString(s.to_string()))?;
        Self::new(value, s.len())
    }

    /// Parses either a binary string or a `0x`-prefixed hex value of the given width.
    pub fn parse_with_width(s: &str, width: usize) -> Result<Self> {
        let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let value =
                u64::from_str_radix(hex, 16).map_err(|_| Error::InvalidBitString(s.to_string()))?;
            Self::new(value, width)?
        } else {
            Self::parse_bits(s)?
        };
        if parsed.width != width {
            return Err(Error::InvalidBitString(format!(
                "`{s}` has width {}, expected {width}",
                parsed.width
            )));
        }
        Ok(parsed)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Bit at 1-based position `pos` (1 = most significant).
    pub fn bit(&self, pos: usize) -> bool {
        assert!(pos >= 1 && pos <= self.width, "bit position out of range");
        (self.value >> (self.width - pos)) & 1 == 1
    }

    pub fn with_bit(&self, pos: usize, bit: bool) -> Self {
        assert!(pos >= 1 && pos <= self.width, "bit position out of range");
        let mask = 1u64 << (self.width - pos);
        let value = if bit {
            self.value | mask
        } else {
            self.value & !mask
        };
        Self {
            width: self.width,
            value,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// GF(2) inner product `Σ aᵢbᵢ mod 2`.
    pub fn dot(&self, other: &BitString) -> bool {
        assert_eq!(self.width, other.width, "width mismatch in dot product");
        (self.value & other.value).count_ones() % 2 == 1
    }

    pub fn xor(&self, other: &BitString) -> BitString {
        assert_eq!(self.width, other.width, "width mismatch in xor");
        Self {
            width: self.width,
            value: self.value ^ other.value,
        }
    }

    /// Concatenates `self` (high bits) with `low`.
    pub fn concat(&self, low: &BitString) -> Result<BitString> {
        Self::new(
            (self.value << low.width) | low.value,
            self.width + low.width,
        )
    }

    /// All strings of the given width in increasing numeric order.
    pub fn all(width: usize) -> impl Iterator<Item = BitString> {
        assert!((1..=MAX_WIDTH).contains(&width));
        (0..1u64 << width).map(move |value| BitString { width, value })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.width)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_bits(s)
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Self::parse_bits(&s)
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b: BitString = "0110".parse().unwrap();
        assert_eq!(b.value(), 6);
        assert_eq!(b.width(), 4);
        assert_eq!(b.to_string(), "0110");
        assert!(!b.bit(1));
        assert!(b.bit(2));
        assert!(b.bit(3));
        assert!(!b.bit(4));
    }

    #[test]
    fn hex_with_width() {
        let b = BitString::parse_with_width("0x5", 4).unwrap();
        assert_eq!(b.to_string(), "0101");
        assert!(BitString::parse_with_width("0x1f", 4).is_err());
        assert!(BitString::parse_with_width("011", 2).is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!("01a".parse::<BitString>().is_err());
        assert!("".parse::<BitString>().is_err());
        assert!(BitString::new(4, 2).is_err());
    }

    #[test]
    fn dot_and_xor() {
        let k: BitString = "110".parse().unwrap();
        let h: BitString = "001".parse().unwrap();
        assert!(!k.dot(&h));
        assert!(!k.dot(&k));
        assert_eq!(k.xor(&h).to_string(), "111");
        assert_eq!(k.with_bit(3, true).to_string(), "111");
        assert_eq!(k.concat(&h).unwrap().to_string(), "110001");
    }
}
