//! Joint Bell-product states of `n` pairs, written as 2n-bit strings.
//!
//! Pair `i` contributes its (phase, amplitude) bits at positions `2i` and
//! `2i + 1`, so four pairs `a b c d` read `a1 a2 b1 b2 c1 c2 d1 d2`. The
//! packed integer index puts the first pair in the most significant bits,
//! which makes lexicographic order on strings and numeric order on indices
//! coincide.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::BellLabel;

/// Largest string length that packs into a `u32` index.
pub const MAX_PACKED_PAIRS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BellString {
    labels: Vec<BellLabel>,
}

impl BellString {
    pub fn new(labels: Vec<BellLabel>) -> Self {
        BellString { labels }
    }

    pub fn labels(&self) -> &[BellLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Parses a string of `'0'`/`'1'` characters of even length.
    pub fn from_bits(bits: &str) -> Result<Self> {
        if !bits.len().is_multiple_of(2) {
            return Err(Error::Usage(format!(
                "bit string {bits:?} has odd length {}",
                bits.len()
            )));
        }
        let raw = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Usage(format!("invalid bit {other:?} in {bits:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BellString::new(
            raw.chunks(2).map(|p| BellLabel::new(p[0], p[1])).collect(),
        ))
    }

    pub fn to_bits(&self) -> String {
        self.to_string()
    }

    /// Packed index, first pair in the high bits.
    pub fn index(&self) -> u32 {
        debug_assert!(self.len() <= MAX_PACKED_PAIRS);
        self.labels
            .iter()
            .fold(0u32, |acc, l| (acc << 2) | l.code() as u32)
    }

    pub fn from_index(index: u32, n: usize) -> Self {
        debug_assert!(n <= MAX_PACKED_PAIRS);
        BellString::new(
            (0..n)
                .map(|i| BellLabel::from_code_unchecked(pair_code(index, n, i)))
                .collect(),
        )
    }
}

/// Two-bit code of pair `i` inside a packed `n`-pair index.
#[inline]
pub(crate) fn pair_code(index: u32, n: usize, i: usize) -> u8 {
    ((index >> (2 * (n - 1 - i))) & 3) as u8
}

impl fmt::Display for BellString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BellString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellString::from_bits(s)
    }
}

impl From<BellString> for String {
    fn from(s: BellString) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for BellString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        BellString::from_bits(&s)
    }
}

/// The bijection induced on four-pair strings by the XOR circuit of the
/// four-pair protocol, on a packed 8-bit value (`a1` is bit 7, `d2` bit 0).
///
/// `(a1,a2,b1,b2,c1,c2,d1,d2) -> (a1^d1, a2^c2, b1^d1, b2^c2, a1^b1^c1^d1, c2, d1, a2^b2^c2^d2)`
pub fn apply_f_bits(bits: u8) -> u8 {
    let bit = |k: u8| (bits >> (7 - k)) & 1;
    let (a1, a2, b1, b2, c1, c2, d1, d2) =
        (bit(0), bit(1), bit(2), bit(3), bit(4), bit(5), bit(6), bit(7));
    let out = [
        a1 ^ d1,
        a2 ^ c2,
        b1 ^ d1,
        b2 ^ c2,
        a1 ^ b1 ^ c1 ^ d1,
        c2,
        d1,
        a2 ^ b2 ^ c2 ^ d2,
    ];
    out.iter().fold(0u8, |acc, b| (acc << 1) | b)
}

/// [`apply_f_bits`] on a [`BellString`]; the string must have exactly four pairs.
pub fn apply_f(s: &BellString) -> Result<BellString> {
    if s.len() != 4 {
        return Err(Error::Usage(format!(
            "the four-pair bijection needs exactly 4 pairs (8 bits), got {} pairs",
            s.len()
        )));
    }
    Ok(BellString::from_index(apply_f_bits(s.index() as u8) as u32, 4))
}
