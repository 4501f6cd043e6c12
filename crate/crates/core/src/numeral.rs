//! Signed positional numerals in bases 2 through 36.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;

use crate::{Error, Result};

pub const MIN_BASE: u32 = 2;
pub const MAX_BASE: u32 = 36;

const ALPHABET: &[u8; 36] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

pub(crate) fn check_base(base: u32) -> Result<()> {
    if (MIN_BASE..=MAX_BASE).contains(&base) {
        Ok(())
    } else {
        Err(Error::InvalidBase(base))
    }
}

/// A sign plus a little-endian digit sequence: `digits()[k]` is the
/// coefficient of `base^k`.
///
/// Always canonical: no high-order zero digits, and zero is `[0]` with a
/// positive sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    base: u32,
    negative: bool,
    digits: Vec<u8>,
}

impl Numeral {
    /// Parses an optional `-` (or U+2212) followed by digits `0-9`, `A-Z`.
    /// Lowercase letters are accepted and canonicalised.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        check_base(base)?;
        let (negative, body, offset) = match text.chars().next() {
            Some(c @ ('-' | '\u{2212}')) => (true, &text[c.len_utf8()..], 1),
            _ => (false, text, 0),
        };
        if body.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut digits = Vec::with_capacity(body.len());
        for (i, c) in body.chars().enumerate() {
            match c.to_digit(36) {
                Some(d) if d < base => digits.push(d as u8),
                _ => {
                    return Err(Error::InvalidDigit {
                        position: i + offset,
                        character: c,
                    })
                }
            }
        }
        digits.reverse();
        Ok(Self::canonical(base, negative, digits))
    }

    /// Builds a numeral from little-endian digits, stripping high-order zeros.
    pub fn from_digits(base: u32, negative: bool, digits: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        if digits.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some((position, &bad)) = digits
            .iter()
            .enumerate()
            .find(|(_, &d)| u32::from(d) >= base)
        {
            return Err(Error::InvalidDigit {
                position,
                character: char::from(*ALPHABET.get(bad as usize).unwrap_or(&b'?')),
            });
        }
        Ok(Self::canonical(base, negative, digits))
    }

    /// The repdigit `aa…a` with `degree + 1` copies of `digit`.
    pub fn repdigit(digit: u8, degree: usize, base: u32) -> Result<Self> {
        Self::from_digits(base, false, vec![digit; degree + 1])
    }

    pub fn from_value(value: &BigInt, base: u32) -> Result<Self> {
        check_base(base)?;
        let digits = value.magnitude().to_radix_le(base);
        let digits = if digits.is_empty() { vec![0] } else { digits };
        Ok(Self::canonical(base, value.sign() == Sign::Minus, digits))
    }

    fn canonical(base: u32, negative: bool, mut digits: Vec<u8>) -> Self {
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        let negative = negative && digits != [0];
        Self {
            base,
            negative,
            digits,
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    /// Little-endian digits, units first.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Index of the most significant digit (`len − 1`).
    pub fn degree(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn to_value(&self) -> BigInt {
        let magnitude =
            BigUint::from_radix_le(&self.digits, self.base).unwrap_or_else(BigUint::zero);
        let sign = if self.negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        BigInt::from_biguint(sign, magnitude)
    }

    /// The same numeral with its sign dropped.
    pub fn abs(&self) -> Self {
        Self {
            negative: false,
            ..self.clone()
        }
    }
}

impl fmt::Display for Numeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(self.digits.len() + 1);
        if self.negative {
            s.push('-');
        }
        s.extend(
            self.digits
                .iter()
                .rev()
                .map(|&d| char::from(ALPHABET[d as usize])),
        );
        f.pad(&s)
    }
}

/// Renders `value` in `base`, e.g. for table columns and CLI output.
pub fn format_value(value: &BigInt, base: u32) -> String {
    value.to_str_radix(base).to_ascii_uppercase()
}
