//! Polynomials over GF(2), bit `i` holding the coefficient of `x^i`.

use std::fmt;
use std::ops::Rem;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gf2Poly(u64);

impl Gf2Poly {
    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(&self) -> u64 {
        self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Carry-less product; `None` if the result would not fit in 64 bits.
    pub fn checked_mul(self, other: Self) -> Option<Self> {
        match (self.degree(), other.degree()) {
            (Some(a), Some(b)) if a + b > 63 => None,
            _ => {
                let mut acc = 0u64;
                let mut rest = other.0;
                while rest != 0 {
                    acc ^= self.0 << rest.trailing_zeros();
                    rest &= rest - 1;
                }
                Some(Self(acc))
            }
        }
    }

    /// Trial division by every polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        (2u64..1 << (d / 2 + 1)).all(|q| (*self % Self(q)).0 != 0)
    }
}

impl Rem for Gf2Poly {
    type Output = Self;

    /// Remainder of division by `divisor`. Panics on a zero divisor.
    fn rem(self, divisor: Self) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.0;
        while r != 0 {
            let dr = 63 - r.leading_zeros() as usize;
            if dr < d {
                break;
            }
            r ^= divisor.0 << (dr - d);
        }
        Self(r)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("0");
        }
        let terms: Vec<String> = (0..64)
            .rev()
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        f.write_str(&terms.join("+"))
    }
}

/// Parses sums of terms such as `x^7+x+1`; whitespace is ignored and
/// repeated terms cancel.
impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::PolynomialSyntax(s.to_string());
        if compact.is_empty() {
            return Err(bad());
        }
        if compact == "0" {
            return Ok(Self(0));
        }
        let mut bits = 0u64;
        for term in compact.split('+') {
            let exp = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<u32>().ok())
                    .filter(|&e| e < 64)
                    .ok_or_else(bad)?,
            };
            bits ^= 1 << exp;
        }
        Ok(Self(bits))
    }
}
