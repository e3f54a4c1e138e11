//! Exact digit strings: point coordinates as fixed-precision base-`b` (or
//! mixed-radix) expansions with an exact rational value accessor. All
//! structural checks (net membership, shifts, norms, box comparisons) work
//! on these digits directly; floating point appears only in display output.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

/// Positional radix of a digit string: a single base repeated, or one base
/// per position (Cantor expansions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Radix {
    Fixed(u64),
    Mixed(Arc<[u64]>),
}

/// A value in `[0, 1)` as digits `d_1, d_2, …, d_L`, most significant
/// first: the value is `sum_j d_j / (q_1 ... q_j)` (with `q_j = b` for a
/// fixed radix). Exact at its stated precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitString {
    radix: Radix,
    digits: Vec<u64>,
}

impl DigitString {
    pub fn fixed(base: u64, digits: Vec<u64>) -> Result<DigitString> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidDigit { digit: d, base });
        }
        Ok(DigitString { radix: Radix::Fixed(base), digits })
    }

    pub fn mixed(bases: Vec<u64>, digits: Vec<u64>) -> Result<DigitString> {
        if bases.len() != digits.len() {
            return Err(Error::Usage(format!(
                "{} bases for {} digits",
                bases.len(),
                digits.len()
            )));
        }
        for (&q, &d) in bases.iter().zip(&digits) {
            if q < 2 {
                return Err(Error::InvalidBase(q));
            }
            if d >= q {
                return Err(Error::InvalidDigit { digit: d, base: q });
            }
        }
        Ok(DigitString { radix: Radix::Mixed(bases.into()), digits })
    }

    pub fn zero_fixed(base: u64, precision: usize) -> DigitString {
        DigitString {
            radix: Radix::Fixed(base),
            digits: vec![0; precision],
        }
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    /// The base for fixed-radix strings, `None` for mixed radix.
    pub fn base(&self) -> Option<u64> {
        match &self.radix {
            Radix::Fixed(b) => Some(*b),
            Radix::Mixed(_) => None,
        }
    }

    /// Radix at 1-based position `j`.
    pub fn base_at(&self, j: usize) -> u64 {
        match &self.radix {
            Radix::Fixed(b) => *b,
            Radix::Mixed(bases) => bases[j - 1],
        }
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    /// Digits, most significant first (`digits()[0]` is `d_1`).
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Number of leading zero digits.
    pub fn leading_zeros(&self) -> usize {
        self.digits.iter().take_while(|&&d| d == 0).count()
    }

    /// First `len` digits as a new string of the same radix.
    pub fn truncated(&self, len: usize) -> Result<DigitString> {
        if len > self.digits.len() {
            return Err(Error::PrecisionTooSmall { needed: len, have: self.digits.len() });
        }
        let radix = match &self.radix {
            Radix::Fixed(b) => Radix::Fixed(*b),
            Radix::Mixed(bases) => Radix::Mixed(bases[..len].into()),
        };
        Ok(DigitString { radix, digits: self.digits[..len].to_vec() })
    }

    /// Exact value `sum_j d_j / (q_1 ... q_j)` as a rational.
    pub fn value(&self) -> BigRational {
        let mut num = BigUint::zero();
        let mut den = BigUint::from(1u8);
        for (idx, &d) in self.digits.iter().enumerate() {
            let q = self.base_at(idx + 1);
            num = num * q + d;
            den *= q;
        }
        BigRational::new(num.into(), den.into())
    }

    /// Approximate value for display output only.
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0f64;
        let mut scale = 1.0f64;
        for (idx, &d) in self.digits.iter().enumerate() {
            scale /= self.base_at(idx + 1) as f64;
            acc += d as f64 * scale;
        }
        acc
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radix {
            Radix::Fixed(b) if *b <= 10 => {
                write!(f, "0.")?;
                for &d in &self.digits {
                    write!(f, "{d}")?;
                }
                Ok(())
            }
            Radix::Fixed(_) => {
                let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
                write!(f, "0.[{}]", parts.join(","))
            }
            Radix::Mixed(bases) => {
                let parts: Vec<String> = self
                    .digits
                    .iter()
                    .zip(bases.iter())
                    .map(|(d, q)| format!("{d}/{q}"))
                    .collect();
                write!(f, "0.[{}]", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn fixed_value_and_display() {
        let x = DigitString::fixed(2, vec![1, 0, 1]).unwrap();
        assert_eq!(x.value(), BigRational::new(5.into(), 8.into()));
        assert_eq!(x.to_string(), "0.101");
        assert_eq!(x.leading_zeros(), 0);
        assert!((x.to_f64() - 0.625).abs() < 1e-12);
    }

    #[test]
    fn mixed_value() {
        // 1/2 + 2/6 = 5/6 with bases (2, 3)
        let x = DigitString::mixed(vec![2, 3], vec![1, 2]).unwrap();
        assert_eq!(x.value(), BigRational::new(5.into(), 6.into()));
        assert_eq!(x.to_string(), "0.[1/2,2/3]");
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(matches!(
            DigitString::fixed(2, vec![2]),
            Err(Error::InvalidDigit { .. })
        ));
        assert!(matches!(
            DigitString::mixed(vec![1], vec![0]),
            Err(Error::InvalidBase(1))
        ));
    }

    #[test]
    fn truncation_keeps_prefix() {
        let x = DigitString::fixed(3, vec![2, 1, 0, 1]).unwrap();
        let t = x.truncated(2).unwrap();
        assert_eq!(t.digits(), &[2, 1]);
        assert!(x.truncated(9).is_err());
        // Values stay below 1.
        assert!(x.value().to_f64().unwrap() < 1.0);
    }
}
