//! Fixed-point reals with a few hundred bits of fraction.
//!
//! Values are `raw / 2^FRAC_BITS` for a signed big integer `raw`. Every
//! operation truncates, so each result carries an absolute error of at most a
//! few units in the last place (about 1e-154), far beyond the 50 significant
//! digits required for commas of order 1e-4.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::rational::Rational;

pub const FRAC_BITS: usize = 512;

/// Significant decimal digits used when printing.
pub const DISPLAY_DIGITS: usize = 50;

/// Relative tolerance `10^-20` used for stable orderings.
pub const RELATIVE_TOLERANCE_EXP: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Real {
    raw: BigInt,
}

impl Real {
    pub fn zero() -> Self {
        Real { raw: BigInt::zero() }
    }

    pub fn one() -> Self {
        Real {
            raw: BigInt::one() << FRAC_BITS,
        }
    }

    pub fn from_integer(value: i64) -> Self {
        Real {
            raw: BigInt::from(value) << FRAC_BITS,
        }
    }

    pub fn from_rational(value: &Rational) -> Self {
        Real {
            raw: (value.numer() << FRAC_BITS) / value.denom(),
        }
    }

    /// `2^(exp / root)`, truncated.
    ///
    /// Panics if `root == 0`.
    pub fn pow2_ratio(exp: i64, root: u32) -> Self {
        assert!(root > 0, "root must be positive");
        let magnitude = exp.unsigned_abs() as usize;
        // floor(root-th root of 2^(|exp| + FRAC_BITS * root)) = floor(2^(|exp|/root) * 2^FRAC_BITS)
        let radicand = BigUint::one() << (magnitude + FRAC_BITS * root as usize);
        let positive = Real {
            raw: BigInt::from_biguint(Sign::Plus, radicand.nth_root(root)),
        };
        if exp >= 0 {
            positive
        } else {
            &Real::one() / &positive
        }
    }

    pub fn abs(&self) -> Self {
        Real {
            raw: self.raw.abs(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.raw.is_negative()
    }

    pub fn div_int(&self, divisor: u64) -> Self {
        Real {
            raw: &self.raw / BigInt::from(divisor),
        }
    }

    pub fn mul_int(&self, factor: i64) -> Self {
        Real {
            raw: &self.raw * BigInt::from(factor),
        }
    }

    /// `|self - other| <= 10^-20 * max(|self|, |other|)`.
    pub fn approx_eq(&self, other: &Real) -> bool {
        let diff = (&self.raw - &other.raw).abs();
        let scale = self.raw.abs().max(other.raw.abs());
        diff * BigInt::from(10u32).pow(RELATIVE_TOLERANCE_EXP) <= scale
    }

    /// Ordering that treats values within the relative tolerance as equal.
    pub fn tolerant_cmp(&self, other: &Real) -> Ordering {
        if self.approx_eq(other) {
            Ordering::Equal
        } else {
            self.cmp(other)
        }
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 leading fraction bits; exact enough for display and plotting.
        let shifted = &self.raw >> (FRAC_BITS - 64);
        shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    }

    /// Decimal rendering with `digits` significant digits, rounded half up.
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits > 0);
        if self.raw.is_zero() {
            return "0".to_string();
        }
        // Work with 10^PLACES * |value|; PLACES covers the full binary precision.
        const PLACES: usize = 170;
        let scaled: BigInt = (self.raw.abs() * BigInt::from(10u32).pow(PLACES as u32)) >> FRAC_BITS;
        let mut text = scaled.to_string();
        let mut point = text.len() as isize - PLACES as isize;
        if text.len() > digits {
            let drop = (text.len() - digits) as u32;
            let divisor = BigInt::from(10u32).pow(drop);
            let (mut kept, rem) = scaled.div_rem(&divisor);
            if rem * 2u32 >= divisor {
                kept += 1u32;
            }
            let kept_text = kept.to_string();
            // a carry such as 999..9 -> 1000..0 lengthens the mantissa by one digit
            point += kept_text.len() as isize - digits as isize;
            text = kept_text;
            text.truncate(digits);
        }
        let sign = if self.raw.is_negative() { "-" } else { "" };
        let mantissa = text.trim_end_matches('0');
        let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), mantissa)
        } else if point as usize >= mantissa.len() {
            format!("{}{}", mantissa, "0".repeat(point as usize - mantissa.len()))
        } else {
            let (int, frac) = mantissa.split_at(point as usize);
            format!("{int}.{frac}")
        };
        format!("{sign}{body}")
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real {
            raw: &self.raw + &rhs.raw,
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real {
            raw: &self.raw - &rhs.raw,
        }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real {
            raw: (&self.raw * &rhs.raw) >> FRAC_BITS,
        }
    }
}

impl Div for &Real {
    type Output = Real;
    /// Panics on division by zero.
    fn div(self, rhs: &Real) -> Real {
        Real {
            raw: (&self.raw << FRAC_BITS) / &rhs.raw,
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(DISPLAY_DIGITS))
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
