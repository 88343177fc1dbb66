//! Binary fixed-point reals on top of `BigInt`.
//!
//! A value is stored as `mantissa / 2^frac_bits`. The number of fractional
//! bits is derived from a decimal precision plus guard bits, so chains of a
//! few thousand multiplications stay well inside `10^-(precision - 5)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const DEFAULT_PRECISION: u32 = 60;

const GUARD_BITS: u64 = 64;

#[derive(Clone, Debug)]
pub struct HighPrecisionReal {
    mantissa: BigInt,
    frac_bits: u64,
    precision: u32,
}

fn frac_bits_for(precision: u32) -> u64 {
    // log2(10) < 3.3219281
    (precision as u64 * 33_219_281).div_ceil(10_000_000) + GUARD_BITS
}

impl HighPrecisionReal {
    pub fn zero(precision: u32) -> Self {
        Self {
            mantissa: BigInt::zero(),
            frac_bits: frac_bits_for(precision),
            precision,
        }
    }

    pub fn from_int(value: &BigInt, precision: u32) -> Self {
        let frac_bits = frac_bits_for(precision);
        Self {
            mantissa: value << frac_bits,
            frac_bits,
            precision,
        }
    }

    pub fn from_natural(value: &BigUint, precision: u32) -> Self {
        Self::from_int(&BigInt::from(value.clone()), precision)
    }

    pub fn from_i64(value: i64, precision: u32) -> Self {
        Self::from_int(&BigInt::from(value), precision)
    }

    /// `num / den`, truncated toward negative infinity at the working precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        let frac_bits = frac_bits_for(precision);
        let mantissa = (num << frac_bits).div_floor(den);
        Self {
            mantissa,
            frac_bits,
            precision,
        }
    }

    pub fn from_natural_ratio(num: &BigUint, den: &BigUint, precision: u32) -> Self {
        Self::from_ratio(
            &BigInt::from(num.clone()),
            &BigInt::from(den.clone()),
            precision,
        )
    }

    /// Exact power of two; underflows to zero below the working precision.
    pub fn pow2(exp: i64, precision: u32) -> Self {
        let frac_bits = frac_bits_for(precision);
        let shift = frac_bits as i64 + exp;
        let mantissa = if shift < 0 {
            BigInt::zero()
        } else {
            BigInt::one() << shift as u64
        };
        Self {
            mantissa,
            frac_bits,
            precision,
        }
    }

    /// `value^(1/k)` for a natural `value`, truncated.
    pub fn root(value: &BigUint, k: u32, precision: u32) -> Self {
        assert!(k >= 1);
        let frac_bits = frac_bits_for(precision);
        let scaled: BigUint = value << (frac_bits * k as u64);
        Self {
            mantissa: BigInt::from(scaled.nth_root(k)),
            frac_bits,
            precision,
        }
    }

    /// `2^(num/den)` for a rational exponent.
    pub fn pow2_rational(num: i64, den: u32, precision: u32) -> Self {
        assert!(den >= 1);
        let whole = num.div_euclid(den as i64);
        let rem = num.rem_euclid(den as i64) as u64;
        let base = if rem == 0 {
            Self::from_i64(1, precision)
        } else {
            Self::root(&(BigUint::one() << rem), den, precision)
        };
        base.mul_pow2(whole)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    pub fn mul_pow2(&self, exp: i64) -> Self {
        let mantissa = if exp >= 0 {
            &self.mantissa << exp as u64
        } else {
            &self.mantissa >> (-exp) as u64
        };
        Self {
            mantissa,
            ..self.clone()
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64, u32) {
        let precision = self.precision.max(other.precision);
        let bits = self.frac_bits.max(other.frac_bits);
        let a = &self.mantissa << (bits - self.frac_bits);
        let b = &other.mantissa << (bits - other.frac_bits);
        (a, b, bits, precision)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits();
        if bits == 0 {
            return 0.0;
        }
        // keep 64 significant bits, then scale
        let drop = bits.saturating_sub(64);
        let top = (&self.mantissa >> drop).to_f64().unwrap_or(f64::NAN);
        let exp = drop as i64 - self.frac_bits as i64;
        top * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Base-2 logarithm, accurate to double precision even for values far
    /// outside the `f64` exponent range. Returns `-inf` for zero.
    pub fn log2(&self) -> f64 {
        assert!(!self.is_negative(), "log2 of a negative value");
        let bits = self.mantissa.bits();
        if bits == 0 {
            return f64::NEG_INFINITY;
        }
        let drop = bits.saturating_sub(64);
        let top = (&self.mantissa >> drop).to_f64().unwrap();
        top.log2() + drop as f64 - self.frac_bits as f64
    }

    /// Decimal expansion rounded half away from zero to `digits` fractional digits.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let (sign, mag) = (self.mantissa.sign(), self.mantissa.abs());
        let half = BigInt::one() << self.frac_bits.saturating_sub(1);
        let rounded: BigInt = (mag * scale + half) >> self.frac_bits;
        let mut s = rounded.to_string();
        if digits > 0 {
            let d = digits as usize;
            if s.len() <= d {
                s = format!("{}{}", "0".repeat(d + 1 - s.len()), s);
            }
            s.insert(s.len() - d, '.');
        }
        if sign == Sign::Minus && !rounded.is_zero() {
            s.insert(0, '-');
        }
        s
    }
}

impl fmt::Display for HighPrecisionReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or(self.precision);
        f.write_str(&self.to_decimal_string(digits))
    }
}

impl PartialEq for HighPrecisionReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HighPrecisionReal {}

impl PartialOrd for HighPrecisionReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HighPrecisionReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn add(self, rhs: Self) -> HighPrecisionReal {
        let (a, b, frac_bits, precision) = self.aligned(rhs);
        HighPrecisionReal {
            mantissa: a + b,
            frac_bits,
            precision,
        }
    }
}

impl Sub for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn sub(self, rhs: Self) -> HighPrecisionReal {
        let (a, b, frac_bits, precision) = self.aligned(rhs);
        HighPrecisionReal {
            mantissa: a - b,
            frac_bits,
            precision,
        }
    }
}

impl Mul for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn mul(self, rhs: Self) -> HighPrecisionReal {
        let (a, b, frac_bits, precision) = self.aligned(rhs);
        HighPrecisionReal {
            mantissa: (a * b) >> frac_bits,
            frac_bits,
            precision,
        }
    }
}

impl Div for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn div(self, rhs: Self) -> HighPrecisionReal {
        let (a, b, frac_bits, precision) = self.aligned(rhs);
        assert!(!b.is_zero(), "division by zero");
        HighPrecisionReal {
            mantissa: (a << frac_bits).div_floor(&b),
            frac_bits,
            precision,
        }
    }
}

impl Neg for &HighPrecisionReal {
    type Output = HighPrecisionReal;
    fn neg(self) -> HighPrecisionReal {
        HighPrecisionReal {
            mantissa: -&self.mantissa,
            ..self.clone()
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for HighPrecisionReal {
            type Output = HighPrecisionReal;
            fn $m(self, rhs: Self) -> HighPrecisionReal {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering_rounds() {
        let third = HighPrecisionReal::from_ratio(&1.into(), &3.into(), 40);
        assert_eq!(third.to_decimal_string(5), "0.33333");
        let two_thirds = HighPrecisionReal::from_ratio(&2.into(), &3.into(), 40);
        assert_eq!(two_thirds.to_decimal_string(3), "0.667");
        let neg = HighPrecisionReal::from_ratio(&(-5).into(), &4.into(), 40);
        assert_eq!(neg.to_decimal_string(1), "-1.3");
        assert_eq!(HighPrecisionReal::from_i64(7, 30).to_decimal_string(0), "7");
    }

    #[test]
    fn quarter_root_of_two() {
        let r = HighPrecisionReal::pow2_rational(1, 4, 60);
        let fourth = &(&r * &r) * &(&r * &r);
        let err = (&fourth - &HighPrecisionReal::from_i64(2, 60)).abs();
        assert!(err < HighPrecisionReal::pow2(-190, 60));
        assert_eq!(
            r.to_decimal_string(20),
            "1.18920711500272106672"
        );
    }

    #[test]
    fn log2_of_tiny_values() {
        let x = HighPrecisionReal::pow2(-150, 60);
        assert!((x.log2() + 150.0).abs() < 1e-12);
        let y = HighPrecisionReal::from_ratio(&3.into(), &1.into(), 60);
        assert!((y.log2() - 3f64.log2()).abs() < 1e-12);
    }
}
