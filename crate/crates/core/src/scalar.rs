//! Exact complex rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A complex number `re + i·im` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    /// `num/den` as a real scalar.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Scalar::from_parts(0, 1)
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        Scalar {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Integer-valued real scalars come back as `Some(n)`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Rational string of the real part, `"num/den"` or `"num"`.
    pub fn re_string(&self) -> String {
        self.re.to_string()
    }

    pub fn im_string(&self) -> String {
        self.im.to_string()
    }

    pub fn parse_parts(re: &str, im: &str) -> Result<Self, Error> {
        Ok(Scalar {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }
}

/// Parses `"3"`, `"-3/4"`, with surrounding whitespace ignored.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let t = s.trim();
    let r = BigRational::from_str(t).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(r)
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_integer(1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

/// Serialized as `{"re": "num/den", "im": "num/den"}`.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            re: String,
            im: String,
        }
        Wire {
            re: self.re_string(),
            im: self.im_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            re: String,
            #[serde(default = "zero_str")]
            im: String,
        }
        fn zero_str() -> String {
            "0".to_string()
        }
        let w = Wire::deserialize(d)?;
        Scalar::parse_parts(&w.re, &w.im).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_are_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(2, 3);
        assert_eq!(a.clone() + b, Scalar::one());
        let z = Scalar::from_parts(1, 1);
        assert_eq!(&z * &z.conj(), Scalar::from_integer(2));
        assert_eq!(&z * &z.inv().unwrap(), Scalar::one());
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_integer(-1));
    }

    #[test]
    fn rational_strings() {
        let s = Scalar::parse_parts("-3/6", "2").unwrap();
        assert_eq!(s.re_string(), "-1/2");
        assert_eq!(s.im_string(), "2");
        assert!(Scalar::parse_parts("x", "0").is_err());
        assert_eq!(s.to_string(), "-1/2+2i");
    }

    #[test]
    fn serde_mirror() {
        let s = Scalar::parse_parts("5/7", "-1").unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"re":"5/7","im":"-1"}"#);
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
