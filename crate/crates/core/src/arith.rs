//! Exact scalar types shared by every module.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(Int::from(numer), Int::from(denom))
}

pub fn int_rat(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

pub fn i128_rat(n: i128) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).map_err(|_| Error::Parse(s.to_string()))?;
            let d = Int::from_str(d.trim()).map_err(|_| Error::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(s.to_string()));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(Int::from_str(t).map_err(|_| Error::Parse(s.to_string()))?),
    };
    Ok(parsed)
}

/// `"p/q"` with `q > 0` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int_rat(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        Some(Self { re, im })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: Self) -> GaussRational {
        GaussRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: Self) -> GaussRational {
        GaussRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: Self) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", format_rational(&self.im))
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}i)", format_rational(&self.re), sign, format_rational(&self.im.abs()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(r, rat(-3, 2));
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational(" 7 ").unwrap()), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), Int::from(6));
        assert_eq!(binomial(10, 0), Int::from(1));
        assert_eq!(binomial(3, 5), Int::from(0));
    }

    #[test]
    fn gauss_division() {
        let a = GaussRational::new(int_rat(1), int_rat(2));
        let b = GaussRational::new(int_rat(3), int_rat(-1));
        let q = a.checked_div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(a.checked_div(&GaussRational::zero()).is_none());
    }
}
