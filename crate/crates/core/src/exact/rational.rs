use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Builds `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as an exact rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Formats as `"num/den"`, or `"num"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// `binom(r, k)` for rational `r` and non-negative integer `k`.
pub fn binomial(r: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (r - int(j as i64)) / int(j as i64 + 1);
    }
    acc
}

/// `k!` as a big integer.
pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Closest `f64` to an exact rational.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Scale down huge numerators/denominators before converting.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 900;
        let n = r.numer() >> shift.max(0) as usize;
        let d = r.denom() >> shift.max(0) as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Exact Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|^2`, always an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Integer power, negative exponents allowed for non-zero values.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::real(Rational::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }
}

impl fmt::Display for GaussianRational {
    /// Formats as `"a"`, `"b i"`, or `"a+b i"` with rationals in `num/den` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{} i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{} i", self.re, self.im)
                }
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts `"a"`, `"a+bi"`, `"a-b i"`, `"bi"`, `"i"` with `a`, `b` rationals.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::InvalidInput("empty complex number".into()));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1".to_string(),
            "-" => "-1".to_string(),
            other => other.trim_start_matches('+').to_string(),
        };
        Ok(Self::new(parse_rational(re)?, parse_rational(&im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
        assert_eq!(fmt_rational(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn binomial_of_half() {
        assert_eq!(binomial(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binomial(&rat(-1, 2), 3), rat(-5, 16));
        assert_eq!(binomial(&int(5), 2), int(10));
    }

    #[test]
    fn gaussian_parse_round_trip() {
        for s in ["1/4", "1/4+1/3 i", "-1/2-2 i", "3/7 i"] {
            let z: GaussianRational = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        let z: GaussianRational = "1/2+i".parse().unwrap();
        assert_eq!(z, GaussianRational::new(rat(1, 2), int(1)));
        let z: GaussianRational = "-i".parse().unwrap();
        assert_eq!(z, GaussianRational::new(int(0), int(-1)));
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussianRational::new(rat(1, 2), rat(1, 3));
        let one = z.mul(&z.inverse().unwrap());
        assert_eq!(one, GaussianRational::real(int(1)));
        assert_eq!(z.norm_sqr(), rat(13, 36));
    }
}
