//! A thin value type over `astro_float::BigFloat` at a fixed working precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact::rational::Rational;

/// Working precision in bits (about 77 decimal digits).
pub const PRECISION: usize = 256;
/// A conservative relative rounding unit at [`PRECISION`].
pub const UNIT: f64 = 1e-75;

const RM: RoundingMode = RoundingMode::ToEven;

const EULER_GAMMA: &str =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467";

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Hp(BigFloat);

impl Hp {
    pub fn from_f64(x: f64) -> Self {
        Hp(BigFloat::from_f64(x, PRECISION))
    }

    pub fn from_i64(n: i64) -> Self {
        Hp(BigFloat::from_i64(n, PRECISION))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::parse(&r.numer().to_string()) / Self::parse(&r.denom().to_string())
    }

    /// Parses a decimal literal; panics on malformed input, so only for trusted strings.
    pub fn parse(s: &str) -> Self {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, PRECISION, RM, cc));
        assert!(!v.is_nan(), "malformed decimal literal {s}");
        Hp(v)
    }

    /// Parses user-supplied decimal text such as `12.0` or `1e-4`.
    pub fn parse_decimal(s: &str) -> crate::Result<Self> {
        let t = s.trim();
        match t.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Self::parse(t)),
            _ => Err(crate::Error::InvalidInput(format!(
                "not a finite decimal number: {s:?}"
            ))),
        }
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn pi() -> Self {
        Hp(with_cc(|cc| cc.pi(PRECISION, RM)))
    }

    pub fn euler_gamma() -> Self {
        Self::parse(EULER_GAMMA)
    }

    pub fn exp(&self) -> Self {
        Hp(with_cc(|cc| self.0.exp(PRECISION, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        Hp(with_cc(|cc| self.0.ln(PRECISION, RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        Hp(self.0.sqrt(PRECISION, RM))
    }

    pub fn cosh(&self) -> Self {
        Hp(with_cc(|cc| self.0.cosh(PRECISION, RM, cc)))
    }

    /// `self^e` for positive `self`.
    pub fn powf(&self, e: &Hp) -> Self {
        (e * &self.ln()).exp()
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = Hp(self.0.powi(n.unsigned_abs() as usize, PRECISION, RM));
        if n < 0 {
            Self::one() / p
        } else {
            p
        }
    }

    pub fn abs(&self) -> Self {
        Hp(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn max(&self, o: &Hp) -> Self {
        if self >= o {
            self.clone()
        } else {
            o.clone()
        }
    }

    fn decimal(&self) -> String {
        with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).expect("finite value")
    }

    /// The decimal expansion as an exact rational (rounded at the working precision).
    pub fn to_rational(&self) -> Rational {
        let s = self.decimal();
        let (mantissa, exp) = match s.split_once('e') {
            Some((m, e)) => (m, e.parse::<i64>().expect("decimal exponent")),
            None => (s.as_str(), 0),
        };
        let (neg, mantissa) = match mantissa.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, mantissa),
        };
        let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let digits: BigInt = format!("{whole}{frac}").parse().expect("decimal digits");
        let shift = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        let mut r = if shift >= 0 {
            Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
        } else {
            Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
        };
        if neg {
            r = -r;
        }
        r
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        self.decimal().parse().expect("decimal form parses as f64")
    }

    /// Fixed-point text with `places` digits after the point, rounded half away from zero.
    pub fn to_fixed(&self, places: usize) -> String {
        let r = self.to_rational();
        let scale = num_traits::pow(BigInt::from(10), places);
        let scaled = r.abs() * Rational::from_integer(scale.clone());
        let (q, rem) = scaled.numer().div_rem(scaled.denom());
        let q = if rem * 2 >= *scaled.denom() { q + 1 } else { q };
        let (int_part, frac_part) = q.div_rem(&scale);
        let sign = if r.is_negative() && !q.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            return format!("{sign}{int_part}");
        }
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = places
        )
    }

    /// Scientific text with `digits` significant digits, e.g. `1.23e-52`.
    pub fn to_scientific(&self, digits: usize) -> String {
        if self.is_zero() {
            return format!("{:.*}e0", digits.saturating_sub(1), 0.0);
        }
        let r = self.to_rational();
        let mut e10 = (self.abs().ln().to_f64() / std::f64::consts::LN_10).floor() as i64;
        loop {
            let scaled = r.abs() / pow10(e10);
            if scaled >= Rational::from_integer(10.into()) {
                e10 += 1;
            } else if scaled < Rational::from_integer(1.into()) {
                e10 -= 1;
            } else {
                break;
            }
        }
        let mantissa = Hp::from_rational(&(r.clone() / pow10(e10)));
        let mut text = mantissa.to_fixed(digits.saturating_sub(1));
        // Rounding can carry the mantissa up to 10.
        if text.trim_start_matches('-').starts_with("10") {
            e10 += 1;
            text = Hp::from_rational(&(r / pow10(e10))).to_fixed(digits.saturating_sub(1));
        }
        format!("{text}e{e10}")
    }
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p)
    }
}

/// Published form of a float: 15 decimals in the normal range, 15 significant digits otherwise.
pub fn fmt_decimal(x: &Hp) -> String {
    let a = x.abs();
    if x.is_zero() || (a >= Hp::parse("1e-4") && a < Hp::parse("1e15")) {
        x.to_fixed(15)
    } else {
        x.to_scientific(15)
    }
}

impl PartialEq for Hp {
    fn eq(&self, o: &Self) -> bool {
        self.0.cmp(&o.0) == Some(0)
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_decimal(self))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Hp> for &Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                Hp(self.0.$m(&o.0, PRECISION, RM))
            }
        }
        impl $tr<Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                (&self).$m(&o)
            }
        }
        impl $tr<&Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                (&self).$m(o)
            }
        }
        impl $tr<Hp> for &Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(BigFloat::neg(&self.0))
    }
}

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(BigFloat::neg(&self.0))
    }
}

/// Converts an `f64` bound to text with three significant digits.
pub fn fmt_bound(b: f64) -> String {
    format!("{b:.2e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_text() {
        let x = Hp::from_i64(1) / Hp::from_i64(3);
        assert_eq!(x.to_fixed(5), "0.33333");
        assert_eq!(Hp::from_f64(2.5).to_fixed(0), "3");
        assert_eq!(Hp::one().to_fixed(15), "1.000000000000000");
        assert_eq!(Hp::from_f64(-0.125).to_fixed(2), "-0.13");
        assert_eq!(
            (Hp::from_i64(2).sqrt() * Hp::from_i64(2).sqrt()).to_fixed(30),
            "2.".to_string() + &"0".repeat(30)
        );
    }

    #[test]
    fn scientific_form() {
        let x = Hp::parse("1.5e-52");
        assert_eq!(x.to_scientific(3), "1.50e-52");
        assert_eq!(Hp::parse("9.9999e3").to_scientific(2), "1.0e4");
        assert_eq!(fmt_decimal(&Hp::parse("1.5e-52")), "1.50000000000000e-52");
    }

    #[test]
    fn constants() {
        assert!((Hp::pi().to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((Hp::euler_gamma().to_f64() - 0.5772156649015329).abs() < 1e-15);
        assert!((Hp::from_i64(1).exp().ln().to_f64() - 1.0).abs() < 1e-15);
        assert_eq!(Hp::from_i64(2).powi(-2), Hp::from_f64(0.25));
    }
}
