use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::rational::Rational;

/// Polynomial in the formal parameter `lambda` with rational coefficients.
///
/// `coeffs[k]` multiplies `lambda^k`; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    coeffs: Vec<Rational>,
}

impl LambdaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `a + b*lambda`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn lambda() -> Self {
        Self::linear(Rational::zero(), Rational::one())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluates at a rational value of `lambda`.
    pub fn eval(&self, lambda: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * lambda + c)
    }
}

impl Coeff for LambdaPoly {
    fn nil() -> Self {
        Self::default()
    }
    fn unity() -> Self {
        Self::constant(Rational::one())
    }
    fn is_nil(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(Self::constant(c.recip())),
            _ => None,
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "lambda")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn arithmetic_and_display() {
        let a = LambdaPoly::linear(int(-1), rat(1, 2));
        assert_eq!(a.to_string(), "1/2*lambda - 1");
        let sq = a.mul(&a);
        assert_eq!(sq.to_string(), "1/4*lambda^2 - lambda + 1");
        assert!(a.sub(&a).is_nil());
        assert_eq!(sq.eval(&int(2)), int(0));
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = LambdaPoly::new(vec![int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.inverse(), Some(LambdaPoly::constant(int(1))));
        assert_eq!(LambdaPoly::lambda().inverse(), None);
    }
}
