use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::{GaussianRational, Rational};

/// Coefficient ring for truncated series: a commutative `Q`-algebra with a conjugation.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn nil() -> Self;
    fn unity() -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    /// Complex conjugation (swaps barred and unbarred generators for polynomials).
    fn conj(&self) -> Self;

    fn is_unity(&self) -> bool {
        *self == Self::unity()
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unity() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Coeff for GaussianRational {
    fn nil() -> Self {
        GaussianRational::default()
    }
    fn unity() -> Self {
        GaussianRational::real(One::one())
    }
    fn is_nil(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        GaussianRational::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        GaussianRational::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        GaussianRational::mul(self, other)
    }
    fn neg(&self) -> Self {
        GaussianRational::neg(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        GaussianRational::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        GaussianRational::real(r)
    }
    fn inverse(&self) -> Option<Self> {
        GaussianRational::inverse(self)
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
}
