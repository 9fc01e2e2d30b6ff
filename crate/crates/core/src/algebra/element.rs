use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::coeff::Coeff;
use crate::exact::lambda::LambdaPoly;
use crate::exact::poly::{Monomial, Poly};
use crate::exact::rational::{int, Rational};

/// Exponents of the conformal radii: `rho0^(c0 + d0*lambda) * rhoinf^(ci + di*lambda)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RhoExp {
    pub c0: i64,
    pub d0: i64,
    pub ci: i64,
    pub di: i64,
}

impl RhoExp {
    pub const ONE: RhoExp = RhoExp {
        c0: 0,
        d0: 0,
        ci: 0,
        di: 0,
    };

    /// `rho0^c`.
    pub fn rho0(c: i64) -> Self {
        Self { c0: c, ..Self::ONE }
    }

    /// `rhoinf^c`.
    pub fn rhoinf(c: i64) -> Self {
        Self { ci: c, ..Self::ONE }
    }

    /// `rho0^lambda`.
    pub fn rho0_lambda() -> Self {
        Self { d0: 1, ..Self::ONE }
    }

    /// `a^lambda = (rho0/rhoinf)^lambda`.
    pub fn a_lambda() -> Self {
        Self {
            d0: 1,
            di: -1,
            ..Self::ONE
        }
    }

    pub fn mul(self, o: Self) -> Self {
        Self {
            c0: self.c0 + o.c0,
            d0: self.d0 + o.d0,
            ci: self.ci + o.ci,
            di: self.di + o.di,
        }
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, name: &str, c: i64, d: i64) -> fmt::Result {
    if c == 0 && d == 0 {
        return Ok(());
    }
    let exp = LambdaPoly::linear(int(c), int(d)).to_string();
    if d == 0 && c == 1 {
        write!(f, "{name}")
    } else if d == 0 && c > 0 || (c == 0 && d == 1) {
        write!(f, "{name}^{exp}")
    } else {
        write!(f, "{name}^({exp})")
    }
}

impl fmt::Display for RhoExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_power(f, "rho0", self.c0, self.d0)?;
        if (self.c0, self.d0) != (0, 0) && (self.ci, self.di) != (0, 0) {
            write!(f, "*")?;
        }
        fmt_power(f, "rhoinf", self.ci, self.di)
    }
}

/// Element of the coordinate algebra: a finite sum of
/// `coefficient(lambda) * rho-powers * monomial in u, ubar, l, lbar`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<(RhoExp, Monomial), LambdaPoly>,
}

impl AlgebraElement {
    pub fn term(rho: RhoExp, m: Monomial, c: LambdaPoly) -> Self {
        let mut out = Self::default();
        out.add_term(rho, m, c);
        out
    }

    /// `rho * p` with rational coefficients.
    pub fn from_poly(rho: RhoExp, p: &Poly) -> Self {
        let mut out = Self::default();
        for (m, c) in p.terms() {
            out.add_term(rho, m.clone(), LambdaPoly::constant(c.clone()));
        }
        out
    }

    pub fn rho(rho: RhoExp) -> Self {
        Self::term(rho, Monomial::one(), LambdaPoly::unity())
    }

    pub fn monomial(rho: RhoExp, m: Monomial) -> Self {
        Self::term(rho, m, LambdaPoly::unity())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(RhoExp, Monomial), &LambdaPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, rho: RhoExp, m: Monomial, c: LambdaPoly) {
        if c.is_nil() {
            return;
        }
        let key = (rho, m);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = slot.add(&c);
        if slot.is_nil() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for ((r, m), c) in &o.terms {
            self.add_term(*r, m.clone(), c.clone());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.scale(r)))
                .collect(),
        }
    }

    pub fn scale_lambda(&self, p: &LambdaPoly) -> Self {
        let mut out = Self::default();
        for ((r, m), c) in &self.terms {
            out.add_term(*r, m.clone(), c.mul(p));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for ((ra, ma), ca) in &self.terms {
            for ((rb, mb), cb) in &o.terms {
                out.add_term(ra.mul(*rb), ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    /// Multiplies every term by `rho * m`.
    pub fn mul_term(&self, rho: RhoExp, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|((r, mm), c)| ((r.mul(rho), mm.mul(m)), c.clone()))
                .collect(),
        }
    }

    /// Complex conjugation: swaps barred and unbarred generators; `rho` and `lambda` are real.
    pub fn conj(&self) -> Self {
        let mut out = Self::default();
        for ((r, m), c) in &self.terms {
            out.add_term(*r, m.conj(), c.clone());
        }
        out
    }

    /// The polynomial part when the element is `rho^0` times a `lambda`-free polynomial.
    pub fn as_poly(&self) -> Option<Poly> {
        let mut p = Poly::default();
        for ((r, m), c) in &self.terms {
            if !r.is_one() || c.degree().unwrap_or(0) > 0 {
                return None;
            }
            p.add_term(m.clone(), c.coeff(0));
        }
        Some(p)
    }

    /// Coefficient polynomial in front of `rho * m`.
    pub fn coeff(&self, rho: RhoExp, m: &Monomial) -> LambdaPoly {
        self.terms
            .get(&(rho, m.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Evaluates `lambda` at a rational value.
    pub fn at_lambda(&self, lambda: &Rational) -> Self {
        let mut out = Self::default();
        for ((r, m), c) in &self.terms {
            out.add_term(*r, m.clone(), LambdaPoly::constant(c.eval(lambda)));
        }
        out
    }
}

impl Coeff for AlgebraElement {
    fn nil() -> Self {
        Self::default()
    }
    fn unity() -> Self {
        Self::rho(RhoExp::ONE)
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        AlgebraElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        AlgebraElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        AlgebraElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn scale(&self, r: &Rational) -> Self {
        AlgebraElement::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        Self::term(RhoExp::ONE, Monomial::one(), LambdaPoly::constant(r))
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((r, m), c) = self.terms.iter().next().unwrap();
        if !m.is_one() || r.d0 != 0 || r.di != 0 {
            return None;
        }
        let inv = RhoExp {
            c0: -r.c0,
            d0: 0,
            ci: -r.ci,
            di: 0,
        };
        Some(Self::term(inv, Monomial::one(), c.inverse()?))
    }
    fn conj(&self) -> Self {
        AlgebraElement::conj(self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_cached_key(|((r, m), _)| (*r, m.display_key()));
        let mut first = true;
        for ((r, m), c) in keys {
            let mut factors = Vec::new();
            if !r.is_one() {
                factors.push(r.to_string());
            }
            if !m.is_one() {
                factors.push(m.to_string());
            }
            let body = factors.join("*");
            let cs = c.to_string();
            let single = c.coeffs().iter().filter(|x| !x.is_zero()).count() == 1;
            let negative = single && cs.starts_with('-');
            if !first {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            } else if negative {
                write!(f, "-")?;
            }
            first = false;
            let mag = if negative { cs[1..].to_string() } else { cs };
            let mag = if single { mag } else { format!("({mag})") };
            match (body.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{mag}*{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Gen;
    use crate::exact::rational::{int, rat};

    #[test]
    fn display_forms() {
        let e = AlgebraElement::term(
            RhoExp::rho0_lambda(),
            Monomial::from_gen(Gen::u(2), 1),
            LambdaPoly::linear(int(-1), rat(1, 2)),
        );
        assert_eq!(e.to_string(), "(1/2*lambda - 1)*rho0^lambda*u2");
        let f = AlgebraElement::from_poly(RhoExp::rho0(-1), &Poly::gen(Gen::u(1)).scale(&int(-3)));
        assert_eq!(f.to_string(), "-3*rho0^(-1)*u1");
    }

    #[test]
    fn rho_exponents_multiply() {
        let a = AlgebraElement::rho(RhoExp::a_lambda());
        let b = AlgebraElement::rho(RhoExp::rho0(-2));
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "rho0^(lambda - 2)*rhoinf^(-lambda)");
        assert_eq!(
            Coeff::mul(&b, &b.inverse().unwrap()),
            AlgebraElement::unity()
        );
    }
}
