//! Truncated Laurent series with an explicitly tracked window of known coefficients.
//!
//! Coefficients are stored by *local* exponent: `k` stands for `z^k` when the
//! series is expanded at zero and for `z^-k` when it is expanded at infinity.
//! Everything above the local precision is unknown, and reading it is an error.
//! A series with no precision bound is an exact Laurent polynomial and may be
//! combined with series at either expansion point.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Expansion point of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Zero,
    Infinity,
}

impl Point {
    pub fn flip(self) -> Self {
        match self {
            Point::Zero => Point::Infinity,
            Point::Infinity => Point::Zero,
        }
    }

    pub fn to_local(self, z_exp: i64) -> i64 {
        match self {
            Point::Zero => z_exp,
            Point::Infinity => -z_exp,
        }
    }
}

/// Projections onto parts of a Laurent series by sign of the `z`-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    /// Exponents `< 0`.
    Minus,
    /// Exponents `>= 0`.
    Plus,
    /// Exponents `> 0`.
    PlusPlus,
}

/// A truncated Laurent series over the coefficient ring `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Coeff> {
    point: Point,
    coeffs: BTreeMap<i64, C>,
    prec: Option<i64>,
}

impl<C: Coeff> Series<C> {
    /// Exact Laurent polynomial from `(z-exponent, coefficient)` pairs.
    pub fn exact(point: Point, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        Self::build(point, terms, None)
    }

    /// Series whose coefficients are known through `z^known_through` in the
    /// direction away from the expansion point (upwards at zero, downwards at infinity).
    pub fn truncated(
        point: Point,
        terms: impl IntoIterator<Item = (i64, C)>,
        known_through: i64,
    ) -> Self {
        Self::build(point, terms, Some(point.to_local(known_through)))
    }

    fn build(point: Point, terms: impl IntoIterator<Item = (i64, C)>, prec: Option<i64>) -> Self {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in terms {
            let k = point.to_local(e);
            if prec.is_some_and(|p| k > p) {
                continue;
            }
            let slot = coeffs.entry(k).or_insert_with(C::nil);
            *slot = slot.add(&c);
        }
        coeffs.retain(|_, c| !c.is_nil());
        Self {
            point,
            coeffs,
            prec,
        }
    }

    fn from_local(point: Point, coeffs: BTreeMap<i64, C>, prec: Option<i64>) -> Self {
        let mut coeffs = coeffs;
        coeffs.retain(|k, c| !c.is_nil() && prec.is_none_or(|p| *k <= p));
        Self {
            point,
            coeffs,
            prec,
        }
    }

    pub fn zero(point: Point) -> Self {
        Self::exact(point, [])
    }

    pub fn one(point: Point) -> Self {
        Self::constant(point, C::unity())
    }

    pub fn constant(point: Point, c: C) -> Self {
        Self::exact(point, [(0, c)])
    }

    /// The coordinate `z` itself.
    pub fn z(point: Point) -> Self {
        Self::exact(point, [(1, C::unity())])
    }

    pub fn point(&self) -> Point {
        self.point
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Last known `z`-exponent (highest at zero, lowest at infinity); `None` if exact.
    pub fn order_high(&self) -> Option<i64> {
        self.prec.map(|p| self.point.to_local(p))
    }

    /// `z`-exponent of the leading nonzero term (lowest at zero, highest at infinity).
    pub fn order_low(&self) -> Option<i64> {
        self.valuation().map(|k| self.point.to_local(k))
    }

    /// Local precision: local exponents above it are unknown.
    pub fn local_precision(&self) -> Option<i64> {
        self.prec
    }

    /// Lowest local exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Coefficient of `z^e`; errors if `z^e` lies outside the known window.
    pub fn coeff(&self, e: i64) -> Result<C> {
        let k = self.point.to_local(e);
        if let Some(p) = self.prec {
            if k > p {
                return Err(Error::OutOfWindow {
                    exponent: e,
                    known: p,
                });
            }
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(C::nil))
    }

    /// Known nonzero terms as `(z-exponent, coefficient)` in increasing local order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let point = self.point;
        self.coeffs
            .iter()
            .map(move |(&k, c)| (point.to_local(k), c))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_local(
            self.point,
            self.coeffs.iter().map(|(&k, c)| (k, f(c))).collect(),
            self.prec,
        )
    }

    /// Lowers the precision so that nothing beyond `z^known_through` is kept.
    pub fn truncate(&self, known_through: i64) -> Self {
        self.truncate_local(self.point.to_local(known_through))
    }

    fn truncate_local(&self, p: i64) -> Self {
        let prec = Some(self.prec.map_or(p, |q| q.min(p)));
        Self::from_local(self.point, self.coeffs.clone(), prec)
    }

    /// Reinterprets an exact series at another expansion point.
    pub fn at_point(&self, point: Point) -> Result<Self> {
        if point == self.point {
            return Ok(self.clone());
        }
        if self.prec.is_some() {
            return Err(Error::PointMismatch);
        }
        Ok(Self::from_local(
            point,
            self.coeffs.iter().map(|(&k, c)| (-k, c.clone())).collect(),
            None,
        ))
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.point == other.point {
            Ok((self.clone(), other.clone()))
        } else if other.prec.is_none() {
            Ok((self.clone(), other.at_point(self.point)?))
        } else {
            Ok((self.at_point(other.point)?, other.clone()))
        }
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        let mut coeffs = a.coeffs;
        for (k, c) in b.coeffs {
            let slot = coeffs.entry(k).or_insert_with(C::nil);
            *slot = slot.add(&c);
        }
        Ok(Self::from_local(
            a.point,
            coeffs,
            Self::min_prec(a.prec, b.prec),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(C::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scale(r))
    }

    /// Valuation used for precision bookkeeping; a truncated zero counts as `prec + 1`.
    fn effective_valuation(&self) -> Option<i64> {
        self.valuation().or(self.prec.map(|p| p + 1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.aligned(other)?;
        if (a.prec.is_none() && a.coeffs.is_empty()) || (b.prec.is_none() && b.coeffs.is_empty()) {
            return Ok(Self::zero(a.point));
        }
        let va = a.effective_valuation().unwrap();
        let vb = b.effective_valuation().unwrap();
        let prec = Self::min_prec(a.prec.map(|p| p + vb), b.prec.map(|p| p + va));
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        for (&i, x) in &a.coeffs {
            for (&j, y) in &b.coeffs {
                if prec.is_some_and(|p| i + j > p) {
                    break;
                }
                let slot = coeffs.entry(i + j).or_insert_with(C::nil);
                *slot = slot.add(&x.mul(y));
            }
        }
        Ok(Self::from_local(a.point, coeffs, prec))
    }

    /// Multiplies by `z^e`.
    pub fn mul_z_power(&self, e: i64) -> Self {
        let s = self.point.to_local(e);
        Self::from_local(
            self.point,
            self.coeffs
                .iter()
                .map(|(&k, c)| (k + s, c.clone()))
                .collect(),
            self.prec.map(|p| p + s),
        )
    }

    /// Derivative with respect to `z`.
    pub fn derivative(&self) -> Self {
        let (shift, sign) = match self.point {
            Point::Zero => (-1, 1),
            Point::Infinity => (1, -1),
        };
        Self::from_local(
            self.point,
            self.coeffs
                .iter()
                .map(|(&k, c)| (k + shift, c.scale(&int(sign * k))))
                .collect(),
            self.prec.map(|p| p + shift),
        )
    }

    fn leading(&self) -> Result<(i64, C)> {
        let (&v, c) = self.coeffs.iter().next().ok_or(Error::NotInvertible)?;
        Ok((v, c.clone()))
    }

    /// Multiplicative inverse. Exact input must be a single monomial.
    pub fn reciprocal(&self) -> Result<Self> {
        let (v, c) = self.leading()?;
        let cinv = c.inverse().ok_or(Error::NotInvertible)?;
        let Some(p) = self.prec else {
            if self.coeffs.len() == 1 {
                return Ok(Self::from_local(self.point, [(-v, cinv)].into(), None));
            }
            return Err(Error::InvalidInput(
                "reciprocal of a non-monomial exact series needs a truncation order".into(),
            ));
        };
        let n = p - v;
        let a: Vec<C> = (0..=n)
            .map(|i| self.coeffs.get(&(v + i)).cloned().unwrap_or_else(C::nil))
            .collect();
        let mut b: Vec<C> = Vec::with_capacity(n as usize + 1);
        b.push(cinv.clone());
        for m in 1..=n as usize {
            let mut s = C::nil();
            for i in 1..=m {
                if !a[i].is_nil() && !b[m - i].is_nil() {
                    s = s.add(&a[i].mul(&b[m - i]));
                }
            }
            b.push(s.mul(&cinv).neg());
        }
        Ok(Self::from_local(
            self.point,
            b.into_iter()
                .enumerate()
                .map(|(m, x)| (m as i64 - v, x))
                .collect(),
            Some(p - 2 * v),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.reciprocal()?)
    }

    /// Integer power; negative powers go through [`Series::reciprocal`].
    pub fn pow_int(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.reciprocal()?.pow_int(-k);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.point);
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f^r` for rational `r` and `f = 1 + O(z)` (in the local variable).
    pub fn pow_rational(&self, r: &Rational) -> Result<Self> {
        if r.is_integer() {
            use num_traits::ToPrimitive;
            if let Some(k) = r.to_integer().to_i64() {
                return self.pow_int(k);
            }
        }
        if self.coeffs.keys().next().is_some_and(|&k| k < 0)
            || !self.coeffs.get(&0).is_some_and(|c| c.is_unity())
        {
            return Err(Error::InvalidInput(
                "rational powers need a series of the form 1 + O(z)".into(),
            ));
        }
        let Some(p) = self.prec else {
            if self.coeffs.len() == 1 {
                return Ok(self.clone());
            }
            return Err(Error::InvalidInput(
                "rational power of an exact series needs a truncation order".into(),
            ));
        };
        // f h' = r f' h gives n h_n = sum_{k=1}^n (r k - (n - k)) a_k h_{n-k}.
        let a: Vec<C> = (0..=p.max(0))
            .map(|i| self.coeffs.get(&i).cloned().unwrap_or_else(C::nil))
            .collect();
        let mut h: Vec<C> = vec![C::unity()];
        for n in 1..=p.max(0) as usize {
            let mut s = C::nil();
            for k in 1..=n {
                if a[k].is_nil() || h[n - k].is_nil() {
                    continue;
                }
                let w = r * int(k as i64) - int((n - k) as i64);
                s = s.add(&a[k].mul(&h[n - k]).scale(&w));
            }
            h.push(s.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(Self::from_local(
            self.point,
            h.into_iter()
                .enumerate()
                .map(|(k, x)| (k as i64, x))
                .collect(),
            Some(p),
        ))
    }

    /// `f(g(z))` for series at zero, where `g` has positive valuation.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.point != Point::Zero || g.point != Point::Zero {
            return Err(Error::InvalidInput(
                "composition is defined for expansions at zero".into(),
            ));
        }
        if self.coeffs.is_empty() {
            return Ok(self.clone());
        }
        let (vg, _) = g.leading()?;
        if vg < 1 {
            return Err(Error::InvalidInput(
                "inner series must vanish at zero".into(),
            ));
        }
        let kmin = *self.coeffs.keys().next().unwrap();
        let kmax = *self.coeffs.keys().last().unwrap();
        let mut bound = self.prec.map(|pf| vg * (pf + 1) - 1);
        if let Some(pg) = g.prec {
            for &k in self.coeffs.keys().filter(|&&k| k != 0) {
                bound = Self::min_prec(bound, Some(pg - vg + vg * k));
            }
        }
        let inner =
            match bound {
                Some(b) => g.truncate_local(b + vg * (1 + (-kmin).max(0))),
                None if kmin < 0 && g.coeffs.len() > 1 => return Err(Error::InvalidInput(
                    "composition with negative powers of an exact series needs a truncation order"
                        .into(),
                )),
                None => g.clone(),
            };
        let mut acc = Self::zero(Point::Zero);
        if let Some(b) = bound {
            acc = acc.truncate_local(b);
        }
        let mut power = Self::one(Point::Zero);
        for k in 0..=kmax.max(0) {
            if k > 0 {
                power = power.mul(&inner)?;
                if let Some(b) = bound {
                    power = power.truncate_local(b);
                }
            }
            if let Some(c) = self.coeffs.get(&k) {
                acc = acc.add(&power.scale(c))?;
            }
        }
        if kmin < 0 {
            let inv = inner.reciprocal()?;
            let mut power = Self::one(Point::Zero);
            for k in 1..=-kmin {
                power = power.mul(&inv)?;
                if let Some(c) = self.coeffs.get(&-k) {
                    acc = acc.add(&power.scale(c))?;
                }
            }
        }
        Ok(match bound {
            Some(b) => acc.truncate_local(b),
            None => acc,
        })
    }

    /// Compositional inverse of a truncated series `c z + O(z^2)` at zero (Lagrange inversion).
    pub fn revert(&self) -> Result<Self> {
        if self.point != Point::Zero {
            return Err(Error::InvalidInput(
                "reversion is defined for expansions at zero".into(),
            ));
        }
        let (v, c) = self.leading()?;
        if v != 1 {
            return Err(Error::InvalidInput(
                "reversion needs a series with valuation one".into(),
            ));
        }
        c.inverse().ok_or(Error::NotInvertible)?;
        let p = self.prec.ok_or_else(|| {
            Error::InvalidInput("reversion of an exact series needs a truncation order".into())
        })?;
        let phi = self.mul_z_power(-1).reciprocal()?;
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        let mut power = Self::one(Point::Zero);
        for n in 1..=p {
            power = power.mul(&phi)?;
            let c = power.coeff(n - 1)?;
            out.insert(n, c.scale(&Rational::new(1.into(), n.into())));
        }
        Ok(Self::from_local(Point::Zero, out, Some(p)))
    }

    /// Residue at the expansion point: the `z^-1` coefficient at zero, its negative at infinity.
    pub fn residue(&self) -> Result<C> {
        let c = self.coeff(-1)?;
        Ok(match self.point {
            Point::Zero => c,
            Point::Infinity => c.neg(),
        })
    }

    /// Projection onto exponents of a given sign. Finite parts come back exact.
    pub fn project(&self, part: Part) -> Result<Self> {
        let keep = |e: i64| match part {
            Part::Minus => e < 0,
            Part::Plus => e >= 0,
            Part::PlusPlus => e > 0,
        };
        let coeffs: BTreeMap<i64, C> = self
            .coeffs
            .iter()
            .filter(|(&k, _)| keep(self.point.to_local(k)))
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        // The projected part is finite iff it lies on the expansion-point side.
        let finite = matches!(
            (self.point, part),
            (Point::Zero, Part::Minus)
                | (Point::Infinity, Part::Plus)
                | (Point::Infinity, Part::PlusPlus)
        );
        if !finite {
            return Ok(Self::from_local(self.point, coeffs, self.prec));
        }
        let needed = match (self.point, part) {
            (Point::Zero, _) => -1,
            (Point::Infinity, Part::Plus) => 0,
            _ => -1,
        };
        if let Some(p) = self.prec {
            if p < needed {
                return Err(Error::OutOfWindow {
                    exponent: self.point.to_local(needed),
                    known: p,
                });
            }
        }
        Ok(Self::from_local(self.point, coeffs, None))
    }

    /// `f(1/z)`: same local coefficients, expansion point swapped.
    pub fn invert_variable(&self) -> Self {
        Self::from_local(self.point.flip(), self.coeffs.clone(), self.prec)
    }

    /// `f^*(z) = sum conj(f_n) z^-n`; swaps the expansion point.
    pub fn conj_star(&self) -> Self {
        Self::from_local(
            self.point.flip(),
            self.coeffs.iter().map(|(&k, c)| (k, c.conj())).collect(),
            self.prec,
        )
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains(' ') {
                format!("({cs})")
            } else {
                cs
            };
            match e {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !c.is_unity() {
                        write!(f, "{cs}*")?;
                    }
                    write!(f, "z")?;
                    if e != 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = self.prec {
            let next = self.point.to_local(p + 1);
            write!(f, " + O(z^{next})")?;
        }
        Ok(())
    }
}

/// Helper: exact rational series from a list of `(exponent, numerator, denominator)`.
pub fn rational_series(point: Point, terms: &[(i64, i64, i64)]) -> Series<Rational> {
    Series::exact(
        point,
        terms
            .iter()
            .map(|&(e, n, d)| (e, Rational::new(n.into(), d.into()))),
    )
}

impl<C: Coeff> Series<C> {
    /// Convenience for `1 + self` when `self` has positive valuation.
    pub fn one_plus(&self) -> Result<Self> {
        Self::one(self.point).add(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    type S = Series<Rational>;

    fn tr(terms: &[(i64, i64, i64)], k: i64) -> S {
        rational_series(Point::Zero, terms).truncate(k)
    }

    #[test]
    fn reciprocal_of_one_plus_z() {
        let f = tr(&[(0, 1, 1), (1, 1, 1)], 3);
        let r = f.reciprocal().unwrap();
        assert_eq!(r, tr(&[(0, 1, 1), (1, -1, 1), (2, 1, 1), (3, -1, 1)], 3));
        assert!(r.coeff(4).is_err());
    }

    #[test]
    fn sqrt_of_one_plus_z() {
        let f = tr(&[(0, 1, 1), (1, 1, 1)], 2);
        let r = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(r, tr(&[(0, 1, 1), (1, 1, 2), (2, -1, 8)], 2));
    }

    #[test]
    fn compose_examples() {
        let f = tr(&[(1, 1, 1), (2, 1, 1)], 4);
        let g = tr(&[(1, 1, 1), (2, -1, 1), (3, 2, 1), (4, -5, 1)], 4);
        assert_eq!(f.compose(&g).unwrap(), tr(&[(1, 1, 1)], 4));
        let f = rational_series(Point::Zero, &[(2, 1, 1)]);
        let g = rational_series(Point::Zero, &[(1, 2, 1)]);
        assert_eq!(
            f.compose(&g).unwrap(),
            rational_series(Point::Zero, &[(2, 4, 1)])
        );
    }

    #[test]
    fn revert_catalan() {
        let u = tr(&[(1, 1, 1), (2, -1, 1)], 4);
        let r = u.revert().unwrap();
        assert_eq!(r, tr(&[(1, 1, 1), (2, 1, 1), (3, 2, 1), (4, 5, 1)], 4));
    }

    #[test]
    fn residues_at_both_points() {
        let f = rational_series(Point::Zero, &[(-1, 1, 1)]);
        assert_eq!(f.residue().unwrap(), rat(1, 1));
        let g = rational_series(Point::Infinity, &[(-1, 1, 1)]);
        assert_eq!(g.residue().unwrap(), rat(-1, 1));
    }

    #[test]
    fn projections() {
        let f = rational_series(Point::Zero, &[(-2, 1, 1), (0, 3, 1), (1, 1, 1)]);
        assert_eq!(
            f.project(Part::Minus).unwrap(),
            rational_series(Point::Zero, &[(-2, 1, 1)])
        );
        assert_eq!(
            f.project(Part::PlusPlus).unwrap(),
            rational_series(Point::Zero, &[(1, 1, 1)])
        );
        assert_eq!(
            f.project(Part::Plus).unwrap(),
            rational_series(Point::Zero, &[(0, 3, 1), (1, 1, 1)])
        );
        let short = tr(&[(0, 1, 1)], -2);
        assert!(short.project(Part::Minus).is_err());
    }

    #[test]
    fn conj_star_of_z_is_inverse_z() {
        let z = S::z(Point::Zero);
        let zs = z.conj_star();
        assert_eq!(zs.point(), Point::Infinity);
        assert_eq!(zs.coeff(-1).unwrap(), rat(1, 1));
        assert_eq!(
            zs.at_point(Point::Zero).unwrap(),
            rational_series(Point::Zero, &[(-1, 1, 1)])
        );
    }

    #[test]
    fn reading_outside_window_fails() {
        let f = tr(&[(0, 1, 1)], 2);
        assert!(matches!(
            f.coeff(3),
            Err(Error::OutOfWindow { exponent: 3, .. })
        ));
        let g = Series::<Rational>::truncated(Point::Infinity, [(1, rat(1, 1))], -2);
        assert!(g.coeff(-2).is_ok());
        assert!(g.coeff(-3).is_err());
    }

    #[test]
    fn derivative_at_infinity() {
        let f =
            Series::<Rational>::truncated(Point::Infinity, [(1, rat(1, 1)), (-1, rat(2, 1))], -3);
        let d = f.derivative();
        assert_eq!(d.coeff(0).unwrap(), rat(1, 1));
        assert_eq!(d.coeff(-2).unwrap(), rat(-2, 1));
        assert_eq!(d.order_high(), Some(-4));
    }

    #[test]
    fn display_shows_remainder() {
        let f = tr(&[(0, 1, 1), (1, -1, 2)], 3);
        assert_eq!(f.to_string(), "1 + -1/2*z + O(z^4)");
    }
}
