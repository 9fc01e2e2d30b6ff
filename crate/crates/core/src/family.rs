//! The explicit welding family `u(z) = z (1 + w z^N)^(-1/N)`, whose exterior map is
//! `L(z) = z (1 - wbar z^-N)^(1/N)` and whose dilation is `a = (1 - |w|^2)^(1/N)`.
//! Everything here is exact over the Gaussian rationals except the final square roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::coeff::Coeff;
use crate::exact::poly::Family;
use crate::exact::rational::{int, GaussianRational, Rational};
use crate::exact::series::{Point, Series};
use crate::numerics::{Estimate, Hp};
use crate::virasoro::{compute_p, convert_l_b, Conversion};

/// Largest `n` accepted by [`family_p_check`].
pub const P_CHECK_MAX: u32 = 16;

/// A member of the family: `N >= 1` and `|w| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPoint {
    n: u32,
    w: GaussianRational,
}

impl FamilyPoint {
    pub fn new(n: u32, w: GaussianRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("N must be a positive integer".into()));
        }
        if w.norm_sqr() >= Rational::one() {
            return Err(Error::Domain(format!(
                "|w| must be < 1, got |w|^2 = {}",
                w.norm_sqr()
            )));
        }
        Ok(Self { n, w })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn w(&self) -> &GaussianRational {
        &self.w
    }

    /// The inverse homeomorphism lies in the family at `-w`.
    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            w: self.w.neg(),
        }
    }
}

impl fmt::Display for FamilyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, w={}", self.n, self.w)
    }
}

/// Coefficients `u_1..`, `l_1..`, `b_1..` through the requested order.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySeries {
    pub order: u32,
    /// `u(z) = z (1 + sum u_k z^k)`.
    pub u: Vec<GaussianRational>,
    /// `z / L(z) = 1 + sum l_k z^-k`.
    pub l: Vec<GaussianRational>,
    /// `L(z) = z (1 + sum b_m z^-m)`.
    pub b: Vec<GaussianRational>,
}

/// Coefficients of `(1 + c t^N)^e` for `t^1..t^order`.
fn binomial_series(
    c: &GaussianRational,
    n: u32,
    e: &Rational,
    order: u32,
) -> Result<Vec<GaussianRational>> {
    let base = Series::truncated(
        Point::Zero,
        [(0, GaussianRational::unity()), (n as i64, c.clone())],
        order as i64,
    );
    let p = base.pow_rational(e)?;
    (1..=order as i64).map(|k| p.coeff(k)).collect()
}

pub fn family_series(pt: &FamilyPoint, order: u32) -> Result<FamilySeries> {
    if order < pt.n {
        return Err(Error::InvalidInput(format!(
            "order {order} must be at least N = {}",
            pt.n
        )));
    }
    let e = -Rational::new(1.into(), (pt.n as i64).into());
    let u = binomial_series(&pt.w, pt.n, &e, order)?;
    let l = binomial_series(&pt.w.conj().neg(), pt.n, &e, order)?;
    let b = convert_l_b(Conversion::BFromL, &l)?;
    Ok(FamilySeries { order, u, l, b })
}

/// `(1 - |w|^2)^(1/N)`: exact when it is a rational number, always as a high-precision value.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedA {
    pub exact: Option<Rational>,
    pub value: Estimate,
}

fn exact_root(r: &Rational, n: u32) -> Option<Rational> {
    let root = |x: &BigInt| {
        let s = x.nth_root(n);
        (num_traits::pow(s.clone(), n as usize) == *x).then_some(s)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

pub fn family_a_closed(pt: &FamilyPoint) -> ClosedA {
    let r = Rational::one() - pt.w.norm_sqr();
    let exact = exact_root(&r, pt.n);
    let value = match &exact {
        Some(q) => Estimate::exact(Hp::from_rational(q)),
        None => {
            let v = Hp::from_rational(&r).powf(&(Hp::one() / Hp::from_i64(pt.n as i64)));
            Estimate::relative(v, crate::numerics::hp::UNIT * 10.0)
        }
    };
    ClosedA { exact, value }
}

/// Truncated area formula `a = ((1 - sum (m-1)|b_m|^2) / (1 + sum (n+1)|u_n|^2))^(1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AreaEstimate {
    pub order: u32,
    /// Truncated numerator and denominator, exact.
    pub numerator: Rational,
    pub denominator: Rational,
    pub value: Hp,
    /// `value - a` lies in `[0, tail_bound]`: truncation only raises the numerator and
    /// lowers the denominator.
    pub tail_bound: Hp,
}

/// Tail estimate for a positive series from its last two nonzero terms. It is a bound
/// when the term ratios do not increase; [`family_area`] uses a proven bound instead.
fn ratio_tail(terms: &[Rational]) -> Rational {
    let nz: Vec<&Rational> = terms.iter().filter(|t| !t.is_zero()).collect();
    match nz.as_slice() {
        [.., prev, last] => geometric_tail(last, &(*last / *prev))
            .unwrap_or_else(|| (*last).clone() * int(terms.len() as i64)),
        _ => Rational::zero(),
    }
}

/// `t r / (1 - r)`, the tail after `t` when every later ratio is at most `r < 1`.
fn geometric_tail(t: &Rational, r: &Rational) -> Option<Rational> {
    (*r < Rational::one()).then(|| t * r / (Rational::one() - r))
}

fn area_terms(
    u: &[GaussianRational],
    b: &[GaussianRational],
    order: u32,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let k = order as usize;
    if u.len() < k || b.len() < k {
        return Err(Error::InvalidInput(format!(
            "area formula at order {order} needs {order} coefficients, got {} and {}",
            u.len(),
            b.len()
        )));
    }
    let num_terms = b[..k]
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm_sqr() * int(i as i64))
        .collect();
    let den_terms = u[..k]
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm_sqr() * int(i as i64 + 2))
        .collect();
    Ok((num_terms, den_terms))
}

fn area_estimate(
    order: u32,
    num_terms: &[Rational],
    den_terms: &[Rational],
    num_tail: Rational,
    den_tail: Rational,
) -> Result<AreaEstimate> {
    let denominator = den_terms.iter().fold(Rational::one(), |acc, t| acc + t);
    let numerator = num_terms.iter().fold(Rational::one(), |acc, t| acc - t);
    if !numerator.is_positive() {
        return Err(Error::Domain(format!(
            "truncated numerator {numerator} is not positive (order too low or invalid coefficients)"
        )));
    }
    let value = Hp::from_rational(&(&numerator / &denominator)).sqrt();
    let lo_num = &numerator - num_tail;
    let hi_den = &denominator + den_tail;
    let tail_bound = if lo_num.is_positive() {
        &value - Hp::from_rational(&(lo_num / hi_den)).sqrt()
    } else {
        value.clone()
    };
    Ok(AreaEstimate {
        order,
        numerator,
        denominator,
        value,
        tail_bound,
    })
}

/// The area formula from arbitrary coefficients through `order`. The tail is estimated
/// from the last two nonzero terms of each sum.
pub fn area_theorem_a(
    u: &[GaussianRational],
    b: &[GaussianRational],
    order: u32,
) -> Result<AreaEstimate> {
    let (num_terms, den_terms) = area_terms(u, b, order)?;
    let (nt, dt) = (ratio_tail(&num_terms), ratio_tail(&den_terms));
    area_estimate(order, &num_terms, &den_terms, nt, dt)
}

/// The area formula for a family member, with a proven tail bound. Nonzero terms sit at
/// multiples `jN`; the binomial factors shrink with `j`, so the ratio of consecutive terms
/// after the last kept index `J` is at most `((J+1)N +- 1)/(JN +- 1) |w|^2`.
pub fn family_area(pt: &FamilyPoint, order: u32) -> Result<AreaEstimate> {
    let s = family_series(pt, order)?;
    let (num_terms, den_terms) = area_terms(&s.u, &s.b, order)?;
    let n = pt.n as i64;
    let big_j = (order / pt.n) as i64;
    let w2 = pt.w.norm_sqr();
    let last = (big_j * n - 1) as usize;
    let den_ratio = Rational::new((big_j * n + n + 1).into(), (big_j * n + 1).into()) * &w2;
    let den_tail = if den_terms[last].is_zero() {
        Rational::zero()
    } else {
        geometric_tail(&den_terms[last], &den_ratio)
            .ok_or_else(|| Error::InvalidInput(format!("order {order} too low for a tail bound")))?
    };
    // For N = 1 only b_1 is nonzero and its weight m - 1 vanishes.
    let num_tail = if pt.n == 1 || num_terms[last].is_zero() {
        Rational::zero()
    } else {
        let r = Rational::new((big_j * n + n - 1).into(), (big_j * n - 1).into()) * &w2;
        geometric_tail(&num_terms[last], &r)
            .ok_or_else(|| Error::InvalidInput(format!("order {order} too low for a tail bound")))?
    };
    area_estimate(order, &num_terms, &den_terms, num_tail, den_tail)
}

/// `P_n` at the family, from the `u` side and from the `l` side.
#[derive(Clone, Debug, PartialEq)]
pub struct PCheck {
    pub n: u32,
    pub p_u: GaussianRational,
    pub p_l: GaussianRational,
    /// `(m+1) w^m` when `n = mN`, otherwise zero.
    pub expected_u: GaussianRational,
    /// `(m+1) (-wbar)^m` when `n = mN`, otherwise zero.
    pub expected_l: GaussianRational,
    /// `P_n(u) = (-1)^m P_n(l)^*`.
    pub relation: bool,
    /// The unsigned form `P_n(u) = -P_n(l)^*`, which fails for even nonzero `m`.
    pub literal_relation: bool,
}

impl PCheck {
    pub fn pass(&self) -> bool {
        self.p_u == self.expected_u && self.p_l == self.expected_l && self.relation
    }
}

pub fn family_p_check(pt: &FamilyPoint, n: u32) -> Result<PCheck> {
    if n == 0 || n > P_CHECK_MAX {
        return Err(Error::InvalidInput(format!(
            "P_n check supports 1 <= n <= {P_CHECK_MAX}, got {n}"
        )));
    }
    let s = family_series(pt, n.max(pt.n))?;
    let p_u = compute_p(Family::U, n)?.eval_gaussian(|g| s.u[g.index as usize - 1].clone());
    let p_l = compute_p(Family::L, n)?.eval_gaussian(|g| s.l[g.index as usize - 1].clone());
    let (expected_u, expected_l, m) = if n.is_multiple_of(pt.n) {
        let m = (n / pt.n) as i64;
        let c = int(m + 1);
        let wu = pt.w.powi(m).expect("nonnegative power");
        let wl = pt.w.conj().neg().powi(m).expect("nonnegative power");
        (wu.scale(&c), wl.scale(&c), m)
    } else {
        (GaussianRational::nil(), GaussianRational::nil(), 0)
    };
    let sign = if m % 2 == 0 {
        p_l.conj()
    } else {
        p_l.conj().neg()
    };
    let relation = p_u == sign;
    let literal_relation = p_u == p_l.conj().neg();
    Ok(PCheck {
        n,
        p_u,
        p_l,
        expected_u,
        expected_l,
        relation,
        literal_relation,
    })
}

/// `u(sigma^-1)(z) = 1 / L(1/z^*)^*` built from the exterior map, compared with the family at `-w`.
#[derive(Clone, Debug, PartialEq)]
pub struct InversionCheck {
    pub order: u32,
    /// Coefficients of `u(sigma^-1)`.
    pub inverse_u: Vec<GaussianRational>,
    /// First index where they differ from the family at `-w`.
    pub first_mismatch: Option<u32>,
    /// `u_k(sigma^-1) = conj(l_k(sigma))` for every `k`.
    pub conj_l: bool,
    /// `a(sigma^-1) = a(sigma)` in closed form.
    pub same_a: bool,
}

impl InversionCheck {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none() && self.conj_l && self.same_a
    }
}

pub fn inversion_check(pt: &FamilyPoint, order: u32) -> Result<InversionCheck> {
    let order = order.max(pt.n);
    let s = family_series(pt, order)?;
    let mut terms = vec![(1, GaussianRational::unity())];
    // L(z) = z + sum b_m z^(1-m).
    terms.extend(
        s.b.iter()
            .enumerate()
            .map(|(i, c)| (-(i as i64), c.clone())),
    );
    let big_l = Series::truncated(Point::Infinity, terms, 1 - order as i64);
    let inv = big_l.conj_star().reciprocal()?;
    let inverse_u = (1..=order as i64)
        .map(|k| inv.coeff(k + 1))
        .collect::<Result<Vec<_>>>()?;

    let twin = family_series(&pt.inverse(), order)?;
    let first_mismatch = inverse_u
        .iter()
        .zip(&twin.u)
        .position(|(a, b)| a != b)
        .map(|i| i as u32 + 1);
    let conj_l = inverse_u.iter().zip(&s.l).all(|(a, b)| *a == b.conj());
    let same_a = family_a_closed(pt) == family_a_closed(&pt.inverse());
    Ok(InversionCheck {
        order,
        inverse_u,
        first_mismatch,
        conj_l,
        same_a,
    })
}
