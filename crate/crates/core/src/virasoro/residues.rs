//! Residue polynomials in the coordinates: `P_n`, `B_m(n)` and the Laurent
//! coefficients `p_l^(n)` of powers of `u(z)/z`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::Result;
use crate::exact::coeff::Coeff;
use crate::exact::poly::{Family, Gen, Monomial, Poly};
use crate::exact::rational::Rational;
use crate::exact::series::{Point, Series};

/// `u(z) = z (1 + sum_{j<=m} g_j z^j)` with symbolic coefficients of one family,
/// known through `z^(m+1)`.
pub fn symbolic_map(family: Family, m: u32) -> Series<Poly> {
    let mut terms = vec![(1, Poly::unity())];
    terms.extend((1..=m).map(|j| (j as i64 + 1, Poly::gen(Gen::new(family, j)))));
    Series::truncated(Point::Zero, terms, m as i64 + 1)
}

/// `p_l^(n)`: coefficient of `z^l` in `(u(z)/z)^n`, any integer `n`.
pub fn laurent_coeff(family: Family, l: u32, n: i64) -> Result<Poly> {
    if l == 0 {
        return Ok(Poly::unity());
    }
    let unit = symbolic_map(family, l).mul_z_power(-1);
    unit.pow_int(n)?.coeff(l as i64)
}

/// `p_k^(-1)`: coefficient of `z^k` in `z/u(z)`.
pub fn laurent_pm1(family: Family, k: u32) -> Result<Poly> {
    laurent_coeff(family, k, -1)
}

/// `B_m(n) = Res_{z=0} u^(1-n) z^(m-2) / u'` expanded in the coordinates (the `z`-route).
pub fn residue_b_z_route(family: Family, m: i64, n: i64) -> Result<Poly> {
    let weight = n - m;
    if weight < 0 {
        return Ok(Poly::default());
    }
    let u = symbolic_map(family, weight as u32 + 1);
    let h = u.pow_int(1 - n)?.div(&u.derivative())?;
    h.coeff(1 - m)
}

/// `B_m(n) = Res_{t=0} (U'/U)^2 U^m t^(1-n)` with `U` the compositional inverse of `u`
/// (the `U`-route, via Lagrange reversion).
pub fn residue_b_u_route(family: Family, m: i64, n: i64) -> Result<Poly> {
    let weight = n - m;
    if weight < 0 {
        return Ok(Poly::default());
    }
    let u = symbolic_map(family, weight as u32 + 2);
    let big_u = u.revert()?;
    let log_der = big_u.derivative().div(&big_u)?;
    let integrand = log_der
        .mul(&log_der)?
        .mul(&big_u.pow_int(m)?)?
        .mul_z_power(1 - n);
    integrand.residue()
}

/// `P_n`, the coefficient of `t^n (dt/t)^2` in `(d log U)^2`; computed by the `U`-route
/// and memoized per family and weight.
pub fn compute_p(family: Family, n: u32) -> Result<Poly> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, u32), Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("P cache").get(&(family, n)) {
        return Ok(p.clone());
    }
    let p = residue_b_u_route(family, 0, n as i64)?;
    cache
        .lock()
        .expect("P cache")
        .insert((family, n), p.clone());
    Ok(p)
}

/// Both routes for `B_m(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BRoutes {
    pub z_route: Poly,
    pub u_route: Poly,
}

impl BRoutes {
    pub fn agree(&self) -> bool {
        self.z_route == self.u_route
    }
}

pub fn compute_b(family: Family, m: i64, n: i64) -> Result<BRoutes> {
    Ok(BRoutes {
        z_route: residue_b_z_route(family, m, n)?,
        u_route: residue_b_u_route(family, m, n)?,
    })
}

/// Leading coefficient of `P_n` on the single generator `g_n`.
pub fn p_leading_coeff(family: Family, n: u32) -> Result<Rational> {
    let p = compute_p(family, n)?;
    Ok(p.coeff_of(&Monomial::from_gen(Gen::new(family, n), 1)))
}

/// Convenience: `P_n` for the `u` family, with `P_0 = 1`.
pub fn p_u(n: u32) -> Result<Poly> {
    if n == 0 {
        return Ok(Poly::unity());
    }
    compute_p(Family::U, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_p_polynomials() {
        assert_eq!(p_u(1).unwrap().to_string(), "-2*u1");
        assert_eq!(p_u(2).unwrap().to_string(), "7*u1^2 - 4*u2");
    }

    #[test]
    fn laurent_coefficients() {
        // p^(-1): z/u = 1 - u1 z + (u1^2 - u2) z^2 + ...
        assert_eq!(laurent_pm1(Family::U, 1).unwrap().to_string(), "-u1");
        assert_eq!(laurent_pm1(Family::U, 2).unwrap().to_string(), "u1^2 - u2");
        // p^(n+1)_0 = 1 and p^(2)_1 = 2 u1.
        assert_eq!(laurent_coeff(Family::U, 0, 4).unwrap(), Poly::unity());
        assert_eq!(laurent_coeff(Family::U, 1, 2).unwrap().to_string(), "2*u1");
    }

    #[test]
    fn b_routes_agree_small() {
        for m in -2..=2 {
            for n in 1..=4 {
                let b = compute_b(Family::U, m, n).unwrap();
                assert!(b.agree(), "B_{m}({n}): {} vs {}", b.z_route, b.u_route);
            }
        }
    }
}
