//! Cardy's formula for the measure of loops separating the boundaries of an annulus of
//! modulus `rho`:
//! `F(rho) = 6 pi sum_k (-1)^(k-1) k q^(3k^2/2 - k + 1/8) / prod_k (1 - q^k)`, `q = exp(-2 pi^2 / rho)`.

use super::hp::{Hp, UNIT};
use super::Estimate;
use crate::error::{Error, Result};

/// Below this modulus `F` is assembled in log space around the dominant `q^(5/8)` term.
pub const LOG_SPACE_BELOW: f64 = 0.5;
/// Largest supported modulus. The theta sum cancels to about `exp(-rho/12)` of its
/// largest term, which the working precision absorbs up to here.
const RHO_MAX: f64 = 1e3;
const TOL: f64 = 1e-60;

struct Parts {
    /// `log q`.
    log_q: Hp,
    /// The theta sum divided by `q^(5/8)`.
    reduced_sum: Hp,
    /// `sum_k log(1 - q^k)`.
    log_prod: Hp,
    rel_err: f64,
}

fn parts(rho: &Hp) -> Result<Parts> {
    let r = rho.to_f64();
    if !(r > 0.0) {
        return Err(Error::Domain(format!("cardy_F needs rho > 0, got {r}")));
    }
    if r > RHO_MAX {
        return Err(Error::Domain(format!(
            "cardy_F supports rho <= {RHO_MAX}, got {r}"
        )));
    }
    let two_pi2 = Hp::from_i64(2) * Hp::pi() * Hp::pi();
    let log_q = -(two_pi2 / rho);
    let tol = Hp::from_f64(TOL);

    // Pair k and -k: (-1)^(k-1) k q^(3k^2/2 + 1/8) (q^-k - q^k), relative to q^(5/8).
    let mut reduced_sum = Hp::zero();
    let mut sum_terms = 0usize;
    let mut largest = Hp::zero();
    for k in 1i64.. {
        let kk = Hp::from_i64(k);
        let base = Hp::from_i64(3 * k * k) / Hp::from_i64(2) - Hp::from_f64(0.5);
        let plus = (&log_q * (&base - &kk)).exp();
        let minus = (&log_q * (&base + &kk)).exp();
        let sign = if k % 2 == 1 { Hp::one() } else { -Hp::one() };
        let term = sign * &kk * (plus - minus);
        reduced_sum = reduced_sum + &term;
        largest = largest.max(&term.abs());
        sum_terms += 1;
        if term.abs() < &reduced_sum.abs() * &tol {
            break;
        }
    }

    let q = log_q.exp();
    let mut qk = Hp::one();
    let mut log_prod = Hp::zero();
    let mut prod_terms = 0usize;
    loop {
        qk = qk * &q;
        // log(1 - y) by its series when y is small, to keep the log-space path exact.
        let term = if qk < Hp::from_f64(1e-3) {
            let mut acc = Hp::zero();
            let mut p = qk.clone();
            for j in 1..=40i64 {
                acc = acc - &p / Hp::from_i64(j);
                p = p * &qk;
            }
            acc
        } else {
            (Hp::one() - &qk).ln()
        };
        log_prod = log_prod + &term;
        prod_terms += 1;
        if qk.to_f64() < TOL {
            break;
        }
    }
    let cancellation = (largest / reduced_sum.abs()).to_f64();
    let rel_err = TOL * 4.0 + UNIT * (sum_terms + prod_terms + 10) as f64 * 10.0 * cancellation;
    Ok(Parts {
        log_q,
        reduced_sum,
        log_prod,
        rel_err,
    })
}

fn six_pi() -> Hp {
    Hp::from_i64(6) * Hp::pi()
}

/// `F(rho)`. For `rho < 0.5` the value is `exp(log F)` from the log-space path.
pub fn cardy_f(rho: &Hp) -> Result<Estimate> {
    let p = parts(rho)?;
    let five_eighths = Hp::from_f64(0.625);
    let value = if rho.to_f64() < LOG_SPACE_BELOW {
        (six_pi().ln() + &five_eighths * &p.log_q + p.reduced_sum.ln() - &p.log_prod).exp()
    } else {
        let theta = (&five_eighths * &p.log_q).exp() * &p.reduced_sum;
        six_pi() * theta / p.log_prod.exp()
    };
    Ok(Estimate::relative(value, p.rel_err))
}

/// `log F(rho)`, computed without forming `q^(5/8)` for small moduli.
pub fn cardy_log_f(rho: &Hp) -> Result<Estimate> {
    let p = parts(rho)?;
    let value = six_pi().ln() + Hp::from_f64(0.625) * &p.log_q + p.reduced_sum.ln() - p.log_prod;
    Ok(Estimate {
        error_bound: Hp::from_f64(p.rel_err),
        value,
    })
}

/// `-rho (log F(rho) - log 6 pi)`, which tends to `5 pi^2 / 4` as `rho -> 0`.
pub fn cardy_exponent(rho: &Hp) -> Result<Estimate> {
    let lf = cardy_log_f(rho)?;
    let value = -(rho * (&lf.value - six_pi().ln()));
    Ok(Estimate {
        error_bound: rho * &lf.error_bound,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_and_increasing() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let rho = 0.5 * i as f64;
            let f = cardy_f(&Hp::from_f64(rho)).unwrap().to_f64();
            assert!(f > prev, "rho = {rho}");
            prev = f;
        }
    }

    #[test]
    fn log_space_agrees_with_direct_near_the_switch() {
        for rho in [0.5, 0.8, 2.0] {
            let r = Hp::from_f64(rho);
            let direct = cardy_f(&r).unwrap().value.ln();
            let logged = cardy_log_f(&r).unwrap().value;
            assert!((direct - logged).abs().to_f64() < 1e-50);
        }
    }

    #[test]
    fn small_modulus_does_not_underflow() {
        let e = cardy_exponent(&Hp::from_f64(0.001)).unwrap();
        let target = 5.0 * std::f64::consts::PI.powi(2) / 4.0;
        assert!((e.to_f64() - target).abs() < 1e-12);
        assert!(cardy_f(&Hp::zero()).is_err());
    }
}
