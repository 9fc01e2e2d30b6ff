//! High-precision evaluation of the conjectured diagonal distribution and of Cardy's
//! annulus formula. Every published value comes with an absolute error bound.

mod cardy;
mod cumulative;
pub mod hp;
mod sandwich;
pub mod special;

pub use cardy::{cardy_exponent, cardy_f, cardy_log_f, LOG_SPACE_BELOW};
pub use cumulative::{cumulative_int, CumulativeMode};
pub use hp::{fmt_decimal, Hp};
pub use sandwich::{beta_scan, sandwich_check, BetaScan, SandwichReport, SandwichRow};
pub use special::{bessel_k, e1, gamma, gamma_q};

use crate::error::{Error, Result};

/// A high-precision value and an absolute bound on its error.
#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub value: Hp,
    pub error_bound: Hp,
}

impl Estimate {
    pub fn exact(value: Hp) -> Self {
        Self {
            value,
            error_bound: Hp::zero(),
        }
    }

    pub fn relative(value: Hp, rel: f64) -> Self {
        let error_bound = value.abs() * Hp::from_f64(rel);
        Self { value, error_bound }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn relative_error(&self) -> f64 {
        if self.value.is_zero() {
            return if self.error_bound.is_zero() {
                0.0
            } else {
                f64::INFINITY
            };
        }
        (&self.error_bound / self.value.abs()).to_f64()
    }

    pub fn value_text(&self) -> String {
        fmt_decimal(&self.value)
    }

    pub fn bound_text(&self) -> String {
        self.error_bound.to_scientific(3)
    }
}

/// Parameters of the conjectured law: scale `beta` and central charge `c`, with `alpha = 1 - c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureParams {
    pub beta: Hp,
    pub c: Hp,
}

impl ConjectureParams {
    pub fn new(beta: Hp, c: Hp) -> Result<Self> {
        if !(beta > Hp::zero()) || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "beta must be positive, got {}",
                beta.to_f64()
            )));
        }
        if !c.is_finite() {
            return Err(Error::Domain("c must be finite".into()));
        }
        Ok(Self { beta, c })
    }

    pub fn from_f64(beta: f64, c: f64) -> Result<Self> {
        if !beta.is_finite() || !c.is_finite() {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        Self::new(Hp::from_f64(beta), Hp::from_f64(c))
    }

    pub fn alpha(&self) -> Hp {
        Hp::one() - &self.c
    }

    /// The law is a probability distribution only for `alpha > 0`, i.e. `c < 1`.
    fn probabilistic_alpha(&self) -> Result<Hp> {
        let a = self.alpha();
        if !(a > Hp::zero()) {
            return Err(Error::Domain(format!(
                "alpha = 1 - c must be positive, got {}",
                a.to_f64()
            )));
        }
        Ok(a)
    }
}

/// `nu({exp(-x) <= a <= 1}) = Gamma(alpha, beta/x) / Gamma(alpha)`; `exp(-beta/x)` when `c = 0`.
pub fn diag_cdf(x: &Hp, p: &ConjectureParams) -> Result<Estimate> {
    if !(x > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "diag_cdf needs x > 0, got {}",
            x.to_f64()
        )));
    }
    let alpha = p.probabilistic_alpha()?;
    let s = &p.beta / x;
    if alpha == Hp::one() {
        return Ok(Estimate::relative((-s).exp(), hp::UNIT * 4.0));
    }
    gamma_q(&alpha, &s)
}

/// Laplace transform of `-log a`: `2 (beta lambda)^(alpha/2) K_alpha(2 sqrt(beta lambda)) / Gamma(alpha)`,
/// equal to 1 at `lambda = 0`.
pub fn diag_laplace(lambda: &Hp, p: &ConjectureParams) -> Result<Estimate> {
    if lambda.is_negative() {
        return Err(Error::Domain(format!(
            "diag_laplace needs lambda >= 0, got {}",
            lambda.to_f64()
        )));
    }
    let alpha = p.probabilistic_alpha()?;
    if lambda.is_zero() {
        return Ok(Estimate::exact(Hp::one()));
    }
    let s = &p.beta * lambda;
    let arg = Hp::from_i64(2) * s.sqrt();
    let k = special::bessel_k_unchecked(&alpha, &arg)?;
    let g = gamma(&alpha)?;
    let value = Hp::from_i64(2) * s.powf(&(&alpha * Hp::from_f64(0.5))) * &k.value / &g.value;
    let rel = k.relative_error() + g.relative_error() + hp::UNIT * 10.0;
    Ok(Estimate::relative(value, rel))
}

/// `lambda f'' + c f' - beta f` with `f = diag_laplace` and central differences of step `h`.
/// The bound covers evaluation error only; the O(h^2) truncation is the quantity of interest.
pub fn ode_residual(lambda: &Hp, p: &ConjectureParams, h: &Hp) -> Result<Estimate> {
    let two = Hp::from_i64(2);
    if !(h > &Hp::zero()) || !(lambda > &(&two * h)) {
        return Err(Error::Domain(format!(
            "ode_residual needs lambda > 2h > 0, got lambda = {}, h = {}",
            lambda.to_f64(),
            h.to_f64()
        )));
    }
    let fm = diag_laplace(&(lambda - h), p)?;
    let f0 = diag_laplace(lambda, p)?;
    let fp = diag_laplace(&(lambda + h), p)?;
    let d2 = (&fp.value - &two * &f0.value + &fm.value) / (h * h);
    let d1 = (&fp.value - &fm.value) / (&two * h);
    let value = lambda * d2 + &p.c * d1 - &p.beta * &f0.value;
    let err = fm.error_bound.max(&f0.error_bound).max(&fp.error_bound);
    let gain = Hp::from_i64(4) * lambda / (h * h) + p.c.abs() / h + &p.beta;
    Ok(Estimate {
        value,
        error_bound: err * gain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64, c: f64) -> ConjectureParams {
        ConjectureParams::from_f64(beta, c).unwrap()
    }

    #[test]
    fn cdf_at_c_zero_is_exponential() {
        let v = diag_cdf(&Hp::one(), &params(1.0, 0.0)).unwrap();
        assert!((v.to_f64() - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(v.value_text(), "0.367879441171442");
        assert!(diag_cdf(&Hp::zero(), &params(1.0, 0.0)).is_err());
        assert!(diag_cdf(&Hp::one(), &params(1.0, 1.0)).is_err());
    }

    #[test]
    fn laplace_normalization() {
        for c in [0.0, 0.5] {
            let v = diag_laplace(&Hp::zero(), &params(2.0, c)).unwrap();
            assert_eq!(v.value_text(), "1.000000000000000");
        }
        // Continuity at 0.
        let v = diag_laplace(&Hp::parse("1e-12"), &params(1.0, 0.0)).unwrap();
        assert!((v.to_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn laplace_at_c_half_is_exponential() {
        // alpha = 1/2: 2 s^(1/4) K_(1/2)(2 sqrt s) / sqrt(pi) = exp(-2 sqrt s).
        let v = diag_laplace(&Hp::from_i64(3), &params(2.0, 0.5)).unwrap();
        assert!((v.to_f64() - (-2.0 * 6f64.sqrt()).exp()).abs() < 1e-15);
    }

    #[test]
    fn ode_domain() {
        let p = params(1.0, 0.0);
        assert!(ode_residual(&Hp::from_f64(1e-4), &p, &Hp::from_f64(1e-4)).is_err());
        assert!(ode_residual(&Hp::one(), &p, &Hp::zero()).is_err());
    }
}
