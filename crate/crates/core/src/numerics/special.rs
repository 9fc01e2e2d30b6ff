//! Gamma, incomplete gamma, exponential integral and modified Bessel `K`.

use std::sync::OnceLock;

use num_traits::Zero;

use super::hp::{Hp, UNIT};
use super::Estimate;
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, int, Rational};

/// Stirling terms used after shifting the argument to at least [`SHIFT_TO`].
const STIRLING_TERMS: usize = 30;
const SHIFT_TO: i64 = 40;
/// Convergence threshold for series and continued fractions.
const TOL: f64 = 1e-70;
const MAX_ITER: usize = 100_000;

/// Supported envelope of [`bessel_k`].
pub const BESSEL_X_MIN: f64 = 1e-3;
pub const BESSEL_X_MAX: f64 = 100.0;
pub const BESSEL_ALPHA_MAX: f64 = 5.0;

/// Trapezoid step for the `cosh` integral representation of `K`.
const BESSEL_STEP: f64 = 0.0625;

/// `B_0, B_2, ..., B_{2 STIRLING_TERMS + 2}`.
fn even_bernoulli() -> &'static [Rational] {
    static CACHE: OnceLock<Vec<Rational>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let top = 2 * STIRLING_TERMS + 2;
        let mut b: Vec<Rational> = vec![int(1)];
        for m in 1..=top {
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += binomial(&int(m as i64 + 1), k as u64) * bk;
            }
            b.push(-acc / int(m as i64 + 1));
        }
        b.into_iter().step_by(2).collect()
    })
}

/// `ln Gamma(z)` for `z >= SHIFT_TO` by Stirling's series, with a remainder bound.
fn ln_gamma_large(z: &Hp) -> (Hp, f64) {
    let b = even_bernoulli();
    let half = Hp::from_f64(0.5);
    let two_pi = Hp::pi() * Hp::from_i64(2);
    let mut s = (z - &half) * z.ln() - z + &half * two_pi.ln();
    let z2 = z * z;
    let mut zpow = z.clone();
    for k in 1..=STIRLING_TERMS {
        let denom = Hp::from_i64((2 * k * (2 * k - 1)) as i64);
        s = s + Hp::from_rational(&b[k]) / (denom * &zpow);
        zpow = zpow * &z2;
    }
    let k = STIRLING_TERMS + 1;
    let next = Hp::from_rational(&b[k]).abs() / (Hp::from_i64((2 * k * (2 * k - 1)) as i64) * zpow);
    (s, next.to_f64())
}

/// `Gamma(a)` for real `a` away from the poles, with a relative error bound.
pub fn gamma(a: &Hp) -> Result<Estimate> {
    if !a.is_finite() {
        return Err(Error::Domain("gamma of a non-finite argument".into()));
    }
    let af = a.to_f64();
    let shift = (SHIFT_TO - af.floor() as i64).max(0);
    let mut prod = Hp::one();
    for k in 0..shift {
        let t = a + Hp::from_i64(k);
        if t.abs().to_f64() < 1e-40 {
            return Err(Error::Domain(format!("gamma has a pole at {af}")));
        }
        prod = prod * t;
    }
    let (lg, rem) = ln_gamma_large(&(a + Hp::from_i64(shift)));
    let value = lg.exp() / prod;
    let rel = rem + UNIT * (shift as f64 + 50.0);
    Ok(Estimate::relative(value, rel))
}

/// `Gamma(a, x)` by the lower series, for `0 < x < a + 1`.
fn upper_gamma_series(a: &Hp, x: &Hp, gamma_a: &Hp) -> Result<(Hp, f64)> {
    let mut term = Hp::one() / a;
    let mut sum = term.clone();
    for n in 1..MAX_ITER {
        term = term * x / (a + Hp::from_i64(n as i64));
        sum = sum + &term;
        if term.abs() < &sum.abs() * &Hp::from_f64(TOL) {
            let lower = sum * x.powf(a) * (-x).exp();
            let upper = gamma_a - &lower;
            // Cancellation in Gamma(a) - gamma(a, x) scales the rounding error.
            let rel = (UNIT * 100.0 + TOL) * (gamma_a.to_f64() / upper.to_f64()).abs().max(1.0);
            return Ok((upper, rel));
        }
    }
    Err(Error::Inconsistent(
        "incomplete gamma series did not converge".into(),
    ))
}

/// `Gamma(a, x)` by the modified Lentz continued fraction, for `x >= a + 1`.
fn upper_gamma_cf(a: &Hp, x: &Hp) -> Result<(Hp, f64)> {
    let tiny = Hp::parse("1e-300");
    let one = Hp::one();
    let two = Hp::from_i64(2);
    let mut b = x + &one - a;
    let mut c = &one / &tiny;
    let mut d = &one / &b;
    let mut h = d.clone();
    for i in 1..MAX_ITER {
        let i_hp = Hp::from_i64(i as i64);
        let an = -(&i_hp * (&i_hp - a));
        b = b + &two;
        d = &an * &d + &b;
        if d.abs() < tiny {
            d = tiny.clone();
        }
        c = &b + &an / &c;
        if c.abs() < tiny {
            c = tiny.clone();
        }
        d = &one / &d;
        let delta = &d * &c;
        h = h * &delta;
        if (delta - &one).abs().to_f64() < TOL {
            let value = (-x).exp() * x.powf(a) * h;
            return Ok((value, TOL * 10.0 + UNIT * (i as f64 + 10.0)));
        }
    }
    Err(Error::Inconsistent(
        "incomplete gamma continued fraction did not converge".into(),
    ))
}

/// Regularized upper incomplete gamma `Gamma(a, x) / Gamma(a)` for `a > 0`, `x > 0`.
pub fn gamma_q(a: &Hp, x: &Hp) -> Result<Estimate> {
    if !(a > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "incomplete gamma needs a > 0, got {}",
            a.to_f64()
        )));
    }
    if !(x > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "incomplete gamma needs x > 0, got {}",
            x.to_f64()
        )));
    }
    let g = gamma(a)?;
    let (upper, rel) = if x < &(a + Hp::one()) {
        upper_gamma_series(a, x, &g.value)?
    } else {
        upper_gamma_cf(a, x)?
    };
    let value = upper / &g.value;
    let rel = rel + g.relative_error();
    Ok(Estimate::relative(value, rel))
}

/// Exponential integral `E1(s) = Gamma(0, s)` for `s > 0`.
pub fn e1(s: &Hp) -> Result<Estimate> {
    if !(s > &Hp::zero()) {
        return Err(Error::Domain(format!("E1 needs s > 0, got {}", s.to_f64())));
    }
    if s < &Hp::one() {
        // -gamma - ln s - sum (-s)^k / (k k!)
        let mut term = Hp::one();
        let mut sum = Hp::zero();
        let neg_s = -s;
        for k in 1..MAX_ITER {
            term = term * &neg_s / Hp::from_i64(k as i64);
            let t = &term / Hp::from_i64(k as i64);
            sum = sum + &t;
            if t.abs().to_f64() < TOL {
                let value = -Hp::euler_gamma() - s.ln() - sum;
                let abs = (TOL + UNIT * 100.0) * (1.0 + s.ln().abs().to_f64());
                return Ok(Estimate {
                    error_bound: Hp::from_f64(abs),
                    value,
                });
            }
        }
        Err(Error::Inconsistent("E1 series did not converge".into()))
    } else {
        let (value, rel) = upper_gamma_cf(&Hp::zero(), s)?;
        Ok(Estimate::relative(value, rel))
    }
}

fn check_bessel_envelope(alpha: f64, x: f64) -> Result<()> {
    if !(BESSEL_X_MIN..=BESSEL_X_MAX).contains(&x) {
        return Err(Error::Domain(format!(
            "Bessel K argument x = {x} outside the supported envelope [{BESSEL_X_MIN}, {BESSEL_X_MAX}]"
        )));
    }
    if !(alpha.abs() <= BESSEL_ALPHA_MAX) {
        return Err(Error::Domain(format!(
            "Bessel K order {alpha} outside the supported envelope |alpha| <= {BESSEL_ALPHA_MAX}"
        )));
    }
    Ok(())
}

/// `K_alpha(x)` on the envelope `x in [1e-3, 100]`, `|alpha| <= 5`.
pub fn bessel_k(alpha: &Hp, x: &Hp) -> Result<Estimate> {
    check_bessel_envelope(alpha.to_f64(), x.to_f64())?;
    bessel_k_unchecked(alpha, x)
}

/// `int_0^inf exp(-x cosh t) cosh(alpha t) dt` by the trapezoid rule, which converges
/// geometrically in `1/h` for this integrand. Valid for any `x > 0`; the error bound is
/// only calibrated on the envelope of [`bessel_k`].
pub(crate) fn bessel_k_unchecked(alpha: &Hp, x: &Hp) -> Result<Estimate> {
    if !(x > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "Bessel K needs x > 0, got {}",
            x.to_f64()
        )));
    }
    let h = Hp::from_f64(BESSEL_STEP);
    let half = Hp::from_f64(0.5);
    let step = h.exp();
    let astep = (alpha.abs() * &h).exp();
    // Beyond this point the integrand is decreasing.
    let af = alpha.abs().to_f64();
    let xf = x.to_f64();
    let t_peak = (af / xf).asinh();

    let mut et = Hp::one();
    let mut eat = Hp::one();
    let f0 = (-x).exp();
    let mut fine = &f0 * &half;
    let mut coarse = fine.clone();
    let mut last;
    let mut j = 0usize;
    loop {
        j += 1;
        et = et * &step;
        eat = eat * &astep;
        let cosh_t = (&et + Hp::one() / &et) * &half;
        let cosh_at = (&eat + Hp::one() / &eat) * &half;
        let f = (-(x * &cosh_t)).exp() * cosh_at;
        fine = fine + &f;
        if j.is_multiple_of(2) {
            coarse = coarse + &f;
        }
        last = f;
        let t = j as f64 * BESSEL_STEP;
        if t > t_peak && last < &fine * &Hp::from_f64(TOL) {
            break;
        }
        if j > MAX_ITER {
            return Err(Error::Inconsistent(
                "Bessel K quadrature did not terminate".into(),
            ));
        }
    }
    let value = fine * &h;
    let coarse = coarse * (&h * Hp::from_i64(2));
    // Geometric convergence: the error at h is about the square of the relative error at 2h.
    let diff = (&value - &coarse).abs() / &value;
    let disc = diff.to_f64().powi(2);
    let t = j as f64 * BESSEL_STEP;
    let slope = xf * t.sinh() - af;
    let tail = (last / &value).to_f64() / slope.max(1e-3);
    let rel = disc + tail + UNIT * (j as f64 + 10.0);
    Ok(Estimate::relative(value, rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn bernoulli_numbers() {
        let b = even_bernoulli();
        assert_eq!(b[1], crate::exact::rational::rat(1, 6));
        assert_eq!(b[2], crate::exact::rational::rat(-1, 30));
        assert_eq!(b[6], crate::exact::rational::rat(691, -2730));
    }

    #[test]
    fn gamma_values() {
        let g = gamma(&Hp::from_i64(5)).unwrap();
        assert!((g.value.clone() - Hp::from_i64(24)).abs().to_f64() < 1e-50);
        let h = gamma(&Hp::from_f64(0.5)).unwrap();
        assert!(((h.value - Hp::pi().sqrt()).abs()).to_f64() < 1e-50);
        // Gamma(-1/2) = -2 sqrt(pi)
        let m = gamma(&Hp::from_f64(-0.5)).unwrap();
        assert!((m.value + Hp::from_i64(2) * Hp::pi().sqrt()).abs().to_f64() < 1e-50);
        assert!(gamma(&Hp::from_i64(-2)).is_err());
    }

    #[test]
    fn incomplete_gamma_at_one_is_exponential() {
        for x in [0.1, 1.0, 1.9, 2.0, 7.5] {
            let q = gamma_q(&Hp::one(), &Hp::from_f64(x)).unwrap();
            assert!(close(q.to_f64(), (-x).exp(), 1e-14), "x = {x}");
        }
    }

    #[test]
    fn incomplete_gamma_half_is_erfc() {
        // Q(1/2, x) = erfc(sqrt x); erfc(1/sqrt 2) = P(|Z| > 1).
        let q = gamma_q(&Hp::from_f64(0.5), &Hp::from_f64(0.5)).unwrap();
        assert!(close(q.to_f64(), 0.317_310_507_862_914_1, 1e-14));
    }

    #[test]
    fn e1_matches_both_branches() {
        // Continuity across the switch at s = 1.
        let a = e1(&Hp::parse("0.99999999")).unwrap().to_f64();
        let b = e1(&Hp::parse("1.00000001")).unwrap().to_f64();
        assert!((a - b).abs() < 1e-7);
        assert!(close(
            e1(&Hp::one()).unwrap().to_f64(),
            0.21938393439552027,
            1e-14
        ));
    }

    #[test]
    fn bessel_half_integer() {
        let x = 1.0f64;
        let k = bessel_k(&Hp::from_f64(0.5), &Hp::from_f64(x)).unwrap();
        let expected = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!(close(k.to_f64(), expected, 1e-14));
        assert!(k.relative_error() < 1e-12);
    }

    #[test]
    fn bessel_envelope() {
        assert!(bessel_k(&Hp::one(), &Hp::from_f64(1e-4)).is_err());
        assert!(bessel_k(&Hp::one(), &Hp::from_f64(101.0)).is_err());
        assert!(bessel_k(&Hp::from_f64(5.5), &Hp::one()).is_err());
        assert!(bessel_k(&Hp::from_f64(-5.0), &Hp::from_f64(1e-3)).is_ok());
    }
}
