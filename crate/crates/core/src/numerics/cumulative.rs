//! `I(x) = int_0^x exp(-beta/y) dy` by three routes.

use std::fmt;
use std::str::FromStr;

use super::hp::{Hp, UNIT};
use super::special::e1;
use super::Estimate;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CumulativeMode {
    /// `x exp(-beta/x) - beta E1(beta/x)`.
    Closed,
    /// `x - beta log x + beta (log beta + gamma - 1) + beta sum_j c_j (beta/x)^j`, convergent.
    SeriesLarge,
    /// `(x^2/beta) exp(-beta/x) sum_n (-1)^n (n+1)! (x/beta)^n`, optimally truncated; `x <= beta/5`.
    AsymptoticSmall,
}

impl CumulativeMode {
    pub const ALL: [CumulativeMode; 3] = [
        CumulativeMode::Closed,
        CumulativeMode::SeriesLarge,
        CumulativeMode::AsymptoticSmall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CumulativeMode::Closed => "closed",
            CumulativeMode::SeriesLarge => "series_large",
            CumulativeMode::AsymptoticSmall => "asymptotic_small",
        }
    }
}

impl fmt::Display for CumulativeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CumulativeMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "closed" => Ok(CumulativeMode::Closed),
            "series_large" => Ok(CumulativeMode::SeriesLarge),
            "asymptotic_small" => Ok(CumulativeMode::AsymptoticSmall),
            _ => Err(Error::InvalidInput(format!(
                "unknown mode {s:?} (expected closed, series_large or asymptotic_small)"
            ))),
        }
    }
}

const SERIES_TOL: f64 = 1e-70;

pub fn cumulative_int(x: &Hp, beta: &Hp, mode: CumulativeMode) -> Result<Estimate> {
    if !(x > &Hp::zero()) || !(beta > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "cumulative_int needs x > 0 and beta > 0, got x = {}, beta = {}",
            x.to_f64(),
            beta.to_f64()
        )));
    }
    match mode {
        CumulativeMode::Closed => closed(x, beta),
        CumulativeMode::SeriesLarge => series_large(x, beta),
        CumulativeMode::AsymptoticSmall => asymptotic_small(x, beta),
    }
}

fn closed(x: &Hp, beta: &Hp) -> Result<Estimate> {
    let s = beta / x;
    let first = x * (-&s).exp();
    let ei = e1(&s)?;
    let second = beta * &ei.value;
    let value = &first - &second;
    let rounding = (first.abs() + second.abs()) * Hp::from_f64(UNIT * 10.0);
    Ok(Estimate {
        value,
        error_bound: rounding + beta * &ei.error_bound,
    })
}

fn series_large(x: &Hp, beta: &Hp) -> Result<Estimate> {
    let s = beta / x;
    let mut sum = Hp::zero();
    let mut largest = Hp::zero();
    // c_j = (-1)^(j+1)/(j+1)! + (-1)^j/(j j!), so c_1 = -1/2 and c_2 = 1/12.
    let mut pow = Hp::one();
    let mut fact = Hp::one();
    for j in 1..10_000i64 {
        pow = pow * &s;
        fact = fact * Hp::from_i64(j);
        let a = Hp::one() / (&fact * Hp::from_i64(j + 1));
        let b = Hp::one() / (&fact * Hp::from_i64(j));
        let c = if j % 2 == 0 { b - a } else { a - b };
        let term = c * &pow;
        largest = largest.max(&term.abs());
        sum = sum + &term;
        if j as f64 > s.to_f64() && term.abs().to_f64() < SERIES_TOL * (1.0 + sum.abs().to_f64()) {
            let head = x - beta * x.ln() + beta * (beta.ln() + Hp::euler_gamma() - Hp::one());
            let value = head.clone() + beta * sum;
            let bound = beta * Hp::from_f64(SERIES_TOL * 2.0)
                + (head.abs() + beta * largest) * Hp::from_f64(UNIT * j as f64);
            return Ok(Estimate {
                value,
                error_bound: bound,
            });
        }
    }
    Err(Error::Inconsistent(
        "large-x series did not converge".into(),
    ))
}

fn asymptotic_small(x: &Hp, beta: &Hp) -> Result<Estimate> {
    let t = x / beta;
    if t > Hp::from_f64(0.2) {
        return Err(Error::Domain(format!(
            "asymptotic_small needs x <= beta/5, got x = {}, beta = {}",
            x.to_f64(),
            beta.to_f64()
        )));
    }
    // Alternating with terms (n+1)! t^n; stop before the smallest term, whose size bounds the error.
    let mut term = Hp::one();
    let mut sum = Hp::zero();
    let mut n = 0i64;
    loop {
        let next = &term * &t * Hp::from_i64(n + 2);
        sum = sum + &term;
        if next.abs() >= term.abs() || next.abs().to_f64() < SERIES_TOL {
            let prefactor = x * x / beta * (-(beta / x)).exp();
            let bound =
                &prefactor * next.abs() + (&prefactor * sum.abs()) * Hp::from_f64(UNIT * 10.0);
            return Ok(Estimate {
                value: prefactor * sum,
                error_bound: bound,
            });
        }
        term = -next;
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(v: f64) -> Hp {
        Hp::from_f64(v)
    }

    #[test]
    fn modes_agree_on_overlaps() {
        for (x, beta) in [(2.0, 1.0), (50.0, 1.0), (0.5, 2.0), (10.0, 5.0)] {
            let a = cumulative_int(&hp(x), &hp(beta), CumulativeMode::Closed).unwrap();
            let b = cumulative_int(&hp(x), &hp(beta), CumulativeMode::SeriesLarge).unwrap();
            let gap = (&a.value - &b.value).abs();
            assert!(
                gap <= &a.error_bound + &b.error_bound + Hp::from_f64(1e-60),
                "x = {x}"
            );
        }
        for (x, beta) in [(0.2, 1.0), (0.05, 1.0), (1.0, 12.0)] {
            let a = cumulative_int(&hp(x), &hp(beta), CumulativeMode::Closed).unwrap();
            let c = cumulative_int(&hp(x), &hp(beta), CumulativeMode::AsymptoticSmall).unwrap();
            let gap = (&a.value - &c.value).abs();
            assert!(gap <= &a.error_bound + &c.error_bound, "x = {x}");
            if x / beta <= 0.1 {
                assert!(c.relative_error() < 0.01);
            }
        }
    }

    #[test]
    fn asymptotic_domain() {
        assert!(cumulative_int(&hp(0.3), &hp(1.0), CumulativeMode::AsymptoticSmall).is_err());
        assert!(cumulative_int(&hp(0.0), &hp(1.0), CumulativeMode::Closed).is_err());
    }

    #[test]
    fn vanishes_at_zero() {
        let v = cumulative_int(&hp(1e-3), &hp(1.0), CumulativeMode::Closed).unwrap();
        assert!(v.value > Hp::zero());
        assert!(v.to_f64() < 1e-300);
    }

    #[test]
    fn modes_parse() {
        for m in CumulativeMode::ALL {
            assert_eq!(m.name().parse::<CumulativeMode>().unwrap(), m);
        }
        assert_eq!(
            "series-large".parse::<CumulativeMode>().unwrap(),
            CumulativeMode::SeriesLarge
        );
    }
}
