//! Grid test of `F(rho) <= int_0^rho exp(-beta/x) dx <= F(log 16 + rho)` for a candidate `beta`.
//! A violation rules the candidate out under Cardy's formula; passing proves nothing.

use rayon::prelude::*;

use super::cardy::cardy_f;
use super::cumulative::{cumulative_int, CumulativeMode};
use super::hp::Hp;
use super::Estimate;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRow {
    pub rho: Hp,
    pub lower: Estimate,
    pub middle: Estimate,
    pub upper: Estimate,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub beta: Hp,
    pub rows: Vec<SandwichRow>,
}

impl SandwichReport {
    pub fn feasible(&self) -> bool {
        self.rows.iter().all(|r| r.lower_ok && r.upper_ok)
    }

    pub fn violations(&self) -> impl Iterator<Item = &SandwichRow> {
        self.rows.iter().filter(|r| !(r.lower_ok && r.upper_ok))
    }
}

fn row(rho: &Hp, beta: &Hp, log16: &Hp) -> Result<SandwichRow> {
    let lower = cardy_f(rho)?;
    let middle = cumulative_int(rho, beta, CumulativeMode::Closed)?;
    let upper = cardy_f(&(log16 + rho))?;
    // An inequality counts as violated only when the gap exceeds both error bounds.
    let lower_ok = lower.value <= &middle.value + &lower.error_bound + &middle.error_bound;
    let upper_ok = middle.value <= &upper.value + &upper.error_bound + &middle.error_bound;
    Ok(SandwichRow {
        rho: rho.clone(),
        lower,
        middle,
        upper,
        lower_ok,
        upper_ok,
    })
}

pub fn sandwich_check(beta: &Hp, grid: &[Hp]) -> Result<SandwichReport> {
    if !(beta > &Hp::zero()) {
        return Err(Error::Domain(format!(
            "beta must be positive, got {}",
            beta.to_f64()
        )));
    }
    if let Some(bad) = grid.iter().find(|r| !(*r > &Hp::zero())) {
        return Err(Error::Domain(format!(
            "grid points must be positive, got {}",
            bad.to_f64()
        )));
    }
    let log16 = Hp::from_i64(16).ln();
    let rows = grid
        .par_iter()
        .map(|rho| row(rho, beta, &log16))
        .collect::<Result<Vec<_>>>()?;
    Ok(SandwichReport {
        beta: beta.clone(),
        rows,
    })
}

/// Which candidates survive the sandwich test, and whether they form one interval of the scan.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaScan {
    pub accepted: Vec<bool>,
    pub betas: Vec<Hp>,
}

impl BetaScan {
    /// True when the accepted candidates are consecutive in the (sorted) scan.
    pub fn is_interval(&self) -> bool {
        let idx: Vec<usize> = (0..self.accepted.len())
            .filter(|&i| self.accepted[i])
            .collect();
        idx.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Smallest and largest accepted candidate.
    pub fn endpoints(&self) -> Option<(Hp, Hp)> {
        let first = self.accepted.iter().position(|&a| a)?;
        let last = self.accepted.iter().rposition(|&a| a)?;
        Some((self.betas[first].clone(), self.betas[last].clone()))
    }
}

pub fn beta_scan(betas: &[Hp], grid: &[Hp]) -> Result<BetaScan> {
    let mut sorted = betas.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite candidates"));
    let accepted = sorted
        .iter()
        .map(|b| sandwich_check(b, grid).map(|r| r.feasible()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BetaScan {
        accepted,
        betas: sorted,
    })
}
