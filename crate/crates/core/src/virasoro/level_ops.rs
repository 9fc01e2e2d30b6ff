//! Graded pieces of `Lbar_-1` and `Lbar_-2` acting on one family of generators.
//!
//! `R1`, `R2` raise the weight by one and two, `N1`, `N2` lower it. The barred
//! operators are the same formulas in the barred family.

use crate::algebra::basis::OperatorMatrix;
use crate::error::{Error, Result};
use crate::exact::coeff::Coeff;
use crate::exact::poly::{Family, Gen, Poly};
use crate::exact::rational::int;

use super::residues::{compute_p, laurent_pm1};

fn g(family: Family, k: u32) -> Poly {
    if k == 0 {
        Poly::unity()
    } else {
        Poly::gen(Gen::new(family, k))
    }
}

/// Highest generator index occurring in `f`.
fn max_index(f: &Poly) -> u32 {
    f.terms()
        .flat_map(|(m, _)| m.factors().iter().map(|(g, _)| g.index))
        .max()
        .unwrap_or(0)
}

/// Applies a polynomial in the generators as the matching differential operator
/// (each `g_j` replaced by `d/dg_j`); this is the adjoint of multiplication.
pub fn as_derivatives(p: &Poly, f: &Poly) -> Poly {
    let mut out = Poly::default();
    for (m, c) in p.terms() {
        let mut acc = f.clone();
        for &(gen, e) in m.factors() {
            for _ in 0..e {
                acc = acc.derivative(gen);
            }
        }
        out.add_assign(&acc.scale(c));
    }
    out
}

/// The operators for one family, with the residue data they need precomputed.
#[derive(Clone, Debug)]
pub struct FamilyOps {
    pub family: Family,
    p2: Poly,
    pm1: Vec<Poly>,
}

impl FamilyOps {
    /// Prepares the operators for inputs of weight at most `max_weight`.
    pub fn new(family: Family, max_weight: u32) -> Result<Self> {
        let p2 = compute_p(family, 2)?;
        let pm1 = (0..=max_weight + 2)
            .map(|k| {
                if k == 0 {
                    Ok(Poly::unity())
                } else {
                    laurent_pm1(family, k)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { family, p2, pm1 })
    }

    fn pm1(&self, k: u32) -> Result<&Poly> {
        self.pm1
            .get(k as usize)
            .ok_or_else(|| Error::InvalidInput(format!("operator prepared below weight {k}")))
    }

    /// `R1 = sum_k (2 g_1 g_k - (k+2) g_{k+1}) d/dg_k - 2 g_1`.
    pub fn r1(&self, f: &Poly) -> Result<Poly> {
        let fam = self.family;
        let mut out = f.mul(&g(fam, 1)).scale(&int(-2));
        for k in 1..=max_index(f) {
            let d = f.derivative(Gen::new(fam, k));
            if d.is_empty() {
                continue;
            }
            let coef = g(fam, 1)
                .mul(&g(fam, k))
                .scale(&int(2))
                .sub(&g(fam, k + 1).scale(&int(k as i64 + 2)));
            out.add_assign(&d.mul(&coef));
        }
        Ok(out)
    }

    fn r2_coeff(&self, j: u32) -> Result<Poly> {
        let fam = self.family;
        Ok(self
            .p2
            .mul(&g(fam, j))
            .sub(
                &g(fam, 1)
                    .mul(&g(fam, j + 1))
                    .scale(&int(3 * (j as i64 + 2))),
            )
            .add(&g(fam, j + 2).scale(&int(j as i64 + 3)))
            .sub(self.pm1(j + 2)?))
    }

    /// `R2 = 2 P_2 - sum_j (P_2 g_j - 3(j+2) g_1 g_{j+1} + (j+3) g_{j+2} - p^(-1)_{j+2}) d/dg_j`.
    pub fn r2(&self, f: &Poly) -> Result<Poly> {
        let mut out = f.mul(&self.p2).scale(&int(2));
        for j in 1..=max_index(f) {
            let d = f.derivative(Gen::new(self.family, j));
            if d.is_empty() {
                continue;
            }
            out = out.sub(&d.mul(&self.r2_coeff(j)?));
        }
        Ok(out)
    }

    /// `N1 = sum_j j g_{j-1} d/dg_j` with `g_0 = 1`.
    pub fn n1(&self, f: &Poly) -> Result<Poly> {
        let mut out = Poly::default();
        for j in 1..=max_index(f) {
            let d = f.derivative(Gen::new(self.family, j));
            out.add_assign(&d.mul(&g(self.family, j - 1)).scale(&int(j as i64)));
        }
        Ok(out)
    }

    /// `N2 = sum_{j>=2} (j-1) g_{j-2} d/dg_j` with `g_0 = 1`.
    pub fn n2(&self, f: &Poly) -> Result<Poly> {
        let mut out = Poly::default();
        for j in 2..=max_index(f) {
            let d = f.derivative(Gen::new(self.family, j));
            out.add_assign(&d.mul(&g(self.family, j - 2)).scale(&int(j as i64 - 1)));
        }
        Ok(out)
    }

    /// `R1^t = sum_k (2 g_k d/dg_1 d/dg_k - (k+2) g_k d/dg_{k+1}) - 2 d/dg_1`, as stated.
    pub fn r1t(&self, f: &Poly) -> Result<Poly> {
        let fam = self.family;
        let d1 = f.derivative(Gen::new(fam, 1));
        let mut out = d1.scale(&int(-2));
        let top = max_index(f);
        for k in 1..=top {
            let dd = d1.derivative(Gen::new(fam, k));
            out.add_assign(&dd.mul(&g(fam, k)).scale(&int(2)));
            let dk1 = f.derivative(Gen::new(fam, k + 1));
            out = out.sub(&dk1.mul(&g(fam, k)).scale(&int(k as i64 + 2)));
        }
        Ok(out)
    }

    /// `R2^t`, obtained from `R2` by the rule `g_j <-> d/dg_j` with reversed order:
    /// `2 P_2(d) - sum_j g_j C_j(d)`.
    pub fn r2t(&self, f: &Poly) -> Result<Poly> {
        let w = f
            .terms()
            .map(|(m, _)| m.weight(self.family))
            .max()
            .unwrap_or(0);
        let mut out = as_derivatives(&self.p2, f).scale(&int(2));
        for j in 1..=w.saturating_sub(2).max(1) {
            let c = self.r2_coeff(j)?;
            out = out.sub(&as_derivatives(&c, f).mul(&g(self.family, j)));
        }
        Ok(out)
    }
}

/// Matrices of the level operators at level `n`.
#[derive(Clone, Debug)]
pub struct LevelOperators {
    pub n: u32,
    /// `Rbar1`: level `n-1` to `n`, barred family.
    pub r1: OperatorMatrix,
    /// `Rbar2`: level `n-2` to `n`; absent for `n < 2`.
    pub r2: Option<OperatorMatrix>,
    /// `N1`: level `n` to `n-1`, unbarred family.
    pub n1: OperatorMatrix,
    /// `N2`: level `n` to `n-2`; absent for `n < 2`.
    pub n2: Option<OperatorMatrix>,
    /// `Rbar1^t` from its explicit formula.
    pub r1t: OperatorMatrix,
    pub r2t: Option<OperatorMatrix>,
}

/// Builds all level operators and checks the adjoint formulas against the
/// inner-product transposes.
pub fn build_level_operators(n: u32) -> Result<LevelOperators> {
    if n == 0 {
        return Err(Error::InvalidInput("level operators need n >= 1".into()));
    }
    let bar = FamilyOps::new(Family::UBar, n)?;
    let hol = FamilyOps::new(Family::U, n)?;
    let r1 = OperatorMatrix::materialize(|f| bar.r1(f), n - 1, n, Family::UBar)?;
    let n1 = OperatorMatrix::materialize(|f| hol.n1(f), n, n - 1, Family::U)?;
    let r1t = OperatorMatrix::materialize(|f| bar.r1t(f), n, n - 1, Family::UBar)?;
    if r1t != r1.gram_adjoint() {
        return Err(Error::Inconsistent(format!(
            "R1 adjoint formula disagrees at level {n}"
        )));
    }
    let (r2, n2, r2t) = if n >= 2 {
        let r2 = OperatorMatrix::materialize(|f| bar.r2(f), n - 2, n, Family::UBar)?;
        let n2 = OperatorMatrix::materialize(|f| hol.n2(f), n, n - 2, Family::U)?;
        let r2t = OperatorMatrix::materialize(|f| bar.r2t(f), n, n - 2, Family::UBar)?;
        if r2t != r2.gram_adjoint() {
            return Err(Error::Inconsistent(format!(
                "R2 adjoint formula disagrees at level {n}"
            )));
        }
        (Some(r2), Some(n2), Some(r2t))
    } else {
        (None, None, None)
    };
    Ok(LevelOperators {
        n,
        r1,
        r2,
        n1,
        n2,
        r1t,
        r2t,
    })
}

/// Canonical basis of `ker(R1^t)` at level `n` in the unbarred family.
pub fn r1t_kernel(n: u32) -> Result<Vec<Poly>> {
    let hol = FamilyOps::new(Family::U, n)?;
    let m = OperatorMatrix::materialize(|f| hol.r1t(f), n, n.saturating_sub(1), Family::U)?;
    Ok(m.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::partition_count;

    #[test]
    fn r1_on_one() {
        let ops = FamilyOps::new(Family::UBar, 1).unwrap();
        assert_eq!(ops.r1(&Poly::unity()).unwrap().to_string(), "-2*ubar1");
    }

    #[test]
    fn small_kernels() {
        let k2: Vec<String> = r1t_kernel(2)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(k2, ["u1^2"]);
        let k3: Vec<String> = r1t_kernel(3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(k3, ["u1^3 + 2*u1*u2"]);
    }

    #[test]
    fn ranks_through_level_five() {
        for n in 2..=5u32 {
            let ops = build_level_operators(n).unwrap();
            let pn = partition_count(n) as usize;
            assert_eq!(ops.r1.rank(), partition_count(n - 1) as usize);
            let r2 = ops.r2.as_ref().unwrap();
            assert_eq!(r2.rank(), partition_count(n - 2) as usize);
            assert_eq!(ops.r1t.kernel().len(), pn - partition_count(n - 1) as usize);
            assert_eq!(ops.r1.hconcat(r2).unwrap().rank(), pn);
        }
    }
}
