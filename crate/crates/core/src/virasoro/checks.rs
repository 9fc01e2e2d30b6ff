//! Structural checks of the action: brackets, stress-tensor coefficients,
//! the diagonal lemma and the real variation of the interior map.

use crate::algebra::{enumerate_partitions, AlgebraElement, RhoExp};
use crate::error::Result;
use crate::exact::coeff::Coeff;
use crate::exact::lambda::LambdaPoly;
use crate::exact::poly::{Family, Gen, Monomial, Poly};
use crate::exact::rational::{int, rat};
use crate::exact::series::{Point, Series};

use super::action::{apply_op, Op};
use super::residues::{compute_p, symbolic_map};

/// `[op1, op2] x - c * op3 x` for the Witt relation `[L_n, L_m] = (m - n) L_{n+m}`.
fn bracket_defect(a: Op, b: Op, x: &AlgebraElement) -> Result<AlgebraElement> {
    let ab = apply_op(a, &apply_op(b, x)?)?;
    let ba = apply_op(b, &apply_op(a, x)?)?;
    let comm = ab.sub(&ba);
    let expected = match (a, b) {
        (Op::L(n), Op::L(m)) => apply_op(Op::L(n + m), x)?.scale(&int(m - n)),
        (Op::Lbar(n), Op::Lbar(m)) => apply_op(Op::Lbar(n + m), x)?.scale(&int(m - n)),
        _ => AlgebraElement::default(),
    };
    Ok(comm.sub(&expected))
}

/// `L_n L_m x - L_m L_n x - (m - n) L_{n+m} x`; zero when the relation holds.
pub fn commutator_check(n: i64, m: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
    bracket_defect(Op::L(n), Op::L(m), x)
}

/// The same defect for the antiholomorphic generators.
pub fn commutator_check_bar(n: i64, m: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
    bracket_defect(Op::Lbar(n), Op::Lbar(m), x)
}

/// `[L_n, Lbar_m] x`; zero when the two actions commute.
pub fn mixed_commutator(n: i64, m: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
    bracket_defect(Op::L(n), Op::Lbar(m), x)
}

/// `rho0^lambda u^p` for every partition `p` of weight at most `max_weight`.
pub fn lowest_weight_monomials(max_weight: u32) -> Vec<AlgebraElement> {
    (0..=max_weight)
        .flat_map(enumerate_partitions)
        .map(|p| AlgebraElement::monomial(RhoExp::rho0_lambda(), p.monomial(Family::U)))
        .collect()
}

/// Outcome of a sweep over generator pairs and test elements.
#[derive(Clone, Debug, Default)]
pub struct BracketReport {
    pub checked: usize,
    /// `(label, test element, nonzero defect)` for each failure.
    pub failures: Vec<(String, String, String)>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Checks the holomorphic bracket and the commutation with the antiholomorphic
/// action for `|n|, |m| <= range` on `rho0^lambda u^p`, `|p| <= max_weight`.
pub fn bracket_sweep(range: i64, max_weight: u32) -> Result<BracketReport> {
    let xs = lowest_weight_monomials(max_weight);
    let mut report = BracketReport::default();
    for n in -range..=range {
        for m in -range..=range {
            for x in &xs {
                let checks = [
                    (format!("[L_{n}, L_{m}]"), commutator_check(n, m, x)?),
                    (format!("[L_{n}, Lbar_{m}]"), mixed_commutator(n, m, x)?),
                ];
                for (label, d) in checks {
                    report.checked += 1;
                    if !d.is_zero() {
                        report.failures.push((label, x.to_string(), d.to_string()));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// One line of the stress-tensor comparison.
#[derive(Clone, Debug)]
pub struct StressLine {
    pub radius: &'static str,
    pub n: i64,
    pub action: AlgebraElement,
    pub expected: AlgebraElement,
}

impl StressLine {
    pub fn ok(&self) -> bool {
        self.action == self.expected
    }
}

/// Compares `L_n rho0` and `L_n rhoinf` from the action with the coefficients of
/// the quadratic differentials `(rho0/2)(d log U)^2` and `-(rhoinf/2)(d log l^-1)^2`,
/// for `|n| <= window`. The `P_n` here come from the reversion route.
pub fn stress_check(window: i64) -> Result<Vec<StressLine>> {
    let half = rat(1, 2);
    let mut out = Vec::new();
    for n in -window..=window {
        let k = n.unsigned_abs() as u32;
        let (pu, pl) = if k == 0 {
            (Poly::unity(), Poly::unity())
        } else {
            (compute_p(Family::U, k)?, compute_p(Family::L, k)?)
        };
        let rho0 = AlgebraElement::rho(RhoExp::rho0(1));
        let e0 = if n <= 0 {
            AlgebraElement::from_poly(RhoExp::rho0(1 + n), &pu.scale(&half))
        } else {
            AlgebraElement::default()
        };
        out.push(StressLine {
            radius: "rho0",
            n,
            action: apply_op(Op::L(n), &rho0)?,
            expected: e0,
        });
        let rhoinf = AlgebraElement::rho(RhoExp::rhoinf(1));
        let einf = if n >= 0 {
            AlgebraElement::from_poly(RhoExp::rhoinf(n + 1), &pl.scale(&-half.clone()))
        } else {
            AlgebraElement::default()
        };
        out.push(StressLine {
            radius: "rhoinf",
            n,
            action: apply_op(Op::L(n), &rhoinf)?,
            expected: einf,
        });
    }
    Ok(out)
}

/// `a^lambda * rho-factor` with `a = rho0 / rhoinf`.
fn a_power(shift0: i64, shiftinf: i64) -> RhoExp {
    RhoExp {
        c0: shift0,
        d0: 1,
        ci: shiftinf,
        di: -1,
    }
}

fn p_or_one(family: Family, n: u32) -> Result<Poly> {
    if n == 0 {
        Ok(Poly::unity())
    } else {
        compute_p(family, n)
    }
}

/// Differences for part (a) of the diagonal lemma at index `n`:
/// `L_n L_-n a^lambda` and `L_-n L_n a^lambda` against
/// `(lambda^2/4) P_n(l) P_n(u) a^(lambda-n) - n lambda a^lambda`.
pub fn verify_diagonal_lemma(n: u32) -> Result<(AlgebraElement, AlgebraElement)> {
    let ni = n as i64;
    let a = AlgebraElement::rho(RhoExp::a_lambda());
    let lam = LambdaPoly::lambda();
    let pp = p_or_one(Family::L, n)?.mul(&p_or_one(Family::U, n)?);
    let expected = AlgebraElement::from_poly(a_power(-ni, ni), &pp)
        .scale_lambda(&lam.mul(&lam).scale(&rat(1, 4)))
        .sub(&a.scale_lambda(&lam.scale(&int(ni))));
    let first = apply_op(Op::L(ni), &apply_op(Op::L(-ni), &a)?)?;
    let second = apply_op(Op::L(-ni), &apply_op(Op::L(ni), &a)?)?;
    Ok((first.sub(&expected), second.sub(&expected)))
}

/// Difference for part (b): `L_m L_-n a^lambda` against
/// `(lambda^2/4) P_m(l) P_n(u) a^lambda rhoinf^m / rho0^n`, for `m > n >= 0`.
pub fn verify_diagonal_lemma_b(m: u32, n: u32) -> Result<AlgebraElement> {
    let a = AlgebraElement::rho(RhoExp::a_lambda());
    let lam = LambdaPoly::lambda();
    let pp = p_or_one(Family::L, m)?.mul(&p_or_one(Family::U, n)?);
    let expected = AlgebraElement::from_poly(a_power(-(n as i64), m as i64), &pp)
        .scale_lambda(&lam.mul(&lam).scale(&rat(1, 4)));
    let got = apply_op(Op::L(m as i64), &apply_op(Op::L(-(n as i64)), &a)?)?;
    Ok(got.sub(&expected))
}

/// `(L_0 + Lbar_0) rho0` and `(L_0 + Lbar_0) rhoinf` under the implemented conventions.
pub fn minus_sign_diagnostic() -> Result<(AlgebraElement, AlgebraElement)> {
    let dil = |x: &AlgebraElement| -> Result<AlgebraElement> {
        Ok(apply_op(Op::L(0), x)?.add(&apply_op(Op::Lbar(0), x)?))
    };
    Ok((
        dil(&AlgebraElement::rho(RhoExp::rho0(1)))?,
        dil(&AlgebraElement::rho(RhoExp::rhoinf(1)))?,
    ))
}

/// Sets every radius to one, keeping the `lambda`-free polynomial part.
fn at_unit_radius(x: &AlgebraElement) -> Poly {
    let mut p = Poly::default();
    for ((_, m), c) in x.terms() {
        p.add_term(m.clone(), c.coeff(0));
    }
    p
}

/// Real variation `(L_n + Lbar_n) phi_+` at `rho0 = 1`, by two routes, through `z^(order+1)`.
#[derive(Clone, Debug)]
pub struct RealVariation {
    /// Derivation action on the coefficients `a_k = rho0 u_k`.
    pub by_action: Series<Poly>,
    /// `u'(z) (1/2 (c_1 + conj c_1) z + sum_{k>1} (c_k + conj c_{2-k}) z^k)`, `c = u^(n+1)/u'`.
    pub by_formula: Series<Poly>,
}

impl RealVariation {
    pub fn agree(&self) -> bool {
        self.by_action == self.by_formula
    }
}

pub fn real_variation(n: i64, order: u32) -> Result<RealVariation> {
    let mut terms = Vec::new();
    for k in 0..=order {
        let ak = if k == 0 {
            AlgebraElement::rho(RhoExp::rho0(1))
        } else {
            AlgebraElement::monomial(RhoExp::rho0(1), Monomial::from_gen(Gen::u(k), 1))
        };
        let v = apply_op(Op::L(n), &ak)?.add(&apply_op(Op::Lbar(n), &ak)?);
        terms.push((k as i64 + 1, at_unit_radius(&v)));
    }
    let by_action = Series::truncated(Point::Zero, terms, order as i64 + 1);

    let m = order + n.unsigned_abs() as u32 + 2;
    let u = symbolic_map(Family::U, m);
    let du = u.derivative();
    let h = u.pow_int(n + 1)?.div(&du)?;
    let c = |j: i64| -> Result<Poly> {
        if h.valuation().is_some_and(|v| j < v) {
            Ok(Poly::default())
        } else {
            h.coeff(j)
        }
    };
    let mut inner = vec![(1, c(1)?.add(&c(1)?.conj()).scale(&rat(1, 2)))];
    for k in 2..=order as i64 + 1 {
        inner.push((k, c(k)?.add(&c(2 - k)?.conj())));
    }
    let inner = Series::truncated(Point::Zero, inner, order as i64 + 1);
    let by_formula = du.mul(&inner)?.truncate(order as i64 + 1);
    Ok(RealVariation {
        by_action,
        by_formula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(k: u32) -> Monomial {
        Monomial::from_gen(Gen::u(k), 1)
    }

    #[test]
    fn bracket_examples() {
        let rl = AlgebraElement::rho(RhoExp::rho0_lambda());
        assert!(commutator_check(1, -1, &rl).unwrap().is_zero());
        let x = AlgebraElement::monomial(RhoExp::rho0_lambda(), u(1));
        assert!(commutator_check(2, -2, &x).unwrap().is_zero());
        let y = AlgebraElement::monomial(
            RhoExp::rho0_lambda(),
            Monomial::from_pairs([(Gen::u(2), 1), (Gen::ubar(1), 1)]),
        );
        for (n, m) in [(-1, -2), (2, -1), (0, 1)] {
            assert!(mixed_commutator(n, m, &y).unwrap().is_zero());
            assert!(commutator_check_bar(n, m, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn stress_tensor() {
        for line in stress_check(4).unwrap() {
            assert!(
                line.ok(),
                "{} n={}: {} vs {}",
                line.radius,
                line.n,
                line.action,
                line.expected
            );
        }
    }

    #[test]
    fn diagonal_lemma_a() {
        for n in 1..=3 {
            let (x, y) = verify_diagonal_lemma(n).unwrap();
            assert!(x.is_zero(), "n={n}: {x}");
            assert!(y.is_zero(), "n={n}: {y}");
        }
    }

    #[test]
    fn diagonal_lemma_b_with_positive_n() {
        for (m, n) in [(2, 1), (3, 1), (3, 2)] {
            let d = verify_diagonal_lemma_b(m, n).unwrap();
            assert!(d.is_zero(), "({m},{n}): {d}");
        }
    }

    #[test]
    fn dilation_diagnostic() {
        let (a, b) = minus_sign_diagnostic().unwrap();
        assert_eq!(a, AlgebraElement::rho(RhoExp::rho0(1)));
        assert_eq!(b, AlgebraElement::rho(RhoExp::rhoinf(1)).scale(&int(-1)));
    }

    #[test]
    fn real_variation_routes() {
        for n in -3..=3 {
            let rv = real_variation(n, 5).unwrap();
            assert!(rv.agree(), "n={n}: {} vs {}", rv.by_action, rv.by_formula);
        }
        let u5 = symbolic_map(Family::U, 5);
        for n in 0..=2i64 {
            let rv = real_variation(n, 5).unwrap();
            assert_eq!(
                rv.by_action,
                u5.pow_int(n + 1).unwrap().truncate(6),
                "n={n}"
            );
        }
        // n = -1: 1 + u'(z)(-1 + (u1 - ubar1) z + z^2).
        let du = symbolic_map(Family::U, 7).derivative();
        let u1 = Poly::gen(Gen::u(1));
        let poly = Series::exact(
            Point::Zero,
            [
                (0, Poly::constant(int(-1))),
                (1, u1.sub(&u1.conj())),
                (2, Poly::unity()),
            ],
        );
        let want = du
            .mul(&poly)
            .unwrap()
            .add(&Series::one(Point::Zero))
            .unwrap()
            .truncate(6);
        assert_eq!(real_variation(-1, 5).unwrap().by_action, want);
    }
}
