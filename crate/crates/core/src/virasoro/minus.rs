//! Exterior side: the `l <-> b` coordinate change and a second, independent
//! expansion of the action on the exterior map straight from its series formula.

use crate::algebra::{AlgebraElement, RhoExp};
use crate::error::{Error, Result};
use crate::exact::coeff::Coeff;
use crate::exact::poly::{Family, Gen, Poly};
use crate::exact::rational::rat;
use crate::exact::series::{Part, Point, Series};

use super::action::{Op, WittAction};
use super::residues::symbolic_map;

/// Direction of the coordinate change between `l_k` and the Laurent coefficients `b_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conversion {
    LFromB,
    BFromL,
}

/// `1 + sum l_k w^k = 1 / (1 + sum b_m w^m)`. The relation is symmetric, so both
/// directions take the coefficients of the reciprocal series.
pub fn convert_l_b<C: Coeff>(_direction: Conversion, coeffs: &[C]) -> Result<Vec<C>> {
    let m = coeffs.len() as i64;
    let mut terms = vec![(0, C::unity())];
    terms.extend(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64 + 1, c.clone())),
    );
    let inv = Series::truncated(Point::Zero, terms, m).reciprocal()?;
    (1..=m).map(|k| inv.coeff(k)).collect()
}

/// Action on the exterior data, normalized: `op(rhoinf) / rhoinf^(n+1)` and
/// `op(b_m) / rhoinf^n` for `m = 1..=kmax`, as polynomials in `l` and `lbar`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorImages {
    pub rhoinf: Poly,
    pub b: Vec<Poly>,
}

/// `L(z) = 1 / l(1/z)` at infinity, with `l(w) = w (1 + sum l_k w^k)` symbolic.
fn exterior_map(order: u32) -> Result<Series<Poly>> {
    symbolic_map(Family::L, order)
        .invert_variable()
        .reciprocal()
}

/// Expands the series formulas for `L_n(L(z))` and `Lbar_n(L(z))` symbolically.
pub fn series_route(op: Op, kmax: u32) -> Result<ExteriorImages> {
    let n = op.index();
    let order = kmax + n.unsigned_abs() as u32 + 3;
    let big_l = exterior_map(order)?;
    let dl = big_l.derivative();
    let z2dl = dl.mul_z_power(2);
    let half = rat(1, 2);
    let ln1 = big_l.pow_int(n + 1)?;
    let f = ln1.div(&z2dl)?;
    let res = f.residue()?;
    let (rhoinf, image) = match op {
        Op::L(_) => {
            let bracket = f
                .project(Part::Minus)?
                .add(&Series::exact(Point::Infinity, [(-1, res.scale(&half))]))?;
            let image = big_l
                .scale(&res.scale(&-half.clone()))
                .sub(&z2dl.mul(&bracket)?)?;
            (res.scale(&half), image)
        }
        Op::Lbar(_) => {
            let rc = res.conj();
            let g = ln1.div(&dl)?.conj_star();
            let g_minus = g.project(Part::Minus)?.at_point(Point::Infinity)?;
            let shift = big_l.add(&dl.mul_z_power(1))?;
            let image = shift
                .scale(&rc.scale(&-half.clone()))
                .sub(&z2dl.mul(&g_minus)?)?;
            let rhoinf = rc.scale(&half).add(&g.coeff(-1)?).neg();
            (rhoinf, image)
        }
    };
    let b = (1..=kmax as i64)
        .map(|m| image.coeff(1 - m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExteriorImages { rhoinf, b })
}

fn strip(x: &AlgebraElement, rho: RhoExp) -> Result<Poly> {
    let mut p = Poly::default();
    for ((r, m), c) in x.terms() {
        if *r != rho || c.degree().unwrap_or(0) > 0 {
            return Err(Error::Inconsistent(format!(
                "unexpected radius factor {r} in exterior image"
            )));
        }
        p.add_term(m.clone(), c.coeff(0));
    }
    Ok(p)
}

/// The same images from the derivation action on `l_k`, converted to `b_m`
/// through `b(w) = 1/Lambda(w)`, so `op(b) = -op(Lambda) b^2`.
pub fn transport_route(action: &WittAction, op: Op, kmax: u32) -> Result<ExteriorImages> {
    let n = op.index();
    let rhoinf = strip(&action.image_rhoinf(op)?, RhoExp::rhoinf(n + 1))?;
    let lam = symbolic_map(Family::L, kmax).mul_z_power(-1);
    let b = lam.reciprocal()?;
    let mut dlam = vec![(0, Poly::default())];
    for k in 1..=kmax {
        dlam.push((
            k as i64,
            strip(&action.image_gen(op, Gen::l(k))?, RhoExp::rhoinf(n))?,
        ));
    }
    let dlam = Series::truncated(Point::Zero, dlam, kmax as i64);
    let db = dlam.mul(&b.mul(&b)?)?.neg();
    let b = (1..=kmax as i64)
        .map(|m| db.coeff(m))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExteriorImages { rhoinf, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn conversion_examples() {
        let b = [Poly::gen(Gen::l(1)), Poly::gen(Gen::l(2))];
        let l = convert_l_b(Conversion::LFromB, &b).unwrap();
        assert_eq!(l[0].to_string(), "-l1");
        assert_eq!(l[1].to_string(), "l1^2 - l2");
        let vals: Vec<_> = (1..=8).map(|k| rat(k, k + 3)).collect();
        let there = convert_l_b(Conversion::LFromB, &vals).unwrap();
        assert_eq!(convert_l_b(Conversion::BFromL, &there).unwrap(), vals);
    }

    #[test]
    fn routes_agree() {
        let action = WittAction::new();
        for n in -3..=3 {
            for op in [Op::L(n), Op::Lbar(n)] {
                let a = series_route(op, 4).unwrap();
                let b = transport_route(&action, op, 4).unwrap();
                assert_eq!(a, b, "{op}");
            }
        }
    }

    #[test]
    fn trivial_exterior_map() {
        // At l = 0 the exterior radius only moves under L_0.
        for n in -3..=3i64 {
            let a = series_route(Op::L(n), 2).unwrap();
            let at_zero = a.rhoinf.constant_term();
            let want = if n == 0 { rat(-1, 2) } else { int(0) };
            assert_eq!(at_zero, want, "n={n}");
        }
        assert!(series_route(Op::L(-2), 2).unwrap().rhoinf.is_empty());
    }
}
