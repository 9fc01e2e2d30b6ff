//! Action of the two commuting Witt algebras on the coordinate algebra.
//!
//! Images of generators are read off from the uniform residue formulas for
//! the variation of the interior map; the operators then act as derivations.
//! On the exterior side the images are those of the interior side transported
//! by `u -> l`, `ubar -> lbar`, `rho0 -> 1/rhoinf`, with the sign of the formula
//! taken as written (see [`minus_sign_diagnostic`](super::checks::minus_sign_diagnostic)).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{AlgebraElement, RhoExp};
use crate::error::{Error, Result};
use crate::exact::coeff::Coeff;
use crate::exact::lambda::LambdaPoly;
use crate::exact::poly::{Family, Gen, Monomial, Poly};
use crate::exact::rational::{int, rat};
use crate::exact::series::{Part, Point, Series};

use super::residues::symbolic_map;

/// A Witt generator: `L_n` (holomorphic) or `Lbar_n` (antiholomorphic).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    L(i64),
    Lbar(i64),
}

impl Op {
    pub fn index(self) -> i64 {
        match self {
            Op::L(n) | Op::Lbar(n) => n,
        }
    }

    pub fn is_bar(self) -> bool {
        matches!(self, Op::Lbar(_))
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::L(n) => write!(f, "L_{n}"),
            Op::Lbar(n) => write!(f, "Lbar_{n}"),
        }
    }
}

/// Interior images for one index `n`, as polynomials in `u`:
/// `L_n rho0 = 1/2 rho0^(n+1) r`, `L_n u_k = rho0^n q_k`, `Lbar_n u_k = rho0^n s_k`.
#[derive(Clone, Debug)]
pub struct ImageTable {
    pub n: i64,
    pub kmax: u32,
    pub r: Poly,
    pub q: Vec<Poly>,
    pub s: Vec<Poly>,
}

impl ImageTable {
    /// Builds the table for generators `u_1 .. u_kmax`.
    pub fn build(n: i64, kmax: u32) -> Result<Self> {
        let m = kmax + (-n).max(0) as u32 + 2;
        let half = rat(1, 2);
        let u = symbolic_map(Family::U, m);
        let du = u.derivative();
        let h = u.pow_int(n + 1)?.div(&du)?;
        let r = h.coeff(1)?;

        // L_n(phi_+) = rho0^(n+1) u' [h]_{++} and L_n(rho0) = 1/2 rho0^(n+1) r.
        let f = h.project(Part::PlusPlus)?;
        let shift = du.mul_z_power(1).add(&u)?;
        let lu = du.mul(&f)?.sub(&shift.scale(&r.scale(&half)))?;

        // Lbar_n(phi_+) = rho0^(n+1) u' ([z^2 h^*]_{++} - 1/2 z conj(r)).
        let rc = r.conj();
        let g = h
            .conj_star()
            .mul_z_power(2)
            .project(Part::PlusPlus)?
            .at_point(Point::Zero)?;
        let inner = g.sub(&Series::exact(Point::Zero, [(1, rc.scale(&half))]))?;
        let lbu = du.mul(&inner)?.sub(&u.scale(&rc.scale(&half)))?;

        let q = (1..=kmax as i64)
            .map(|k| lu.coeff(k + 1))
            .collect::<Result<Vec<_>>>()?;
        let s = (1..=kmax as i64)
            .map(|k| lbu.coeff(k + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, kmax, r, q, s })
    }
}

/// Derivation action with cached image tables.
#[derive(Default)]
pub struct WittAction {
    tables: Mutex<HashMap<i64, Arc<ImageTable>>>,
}

impl WittAction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Image table for index `n` covering at least `u_1 .. u_kmax`.
    pub fn table(&self, n: i64, kmax: u32) -> Result<Arc<ImageTable>> {
        let kmax = kmax.max(1);
        if let Some(t) = self.tables.lock().unwrap().get(&n) {
            if t.kmax >= kmax {
                return Ok(t.clone());
            }
        }
        let prev = self.tables.lock().unwrap().get(&n).map_or(0, |t| t.kmax);
        let table = Arc::new(ImageTable::build(n, kmax.max(prev).max(4))?);
        let mut guard = self.tables.lock().unwrap();
        let slot = guard.entry(n).or_insert_with(|| table.clone());
        if slot.kmax < table.kmax {
            *slot = table.clone();
        }
        Ok(slot.clone())
    }

    /// Image of `rho0` under `op`.
    pub fn image_rho0(&self, op: Op) -> Result<AlgebraElement> {
        let n = op.index();
        let t = self.table(n, 1)?;
        let r = if op.is_bar() { t.r.conj() } else { t.r.clone() };
        Ok(AlgebraElement::from_poly(
            RhoExp::rho0(n + 1),
            &r.scale(&rat(1, 2)),
        ))
    }

    /// Image of `rhoinf` under `op`.
    pub fn image_rhoinf(&self, op: Op) -> Result<AlgebraElement> {
        let n = op.index();
        let t = self.table(-n, 1)?;
        let r = if op.is_bar() { t.r.conj() } else { t.r.clone() };
        Ok(AlgebraElement::from_poly(
            RhoExp::rhoinf(n + 1),
            &r.to_exterior().scale(&rat(-1, 2)),
        ))
    }

    /// Image of a coordinate generator under `op`.
    pub fn image_gen(&self, op: Op, g: Gen) -> Result<AlgebraElement> {
        let n = op.index();
        let k = g.index as usize;
        let exterior = matches!(g.family, Family::L | Family::LBar);
        let t = self.table(if exterior { -n } else { n }, g.index)?;
        // Holomorphic generators of the side take q, antiholomorphic ones s;
        // for Lbar the roles of the two families swap.
        let unbarred = matches!(g.family, Family::U | Family::L);
        let base = match (op.is_bar(), unbarred) {
            (false, true) => t.q[k - 1].clone(),
            (false, false) => t.s[k - 1].conj(),
            (true, true) => t.s[k - 1].clone(),
            (true, false) => t.q[k - 1].conj(),
        };
        Ok(if exterior {
            AlgebraElement::from_poly(RhoExp::rhoinf(n), &base.to_exterior())
        } else {
            AlgebraElement::from_poly(RhoExp::rho0(n), &base)
        })
    }

    /// Applies `op` as a derivation.
    pub fn apply(&self, op: Op, x: &AlgebraElement) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::default();
        let mut rho0_img = None;
        let mut rhoinf_img = None;
        for ((rho, m), c) in x.terms() {
            if rho.c0 != 0 || rho.d0 != 0 {
                let img = match &rho0_img {
                    Some(i) => i,
                    None => rho0_img.insert(self.image_rho0(op)?),
                };
                let factor = c.mul(&LambdaPoly::linear(int(rho.c0), int(rho.d0)));
                out.add_assign(
                    &img.mul_term(rho.mul(RhoExp::rho0(-1)), m)
                        .scale_lambda(&factor),
                );
            }
            if rho.ci != 0 || rho.di != 0 {
                let img = match &rhoinf_img {
                    Some(i) => i,
                    None => rhoinf_img.insert(self.image_rhoinf(op)?),
                };
                let factor = c.mul(&LambdaPoly::linear(int(rho.ci), int(rho.di)));
                out.add_assign(
                    &img.mul_term(rho.mul(RhoExp::rhoinf(-1)), m)
                        .scale_lambda(&factor),
                );
            }
            for &(g, e) in m.factors() {
                let rest = m
                    .remove_one(g)
                    .ok_or_else(|| Error::Inconsistent("monomial factor disappeared".into()))?;
                let factor = c.scale(&int(e as i64));
                out.add_assign(
                    &self
                        .image_gen(op, g)?
                        .mul_term(*rho, &rest)
                        .scale_lambda(&factor),
                );
            }
        }
        Ok(out)
    }
}

fn shared() -> &'static WittAction {
    static ACTION: OnceLock<WittAction> = OnceLock::new();
    ACTION.get_or_init(WittAction::new)
}

/// `L_n x`, using a process-wide table cache.
pub fn apply_l(n: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
    shared().apply(Op::L(n), x)
}

/// `Lbar_n x`, using a process-wide table cache.
pub fn apply_lbar(n: i64, x: &AlgebraElement) -> Result<AlgebraElement> {
    shared().apply(Op::Lbar(n), x)
}

/// `op x` with the process-wide cache.
pub fn apply_op(op: Op, x: &AlgebraElement) -> Result<AlgebraElement> {
    shared().apply(op, x)
}

/// Convenience: the element `rho * monomial` with unit coefficient.
pub fn elem(rho: RhoExp, gens: &[(Gen, u32)]) -> AlgebraElement {
    AlgebraElement::monomial(rho, Monomial::from_pairs(gens.iter().copied()))
}
