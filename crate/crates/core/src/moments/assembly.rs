use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::algebra::linalg::Matrix;
use crate::algebra::{enumerate_partitions, AlgebraElement, Partition, RhoExp};
use crate::error::{Error, Result};
use crate::exact::coeff::Coeff;
use crate::exact::poly::{Family, Gen, Poly};
use crate::exact::rational::{int, Rational};
use crate::virasoro::{apply_op, FamilyOps, Op};

/// Which generator produced an equation, and from which monomial.
///
/// `Lbar(k)` stands for `E(Lbar_-k(rho0^k u^P ubar^Q)) = 0`; `L(k)` for the
/// conjugate `E(L_-k(rho0^k u^P ubar^Q)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquationId {
    pub bar: bool,
    pub k: u32,
    pub p: Partition,
    pub q: Partition,
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.bar { "Lbar" } else { "L" };
        write!(
            f,
            "{op}_-{}(rho0^{} u^[{}] ubar^[{}])",
            self.k, self.k, self.p, self.q
        )
    }
}

/// Equations at one level: `rows * x = rhs` over the unknowns `E(u^P ubar^Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem {
    pub level: u32,
    /// Unknowns in canonical order: `P` major, `Q` minor.
    pub unknowns: Vec<(Partition, Partition)>,
    pub ids: Vec<EquationId>,
    pub rows: Matrix,
    pub rhs: Vec<Rational>,
}

impl EquationSystem {
    pub(crate) fn new(
        level: u32,
        ids: Vec<EquationId>,
        rows: Vec<(Vec<Rational>, Rational)>,
    ) -> Self {
        let parts = enumerate_partitions(level);
        let unknowns = parts
            .iter()
            .flat_map(|p| parts.iter().map(move |q| (p.clone(), q.clone())))
            .collect();
        let (rows, rhs) = rows.into_iter().unzip();
        Self {
            level,
            unknowns,
            ids,
            rows,
            rhs,
        }
    }

    /// The same equations in a seeded random order.
    pub fn shuffled(&self, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..self.ids.len()).collect();
        order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        Self {
            level: self.level,
            unknowns: self.unknowns.clone(),
            ids: order.iter().map(|&i| self.ids[i].clone()).collect(),
            rows: order.iter().map(|&i| self.rows[i].clone()).collect(),
            rhs: order.iter().map(|&i| self.rhs[i].clone()).collect(),
        }
    }
}

/// All equation labels at level `n`, in a fixed order.
pub(crate) fn equation_ids(n: u32, conjugates: bool) -> Vec<EquationId> {
    let mut ids = Vec::new();
    let full = enumerate_partitions(n);
    let bars: &[bool] = if conjugates { &[true, false] } else { &[true] };
    for &bar in bars {
        for k in 1..=2u32.min(n) {
            let lower = enumerate_partitions(n - k);
            for a in &full {
                for b in &lower {
                    // The raised side carries the full weight: ubar for Lbar, u for L.
                    let (p, q) = if bar {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    };
                    ids.push(EquationId { bar, k, p, q });
                }
            }
        }
    }
    ids
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Route {
    /// Apply the generator as a derivation.
    Leibniz,
    /// `N1 (x) 1 + 1 (x) Rbar1` and `1 (x) Rbar2 + N2 (x) 1 - 3 N1 (x) ubar1`.
    Factored,
}

pub(crate) struct Prepared {
    n: u32,
    route: Route,
    index: Vec<Partition>,
    ops: Option<(FamilyOps, FamilyOps)>,
}

fn mono(p: &Partition, q: &Partition) -> Poly {
    let m = p.monomial(Family::U).mul(&q.monomial(Family::UBar));
    Poly::term(m, int(1))
}

impl Prepared {
    pub(crate) fn new(n: u32, route: Route) -> Result<Self> {
        let ops = match route {
            Route::Leibniz => None,
            Route::Factored => Some((
                FamilyOps::new(Family::U, n)?,
                FamilyOps::new(Family::UBar, n)?,
            )),
        };
        Ok(Self {
            n,
            route,
            index: enumerate_partitions(n),
            ops,
        })
    }

    /// The barred equation for `u^P ubar^Q` in factored form.
    fn factored_bar(&self, k: u32, p: &Partition, q: &Partition) -> Result<Poly> {
        let (hol, bar) = self.ops.as_ref().expect("factored route prepared");
        let up = mono(p, &Partition::empty());
        let uq = mono(&Partition::empty(), q);
        Ok(match k {
            1 => hol.n1(&up)?.mul(&uq).add(&up.mul(&bar.r1(&uq)?)),
            _ => {
                let ubar1 = Poly::gen(Gen::ubar(1));
                up.mul(&bar.r2(&uq)?)
                    .add(&hol.n2(&up)?.mul(&uq))
                    .sub(&hol.n1(&up)?.mul(&ubar1).mul(&uq).scale(&int(3)))
            }
        })
    }

    fn polynomial(&self, id: &EquationId) -> Result<Poly> {
        match self.route {
            Route::Leibniz => {
                let op = if id.bar {
                    Op::Lbar(-(id.k as i64))
                } else {
                    Op::L(-(id.k as i64))
                };
                let x = AlgebraElement::from_poly(RhoExp::rho0(id.k as i64), &mono(&id.p, &id.q));
                apply_op(op, &x)?.as_poly().ok_or_else(|| {
                    Error::Inconsistent(format!("equation {id} still depends on the radius"))
                })
            }
            Route::Factored if id.bar => self.factored_bar(id.k, &id.p, &id.q),
            Route::Factored => Ok(self.factored_bar(id.k, &id.q, &id.p)?.conj()),
        }
    }

    /// Row and right-hand side of one equation; lower-level moments come from `lookup`.
    pub(crate) fn equation(
        &self,
        id: &EquationId,
        lookup: &(dyn Fn(&Partition, &Partition) -> Result<Rational> + Sync),
    ) -> Result<(Vec<Rational>, Rational)> {
        let poly = self.polynomial(id)?;
        let size = self.index.len();
        let mut row = vec![Rational::zero(); size * size];
        let mut rhs = Rational::zero();
        for (m, c) in poly.terms() {
            let p = Partition::from_monomial(m, Family::U);
            let q = Partition::from_monomial(m, Family::UBar);
            let (wp, wq) = (p.weight(), q.weight());
            if m.weight(Family::L) + m.weight(Family::LBar) > 0 {
                return Err(Error::Inconsistent(format!(
                    "equation {id} involves exterior coordinates"
                )));
            }
            if wp != wq {
                // Rotation invariance: mixed weights have zero expectation.
                continue;
            }
            if wp == self.n {
                let i = self
                    .index
                    .iter()
                    .position(|x| *x == p)
                    .expect("partition of n");
                let j = self
                    .index
                    .iter()
                    .position(|x| *x == q)
                    .expect("partition of n");
                row[i * size + j] += c;
            } else if wp < self.n {
                rhs -= c * lookup(&p, &q)?;
            } else {
                return Err(Error::Inconsistent(format!(
                    "equation {id} reaches above level {}",
                    self.n
                )));
            }
        }
        Ok((row, rhs))
    }
}
