use num_traits::Zero;

use super::linalg::{self, Matrix};
use super::partition::{enumerate_partitions, Partition};
use crate::error::{Error, Result};
use crate::exact::poly::{Family, Monomial, Poly};
use crate::exact::rational::Rational;

/// Monomial basis of the weight-`n` part of one family, in canonical partition order.
pub fn monomial_basis(n: u32, family: Family) -> Vec<Monomial> {
    enumerate_partitions(n)
        .iter()
        .map(|p| p.monomial(family))
        .collect()
}

/// `<m, m> = prod over generators of (exponent)!`; distinct monomials are orthogonal.
pub fn monomial_norm(m: &Monomial) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for &(_, e) in m.factors() {
        acc *= crate::exact::rational::factorial(e as u64);
    }
    Rational::from_integer(acc)
}

/// Bilinear inner product with `<u^p, u^q> = p!` when `p = q` and zero otherwise.
pub fn inner_product(a: &Poly, b: &Poly) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in a.terms() {
        let d = b.coeff_of(m);
        if !d.is_zero() {
            acc += c * d * monomial_norm(m);
        }
    }
    acc
}

/// Coordinates of `p` in the monomial basis; errors if `p` leaves the span.
pub fn coordinates(p: &Poly, basis: &[Monomial]) -> Result<Vec<Rational>> {
    let mut coords = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        let k = basis.iter().position(|b| b == m).ok_or_else(|| {
            Error::Inconsistent(format!("monomial {m} is outside the target basis"))
        })?;
        coords[k] = c.clone();
    }
    Ok(coords)
}

/// Polynomial with the given coordinates in a basis.
pub fn from_coordinates(coords: &[Rational], basis: &[Monomial]) -> Poly {
    let mut p = Poly::default();
    for (c, m) in coords.iter().zip(basis) {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// A linear operator between two graded pieces, as an exact matrix.
///
/// Column `j` holds the coordinates of the image of `source[j]` in `target`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub entries: Matrix,
}

impl OperatorMatrix {
    /// Builds the matrix of `op` from the weight-`from` piece to the weight-`to` piece.
    pub fn materialize(
        op: impl Fn(&Poly) -> Result<Poly>,
        from: u32,
        to: u32,
        family: Family,
    ) -> Result<Self> {
        let source = monomial_basis(from, family);
        let target = monomial_basis(to, family);
        let mut entries = vec![vec![Rational::zero(); source.len()]; target.len()];
        for (j, m) in source.iter().enumerate() {
            let image = op(&Poly::term(m.clone(), Rational::from_integer(1.into())))?;
            let coords = coordinates(&image, &target)?;
            for (i, c) in coords.into_iter().enumerate() {
                entries[i][j] = c;
            }
        }
        Ok(Self {
            source,
            target,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    /// Canonical kernel basis as polynomials in the source basis.
    pub fn kernel(&self) -> Vec<Poly> {
        linalg::kernel(&self.entries, self.cols())
            .iter()
            .map(|v| from_coordinates(v, &self.source))
            .collect()
    }

    /// Image of an element given by its coordinates.
    pub fn apply(&self, coords: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.entries, coords)
    }

    /// Adjoint with respect to [`inner_product`], computed from the Gram matrices:
    /// `(A^t)_{ji} = <e_i, e_i> A_{ij} / <f_j, f_j>`.
    pub fn gram_adjoint(&self) -> Self {
        let mut entries = vec![vec![Rational::zero(); self.rows()]; self.cols()];
        for (i, t) in self.target.iter().enumerate() {
            let nt = monomial_norm(t);
            for (j, s) in self.source.iter().enumerate() {
                if !self.entries[i][j].is_zero() {
                    entries[j][i] = &self.entries[i][j] * &nt / monomial_norm(s);
                }
            }
        }
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            entries,
        }
    }

    /// Horizontal concatenation `[A | B]` of operators with the same target.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.target != other.target {
            return Err(Error::InvalidInput(
                "concatenated operators need a common target".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        let mut source = self.source.clone();
        source.extend(other.source.iter().cloned());
        Ok(Self {
            source,
            target: self.target.clone(),
            entries,
        })
    }
}

/// Partition labels of a basis, for reporting.
pub fn basis_labels(basis: &[Monomial], family: Family) -> Vec<String> {
    basis
        .iter()
        .map(|m| Partition::from_monomial(m, family).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::coeff::Coeff;
    use crate::exact::poly::Gen;
    use crate::exact::rational::int;

    fn u(k: u32) -> Poly {
        Poly::gen(Gen::u(k))
    }

    #[test]
    fn basis_order_and_size() {
        let b: Vec<String> = monomial_basis(3, Family::U)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(b, ["u1^3", "u1*u2", "u3"]);
        assert_eq!(monomial_basis(6, Family::U).len(), 11);
    }

    #[test]
    fn inner_products() {
        let u11 = u(1).mul(&u(1));
        assert_eq!(inner_product(&u11, &u11), int(2));
        assert_eq!(inner_product(&u(2), &u11), int(0));
        let u12 = u(1).mul(&u(2));
        assert_eq!(inner_product(&u12, &u12), int(1));
    }

    #[test]
    fn materialize_lowering_operator() {
        // N1 = sum_j j u_{j-1} d/du_j with u_0 = 1.
        let n1 = |p: &Poly| -> Result<Poly> {
            let mut out = Poly::default();
            for j in 1..=4u32 {
                let d = p.derivative(Gen::u(j));
                let lower = if j == 1 { Poly::unity() } else { u(j - 1) };
                out.add_assign(&d.mul(&lower).scale(&int(j as i64)));
            }
            Ok(out)
        };
        let m = OperatorMatrix::materialize(n1, 2, 1, Family::U).unwrap();
        assert_eq!(m.entries, vec![vec![int(2), int(2)]]);
    }
}
