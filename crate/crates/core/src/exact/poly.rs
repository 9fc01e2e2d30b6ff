use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::coeff::Coeff;
use super::rational::{GaussianRational, Rational};

/// The four families of coordinate generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `u_k`: coefficients of the normalized interior map.
    U,
    /// `ubar_k`: complex conjugates of `u_k`.
    UBar,
    /// `l_k`: coefficients of the normalized exterior map in inverted coordinates.
    L,
    /// `lbar_k`: complex conjugates of `l_k`.
    LBar,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::U, Family::UBar, Family::L, Family::LBar];

    pub fn conj(self) -> Self {
        match self {
            Family::U => Family::UBar,
            Family::UBar => Family::U,
            Family::L => Family::LBar,
            Family::LBar => Family::L,
        }
    }

    /// Moves the interior families to the exterior ones (`u -> l`, `ubar -> lbar`).
    pub fn to_exterior(self) -> Self {
        match self {
            Family::U => Family::L,
            Family::UBar => Family::LBar,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::U => "u",
            Family::UBar => "ubar",
            Family::L => "l",
            Family::LBar => "lbar",
        }
    }
}

/// A generator `u_k`, `ubar_k`, `l_k` or `lbar_k` with `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub family: Family,
    pub index: u32,
}

impl Gen {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Self { family, index }
    }

    pub fn u(k: u32) -> Self {
        Self::new(Family::U, k)
    }

    pub fn ubar(k: u32) -> Self {
        Self::new(Family::UBar, k)
    }

    pub fn l(k: u32) -> Self {
        Self::new(Family::L, k)
    }

    pub fn lbar(k: u32) -> Self {
        Self::new(Family::LBar, k)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.name(), self.index)
    }
}

/// A monomial: generators with positive exponents, sorted by generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Gen, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn from_gen(g: Gen, exp: u32) -> Self {
        if exp == 0 {
            Self::one()
        } else {
            Self(vec![(g, exp)])
        }
    }

    /// Builds a monomial from arbitrary (generator, exponent) pairs.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut map: BTreeMap<Gen, u32> = BTreeMap::new();
        for (g, e) in pairs {
            *map.entry(g).or_default() += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0
            .binary_search_by(|(h, _)| h.cmp(&g))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Divides out one power of `g`; `None` if `g` does not divide the monomial.
    pub fn remove_one(&self, g: Gen) -> Option<Self> {
        let k = self.0.binary_search_by(|(h, _)| h.cmp(&g)).ok()?;
        let mut out = self.0.clone();
        if out[k].1 == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Some(Self(out))
    }

    /// Sum of `index * exponent` over generators of the given family.
    pub fn weight(&self, family: Family) -> u32 {
        self.0
            .iter()
            .filter(|(g, _)| g.family == family)
            .map(|(g, e)| g.index * e)
            .sum()
    }

    pub fn total_weight(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.index * e).sum()
    }

    /// Parts of the partition carried by one family, in decreasing order.
    pub fn parts(&self, family: Family) -> Vec<u32> {
        let mut parts: Vec<u32> = self
            .0
            .iter()
            .filter(|(g, _)| g.family == family)
            .flat_map(|(g, e)| std::iter::repeat_n(g.index, *e as usize))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn map_families(&self, f: impl Fn(Family) -> Family) -> Self {
        Self::from_pairs(
            self.0
                .iter()
                .map(|&(g, e)| (Gen::new(f(g.family), g.index), e)),
        )
    }

    pub fn conj(&self) -> Self {
        self.map_families(Family::conj)
    }

    /// Key giving the display order: weight first, then partitions per family
    /// compared lexicographically on their decreasing part lists.
    pub fn display_key(&self) -> (u32, Vec<Vec<u32>>) {
        (
            self.total_weight(),
            Family::ALL.iter().map(|&fam| self.parts(fam)).collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over the rationals in the coordinate generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(Monomial::from_gen(g, 1), Rational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|_| !c.is_zero())
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    /// Partial derivative with respect to a generator.
    pub fn derivative(&self, g: Gen) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let e = m.exponent(g);
            if e > 0 {
                out.add_term(
                    m.remove_one(g).unwrap(),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    pub fn map_families(&self, f: impl Fn(Family) -> Family + Copy) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.add_term(m.map_families(f), c.clone());
        }
        out
    }

    /// Moves interior generators to exterior ones.
    pub fn to_exterior(&self) -> Self {
        self.map_families(Family::to_exterior)
    }

    /// Evaluates at Gaussian-rational values for the generators.
    pub fn eval_gaussian(&self, value: impl Fn(Gen) -> GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::default();
        for (m, c) in &self.terms {
            let mut t = GaussianRational::real(c.clone());
            for &(g, e) in m.factors() {
                t = t.mul(&value(g).powi(e as i64).expect("non-negative power"));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes a polynomial for every generator.
    pub fn substitute(&self, value: impl Fn(Gen) -> Poly) -> Poly {
        let mut acc = Poly::default();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(g, e) in m.factors() {
                let v = value(g);
                for _ in 0..e {
                    t = Coeff::mul(&t, &v);
                }
            }
            acc.add_assign(&t);
        }
        acc
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff_of(&Monomial::one())
    }

    /// Terms sorted in display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| m.display_key());
        v
    }

    /// True when every monomial has the given weight in each listed family.
    pub fn is_homogeneous(&self, family: Family, weight: u32) -> bool {
        self.terms.keys().all(|m| m.weight(family) == weight)
    }
}

impl Coeff for Poly {
    fn nil() -> Self {
        Self::default()
    }
    fn unity() -> Self {
        Self::constant(Rational::one())
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        big.add_assign(small);
        big
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(Self::constant(c.recip()));
            }
        }
        None
    }
    fn conj(&self) -> Self {
        self.map_families(Family::conj)
    }
}

/// Writes `c*m` terms joined by ` + ` / ` - `, omitting unit coefficients.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        if mono == "1" {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.sorted_terms()
                .into_iter()
                .map(|(m, c)| (m.to_string(), c)),
        )
    }
}
