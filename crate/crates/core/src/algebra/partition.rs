use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::poly::{Family, Gen, Monomial};
use crate::exact::rational::factorial;

/// An integer partition with parts stored in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity `p_k` of the part `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    /// `p! = prod_k p_k!`, the squared norm of the matching monomial.
    pub fn factorial_weight(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut k = 0;
        while k < self.0.len() {
            let run = self.0[k..].iter().take_while(|&&p| p == self.0[k]).count();
            acc *= factorial(run as u64);
            k += run;
        }
        acc
    }

    /// The monomial `g_{p_1} g_{p_2} ...` in one family of generators.
    pub fn monomial(&self, family: Family) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&p| (Gen::new(family, p), 1)))
    }

    /// Reads the partition carried by one family of a monomial.
    pub fn from_monomial(m: &Monomial, family: Family) -> Self {
        Self(m.parts(family))
    }
}

impl fmt::Display for Partition {
    /// Parts joined by `+`, e.g. `4+2+1`; the empty partition prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| Error::InvalidInput(format!("bad partition '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parts))
    }
}

/// All partitions of `n` in canonical order: decreasing-part lists in increasing
/// lexicographic order, so `1+1+...+1` comes first and `n` last.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 1..=max.min(remaining) {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n`, counted by Euler's pentagonal recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2];
            }
        }
        p[m] = acc;
    }
    p[n] as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<String> = enumerate_partitions(4)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(four, ["1+1+1+1", "2+1+1", "2+2", "3+1", "4"]);
        assert_eq!(enumerate_partitions(8).len(), 22);
    }

    #[test]
    fn parse_and_print() {
        let p: Partition = "1+4+2".parse().unwrap();
        assert_eq!(p.to_string(), "4+2+1");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2+0".parse::<Partition>().is_err());
    }

    #[test]
    fn factorial_weights() {
        assert_eq!(
            Partition::new(vec![1, 1]).factorial_weight(),
            BigInt::from(2)
        );
        assert_eq!(
            Partition::new(vec![2, 1, 1, 1, 2]).factorial_weight(),
            BigInt::from(12)
        );
    }

    #[test]
    fn pentagonal_counts() {
        let known = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &c) in known.iter().enumerate() {
            assert_eq!(partition_count(n as u32), c);
        }
    }
}
