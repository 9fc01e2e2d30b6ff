use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::algebra::Partition;
use crate::exact::rational::{fmt_rational, Rational};

/// Solved moments at one level, keyed by `(P, Q)` for `E(u^P ubar^Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub level: u32,
    entries: BTreeMap<(Partition, Partition), Rational>,
    /// For each entry, the equations that constrain it directly.
    provenance: BTreeMap<(Partition, Partition), Vec<String>>,
}

impl MomentTable {
    pub fn new(
        level: u32,
        entries: BTreeMap<(Partition, Partition), Rational>,
        provenance: BTreeMap<(Partition, Partition), Vec<String>>,
    ) -> Self {
        Self {
            level,
            entries,
            provenance,
        }
    }

    pub fn get(&self, p: &Partition, q: &Partition) -> Option<&Rational> {
        self.entries.get(&(p.clone(), q.clone()))
    }

    /// Entries in canonical order (`P` major, `Q` minor).
    pub fn entries(&self) -> impl Iterator<Item = (&(Partition, Partition), &Rational)> {
        self.entries.iter()
    }

    pub fn provenance(&self, p: &Partition, q: &Partition) -> &[String] {
        self.provenance
            .get(&(p.clone(), q.clone()))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|((p, q), v)| self.get(q, p) == Some(v))
    }

    /// SHA-256 of the canonical text form, for comparing runs.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_string().as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for MomentTable {
    /// One `P|Q = value` line per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((p, q), v) in &self.entries {
            writeln!(f, "{p}|{q} = {}", fmt_rational(v))?;
        }
        Ok(())
    }
}

/// One line of an identity report.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: Option<Rational>,
    pub got: Option<Rational>,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn value(name: String, expected: Rational, got: Rational) -> Self {
        let pass = expected == got;
        Self {
            name,
            expected: Some(expected),
            got: Some(got),
            pass,
        }
    }

    pub fn flag(name: String, pass: bool) -> Self {
        Self {
            name,
            expected: None,
            got: None,
            pass,
        }
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        match (&self.expected, &self.got) {
            (Some(e), Some(g)) if self.pass => {
                write!(f, "{} = {} {verdict}", self.name, fmt_rational(g))
            }
            (Some(e), Some(g)) => {
                write!(
                    f,
                    "{} = {} (expected {}) {verdict}",
                    self.name,
                    fmt_rational(g),
                    fmt_rational(e)
                )
            }
            _ => write!(f, "{} {verdict}", self.name),
        }
    }
}
