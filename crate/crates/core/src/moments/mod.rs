//! Joint moments `E(u^P ubar^Q)` from the invariance equations
//! `E(Lbar_-k(rho0^k u^P ubar^Q')) = 0` and their conjugates, solved level by level.

mod assembly;
mod table;

pub use assembly::{EquationId, EquationSystem};
pub use table::{IdentityCheck, MomentTable};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::linalg::{bareiss_solve, mat_vec};
use crate::algebra::{enumerate_partitions, Partition};
use crate::error::{Error, Result};
use crate::exact::rational::{rat, Rational};

/// Highest level solved without an explicit opt-in.
pub const DEFAULT_MAX_LEVEL: u32 = 6;
/// Hard ceiling even with the opt-in.
pub const LARGE_MAX_LEVEL: u32 = 8;
/// Environment variable giving the default worker-thread count.
pub const THREADS_ENV: &str = "WELDING_THREADS";

#[derive(Clone, Debug)]
pub struct MomentConfig {
    /// Unlocks levels above [`DEFAULT_MAX_LEVEL`].
    pub allow_large: bool,
    /// Adds the `L_-1`, `L_-2` equations with the roles of `u` and `ubar` swapped.
    pub include_conjugates: bool,
    /// Worker threads for assembly; `None` reads [`THREADS_ENV`] and otherwise lets rayon decide.
    pub threads: Option<usize>,
}

impl Default for MomentConfig {
    fn default() -> Self {
        Self {
            allow_large: false,
            include_conjugates: true,
            threads: None,
        }
    }
}

/// Solves the moment tables level by level, keeping every solved level.
#[derive(Debug)]
pub struct MomentEngine {
    config: MomentConfig,
    tables: Vec<MomentTable>,
    pool: rayon::ThreadPool,
}

fn thread_count(config: &MomentConfig) -> usize {
    config
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0)
}

impl MomentEngine {
    pub fn new(config: MomentConfig) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(thread_count(&config))
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
        let mut level0 = BTreeMap::new();
        level0.insert((Partition::empty(), Partition::empty()), rat(1, 1));
        let tables = vec![MomentTable::new(0, level0, BTreeMap::new())];
        Ok(Self {
            config,
            tables,
            pool,
        })
    }

    pub fn config(&self) -> &MomentConfig {
        &self.config
    }

    /// Highest solved level.
    pub fn solved_level(&self) -> u32 {
        self.tables.len() as u32 - 1
    }

    pub fn table(&self, n: u32) -> Option<&MomentTable> {
        self.tables.get(n as usize)
    }

    fn check_level(&self, n: u32) -> Result<()> {
        let cap = if self.config.allow_large {
            LARGE_MAX_LEVEL
        } else {
            DEFAULT_MAX_LEVEL
        };
        if n > cap {
            return Err(Error::InvalidInput(format!(
                "level {n} exceeds the maximum {cap}{}",
                if self.config.allow_large {
                    ""
                } else {
                    " (levels 7-8 need allow_large)"
                }
            )));
        }
        Ok(())
    }

    /// `E(u^P ubar^Q)`; zero when the weights differ.
    pub fn moment(&self, p: &Partition, q: &Partition) -> Result<Rational> {
        if p.weight() != q.weight() {
            return Ok(Rational::from_integer(0.into()));
        }
        let table = self.tables.get(p.weight() as usize).ok_or_else(|| {
            Error::InvalidInput(format!("level {} is not solved yet", p.weight()))
        })?;
        Ok(table
            .get(p, q)
            .cloned()
            .unwrap_or_else(|| Rational::from_integer(0.into())))
    }

    /// Equations at level `n` from direct Leibniz expansion of the generators.
    pub fn assemble_level(&self, n: u32) -> Result<EquationSystem> {
        self.assemble(n, assembly::Route::Leibniz)
    }

    /// The same equations from the factored level operators.
    pub fn assemble_level_factored(&self, n: u32) -> Result<EquationSystem> {
        self.assemble(n, assembly::Route::Factored)
    }

    fn assemble(&self, n: u32, route: assembly::Route) -> Result<EquationSystem> {
        self.check_level(n)?;
        if n == 0 {
            return Err(Error::InvalidInput(
                "level 0 is the normalization E(1) = 1".into(),
            ));
        }
        if self.solved_level() + 1 < n {
            return Err(Error::InvalidInput(format!(
                "level {n} needs level {} solved first",
                n - 1
            )));
        }
        let ids = assembly::equation_ids(n, self.config.include_conjugates);
        let lookup = |p: &Partition, q: &Partition| self.moment(p, q);
        let prepared = assembly::Prepared::new(n, route)?;
        let rows: Vec<(Vec<Rational>, Rational)> = self.pool.install(|| {
            ids.par_iter()
                .map(|id| prepared.equation(id, &lookup))
                .collect::<Result<Vec<_>>>()
        })?;
        Ok(EquationSystem::new(n, ids, rows))
    }

    /// Solves level `n` exactly. The system is overdetermined: full column rank
    /// and an exactly zero residual on every equation are both required.
    pub fn solve_level(&mut self, n: u32) -> Result<&MomentTable> {
        if n <= self.solved_level() {
            return Ok(&self.tables[n as usize]);
        }
        let system = self.assemble_level(n)?;
        let table = solve_system(&system)?;
        self.tables.push(table);
        Ok(&self.tables[n as usize])
    }

    /// Solves every level up to `n`.
    pub fn solve_through(&mut self, n: u32) -> Result<()> {
        self.check_level(n)?;
        for k in 1..=n {
            self.solve_level(k)?;
        }
        Ok(())
    }

    /// `E(u_n ubar_n) = 1/(n+1)`, `E(u^P ubar_n) = 1/(n+1)` for all `P |- n`, and symmetry.
    pub fn verify_identities(&self, n_max: u32) -> Result<Vec<IdentityCheck>> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            let table = self
                .table(n)
                .ok_or_else(|| Error::InvalidInput(format!("level {n} is not solved yet")))?;
            let single = Partition::new(vec![n]);
            let expected = rat(1, n as i64 + 1);
            out.push(IdentityCheck::value(
                format!("E(u{n} ubar{n})"),
                expected.clone(),
                self.moment(&single, &single)?,
            ));
            for p in enumerate_partitions(n) {
                out.push(IdentityCheck::value(
                    format!("E(u^[{p}] ubar{n})"),
                    expected.clone(),
                    self.moment(&p, &single)?,
                ));
            }
            out.push(IdentityCheck::flag(
                format!("symmetry at level {n}"),
                table.is_symmetric(),
            ));
        }
        Ok(out)
    }
}

/// Fraction-free solve with rank and residual checks.
pub fn solve_system(system: &EquationSystem) -> Result<MomentTable> {
    let outcome = bareiss_solve(&system.rows, &system.rhs)?;
    let cols = system.unknowns.len();
    if outcome.rank < cols {
        return Err(Error::Inconsistent(format!(
            "level {}: rank {} below the {} unknowns",
            system.level, outcome.rank, cols
        )));
    }
    let x = match (outcome.consistent, outcome.solution) {
        (true, Some(x)) => x,
        _ => {
            return Err(Error::Inconsistent(format!(
                "level {}: overdetermined system is inconsistent",
                system.level
            )))
        }
    };
    let lhs = mat_vec(&system.rows, &x);
    if let Some(i) = lhs.iter().zip(&system.rhs).position(|(a, b)| a != b) {
        return Err(Error::Inconsistent(format!(
            "level {}: nonzero residual in equation {}",
            system.level, system.ids[i]
        )));
    }
    let mut entries = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    for (j, key) in system.unknowns.iter().enumerate() {
        entries.insert(key.clone(), x[j].clone());
        // Equations that constrain this unknown directly.
        let used: Vec<String> = system
            .rows
            .iter()
            .enumerate()
            .filter(|(_, row)| !num_traits::Zero::is_zero(&row[j]))
            .map(|(i, _)| system.ids[i].to_string())
            .collect();
        provenance.insert(key.clone(), used);
    }
    Ok(MomentTable::new(system.level, entries, provenance))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn first_two_levels() {
        let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
        e.solve_through(2).unwrap();
        assert_eq!(e.moment(&p(""), &p("")).unwrap(), rat(1, 1));
        assert_eq!(e.moment(&p("1"), &p("1")).unwrap(), rat(1, 2));
        assert_eq!(e.moment(&p("2"), &p("2")).unwrap(), rat(1, 3));
        assert_eq!(e.moment(&p("2"), &p("1+1")).unwrap(), rat(1, 3));
        assert_eq!(e.moment(&p("1+1"), &p("2")).unwrap(), rat(1, 3));
        assert_eq!(e.moment(&p("1+1"), &p("1+1")).unwrap(), rat(17, 42));
        assert_eq!(e.moment(&p("2"), &p("1")).unwrap(), rat(0, 1));
    }

    #[test]
    fn level_one_equation() {
        let e = MomentEngine::new(MomentConfig {
            include_conjugates: false,
            ..Default::default()
        })
        .unwrap();
        let sys = e.assemble_level(1).unwrap();
        // Lbar_-1(rho0 u1) = 1 - 2 u1 ubar1.
        assert_eq!(sys.rows, vec![vec![rat(-2, 1)]]);
        assert_eq!(sys.rhs, vec![rat(-1, 1)]);
    }

    #[test]
    fn level_cap() {
        let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
        assert!(matches!(e.solve_level(7), Err(Error::InvalidInput(_))));
    }
}
