use welding_core::algebra::Partition;
use welding_core::exact::rational::{fmt_rational, rat};
use welding_core::moments::{IdentityCheck, MomentConfig, MomentEngine};
use welding_core::Result;

use crate::args::MomentsArgs;
use crate::output::{object, rational, Artifact};

/// Known level-two values `(P, Q, E(u^P ubar^Q))`.
const LEVEL_TWO: [(&str, &str, i64, i64); 4] = [
    ("2", "2", 1, 3),
    ("2", "1+1", 1, 3),
    ("1+1", "2", 1, 3),
    ("1+1", "1+1", 17, 42),
];

pub fn run(args: &MomentsArgs, threads: Option<usize>) -> Result<Artifact> {
    let config = MomentConfig {
        allow_large: args.allow_large,
        threads,
        ..Default::default()
    };
    let mut engine = MomentEngine::new(config)?;
    engine.solve_through(args.level)?;
    let table = engine.table(args.level).expect("solved level");

    let json = object(
        table
            .entries()
            .map(|((p, q), v)| (format!("{p}|{q}"), rational(v))),
    );
    let rows = table
        .entries()
        .map(|((p, q), v)| vec![p.to_string(), q.to_string(), fmt_rational(v)])
        .collect();
    let mut artifact = Artifact::new(json, &["p", "q", "value"], rows, table.to_string());

    if args.verify {
        let mut checks = engine.verify_identities(args.level)?;
        if args.level >= 2 {
            for (p, q, num, den) in LEVEL_TWO {
                let got = engine.moment(&p.parse::<Partition>()?, &q.parse::<Partition>()?)?;
                checks.push(IdentityCheck::value(format!("{p}|{q}"), rat(num, den), got));
            }
        }
        for c in &checks {
            artifact.fail_if(!c.pass, c.to_string());
        }
        artifact.notes = checks.iter().map(|c| c.to_string()).collect();
    }
    Ok(artifact)
}
