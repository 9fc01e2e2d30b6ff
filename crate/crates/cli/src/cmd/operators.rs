use serde_json::{json, Value};
use welding_core::algebra::basis::basis_labels;
use welding_core::algebra::{partition_count, OperatorMatrix};
use welding_core::exact::rational::{fmt_rational, int};
use welding_core::exact::Family;
use welding_core::virasoro::checks::{
    bracket_sweep, minus_sign_diagnostic, stress_check, verify_diagonal_lemma,
    verify_diagonal_lemma_b,
};
use welding_core::virasoro::residues::p_leading_coeff;
use welding_core::virasoro::{build_level_operators, compute_p, r1t_kernel};
use welding_core::{Error, Result};

use crate::args::{OperatorsCmd, Side};
use crate::output::{rational, verdict, Artifact};

pub fn run(cmd: &OperatorsCmd) -> Result<Artifact> {
    match cmd {
        OperatorsCmd::Pn { n, side } => pn(*n, *side),
        OperatorsCmd::Matrices { n } => matrices(*n),
        OperatorsCmd::Kernel { n } => kernel(*n),
        OperatorsCmd::Commutators { range, max_weight } => commutators(*range, *max_weight),
        OperatorsCmd::Stress { window } => stress(*window),
        OperatorsCmd::DiagonalLemma { n, m } => diagonal_lemma(*n, *m),
        OperatorsCmd::MinusDiagnostic => minus(),
    }
}

fn pn(n: u32, side: Side) -> Result<Artifact> {
    let (family, name) = match side {
        Side::U => (Family::U, "u"),
        Side::L => (Family::L, "l"),
    };
    let p = compute_p(family, n)?;
    let lead = p_leading_coeff(family, n)?;
    let text = p.to_string();
    let json = json!({
        "n": n,
        "side": name,
        "polynomial": text,
        "leading_coefficient": rational(&lead),
    });
    let rows = vec![vec![
        n.to_string(),
        name.into(),
        text.clone(),
        fmt_rational(&lead),
    ]];
    let mut a = Artifact::new(
        json,
        &["n", "side", "polynomial", "leading_coefficient"],
        rows,
        text,
    );
    a.fail_if(
        lead != int(-2 * n as i64),
        format!(
            "coefficient of {name}{n} is {lead}, expected {}",
            -2 * n as i64
        ),
    );
    Ok(a)
}

struct Named<'a> {
    name: &'static str,
    family: Family,
    m: &'a OperatorMatrix,
}

fn matrix_json(op: &Named) -> Value {
    json!({
        "name": op.name,
        "source": basis_labels(&op.m.source, op.family),
        "target": basis_labels(&op.m.target, op.family),
        "rank": op.m.rank(),
        "entries": op.m.entries.iter()
            .map(|row| row.iter().map(rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn matrices(n: u32) -> Result<Artifact> {
    let ops = build_level_operators(n)?;
    let mut named = vec![
        Named {
            name: "R1",
            family: Family::UBar,
            m: &ops.r1,
        },
        Named {
            name: "N1",
            family: Family::U,
            m: &ops.n1,
        },
        Named {
            name: "R1t",
            family: Family::UBar,
            m: &ops.r1t,
        },
    ];
    for (name, family, m) in [
        ("R2", Family::UBar, &ops.r2),
        ("N2", Family::U, &ops.n2),
        ("R2t", Family::UBar, &ops.r2t),
    ] {
        if let Some(m) = m {
            named.push(Named { name, family, m });
        }
    }
    let concat_rank = match &ops.r2 {
        Some(r2) => ops.r1.hconcat(r2)?.rank(),
        None => ops.r1.rank(),
    };
    let json = json!({
        "n": n,
        "partition_count": partition_count(n),
        "concat_rank": concat_rank,
        "operators": named.iter().map(matrix_json).collect::<Vec<_>>(),
    });

    let mut rows = Vec::new();
    let mut text = format!(
        "level {n}, p(n) = {}, rank [R1|R2] = {concat_rank}\n",
        partition_count(n)
    );
    for op in &named {
        let src = basis_labels(&op.m.source, op.family);
        let tgt = basis_labels(&op.m.target, op.family);
        text.push_str(&format!(
            "\n{} ({} x {}, rank {})\n  columns: {}\n",
            op.name,
            op.m.rows(),
            op.m.cols(),
            op.m.rank(),
            src.join(" ")
        ));
        for (i, row) in op.m.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(fmt_rational).collect();
            text.push_str(&format!("  {:>8} | {}\n", tgt[i], cells.join(" ")));
            for (j, c) in row.iter().enumerate() {
                rows.push(vec![
                    op.name.to_string(),
                    tgt[i].clone(),
                    src[j].clone(),
                    fmt_rational(c),
                ]);
            }
        }
    }
    Ok(Artifact::new(
        json,
        &["operator", "row", "column", "value"],
        rows,
        text,
    ))
}

fn kernel(n: u32) -> Result<Artifact> {
    let basis: Vec<String> = r1t_kernel(n)?.iter().map(|p| p.to_string()).collect();
    let expected = partition_count(n) - partition_count(n.saturating_sub(1));
    let json =
        json!({ "n": n, "dimension": basis.len(), "expected_dimension": expected, "basis": basis });
    let rows = basis
        .iter()
        .map(|b| vec![n.to_string(), b.clone()])
        .collect();
    let mut a = Artifact::new(json, &["n", "basis_element"], rows, basis.join("\n"));
    a.fail_if(
        basis.len() as u64 != expected,
        format!(
            "kernel dimension {} differs from p(n) - p(n-1) = {expected}",
            basis.len()
        ),
    );
    Ok(a)
}

fn commutators(range: i64, max_weight: u32) -> Result<Artifact> {
    let r = bracket_sweep(range, max_weight)?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|(label, x, d)| json!({ "bracket": label, "element": x, "defect": d }))
        .collect();
    let json = json!({
        "range": range,
        "max_weight": max_weight,
        "checked": r.checked,
        "pass": r.passed(),
        "failures": failures,
    });
    let rows = r
        .failures
        .iter()
        .map(|(l, x, d)| vec![l.clone(), x.clone(), d.clone()])
        .collect();
    let mut text = format!("{} brackets checked: {}\n", r.checked, verdict(r.passed()));
    for (l, x, d) in &r.failures {
        text.push_str(&format!("{l} on {x}: {d}\n"));
    }
    let mut a = Artifact::new(json, &["bracket", "element", "defect"], rows, text);
    a.fail_if(
        !r.passed(),
        format!("{} bracket failures", r.failures.len()),
    );
    Ok(a)
}

fn stress(window: i64) -> Result<Artifact> {
    let lines = stress_check(window)?;
    let pass = lines.iter().all(|l| l.ok());
    let json = json!({
        "window": window,
        "pass": pass,
        "lines": lines.iter().map(|l| json!({
            "radius": l.radius,
            "n": l.n,
            "action": l.action.to_string(),
            "expected": l.expected.to_string(),
            "ok": l.ok(),
        })).collect::<Vec<_>>(),
    });
    let rows = lines
        .iter()
        .map(|l| {
            vec![
                l.radius.into(),
                l.n.to_string(),
                l.action.to_string(),
                l.expected.to_string(),
                l.ok().to_string(),
            ]
        })
        .collect();
    let text = lines
        .iter()
        .map(|l| format!("L_{} {} = {}  {}", l.n, l.radius, l.action, verdict(l.ok())))
        .collect::<Vec<_>>()
        .join("\n");
    let mut a = Artifact::new(
        json,
        &["radius", "n", "action", "expected", "ok"],
        rows,
        text,
    );
    a.fail_if(!pass, "stress coefficients disagree with the action");
    Ok(a)
}

fn diagonal_lemma(n: u32, m: Option<u32>) -> Result<Artifact> {
    let (part, defects) = match m {
        None => {
            let (a, b) = verify_diagonal_lemma(n)?;
            ("a", vec![("L_n L_-n", a), ("L_-n L_n", b)])
        }
        Some(m) if m > n => ("b", vec![("L_m L_-n", verify_diagonal_lemma_b(m, n)?)]),
        Some(m) => {
            return Err(Error::InvalidInput(format!(
                "part (b) needs m > n, got m = {m}, n = {n}"
            )))
        }
    };
    let pass = defects.iter().all(|(_, d)| d.is_zero());
    let json = json!({
        "part": part,
        "n": n,
        "m": m,
        "pass": pass,
        "defects": defects.iter().map(|(k, d)| json!({ "order": k, "defect": d.to_string() })).collect::<Vec<_>>(),
    });
    let rows = defects
        .iter()
        .map(|(k, d)| {
            vec![
                part.into(),
                n.to_string(),
                m.map_or(String::new(), |m| m.to_string()),
                k.to_string(),
                d.to_string(),
            ]
        })
        .collect();
    let mut text = if pass {
        "PASS (exact)".to_string()
    } else {
        "FAIL".to_string()
    };
    for (k, d) in defects.iter().filter(|(_, d)| !d.is_zero()) {
        text.push_str(&format!("\n{k} defect: {d}"));
    }
    let mut a = Artifact::new(json, &["part", "n", "m", "order", "defect"], rows, text);
    a.fail_if(!pass, format!("diagonal lemma ({part}) fails"));
    Ok(a)
}

fn minus() -> Result<Artifact> {
    let (r0, ri) = minus_sign_diagnostic()?;
    let json = json!({ "rho0": r0.to_string(), "rhoinf": ri.to_string() });
    let rows = vec![
        vec!["rho0".into(), r0.to_string()],
        vec!["rhoinf".into(), ri.to_string()],
    ];
    let text = format!("(L_0 + Lbar_0) rho0 = {r0}\n(L_0 + Lbar_0) rhoinf = {ri}");
    Ok(Artifact::new(json, &["radius", "dilation"], rows, text))
}
